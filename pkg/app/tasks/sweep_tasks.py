"""
Sweep Tasks

Runs the work units of a check inline, on a local process pool, or as
Celery tasks. Results always come back in unit order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

from celery import shared_task

from app.checks.check_registry import run_unit
from app.config import settings

logger = logging.getLogger(__name__)


@shared_task(name='app.tasks.sweep_tasks.run_check_unit')
def run_check_unit(name: str, params: Dict[str, Any], unit: Any) -> Dict[str, Any]:
    """
    Verify one work unit of a registered check.

    Args:
        name: registered check name
        params: check parameters, JSON-serialisable
        unit: one element of the check's work_units()

    Returns:
        UnitOutcome as a dict
    """
    return run_unit(name, params, unit)


def _dispatch_celery(name: str, params: Dict[str, Any], units: Sequence[Any]) -> List[Dict[str, Any]]:
    # binds shared tasks to the configured app
    from app.celery_app import celery_app

    logger.info(f"Submitting {len(units)} units of {name} to celery ({celery_app.main})")
    pending = [run_check_unit.apply_async(args=(name, params, unit)) for unit in units]
    return [result.get() for result in pending]


def dispatch_units(
    name: str,
    params: Dict[str, Any],
    units: Sequence[Any],
    workers: Optional[int] = None,
    backend: Optional[str] = None,
) -> List[Dict[str, Any]]:
    """Run every unit and return the outcome dicts in unit order"""
    workers = settings.WORKERS if workers is None else workers
    backend = backend or settings.TASK_BACKEND

    if backend == "celery":
        return _dispatch_celery(name, params, units)

    if workers <= 1 or len(units) <= 1:
        return [run_unit(name, params, unit) for unit in units]

    logger.info(f"Running {len(units)} units of {name} on {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_unit, name, params, unit) for unit in units]
        return [future.result() for future in futures]
