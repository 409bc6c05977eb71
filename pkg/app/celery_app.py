"""
Celery Application Configuration

This module sets up Celery for distributed verification sweeps:
- Work units of a check (basis-state chunks, z-orders, sample points)
- Results gathered back in unit order by the dispatcher

By default the app runs eagerly on an in-memory transport, so nothing
needs to be running. Point CELERY_BROKER_URL at redis and turn off
CELERY_TASK_ALWAYS_EAGER to spread units over real workers.
"""

import ssl
from celery import Celery
from app.config import settings

# Configure SSL for Redis if using rediss://
broker_use_ssl = None
if settings.CELERY_BROKER_URL.startswith('rediss://'):
    broker_use_ssl = {
        'ssl_cert_reqs': ssl.CERT_NONE
    }

# Create Celery instance
celery_app = Celery(
    "tetrahedron_verifier",
    broker=settings.CELERY_BROKER_URL,
    backend=settings.CELERY_RESULT_BACKEND,
    include=[
        'app.tasks.sweep_tasks',
    ]
)

# Apply SSL configuration
if broker_use_ssl:
    celery_app.conf.broker_use_ssl = broker_use_ssl
    celery_app.conf.redis_backend_use_ssl = broker_use_ssl

# Celery configuration
celery_app.conf.update(
    # Task routing
    task_routes={
        'app.tasks.sweep_tasks.*': {'queue': 'verification'},
    },

    # Task serialization
    task_serializer='json',
    accept_content=['json'],
    result_serializer='json',
    timezone='UTC',
    enable_utc=True,

    # Task execution
    task_always_eager=settings.CELERY_TASK_ALWAYS_EAGER,
    task_eager_propagates=True,
    task_ignore_result=False,
    task_store_eager_result=True,

    # Task time limits
    task_time_limit=3600,

    # Worker configuration
    worker_prefetch_multiplier=1,
    worker_max_tasks_per_child=1000,

    # Result backend settings
    result_expires=3600,
)


if __name__ == '__main__':
    celery_app.start()
