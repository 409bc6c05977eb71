import logging
import sys

from app.config import settings
from app.cli import main

# Configure logging
logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)
logger = logging.getLogger(__name__)

if __name__ == "__main__":
    logger.debug(f"{settings.APP_NAME} {settings.VERSION}")
    sys.exit(main())
