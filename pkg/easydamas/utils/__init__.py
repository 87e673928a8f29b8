"""Utils package for EasyDamas."""

from easydamas.utils.logger import get_logger, setup_logging
from easydamas.utils.parallel import run_chunked

__all__ = ["get_logger", "setup_logging", "run_chunked"]
