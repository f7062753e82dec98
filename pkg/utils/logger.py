"""
Logging Utility
Configures file and console logging for pbwforge runs
"""
import logging

from .config import LOG_DIR, LOG_FILE


LOG_FORMAT = '%(asctime)s | %(levelname)s | %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(verbose: bool = False, log_to_file: bool = True) -> logging.Logger:
    """
    Configure the root pbwforge logger

    Args:
        verbose: Also show INFO messages on the console (default: warnings only)
        log_to_file: Write INFO and above to logs/pbwforge.log

    Returns:
        The configured 'pbwforge' logger
    """
    console = logging.StreamHandler()
    console.setLevel(logging.INFO if verbose else logging.WARNING)
    handlers = [console]

    if log_to_file:
        LOG_DIR.mkdir(exist_ok=True)
        file_handler = logging.FileHandler(LOG_FILE)
        file_handler.setLevel(logging.INFO)
        handlers.append(file_handler)

    logging.basicConfig(
        level=logging.INFO,
        format=LOG_FORMAT,
        datefmt=DATE_FORMAT,
        handlers=handlers,
        force=True
    )
    return logging.getLogger('pbwforge')


def get_logger(name: str) -> logging.Logger:
    """Named child of the pbwforge logger, e.g. get_logger('homog')"""
    return logging.getLogger(f'pbwforge.{name}')
