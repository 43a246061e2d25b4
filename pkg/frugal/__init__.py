"""Frugal replay: gated experience replay for off-policy actor-critic learning."""

import logging

__version__ = '0.1.0'

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure_logging(level='INFO'):
    """Install a single stream handler on the package logger."""
    logger = logging.getLogger('frugal')
    logger.setLevel(level)

    if not any(getattr(h, '_frugal', False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._frugal = True
        logger.addHandler(handler)

    return logger
