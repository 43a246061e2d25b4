from frugal.errors import ConfigError

from .base import Env
from .pendulum import Pendulum
from .mountain_car import MountainCarContinuous

ENVIRONMENTS = {
    'pendulum': Pendulum,
    'mountaincar': MountainCarContinuous,
}

__all__ = ['Env', 'Pendulum', 'MountainCarContinuous', 'ENVIRONMENTS', 'make_env']


def make_env(name):
    try:
        return ENVIRONMENTS[name]()
    except KeyError:
        raise ConfigError(f"unknown env '{name}' (choose from {', '.join(ENVIRONMENTS)})") from None
