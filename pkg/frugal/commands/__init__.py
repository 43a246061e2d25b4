from . import analyze, init_config, selftest, sweep, train

COMMANDS = [train, analyze, selftest, sweep, init_config]

__all__ = ['COMMANDS', 'register_all']


def register_all(subparsers):
    for command in COMMANDS:
        command.register(subparsers)
