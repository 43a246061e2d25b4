import argparse
import sys

from config import Config
from frugal import __version__, configure_logging
from frugal.commands import register_all


def build_parser():
    parser = argparse.ArgumentParser(
        prog='fac.py',
        description="Frugal replay: gated experience replay for TD3-style learners",
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--log-level', default=Config.LOG_LEVEL,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        type=str.upper, help="package log level (default: $FAC_LOG_LEVEL or INFO)")
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    register_all(subparsers)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, 'handler', None):
        parser.print_help()
        return 2

    configure_logging(args.log_level)
    return args.handler(args)


if __name__ == '__main__':
    sys.exit(main())
