import os
import sys

from frugal.models import RunConfig


def register(subparsers):
    parser = subparsers.add_parser('init-config', help="write a commented default config file")
    parser.add_argument('path', nargs='?', default='fac.conf')
    parser.add_argument('--force', action='store_true', help="overwrite an existing file")
    parser.set_defaults(handler=cmd_init_config)
    return parser


def cmd_init_config(args):
    if os.path.exists(args.path) and not args.force:
        print(f"❌ {args.path} already exists (use --force to overwrite)", file=sys.stderr)
        return 2

    with open(args.path, 'w', encoding='utf-8') as f:
        f.write(RunConfig().with_defaults_text())
    print(f"✅ Default configuration written to {args.path}")
    return 0
