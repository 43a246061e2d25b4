import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from config import Config
from frugal.commands.train import EXIT_CONFIG, add_config_arguments, resolve_config, run_training
from frugal.errors import ConfigError
from frugal.models import RunConfig

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('sweep', help="train every buffer/seed combination")
    add_config_arguments(parser)
    parser.add_argument('--env')
    parser.add_argument('--steps', type=int)
    parser.add_argument('--buffers', nargs='+', default=['frugal', 'plain'])
    parser.add_argument('--seeds', nargs='+', type=int, default=[0, 1, 2])
    parser.add_argument('--out', default='runs', help="parent directory of the run directories")
    parser.add_argument('--jobs', type=int, default=Config.SWEEP_JOBS)
    parser.set_defaults(handler=cmd_sweep)
    return parser


def sweep_configs(base, buffers, seeds, root):
    configs = []
    for buffer in buffers:
        for seed in seeds:
            out = os.path.join(root, f"{base.env}-{buffer}-s{seed}")
            configs.append(RunConfig.from_mapping(
                {'buffer': buffer, 'seed': str(seed), 'out': out}, base=base))
    return configs


def cmd_sweep(args):
    try:
        base = resolve_config(args, flag_keys=('env', 'steps'))
        configs = sweep_configs(base, args.buffers, args.seeds, args.out)
    except ConfigError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    print(f"🚀 Launching {len(configs)} runs with {args.jobs} worker(s)")
    if args.jobs <= 1:
        codes = [run_training(c) for c in configs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            codes = list(pool.map(run_training, configs))
    return max(codes) if codes else 0
