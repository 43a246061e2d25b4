import logging
import os
import sys

from config import Config
from frugal.buffers import make_buffer
from frugal.envs import make_env
from frugal.errors import ConfigError, DivergedTraining
from frugal.learner import train
from frugal.models import RunConfig
from frugal.utils.snapshot import SnapshotManager

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3

FLAG_KEYS = ('env', 'buffer', 'steps', 'seed', 'capacity', 'out')


def add_config_arguments(parser):
    parser.add_argument('--config', default=Config.CONFIG_FILE,
                        help="key = value file layered under the flags")
    parser.add_argument('--set', dest='overrides', action='append', default=[],
                        metavar='KEY=VALUE', help="override any configuration key")


def register(subparsers):
    parser = subparsers.add_parser('train', help="run one training job")
    add_config_arguments(parser)
    parser.add_argument('--env', help="pendulum or mountaincar")
    parser.add_argument('--buffer', help="frugal or plain")
    parser.add_argument('--steps', type=int, help="total environment steps")
    parser.add_argument('--seed', type=int)
    parser.add_argument('--capacity', type=int)
    parser.add_argument('--out', help="run directory (default: $FAC_RUN_DIR)")
    parser.set_defaults(handler=cmd_train)
    return parser


def parse_overrides(pairs):
    values = {}
    for pair in pairs:
        if '=' not in pair:
            raise ConfigError(f"override '{pair}' is not KEY=VALUE")
        key, value = pair.split('=', 1)
        values[key.strip()] = value.strip()
    return values


def resolve_config(args, flag_keys=FLAG_KEYS):
    """defaults < config file < --set overrides < dedicated flags."""
    config = RunConfig()
    if args.config:
        try:
            config = RunConfig.load_file(args.config, base=config)
        except OSError as e:
            raise ConfigError(f"cannot read config file {args.config}: {e}") from e

    values = parse_overrides(args.overrides)
    for key in flag_keys:
        value = getattr(args, key, None)
        if value is not None:
            values[key] = str(value)
    config = RunConfig.from_mapping(values, base=config)

    if config.out is None:
        config = RunConfig.from_mapping({'out': Config.RUN_DIR}, base=config)
    return config


def run_training(config):
    """Train with a resolved config and write the run directory."""
    out = config.out
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, 'config.resolved'), 'w', encoding='utf-8') as f:
        f.write(config.to_text())

    env = make_env(config.env)
    buffer = make_buffer(config.buffer, config.capacity, env.spec.obs_dim,
                         env.spec.action_dim, cfg=config.gate_config())

    try:
        policy, log = train(env, buffer, config.train_config(), nu=config.nu, mu=config.mu,
                            select_dims=config.select_dims)
    except DivergedTraining as e:
        print(f"❌ Training diverged: {e}", file=sys.stderr)
        return EXIT_DIVERGED

    log.write_jsonl(os.path.join(out, 'run.jsonl'))
    SnapshotManager.save_buffer(buffer, os.path.join(out, 'buffer.facb'))
    SnapshotManager.save_policy(policy, os.path.join(out, 'policy.facp'))

    print(f"✅ {config.env}/{config.buffer} seed {config.seed}: "
          f"{len(buffer)} transitions stored, run written to {out}")
    return EXIT_OK


def cmd_train(args):
    try:
        config = resolve_config(args)
    except ConfigError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return run_training(config)
