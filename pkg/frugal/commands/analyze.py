import csv
import logging
import os
import sys
from contextlib import contextmanager

from frugal.analysis import metric_deltas, pair_efficiency, summarize_run
from frugal.errors import ConfigError, DivisionDegenerate, RunLogError
from frugal.models import RunConfig, RunLog
from frugal.models.metrics_row import DELTAS_HEADER, METRICS_HEADER

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('analyze', help="metrics and deltas from run directories")
    parser.add_argument('runs', nargs='*', help="run directories")
    parser.add_argument('--baseline', action='append', default=[],
                        help="baseline run directory (pairs with the matching --candidate)")
    parser.add_argument('--candidate', action='append', default=[],
                        help="candidate run directory")
    parser.add_argument('--metrics', default='-', help="metrics CSV path ('-' for stdout)")
    parser.add_argument('--deltas', default='-', help="deltas CSV path ('-' for stdout)")
    parser.set_defaults(handler=cmd_analyze)
    return parser


def load_run(run_dir):
    """(RunConfig, RunLog) of one run directory."""
    config_path = os.path.join(run_dir, 'config.resolved')
    try:
        config = RunConfig.load_file(config_path)
    except OSError as e:
        raise RunLogError(f"cannot read {config_path}: {e}") from e
    log = RunLog.read_jsonl(os.path.join(run_dir, 'run.jsonl'))
    return config, log


def summarize_dir(run_dir):
    config, log = load_run(run_dir)
    run_id = os.path.basename(os.path.normpath(run_dir))
    return summarize_run(log, run_id, config.env, config.buffer, config.seed)


@contextmanager
def _open_output(path):
    if path == '-':
        yield sys.stdout
    else:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            yield f


def write_csv(path, header, rows):
    with _open_output(path) as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)


def cmd_analyze(args):
    if len(args.baseline) != len(args.candidate):
        print("❌ --baseline and --candidate must be given the same number of times", file=sys.stderr)
        return 2

    dirs = list(dict.fromkeys(args.runs + args.baseline + args.candidate))
    if not dirs:
        print("❌ No run directories given", file=sys.stderr)
        return 2

    try:
        summaries = {d: summarize_dir(d) for d in dirs}
    except (RunLogError, ConfigError) as e:
        print(f"❌ Cannot analyze: {e}", file=sys.stderr)
        return 2

    rows = pair_efficiency(list(summaries.values()))
    write_csv(args.metrics, METRICS_HEADER, [r.as_row() for r in rows])

    if args.baseline:
        deltas = []
        for base_dir, cand_dir in zip(args.baseline, args.candidate):
            base, cand = summaries[base_dir], summaries[cand_dir]
            try:
                d = metric_deltas(base, cand)
            except DivisionDegenerate as e:
                print(f"❌ Cannot compare {base.run_id} with {cand.run_id}: {e}", file=sys.stderr)
                return 2
            deltas.append([base.run_id, cand.run_id] + d.as_row())
        write_csv(args.deltas, DELTAS_HEADER, deltas)

    logger.info("Analyzed %d runs", len(rows))
    return 0
