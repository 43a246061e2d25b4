import json
import logging
import math

from frugal.errors import RunLogError

logger = logging.getLogger(__name__)

STEP_KEYS = ('step', 'reward', 'accepted', 'rde', 'buf')
EVAL_KEYS = ('step', 'eval_mean', 'eval_std')
EPISODE_KEYS = ('step', 'episode', 'episode_return')

INT_FIELDS = ('step', 'buf', 'episode')
REAL_FIELDS = ('reward', 'rde', 'eval_mean', 'eval_std', 'episode_return')
BOOL_FIELDS = ('accepted',)


class RunLog:
    """Per-step training record streamed as JSON Lines."""

    def __init__(self, records=None):
        self.records = list(records or [])
        self.wall_time = None

    def __len__(self):
        return len(self.records)

    def __eq__(self, other):
        if not isinstance(other, RunLog):
            return NotImplemented
        return self.records == other.records

    def log_step(self, step, reward, accepted, rde, buf):
        self.records.append({
            'step': int(step),
            'reward': float(reward),
            'accepted': bool(accepted),
            'rde': float(rde),
            'buf': int(buf),
        })

    def log_eval(self, step, mean, std):
        self.records.append({'step': int(step), 'eval_mean': float(mean), 'eval_std': float(std)})

    def log_episode(self, step, episode, episode_return):
        self.records.append({
            'step': int(step),
            'episode': int(episode),
            'episode_return': float(episode_return),
        })

    def step_records(self):
        return [r for r in self.records if 'buf' in r]

    def eval_records(self):
        return [r for r in self.records if 'eval_mean' in r]

    def episode_records(self):
        return [r for r in self.records if 'episode_return' in r]

    def eval_curve(self):
        return [(r['step'], r['eval_mean']) for r in self.eval_records()]

    def final_buffer_size(self):
        steps = self.step_records()
        if not steps:
            raise RunLogError("run log has no step records")
        return steps[-1]['buf']

    def total_steps(self):
        steps = self.step_records()
        return steps[-1]['step'] + 1 if steps else 0

    def check(self, capacity=None):
        """Verify ordering and capacity invariants; raise RunLogError otherwise."""
        previous = -1
        for record in self.step_records():
            if record['step'] <= previous:
                raise RunLogError(f"step {record['step']} does not increase on {previous}")
            previous = record['step']
            if capacity is not None and record['buf'] > capacity:
                raise RunLogError(f"buffer size {record['buf']} exceeds capacity {capacity}")
        return self

    def write_jsonl(self, path):
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            for record in self.records:
                f.write(json.dumps(record, separators=(',', ':')))
                f.write('\n')

    @classmethod
    def read_jsonl(cls, path):
        records = []
        try:
            with open(path, 'r', encoding='utf-8') as f:
                for lineno, line in enumerate(f, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    records.append(_parse_record(line, lineno))
        except OSError as e:
            raise RunLogError(f"cannot read {path}: {e}") from e

        log = cls(records)
        log.check()
        logger.debug("Read %d records from %s", len(records), path)
        return log


def _parse_record(line, lineno):
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        raise RunLogError(f"line {lineno}: not valid JSON ({e.msg})") from e

    if not isinstance(record, dict) or not _is_int(record.get('step')):
        raise RunLogError(f"line {lineno}: record needs an integer 'step'")

    for keys in (STEP_KEYS, EVAL_KEYS, EPISODE_KEYS):
        if keys[1] in record:
            missing = [k for k in keys if k not in record]
            if missing:
                raise RunLogError(f"line {lineno}: missing keys {missing}")
            break
    else:
        raise RunLogError(f"line {lineno}: unknown record kind")

    for key, value in record.items():
        if key in INT_FIELDS and not _is_int(value):
            raise RunLogError(f"line {lineno}: '{key}' must be an integer, got {value!r}")
        if key in REAL_FIELDS and not _is_real(value):
            raise RunLogError(f"line {lineno}: '{key}' must be a number, got {value!r}")
        if key in BOOL_FIELDS and not isinstance(value, bool):
            raise RunLogError(f"line {lineno}: '{key}' must be true or false, got {value!r}")
        if isinstance(value, float) and not math.isfinite(value):
            raise RunLogError(f"line {lineno}: non-finite '{key}'")
    return record


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _is_real(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)
