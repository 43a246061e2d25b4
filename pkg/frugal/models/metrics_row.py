from dataclasses import astuple, dataclass, fields

METRICS_HEADER = ('run_id', 'env', 'algo', 'buffer', 'seed', 'cp',
                  'buffer_size', 'reward_mean', 'reward_std', 'p')
DELTAS_HEADER = ('baseline', 'candidate', 'delta_cp', 'delta_buf', 'delta_reward', 'p')


@dataclass
class MetricsRow:
    run_id: str
    env: str
    algo: str
    buffer: str
    seed: int
    cp: int
    buffer_size: int
    reward_mean: float
    reward_std: float
    p: float = 1.0

    def as_row(self):
        return list(astuple(self))


@dataclass(frozen=True)
class MetricDeltas:
    """Percent changes of a candidate run against its baseline."""

    delta_cp: float
    delta_buf: float
    delta_reward: float
    p: float

    def as_row(self):
        return [getattr(self, f.name) for f in fields(self)]
