"""Binary snapshot containers for replay buffers (FACB) and policies (FACP).

Both are little-endian and start with a 4-byte magic, a u32 format version
and a u64 total file length. They end with a CRC32 of every preceding byte,
which is verified before any field is decoded.
"""

import logging
import struct
import zlib

import numpy as np

from frugal.buffers import FrugalBuffer, PlainBuffer
from frugal.errors import CorruptSnapshot, FormatError
from frugal.learner.mlp import Mlp
from frugal.models import GateConfig, PartitionSpec

logger = logging.getLogger(__name__)

BUFFER_MAGIC = b'FACB'
POLICY_MAGIC = b'FACP'
FORMAT_VERSION = 1

FLAG_FRUGAL = 0x1
FLAG_PARTITION = 0x2

OUTPUT_CODES = {'identity': 0, 'tanh': 1}

_HEADER = struct.Struct('<4sIQ')
_CRC = struct.Struct('<I')


class _Writer:
    def __init__(self, magic):
        self.magic = magic
        self.parts = []

    def pack(self, fmt, *values):
        self.parts.append(struct.pack('<' + fmt, *values))

    def array(self, values, dtype):
        self.parts.append(np.ascontiguousarray(values, dtype=dtype).tobytes())

    def finish(self):
        payload = b''.join(self.parts)
        total = _HEADER.size + len(payload) + _CRC.size
        body = _HEADER.pack(self.magic, FORMAT_VERSION, total) + payload
        return body + _CRC.pack(zlib.crc32(body) & 0xFFFFFFFF)


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise FormatError(f"snapshot truncated at byte {self.pos} (needed {n} more)")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt):
        size = struct.calcsize('<' + fmt)
        values = struct.unpack('<' + fmt, self.take(size))
        return values if len(values) > 1 else values[0]

    def array(self, count, dtype, shape=None):
        dtype = np.dtype(dtype).newbyteorder('<')
        values = np.frombuffer(self.take(count * dtype.itemsize), dtype=dtype).astype(dtype.newbyteorder('='))
        return values.reshape(shape) if shape is not None else values


def _open_container(data, magic):
    """Check magic, length and checksum; return a reader positioned after the header."""
    if len(data) < _HEADER.size + _CRC.size:
        raise FormatError(f"snapshot truncated: {len(data)} bytes is shorter than the header")
    found, version, total = _HEADER.unpack_from(data)
    if found != magic:
        raise FormatError(f"bad magic, expected {magic!r}")
    if total > len(data):
        raise FormatError(f"snapshot truncated: header declares {total} bytes, found {len(data)}")
    if total < len(data):
        raise FormatError(f"{len(data) - total} trailing bytes after checksum")
    (stored,) = _CRC.unpack_from(data, len(data) - _CRC.size)
    if zlib.crc32(data[:-_CRC.size]) & 0xFFFFFFFF != stored:
        raise CorruptSnapshot("checksum mismatch")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")
    reader = _Reader(data[:-_CRC.size])
    reader.pos = _HEADER.size
    return reader


def _close_container(reader):
    if reader.pos != len(reader.data):
        raise FormatError(f"{len(reader.data) - reader.pos} undecoded bytes before checksum")


class SnapshotManager:
    @staticmethod
    def dump_buffer(buffer):
        """Serialise a replay buffer to bytes."""
        store = buffer.store
        spec = buffer.spec
        frugal = isinstance(buffer, FrugalBuffer)
        flags = (FLAG_FRUGAL if frugal else 0) | (FLAG_PARTITION if spec is not None else 0)
        k = len(spec.kappa) if spec is not None else 0

        w = _Writer(BUFFER_MAGIC)
        w.pack('I', flags)
        w.pack('IIQQI', store.state_dim, store.action_dim, store.capacity, len(store), k)

        if spec is not None:
            w.array(spec.kappa, '<u4')
            w.array(spec.lower, '<f8')
            w.array(spec.upper, '<f8')
            w.array(spec.mu, '<u4')

        cfg = buffer.cfg if frugal else GateConfig()
        w.pack('ddddB', cfg.epsilon, cfg.eta, cfg.beta, cfg.bandwidth, int(cfg.normalized))
        w.pack('QQQ', buffer.inserted, buffer.rejected, buffer.evicted)

        states, actions, rewards, next_states, dones = store.ordered()
        for i in range(len(store)):
            w.array(states[i], '<f8')
            w.array(actions[i], '<f8')
            w.pack('d', rewards[i])
            w.array(next_states[i], '<f8')
            w.pack('B', int(dones[i]))

        if frugal and buffer.gated:
            w.pack('Q', len(buffer.ledger))
            for cell, values in buffer.ledger.items():
                w.array(cell, '<u4')
                w.pack('Q', len(values))
                w.array(values, '<f8')
        else:
            w.pack('Q', 0)

        return w.finish()

    @staticmethod
    def parse_buffer(data):
        """Rebuild a replay buffer from dump_buffer bytes."""
        r = _open_container(data, BUFFER_MAGIC)
        flags = r.unpack('I')
        p, q, capacity, count, k = r.unpack('IIQQI')
        if count > capacity:
            raise FormatError(f"count {count} exceeds capacity {capacity}")

        spec = None
        if flags & FLAG_PARTITION:
            kappa = tuple(int(v) for v in r.array(k, '<u4'))
            lower = tuple(float(v) for v in r.array(k, '<f8'))
            upper = tuple(float(v) for v in r.array(k, '<f8'))
            mu = tuple(int(v) for v in r.array(k, '<u4'))
            spec = PartitionSpec(kappa=kappa, lower=lower, upper=upper, mu=mu)

        epsilon, eta, beta, bandwidth, normalized = r.unpack('ddddB')
        cfg = GateConfig(epsilon=epsilon, eta=eta, beta=beta, bandwidth=bandwidth,
                         normalized=bool(normalized))
        inserted, rejected, evicted = r.unpack('QQQ')

        rows = []
        for _ in range(count):
            s = r.array(p, '<f8')
            a = r.array(q, '<f8')
            reward = r.unpack('d')
            s_next = r.array(p, '<f8')
            done = bool(r.unpack('B'))
            rows.append((s, a, reward, s_next, done))

        groups = []
        for _ in range(r.unpack('Q')):
            cell = tuple(int(v) for v in r.array(k, '<u4'))
            n = r.unpack('Q')
            groups.append((cell, [float(v) for v in r.array(n, '<f8')]))

        _close_container(r)

        if flags & FLAG_FRUGAL:
            buffer = FrugalBuffer(capacity, p, q, cfg=cfg)
            buffer.restore(rows, spec, groups)
        else:
            buffer = PlainBuffer(capacity, p, q)
            buffer.restore(rows, spec)
        buffer.inserted, buffer.rejected, buffer.evicted = inserted, rejected, evicted
        return buffer

    @staticmethod
    def save_buffer(buffer, path):
        data = SnapshotManager.dump_buffer(buffer)
        with open(path, 'wb') as f:
            f.write(data)
        logger.info("Wrote %d-transition snapshot to %s (%d bytes)", len(buffer), path, len(data))

    @staticmethod
    def load_buffer(path):
        with open(path, 'rb') as f:
            data = f.read()
        return SnapshotManager.parse_buffer(data)

    @staticmethod
    def dump_policy(net):
        """Serialise an Mlp: layer widths, output mapping, then parameters."""
        widths = net.widths
        w = _Writer(POLICY_MAGIC)
        w.pack('I', len(widths))
        w.array(widths, '<u4')
        w.pack('B', OUTPUT_CODES[net.output])
        w.array(net.scale, '<f8')
        w.array(net.offset, '<f8')
        for param in net.parameters():
            w.array(param.ravel(), '<f8')
        return w.finish()

    @staticmethod
    def parse_policy(data):
        r = _open_container(data, POLICY_MAGIC)
        n = r.unpack('I')
        if n < 2:
            raise FormatError(f"policy needs at least two layer widths, got {n}")
        widths = [int(v) for v in r.array(n, '<u4')]
        code = r.unpack('B')
        outputs = {v: name for name, v in OUTPUT_CODES.items()}
        if code not in outputs:
            raise FormatError(f"unknown output activation code {code}")
        scale = r.array(widths[-1], '<f8')
        offset = r.array(widths[-1], '<f8')

        weights, biases = [], []
        for fan_in, fan_out in zip(widths[:-1], widths[1:]):
            weights.append(r.array(fan_in * fan_out, '<f8', (fan_in, fan_out)))
            biases.append(r.array(fan_out, '<f8'))
        _close_container(r)
        return Mlp(weights, biases, output=outputs[code], scale=scale, offset=offset)

    @staticmethod
    def save_policy(net, path):
        with open(path, 'wb') as f:
            f.write(SnapshotManager.dump_policy(net))
        logger.info("Wrote policy checkpoint to %s", path)

    @staticmethod
    def load_policy(path):
        with open(path, 'rb') as f:
            return SnapshotManager.parse_policy(f.read())


def snapshot_save(buffer, path):
    SnapshotManager.save_buffer(buffer, path)


def snapshot_load(path):
    return SnapshotManager.load_buffer(path)
