"""Logical-level simulator of a Weyl-fermion channel array.

Each channel carries a current (bit 1) unless its capacitor is charged, in
which case the field confines the particles (bit 0).  Every change of the
effective voltage settles after the localization time of the configured
field; until then the channel reads its previous settled bit.  Ambient fields
act as an extra voltage source that forces a channel on.
"""
from __future__ import annotations

import csv
import heapq
import io
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .dynamics import ELEMENTARY_CHARGE, localization_time
from .errors import InvalidConfig, UnknownChannel

SOURCES = ("capacitor", "ambient")


@dataclass(frozen=True)
class DeviceConfig:
    """Geometry and drive of a channel array, SI units."""

    n_channels: int = 1
    channel_width: float = 1e-7
    slab_width: float = 1e-2
    r0: float = 1e-7
    E_on: float = 3.3e3
    q: float = ELEMENTARY_CHARGE
    clock_period: float = 1e-12

    def __post_init__(self):
        if int(self.n_channels) != self.n_channels or self.n_channels < 1:
            raise InvalidConfig("n_channels must be an integer >= 1")
        for name in ("channel_width", "slab_width", "r0", "E_on", "q", "clock_period"):
            if not getattr(self, name) > 0:
                raise InvalidConfig(f"{name} must be positive")
        if self.n_channels > self.max_channels:
            raise InvalidConfig(f"n_channels <= floor(slab_width / channel_width) = {self.max_channels} violated")
        if self.clock_period < self.latency:
            raise InvalidConfig(f"clock_period >= switching latency {self.latency:.6g} s violated")

    @property
    def max_channels(self) -> int:
        return math.floor(self.slab_width / self.channel_width * (1 + 1e-12))

    @property
    def latency(self) -> float:
        return localization_time(self.q, self.r0, self.E_on)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> "DeviceConfig":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise InvalidConfig(f"unknown config keys {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "DeviceConfig":
        return cls.from_dict(json.loads(text))


def throughput(config_or_channels, clock_period: float | None = None) -> float:
    """Bits per second: channels divided by the clock period."""
    if isinstance(config_or_channels, DeviceConfig):
        return config_or_channels.n_channels / config_or_channels.clock_period
    if clock_period is None or clock_period <= 0:
        raise InvalidConfig("clock_period must be positive")
    return config_or_channels / clock_period


@dataclass(frozen=True)
class ScheduleEntry:
    time: float
    channel: int
    voltage_on: bool
    source: str = "capacitor"


def _entry(item) -> ScheduleEntry:
    if isinstance(item, ScheduleEntry):
        return item
    if isinstance(item, dict):
        state = item.get("state", item.get("voltage_on"))
        return ScheduleEntry(float(item.get("time_s", item.get("time"))), int(item["channel"]),
                             _parse_state(state), item.get("source", "capacitor"))
    return ScheduleEntry(float(item[0]), int(item[1]), _parse_state(item[2]),
                         item[3] if len(item) > 3 else "capacitor")


def _parse_state(state) -> bool:
    if isinstance(state, str):
        s = state.strip().lower()
        if s not in ("on", "off"):
            raise InvalidConfig(f"state must be 'on' or 'off', got {state!r}")
        return s == "on"
    return bool(state)


class _Channel:
    __slots__ = ("capacitor", "ambient", "settled", "pending", "changed_at", "generation", "history")

    def __init__(self):
        self.capacitor = False
        self.ambient = False
        self.settled = 1
        self.pending = None
        self.changed_at = 0.0
        self.generation = 0
        self.history = []  # (time, bit) settle events

    @property
    def voltage_on(self) -> bool:
        return self.capacitor or self.ambient


@dataclass(frozen=True)
class ChannelState:
    voltage_on: bool
    time_in_state: float
    output_bit: object  # 0, 1 or "transitioning"


class Device:
    """Channel array driven by a voltage schedule."""

    def __init__(self, config: DeviceConfig):
        self.config = config
        self.latency = config.latency
        self.now = 0.0
        self.log = []
        self._channels = {}
        self._queue = []
        self._seq = 0
        self._last_time = 0.0

    def _channel(self, k) -> _Channel:
        if not 0 <= k < self.config.n_channels:
            raise UnknownChannel(f"channel {k} outside 0..{self.config.n_channels - 1}")
        ch = self._channels.get(k)
        if ch is None:
            ch = self._channels[k] = _Channel()
        return ch

    def _push(self, time, priority, payload):
        heapq.heappush(self._queue, (time, priority, self._seq, payload))
        self._seq += 1

    def apply_schedule(self, schedule) -> None:
        """Queue voltage changes; times must be non-decreasing and not in the past."""
        entries = [_entry(item) for item in schedule]
        for e in entries:
            if e.time < self._last_time or e.time < self.now:
                raise InvalidConfig("schedule times must be non-decreasing and not before the current time")
            if e.source not in SOURCES:
                raise InvalidConfig(f"source must be one of {SOURCES}")
            self._channel(e.channel)
            self._last_time = e.time
        for e in entries:
            self._push(e.time, 1, e)

    def step(self, dt: float) -> list:
        """Advance by ``dt`` seconds; returns the log entries produced."""
        return self.run_until(self.now + dt)

    def run_until(self, t_end: float) -> list:
        start = len(self.log)
        while self._queue and self._queue[0][0] <= t_end:
            time, priority, _, payload = heapq.heappop(self._queue)
            if priority == 0:
                self._settle(time, *payload)
            else:
                self._switch(time, payload)
        self.now = max(self.now, t_end)
        return self.log[start:]

    def _switch(self, time, e: ScheduleEntry):
        ch = self._channels[e.channel]
        before = ch.voltage_on
        if e.source == "capacitor":
            ch.capacitor = e.voltage_on
        else:
            ch.ambient = e.voltage_on
        if ch.voltage_on == before:
            return
        if ch.pending is not None and ch.pending != ch.settled:
            self.log.append({"time": time, "channel": e.channel, "event": "missed", "bit": ch.pending})
        ch.changed_at = time
        ch.generation += 1
        ch.pending = 0 if ch.voltage_on else 1
        self.log.append({"time": time, "channel": e.channel, "event": "switch",
                         "voltage_on": ch.voltage_on, "source": e.source})
        self._push(time + self.latency, 0, (e.channel, ch.generation))

    def _settle(self, time, k, generation):
        ch = self._channels[k]
        if generation != ch.generation:
            return
        if ch.pending != ch.settled:
            ch.history.append((time, ch.pending))
        ch.settled = ch.pending
        ch.pending = None
        self.log.append({"time": time, "channel": k, "event": "settle", "bit": ch.settled})

    def state(self, k: int) -> ChannelState:
        ch = self._channel(k)
        elapsed = self.now - ch.changed_at
        bit = ch.settled if ch.pending is None else "transitioning"
        return ChannelState(ch.voltage_on, elapsed, bit)

    def readout(self, sample_times) -> np.ndarray:
        """Bits ``(n_channels, n_samples)``; transitioning channels read their last settled bit."""
        times = np.asarray(sample_times, dtype=float)
        if np.any(times > self.now):
            raise ValueError("sample times beyond the simulated span")
        out = np.ones((self.config.n_channels, len(times)), dtype=np.int8)
        for k, ch in self._channels.items():
            if not ch.history:
                continue
            t_hist = np.array([h[0] for h in ch.history])
            b_hist = np.array([h[1] for h in ch.history], dtype=np.int8)
            idx = np.searchsorted(t_hist, times, side="right") - 1
            out[k] = np.where(idx >= 0, b_hist[np.maximum(idx, 0)], 1)
        return out

    def missed_bits(self) -> list:
        return [e for e in self.log if e["event"] == "missed"]


def device_new(config: DeviceConfig) -> Device:
    return Device(config)


# ---------------------------------------------------------------------------
# I/O

def read_schedule_csv(text: str) -> list:
    rows = csv.DictReader(io.StringIO(text))
    return [_entry({"time_s": r["time_s"], "channel": r["channel"], "state": r["state"],
                    "source": (r.get("source") or "capacitor")}) for r in rows]


def read_schedule_json(text: str) -> list:
    return [_entry(item) for item in json.loads(text)]


def schedule_to_csv(schedule) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["time_s", "channel", "state", "source"])
    for e in map(_entry, schedule):
        w.writerow([repr(e.time), e.channel, "on" if e.voltage_on else "off", e.source])
    return buf.getvalue()


def readout_to_csv(bits: np.ndarray, sample_times) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["channel"] + [repr(float(t)) for t in sample_times])
    for k, row in enumerate(bits):
        w.writerow([k] + [int(b) for b in row])
    return buf.getvalue()
