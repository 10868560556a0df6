"""Reference optimizers and bounds to benchmark the sort-based solver against."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ChannelRealization, PhaseConfig, received_power

DEFAULT_EXHAUSTIVE_LIMIT = 20
_CHUNK = 1 << 15


class ExhaustiveLimitError(ValueError):
    """Raised when a brute-force search would exceed the configured size cap."""


@dataclass(frozen=True)
class BaselineResult:
    """Outcome of a baseline optimizer.

    power is re-evaluated from (channel, config), so results from different
    methods compare exactly. evaluations counts objective evaluations.
    """

    config: PhaseConfig
    power: float
    evaluations: int


def _composite(ch: ChannelRealization) -> tuple[np.ndarray, complex]:
    return np.conj(ch.h_r) * ch.g, complex(np.conj(ch.h_d))


def exhaustive_search(ch: ChannelRealization, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> BaselineResult:
    """Enumerate all 2^N configurations and return the best.

    Configurations are enumerated by an N-bit counter where a set bit n means
    element n is -1; ties keep the lowest counter value. The homogenized
    coordinate is pinned to +1 throughout. Refuses to run for N above limit.
    """
    n = ch.n
    if n > limit:
        raise ExhaustiveLimitError(
            f"exhaustive search over n={n} elements exceeds the limit of {limit}"
        )
    phi, h_d_conj = _composite(ch)
    count = 1 << n
    shifts = np.arange(n, dtype=np.uint64)
    best_power = -1.0
    best_index = 0
    for start in range(0, count, _CHUNK):
        stop = min(start + _CHUNK, count)
        counters = np.arange(start, stop, dtype=np.uint64)
        bits = (counters[:, None] >> shifts[None, :]) & np.uint64(1)
        signs = 1.0 - 2.0 * bits
        amps = signs @ phi + h_d_conj
        powers = amps.real**2 + amps.imag**2
        j = int(np.argmax(powers))
        if powers[j] > best_power:
            best_power = float(powers[j])
            best_index = start + j
    w = 1 - 2 * ((best_index >> np.arange(n)) & 1)
    config = PhaseConfig(w=w)
    return BaselineResult(
        config=config,
        power=received_power(ch, config),
        evaluations=count,
    )


def greedy_bitflip(ch: ChannelRealization, start: PhaseConfig, max_sweeps: int = 100) -> BaselineResult:
    """Coordinate-wise local search from a starting configuration.

    Sweeps the elements in order, flipping any single entry whose flip
    strictly increases the received power; stops after a full sweep with no
    accepted flip or after max_sweeps. Each flip probe updates the received
    amplitude in O(1).
    """
    if start.n != ch.n:
        raise ValueError(f"start has {start.n} elements but channel has {ch.n}")
    phi, h_d_conj = _composite(ch)
    w = start.w.copy()
    amp = complex(np.dot(w, phi) + h_d_conj)
    evaluations = 0
    for _ in range(max_sweeps):
        improved = False
        for i in range(ch.n):
            trial = amp - 2.0 * w[i] * phi[i]
            evaluations += 1
            if trial.real**2 + trial.imag**2 > amp.real**2 + amp.imag**2:
                w[i] = -w[i]
                amp = trial
                improved = True
        if not improved:
            break
    config = PhaseConfig(w=w)
    return BaselineResult(
        config=config,
        power=received_power(ch, config),
        evaluations=evaluations,
    )


def random_best_of_k(ch: ChannelRealization, k: int, seed: int) -> BaselineResult:
    """Best of k configurations drawn uniformly at random (seeded)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    phi, h_d_conj = _composite(ch)
    rng = np.random.default_rng(seed)
    signs = rng.integers(0, 2, size=(k, ch.n)) * 2 - 1
    amps = signs @ phi + h_d_conj
    powers = amps.real**2 + amps.imag**2
    j = int(np.argmax(powers))
    config = PhaseConfig(w=signs[j])
    return BaselineResult(
        config=config,
        power=received_power(ch, config),
        evaluations=k,
    )


def continuous_upper_bound(ch: ChannelRealization) -> float:
    """Power with every reflection phased perfectly, an upper bound for 1-bit.

    Equals (sum_n |phi_n| + |h_d|)^2 * tx_power; no binary configuration can
    exceed it, and it is generally not attained.
    """
    phi, h_d_conj = _composite(ch)
    total = float(np.sum(np.abs(phi)) + abs(h_d_conj))
    return total * total * ch.tx_power
