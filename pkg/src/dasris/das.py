"""Globally optimal binary phase selection by folding and sorting angles.

The received power is lam * |w_bar^T z|^2 where z is the unit direction of
the homogenized composite vector and w_bar ranges over sign vectors whose
last entry is pinned to +1 after the fact. Writing z_n = |z_n| e^{j theta_n},

    |w_bar^T z| = max over psi of sum_n w_bar_n |z_n| cos(psi - theta_n)

and for a fixed psi the best entry is w_bar_n = sgn(cos(psi - theta_n)).
Folding every angle into [-pi/2, pi/2), with a recorded sign flip for the
entries moved by pi, makes that sign pattern a step function of psi: in
folded-and-sorted order it is +1 on a prefix and -1 on the suffix. Sweeping
psi therefore produces at most N+1 distinct patterns, one per prefix length,
and scoring them all yields the global optimum. Sorting dominates the cost,
so the whole solve is O(N log N).

Candidate k (1-based) assigns +1 to the k smallest folded angles, maps that
back to original element order, and undoes the fold by negating flipped
entries. das_solve scores all candidates at once with a prefix sum instead
of materializing the candidate matrix; build_candidates/select_best expose
the explicit matrix form and the two routes agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    ChannelRealization,
    PhaseConfig,
    composite_phi,
    received_power,
)

HALF_PI = np.pi / 2.0


@dataclass(frozen=True)
class FoldResult:
    """Angles folded into [-pi/2, pi/2) with the fold recorded per entry.

    flip_mask[n] is true when the entry's canonical angle lay in
    [pi/2, 3pi/2) and was shifted down by pi. Zero-magnitude entries fold to
    angle 0 with no flip; their sign never affects the objective.
    """

    folded_angles: np.ndarray
    flip_mask: np.ndarray
    magnitudes: np.ndarray


@dataclass(frozen=True)
class SortPermutation:
    """Stable ordering of folded angles.

    forward[k] is the original index at sorted position k; inverse is its
    inverse, so inverse[forward[k]] == k. Ties keep ascending original index.
    """

    forward: np.ndarray
    inverse: np.ndarray


@dataclass(frozen=True)
class CandidateSet:
    """All prefix-step sign patterns, one column per candidate.

    columns has shape (M, M) for M = N+1 entries; columns[:, k] is candidate
    k in original element order, already unfolded via the flip mask. The
    all-+1 pattern is always the last column (before flips).
    """

    columns: np.ndarray


@dataclass(frozen=True)
class DasSolution:
    """Optimal configuration plus diagnostics.

    w_bar is the homogenized sign vector normalized to end in +1;
    objective_amplitude is |w_bar^T z| and power the received power of config.
    """

    config: PhaseConfig
    w_bar: np.ndarray
    objective_amplitude: float
    power: float


def fold_angles(z: np.ndarray) -> FoldResult:
    """Fold the phase of each entry of z into [-pi/2, pi/2).

    The principal argument is first shifted into the canonical window
    [-pi/2, 3pi/2); angles at or beyond pi/2 are then moved down by pi and
    flagged in the flip mask. The boundary -pi/2 stays unflipped.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.ndim != 1:
        raise ValueError("z must be one-dimensional")
    magnitudes = np.abs(z)
    ang = np.angle(z)
    ang = np.where(ang < -HALF_PI, ang + 2.0 * np.pi, ang)
    flip_mask = ang >= HALF_PI
    folded = np.where(flip_mask, ang - np.pi, ang)
    zero = magnitudes == 0.0
    folded = np.where(zero, 0.0, folded)
    flip_mask = flip_mask & ~zero
    return FoldResult(folded_angles=folded, flip_mask=flip_mask, magnitudes=magnitudes)


def sort_folded(fold: FoldResult) -> SortPermutation:
    """Stable non-decreasing sort of the folded angles."""
    forward = np.argsort(fold.folded_angles, kind="stable")
    inverse = np.empty_like(forward)
    inverse[forward] = np.arange(forward.shape[0])
    return SortPermutation(forward=forward, inverse=inverse)


def build_candidates(fold: FoldResult, perm: SortPermutation) -> CandidateSet:
    """Materialize all M prefix-step candidates in original element order.

    Candidate k (0-based) is +1 on the k+1 smallest folded angles and -1
    elsewhere, then negated on flipped entries to undo the fold.
    """
    m = fold.folded_angles.shape[0]
    steps = np.where(perm.inverse[:, None] <= np.arange(m)[None, :], 1, -1)
    unfold = np.where(fold.flip_mask, -1, 1)
    return CandidateSet(columns=(steps * unfold[:, None]).astype(np.int8))


def select_best(cands: CandidateSet, z: np.ndarray) -> tuple[np.ndarray, float]:
    """Score |c^T z| for every candidate column and keep the best.

    Ties resolve to the lowest candidate index. Returns the winning column
    (as an int vector, unnormalized) and its amplitude.
    """
    z = np.asarray(z, dtype=complex)
    scores = np.abs(z @ cands.columns)
    k = int(np.argmax(scores))
    return cands.columns[:, k].astype(np.int64), float(scores[k])


def recover_config(w_bar_raw: np.ndarray) -> tuple[PhaseConfig, np.ndarray]:
    """Normalize the homogenized sign vector and strip the pinned entry.

    The objective is invariant under global negation, so a raw winner ending
    in -1 is negated; the first M-1 entries are the surface configuration.
    """
    w_bar = np.atleast_1d(np.asarray(w_bar_raw)).astype(np.int64)
    if w_bar.shape[0] < 2:
        raise ValueError("w_bar must have at least two entries")
    if not np.all(np.abs(w_bar) == 1):
        raise ValueError("w_bar entries must be +1 or -1")
    if w_bar[-1] < 0:
        w_bar = -w_bar
    return PhaseConfig(w=w_bar[:-1]), w_bar


def _best_step_pattern(z: np.ndarray) -> tuple[np.ndarray, float]:
    """Best prefix-step sign vector for z, without materializing candidates.

    Candidate k's inner product with z is 2 * prefix_k - total, where
    prefix_k sums the first k+1 flip-corrected entries in sorted order, so
    one cumulative sum scores every candidate. Lowest k wins ties, as in
    select_best; when distinct candidates score equal in exact arithmetic
    (zero-magnitude entries) the two routes may round the tie differently
    and return different equally optimal winners.
    """
    fold = fold_angles(z)
    perm = sort_folded(fold)
    unfold = np.where(fold.flip_mask, -1.0, 1.0)
    prefix = np.cumsum((z * unfold)[perm.forward])
    total = prefix[-1]
    scores = np.abs(2.0 * prefix - total)
    k = int(np.argmax(scores))
    signs = np.where(perm.inverse <= k, 1, -1)
    w_bar_raw = signs * np.where(fold.flip_mask, -1, 1)
    return w_bar_raw.astype(np.int64), float(scores[k])


def das_solve(ch: ChannelRealization) -> DasSolution:
    """Find the received-power-maximizing binary configuration.

    Composes the composite-vector reduction, angle folding, sorting, and
    candidate scoring; O(N log N) total. The returned power is exact for the
    returned configuration (it is re-evaluated against the channel).
    """
    comp = composite_phi(ch)
    w_bar_raw, _ = _best_step_pattern(comp.z)
    config, w_bar = recover_config(w_bar_raw)
    amplitude = float(np.abs(w_bar @ comp.z))
    return DasSolution(
        config=config,
        w_bar=w_bar,
        objective_amplitude=amplitude,
        power=received_power(ch, config),
    )
