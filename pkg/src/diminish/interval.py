"""One-dimensional diminishing interval process in three equivalent forms.

The full process tracks the interval ``[Z - r, Z + r]`` inside ``[-1, 1]``:
a point is drawn through a :class:`~diminish.distributions.DfForm` law, the
interval is intersected with the unit-radius translate around the point, and
the radius shrinks toward 1/2.  The thinned process keeps only the steps
that change the interval, which factorizes into a sign ``xi`` and a
multiplier ``V`` with CDF ``x**delta``.  Iterating the thinned recursion
gives the truncated series sampler for the limiting center.

Draw discipline (replays are exact across scalar and batch runners):
the full step consumes one uniform per step, the thinned step and the series
sampler consume two uniforms per step/term (sign first, multiplier second).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import DfForm, RngStream, df_form_ppf
from .errors import DomainError, StateCorruptionError

__all__ = [
    "IntervalState",
    "ThinnedIntervalState",
    "IntervalRun",
    "interval_new",
    "thinned_new",
    "apply_full_step",
    "step_full",
    "apply_thinned_step",
    "step_thinned",
    "center_series_sample",
    "center_series_batch",
    "perpetuity_step",
    "run_scaled",
    "run_full_batch",
]

_EPS = 1e-12


@dataclass(frozen=True)
class IntervalState:
    """Current interval ``[center - radius, center + radius]`` and its law."""

    center: float
    radius: float
    law: DfForm

    def __post_init__(self):
        if not (0.5 - _EPS <= self.radius <= 1.0 + _EPS):
            raise DomainError(f"radius must lie in [1/2, 1], got {self.radius}")
        if self.center - self.radius < -1.0 - 1e-9 or self.center + self.radius > 1.0 + 1e-9:
            raise DomainError("interval must be contained in [-1, 1]")


@dataclass(frozen=True)
class ThinnedIntervalState:
    """Center and excess radius of the thinned (change-only) chain.

    The law parameters must have ``c`` strictly inside (0, 1): at the
    endpoints the center degenerates to -1/2 or +1/2 and the thinned
    factorization below does not apply.
    """

    center: float
    excess: float
    c: float
    delta: float

    def __post_init__(self):
        if not (0.0 < self.c < 1.0):
            raise DomainError("thinned process requires c in (0, 1); endpoint laws degenerate")
        if not self.delta > 0.0:
            raise DomainError("delta must be positive")
        if not (0.0 <= self.excess <= 0.5 + _EPS):
            raise DomainError(f"excess must lie in (0, 1/2], got {self.excess}")
        if abs(self.center) + self.excess > 0.5 + 1e-9:
            raise DomainError("|center| + excess must not exceed 1/2")


@dataclass(frozen=True)
class IntervalRun:
    """Scaled radius statistic of one replica, with the final state.

    The final center is a proxy for the limiting center; its residual bias
    is bounded by ``radius - 1/2``.
    """

    scaled: float
    center: float
    radius: float
    n: int

    @property
    def bias_bound(self) -> float:
        return self.radius - 0.5


def interval_new(law: DfForm) -> IntervalState:
    """Start state: the interval [-1, 1]."""
    return IntervalState(0.0, 1.0, law)


def thinned_new(c: float, delta: float) -> ThinnedIntervalState:
    return ThinnedIntervalState(0.0, 0.5, c, delta)


def apply_full_step(s: IntervalState, x: float) -> IntervalState:
    """Intersect with the unit-radius translate around the point at quantile x.

    The point is ``p = Z - r + 2 r x``; the new interval is
    ``[max(Z - r, p - 1), min(Z + r, p + 1)]``.  The new radius must agree
    with the one-line recursion ``1/2 + r min(x, 1-x)`` (no-change branch
    when ``min(x, 1-x) > 1 - 1/(2r)``), which is asserted as a cross-check.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError("quantile draw must lie in [0, 1]")
    z, r = s.center, s.radius
    p = z - r + 2.0 * r * x
    if p - 1.0 <= z - r and p + 1.0 >= z + r:
        return s  # translate covers the interval: no change, exactly
    lo = max(z - r, p - 1.0)
    hi = min(z + r, p + 1.0)
    new = IntervalState(0.5 * (lo + hi), 0.5 * (hi - lo), s.law)
    m = min(x, 1.0 - x)
    expected = 0.5 + r * m if m <= 1.0 - 1.0 / (2.0 * r) else r
    assert abs(new.radius - expected) <= 1e-12, "geometric step diverged from radius recursion"
    return new


def step_full(s: IntervalState, rng: RngStream) -> IntervalState:
    return apply_full_step(s, float(df_form_ppf(rng.uniform(), s.law)))


def apply_thinned_step(s: ThinnedIntervalState, xi: int, v: float) -> ThinnedIntervalState:
    """One change step: center moves by ``xi * excess * (1 - v)``, excess scales by v."""
    if xi not in (-1, 1):
        raise DomainError("xi must be +1 or -1")
    if not 0.0 <= v <= 1.0:
        raise DomainError("v must lie in [0, 1]")
    return ThinnedIntervalState(
        s.center + xi * s.excess * (1.0 - v), s.excess * v, s.c, s.delta
    )


def step_thinned(s: ThinnedIntervalState, rng: RngStream) -> ThinnedIntervalState:
    """Draw ``xi`` (+1 with probability 1 - c) and ``V`` with CDF ``x**delta``."""
    u_sign = rng.uniform()
    u_mult = rng.uniform()
    xi = 1 if u_sign < 1.0 - s.c else -1
    v = float(u_mult ** (1.0 / s.delta))
    return apply_thinned_step(s, xi, v)


_MAX_TERMS = 100_000


def center_series_sample(rng: RngStream, c: float, delta: float, tol: float) -> float:
    """Truncated series sample of the limiting center.

    Accumulates ``(1/2) sum xi_i V_1...V_{i-1} (1 - V_i)`` and stops once the
    deterministic tail bound ``(1/2) V_1...V_n`` drops below ``tol``, so the
    absolute truncation error is below ``tol``.
    """
    if not (0.0 < c < 1.0):
        raise DomainError("series sampler requires c in (0, 1)")
    if not delta > 0.0:
        raise DomainError("delta must be positive")
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    z = 0.0
    pref = 0.5
    for _ in range(_MAX_TERMS):
        u_sign = rng.uniform()
        u_mult = rng.uniform()
        xi = 1.0 if u_sign < 1.0 - c else -1.0
        v = u_mult ** (1.0 / delta)
        z += xi * pref * (1.0 - v)
        pref *= v
        if pref < tol:
            return z
    raise StateCorruptionError("center series failed to reach the truncation bound")


def center_series_batch(rng: RngStream, c: float, delta: float, tol: float, size: int):
    """Vectorized series sampler drawing all replicas from one stream.

    Term-major draw order (every slot draws each term, finished slots ignore
    theirs), so the batch is deterministic but is not a per-replica replay of
    :func:`center_series_sample`.
    """
    if not (0.0 < c < 1.0):
        raise DomainError("series sampler requires c in (0, 1)")
    if not delta > 0.0:
        raise DomainError("delta must be positive")
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    z = np.zeros(size)
    pref = np.full(size, 0.5)
    active = np.ones(size, dtype=bool)
    for _ in range(_MAX_TERMS):
        u_sign = rng.uniform(size)
        u_mult = rng.uniform(size)
        xi = np.where(u_sign < 1.0 - c, 1.0, -1.0)
        v = u_mult ** (1.0 / delta)
        z = np.where(active, z + xi * pref * (1.0 - v), z)
        pref = np.where(active, pref * v, pref)
        active = pref >= tol
        if not active.any():
            return z
    raise StateCorruptionError("center series failed to reach the truncation bound")


def perpetuity_step(z, rng: RngStream, c: float, delta: float):
    """One fixed-point update of the limit-center law: ``(1/2) xi (1-V) + V z``.

    Equivalent to prepending a single thinned change step to the chain whose
    limit the samples represent; a fixed point of this map is exactly the
    limiting center distribution.
    """
    if not (0.0 < c < 1.0):
        raise DomainError("perpetuity map requires c in (0, 1)")
    z = np.asarray(z, dtype=float)
    u_sign = rng.uniform(z.shape if z.ndim else None)
    u_mult = rng.uniform(z.shape if z.ndim else None)
    xi = np.where(np.asarray(u_sign) < 1.0 - c, 1.0, -1.0)
    v = np.asarray(u_mult) ** (1.0 / delta)
    out = 0.5 * xi * (1.0 - v) + v * z
    return float(out) if out.ndim == 0 else out


def run_scaled(s: IntervalState, n: int, rng: RngStream) -> IntervalRun:
    """Advance ``n`` full steps and return ``4 n**(1/delta) (r_n - 1/2)``."""
    if n < 1:
        raise DomainError("step count must be >= 1")
    x_all = df_form_ppf(rng.uniform(n), s.law)
    state = s
    for x in x_all:
        state = apply_full_step(state, float(x))
    scaled = 4.0 * n ** (1.0 / s.law.delta) * (state.radius - 0.5)
    return IntervalRun(scaled, state.center, state.radius, n)


def run_full_batch(
    law: DfForm,
    n: int,
    replicas: int,
    seed: int,
    path: tuple[int, ...] = (),
    chunk: int = 8192,
):
    """Run independent replicas of the full process, vectorized per step.

    Replica ``r`` consumes exactly the uniforms of ``RngStream(seed, r, path)``
    in trajectory order (fetched from the live streams in step blocks), so
    each row reproduces the scalar :func:`run_scaled` trajectory for the
    same stream.  Returns ``(radii, centers)``.
    """
    if n < 1 or replicas < 1:
        raise DomainError("n and replicas must be >= 1")
    radii = np.empty(replicas)
    centers = np.empty(replicas)
    for start in range(0, replicas, chunk):
        stop = min(start + chunk, replicas)
        c = stop - start
        streams = [RngStream(seed, r, path) for r in range(start, stop)]
        block = max(1, min(n, int(48e6 / (c * 8))))
        u = np.empty((c, block))
        z = np.zeros(c)
        r = np.ones(c)
        done = 0
        while done < n:
            width = min(block, n - done)
            for i, s in enumerate(streams):
                u[i, :width] = s.uniform(width)
            x = df_form_ppf(u[:, :width], law)
            for t in range(width):
                xt = x[:, t]
                p = z - r + 2.0 * r * xt
                keep = (p - 1.0 <= z - r) & (p + 1.0 >= z + r)
                lo = np.maximum(z - r, p - 1.0)
                hi = np.minimum(z + r, p + 1.0)
                z = np.where(keep, z, 0.5 * (lo + hi))
                r = np.where(keep, r, 0.5 * (hi - lo))
            done += width
        radii[start:stop] = r
        centers[start:stop] = z
    return radii, centers
