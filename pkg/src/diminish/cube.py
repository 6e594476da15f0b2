"""The d-dimensional cube process as a product of independent interval processes.

A uniform point in an axis-aligned box has independent uniform coordinates,
so each axis of the cube process evolves as a one-dimensional interval
process.  No native d-dimensional sampler exists here by design; axis ``a``
of replica stream ``rng`` always draws from ``rng.substream(a)``, which makes
axis assignment a pure relabeling of sub-streams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import DfForm, RngStream
from .errors import DomainError
from .interval import IntervalState, interval_new, run_full_batch, step_full

__all__ = ["CubeState", "CubeRun", "UNIFORM_LAW", "cube_new", "cube_trajectory", "cube_run", "cube_run_batch"]

UNIFORM_LAW = DfForm(c=0.5, delta=1.0)


@dataclass(frozen=True)
class CubeState:
    """One interval state per axis, driven by the uniform law."""

    components: tuple[IntervalState, ...]

    @property
    def dimension(self) -> int:
        return len(self.components)

    @property
    def edges(self) -> np.ndarray:
        return np.array([2.0 * c.radius for c in self.components])

    @property
    def centers(self) -> np.ndarray:
        return np.array([c.center for c in self.components])


@dataclass(frozen=True)
class CubeRun:
    """Per-axis scaled edge excesses ``2n (m_i - 1)``, centers, and the scaled max edge."""

    edge_excess: np.ndarray
    centers: np.ndarray
    scaled_max: float
    n: int


def cube_new(d: int) -> CubeState:
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    return CubeState(tuple(interval_new(UNIFORM_LAW) for _ in range(d)))


def cube_trajectory(d: int, n: int, rng: RngStream) -> tuple[np.ndarray, np.ndarray]:
    """Centers and radii of every axis after steps 0..n; shape (n+1, d)."""
    if d < 1 or n < 1:
        raise DomainError("d and n must be >= 1")
    centers = np.zeros((n + 1, d))
    radii = np.ones((n + 1, d))
    for a in range(d):
        axis_rng = rng.substream(a)
        state = interval_new(UNIFORM_LAW)
        for t in range(1, n + 1):
            state = step_full(state, axis_rng)
            centers[t, a] = state.center
            radii[t, a] = state.radius
    return centers, radii


def cube_run(d: int, n: int, rng: RngStream) -> CubeRun:
    """Run d independent axis processes and return the scaled edge statistics."""
    centers, radii = cube_trajectory(d, n, rng)
    edges = 2.0 * radii[-1]
    excess = 2.0 * n * (edges - 1.0)
    return CubeRun(excess, centers[-1].copy(), float(excess.max()), n)


def cube_run_batch(d: int, n: int, replicas: int, seed: int, chunk: int = 1024):
    """Vectorized replicas; axis ``a`` of replica ``r`` draws stream ``(seed, r, a)``.

    Returns ``(scaled_max, edge_excess, centers)`` with shapes
    ``(replicas,)``, ``(replicas, d)``, ``(replicas, d)``.
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    excess = np.empty((replicas, d))
    centers = np.empty((replicas, d))
    for a in range(d):
        radii, cent = run_full_batch(UNIFORM_LAW, n, replicas, seed, path=(a,), chunk=chunk)
        excess[:, a] = 2.0 * n * (2.0 * radii - 1.0)
        centers[:, a] = cent
    return excess.max(axis=1), excess, centers
