"""Samplers and analytic evaluators for the limit laws of diminishing processes.

Every sampler draws from an explicit :class:`RngStream`; there is no hidden
global randomness.  Closed-form inverse CDFs are used wherever they exist
(the two-branch power family, Weibull, exponential, arcsine, simplex height,
max-of-exponentials); beta and Dirichlet variates are built from gamma
variates so that shape parameters below one are handled correctly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ConfigurationError, DomainError

__all__ = [
    "RngStream",
    "DfForm",
    "LawSpec",
    "df_form_cdf",
    "df_form_ppf",
    "df_form_sample",
    "simplex_height_sample",
    "law_eval",
    "law_sample",
    "cdf_callable",
    "dirichlet_pdf",
    "beta_sample",
    "dirichlet_sample",
    "weibull",
    "beta_law",
    "arcsine",
    "exp1",
    "max_exp",
    "dirichlet_sym",
    "simplex_height",
]


class RngStream:
    """Deterministic pseudo-random stream addressed by ``(seed, stream_id, path)``.

    Identical addresses reproduce identical draw sequences; distinct
    addresses give statistically independent streams (PCG64 seeded through
    ``numpy.random.SeedSequence`` spawn keys).  ``stream_id`` is the replica
    index; :meth:`substream` derives per-component children, e.g. one per
    cube axis.  A stream may be moved between threads but must not be shared
    concurrently.
    """

    __slots__ = ("seed", "stream_id", "path", "_gen")

    def __init__(self, seed: int, stream_id: int = 0, path: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.path = tuple(int(p) for p in path)
        key = (self.stream_id, *self.path)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=key))
        )

    def substream(self, *path: int) -> "RngStream":
        """Child stream for a sub-process (axis, component, ...)."""
        return RngStream(self.seed, self.stream_id, self.path + path)

    def uniform(self, size=None):
        """Standard uniform draws on [0, 1)."""
        return self._gen.random(size)

    def integers(self, n: int, size=None):
        """Uniform integers on {0, ..., n-1}."""
        return self._gen.integers(0, n, size=size)

    def gamma(self, shape, size=None):
        """Standard gamma variates (scale 1); valid for shape < 1."""
        return self._gen.standard_gamma(shape, size)

    def __repr__(self) -> str:  # pragma: no cover
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id}, path={self.path})"


# ---------------------------------------------------------------------------
# The two-branch power family driving the general interval process.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DfForm:
    """Distribution on [0, 1] with CDF ``c (2x)^delta`` below 1/2 and
    ``1 - (1-c) (2(1-x))^delta`` above.

    ``c`` is the total mass of [0, 1/2] and ``delta`` the shape exponent.
    The endpoints ``c = 0`` and ``c = 1`` are accepted; they concentrate all
    mass on one half and degenerate the limiting interval center to +-1/2.
    """

    c: float
    delta: float

    def __post_init__(self):
        if not (0.0 <= self.c <= 1.0):
            raise DomainError(f"mixture weight c must lie in [0, 1], got {self.c}")
        if not self.delta > 0.0:
            raise DomainError(f"shape exponent delta must be positive, got {self.delta}")


def df_form_cdf(x, f: DfForm):
    """CDF of the two-branch family; both branches evaluate to ``c`` at 1/2."""
    arr = np.asarray(x, dtype=float)
    if np.any((arr < 0.0) | (arr > 1.0)):
        raise DomainError("df_form_cdf is defined on [0, 1]")
    lower = f.c * (2.0 * arr) ** f.delta
    upper = 1.0 - (1.0 - f.c) * (2.0 * (1.0 - arr)) ** f.delta
    out = np.where(arr <= 0.5, lower, upper)
    return float(out) if out.ndim == 0 else out


def df_form_ppf(u, f: DfForm):
    """Inverse CDF.  Uniform input below ``c`` maps to the lower branch."""
    arr = np.asarray(u, dtype=float)
    if np.any((arr < 0.0) | (arr > 1.0)):
        raise DomainError("quantile argument must lie in [0, 1]")
    inv = 1.0 / f.delta
    if f.c == 0.0:
        out = 1.0 - 0.5 * (1.0 - arr) ** inv
    elif f.c == 1.0:
        out = 0.5 * arr**inv
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            lower = 0.5 * (arr / f.c) ** inv
            upper = 1.0 - 0.5 * ((1.0 - arr) / (1.0 - f.c)) ** inv
        out = np.where(arr <= f.c, lower, upper)
    return float(out) if out.ndim == 0 else out


def df_form_sample(rng: RngStream, f: DfForm, size=None):
    """Inverse-CDF sample(s); ``2 min(X, 1-X)`` then has CDF ``x**delta``."""
    return df_form_ppf(rng.uniform(size), f)


def simplex_height_sample(rng: RngStream, d: int, size=None):
    """Distance-from-base of a uniform point in a height-1 regular d-simplex.

    Returns ``1 - U**(1/d)``, whose CDF is ``1 - (1 - x)**d`` on [0, 1].
    """
    if d < 1:
        raise DomainError(f"simplex dimension must be >= 1, got {d}")
    u = rng.uniform(size)
    return 1.0 - u ** (1.0 / d)


# ---------------------------------------------------------------------------
# Named limit laws.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LawSpec:
    """A named analytic law with positive shape parameters."""

    kind: str
    params: tuple[float, ...] = ()


def weibull(delta: float) -> LawSpec:
    """Law with survival function ``exp(-x**delta)`` on x > 0."""
    if not delta > 0:
        raise DomainError("weibull shape must be positive")
    return LawSpec("weibull", (float(delta),))


def beta_law(a: float, b: float) -> LawSpec:
    if not (a > 0 and b > 0):
        raise DomainError("beta shapes must be positive")
    return LawSpec("beta", (float(a), float(b)))


def arcsine() -> LawSpec:
    """Translated arcsine law on (-1/2, 1/2)."""
    return LawSpec("arcsine")


def exp1() -> LawSpec:
    """Standard exponential."""
    return LawSpec("exp1")


def max_exp(d: int) -> LawSpec:
    """Maximum of d independent standard exponentials: CDF ``(1-exp(-x))**d``."""
    if d < 1:
        raise DomainError("max_exp dimension must be >= 1")
    return LawSpec("max_exp", (float(d),))


def dirichlet_sym(dim: int, a: float) -> LawSpec:
    """Symmetric Dirichlet with ``dim`` components of common shape ``a``."""
    if dim < 2:
        raise DomainError("dirichlet_sym needs at least two components")
    if not a > 0:
        raise DomainError("dirichlet shape must be positive")
    return LawSpec("dirichlet_sym", (float(dim), float(a)))


def simplex_height(d: int) -> LawSpec:
    """Law of the distance from the base: CDF ``1 - (1-x)**d`` on [0, 1]."""
    if d < 1:
        raise DomainError("simplex dimension must be >= 1")
    return LawSpec("simplex_height", (float(d),))


def law_eval(law: LawSpec, x, *, density: bool = False):
    """Analytic CDF of ``law`` at ``x`` (PDF with ``density=True``).

    The symmetric Dirichlet has no scalar CDF; it always evaluates its joint
    density at a simplex point.
    """
    if law.kind == "dirichlet_sym":
        dim, a = int(law.params[0]), law.params[1]
        return dirichlet_pdf(np.full(dim, a), x)
    arr = np.asarray(x, dtype=float)
    if law.kind == "weibull":
        (delta,) = law.params
        xp = np.maximum(arr, 0.0)
        out = np.where(arr > 0.0, -np.expm1(-(xp**delta)), 0.0)
        pdf = np.where(arr > 0.0, delta * xp ** (delta - 1.0) * np.exp(-(xp**delta)), 0.0)
    elif law.kind == "exp1":
        out = np.where(arr > 0.0, -np.expm1(-np.maximum(arr, 0.0)), 0.0)
        pdf = np.where(arr > 0.0, np.exp(-np.maximum(arr, 0.0)), 0.0)
    elif law.kind == "max_exp":
        (d,) = law.params
        out = np.where(arr > 0.0, (-np.expm1(-np.maximum(arr, 0.0))) ** d, 0.0)
        pdf = np.where(
            arr > 0.0,
            d * (-np.expm1(-np.maximum(arr, 0.0))) ** (d - 1.0) * np.exp(-np.maximum(arr, 0.0)),
            0.0,
        )
    elif law.kind == "beta":
        a, b = law.params
        clipped = np.clip(arr, 0.0, 1.0)
        out = special.betainc(a, b, clipped)
        with np.errstate(divide="ignore", invalid="ignore"):
            pdf = np.where(
                (arr > 0.0) & (arr < 1.0),
                np.exp(
                    (a - 1.0) * np.log(np.clip(arr, 1e-300, None))
                    + (b - 1.0) * np.log(np.clip(1.0 - arr, 1e-300, None))
                    - special.betaln(a, b)
                ),
                0.0,
            )
    elif law.kind == "arcsine":
        clipped = np.clip(arr, -0.5, 0.5)
        out = (2.0 / math.pi) * np.arcsin(np.sqrt(clipped + 0.5))
        inside = (arr > -0.5) & (arr < 0.5)
        with np.errstate(divide="ignore", invalid="ignore"):
            pdf = np.where(
                inside, 1.0 / (math.pi * np.sqrt((0.5 + clipped) * (0.5 - clipped))), 0.0
            )
    elif law.kind == "simplex_height":
        (d,) = law.params
        clipped = np.clip(arr, 0.0, 1.0)
        out = 1.0 - (1.0 - clipped) ** d
        pdf = np.where((arr >= 0.0) & (arr <= 1.0), d * (1.0 - clipped) ** (d - 1.0), 0.0)
    else:
        raise ConfigurationError(f"unsupported law kind: {law.kind!r}")
    res = pdf if density else out
    return float(res) if res.ndim == 0 else res


def law_sample(law: LawSpec, rng: RngStream, size=None):
    """Draw from ``law``; the Dirichlet returns vectors on the simplex."""
    if law.kind == "weibull":
        (delta,) = law.params
        return (-np.log1p(-rng.uniform(size))) ** (1.0 / delta)
    if law.kind == "exp1":
        return -np.log1p(-rng.uniform(size))
    if law.kind == "max_exp":
        (d,) = law.params
        return -np.log1p(-rng.uniform(size) ** (1.0 / d))
    if law.kind == "beta":
        a, b = law.params
        return beta_sample(rng, a, b, size)
    if law.kind == "arcsine":
        return np.sin(0.5 * math.pi * rng.uniform(size)) ** 2 - 0.5
    if law.kind == "simplex_height":
        (d,) = law.params
        return 1.0 - rng.uniform(size) ** (1.0 / d)
    if law.kind == "dirichlet_sym":
        dim, a = int(law.params[0]), law.params[1]
        return dirichlet_sample(rng, np.full(dim, a), size)
    raise ConfigurationError(f"unsupported law kind: {law.kind!r}")


def cdf_callable(law: LawSpec):
    """The law's CDF as a plain callable, for goodness-of-fit backends."""
    return lambda x: law_eval(law, x)


# ---------------------------------------------------------------------------
# Gamma-based samplers and the Dirichlet density.
# ---------------------------------------------------------------------------


def beta_sample(rng: RngStream, a: float, b: float, size=None):
    """Beta(a, b) via normalized gamma variates; valid for shapes < 1."""
    g1 = rng.gamma(a, size)
    g2 = rng.gamma(b, size)
    return g1 / (g1 + g2)


def dirichlet_sample(rng: RngStream, alpha, size=None):
    """Dirichlet(alpha) via normalized gamma variates.

    Returns shape ``(len(alpha),)`` or ``(size, len(alpha))``.
    """
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha <= 0):
        raise DomainError("dirichlet shapes must be positive")
    shape = (len(alpha),) if size is None else (size, len(alpha))
    g = rng.gamma(np.broadcast_to(alpha, shape))
    return g / g.sum(axis=-1, keepdims=True)


def dirichlet_pdf(alpha, x) -> float:
    """Joint density of Dirichlet(alpha) at a point of the probability simplex.

    ``x`` carries all ``len(alpha)`` coordinates (summing to one within
    1e-12); the value equals the density of the last ``d`` coordinates in
    the standard representation.  A zero coordinate with shape below one is
    reported as ``inf`` explicitly.
    """
    alpha = np.asarray(alpha, dtype=float)
    x = np.asarray(x, dtype=float)
    if alpha.shape != x.shape or alpha.ndim != 1:
        raise DomainError("alpha and x must be equal-length vectors")
    if np.any(alpha <= 0):
        raise DomainError("dirichlet shapes must be positive")
    if np.any(x < -1e-12) or abs(float(x.sum()) - 1.0) > 1e-12:
        raise DomainError("x must lie on the probability simplex (sum 1, nonnegative)")
    x = np.clip(x, 0.0, None)
    zero = x == 0.0
    if np.any(zero & (alpha < 1.0)):
        return math.inf
    if np.any(zero & (alpha > 1.0)):
        return 0.0
    live = ~zero
    log_pdf = (
        math.lgamma(float(alpha.sum()))
        - float(np.sum([math.lgamma(a) for a in alpha]))
        + float(np.sum((alpha[live] - 1.0) * np.log(x[live])))
    )
    return math.exp(log_pdf)
