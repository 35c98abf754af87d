"""Random-weight resampling schemes.

Generates weight vectors ``(W_1, ..., W_n)`` for the catalogue of
resampling procedures handled by this package:

* ``multinomial`` -- Multinomial(m_n, (p_1, ..., p_n)); the classical
  bootstrap at m_n = n with uniform probabilities, the m-out-of-n
  bootstrap for m_n < n, unequal-probability resampling otherwise.
* ``bayesian_dirichlet`` -- flat Dirichlet weights summing to one
  (the Bayesian bootstrap).
* ``hypergeometric_delete_d`` -- 0/1 indicator weights with exactly
  n - d ones (delete-d jackknife / sampling without replacement).
* ``downweight_d`` -- d random indices carry weight d/n, the rest
  1 + d/n; total weight exactly n (downweight-d jackknife).
* ``over_replacement`` -- uniform over weak compositions of n into n
  nonnegative integer parts (i.i.d. geometrics conditioned on their sum).
* ``independent`` -- i.i.d. nonnegative weights from a configurable
  marginal law (unit-mean exponential by default).
* ``gaussian_nod`` -- equicorrelated multivariate Gaussian weights with
  correlation rho <= 0; entries may be negative.

Every sampler is driven by an explicit ``numpy.random.Generator`` and is
pure given the generator state, so callers can hand each replicate its
own substream (see :mod:`ulln.rng`) and run them concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy import special, stats

from .errors import AnalyticUnavailable, InvalidParameter

__all__ = [
    "MSchedule",
    "ProbsRule",
    "DRule",
    "IndepLaw",
    "GaussianSpec",
    "WeightScheme",
    "WeightVector",
    "MomentEstimate",
    "sample_weights",
    "sample_weight_matrix",
    "sample_over_replacement",
    "sample_gaussian_nod",
    "marginal_moment",
    "weight_means",
    "sum_abs_moment",
    "multinomial_scheme",
    "dirichlet_scheme",
    "delete_d_scheme",
    "downweight_scheme",
    "over_replacement_scheme",
    "independent_scheme",
    "gaussian_scheme",
]

KINDS = (
    "multinomial",
    "bayesian_dirichlet",
    "hypergeometric_delete_d",
    "downweight_d",
    "over_replacement",
    "independent",
    "gaussian_nod",
)


# ---------------------------------------------------------------------------
# parameter rules


@dataclass(frozen=True)
class MSchedule:
    """Resample-size schedule n -> m_n.

    kinds: ``identity`` (m_n = n), ``power`` (m_n = ceil(n**gamma) with
    gamma in (0, 1]), ``log`` (m_n = ceil(log(n)**(1+delta)) with
    delta > 0), ``fixed`` (constant m, mainly for exact enumeration).
    """

    kind: str = "identity"
    param: float | None = None

    def __post_init__(self):
        if self.kind == "power":
            if self.param is None or not 0 < self.param <= 1:
                raise InvalidParameter("power schedule needs gamma in (0, 1]")
        elif self.kind == "log":
            if self.param is None or self.param <= 0:
                raise InvalidParameter("log schedule needs delta > 0")
        elif self.kind == "fixed":
            if self.param is None or int(self.param) < 1:
                raise InvalidParameter("fixed schedule needs m >= 1")
        elif self.kind != "identity":
            raise InvalidParameter(f"unknown m_schedule kind {self.kind!r}")

    def __call__(self, n: int) -> int:
        if self.kind == "identity":
            m = n
        elif self.kind == "power":
            m = math.ceil(n ** self.param)
        elif self.kind == "log":
            m = math.ceil(math.log(n) ** (1.0 + self.param))
        else:  # fixed
            m = int(self.param)
        return max(1, m)

    def label(self) -> str:
        if self.kind == "identity":
            return "identity"
        return f"{self.kind}:{self.param:g}"


@dataclass(frozen=True)
class ProbsRule:
    """Resampling probabilities (p_1, ..., p_n) for multinomial schemes.

    ``uniform`` gives p_j = 1/n.  ``alternating`` gives p_j proportional
    to 1, 2, 1, 2, ...; a non-uniform family still bounded by kappa/n.
    ``kappa`` is a constant with p_j < kappa/n for every n and j.
    """

    kind: str = "uniform"

    def __post_init__(self):
        if self.kind not in ("uniform", "alternating"):
            raise InvalidParameter(f"unknown probs rule {self.kind!r}")

    @property
    def kappa(self) -> float:
        # uniform: 1/n < 2/n; alternating: max p = 2/sum(w) < 2/n since sum(w) > n
        return 2.0

    def _weights(self, n: int) -> np.ndarray:
        if self.kind == "uniform":
            return np.ones(n)
        return 1.0 + (np.arange(n) % 2)

    def __call__(self, n: int) -> np.ndarray:
        w = self._weights(n)
        return w / w.sum()

    def exact(self, n: int) -> list[Fraction]:
        """Probabilities as exact rationals (for brute-force NOD checks)."""
        w = [1 + (j % 2) if self.kind == "alternating" else 1 for j in range(n)]
        s = sum(w)
        return [Fraction(wj, s) for wj in w]

    def label(self) -> str:
        return self.kind


@dataclass(frozen=True)
class DRule:
    """Jackknife leave-out size n -> d in {1, ..., n-1}.

    ``fixed`` uses a constant d; ``fraction`` uses d = max(1, ceil(frac*n)).
    The default fraction 0.2 matches d = ceil(n/5).
    """

    kind: str = "fraction"
    value: float = 0.2

    def __post_init__(self):
        if self.kind == "fixed":
            if int(self.value) < 1:
                raise InvalidParameter("fixed d must be >= 1")
        elif self.kind == "fraction":
            if not 0 < self.value < 1:
                raise InvalidParameter("d fraction must lie in (0, 1)")
        else:
            raise InvalidParameter(f"unknown d rule {self.kind!r}")

    def __call__(self, n: int) -> int:
        if self.kind == "fixed":
            d = int(self.value)
        else:
            d = max(1, math.ceil(self.value * n))
        if not 1 <= d <= n - 1:
            raise InvalidParameter(f"d={d} outside {{1, ..., {n - 1}}} at n={n}")
        return d

    def label(self) -> str:
        if self.kind == "fixed":
            return f"d={int(self.value)}"
        return f"d=ceil({self.value:g}n)"


@dataclass(frozen=True)
class IndepLaw:
    """Marginal law for independent weights (nonnegative, finite moments).

    ``exponential`` (scale), ``gamma`` (shape, scale), ``uniform`` (lo, hi).
    The default is the unit-mean exponential of the weighted likelihood
    bootstrap; alternatives can be configured freely.
    """

    name: str = "exponential"
    params: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        if self.name == "exponential":
            if len(self.params) != 1 or self.params[0] <= 0:
                raise InvalidParameter("exponential law needs scale > 0")
        elif self.name == "gamma":
            if len(self.params) != 2 or min(self.params) <= 0:
                raise InvalidParameter("gamma law needs shape > 0, scale > 0")
        elif self.name == "uniform":
            if len(self.params) != 2 or not 0 <= self.params[0] < self.params[1]:
                raise InvalidParameter("uniform law needs 0 <= lo < hi")
        else:
            raise InvalidParameter(f"unknown independent law {self.name!r}")

    def sample(self, rng: np.random.Generator, shape) -> np.ndarray:
        if self.name == "exponential":
            return rng.exponential(self.params[0], size=shape)
        if self.name == "gamma":
            return rng.gamma(self.params[0], self.params[1], size=shape)
        lo, hi = self.params
        return rng.uniform(lo, hi, size=shape)

    def abs_moment(self, order: float) -> float:
        if self.name == "exponential":
            return self.params[0] ** order * math.gamma(1.0 + order)
        if self.name == "gamma":
            k, s = self.params
            return math.exp(math.lgamma(k + order) - math.lgamma(k)) * s ** order
        lo, hi = self.params
        return (hi ** (order + 1) - lo ** (order + 1)) / ((order + 1) * (hi - lo))

    @property
    def mean(self) -> float:
        return self.abs_moment(1.0)

    def label(self) -> str:
        return f"{self.name}{self.params}"


@dataclass(frozen=True)
class GaussianSpec:
    """Equicorrelated Gaussian weight law N(mean, Sigma).

    Sigma has sigma2 on the diagonal and sigma2*rho off it.  ``rho`` may
    be a number in [-1/(n-1), 0] or the string ``"tightest"`` meaning
    rho = -1/(n-1), the most negative PSD-feasible equicorrelation.
    """

    mean: float = 1.0
    rho: float | str = 0.0
    sigma2: float = 1.0

    def __post_init__(self):
        if self.sigma2 <= 0:
            raise InvalidParameter("sigma2 must be > 0")
        if isinstance(self.rho, str):
            if self.rho != "tightest":
                raise InvalidParameter(f"unknown rho rule {self.rho!r}")
        elif self.rho > 0:
            raise InvalidParameter("gaussian_nod requires rho <= 0")

    def resolve_rho(self, n: int) -> float:
        """Correlation at sample size n, validated against PSD feasibility."""
        rho = -1.0 / (n - 1) if self.rho == "tightest" else float(self.rho)
        if rho < -1.0 / (n - 1) - 1e-12:
            raise InvalidParameter(
                f"rho={rho} makes the equicorrelated covariance indefinite at n={n}"
                f" (needs rho >= {-1.0 / (n - 1):.6g})"
            )
        if rho > 0:
            raise InvalidParameter("gaussian_nod requires rho <= 0")
        return rho

    def covariance(self, n: int) -> np.ndarray:
        rho = self.resolve_rho(n)
        cov = np.full((n, n), self.sigma2 * rho)
        np.fill_diagonal(cov, self.sigma2)
        return cov

    def label(self) -> str:
        return f"mean={self.mean:g},rho={self.rho},sigma2={self.sigma2:g}"


# ---------------------------------------------------------------------------
# scheme and weight-vector types


@dataclass(frozen=True)
class WeightScheme:
    """Declarative descriptor of a weighting law."""

    kind: str
    m_schedule: MSchedule = field(default_factory=MSchedule)
    probs_rule: ProbsRule = field(default_factory=ProbsRule)
    d_rule: DRule = field(default_factory=DRule)
    indep_law: IndepLaw = field(default_factory=IndepLaw)
    gaussian_spec: GaussianSpec = field(default_factory=GaussianSpec)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown scheme kind {self.kind!r}")

    def label(self) -> str:
        if self.kind == "multinomial":
            return f"multinomial(m={self.m_schedule.label()};p={self.probs_rule.label()})"
        if self.kind in ("hypergeometric_delete_d", "downweight_d"):
            return f"{self.kind}({self.d_rule.label()})"
        if self.kind == "independent":
            return f"independent({self.indep_law.label()})"
        if self.kind == "gaussian_nod":
            return f"gaussian_nod({self.gaussian_spec.label()})"
        return self.kind


def multinomial_scheme(m: MSchedule | str | int = "identity",
                       probs: ProbsRule | str = "uniform") -> WeightScheme:
    if isinstance(m, int):
        m = MSchedule("fixed", m)
    elif isinstance(m, str):
        m = MSchedule(m)
    if isinstance(probs, str):
        probs = ProbsRule(probs)
    return WeightScheme("multinomial", m_schedule=m, probs_rule=probs)


def dirichlet_scheme() -> WeightScheme:
    return WeightScheme("bayesian_dirichlet")


def delete_d_scheme(d: int | DRule) -> WeightScheme:
    rule = d if isinstance(d, DRule) else DRule("fixed", d)
    return WeightScheme("hypergeometric_delete_d", d_rule=rule)


def downweight_scheme(d: int | DRule) -> WeightScheme:
    rule = d if isinstance(d, DRule) else DRule("fixed", d)
    return WeightScheme("downweight_d", d_rule=rule)


def over_replacement_scheme() -> WeightScheme:
    return WeightScheme("over_replacement")


def independent_scheme(law: IndepLaw | None = None) -> WeightScheme:
    return WeightScheme("independent", indep_law=law or IndepLaw())


def gaussian_scheme(mean: float = 1.0, rho: float | str = 0.0,
                    sigma2: float = 1.0) -> WeightScheme:
    return WeightScheme("gaussian_nod", gaussian_spec=GaussianSpec(mean, rho, sigma2))


@dataclass(frozen=True)
class WeightVector:
    """One draw (W_1, ..., W_n) from a scheme's joint law."""

    n: int
    values: np.ndarray
    scheme_id: str
    draw_seed: str = ""

    def validate(self, scheme: WeightScheme) -> None:
        """Check the kind-specific invariant; raises InvalidParameter."""
        v = self.values
        if v.shape != (self.n,):
            raise InvalidParameter("weight vector has wrong length")
        kind = scheme.kind
        if kind == "multinomial":
            m = scheme.m_schedule(self.n)
            if not (np.all(v >= 0) and np.all(v == np.rint(v)) and v.sum() == m):
                raise InvalidParameter("multinomial invariant violated")
        elif kind == "bayesian_dirichlet":
            if not (np.all(v >= 0) and abs(v.sum() - 1.0) <= 1e-12):
                raise InvalidParameter("dirichlet invariant violated")
        elif kind == "hypergeometric_delete_d":
            d = scheme.d_rule(self.n)
            if not (np.all((v == 0) | (v == 1)) and int(v.sum()) == self.n - d):
                raise InvalidParameter("delete-d invariant violated")
        elif kind == "downweight_d":
            d = scheme.d_rule(self.n)
            lo, hi = d / self.n, 1.0 + d / self.n
            n_lo = int(np.sum(v == lo))
            # mathematically the total is exactly n; float rounding of d/n
            # can push the accumulated sum off by ~n*eps
            if not (n_lo == d and np.all((v == lo) | (v == hi))
                    and abs(v.sum() - self.n) <= 8 * np.finfo(float).eps * self.n):
                raise InvalidParameter("downweight-d invariant violated")
        elif kind == "over_replacement":
            if not (np.all(v >= 0) and np.all(v == np.rint(v)) and v.sum() == self.n):
                raise InvalidParameter("over-replacement invariant violated")
        else:
            if not np.all(np.isfinite(v)):
                raise InvalidParameter(f"{kind} produced non-finite weights")


# ---------------------------------------------------------------------------
# sampling


def _subset_indicator(rng: np.random.Generator, size: int, n: int, k: int) -> np.ndarray:
    """(size, n) 0/1 matrix; each row marks a uniform k-subset of {0..n-1}.

    Uses uniform random keys: the k smallest keys per row form a uniform
    k-subset, independent of any inclusion-probability formula.
    """
    keys = rng.random((size, n))
    sel = np.argpartition(keys, k - 1, axis=1)[:, :k]
    out = np.zeros((size, n))
    np.put_along_axis(out, sel, 1.0, axis=1)
    return out


def _compositions_uniform(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    """(size, n) uniform weak compositions of n, via stars and bars.

    A composition of n into n parts corresponds to a uniform (n-1)-subset
    of the 2n-1 slot positions (the bars); gaps between consecutive bars
    are the parts.
    """
    slots = 2 * n - 1
    keys = rng.random((size, slots))
    bars = np.sort(np.argpartition(keys, n - 2, axis=1)[:, : n - 1], axis=1)
    parts = np.empty((size, n))
    parts[:, 0] = bars[:, 0]
    parts[:, 1:-1] = np.diff(bars, axis=1) - 1
    parts[:, -1] = (slots - 1) - bars[:, -1]
    return parts


def sample_weight_matrix(scheme: WeightScheme, n: int, rng: np.random.Generator,
                         size: int = 1) -> np.ndarray:
    """Draw ``size`` independent weight vectors as a (size, n) array.

    Deterministic given (scheme, n, rng state).  Parameters are validated
    before any randomness is consumed.
    """
    if n < 2:
        raise InvalidParameter("need n >= 2")
    kind = scheme.kind
    if kind == "multinomial":
        m = scheme.m_schedule(n)
        p = scheme.probs_rule(n)
        return rng.multinomial(m, p, size=size).astype(float)
    if kind == "bayesian_dirichlet":
        return rng.dirichlet(np.ones(n), size=size)
    if kind == "hypergeometric_delete_d":
        d = scheme.d_rule(n)
        return _subset_indicator(rng, size, n, n - d)
    if kind == "downweight_d":
        d = scheme.d_rule(n)
        down = _subset_indicator(rng, size, n, d)
        return np.where(down == 1.0, d / n, 1.0 + d / n)
    if kind == "over_replacement":
        return _compositions_uniform(rng, size, n)
    if kind == "independent":
        return scheme.indep_law.sample(rng, (size, n))
    # gaussian_nod: spectral construction of the equicorrelated covariance.
    # The mean direction carries variance sigma2*(1+(n-1)rho), which is
    # exactly 0 at the tightest rho, so the rank-deficient case needs no
    # special handling.
    spec = scheme.gaussian_spec
    rho = spec.resolve_rho(n)
    sd = math.sqrt(spec.sigma2)
    g = rng.standard_normal((size, n))
    gbar = g.mean(axis=1, keepdims=True)
    c_mean = math.sqrt(max(0.0, 1.0 + (n - 1) * rho))
    return spec.mean + sd * (math.sqrt(1.0 - rho) * (g - gbar) + c_mean * gbar)


def sample_weights(scheme: WeightScheme, n: int, rng: np.random.Generator) -> WeightVector:
    """Draw one weight vector from the scheme's joint law.

    Parameters
    ----------
    scheme : WeightScheme
    n : int
        Sample size, at least 2.
    rng : numpy.random.Generator
        The caller-owned substream; identical state reproduces the draw
        bit for bit.
    """
    values = sample_weight_matrix(scheme, n, rng, size=1)[0]
    return WeightVector(n=n, values=values, scheme_id=scheme.label())


def sample_over_replacement(n: int, rng: np.random.Generator) -> WeightVector:
    """Uniform draw over all weak compositions of n into n parts.

    This is the conditional law of n i.i.d. geometrics given that their
    sum is n: the geometric pmf factor (1-p)^(sum x) is constant on the
    conditioning event, so the conditional law is uniform.
    """
    return sample_weights(over_replacement_scheme(), n, rng)


def sample_gaussian_nod(spec: GaussianSpec, n: int, rng: np.random.Generator) -> WeightVector:
    """Draw equicorrelated Gaussian weights N(mean, Sigma), rho <= 0."""
    return sample_weights(WeightScheme("gaussian_nod", gaussian_spec=spec), n, rng)


# ---------------------------------------------------------------------------
# marginal moments


class MomentEstimate(NamedTuple):
    """Monte Carlo moment with a batch-means standard error."""

    value: float
    stderr: float
    draws: int


def _over_replacement_marginal_pmf(n: int) -> np.ndarray:
    """P(W_1 = k), k = 0..n, under the uniform weak-composition law.

    P(W_1 = k) = C(2n-k-2, n-2) / C(2n-1, n-1); computed in log space.
    """
    k = np.arange(n + 1)
    log_num = special.gammaln(2 * n - k - 1) - special.gammaln(n - 1) - special.gammaln(n - k + 1)
    log_den = special.gammaln(2 * n) - special.gammaln(n) - special.gammaln(n + 1)
    pmf = np.exp(log_num - log_den)
    return pmf / pmf.sum()


def _gaussian_abs_moment(mean: float, sigma2: float, order: float) -> float:
    """E|W|^order for W ~ N(mean, sigma2), via the folded-normal form."""
    sd = math.sqrt(sigma2)
    if sd == 0:
        return abs(mean) ** order
    z = -(mean ** 2) / (2.0 * sigma2)
    return (sd ** order * 2.0 ** (order / 2.0) * special.gamma((order + 1.0) / 2.0)
            / math.sqrt(math.pi) * float(special.hyp1f1(-order / 2.0, 0.5, z)))


_ENUM_CAP = 2_000_000  # largest binomial support enumerated analytically


def _analytic_marginal_moment(scheme: WeightScheme, n: int, j: int, order: float) -> float:
    kind = scheme.kind
    if kind == "multinomial":
        m = scheme.m_schedule(n)
        if m > _ENUM_CAP:
            raise AnalyticUnavailable(f"binomial support {m} too large to enumerate")
        p = float(scheme.probs_rule(n)[j])
        k = np.arange(m + 1)
        return float(np.sum(stats.binom.pmf(k, m, p) * k.astype(float) ** order))
    if kind == "bayesian_dirichlet":
        # marginal Beta(1, n-1): E W^r = Gamma(1+r) Gamma(n) / Gamma(n+r)
        return math.exp(math.lgamma(1.0 + order) + math.lgamma(n) - math.lgamma(n + order))
    if kind == "hypergeometric_delete_d":
        d = scheme.d_rule(n)
        return (n - d) / n
    if kind == "downweight_d":
        d = scheme.d_rule(n)
        q = d / n
        return q * q ** order + (1.0 - q) * (1.0 + q) ** order
    if kind == "over_replacement":
        pmf = _over_replacement_marginal_pmf(n)
        k = np.arange(n + 1, dtype=float)
        return float(np.sum(pmf * k ** order))
    if kind == "gaussian_nod":
        spec = scheme.gaussian_spec
        spec.resolve_rho(n)
        return _gaussian_abs_moment(spec.mean, spec.sigma2, order)
    if kind == "independent":
        return scheme.indep_law.abs_moment(order)
    raise AnalyticUnavailable(f"no closed form for kind {kind!r}")


def marginal_moment(scheme: WeightScheme, n: int, j: int = 0, order: float = 1.0,
                    mode: str = "analytic", draws: int = 1_000_000,
                    rng: np.random.Generator | None = None):
    """E|W_nj|^order for coordinate j of the scheme's weight vector.

    ``mode="analytic"`` returns a float from the closed form (raises
    AnalyticUnavailable when none exists).  ``mode="monte_carlo"`` draws
    full weight vectors through the production sampler, extracts
    coordinate j, and returns a :class:`MomentEstimate` whose standard
    error comes from 20 batch means -- an oracle independent of the
    marginal-law algebra.
    """
    if order <= 0:
        raise InvalidParameter("moment order must be > 0")
    if not 0 <= j < n:
        raise InvalidParameter(f"coordinate j={j} outside 0..{n - 1}")
    if mode == "analytic":
        return _analytic_marginal_moment(scheme, n, j, order)
    if mode != "monte_carlo":
        raise InvalidParameter(f"unknown mode {mode!r}")
    if rng is None:
        raise InvalidParameter("monte_carlo mode needs an rng")
    # chunked so size x n stays within a modest memory envelope
    chunk = max(1, min(draws, int(8e6) // n))
    got = []
    remaining = draws
    while remaining > 0:
        take = min(chunk, remaining)
        got.append(np.abs(sample_weight_matrix(scheme, n, rng, size=take)[:, j]) ** order)
        remaining -= take
    x = np.concatenate(got)
    nb = 20
    batches = np.array_split(x, nb)
    means = np.array([b.mean() for b in batches])
    stderr = float(means.std(ddof=1) / math.sqrt(nb))
    return MomentEstimate(value=float(x.mean()), stderr=stderr, draws=draws)


def weight_means(scheme: WeightScheme, n: int) -> np.ndarray:
    """Analytic E(W_nj) for j = 0..n-1 (signed means, not absolute).

    Available for every kind in the catalogue; required by the
    theorem23-scaling engine, whose centering would otherwise be noisy.
    """
    kind = scheme.kind
    if kind == "multinomial":
        return scheme.m_schedule(n) * scheme.probs_rule(n)
    if kind == "bayesian_dirichlet":
        return np.full(n, 1.0 / n)
    if kind == "hypergeometric_delete_d":
        d = scheme.d_rule(n)
        return np.full(n, (n - d) / n)
    if kind in ("downweight_d", "over_replacement"):
        # both are exchangeable with total weight exactly n
        return np.ones(n)
    if kind == "independent":
        return np.full(n, scheme.indep_law.mean)
    if kind == "gaussian_nod":
        return np.full(n, scheme.gaussian_spec.mean)
    raise AnalyticUnavailable(kind)


def sum_abs_moment(scheme: WeightScheme, n: int, order: float) -> float:
    """Analytic sum over j of E|W_nj|^order."""
    if scheme.kind == "multinomial" and scheme.probs_rule.kind != "uniform":
        m = scheme.m_schedule(n)
        if m > _ENUM_CAP:
            raise AnalyticUnavailable(f"binomial support {m} too large to enumerate")
        k = np.arange(m + 1).astype(float)
        probs, counts = np.unique(scheme.probs_rule(n), return_counts=True)
        return float(sum(
            c * np.sum(stats.binom.pmf(k, m, p) * k ** order)
            for p, c in zip(probs, counts)
        ))
    return n * _analytic_marginal_moment(scheme, n, 0, order)
