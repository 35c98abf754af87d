"""Exact joint pmfs and brute-force negative-orthant-dependence checks.

A finite collection (X_1, ..., X_n) is negatively orthant dependent (NOD)
when, for every x in R^n, both

    P(X_1 <= x_1, ..., X_n <= x_n)  <=  prod_i P(X_i <= x_i)
    P(X_1 >  x_1, ..., X_n >  x_n)  <=  prod_i P(X_i >  x_i)

hold.  For a finite-support joint law both sides are step functions of x,
constant between support values, so checking every combination of
per-coordinate cut points decides the property exactly.  The cut set per
coordinate is the support values plus one point below the minimum: the
below-minimum cut makes a coordinate's constraint vacuous, which is how
the definition's x_i -> -inf (subset) cases are reached for the upper
orthant family.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import stats

from .errors import (
    ContinuousKind,
    EnumerationBudgetExceeded,
    GridOverflow,
    IntegrationFailure,
    InvalidParameter,
    MixedMonotonicity,
)
from .schemes import GaussianSpec, WeightScheme

__all__ = [
    "JointPMF",
    "NodReport",
    "enumerate_joint",
    "check_nod",
    "check_monotone_closure",
    "check_nod_gaussian",
    "comonotone_pair",
]

_GRID_CAP = 2_000_000  # max number of cut-point combinations per orthant family


@dataclass(frozen=True)
class JointPMF:
    """Exact finite-support joint distribution over weight vectors.

    ``probs_exact`` optionally carries the same probabilities as
    Fractions, enabling rational-arithmetic NOD checks with zero
    floating-point slack.
    """

    n: int
    support: np.ndarray          # (S, n)
    probs: np.ndarray            # (S,)
    probs_exact: tuple[Fraction, ...] | None = None
    label: str = ""

    def __post_init__(self):
        if self.support.shape != (len(self.probs), self.n):
            raise InvalidParameter("support/probs shape mismatch")
        if np.any(self.probs < 0) or abs(self.probs.sum() - 1.0) > 1e-12:
            raise InvalidParameter("probs must be nonnegative and sum to 1")
        if len(np.unique(self.support, axis=0)) != len(self.support):
            raise InvalidParameter("support points must be distinct")
        if self.probs_exact is not None:
            if len(self.probs_exact) != len(self.probs):
                raise InvalidParameter("probs_exact length mismatch")
            if sum(self.probs_exact) != 1:
                raise InvalidParameter("probs_exact must sum to exactly 1")

    def marginal_moment(self, j: int, order: float) -> float:
        """Sum-out moment E|X_j|^order, for cross-checks against closed forms."""
        return float(np.sum(self.probs * np.abs(self.support[:, j]) ** order))


@dataclass(frozen=True)
class NodReport:
    """Result of an orthant-inequality scan.

    Positive ``max_*_violation`` means the corresponding inequality family
    fails somewhere; the witness is a cut-point vector attaining the
    overall maximum.  When the input carried exact probabilities the
    ``exact_*`` fields hold the same maxima as Fractions.
    """

    max_lower_violation: float
    max_upper_violation: float
    witness: tuple[float, ...]
    witness_lower: tuple[float, ...]
    witness_upper: tuple[float, ...]
    exact_lower: Fraction | None = None
    exact_upper: Fraction | None = None
    error_budget: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.exact_lower is not None

    def is_nod(self, tol: float = 1e-12) -> bool:
        if self.exact:
            return self.exact_lower <= 0 and self.exact_upper <= 0
        bound = tol + self.error_budget
        return self.max_lower_violation <= bound and self.max_upper_violation <= bound

    def as_text(self) -> str:
        lines = [
            "NOD orthant check" + (f" [{self.meta.get('scheme', '')}]" if self.meta else ""),
            f"  arithmetic          : {'exact rational' if self.exact else 'float64'}",
            f"  max lower violation : {self.max_lower_violation: .6e}",
            f"  max upper violation : {self.max_upper_violation: .6e}",
            f"  witness             : {tuple(round(w, 12) for w in self.witness)}",
            f"  error budget        : {self.error_budget:.2e}",
            f"  NOD holds           : {self.is_nod()}",
        ]
        return "\n".join(lines)

    def as_csv_row(self) -> list:
        return [
            self.meta.get("scheme", ""),
            self.meta.get("n", len(self.witness)),
            self.meta.get("params", ""),
            repr(self.max_lower_violation),
            repr(self.max_upper_violation),
            " ".join(repr(w) for w in self.witness),
        ]

    CSV_HEADER = ["scheme", "n", "params", "max_lower_violation",
                  "max_upper_violation", "witness"]


# ---------------------------------------------------------------------------
# exact enumeration


def _compositions(total: int, parts: int):
    """Yield all weak compositions of `total` into `parts` parts."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def enumerate_joint(scheme: WeightScheme, n: int, budget: int = 200_000,
                    exact: bool = True) -> JointPMF:
    """Exact joint pmf of a finite-support scheme at small n.

    Supports multinomial (small m), hypergeometric delete-d, downweight-d
    and over-replacement kinds.  Probabilities come from the closed-form
    pmfs; with ``exact=True`` they are carried as Fractions as well.
    Continuous kinds raise :class:`ContinuousKind` -- for the Gaussian
    scheme use :func:`check_nod_gaussian`, and the Dirichlet scheme is
    documented as NOD on the strength of the literature, not checked here.
    """
    if n < 2:
        raise InvalidParameter("need n >= 2")
    kind = scheme.kind
    if kind in ("bayesian_dirichlet", "independent", "gaussian_nod"):
        raise ContinuousKind(
            f"{kind} has continuous support; exact enumeration is impossible. "
            "Use check_nod_gaussian for the Gaussian scheme."
        )

    if kind == "multinomial":
        m = scheme.m_schedule(n)
        count = math.comb(m + n - 1, n - 1)
        if count > budget:
            raise EnumerationBudgetExceeded(f"support size {count} > budget {budget}")
        p_exact = scheme.probs_rule.exact(n)
        support, fracs = [], []
        fact = [math.factorial(k) for k in range(m + 1)]
        for comp in _compositions(m, n):
            coeff = Fraction(math.factorial(m))
            for k in comp:
                coeff /= fact[k]
            prob = coeff
            for k, pj in zip(comp, p_exact):
                prob *= pj ** k
            support.append(comp)
            fracs.append(prob)
    elif kind == "hypergeometric_delete_d":
        d = scheme.d_rule(n)
        count = math.comb(n, n - d)
        if count > budget:
            raise EnumerationBudgetExceeded(f"support size {count} > budget {budget}")
        support, fracs = [], []
        q = Fraction(1, count)
        for kept in itertools.combinations(range(n), n - d):
            row = [0.0] * n
            for i in kept:
                row[i] = 1.0
            support.append(tuple(row))
            fracs.append(q)
    elif kind == "downweight_d":
        d = scheme.d_rule(n)
        count = math.comb(n, d)
        if count > budget:
            raise EnumerationBudgetExceeded(f"support size {count} > budget {budget}")
        lo, hi = d / n, 1.0 + d / n
        support, fracs = [], []
        q = Fraction(1, count)
        for downs in itertools.combinations(range(n), d):
            row = [hi] * n
            for i in downs:
                row[i] = lo
            support.append(tuple(row))
            fracs.append(q)
    elif kind == "over_replacement":
        count = math.comb(2 * n - 1, n - 1)
        if count > budget:
            raise EnumerationBudgetExceeded(f"support size {count} > budget {budget}")
        support = [comp for comp in _compositions(n, n)]
        fracs = [Fraction(1, count)] * len(support)
    else:
        raise ContinuousKind(f"cannot enumerate kind {kind!r}")

    assert sum(fracs) == 1
    return JointPMF(
        n=n,
        support=np.asarray(support, dtype=float),
        probs=np.array([float(f) for f in fracs]),
        probs_exact=tuple(fracs) if exact else None,
        label=scheme.label(),
    )


# ---------------------------------------------------------------------------
# orthant scans


def _cut_points(support: np.ndarray) -> list[np.ndarray]:
    """Per-coordinate cut grid: unique support values plus one below min."""
    cuts = []
    for i in range(support.shape[1]):
        u = np.unique(support[:, i])
        cuts.append(np.concatenate(([u[0] - 1.0], u)))
    return cuts


def _scan_float(support: np.ndarray, probs: np.ndarray, cuts: list[np.ndarray]):
    n = support.shape[1]
    le = [support[:, i][:, None] <= cuts[i][None, :] for i in range(n)]
    f_lo = [probs @ le[i] for i in range(n)]           # P(X_i <= cut)
    f_up = [probs @ ~le[i] for i in range(n)]          # P(X_i >  cut)
    best = {"lo": (-np.inf, None), "up": (-np.inf, None)}
    for idx in itertools.product(*(range(len(c)) for c in cuts)):
        mask_lo = le[0][:, idx[0]].copy()
        for i in range(1, n):
            mask_lo &= le[i][:, idx[i]]
        p_lo = float(probs[mask_lo].sum())
        mask_up = ~le[0][:, idx[0]]
        for i in range(1, n):
            mask_up &= ~le[i][:, idx[i]]
        p_up = float(probs[mask_up].sum())
        prod_lo = math.prod(float(f_lo[i][idx[i]]) for i in range(n))
        prod_up = math.prod(float(f_up[i][idx[i]]) for i in range(n))
        x = tuple(float(cuts[i][idx[i]]) for i in range(n))
        v_lo = p_lo - prod_lo
        v_up = p_up - prod_up
        if v_lo > best["lo"][0]:
            best["lo"] = (v_lo, x)
        if v_up > best["up"][0]:
            best["up"] = (v_up, x)
    return best


def _scan_exact(support: np.ndarray, probs_exact, cuts: list[np.ndarray]):
    n = support.shape[1]
    rows = [tuple(row) for row in support.tolist()]
    best = {"lo": (None, None), "up": (None, None)}
    marg_lo = []
    marg_up = []
    for i in range(n):
        col_lo, col_up = [], []
        for c in cuts[i]:
            lo = sum((p for row, p in zip(rows, probs_exact) if row[i] <= c), Fraction(0))
            col_lo.append(lo)
            col_up.append(1 - lo)
        marg_lo.append(col_lo)
        marg_up.append(col_up)
    for idx in itertools.product(*(range(len(c)) for c in cuts)):
        x = tuple(float(cuts[i][idx[i]]) for i in range(n))
        p_lo = Fraction(0)
        p_up = Fraction(0)
        for row, p in zip(rows, probs_exact):
            if all(row[i] <= x[i] for i in range(n)):
                p_lo += p
            if all(row[i] > x[i] for i in range(n)):
                p_up += p
        prod_lo = math.prod((marg_lo[i][idx[i]] for i in range(n)), start=Fraction(1))
        prod_up = math.prod((marg_up[i][idx[i]] for i in range(n)), start=Fraction(1))
        v_lo = p_lo - prod_lo
        v_up = p_up - prod_up
        if best["lo"][0] is None or v_lo > best["lo"][0]:
            best["lo"] = (v_lo, x)
        if best["up"][0] is None or v_up > best["up"][0]:
            best["up"] = (v_up, x)
    return best


def check_nod(joint: JointPMF, meta: dict | None = None) -> NodReport:
    """Scan both orthant inequality families over the full cut grid.

    NOD holds iff both reported maxima are <= 0 (within 1e-12 in float
    arithmetic; exactly when the pmf carries rational probabilities).
    """
    cuts = _cut_points(joint.support)
    grid = math.prod(len(c) for c in cuts)
    if grid > _GRID_CAP or grid * len(joint.probs) > 5e7:
        raise GridOverflow(f"cut grid of {grid} points over {len(joint.probs)} "
                           "support rows is too large")
    meta = dict(meta or {})
    meta.setdefault("scheme", joint.label)
    meta.setdefault("n", joint.n)

    if joint.probs_exact is not None:
        best = _scan_exact(joint.support, joint.probs_exact, cuts)
        (v_lo, w_lo), (v_up, w_up) = best["lo"], best["up"]
        f_lo, f_up = float(v_lo), float(v_up)
        witness = w_lo if v_lo >= v_up else w_up
        return NodReport(f_lo, f_up, witness, w_lo, w_up,
                         exact_lower=v_lo, exact_upper=v_up, meta=meta)
    best = _scan_float(joint.support, joint.probs, cuts)
    (v_lo, w_lo), (v_up, w_up) = best["lo"], best["up"]
    witness = w_lo if v_lo >= v_up else w_up
    return NodReport(v_lo, v_up, witness, w_lo, w_up, meta=meta)


def _transform_direction(f, values: np.ndarray) -> int:
    """+1 nondecreasing, -1 nonincreasing, 0 constant on the given values."""
    out = np.asarray([f(v) for v in np.sort(values)], dtype=float)
    d = np.diff(out)
    if np.all(d >= 0) and np.all(d <= 0):
        return 0
    if np.all(d >= 0):
        return 1
    if np.all(d <= 0):
        return -1
    raise MixedMonotonicity("transform is not monotone on the coordinate support")


def check_monotone_closure(joint: JointPMF, transforms) -> NodReport:
    """NOD check of the coordinate-wise transformed joint law.

    All transforms must be nondecreasing, or all nonincreasing (monotone
    maps applied in the same direction preserve NOD; mixing directions
    does not, and raises :class:`MixedMonotonicity`).  Duplicate
    transformed support points are merged before the scan.
    """
    transforms = list(transforms)
    if len(transforms) != joint.n:
        raise InvalidParameter("need one transform per coordinate")
    directions = [_transform_direction(f, joint.support[:, i])
                  for i, f in enumerate(transforms)]
    nonzero = {d for d in directions if d != 0}
    if len(nonzero) > 1:
        raise MixedMonotonicity(
            "transforms mix nondecreasing and nonincreasing coordinates; "
            "NOD closure is not guaranteed"
        )
    new_support = np.empty_like(joint.support)
    for i, f in enumerate(transforms):
        new_support[:, i] = [f(v) for v in joint.support[:, i]]

    merged: dict[tuple, list] = {}
    exact = joint.probs_exact is not None
    for r, row in enumerate(map(tuple, new_support.tolist())):
        slot = merged.setdefault(row, [0.0, Fraction(0) if exact else None])
        slot[0] += float(joint.probs[r])
        if exact:
            slot[1] += joint.probs_exact[r]
    rows = sorted(merged)
    probs = np.array([merged[r][0] for r in rows])
    probs = probs / probs.sum()
    transformed = JointPMF(
        n=joint.n,
        support=np.asarray(rows, dtype=float),
        probs=probs,
        probs_exact=tuple(merged[r][1] for r in rows) if exact else None,
        label=joint.label + "|transformed",
    )
    return check_nod(transformed)


# ---------------------------------------------------------------------------
# Gaussian orthants by numerical integration


def _mvn_orthant(x: np.ndarray, mean: np.ndarray, cov: np.ndarray,
                 abseps: float, upper: bool) -> float:
    """P(X <= x) or P(X > x) for X ~ N(mean, cov), with a convergence check.

    Evaluates the Genz integration at two budgets; if the two values
    disagree by more than the requested tolerance the integration has not
    converged and :class:`IntegrationFailure` is raised with the achieved
    discrepancy.
    """
    if upper:
        x, mean = -x, -mean
    kw = dict(mean=mean, cov=cov, allow_singular=True, abseps=abseps / 4, releps=0.0)
    dim = len(x)
    v1 = float(stats.multivariate_normal.cdf(x, maxpts=250_000 * dim, **kw))
    v2 = float(stats.multivariate_normal.cdf(x, maxpts=1_000_000 * dim, **kw))
    if abs(v1 - v2) > abseps:
        raise IntegrationFailure(
            f"Gaussian orthant integral unstable: achieved error ~{abs(v1 - v2):.2e} "
            f"> requested {abseps:.2e}"
        )
    return min(1.0, max(0.0, v2))


def check_nod_gaussian(spec: GaussianSpec, n: int, grid, abseps: float = 1e-8) -> NodReport:
    """NOD scan for equicorrelated Gaussian weights at n <= 4.

    Orthant probabilities come from adaptive numerical integration of the
    Gaussian density (absolute error <= ``abseps`` each); marginal tail
    values are exact normal cdfs.  The integration budget is folded into
    the report's violation tolerance via ``error_budget``.

    ``grid`` is either one array of cut points used for every coordinate
    or a sequence of n arrays.
    """
    if n > 4:
        raise InvalidParameter("gaussian NOD scan supported only for n <= 4")
    rho = spec.resolve_rho(n)
    mean = np.full(n, spec.mean)
    cov = spec.covariance(n)
    sd = math.sqrt(spec.sigma2)
    grid = np.asarray(grid, dtype=float)
    cuts = [np.asarray(g, dtype=float) for g in grid] if grid.ndim == 2 \
        else [grid] * n

    best = {"lo": (-np.inf, None), "up": (-np.inf, None)}
    for xs in itertools.product(*cuts):
        x = np.asarray(xs)
        z = (x - spec.mean) / sd
        p_lo = _mvn_orthant(x, mean, cov, abseps, upper=False)
        p_up = _mvn_orthant(x, mean, cov, abseps, upper=True)
        v_lo = p_lo - math.prod(stats.norm.cdf(z))
        v_up = p_up - math.prod(stats.norm.sf(z))
        if v_lo > best["lo"][0]:
            best["lo"] = (v_lo, xs)
        if v_up > best["up"][0]:
            best["up"] = (v_up, xs)
    (v_lo, w_lo), (v_up, w_up) = best["lo"], best["up"]
    witness = w_lo if v_lo >= v_up else w_up
    return NodReport(
        v_lo, v_up, tuple(witness), tuple(w_lo), tuple(w_up),
        error_budget=abseps,
        meta={"scheme": f"gaussian_nod(rho={rho:g})", "n": n,
              "params": spec.label()},
    )


def comonotone_pair() -> JointPMF:
    """The canonical NOD-violating law: mass 1/2 on (0,0) and 1/2 on (1,1)."""
    return JointPMF(
        n=2,
        support=np.array([[0.0, 0.0], [1.0, 1.0]]),
        probs=np.array([0.5, 0.5]),
        probs_exact=(Fraction(1, 2), Fraction(1, 2)),
        label="comonotone_pair",
    )
