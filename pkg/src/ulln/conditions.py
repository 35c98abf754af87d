"""Hypothesis checkers for the three uniform-convergence regimes.

The checkable hypotheses are exponent arithmetic (always decidable),
weight-moment growth (asymptotic, decided on a finite grid and therefore
advisory), resample-size schedules, and moment envelopes of the function
family.  Every check lands in a :class:`ConditionReport`; a report is

* ``satisfied``    -- every check passed,
* ``violated``     -- some check failed decisively,
* ``undetermined`` -- no decisive failure, but a Monte Carlo check's
                      confidence interval straddles its bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AnalyticUnavailable, InvalidParameter
from .families import DataModel, FunctionFamily
from .schemes import MSchedule, WeightScheme, marginal_moment, sum_abs_moment

__all__ = [
    "ExponentConfig",
    "CheckItem",
    "ConditionReport",
    "q_threshold",
    "check_exponent_triangle",
    "check_weight_growth",
    "check_t1_regime",
    "check_h_moment",
    "check_theorem",
]

_ADVISORY = ("asymptotic conditions are decided on a finite n-grid; "
             "verdicts are advisory")

# starts at n = 64 so pre-asymptotic moment drift does not tilt the slope fit
DEFAULT_GROWTH_GRID = (64, 256, 1024, 4096, 16384)


@dataclass(frozen=True)
class ExponentConfig:
    """Exponents quoted by one of the three convergence regimes.

    ``theorem`` is one of T1a, T1b (resample-size regimes at rate 1/m_n),
    T2, T3 (centered sums at rate 1/n^(1/p)).
    """

    theorem: str
    delta: float = 0.0
    p: float = 1.0
    alpha: float = float("nan")
    beta: float = float("nan")
    q: float = float("nan")

    def validate(self) -> None:
        t = self.theorem
        if t == "T1a":
            if not 0.0 <= self.delta < 1.0:
                raise InvalidParameter("T1a needs delta in [0, 1)")
        elif t == "T1b":
            if not self.delta > 0.0:
                raise InvalidParameter("T1b needs delta > 0")
        elif t == "T2":
            if not 1.0 <= self.p < 2.0:
                raise InvalidParameter("T2 needs p in [1, 2)")
            if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
                raise InvalidParameter("T2 needs alpha and beta")
        elif t == "T3":
            if not 1.0 < self.p < 2.0:
                raise InvalidParameter("T3 needs p in (1, 2)")
            if not math.isfinite(self.q):
                raise InvalidParameter("T3 needs q")
        else:
            raise InvalidParameter(f"unknown theorem tag {t!r}")


@dataclass(frozen=True)
class CheckItem:
    """One named inequality with its computed value and its bound.

    ``passed`` is None for Monte Carlo checks whose 4-standard-error
    interval straddles the bound.
    """

    name: str
    value: float
    bound: float
    passed: bool | None
    provenance: str = "analytic"
    direction: str = "<="

    def as_csv_row(self) -> list:
        status = {True: "pass", False: "fail", None: "undetermined"}[self.passed]
        return [self.name, repr(self.value), repr(self.bound), status, self.provenance]


@dataclass(frozen=True)
class ConditionReport:
    checks: tuple[CheckItem, ...]
    notes: tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        if any(c.passed is False for c in self.checks):
            return "violated"
        if any(c.passed is None for c in self.checks):
            return "undetermined"
        return "satisfied"

    def merged(self, other: "ConditionReport") -> "ConditionReport":
        return ConditionReport(self.checks + other.checks,
                               tuple(dict.fromkeys(self.notes + other.notes)))

    def as_text(self) -> str:
        lines = [f"condition report: {self.verdict}"]
        for c in self.checks:
            status = {True: "pass", False: "FAIL", None: "????"}[c.passed]
            lines.append(f"  [{status}] {c.name}: {c.value:.6g} {c.direction} "
                         f"{c.bound:.6g} ({c.provenance})")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)

    CSV_HEADER = ["check", "value", "bound", "status", "provenance"]

    def as_csv_rows(self) -> list[list]:
        return [c.as_csv_row() for c in self.checks]


# ---------------------------------------------------------------------------
# exponent arithmetic


def q_threshold(p: float, D: int, a: float) -> float:
    """Smallest admissible moment power for the fast-rate regime.

    Returns ((1 - 1/p) * D / a + 1) / (1/p - 1/2); as p decreases to 1
    the threshold decreases to 2.
    """
    if not 1.0 < p < 2.0:
        raise InvalidParameter("q_threshold needs p in (1, 2)")
    if D < 1 or not 0.0 < a <= 1.0:
        raise InvalidParameter("need D >= 1 and a in (0, 1]")
    return ((1.0 - 1.0 / p) * D / a + 1.0) / (1.0 / p - 0.5)


def check_exponent_triangle(p: float, alpha: float, beta: float,
                            identically_distributed: bool = False) -> ConditionReport:
    """Verify 1/alpha + 1/beta = 1/p with alpha > 2p and beta > 1.

    When alpha = beta = 2p the report notes that the identically
    distributed weights case applies even though the strict-inequality
    case fails.
    """
    resid = abs(1.0 / alpha + 1.0 / beta - 1.0 / p)
    checks = (
        CheckItem("|1/alpha + 1/beta - 1/p|", resid, 1e-12, resid <= 1e-12),
        CheckItem("alpha > 2p", alpha, 2.0 * p, alpha > 2.0 * p, direction=">"),
        CheckItem("beta > 1", beta, 1.0, beta > 1.0, direction=">"),
    )
    notes = []
    if abs(alpha - 2.0 * p) <= 1e-12 and abs(beta - 2.0 * p) <= 1e-12:
        note = "alpha = beta = 2p: identically-distributed-weights case applies"
        notes.append(note if identically_distributed
                     else note + " (candidate; weights not declared identical)")
    return ConditionReport(checks, tuple(notes))


# ---------------------------------------------------------------------------
# growth and schedule checks


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(x, y, 1)[0]) if len(x) >= 2 else 0.0


def _validate_grid(n_grid) -> np.ndarray:
    n_grid = np.asarray(sorted(set(int(n) for n in n_grid)))
    if len(n_grid) < 4:
        raise InvalidParameter("n_grid needs at least 4 points")
    if n_grid[-1] / n_grid[0] < 100:
        raise InvalidParameter("n_grid must span at least 2 decades")
    return n_grid


def check_weight_growth(scheme: WeightScheme, order: float, rate_exponent: float,
                        n_grid=DEFAULT_GROWTH_GRID, draws: int = 200_000,
                        rng: np.random.Generator | None = None) -> ConditionReport:
    """Is sum_j E|W_nj|^order = O(n^rate_exponent), judged on a grid?

    Passes when the normalized ratio stays finite and the fitted log-log
    slope of the moment sum does not exceed the target rate by more than
    0.05.  Falls back to Monte Carlo moments when no closed form exists;
    relative standard errors above 5% make the verdict undetermined.
    """
    n_grid = _validate_grid(n_grid)
    sums = np.empty(len(n_grid))
    rel_se = 0.0
    provenance = "analytic"
    for i, n in enumerate(n_grid):
        try:
            sums[i] = sum_abs_moment(scheme, int(n), order)
        except AnalyticUnavailable:
            provenance = "monte_carlo"
            if rng is None:
                rng = np.random.default_rng(0)
            est = marginal_moment(scheme, int(n), 0, order, mode="monte_carlo",
                                  draws=draws, rng=rng)
            sums[i] = n * est.value
            rel_se = max(rel_se, est.stderr / max(est.value, 1e-300))
    g = sums / n_grid.astype(float) ** rate_exponent
    slope = _slope(np.log(n_grid.astype(float)), np.log(sums))
    undecided = provenance == "monte_carlo" and rel_se > 0.05
    checks = (
        CheckItem(f"max_n sum_j E|W|^{order:g} / n^{rate_exponent:g}",
                  float(g.max()), float("inf"),
                  None if undecided else bool(np.all(np.isfinite(g))),
                  provenance),
        CheckItem(f"loglog slope of sum_j E|W|^{order:g}",
                  slope, rate_exponent + 0.05,
                  None if undecided else slope <= rate_exponent + 0.05,
                  provenance),
    )
    notes = [_ADVISORY]
    if undecided:
        notes.append(f"Monte Carlo relative stderr {rel_se:.1%} exceeds 5%")
    return ConditionReport(checks, tuple(notes))


DEFAULT_REGIME_GRID = (100, 1000, 10_000, 100_000, 1_000_000)


def check_t1_regime(m_schedule: MSchedule, regime: str, delta: float,
                    n_grid=DEFAULT_REGIME_GRID) -> ConditionReport:
    """Resample-size growth check for the two multinomial regimes.

    Regime ``a`` tests n^(1-delta)/m_n (delta in [0,1)); regime ``b``
    tests log(n)^(1+delta)/m_n (delta > 0).  Both require a bounded ratio
    with no increasing trend (log-log slope <= 0.05) beyond n >= 100.
    """
    if regime == "a":
        if not 0.0 <= delta < 1.0:
            raise InvalidParameter("regime (a) needs delta in [0, 1)")
    elif regime == "b":
        if not delta > 0.0:
            raise InvalidParameter("regime (b) needs delta > 0")
    else:
        raise InvalidParameter("regime must be 'a' or 'b'")
    n_grid = np.asarray(sorted(set(int(n) for n in n_grid)))
    m = np.array([m_schedule(int(n)) for n in n_grid], dtype=float)
    if regime == "a":
        ratio = n_grid.astype(float) ** (1.0 - delta) / m
    else:
        ratio = np.log(n_grid.astype(float)) ** (1.0 + delta) / m
    tail = n_grid >= 100
    if tail.sum() < 2:
        tail = np.ones_like(tail)
    slope = _slope(np.log(n_grid[tail].astype(float)), np.log(ratio[tail]))
    checks = (
        CheckItem(f"max ratio (regime {regime}, delta={delta:g})",
                  float(ratio.max()), float("inf"),
                  bool(np.all(np.isfinite(ratio)))),
        CheckItem("loglog slope of ratio", slope, 0.05, slope <= 0.05),
    )
    return ConditionReport(checks, (_ADVISORY,))


# ---------------------------------------------------------------------------
# moment envelopes


_FINITE_CAP = 1e12


def _quad_envelope_moment(family: FunctionFamily, model: DataModel,
                          order: float) -> float:
    from scipy import integrate
    lo, hi = model.support

    def f(x):
        xa = np.asarray([x])
        return float(family.envelope(xa)[0]) ** order * float(model.pdf(xa)[0])

    val, _ = integrate.quad(f, lo, hi, epsabs=1e-11, limit=200)
    return val


def check_h_moment(family: FunctionFamily, data_model: DataModel, order: float,
                   mode: str = "closed_form", style: str = "envelope",
                   draws: int = 1_000_000, net_radius: float | None = None,
                   rng: np.random.Generator | None = None) -> ConditionReport:
    """Finiteness (with value) of the family's moment envelope.

    ``style="envelope"`` evaluates E G(X)^order for the dominating
    envelope G: from the registered closed form, by quadrature of the
    envelope, or by Monte Carlo.  ``style="pointwise_sup"`` evaluates
    max over a parameter net of E|H(theta, X)|^order, the form the
    fast-rate regime assumes.

    Closed-form registry entries may rest on a looser envelope than the
    quadrature path (any dominating envelope certifies finiteness), so
    the two modes can legitimately return different values.
    """
    provenance = "analytic"
    notes = []
    if style == "pointwise_sup":
        from .netcover import build_net
        r = net_radius or family.diameter() / 200.0 or 1e-3
        net = build_net(family.box, r)
        if mode == "monte_carlo":
            provenance = "monte_carlo"
            if rng is None:
                rng = np.random.default_rng(0)
            per_center = np.zeros(net.size)
            done = 0
            chunk = max(1, int(4e6) // max(net.size, 1))
            while done < draws:
                take = min(chunk, draws - done)
                x = data_model.sample(rng, take)
                vals = np.abs(family.check_finite(net.centers, x)) ** order
                per_center += vals.sum(axis=1)
                done += take
            value = float((per_center / draws).max())
        else:
            from scipy import integrate
            lo, hi = data_model.support
            best = -np.inf
            for center in net.centers:
                v, _ = integrate.quad(
                    lambda x, c=center: abs(float(family.evaluate(c, x)[0])) ** order
                    * float(data_model.pdf(np.asarray([x]))[0]),
                    lo, hi, epsabs=1e-10, limit=200)
                best = max(best, v)
            value = float(best)
        name = f"sup_theta E|H(theta, X)|^{order:g} (net of {net.size})"
    elif mode == "closed_form":
        entry = family.envelope_moment.get(data_model.name)
        value = entry(order) if entry is not None else None
        if value is None:
            raise AnalyticUnavailable(
                f"no registered closed-form envelope moment for "
                f"({family.name}, {data_model.name}, order={order:g}); "
                "request quadrature or monte_carlo")
        name = f"E[G(X)^{order:g}] (registered form)"
    elif mode == "quadrature":
        value = _quad_envelope_moment(family, data_model, order)
        name = f"E[G(X)^{order:g}] (quadrature)"
    elif mode == "monte_carlo":
        provenance = "monte_carlo"
        if rng is None:
            rng = np.random.default_rng(0)
        x = data_model.sample(rng, draws)
        contrib = family.envelope(x) ** order
        value = float(contrib.mean())
        top = float(contrib.max())
        if top > 0.05 * contrib.sum():
            notes.append("heavy tail suspected: largest draw contributes "
                         f"{top / contrib.sum():.1%} of the moment estimate")
            checks = (CheckItem(f"E[G(X)^{order:g}] (monte carlo)", value,
                                _FINITE_CAP, None, provenance),)
            return ConditionReport(checks, tuple(notes))
        name = f"E[G(X)^{order:g}] (monte carlo)"
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")
    ok = bool(np.isfinite(value) and value < _FINITE_CAP)
    return ConditionReport((CheckItem(name, value, _FINITE_CAP, ok, provenance),),
                           tuple(notes))


# ---------------------------------------------------------------------------
# theorem-level bundles


def check_theorem(cfg: ExponentConfig, scheme: WeightScheme,
                  family: FunctionFamily, data_model: DataModel,
                  n_grid=DEFAULT_GROWTH_GRID,
                  rng: np.random.Generator | None = None) -> ConditionReport:
    """All applicable checks for one regime, merged into one report."""
    cfg.validate()
    t = cfg.theorem

    def envelope_order(order: float) -> ConditionReport:
        for mode in ("closed_form", "quadrature"):
            try:
                return check_h_moment(family, data_model, order, mode=mode)
            except AnalyticUnavailable:
                continue
        return check_h_moment(family, data_model, order, mode="monte_carlo",
                              draws=200_000, rng=rng)

    if t in ("T1a", "T1b"):
        ok = scheme.kind == "multinomial"
        report = ConditionReport(
            (CheckItem("scheme is multinomial", float(ok), 1.0, ok, direction="=="),))
        regime = "a" if t == "T1a" else "b"
        report = report.merged(check_t1_regime(scheme.m_schedule, regime, cfg.delta))
        order = 1.0 + cfg.delta if t == "T1a" else 2.0
        return report.merged(envelope_order(order))
    if t == "T2":
        report = check_exponent_triangle(cfg.p, cfg.alpha, cfg.beta)
        report = report.merged(check_weight_growth(scheme, cfg.alpha, 1.0,
                                                   n_grid, rng=rng))
        report = report.merged(check_weight_growth(scheme, 1.0, 1.0 / cfg.p,
                                                   n_grid, rng=rng))
        return report.merged(envelope_order(cfg.beta))
    # T3
    d_dim = family.dim
    if family.holder is None:
        return ConditionReport(
            (CheckItem("family declares a Hölder modulus", 0.0, 1.0, False,
                       direction="=="),))
    thr = q_threshold(cfg.p, d_dim, family.holder.a)
    report = ConditionReport(
        (CheckItem(f"q > q_threshold(p={cfg.p:g}, D={d_dim}, a={family.holder.a:g})"
                   f" = {thr:.6g}", cfg.q, thr, cfg.q > thr, direction=">"),))
    report = report.merged(check_weight_growth(scheme, cfg.q, 1.0, n_grid, rng=rng))
    return report.merged(check_h_moment(family, data_model, cfg.q,
                                        mode="monte_carlo", style="pointwise_sup",
                                        draws=200_000, rng=rng))
