"""Covering nets of compact parameter boxes and Hölder diagnostics.

A net is a finite set of centers in Theta together with a radius r such
that the r-balls around the centers cover Theta.  Nets are built as
axis-aligned grids: with per-axis spacing at most 2r/sqrt(D), the
farthest point of the box is within r of a center in the Euclidean
metric (the metric used throughout; the theory allows any separable
metric space, this implementation fixes Euclidean boxes).

Grid counts are upper bounds on the true covering number N(r), which is
the inequality direction the covering-number condition needs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from .errors import InvalidParameter, NetCapExceeded
from .families import DataModel, FunctionFamily

__all__ = [
    "ParameterNet",
    "build_net",
    "covering_constant",
    "build_rn_schedule",
    "estimate_holder",
    "HolderEstimate",
    "eta_modulus",
    "eta_discretization_bound",
    "covering_check",
]

_NET_CAP = 10_000_000


@dataclass(frozen=True)
class ParameterNet:
    """Finite set of centers covering a box with open balls of radius r."""

    centers: np.ndarray  # (K, D)
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidParameter("net radius must be > 0")

    @property
    def size(self) -> int:
        return self.centers.shape[0]

    @property
    def dim(self) -> int:
        return self.centers.shape[1]

    def csv_rows(self):
        header = [f"center_{k}" for k in range(self.dim)] + ["radius"]
        rows = [[repr(float(c)) for c in center] + [repr(float(self.radius))]
                for center in self.centers]
        return header, rows


def covering_check(net: ParameterNet, box: np.ndarray, samples: int = 10_000,
                   slack: float = 1e-12) -> tuple[bool, float]:
    """Verify the covering invariant on corners plus a low-discrepancy sample.

    Distances up to ``radius * (1 + slack)`` count as covered: grid nets
    attain the radius exactly at box corners when the box length is an
    integer multiple of the spacing.
    """
    box = np.asarray(box, dtype=float)
    d = box.shape[0]
    corners = np.array(np.meshgrid(*[box[k] for k in range(d)])).reshape(d, -1).T
    halton = qmc.Halton(d=d, scramble=False, seed=0).random(samples)
    interior = box[:, 0] + halton * (box[:, 1] - box[:, 0])
    pts = np.vstack([corners, interior])
    dist, _ = cKDTree(net.centers).query(pts)
    worst = float(dist.max())
    return worst <= net.radius * (1.0 + slack), worst


def build_net(box, r: float, cap: int = _NET_CAP) -> ParameterNet:
    """Axis-aligned grid net of a box at radius r.

    Per-axis spacing is at most 2r/sqrt(D) with centers offset half a
    spacing from the boundary, giving ceil(sqrt(D) * len_k / (2r)) centers
    per axis.
    """
    box = np.asarray(box, dtype=float)
    if box.ndim != 2 or box.shape[1] != 2 or np.any(box[:, 1] < box[:, 0]):
        raise InvalidParameter("box must be (D, 2) with lo <= hi")
    if r <= 0:
        raise InvalidParameter("radius must be > 0")
    d = box.shape[0]
    h = 2.0 * r / math.sqrt(d)
    counts = []
    for lo, hi in box:
        length = hi - lo
        counts.append(1 if length == 0 else max(1, math.ceil(length / h - 1e-9)))
    total = math.prod(counts)
    if total > cap:
        raise NetCapExceeded(f"net would need {total} centers (> cap {cap}); "
                             "increase r or the cap")
    axes = []
    for (lo, hi), nk in zip(box, counts):
        spacing = (hi - lo) / nk
        axes.append(lo + (np.arange(nk) + 0.5) * spacing)
    mesh = np.meshgrid(*axes, indexing="ij")
    centers = np.stack([m.ravel() for m in mesh], axis=1)
    return ParameterNet(centers=centers, radius=float(r))


class CoveringFit(NamedTuple):
    c: float
    d_fit: float


def covering_constant(box, r_grid, cap: int = _NET_CAP) -> CoveringFit:
    """Fit N(r) <= c * r**(-D) over a grid of radii.

    Least squares of log N(r) on log(1/r) gives the dimension estimate;
    c is inflated to the smallest constant making the bound hold pointwise
    at every grid radius with the fitted exponent.
    """
    r_grid = np.sort(np.asarray(r_grid, dtype=float))[::-1]
    if len(r_grid) < 4:
        raise InvalidParameter("need at least 4 radii")
    # the canonical dyadic grid 0.5 .. 0.0625 spans a factor 8; accept it
    if r_grid[0] / r_grid[-1] < 8.0:
        raise InvalidParameter("radii must span roughly a decade (factor >= 8)")
    counts = np.array([build_net(box, r, cap=cap).size for r in r_grid], dtype=float)
    logs = np.log(counts)
    x = np.log(1.0 / r_grid)
    if np.allclose(logs, logs[0]):
        d_fit, intercept = 0.0, logs[0]
    else:
        d_fit, intercept = np.polyfit(x, logs, 1)
    c = float(np.exp(intercept))
    c = max(c, float(np.max(counts * r_grid ** d_fit)))
    return CoveringFit(c=c, d_fit=float(d_fit))


def build_rn_schedule(family: FunctionFamily, p: float, epsilon: float, n: int,
                      cap: int = _NET_CAP) -> ParameterNet:
    """Net at the shrinking radius r_n = (epsilon / n**(1 - 1/p))**(1/a).

    Requires the family to declare a Hölder modulus; the exponent a is
    taken from it.  The returned net's size is the K_n of the fast-rate
    argument.
    """
    if family.holder is None:
        raise InvalidParameter("rn schedule needs a declared Hölder modulus")
    if not 1.0 < p < 2.0:
        raise InvalidParameter("rn schedule needs p in (1, 2)")
    if epsilon <= 0 or n < 1:
        raise InvalidParameter("need epsilon > 0 and n >= 1")
    a = family.holder.a
    r_n = (epsilon / n ** (1.0 - 1.0 / p)) ** (1.0 / a)
    try:
        return build_net(family.box, r_n, cap=cap)
    except NetCapExceeded as exc:
        raise NetCapExceeded(
            f"r_n = {r_n:.3g} at n = {n} needs too many centers; "
            "use a larger epsilon or a smaller n"
        ) from exc


class HolderEstimate(NamedTuple):
    a_hat: float
    m_hat: float


def _pointwise(family: FunctionFamily, thetas: np.ndarray, x: np.ndarray,
               chunk: int = 1024) -> np.ndarray:
    """H(theta_i, x_i) for matched pairs, evaluated in chunks."""
    out = np.empty(len(x))
    for s in range(0, len(x), chunk):
        e = min(s + chunk, len(x))
        out[s:e] = np.diagonal(family.check_finite(thetas[s:e], x[s:e]))
    return out


def estimate_holder(family: FunctionFamily, data_model: DataModel,
                    samples: int = 20_000, pair_scale: float = 0.1,
                    rng: np.random.Generator | None = None) -> HolderEstimate:
    """Fit the Hölder exponent and constant from random parameter pairs.

    Samples triples (theta, theta', x) with d(theta, theta') log-uniform
    below ``pair_scale``, then regresses the per-bin 0.99 quantile of
    log|H(theta,x) - H(theta',x)| on log d -- an upper-envelope fit.
    Warns when the declared modulus is violated by more than 1e-9, and
    when the family is constant in theta (exponent undefined, constant 0).
    """
    if rng is None:
        rng = np.random.default_rng(0)
    diam = family.diameter()
    if not 0 < pair_scale < diam:
        raise InvalidParameter("pair_scale must lie in (0, diam(Theta))")
    box = family.box
    theta = box[:, 0] + rng.random((samples, family.dim)) * (box[:, 1] - box[:, 0])
    direction = rng.standard_normal((samples, family.dim))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    scale = pair_scale * 10.0 ** (-2.0 * rng.random(samples))
    theta2 = np.clip(theta + direction * scale[:, None], box[:, 0], box[:, 1])
    d = np.linalg.norm(theta2 - theta, axis=1)
    keep = d > 1e-15
    theta, theta2, d = theta[keep], theta2[keep], d[keep]
    x = data_model.sample(rng, len(d))
    diff = np.abs(_pointwise(family, theta, x) - _pointwise(family, theta2, x))

    if family.holder is not None:
        h = family.holder
        in_range = d < h.delta
        excess = diff[in_range] - h.M * d[in_range] ** h.a
        if np.any(excess > 1e-9):
            warnings.warn(
                f"declared Hölder modulus (a={h.a}, M={h.M}) violated by up to "
                f"{float(excess.max()):.3g} on {int(np.sum(excess > 1e-9))} sampled triples",
                stacklevel=2,
            )

    positive = diff > 1e-14
    if not np.any(positive):
        warnings.warn(f"{family.name} appears constant in theta; Hölder exponent "
                      "undefined", stacklevel=2)
        return HolderEstimate(a_hat=float("nan"), m_hat=0.0)
    ld, lf = np.log(d[positive]), np.log(diff[positive])
    nbins = 24
    edges = np.linspace(ld.min(), ld.max(), nbins + 1)
    xs, ys = [], []
    for b in range(nbins):
        sel = (ld >= edges[b]) & (ld < edges[b + 1] if b < nbins - 1 else ld <= edges[b + 1])
        if np.sum(sel) >= 20:
            # the bin's envelope is driven by its largest distances, so the
            # matching abscissa is the same upper quantile of log d
            xs.append(np.quantile(ld[sel], 0.99))
            ys.append(np.quantile(lf[sel], 0.99))
    if len(xs) < 3:
        warnings.warn("too few usable distance bins for a Hölder fit", stacklevel=2)
        return HolderEstimate(a_hat=float("nan"), m_hat=float(np.exp(lf.max())))
    slope, intercept = np.polyfit(xs, ys, 1)
    return HolderEstimate(a_hat=float(slope), m_hat=float(np.exp(intercept)))


def eta_modulus(family: FunctionFamily, theta, x: float, r: float,
                probe_net: ParameterNet, mu) -> float:
    """Oscillation of the centered family over the ball B_r(theta).

    Evaluates sup over probe-net points theta' with d(theta, theta') < r of
    |(H(theta,x) - mu(theta)) - (H(theta',x) - mu(theta'))|.  This is a
    lower bound on the true supremum; with a Hölder modulus the
    discretization error is at most 2 M rho^a for probe resolution rho
    (see :func:`eta_discretization_bound`), which is why the probe net
    must resolve at r/10 or finer.
    """
    if probe_net.radius > r / 10.0 + 1e-12:
        raise InvalidParameter("probe net resolution must be <= r/10")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    dist = np.linalg.norm(probe_net.centers - theta[None, :], axis=1)
    inside = probe_net.centers[dist < r]
    pts = np.vstack([theta[None, :], inside])
    xarr = np.asarray([float(x)])
    h = family.check_finite(pts, xarr)[:, 0]
    m = np.asarray(mu(pts[:, 0] if family.dim == 1 else pts), dtype=float)
    g = h - m
    return float(np.max(np.abs(g[0] - g)))


def eta_discretization_bound(family: FunctionFamily, probe_radius: float) -> float:
    """Upper bound on the eta-modulus discretization error, 2 M rho^a."""
    if family.holder is None:
        return float("nan")
    return 2.0 * family.holder.M * probe_radius ** family.holder.a
