"""Function families H(theta, x) over box-shaped parameter sets.

A family bundles the evaluation map, the parameter box in R^D, a Hölder
modulus when one is declared, a dominating envelope G(x) >= sup_theta
|H(theta, x)|, and closed-form means mu(theta) = E H(theta, X) for the
built-in data models.  Built-ins:

* ``abs_loc``        H(theta, x) = |x - theta|,  Theta = [0, 1]
* ``cosine``         H(theta, x) = cos(theta x), Theta = [0, 1]
* ``linear_scale``   H(theta, x) = theta * x,    Theta = [0, 1]
* ``identity_x``     H(theta, x) = x (constant in theta)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate, stats

from .errors import InvalidParameter, NonFiniteEvaluation

__all__ = [
    "Holder",
    "DataModel",
    "FunctionFamily",
    "get_family",
    "get_data_model",
    "scale_family",
    "mean_function",
    "FAMILY_NAMES",
    "DATA_MODEL_NAMES",
]


@dataclass(frozen=True)
class Holder:
    """Uniform local Hölder modulus: |H(t,x)-H(t',x)| <= M d(t,t')^a for d < delta."""

    a: float
    M: float
    delta: float = 1e9

    def __post_init__(self):
        if not 0 < self.a <= 1 or self.M < 0 or self.delta <= 0:
            raise InvalidParameter("need a in (0,1], M >= 0, delta > 0")


@dataclass(frozen=True)
class DataModel:
    """Scalar data-generating law with a sampler and a density."""

    name: str
    sample: Callable[[np.random.Generator, int], np.ndarray]
    pdf: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]

    def label(self) -> str:
        return self.name


def _uniform01(rng, size):
    return rng.random(size)


def _standard_normal(rng, size):
    return rng.standard_normal(size)


def _exponential1(rng, size):
    return rng.exponential(1.0, size)


def _uniform_sym3(rng, size):
    return rng.uniform(-3.0, 3.0, size)


DATA_MODELS = {
    "uniform01": DataModel("uniform01", _uniform01,
                           lambda x: ((x >= 0) & (x <= 1)).astype(float), (0.0, 1.0)),
    "standard_normal": DataModel("standard_normal", _standard_normal,
                                 stats.norm.pdf, (-np.inf, np.inf)),
    "exponential1": DataModel("exponential1", _exponential1,
                              lambda x: np.where(x >= 0, np.exp(-np.clip(x, 0, None)), 0.0),
                              (0.0, np.inf)),
    "uniform_sym3": DataModel("uniform_sym3", _uniform_sym3,
                              lambda x: ((x >= -3) & (x <= 3)).astype(float) / 6.0,
                              (-3.0, 3.0)),
}
DATA_MODEL_NAMES = tuple(DATA_MODELS)


def get_data_model(name: str) -> DataModel:
    try:
        return DATA_MODELS[name]
    except KeyError:
        raise InvalidParameter(f"unknown data model {name!r}; "
                               f"choose from {DATA_MODEL_NAMES}") from None


@dataclass(frozen=True)
class FunctionFamily:
    """H(theta, x) with its parameter box and regularity metadata.

    ``evaluate_matrix(thetas, x)`` returns the (K, n) matrix H(theta_i, x_j)
    for thetas of shape (K, D) and x of shape (n,).  ``mean_fn`` maps a
    data-model name to a closed-form mu(theta); models without an entry
    fall back to numerical quadrature (see :func:`mean_function`).
    ``envelope_moment`` holds registered closed-form values of
    E G(X)^order used by the condition checker; entries may rest on a
    looser analytic envelope than the tight numerical one, which is fine
    for the finiteness checks they feed.
    """

    name: str
    dim: int
    box: np.ndarray  # (D, 2)
    evaluate_matrix: Callable[[np.ndarray, np.ndarray], np.ndarray]
    envelope: Callable[[np.ndarray], np.ndarray]
    holder: Holder | None = None
    mean_fn: dict = field(default_factory=dict)
    mean_sq_fn: dict = field(default_factory=dict)
    envelope_moment: dict = field(default_factory=dict)

    def __post_init__(self):
        box = np.asarray(self.box, dtype=float)
        if box.shape != (self.dim, 2) or np.any(box[:, 1] < box[:, 0]):
            raise InvalidParameter("box must be (D, 2) with lo <= hi")
        object.__setattr__(self, "box", box)

    def evaluate(self, theta, x) -> np.ndarray:
        """H(theta, .) for a single parameter point."""
        th = np.atleast_1d(np.asarray(theta, dtype=float)).reshape(1, self.dim)
        return self.evaluate_matrix(th, np.atleast_1d(np.asarray(x, dtype=float)))[0]

    def check_finite(self, thetas: np.ndarray, x: np.ndarray) -> np.ndarray:
        vals = self.evaluate_matrix(thetas, x)
        if not np.all(np.isfinite(vals)):
            bad = np.argwhere(~np.isfinite(vals))[0]
            raise NonFiniteEvaluation(
                f"{self.name} is non-finite at theta={thetas[bad[0]]}, x={x[bad[1]]}"
            )
        return vals

    def diameter(self) -> float:
        return float(np.linalg.norm(self.box[:, 1] - self.box[:, 0]))


# ---------------------------------------------------------------------------
# built-in families (all with D = 1 parameter boxes)


def _phi(t):
    return np.exp(-0.5 * t * t) / math.sqrt(2 * math.pi)


def _sinc(t):
    t = np.asarray(t, dtype=float)
    return np.where(t == 0, 1.0, np.sin(np.where(t == 0, 1.0, t)) / np.where(t == 0, 1.0, t))


def _abs_loc() -> FunctionFamily:
    return FunctionFamily(
        name="abs_loc",
        dim=1,
        box=np.array([[0.0, 1.0]]),
        evaluate_matrix=lambda th, x: np.abs(x[None, :] - th[:, 0][:, None]),
        envelope=lambda x: np.maximum(np.abs(x), np.abs(x - 1.0)),
        holder=Holder(a=1.0, M=1.0),  # reverse triangle inequality
        mean_fn={
            "uniform01": lambda t: t * t - t + 0.5,
            "exponential1": lambda t: t - 1.0 + 2.0 * np.exp(-t),
            "standard_normal": lambda t: 2.0 * _phi(t) + t * (2.0 * stats.norm.cdf(t) - 1.0),
            "uniform_sym3": lambda t: (t * t + 9.0) / 6.0,
        },
        mean_sq_fn={
            "uniform01": lambda t: t * t - t + 1.0 / 3.0,
            "exponential1": lambda t: 1.0 + (1.0 - t) ** 2,
            "standard_normal": lambda t: 1.0 + t * t,
            "uniform_sym3": lambda t: 3.0 + t * t,
        },
        envelope_moment={
            # tight envelope max(x, 1-x) on [0, 1]
            "uniform01": lambda r: 2.0 * (1.0 - 0.5 ** (r + 1.0)) / (r + 1.0),
            # looser |x| + 1 envelope; closed form for integer orders
            "exponential1": lambda r: sum(
                math.comb(int(round(r)), k) * math.factorial(k)
                for k in range(int(round(r)) + 1)
            ) if float(r).is_integer() else None,
        },
    )


def _cosine() -> FunctionFamily:
    return FunctionFamily(
        name="cosine",
        dim=1,
        box=np.array([[0.0, 1.0]]),
        evaluate_matrix=lambda th, x: np.cos(th[:, 0][:, None] * x[None, :]),
        envelope=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        # |dH/dtheta| <= |x|; the declared constant covers |x| <= 3
        holder=Holder(a=1.0, M=3.0),
        mean_fn={
            "uniform01": lambda t: _sinc(t),
            "standard_normal": lambda t: np.exp(-0.5 * t * t),
            "exponential1": lambda t: 1.0 / (1.0 + t * t),
            "uniform_sym3": lambda t: _sinc(3.0 * t),
        },
        mean_sq_fn={
            "uniform01": lambda t: 0.5 * (1.0 + _sinc(2.0 * t)),
            "standard_normal": lambda t: 0.5 * (1.0 + np.exp(-2.0 * t * t)),
            "exponential1": lambda t: 0.5 * (1.0 + 1.0 / (1.0 + 4.0 * t * t)),
            "uniform_sym3": lambda t: 0.5 * (1.0 + _sinc(6.0 * t)),
        },
        envelope_moment={name: (lambda r: 1.0) for name in DATA_MODEL_NAMES},
    )


def _linear_scale() -> FunctionFamily:
    return FunctionFamily(
        name="linear_scale",
        dim=1,
        box=np.array([[0.0, 1.0]]),
        evaluate_matrix=lambda th, x: th[:, 0][:, None] * x[None, :],
        envelope=lambda x: np.abs(x),
        holder=Holder(a=1.0, M=1.0),  # valid for |x| <= 1 data
        mean_fn={
            "uniform01": lambda t: 0.5 * t,
            "exponential1": lambda t: 1.0 * t,
            "standard_normal": lambda t: 0.0 * t,
            "uniform_sym3": lambda t: 0.0 * t,
        },
        mean_sq_fn={
            "uniform01": lambda t: t * t / 3.0,
            "exponential1": lambda t: 2.0 * t * t,
            "standard_normal": lambda t: t * t,
            "uniform_sym3": lambda t: 3.0 * t * t,
        },
    )


def _identity_x() -> FunctionFamily:
    return FunctionFamily(
        name="identity_x",
        dim=1,
        box=np.array([[0.0, 1.0]]),
        evaluate_matrix=lambda th, x: np.broadcast_to(
            x[None, :], (th.shape[0], x.shape[0])).copy(),
        envelope=lambda x: np.abs(x),
        holder=Holder(a=1.0, M=1.0),  # theta-free: any modulus dominates
        mean_fn={
            "uniform01": lambda t: 0.5 + 0.0 * t,
            "exponential1": lambda t: 1.0 + 0.0 * t,
            "standard_normal": lambda t: 0.0 * t,
            "uniform_sym3": lambda t: 0.0 * t,
        },
        mean_sq_fn={
            "uniform01": lambda t: 1.0 / 3.0 + 0.0 * t,
            "exponential1": lambda t: 2.0 + 0.0 * t,
            "standard_normal": lambda t: 1.0 + 0.0 * t,
            "uniform_sym3": lambda t: 3.0 + 0.0 * t,
        },
    )


FAMILIES = {
    "abs_loc": _abs_loc,
    "cosine": _cosine,
    "linear_scale": _linear_scale,
    "identity_x": _identity_x,
}
FAMILY_NAMES = tuple(FAMILIES)


def get_family(name: str) -> FunctionFamily:
    try:
        return FAMILIES[name]()
    except KeyError:
        raise InvalidParameter(f"unknown family {name!r}; "
                               f"choose from {FAMILY_NAMES}") from None


def scale_family(family: FunctionFamily, lam: float) -> FunctionFamily:
    """The family lam * H, with envelope, modulus, and means scaled along."""
    if lam <= 0:
        raise InvalidParameter("scale must be > 0")
    return FunctionFamily(
        name=f"{family.name}*{lam:g}",
        dim=family.dim,
        box=family.box.copy(),
        evaluate_matrix=lambda th, x: lam * family.evaluate_matrix(th, x),
        envelope=lambda x: lam * family.envelope(x),
        holder=None if family.holder is None else
        Holder(family.holder.a, lam * family.holder.M, family.holder.delta),
        mean_fn={k: (lambda t, f=f: lam * f(t)) for k, f in family.mean_fn.items()},
        mean_sq_fn={k: (lambda t, f=f: lam * lam * f(t)) for k, f in family.mean_sq_fn.items()},
    )


def mean_function(family: FunctionFamily, data_model: DataModel,
                  quad_tol: float = 1e-10):
    """mu(theta) = E H(theta, X) as a vectorized callable.

    Returns ``(mu, provenance)`` where provenance is ``"closed_form"`` or
    ``"quadrature"``.  Quadrature integrates H(theta, .) against the
    model's density to absolute tolerance ``quad_tol`` per theta.
    """
    fn = family.mean_fn.get(data_model.name)
    if fn is not None:
        return (lambda t: np.asarray(fn(np.asarray(t, dtype=float)), dtype=float)), "closed_form"

    lo, hi = data_model.support

    def mu(thetas):
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        out = np.empty(thetas.shape[0] if thetas.ndim > 0 else 1)
        for i, t in enumerate(np.atleast_2d(thetas.reshape(-1, family.dim))):
            val, err = integrate.quad(
                lambda x, t=t: float(family.evaluate(t, x)[0]) * float(data_model.pdf(np.asarray([x]))[0]),
                lo, hi, epsabs=quad_tol, limit=200,
            )
            out[i] = val
        return out

    return mu, "quadrature"
