"""Translation-invariant kernel and squared-metric profiles.

A translation-invariant kernel K(x, y) = k(x - y) is represented by its
one-variable profile k; a translation-invariant squared metric
D^2(x, y) = d2(x - y) by its profile d2.  Both are immutable evaluation
closures plus a serializable descriptor (name + parameters).

The bridge between the two worlds:

    d2(t) = 2 k(0) - 2 k(t)                    (kernel -> squared metric)
    K(x, y) = (d2(x - b) + d2(y - b) - d2(x - y)) / 2
                                               (squared metric -> kernel,
                                                base point b, default 0)

The second direction generally produces a kernel that is *not*
translation invariant (d2(t) = t**2 gives K(x, y) = x*y), which is why
it returns a :class:`BivariateKernel` rather than a profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import EvaluationError

__all__ = [
    "KernelProfile",
    "MetricProfile",
    "BivariateKernel",
    "TranslationInvarianceReport",
    "zoo",
    "zoo_names",
    "metric_from_kernel",
    "kernel_from_metric",
    "lift_metric",
    "check_translation_invariance",
    "probe_grid",
    "grid_probes",
    "profile_from_samples",
]

#: default probe grid: 201 uniform points on [-10, 10]
PROBE_GRID_SPAN = 10.0
PROBE_GRID_SIZE = 201


def probe_grid(span: float = PROBE_GRID_SPAN, n: int = PROBE_GRID_SIZE) -> np.ndarray:
    """Uniform symmetric grid used for evenness/invariance spot checks."""
    return np.linspace(-span, span, n)


def _evaluate(fn: Callable, t, what: str) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.asarray(fn(t), dtype=float)
    if not np.all(np.isfinite(out)):
        flat_out = np.atleast_1d(out).ravel()
        try:
            flat_t = np.broadcast_to(t, out.shape).ravel() if out.shape \
                else np.atleast_1d(t).ravel()
        except ValueError:
            flat_t = np.zeros(0)
        bad = np.flatnonzero(~np.isfinite(flat_out))
        offender = float(flat_t[bad[0]]) \
            if bad.size and flat_t.size == flat_out.size else float("nan")
        raise EvaluationError(f"{what} evaluated to a non-finite value at t={offender!r}",
                              argument=offender)
    return out


@dataclass(frozen=True)
class KernelProfile:
    """One-variable profile k(t) of a translation-invariant kernel.

    ``fn`` must be vectorized over numpy arrays and even in t; evenness is
    checked on probe grids by callers, never assumed symbolically.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"
    params: dict = field(default_factory=dict)

    def __call__(self, t):
        return _evaluate(self.fn, t, f"kernel profile {self.name!r}")

    @property
    def k0(self) -> float:
        """Value at the origin, k(0)."""
        return float(self(0.0))

    def descriptor(self) -> dict:
        return {"name": self.name, "params": {k: float(v) for k, v in self.params.items()}}


@dataclass(frozen=True)
class MetricProfile:
    """One-variable profile d2(t) of a translation-invariant squared metric."""

    fn: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"
    params: dict = field(default_factory=dict)

    def __call__(self, t):
        return _evaluate(self.fn, t, f"metric profile {self.name!r}")

    def descriptor(self) -> dict:
        return {"name": self.name, "params": {k: float(v) for k, v in self.params.items()}}


@dataclass(frozen=True)
class BivariateKernel:
    """A symmetric kernel K(x, y), not necessarily translation invariant."""

    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    name: str = "custom"

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.asarray(self.fn(x, y), dtype=float)


_ZOO: dict[str, tuple[Callable[..., Callable], dict]] = {
    # name -> (profile factory taking validated params, default params)
    "gaussian": (lambda scale: lambda t: np.exp(-(t / scale) ** 2 / 2.0), {"scale": 1.0}),
    "laplacian": (lambda scale: lambda t: np.exp(-np.abs(t) / scale), {"scale": 1.0}),
    "cauchy": (lambda scale: lambda t: 2.0 / (1.0 + (t / scale) ** 2), {"scale": 1.0}),
    "cosine": (lambda omega: lambda t: np.cos(omega * t), {"omega": 1.0}),
    "constant": (lambda value: lambda t: np.full_like(np.asarray(t, dtype=float), value),
                 {"value": 1.0}),
}


def zoo_names() -> list[str]:
    return sorted(_ZOO)


def zoo(name: str, **params: float) -> KernelProfile:
    """Construct a named kernel profile.

    Available: gaussian exp(-t^2/2), laplacian exp(-|t|), cauchy 2/(1+t^2),
    cosine cos(omega t), constant c.  Scale-type parameters must be
    positive; the constant must be non-negative.
    """
    if name not in _ZOO:
        raise ValueError(f"unknown kernel name {name!r}; expected one of {zoo_names()}")
    factory, defaults = _ZOO[name]
    merged = dict(defaults)
    for key, value in params.items():
        if key not in defaults:
            raise ValueError(f"kernel {name!r} takes no parameter {key!r}")
        merged[key] = float(value)
    if name == "constant":
        if merged["value"] < 0:
            raise ValueError("constant kernel requires value >= 0")
    elif name == "cosine":
        if merged["omega"] <= 0:
            raise ValueError("cosine kernel requires omega > 0")
    elif merged["scale"] <= 0:
        raise ValueError(f"kernel {name!r} requires scale > 0")
    return KernelProfile(fn=factory(**merged), name=name, params=merged)


def metric_from_kernel(kernel: KernelProfile) -> MetricProfile:
    """Squared metric induced by a translation-invariant kernel.

    d2(t) = 2 k(0) - 2 k(t); d2(0) = 0 holds exactly by construction.
    """
    k0 = kernel.k0

    def d2(t):
        return 2.0 * k0 - 2.0 * kernel(t)

    return MetricProfile(fn=d2, name=f"metric[{kernel.name}]", params=dict(kernel.params))


def kernel_from_metric(metric: MetricProfile, base: float = 0.0) -> BivariateKernel:
    """Kernel induced by a squared metric via the fixed base point.

    K(x, y) = (d2(x - base) + d2(y - base) - d2(x - y)) / 2.  The result is
    symmetric but in general not translation invariant.
    """
    d2_0 = float(metric(0.0))
    if abs(d2_0) > 1e-12:
        raise ValueError(f"metric profile must vanish at 0, got d2(0) = {d2_0!r}")

    def K(x, y):
        return 0.5 * (metric(x - base) + metric(y - base) - metric(x - y))

    return BivariateKernel(fn=K, name=f"kernel[{metric.name}]")


def lift_metric(metric: MetricProfile) -> BivariateKernel:
    """View a squared-metric profile as the bivariate form D2(x, y) = d2(x - y)."""
    return BivariateKernel(fn=lambda x, y: metric(x - y), name=f"lift[{metric.name}]")


@dataclass(frozen=True)
class TranslationInvarianceReport:
    invariant: bool
    worst_violation: float
    worst_probe: tuple[float, float, float]


def check_translation_invariance(kernel: BivariateKernel, probes,
                                 tol: float = 1e-9) -> TranslationInvarianceReport:
    """Check |K(x+s, y+s) - K(x, y)| <= tol over the given (x, y, s) probes."""
    probes = np.asarray(probes, dtype=float)
    if probes.ndim != 2 or probes.shape[1] != 3 or probes.shape[0] == 0:
        raise ValueError("probes must be a non-empty list of (x, y, shift) triples")
    x, y, s = probes[:, 0], probes[:, 1], probes[:, 2]
    violation = np.abs(kernel(x + s, y + s) - kernel(x, y))
    worst = int(np.argmax(violation))
    return TranslationInvarianceReport(
        invariant=bool(violation[worst] <= tol),
        worst_violation=float(violation[worst]),
        worst_probe=(float(x[worst]), float(y[worst]), float(s[worst])),
    )


def grid_probes(span: float = 4.0, n: int = 7) -> np.ndarray:
    """All (x, y, shift) triples over a small uniform grid."""
    g = np.linspace(-span, span, n)
    x, y, s = np.meshgrid(g, g, g, indexing="ij")
    return np.column_stack([x.ravel(), y.ravel(), s.ravel()])


def profile_from_samples(t, values, name: str = "sampled") -> KernelProfile:
    """Even profile interpolated linearly from samples of k on t >= 0.

    Evaluation uses |t|; asking for |t| beyond the sampled range raises an
    :class:`EvaluationError` rather than extrapolating.
    """
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.ndim != 1 or t.shape != values.shape or t.size < 2:
        raise ValueError("need matching 1-d arrays with at least two samples")
    order = np.argsort(t)
    t, values = t[order], values[order]
    if t[0] < 0:
        raise ValueError("samples must be on t >= 0 (the profile is even)")
    t_max = float(t[-1])

    def fn(u):
        u = np.abs(np.asarray(u, dtype=float))
        if np.any(u > t_max * (1 + 1e-12)):
            bad = float(np.max(u))
            raise EvaluationError(
                f"sampled profile {name!r} queried at |t|={bad!r} beyond range {t_max!r}",
                argument=bad)
        return np.interp(u, t, values)

    return KernelProfile(fn=fn, name=name, params={})
