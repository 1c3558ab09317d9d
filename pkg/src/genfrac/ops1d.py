r"""One-dimensional generalized fractional operators.

For a p-set P = <a, b, p, q>, a difference kernel k and an order alpha,
the package provides three operators acting on functions over [a, b]:

* the integral-type operator
  (K f)(t) = p \int_a^t k(t - tau) f(tau) dtau
           + q \int_t^b k(tau - t) f(tau) dtau,
  with the kernel instantiated at order alpha;
* the derivative-after-integral operator A = d/dt o K, with the kernel
  instantiated at order 1 - alpha (Riemann-Liouville type);
* the integral-after-derivative operator B = K o d/dt, kernel at order
  1 - alpha (Caputo type).

With the power kernel and the p-sets <a,b,1,0> / <a,b,0,1> these reduce
to the classical left/right fractional integrals and derivatives (the
right-sided derivatives with a sign flip), which the test suite checks
against the closed-form power-function oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .funcspec import FuncSpec
from .pset import ParameterSet
from .quadrature import DEFAULT_RULE, NonFiniteSampleError, QuadratureRule, singular_nodes
from .specfun import Kernel, KernelFamily

__all__ = ["OperatorRequest", "kop", "aop", "bop"]

_EPS_CBRT = float(np.cbrt(np.finfo(float).eps))


@dataclass(frozen=True)
class OperatorRequest:
    """Operator kind, order, p-set, kernel family and quadrature rule.

    The kernel is instantiated internally: the K operator uses order
    ``alpha`` directly, while A and B pair order alpha with the kernel at
    ``1 - alpha``; callers cannot mismatch the two.
    """

    kind: str
    alpha: float
    pset: ParameterSet
    kernel: KernelFamily
    rule: QuadratureRule = DEFAULT_RULE

    def __post_init__(self) -> None:
        if self.kind not in ("K", "A", "B"):
            raise ValueError(f"operator kind must be 'K', 'A' or 'B', got {self.kind!r}")
        if self.kind == "K":
            if not 0.0 < self.alpha <= 1.0:
                raise ValueError(f"K operator needs alpha in (0, 1], got {self.alpha!r}")
        elif not 0.0 < self.alpha < 1.0:
            raise ValueError(
                f"{self.kind} operator needs alpha strictly in (0, 1), got {self.alpha!r}"
            )

    def instantiated_kernel(self) -> Kernel:
        order = self.alpha if self.kind == "K" else 1.0 - self.alpha
        return self.kernel.instantiate(order)


def _convolve_many(
    pset: ParameterSet,
    kernel: Kernel,
    rule: QuadratureRule,
    f,
    ts: np.ndarray,
) -> np.ndarray:
    """Weighted left+right kernel convolutions of f at many points at once."""
    ts = np.asarray(ts, dtype=float)
    out = np.zeros_like(ts)
    for side, weight in (("left", pset.p), ("right", pset.q)):
        if weight == 0.0:
            continue
        L = ts - pset.a if side == "left" else pset.b - ts
        m = L > 0.0
        if not m.any():
            continue
        u, w = singular_nodes(kernel, L[m], rule)
        tau = ts[m, None] - u if side == "left" else ts[m, None] + u
        vals = np.broadcast_to(np.asarray(f(tau), dtype=float), tau.shape)
        if not np.all(np.isfinite(vals)):
            bad = tau[~np.isfinite(vals)][0]
            raise NonFiniteSampleError(f"operand non-finite at tau={bad!r}")
        out[m] += weight * np.sum(w * vals, axis=1)
    return out


def kop(req: OperatorRequest, f: FuncSpec, t: float) -> float:
    """Generalized fractional integral of f at t.

    At t = a the leftward half vanishes exactly; at t = b the rightward
    half does.
    """
    if req.kind != "K":
        raise ValueError(f"kop needs a request of kind 'K', got {req.kind!r}")
    if f.arity != 1:
        raise ValueError("kop acts on one-variable functions")
    P = req.pset
    if not P.a <= t <= P.b:
        raise ValueError(f"t={t!r} outside [{P.a!r}, {P.b!r}]")
    kern = req.instantiated_kernel()
    return float(_convolve_many(P, kern, req.rule, f.fn, np.array([t]))[0])


def _fd_stencil(t: float, a: float, b: float, h: float):
    """5-point 4th-order stencil for d/dt, shifted one-sided near endpoints."""
    if t - 2.0 * h > a and t + 2.0 * h < b:
        offsets = (-2.0, -1.0, 1.0, 2.0)
        coeffs = (1.0, -8.0, 8.0, -1.0)
    elif t - 2.0 * h <= a:
        if not t + 4.0 * h < b:
            raise ValueError(
                f"interval [{a}, {b}] too small for the differentiation step h={h}"
            )
        offsets = (0.0, 1.0, 2.0, 3.0, 4.0)
        coeffs = (-25.0, 48.0, -36.0, 16.0, -3.0)
    else:
        if not t - 4.0 * h > a:
            raise ValueError(
                f"interval [{a}, {b}] too small for the differentiation step h={h}"
            )
        offsets = (0.0, -1.0, -2.0, -3.0, -4.0)
        coeffs = (25.0, -48.0, 36.0, -16.0, 3.0)
    pts = np.array([t + o * h for o in offsets])
    return pts, np.array(coeffs) / (12.0 * h)


def aop(req: OperatorRequest, f: FuncSpec, t: float) -> float:
    """Riemann-Liouville-type derivative: d/dt of the order-(1-alpha) integral.

    Evaluation is refused at the interval endpoints, where the derivative
    of a generic operand blows up like (t - a)**(-alpha); the finite
    difference stencil never touches a or b.
    """
    if req.kind != "A":
        raise ValueError(f"aop needs a request of kind 'A', got {req.kind!r}")
    if f.arity != 1:
        raise ValueError("aop acts on one-variable functions")
    P = req.pset
    if not P.a < t < P.b:
        raise ValueError(
            f"derivative evaluation refused at or beyond the endpoints: t={t!r} "
            f"not interior to ({P.a!r}, {P.b!r})"
        )
    h = max(1e-4, _EPS_CBRT * (P.b - P.a))
    pts, coeffs = _fd_stencil(t, P.a, P.b, h)
    kern = req.instantiated_kernel()
    vals = _convolve_many(P, kern, req.rule, f.fn, pts)
    return float(np.dot(coeffs, vals))


def bop(req: OperatorRequest, f: FuncSpec, t: float) -> float:
    """Caputo-type derivative: order-(1-alpha) integral of f'."""
    if req.kind != "B":
        raise ValueError(f"bop needs a request of kind 'B', got {req.kind!r}")
    if f.arity != 1:
        raise ValueError("bop acts on one-variable functions")
    P = req.pset
    if not P.a <= t <= P.b:
        raise ValueError(f"t={t!r} outside [{P.a!r}, {P.b!r}]")
    dfn = f.partial(1)
    kern = req.instantiated_kernel()
    return float(_convolve_many(P, kern, req.rule, dfn, np.array([t]))[0])


def leibniz_boundary_terms(
    pset: ParameterSet, kernel: Kernel, fa: float, fb: float
):
    """Kernel-boundary correction linking the A and B operators.

    For a difference kernel and f in C^1,

        (A f)(t) = (B f)(t) + p f(a) k(t - a) - q f(b) k(b - t),

    obtained by differentiating the convolution halves under the integral
    sign.  Returns the callable t -> correction value (vectorized).
    """
    a, b, p, q = pset.as_tuple()

    def correction(ts):
        ts = np.asarray(ts, dtype=float)
        out = np.zeros_like(ts)
        if p != 0.0 and fa != 0.0:
            out += p * fa * np.asarray(kernel.evaluate(ts - a), dtype=float)
        if q != 0.0 and fb != 0.0:
            out -= q * fb * np.asarray(kernel.evaluate(b - ts), dtype=float)
        return out

    return correction


def _kop_values(req: OperatorRequest, f: FuncSpec, ts) -> np.ndarray:
    """Vectorized K-operator evaluation at many points (internal)."""
    ts = np.asarray(ts, dtype=float)
    if not ((ts >= req.pset.a) & (ts <= req.pset.b)).all():
        raise ValueError("evaluation points outside the p-set interval")
    kern = req.instantiated_kernel()
    return _convolve_many(req.pset, kern, req.rule, f.fn, ts)
