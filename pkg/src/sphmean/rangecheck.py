"""Range characterization tests for spherical-mean data.

The operator

    L_k = sum_{p=0}^{k} C(k,p) (1-t)^p D^p,     D = (1/t) d/dt,

maps transform data h(t) = t^(n-2) g(t) to a function symmetric about t = 1:
data is in the range exactly when [L_k h](1-t) = [L_k h](1+t).  For
single-harmonic data the same symmetry holds for L_{m+k} applied to an
m-fold D-antiderivative phi of h that must itself be compactly supported;
the m compact-support moment defects are part of the verdict.

Two data paths feed the residual: forward-generated profiles carry analytic
kernel derivatives; externally sampled data is differentiated spectrally on a
Chebyshev grid (noise floor ~ machine-eps * degree^2, documented in
SampledH.noise_floor).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exactmath import coeff_C
from .transform import QuadratureRule

# antiderivative integrands carry boundary layers from high bump derivatives;
# the chain uses a finer composite rule than the forward transform needs
CHAIN_QUAD = QuadratureRule(32, 96)


# ---------------------------------------------------------------------------
# the range operator


@lru_cache(maxsize=None)
def lk_coefficients(k: int) -> tuple:
    """Exact coefficients (c_0 .. c_k) with L_k = sum_p c_p (1-t)^p D^p."""
    if k < 0:
        raise ValueError("k >= 0")
    return tuple(coeff_C(k, p) for p in range(k + 1))


def apply_Lk(h_dp, k: int, tau: float) -> float:
    """[L_k h](tau) from a derivative oracle h_dp(t, p) -> D^p h(t).

    Compactly supported data vanishes identically near 0 and 2, so tau
    outside (0, 2) evaluates to 0 without consulting the oracle.
    """
    if tau <= 0.0 or tau >= 2.0:
        return 0.0
    coeffs = lk_coefficients(k)
    acc = 0.0
    for p, c in enumerate(coeffs):
        acc += float(c) * (1.0 - tau) ** p * h_dp(tau, p)
    return acc


# ---------------------------------------------------------------------------
# reports


@dataclass
class RangeReport:
    k_used: int
    grid: np.ndarray
    residual: np.ndarray
    sup_residual: float
    scale: float
    normalized: float

    def passed(self, tol: float) -> bool:
        return self.normalized <= tol


def default_grid(points: int = 101, t_min: float = 0.01) -> np.ndarray:
    """Uniform t-grid on [t_min, 1]; t = 1 kept as a trivial sanity anchor."""
    if t_min < 1e-3:
        raise ValueError("t_min >= 1e-3")
    return np.linspace(t_min, 1.0, points)


def _resolve_k(data, k):
    if k is not None:
        return k
    dim = getattr(data, "dim", None)
    if dim is not None:
        return dim.k
    k_eff = getattr(data, "k_eff", None)
    if k_eff is not None:
        return k_eff
    raise ValueError("cannot infer k; pass it explicitly")


def range_residual(data, k: int | None = None, grid: np.ndarray | None = None) -> RangeReport:
    """Symmetry residual sup_t |[L_k h](1-t) - [L_k h](1+t)| over the grid.

    `data` needs a dp_h(t, p) method for p <= k (SmtProfile, SampledH, JetH,
    or any perturbation wrapper of those).
    """
    k = _resolve_k(data, k)
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    left = np.array([apply_Lk(data.dp_h, k, 1.0 - t) for t in grid])
    right = np.array([apply_Lk(data.dp_h, k, 1.0 + t) for t in grid])
    residual = np.abs(left - right)
    sup_residual = float(np.max(residual))
    scale = float(max(np.max(np.abs(left)), np.max(np.abs(right))))
    normalized = sup_residual / scale if scale > 0 else 0.0
    return RangeReport(k, grid, residual, sup_residual, scale, normalized)


# ---------------------------------------------------------------------------
# sampled data path (Chebyshev spectral differentiation)


@lru_cache(maxsize=None)
def _cheb_matrix(degree: int):
    """Chebyshev–Gauss–Lobatto nodes on [-1,1] (descending) and the
    differentiation matrix with the negative-sum diagonal."""
    N = degree
    x = np.cos(np.pi * np.arange(N + 1) / N)
    c = np.ones(N + 1)
    c[0] = c[N] = 2.0
    c = c * (-1.0) ** np.arange(N + 1)
    X = np.tile(x, (N + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(N + 1))
    D = D - np.diag(D.sum(axis=1))
    return x, D


class SampledH:
    """Data h known only through samples on a Chebyshev grid over [a, b].

    Supplies the same dp_h(t, p) interface as forward-generated profiles, with
    derivatives computed spectrally and values interpolated barycentrically.
    h is extended by zero outside [a, b] (the support must sit inside).
    """

    def __init__(self, values, a: float, b: float, k_eff: int = 8):
        values = np.asarray(values, dtype=float)
        if not (0.0 < a < b < 2.0):
            raise ValueError("need 0 < a < b < 2")
        self.degree = len(values) - 1
        if self.degree < 2:
            raise ValueError("need at least 3 samples")
        self.a, self.b = a, b
        x, D = _cheb_matrix(self.degree)
        self.t_nodes = (a + b) / 2 + (b - a) / 2 * x
        self._Dt = D * (2.0 / (b - a))
        self._derivs = [values]
        self.k_eff = k_eff

    @classmethod
    def from_function(cls, fn, a: float = 0.01, b: float = 1.99, degree: int = 128, k_eff: int = 8):
        x, _ = _cheb_matrix(degree)
        t = (a + b) / 2 + (b - a) / 2 * x
        return cls(np.array([fn(float(tt)) for tt in t]), a, b, k_eff)

    @property
    def noise_floor(self) -> float:
        """Residual claims below this are meaningless for this grid."""
        return np.finfo(float).eps * self.degree ** 2

    def _deriv_values(self, p: int):
        if p > self.degree - 2:
            raise ValueError(f"degree {self.degree} insufficient for {p} D-derivatives")
        while len(self._derivs) <= p:
            prev = self._derivs[-1]
            self._derivs.append((self._Dt @ prev) / self.t_nodes)
        return self._derivs[p]

    @property
    def _bary_weights(self):
        N = self.degree
        w = (-1.0) ** np.arange(N + 1)
        w[0] *= 0.5
        w[N] *= 0.5
        return w

    def _interpolate(self, values, t):
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        diff = ts[:, None] - self.t_nodes[None, :]
        exact = np.abs(diff) < 1e-14
        diff = np.where(exact, 1.0, diff)
        q = self._bary_weights[None, :] / diff
        out = (q @ values) / q.sum(axis=1)
        hit_rows = exact.any(axis=1)
        if np.any(hit_rows):
            out[hit_rows] = values[np.argmax(exact[hit_rows], axis=1)]
        out = np.where((ts < self.a) | (ts > self.b), 0.0, out)
        return out if isinstance(t, np.ndarray) else float(out[0])

    def h(self, t):
        return self._interpolate(self._derivs[0], t)

    def dp_h(self, t, p: int):
        if p == 0:
            return self.h(t)
        return self._interpolate(self._deriv_values(p), t)


# ---------------------------------------------------------------------------
# synthetic and perturbed data


class JetH:
    """h given directly as a smooth jet-capable profile in the t variable."""

    def __init__(self, jet_fn, support, k_eff: int = 8):
        self._jet_fn = jet_fn
        self.support = support
        self.k_eff = k_eff

    def h(self, t):
        return self.dp_h(t, 0)

    def dp_h(self, t, p: int):
        if isinstance(t, np.ndarray):
            return np.array([self.dp_h(float(tt), p) for tt in t])
        lo, hi = self.support
        if not (lo < t < hi):
            return 0.0
        from .specfun import d_operator

        jet = self._jet_fn(t, max(p, 1))
        if p == 0:
            return jet.derivs[0]
        return d_operator(jet, p)


def bump_h(center: float, width: float, amplitude: float = 1.0) -> JetH:
    """A bump in the t variable (anywhere in (0,2)); used as non-range data."""
    if not (0.0 < center - width and center + width < 2.0):
        raise ValueError("bump must sit inside (0, 2)")
    from .specfun import Jet

    def jet_fn(t: float, order: int) -> Jet:
        tj = Jet.variable(t, order)
        y = (tj - center) * (1.0 / width)
        y.derivs[0] = float(np.clip(y.derivs[0], -1 + 1e-8, 1 - 1e-8))
        return ((-1.0) / (1.0 - y * y)).exp() * amplitude

    return JetH(jet_fn, (center - width, center + width))


class PerturbedH:
    """Multiplies the data by (1 + delta) on t > 1, leaving t < 1 alone.

    Models a half-space calibration error; breaks the range symmetry by an
    amount proportional to delta.
    """

    def __init__(self, base, delta: float):
        self.base = base
        self.delta = delta
        self.k_eff = getattr(base, "k_eff", None)
        dim = getattr(base, "dim", None)
        if dim is not None:
            self.dim = dim

    def _factor(self, t: float) -> float:
        return 1.0 + self.delta if t > 1.0 else 1.0

    def h(self, t):
        if isinstance(t, np.ndarray):
            return np.array([self.h(float(tt)) for tt in t])
        return self._factor(t) * self.base.h(t)

    def dp_h(self, t: float, p: int) -> float:
        return self._factor(t) * self.base.dp_h(t, p)


# ---------------------------------------------------------------------------
# D-antiderivatives and compact-support defects


class AntiDerivativeChain:
    """phi with D^m phi = psi, built by m-fold s-weighted integration from 0.

    Every D-power of phi below m collapses to the single integral

        [D^p phi](t) = (1/(m-p-1)!) * integral_0^t ((t^2-s^2)/2)^(m-p-1)
                                                     s psi(s) ds,

    and the compact-support moment defects are the values of the successive
    antiderivatives at t = 2 (all must vanish for phi to be compactly
    supported in (0,2)).
    """

    def __init__(self, psi, m: int, quad: QuadratureRule = CHAIN_QUAD, lo: float = 0.0):
        if m < 0:
            raise ValueError("m >= 0")
        self.psi = psi
        self.m = m
        self.quad = quad
        self.lo = lo

    def _kernel_integral(self, t: float, e: int) -> float:
        if e == 0:
            fn = lambda s: s * self.psi(s)
        else:
            fn = lambda s: ((t * t - s * s) / 2.0) ** e * s * self.psi(s)
        return self.quad.integrate(fn, self.lo, t) / math.factorial(e)

    def phi(self, t):
        if isinstance(t, np.ndarray):
            return np.array([self.phi(float(tt)) for tt in t])
        if self.m == 0:
            return self.psi(t)
        return self._kernel_integral(t, self.m - 1)

    def dp_phi(self, t: float, p: int) -> float:
        if p > self.m:
            raise ValueError(f"only orders up to m = {self.m} available from the chain")
        if p == self.m:
            return self.psi(t)
        return self._kernel_integral(t, self.m - p - 1)

    def moment_defects(self):
        """Values of the 1st..m-th antiderivatives at t = 2 (must be ~0)."""
        return [self._kernel_integral(2.0, i) for i in range(self.m)]

    def defect_scales(self):
        """Same integrals with |integrand|: the natural comparison scale."""
        out = []
        for i in range(self.m):
            fn = lambda s: abs(((4.0 - s * s) / 2.0) ** i * s * self.psi(s))
            out.append(self.quad.integrate(fn, self.lo, 2.0) / math.factorial(i))
        return out


def anti_D(psi, m: int, quad: QuadratureRule = CHAIN_QUAD):
    """(phi, moment_defects) with D^m phi = psi; defects flag non-compact phi."""
    chain = AntiDerivativeChain(psi, m, quad)
    return chain.phi, chain.moment_defects()


# ---------------------------------------------------------------------------
# general (single-harmonic) range check


@dataclass
class GeneralRangeReport:
    range_report: RangeReport
    moment_defects: list
    defect_scales: list

    def defects_passed(self, tol_factor: float = 1e-8) -> bool:
        return all(
            abs(d) <= tol_factor * max(s, 1e-300)
            for d, s in zip(self.moment_defects, self.defect_scales)
        )


def general_range_check(
    data,
    m: int,
    k: int | None = None,
    grid: np.ndarray | None = None,
    quad: QuadratureRule = CHAIN_QUAD,
) -> GeneralRangeReport:
    """L_{m+k} symmetry of the m-fold antiderivative plus moment defects.

    Forward-generated harmonic data (HarmonicForwardData) uses its analytic
    phi derivatives.  Anything else with an h(t) method is treated as sampled
    data: phi comes from anti_D integrals and orders above m from spectral
    differentiation of h.
    """
    if grid is None:
        grid = default_grid()

    if hasattr(data, "phi_dp"):  # analytic forward route
        k = data.dim.k if k is None else k
        mk = m + k

        def phi_dp(t, p):
            return data.phi_dp(t, p)

        h_callable = data.h
    else:
        k = _resolve_k(data, k)
        mk = m + k
        if isinstance(data, SampledH):
            sampled = data
        else:
            sampled = SampledH.from_function(data.h, degree=128)
        chain = AntiDerivativeChain(sampled.h, m, quad)

        def phi_dp(t, p):
            if p <= m:
                return chain.dp_phi(t, p)
            return sampled.dp_h(t, p - m)

        h_callable = sampled.h

    left = np.array([apply_Lk(phi_dp, mk, 1.0 - t) for t in grid])
    right = np.array([apply_Lk(phi_dp, mk, 1.0 + t) for t in grid])
    residual = np.abs(left - right)
    sup_residual = float(np.max(residual))
    scale = float(max(np.max(np.abs(left)), np.max(np.abs(right))))
    normalized = sup_residual / scale if scale > 0 else 0.0
    report = RangeReport(mk, np.asarray(grid, dtype=float), residual, sup_residual, scale, normalized)

    defect_chain = AntiDerivativeChain(h_callable, m, quad)
    return GeneralRangeReport(report, defect_chain.moment_defects(), defect_chain.defect_scales())
