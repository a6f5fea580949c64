"""Forward spherical mean transform of radial and single-harmonic functions
in odd dimension n = 2k+3.

All data paths are one-dimensional integrals in the radius variable u.  For a
radial profile f supported in [0, 1),

    h(t) = t^(n-2) g(t) = (omega_{n-1} / (4^k omega_n))
           * integral_{|1-t|}^{1} u f(u) Q(t,u)^k du,

where Q(t,u) = ((1+t)^2 - u^2)(u^2 - (1-t)^2) is nonnegative on the
integration range.  D-derivatives of the data (D = (1/t) d/dt) are computed
by differentiating the kernel polynomial exactly and integrating — never by
finite differences — so every derivative carries quadrature accuracy only.

An independent Funk–Hecke evaluation in the angular variable provides a
cross-check path that shares no code with the Q-kernel route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import exactmath
from .specfun import Jet, d_coeff_table, d_operator, gegenbauer, gegenbauer_at_one

T_FLOOR = 1e-3  # below this, dividing h by t^(n-2) is refused


# ---------------------------------------------------------------------------
# geometry


@dataclass(frozen=True)
class Dimension:
    """Odd ambient dimension n = 2k + 3."""

    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError(f"n must be odd and >= 3, got {self.n}")

    @property
    def k(self) -> int:
        return (self.n - 3) // 2

    @property
    def alpha(self) -> float:
        """Gegenbauer order (n-2)/2 attached to this dimension."""
        return (self.n - 2) / 2


def omega(n: int) -> float:
    """Surface area of the unit sphere in R^n: 2 pi^(n/2) / Gamma(n/2)."""
    if n < 1:
        raise ValueError("n >= 1")
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def q_kernel(t, u):
    """Q(t,u) = ((1+t)^2 - u^2)(u^2 - (1-t)^2), the forward kernel base."""
    return ((1 + t) ** 2 - u ** 2) * (u ** 2 - (1 - t) ** 2)


# ---------------------------------------------------------------------------
# quadrature


@lru_cache(maxsize=None)
def _gauss_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss–Legendre rule: `panels` equal panels of fixed order."""

    nodes_per_panel: int = 32
    panels: int = 8

    def __post_init__(self):
        if self.nodes_per_panel < 2 or self.panels < 1:
            raise ValueError("need nodes_per_panel >= 2 and panels >= 1")

    def points(self, a: float, b: float):
        """All nodes and weights for integrating over [a, b]."""
        x, w = _gauss_nodes(self.nodes_per_panel)
        edges = np.linspace(a, b, self.panels + 1)
        half = np.diff(edges) / 2.0
        mid = (edges[:-1] + edges[1:]) / 2.0
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        return nodes, weights

    def integrate(self, fn, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        nodes, weights = self.points(a, b)
        return float(np.dot(weights, fn(nodes)))

    def refined(self) -> "QuadratureRule":
        return QuadratureRule(self.nodes_per_panel, 2 * self.panels)


DEFAULT_QUAD = QuadratureRule()


# ---------------------------------------------------------------------------
# radial profiles


class BumpProfile:
    """Smooth bump exp(-1 / (1 - ((r-c)/w)^2)) on (c-w, c+w), zero elsewhere.

    amplitude rescales; jets of any order exist everywhere (identically zero
    outside the open support interval, including at the touch points).
    """

    def __init__(self, center: float, width: float, amplitude: float = 1.0):
        if width <= 0:
            raise ValueError("width > 0")
        if center - width < 0 or center + width > 1:
            raise ValueError("bump support must stay inside [0, 1)")
        self.center = center
        self.width = width
        self.amplitude = amplitude

    @property
    def support(self):
        return (self.center - self.width, self.center + self.width)

    def _mask(self, r):
        return (np.abs(np.asarray(r, dtype=float) - self.center) < self.width).astype(float)

    def __call__(self, r):
        rs = np.asarray(r, dtype=float)
        y = np.clip((rs - self.center) / self.width, -1 + 1e-8, 1 - 1e-8)
        vals = self.amplitude * np.exp(-1.0 / (1.0 - y * y)) * self._mask(rs)
        return vals if isinstance(r, np.ndarray) else float(vals)

    def jet(self, r, order: int) -> Jet:
        rs = np.asarray(r, dtype=float)
        mask = self._mask(rs)
        rj = Jet.variable(rs, order)
        y = (rj - self.center) * (1.0 / self.width)
        # clip the base value only: outside the support the mask wipes the
        # (underflowed-to-zero) components anyway, and the clip keeps the
        # intermediate arithmetic finite at the touch points
        y.derivs[0] = np.clip(y.derivs[0], -1 + 1e-8, 1 - 1e-8)
        b = ((-1.0) / (1.0 - y * y)).exp() * self.amplitude
        comps = [c * mask for c in b.derivs]
        if not isinstance(r, np.ndarray):
            comps = [float(c) for c in comps]
            return Jet(float(rs), comps)
        return Jet(rs, comps)


class PolynomialProfile:
    """Polynomial in r truncated at r_hi (not smooth at the cut).

    Admitted only where a closed-form answer exists to compare against; the
    discontinuity at r_hi sits at an integration endpoint in those tests.
    """

    def __init__(self, coeffs, r_hi: float = 1.0):
        self.coeffs = [float(c) for c in coeffs]
        if not (0 < r_hi <= 1):
            raise ValueError("0 < r_hi <= 1")
        self.r_hi = r_hi

    @property
    def support(self):
        return (0.0, self.r_hi)

    def __call__(self, r):
        rs = np.asarray(r, dtype=float)
        acc = np.zeros_like(rs)
        for c in reversed(self.coeffs):
            acc = acc * rs + c
        acc = acc * (rs < self.r_hi)
        return acc if isinstance(r, np.ndarray) else float(acc)

    def jet(self, r, order: int) -> Jet:
        rs = np.asarray(r, dtype=float)
        mask = (rs < self.r_hi).astype(float)
        derivs = []
        for p in range(order + 1):
            acc = np.zeros_like(rs)
            for i in range(p, len(self.coeffs)):
                fall = math.prod(range(i - p + 1, i + 1))
                acc = acc + fall * self.coeffs[i] * rs ** (i - p)
            derivs.append(acc * mask)
        if not isinstance(r, np.ndarray):
            return Jet(float(rs), [float(c) for c in derivs])
        return Jet(rs, derivs)


class DerivativeProfile:
    """The m-th ordinary derivative F^(m) of a base profile F.

    Shares the base support; jets are the base jets shifted by m orders.
    """

    def __init__(self, base, m: int):
        if m < 0:
            raise ValueError("m >= 0")
        self.base = base
        self.m = m

    @property
    def support(self):
        return self.base.support

    def __call__(self, r):
        if self.m == 0:
            return self.base(r)
        j = self.base.jet(r, self.m)
        v = j.derivs[self.m]
        return v if isinstance(r, np.ndarray) else float(v)

    def jet(self, r, order: int) -> Jet:
        j = self.base.jet(r, order + self.m)
        return Jet(j.x, j.derivs[self.m :])


# ---------------------------------------------------------------------------
# forward transform, radial case


def _check_t(t: float):
    if not (0.0 < t < 2.0):
        raise ValueError(f"t must lie in (0, 2), got {t}")


def _u_range(profile, t: float):
    r_lo, r_hi = profile.support
    return max(abs(1.0 - t), r_lo), min(1.0, r_hi)


@lru_cache(maxsize=None)
def _front_constant(n: int) -> float:
    k = (n - 3) // 2
    return omega(n - 1) / (4 ** k * omega(n))


def forward_h(profile, dim: Dimension, t, quad: QuadratureRule = DEFAULT_QUAD):
    """h(t) = t^(n-2) g(t) for radial data, by the Q-kernel integral."""
    if isinstance(t, np.ndarray):
        return np.array([forward_h(profile, dim, float(tt), quad) for tt in t])
    _check_t(t)
    a, b = _u_range(profile, t)
    if b <= a:
        return 0.0
    k = dim.k
    c = _front_constant(dim.n)
    return c * quad.integrate(lambda u: u * profile(u) * q_kernel(t, u) ** k, a, b)


def forward_radial(profile, dim: Dimension, t, quad: QuadratureRule = DEFAULT_QUAD):
    """g(t) = h(t) / t^(n-2); refuses t below the division floor."""
    if isinstance(t, np.ndarray):
        return np.array([forward_radial(profile, dim, float(tt), quad) for tt in t])
    _check_t(t)
    if t < T_FLOOR:
        raise ValueError(f"g(t) undefined below t = {T_FLOOR} (division guard)")
    return forward_h(profile, dim, t, quad) / t ** (dim.n - 2)


def funk_hecke_forward(profile, dim: Dimension, t, quad: QuadratureRule = DEFAULT_QUAD):
    """g(t) by the angular-variable integral (independent cross-check path).

    g(t) = (omega_{n-1}/omega_n) * integral f(sqrt(1 + t^2 + 2 s t))
           (1 - s^2)^k ds over the s-interval where the argument is in
           the profile support (clipped to [-1, 1]).
    """
    if isinstance(t, np.ndarray):
        return np.array([funk_hecke_forward(profile, dim, float(tt), quad) for tt in t])
    _check_t(t)
    r_lo, r_hi = profile.support
    s_lo = max(-1.0, (r_lo ** 2 - 1.0 - t * t) / (2.0 * t))
    s_hi = min(1.0, (r_hi ** 2 - 1.0 - t * t) / (2.0 * t))
    if s_hi <= s_lo:
        return 0.0
    k = dim.k
    c = omega(dim.n - 1) / omega(dim.n)

    def integrand(s):
        arg = np.sqrt(np.maximum(1.0 + t * t + 2.0 * s * t, 0.0))
        return profile(arg) * (1.0 - s * s) ** k

    return c * quad.integrate(integrand, s_lo, s_hi)


@lru_cache(maxsize=None)
def _kernel_terms(power: int, p: int):
    """Float term list [(i, j, c)] of the exact polynomial D_t^p Q(t,u)^power."""
    poly = exactmath.dp_q_power(power, p)
    return tuple((i, j, float(c)) for i, j, c in poly.terms())


def _eval_terms(terms, t: float, u):
    acc = np.zeros_like(u)
    for i, j, c in terms:
        acc = acc + c * t ** i * u ** j
    return acc


def forward_h_dp(profile, dim: Dimension, t: float, p: int, quad: QuadratureRule = DEFAULT_QUAD):
    """D^p h(t), p <= k, by exact differentiation of the kernel polynomial."""
    _check_t(t)
    k = dim.k
    if not (0 <= p <= k):
        raise ValueError(f"kernel differentiation supports 0 <= p <= k = {k}, got {p}")
    a, b = _u_range(profile, t)
    if b <= a:
        return 0.0
    terms = _kernel_terms(k, p)
    c = _front_constant(dim.n)
    return c * quad.integrate(lambda u: u * profile(u) * _eval_terms(terms, t, u), a, b)


# ---------------------------------------------------------------------------
# forward transform, single-harmonic case


def forward_harmonic_h(profile, dim: Dimension, m: int, t, quad: QuadratureRule = DEFAULT_QUAD):
    """h_m(t) = t^(n-2) g_m(t) for a single-harmonic component, division-free.

    Gegenbauer-kernel quadrature; the kernel argument (1 + u^2 - t^2)/(2u)
    stays in [-1, 1] on the integration range (asserted, then clipped at
    roundoff level).
    """
    if isinstance(t, np.ndarray):
        return np.array([forward_harmonic_h(profile, dim, m, float(tt), quad) for tt in t])
    _check_t(t)
    if m < 0:
        raise ValueError("m >= 0")
    a, b = _u_range(profile, t)
    if b <= a:
        return 0.0
    n, k, alpha = dim.n, dim.k, dim.alpha
    c = omega(n - 1) / (omega(n) * gegenbauer_at_one(m, alpha))

    def integrand(u):
        x_arg = (1.0 + u * u - t * t) / (2.0 * u)
        assert np.all(np.abs(x_arg) <= 1.0 + 1e-12)
        x_arg = np.clip(x_arg, -1.0, 1.0)
        return u ** (n - 2) * profile(u) * gegenbauer(m, alpha, x_arg) * (1.0 - x_arg * x_arg) ** k

    return c * quad.integrate(integrand, a, b)


def forward_harmonic(profile, dim: Dimension, m: int, t, quad: QuadratureRule = DEFAULT_QUAD):
    """g_m(t): the radial factor of the transform of f(|x|) Y_m(x/|x|).

    m = 0 reduces to forward_radial.
    """
    if isinstance(t, np.ndarray):
        return np.array([forward_harmonic(profile, dim, m, float(tt), quad) for tt in t])
    _check_t(t)
    if t < T_FLOOR:
        raise ValueError(f"g_m(t) undefined below t = {T_FLOOR} (division guard)")
    return forward_harmonic_h(profile, dim, m, t, quad) / t ** (dim.n - 2)


def phi_harmonic(profile, dim: Dimension, m: int, t, quad: QuadratureRule = DEFAULT_QUAD):
    """phi_m(t) = integral u^(1-m) f(u) Q(t,u)^(m+k) du over [|1-t|, 1]."""
    return phi_harmonic_dp(profile, dim, m, t, 0, quad)


def phi_harmonic_dp(
    profile, dim: Dimension, m: int, t: float, p: int, quad: QuadratureRule = DEFAULT_QUAD
):
    """D^p phi_m(t) for p <= m + k, again by exact kernel differentiation."""
    if isinstance(t, np.ndarray):
        return np.array([phi_harmonic_dp(profile, dim, m, float(tt), p, quad) for tt in t])
    _check_t(t)
    if m < 0:
        raise ValueError("m >= 0")
    mk = m + dim.k
    if not (0 <= p <= mk):
        raise ValueError(f"phi kernel differentiation supports 0 <= p <= m+k = {mk}, got {p}")
    a, b = _u_range(profile, t)
    if b <= a:
        return 0.0
    terms = _kernel_terms(mk, p)
    return quad.integrate(lambda u: u ** (1 - m) * profile(u) * _eval_terms(terms, t, u), a, b)


def const_Kmn(dim: Dimension, m: int) -> float:
    """The scalar with h_m(t) = const_Kmn * D^m phi_m(t).

    Product of the Gegenbauer-expansion constant and the kernel prefactor;
    positive for all valid inputs (checked).
    """
    if m < 0:
        raise ValueError("m >= 0")
    n, k, alpha = dim.n, dim.k, dim.alpha
    K = (
        (-1) ** m
        * math.gamma(alpha + 0.5)
        * math.gamma(m + 2 * alpha)
        / (2 ** m * math.factorial(m) * math.gamma(2 * alpha) * math.gamma(m + alpha + 0.5))
    )
    value = (
        K
        * (-1) ** m
        * omega(n - 1)
        / (4 ** (m + k) * omega(n) * gegenbauer_at_one(m, alpha))
    )
    assert value > 0
    return value


# ---------------------------------------------------------------------------
# packaged data views


class SmtProfile:
    """Forward data of a radial profile: h, g, and analytic D^p h up to k."""

    def __init__(self, dim: Dimension, h, dp_h, k_eff: int, support=None):
        self.dim = dim
        self._h = h
        self._dp_h = dp_h
        self.k_eff = k_eff
        # t-interval outside which h vanishes; None when unknown
        self.support = support

    @classmethod
    def from_profile(cls, profile, dim: Dimension, quad: QuadratureRule = DEFAULT_QUAD):
        def h(t):
            return forward_h(profile, dim, t, quad)

        def dp_h(t, p):
            if p == 0:
                return forward_h(profile, dim, t, quad)
            return forward_h_dp(profile, dim, t, p, quad)

        r_hi = profile.support[1]
        return cls(dim, h, dp_h, dim.k, support=(1.0 - r_hi, 1.0 + r_hi))

    def h(self, t):
        return self._h(t)

    def g(self, t):
        if isinstance(t, np.ndarray):
            return np.array([self.g(float(tt)) for tt in t])
        if t < T_FLOOR:
            raise ValueError(f"g(t) undefined below t = {T_FLOOR}")
        return self._h(t) / t ** (self.dim.n - 2)

    def dp_h(self, t, p: int):
        if p > self.k_eff:
            raise ValueError(f"derivative order {p} above trusted maximum {self.k_eff}")
        return self._dp_h(t, p)


class HarmonicForwardData:
    """Forward data of a single-harmonic profile: h_m, phi_m, and D^p phi_m."""

    def __init__(self, profile, dim: Dimension, m: int, quad: QuadratureRule = DEFAULT_QUAD):
        self.profile = profile
        self.dim = dim
        self.m = m
        self.quad = quad

    @property
    def support(self):
        r_hi = self.profile.support[1]
        return (1.0 - r_hi, 1.0 + r_hi)

    def g(self, t):
        return forward_harmonic(self.profile, self.dim, self.m, t, self.quad)

    def h(self, t):
        return forward_harmonic_h(self.profile, self.dim, self.m, t, self.quad)

    def phi(self, t):
        return phi_harmonic(self.profile, self.dim, self.m, t, self.quad)

    def phi_dp(self, t, p: int):
        return phi_harmonic_dp(self.profile, self.dim, self.m, t, p, self.quad)

    def phi_jet(self, t: float) -> Jet:
        """Jet of phi in the ordinary-derivative sense, rebuilt from D-powers.

        D^p values convert to a t-derivative jet by the triangular relation
        (d/dt)^j = sum over the same coefficient table used the other way;
        here we instead assemble the jet directly: the ordinary derivatives
        are recovered by solving the linear system given by
        D^p f = sum_j a[p][j] t^(j-2p) f^(j).
        """
        mk = self.m + self.dim.k
        dvals = [self.phi_dp(t, p) for p in range(mk + 1)]
        table = d_coeff_table(max(mk, 1))
        derivs = [dvals[0]] + [0.0] * mk
        for p in range(1, mk + 1):
            acc = dvals[p]
            row = table[p]
            for j in range(1, p):
                acc -= float(row[j]) * derivs[j] * t ** (j - 2 * p)
            derivs[p] = acc / (float(row[p]) * t ** (p - 2 * p))
        return Jet(t, derivs)

    def h_from_phi(self, t: float) -> float:
        """h_m(t) via the D^m phi route with the closed-form constant."""
        jet = self.phi_jet(t)
        return const_Kmn(self.dim, self.m) * d_operator(jet, self.m)
