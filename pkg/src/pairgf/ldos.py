"""Local density of states of the repulsive electron pair.

Two component integrals over the center-of-mass wave number K, with
Km = sqrt(E / c_K) and eps_K = E - c_K K^2:

    rho_plus(r; E)  = -(1/2 pi^3) Im int_0^Km gc_reg(r; eps_K)  K^2 dK
    rho_minus(r; E) = -(1/2 pi^3) Im int_0^Km gc(r, -r; eps_K) K^2 dK

where gc_reg is the regularized coincidence limit (the removed divergence
is real and cannot contribute).  Both vanish identically for E <= 0.

Assembly (spin weights 1 for the singlet, 3 for the triplet):

    rho_even   = (rho_plus + rho_minus) / 2
    rho_odd    = (rho_plus - rho_minus) / 2
    rho_total  = rho_even + 3 rho_odd = 2 rho_plus - rho_minus
    rho_spinless = 2 rho_plus

rho_minus is an exchange contribution, not a density: it is not positive
definite, it cancels rho_plus at r -> 0 (forcing the odd channel to vanish
there) and it dies off within a few Bohr radii.

Closed-form references for the noninteracting pair are included, all in
r_B^-6; the single-particle references are in r_B^-3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import coulomb
from .pair import DEFAULT_C_BIG, f_origin_weight
from .quadrature import QuadratureSpec, integrate
from .special import bessel_j

# Gamow cutoff for the K integrals: only the imaginary part of the kernel
# enters, and it carries exp(-2 pi |nu|) < 1e-34 beyond |nu| ~ 12.7.
_NU_CUT = 80.0 / (2.0 * math.pi)


@dataclass(frozen=True)
class LdosPoint:
    """All density components at one (r, E) point, in r_B^-6."""

    r: float
    E: float
    rho_plus: float
    rho_minus: float
    rho_even: float
    rho_odd: float
    rho_total: float
    rho_spinless: float


def _component_spec():
    return QuadratureSpec(abs_tol=1e-14, rel_tol=1e-7, max_depth=24)


def rho_components(r: float, E: float, *, c_K: float = DEFAULT_C_BIG,
                   c_k: float = 1.0, spec: QuadratureSpec | None = None,
                   free_mode: bool = False):
    """The pair (rho_plus, rho_minus) at inter-electron distance r.

    ``free_mode`` forces nu = 0 in the underlying kernels, which reduces
    rho_plus to the flat noninteracting value E^2/(16 pi^3).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if E <= 0:
        return 0.0, 0.0
    spec = spec or _component_spec()
    Km = math.sqrt(E / c_K)
    kmax = math.sqrt(E / c_k)
    nu_override = 0.0 if free_mode else None

    def make_integrand(kernel):
        def integrand(theta):
            K = Km * math.sin(theta)
            eps = E - c_K * K * K
            if eps <= 0:
                return 0.0
            kp = math.sqrt(eps / c_k)
            if not free_mode and 1.0 / kp > _NU_CUT:
                return 0.0
            g = kernel(eps)
            return g.imag * K * K * Km * math.cos(theta)
        return integrand

    # phase of the kernels along theta scales like 4 k' r
    panels = max(1, min(64, int(4.0 * kmax * r / 3.0) + 1))
    kspec = QuadratureSpec(abs_tol=spec.abs_tol, rel_tol=spec.rel_tol,
                           max_depth=spec.max_depth,
                           max_panel=(0.5 * math.pi) / panels)

    plus = integrate(
        make_integrand(lambda eps: coulomb.gc_coincident_regular(
            r, eps, nu=nu_override, c_k=c_k)),
        0.0, 0.5 * math.pi, kspec)
    minus = integrate(
        make_integrand(lambda eps: coulomb.gc_antipodal(
            r, eps, nu=nu_override, c_k=c_k)),
        0.0, 0.5 * math.pi, kspec)
    norm = -1.0 / (2.0 * math.pi ** 3)
    return norm * plus.value, norm * minus.value


def rho_point(r: float, E: float, *, c_K: float = DEFAULT_C_BIG,
              c_k: float = 1.0, spec: QuadratureSpec | None = None,
              free_mode: bool = False) -> LdosPoint:
    """Assemble every density component at (r, E)."""
    rp, rm = rho_components(r, E, c_K=c_K, c_k=c_k, spec=spec,
                            free_mode=free_mode)
    even = 0.5 * (rp + rm)
    odd = 0.5 * (rp - rm)
    return LdosPoint(r=r, E=E, rho_plus=rp, rho_minus=rm,
                     rho_even=even, rho_odd=odd,
                     rho_total=2.0 * rp - rm, rho_spinless=2.0 * rp)


def rho_free(R: float, r: float, E: float) -> float:
    """Spectral density of the noninteracting pair at displacement (R, r):

        rho_f = (1/16 pi^3) [ sqrt(E') J1(sqrt(E') t) / t^3
                              - (E'/2) J0(sqrt(E') t) / t^2 ],

    with E' = 4E and t = sqrt(R^2 + r^2/4); at t = 0 this is E^2/(16 pi^3),
    and it vanishes for E <= 0.  The form is fixed by the closed evaluation
    of the sin-kernel K integral (Bessel identity), whose t -> 0 limit
    reproduces the origin value exactly.
    """
    if E <= 0:
        return 0.0
    t = math.sqrt(R * R + 0.25 * r * r)
    if t == 0.0:
        return E * E / (16.0 * math.pi ** 3)
    ep = 4.0 * E
    x = math.sqrt(ep) * t
    bracket = (math.sqrt(ep) * bessel_j(1, x) / t ** 3
               - 0.5 * ep * bessel_j(0, x) / t ** 2)
    return bracket / (16.0 * math.pi ** 3)


def rho_free_quadrature(R: float, r: float, E: float, *,
                        c_K: float = DEFAULT_C_BIG, c_k: float = 1.0,
                        spec: QuadratureSpec | None = None) -> float:
    """Direct K integral behind :func:`rho_free` (the sin-kernel form).

    Kept as an independent cross-check route for the closed form.
    """
    if E <= 0:
        return 0.0
    if R <= 0 or r <= 0:
        raise ValueError("the quadrature route needs R > 0 and r > 0")
    spec = spec or QuadratureSpec(abs_tol=1e-15, rel_tol=1e-9, max_depth=24)
    Km = math.sqrt(E / c_K)

    def integrand(K):
        eps = E - c_K * K * K
        if eps <= 0:
            return 0.0
        kp = math.sqrt(eps / c_k)
        return math.sin(kp * r) / (4.0 * math.pi * r) \
            * K * math.sin(K * R) / R

    panels = max(1, min(64, int((Km * R + math.sqrt(E / c_k) * r) / 3.0) + 1))
    kspec = QuadratureSpec(abs_tol=spec.abs_tol, rel_tol=spec.rel_tol,
                           max_depth=spec.max_depth, max_panel=Km / panels)
    res = integrate(integrand, 0.0, Km, kspec)
    return res.value / (2.0 * math.pi ** 3)


def rho_single_refs(E: float) -> dict:
    """Single-particle origin references (r_B^-3):

    * ``rho_c0``: electron at the center of the repulsive Coulomb
      potential, f(sqrt(E)) / (2 pi sqrt(E));
    * ``rho_e0``: free electron, sqrt(E) / (4 pi^2).
    """
    if E <= 0:
        raise ValueError("origin references are defined for E > 0")
    k = math.sqrt(E)
    return {
        "rho_c0": f_origin_weight(k) / (2.0 * math.pi * k),
        "rho_e0": k / (4.0 * math.pi ** 2),
    }
