"""One-particle Coulomb Green's function for the relative motion of a
repulsive pair, in atomic units.

The retarded kernel for energy E and kinetic coefficient c_k is

    gc(r1, r2; E) = -Gamma(1 - i nu)/(4 pi |r1 - r2|)
                    * [ W(U) dM/dV - M(V) dW/dU ],

with U = -ik (r1 + r2 + |r1 - r2|), V = -ik (r1 + r2 - |r1 - r2|),
k = sqrt(E / c_k) on the Im k > 0 branch and nu = -1/k.  W and M are the
Whittaker pair with kappa = i nu, mu = 1/2 (Buchholz-normalized M).

Also provided: the radial partial-wave kernels, their Legendre-summed
partial-wave form, the regularized coincidence limit (the finite part left
after removing the universal -1/(4 pi delta) divergence) and the antipodal
value gc(r, -r; E) used by the exchange density.

Setting ``nu=0`` ("free mode") reduces every kernel to its free-particle
counterpart; tests use this to pin normalizations.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import CoincidentArguments, NonConvergence
from .special import DEFAULT_WRONSKIAN_TOL, WhittakerIndex, cgamma, whittaker_pair

# Suppression threshold: the spectral weight carries exp(-2 pi |nu|), which
# drops below 1e-300 here.  Beyond it the retarded kernel is returned as an
# exact suppressed zero.
_NU_SUPPRESS = 690.0 / (2.0 * math.pi)

_COINCIDENT_EPS = 1e-12


def _monitor_tol(base: float, gam: complex) -> float:
    """Residual threshold with the double-representation floor.

    The Wronskian identity lives at the scale 1/|Gamma|; once that exceeds
    ~1e8 an absolute residual below `base` cannot be represented by double
    products even for exact values, so the monitor floor scales with it.
    """
    return max(base, 1.2e-13 / max(abs(gam), 1e-300))


class GfKind(enum.Enum):
    RETARDED = "retarded"
    ADVANCED = "advanced"
    NEGATIVE_ENERGY_REAL = "negative-energy-real"


class Parity(enum.Enum):
    ALL = "all"
    EVEN_L = "even-l"
    ODD_L = "odd-l"


@dataclass(frozen=True)
class CoulombParams:
    """Derived kinematic quantities for relative-motion energy E."""

    energy: float
    c_k: float
    k: complex
    nu: complex


@dataclass(frozen=True)
class GfValue:
    value: complex
    kind: GfKind
    suppressed: bool = False


def coulomb_params(energy: float, c_k: float = 1.0) -> CoulombParams:
    """Branch-resolved wave number and Sommerfeld-type parameter.

    For energy > 0 the retarded branch gives real positive k; for
    energy < 0, k = i sqrt(|E|/c_k) (Im k > 0) and the kernels become real.
    """
    if c_k <= 0:
        raise ValueError("c_k must be positive")
    if energy == 0:
        raise ValueError("energy = 0 is not a valid kernel energy")
    if energy > 0:
        k = complex(math.sqrt(energy / c_k), 0.0)
    else:
        k = complex(0.0, math.sqrt(-energy / c_k))
    return CoulombParams(energy=float(energy), c_k=float(c_k), k=k, nu=-1.0 / k)


def _vec(r):
    x, y, z = (float(r[0]), float(r[1]), float(r[2]))
    return x, y, z


def _norm(r) -> float:
    x, y, z = _vec(r)
    return math.sqrt(x * x + y * y + z * z)


def _dist(r1, r2) -> float:
    x1, y1, z1 = _vec(r1)
    x2, y2, z2 = _vec(r2)
    return math.sqrt((x1 - x2) ** 2 + (y1 - y2) ** 2 + (z1 - z2) ** 2)


def _resolve(E, c_k, nu):
    p = coulomb_params(E, c_k)
    nu_eff = p.nu if nu is None else complex(nu)
    return p, nu_eff


def _suppressed(nu_eff: complex) -> bool:
    return abs(nu_eff) > _NU_SUPPRESS


def gc_closed(r1, r2, E: float, *, nu: complex | None = None, c_k: float = 1.0,
              wronskian_tol: float = DEFAULT_WRONSKIAN_TOL,
              strict: bool = False) -> GfValue:
    """Closed-form Coulomb Green's function at vector arguments.

    ``nu`` overrides the physical Sommerfeld-type parameter (0 gives the
    free kernel).  Raises :class:`CoincidentArguments` when r1 == r2.
    """
    d = _dist(r1, r2)
    r1n = _norm(r1)
    r2n = _norm(r2)
    scale = max(r1n, r2n, 1e-30)
    if d <= _COINCIDENT_EPS * scale:
        raise CoincidentArguments("use gc_coincident_regular for r1 -> r2")
    p, nu_eff = _resolve(E, c_k, nu)
    kind = GfKind.RETARDED if E > 0 else GfKind.NEGATIVE_ENERGY_REAL
    if E > 0 and _suppressed(nu_eff):
        return GfValue(0.0 + 0.0j, kind, suppressed=True)

    k = p.k
    U = -1j * k * (r1n + r2n + d)
    V = -1j * k * (r1n + r2n - d)
    if E < 0 and U.real > 1300.0:
        raise NonConvergence("negative-energy kernel out of double range")
    gam = cgamma(1.0 - 1j * nu_eff)
    tol = _monitor_tol(wronskian_tol, gam)
    idx = WhittakerIndex(kappa=1j * nu_eff, mu=0.5)
    wu = whittaker_pair(idx, U, wronskian_tol=tol, strict=strict)
    if abs(V) <= 1e-13 * max(1.0, abs(U)):
        # M(V) ~ V, M'(0) = 1 in the Buchholz normalization
        bracket = wu.w
    else:
        mv = whittaker_pair(idx, V, wronskian_tol=tol, strict=strict)
        bracket = wu.w * mv.m_prime - mv.m * wu.w_prime
    value = -gam / (4.0 * math.pi * d) * bracket
    _check_finite(value)
    return GfValue(value, kind)


def gc_closed_advanced(r1, r2, E: float, **kw) -> GfValue:
    """Advanced kernel: conjugate of the retarded one at real arguments."""
    g = gc_closed(r1, r2, E, **kw)
    if g.kind is GfKind.RETARDED:
        return GfValue(g.value.conjugate(), GfKind.ADVANCED, g.suppressed)
    return g


def gc_radial_l(l: int, r1: float, r2: float, E: float, *,
                nu: complex | None = None, c_k: float = 1.0,
                wronskian_tol: float = DEFAULT_WRONSKIAN_TOL,
                strict: bool = False) -> complex:
    """Radial kernel of angular momentum l:

        g_l(r1, r2; E) = Gamma(l+1-i nu) / (2 i k r1 r2)
                         * M(-2ik r_<) W(-2ik r_>)

    with Whittaker indices (i nu, l + 1/2).  Symmetric in r1, r2 by the
    min/max construction.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    if r1 <= 0 or r2 <= 0:
        raise ValueError("radii must be positive")
    p, nu_eff = _resolve(E, c_k, nu)
    if E > 0 and _suppressed(nu_eff):
        return 0.0 + 0.0j
    k = p.k
    rl, rg = (r1, r2) if r1 <= r2 else (r2, r1)
    gam = cgamma(l + 1.0 - 1j * nu_eff)
    tol = _monitor_tol(wronskian_tol, gam)
    idx = WhittakerIndex(kappa=1j * nu_eff, mu=l + 0.5)
    ev_l = whittaker_pair(idx, -2j * k * rl, wronskian_tol=tol,
                          strict=strict)
    ev_g = whittaker_pair(idx, -2j * k * rg, wronskian_tol=tol,
                          strict=strict)
    value = gam / (2j * k * r1 * r2) * ev_l.m * ev_g.w
    _check_finite(value)
    return value


def _legendre_all(x: float, l_max: int):
    """P_0..P_lmax by the Bonnet recurrence."""
    vals = [1.0, x]
    for l in range(1, l_max):
        vals.append(((2 * l + 1) * x * vals[l] - l * vals[l - 1]) / (l + 1))
    return vals[:l_max + 1]


def gc_pw_sum(r1: float, r2: float, cos_angle: float, E: float, l_max: int,
              parity: Parity = Parity.ALL, *, nu: complex | None = None,
              c_k: float = 1.0, tail_tol: float | None = 1e-6,
              strict: bool = False) -> complex:
    """Partial-wave sum  sum_l (2l+1)/(4 pi) P_l(cos) g_l(r1, r2; E),
    restricted to the requested parity class of l.

    Raises :class:`NonConvergence` when the geometric tail estimate at
    l_max exceeds ``tail_tol`` relative to the accumulated sum.
    """
    if not -1.0 <= cos_angle <= 1.0:
        raise ValueError("cos_angle must lie in [-1, 1]")
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    pl = _legendre_all(cos_angle, l_max)
    sin_ang = math.sqrt(max(0.0, 1.0 - cos_angle * cos_angle))
    total = 0.0 + 0.0j
    envelope = []  # (2l+1)/(4 pi) |g_l| times the Legendre amplitude bound
    for l in range(l_max + 1):
        if parity is Parity.EVEN_L and l % 2 == 1:
            continue
        if parity is Parity.ODD_L and l % 2 == 0:
            continue
        gl = gc_radial_l(l, r1, r2, E, nu=nu, c_k=c_k, strict=strict)
        coef = (2 * l + 1) / (4.0 * math.pi)
        total += coef * pl[l] * gl
        p_env = 1.0
        if sin_ang > 0.0 and l > 0:
            p_env = min(1.0, math.sqrt(2.0 / (math.pi * (l + 0.5) * sin_ang)))
        envelope.append(coef * abs(gl) * p_env)
    if tail_tol is not None and len(envelope) >= 3 and abs(total) > 0:
        e_last = envelope[-1]
        if e_last > 1e-13 * abs(total):  # above the noise floor
            ratio = max(envelope[-1] / envelope[-2] if envelope[-2] > 0 else 0.0,
                        envelope[-2] / envelope[-3] if envelope[-3] > 0 else 0.0)
            tail = e_last * ratio / (1.0 - ratio) if ratio < 0.98 else math.inf
            if tail > tail_tol * abs(total):
                raise NonConvergence(
                    f"partial-wave tail estimate {tail:.2e} above tolerance "
                    f"at l_max={l_max}")
    return total


def gc_coincident_regular(r: float, E: float, *, nu: complex | None = None,
                          c_k: float = 1.0,
                          wronskian_tol: float = DEFAULT_WRONSKIAN_TOL,
                          strict: bool = False) -> complex:
    """Finite part of gc(r, r + delta; E) after removing -1/(4 pi delta):

        (i k Gamma(1 - i nu) / 4 pi)
            * [ 2 M'(Z) W'(Z) + 2 M(Z) W(Z) (kappa/Z - 1/4) ],

    with Z = -2ikr and kappa = i nu.  The term linear in the transverse
    offset drops out because it is proportional to the derivative of the
    constant Wronskian.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    p, nu_eff = _resolve(E, c_k, nu)
    if E > 0 and _suppressed(nu_eff):
        return 0.0 + 0.0j
    k = p.k
    kap = 1j * nu_eff
    Z = -2j * k * r
    gam = cgamma(1.0 - 1j * nu_eff)
    ev = whittaker_pair(WhittakerIndex(kappa=kap, mu=0.5), Z,
                        wronskian_tol=_monitor_tol(wronskian_tol, gam),
                        strict=strict)
    bracket = 2.0 * ev.m_prime * ev.w_prime \
        + 2.0 * ev.m * ev.w * (kap / Z - 0.25)
    value = 1j * k * gam / (4.0 * math.pi) * bracket
    _check_finite(value)
    return value


def gc_antipodal(r: float, E: float, *, nu: complex | None = None,
                 c_k: float = 1.0,
                 wronskian_tol: float = DEFAULT_WRONSKIAN_TOL,
                 strict: bool = False) -> complex:
    """gc(r, -r; E) = -Gamma(1 - i nu) W(-4ikr) / (8 pi r).

    This is the V -> 0 limit of the closed form (M(V) ~ V with unit slope),
    so the sign matches gc_closed evaluated at antipodal vectors.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if E <= 0:
        raise ValueError("the antipodal kernel is used for E > 0 only")
    p, nu_eff = _resolve(E, c_k, nu)
    if _suppressed(nu_eff):
        return 0.0 + 0.0j
    k = p.k
    gam = cgamma(1.0 - 1j * nu_eff)
    ev = whittaker_pair(WhittakerIndex(kappa=1j * nu_eff, mu=0.5),
                        -4j * k * r,
                        wronskian_tol=_monitor_tol(wronskian_tol, gam),
                        strict=strict)
    value = -gam * ev.w / (8.0 * math.pi * r)
    _check_finite(value)
    return value


def _check_finite(v: complex):
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise NonConvergence("non-finite Green's function value")
