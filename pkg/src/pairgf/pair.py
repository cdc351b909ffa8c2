"""Two-electron Green's function in laboratory coordinates.

In center-of-mass / relative variables, R = (a+b)/2 and r = a-b, the pair
kernel is a one-dimensional integral over the center-of-mass wave number:

    E > 0:   g = I(osc) + I(tail)
      I(osc)  = int_0^Km  K sin(K R12)/(2 pi^2 R12) gc(r1, r2; eps_K) dK
      I(tail) = int_Km^oo K sin(K R12)/(2 pi^2 R12) gc(r1, r2; eps_K) dK
    E < 0:   single real integral of the same form over (0, oo)

with Km = sqrt(E / c_K), eps_K = E - c_K K^2 and R12 = |R1 - R2|.  The
oscillatory piece is mapped with K = Km sin(theta) so the square-root
endpoint at Km becomes smooth; beyond Km the kernel decays like
exp(-q |r1 - r2|) with q = sqrt(-eps_K / c_k), which bounds the tail.

The integral diverges when R1 = R2 or r1 = +-r2.  Those argument classes
are enumerated by :func:`classify_args`; only the all-zero class (through
the spectral origin value g0) and the coincident / antipodal classes
(through the density machinery in :mod:`pairgf.ldos`) have finite physical
limits, so :func:`pair_gf` refuses every non-regular tuple.

Also here: the spectral origin density rho0(E) built from the s-wave
origin weight f(k), and its cutoff Hilbert transform for Re g0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

from . import coulomb
from .errors import CutoffRequired, DivergentArguments, QuadratureFailure
from .quadrature import QuadratureSpec, integrate, principal_value

DEFAULT_C_BIG = 0.25  # center-of-mass kinetic coefficient, atomic units

# Near the endpoint eps_K -> 0 the kernel is evaluated down to |nu| = 25
# (tunneling suppression exp(-2 pi |nu|) ~ 1e-69 for the imaginary part; the
# remaining real-part dead zone is exponentially small in the zero-energy
# kernel itself).  The negative-energy side is truncated once exp(-q d)
# drops below ~1e-20, and skipped for q < 1/150 where Gamma(1 + 1/q)
# leaves double range (a sliver of negligible measure next to eps_K = 0).
_NU_CUT = 25.0
_Q_MIN = 1.0 / 150.0
_DECAY_CUT = 45.0

_VEC_TOL = 1e-12


class DivergenceGroup(enum.Enum):
    REGULAR = "regular"
    GROUP0 = "group0"
    GROUP1 = "group1"
    GROUP2 = "group2"


class Degeneracy(enum.Enum):
    NONE = "none"
    COINCIDENT = "coincident"                  # r1 = r2, R1 = R2
    COINCIDENT_SHIFTED = "coincident-shifted"  # r1 = r2, R1 != R2
    ANTIPODAL = "antipodal"                    # r1 = -r2 != 0, R1 = R2


@dataclass(frozen=True)
class DivergenceClass:
    group: DivergenceGroup
    degeneracy: Degeneracy = Degeneracy.NONE

    @property
    def is_regular(self) -> bool:
        return self.group is DivergenceGroup.REGULAR

    def __str__(self):
        if self.is_regular:
            return "regular"
        return f"{self.group.value}/{self.degeneracy.value}"


class SpinChannel(enum.Enum):
    SINGLET = "singlet"
    TRIPLET = "triplet"

    @property
    def weight(self) -> int:
        return 1 if self is SpinChannel.SINGLET else 3


def _as_vec(v):
    return (float(v[0]), float(v[1]), float(v[2]))


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _norm(v) -> float:
    return math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)


@dataclass(frozen=True)
class PairArgs:
    """Laboratory-frame argument tuple (a1, b1, a2, b2) in Bohr radii."""

    a1: tuple
    b1: tuple
    a2: tuple
    b2: tuple
    c_K: float = DEFAULT_C_BIG

    def __post_init__(self):
        object.__setattr__(self, "a1", _as_vec(self.a1))
        object.__setattr__(self, "b1", _as_vec(self.b1))
        object.__setattr__(self, "a2", _as_vec(self.a2))
        object.__setattr__(self, "b2", _as_vec(self.b2))
        if self.c_K <= 0:
            raise ValueError("c_K must be positive")

    @cached_property
    def r1(self):
        return _sub(self.a1, self.b1)

    @cached_property
    def r2(self):
        return _sub(self.a2, self.b2)

    @cached_property
    def R1(self):
        s = _add(self.a1, self.b1)
        return (0.5 * s[0], 0.5 * s[1], 0.5 * s[2])

    @cached_property
    def R2(self):
        s = _add(self.a2, self.b2)
        return (0.5 * s[0], 0.5 * s[1], 0.5 * s[2])

    @cached_property
    def R12(self) -> float:
        return _norm(_sub(self.R1, self.R2))

    def exchanged(self) -> "PairArgs":
        """Swap the second pair (b2 <-> a2), flipping r2."""
        return PairArgs(self.a1, self.b1, self.b2, self.a2, c_K=self.c_K)


def _scale(p: PairArgs) -> float:
    return max(_norm(p.a1), _norm(p.b1), _norm(p.a2), _norm(p.b2), 1.0)


def classify_args(p: PairArgs) -> DivergenceClass:
    """Sort an argument tuple into regular / divergent classes.

    The defining integral diverges when the plane-wave exponent vanishes
    (R1 = R2) or the Coulomb kernel arguments degenerate (r1 = +-r2).  The
    group index counts the distinct nonzero vectors among a1, b1, a2, b2
    (zero, one, two); anything beyond is folded into group 2.
    """
    tol = _VEC_TOL * _scale(p)
    same_R = p.R12 <= tol
    coincident = _norm(_sub(p.r1, p.r2)) <= tol
    antipodal = _norm(_add(p.r1, p.r2)) <= tol
    if not (same_R or coincident or antipodal):
        return DivergenceClass(DivergenceGroup.REGULAR)

    distinct = []
    for v in (p.a1, p.b1, p.a2, p.b2):
        if _norm(v) <= tol:
            continue
        if all(_norm(_sub(v, u)) > tol and _norm(_add(v, u)) > tol
               for u in distinct):
            distinct.append(v)
    if not distinct:
        return DivergenceClass(DivergenceGroup.GROUP0)
    group = DivergenceGroup.GROUP1 if len(distinct) == 1 else DivergenceGroup.GROUP2

    if coincident:
        deg = Degeneracy.COINCIDENT if same_R else Degeneracy.COINCIDENT_SHIFTED
    else:
        deg = Degeneracy.ANTIPODAL
    return DivergenceClass(group, deg)


def _com_weight(K: float, R12: float) -> float:
    """K sin(K R12) / (2 pi^2 R12), with the analytic R12 -> 0 limit."""
    x = K * R12
    if abs(x) < 1e-8:
        return K * K / (2.0 * math.pi ** 2) * (1.0 - x * x / 6.0)
    return K * math.sin(x) / (2.0 * math.pi ** 2 * R12)


def _default_spec():
    return QuadratureSpec(abs_tol=1e-13, rel_tol=1e-8, max_depth=24)


def pair_gf(p: PairArgs, E: float, *, c_k: float = 1.0,
            spec: QuadratureSpec | None = None,
            free_mode: bool = False) -> complex:
    """Two-electron Green's function at a regular argument tuple.

    Raises :class:`DivergentArguments` for any tuple of Table-style
    degeneracy, and :class:`QuadratureFailure` if the K integral cannot be
    done to tolerance.
    """
    cls = classify_args(p)
    if not cls.is_regular:
        raise DivergentArguments(cls)
    spec = spec or _default_spec()
    nu_override = 0.0 if free_mode else None

    r1, r2 = p.r1, p.r2
    d = _norm(_sub(r1, r2))
    r1n, r2n = _norm(r1), _norm(r2)
    R12 = p.R12
    c_K = p.c_K

    def gc_at(eps: float) -> complex:
        return coulomb.gc_closed(r1, r2, eps, nu=nu_override, c_k=c_k).value

    if E > 0:
        Km = math.sqrt(E / c_K)

        def osc(theta):
            K = Km * math.sin(theta)
            eps = E - c_K * K * K
            if eps <= 0:
                return 0.0 + 0.0j
            kp = math.sqrt(eps / c_k)
            if not free_mode and 1.0 / kp > _NU_CUT:
                return 0.0 + 0.0j
            return _com_weight(K, R12) * gc_at(eps) * Km * math.cos(theta)

        phase = Km * R12 + math.sqrt(E / c_k) * (r1n + r2n + d)
        panels = max(1, min(64, int(phase / 3.0) + 1))
        osc_spec = QuadratureSpec(abs_tol=spec.abs_tol, rel_tol=spec.rel_tol,
                                  max_depth=spec.max_depth,
                                  max_panel=(0.5 * math.pi) / panels)
        part_osc = integrate(osc, 0.0, 0.5 * math.pi, osc_spec)
        part_tail = _tail_integral(gc_at, E, c_K, c_k, d, r1n, r2n, R12, spec)
        return part_osc.value + part_tail

    return _tail_integral(gc_at, E, c_K, c_k, d, r1n, r2n, R12, spec)


def _tail_integral(gc_at, E, c_K, c_k, d, r1n, r2n, R12, spec):
    """Decaying (negative relative energy) part of the K integral.

    Integrated over q = sqrt(-eps_K / c_k), which removes the square-root
    branch point at K = Km analytically:  K dK = (c_k/c_K) q dq, so

        w(K) dK = sin(K R12)/(2 pi^2 R12) (c_k/c_K) q dq

    (K^2/(2 pi^2) (c_k/c_K) q/K dq in the R12 -> 0 limit).
    """
    q_lo = math.sqrt(max(-E, 0.0) / c_k)
    q_hi = _DECAY_CUT / max(d, 1e-6)
    if q_hi <= q_lo:
        return 0.0 + 0.0j

    def tail_q(q):
        if q < _Q_MIN or q * (r1n + r2n - d) > 1250.0:
            return 0.0
        eps = -c_k * q * q
        K2 = (E - eps) / c_K
        if K2 <= 0.0:
            return 0.0
        K = math.sqrt(K2)
        x = K * R12
        if abs(x) < 1e-8:
            weight = K * (1.0 - x * x / 6.0) / (2.0 * math.pi ** 2)
        else:
            weight = math.sin(x) / (2.0 * math.pi ** 2 * R12)
        return weight * (c_k / c_K) * q * gc_at(eps).real

    osc = R12 * math.sqrt(c_k / c_K)
    panels = max(1, min(64, int(osc * (q_hi - q_lo) / 3.0) + 1))
    tail_spec = QuadratureSpec(abs_tol=spec.abs_tol, rel_tol=spec.rel_tol,
                               max_depth=spec.max_depth,
                               max_panel=(q_hi - q_lo) / panels)
    res = integrate(tail_q, q_lo, q_hi, tail_spec)
    return complex(res.value)


def pair_gf_channel(p: PairArgs, E: float, channel: SpinChannel, *,
                    c_k: float = 1.0, spec: QuadratureSpec | None = None,
                    free_mode: bool = False) -> complex:
    """Even (singlet) or odd (triplet) spatial channel of the pair kernel:

        g_e/o = (1/2) [ g(a1 b1 a2 b2) +- g(a1 b1 b2 a2) ]

    The spin-projector trace weights (1 and 3) are applied by the density
    assembly, not here.  Both the direct and the exchanged tuple must be
    regular.
    """
    q = p.exchanged()
    for args in (p, q):
        cls = classify_args(args)
        if not cls.is_regular:
            raise DivergentArguments(cls)
    direct = pair_gf(p, E, c_k=c_k, spec=spec, free_mode=free_mode)
    exch = pair_gf(q, E, c_k=c_k, spec=spec, free_mode=free_mode)
    if channel is SpinChannel.SINGLET:
        return 0.5 * (direct + exch)
    return 0.5 * (direct - exch)


# =============================================================================
# SPECTRAL ORIGIN VALUE g0(E)
# =============================================================================

def f_origin_weight(k: float) -> float:
    """s-wave origin weight f(k) = 8 pi k / ((2 pi)(4 pi)(e^{2 pi/k} - 1)).

    Includes the 1/(2 pi) radial-normalization measure, so the spectral
    integrals use a plain dk.
    """
    if k <= 0:
        return 0.0
    x = 2.0 * math.pi / k
    if x > 690.0:
        return 0.0
    return k / (math.pi * math.expm1(x))


def g0_dos(E: float, *, c_K: float = DEFAULT_C_BIG, c_k: float = 1.0,
           spec: QuadratureSpec | None = None) -> float:
    """Origin density of states rho0(E) = (-1/pi) Im g0(E):

        rho0(E) = E / (4 pi^2 sqrt(c_K^3 c_k))
                  * int_0^{pi/2} f(sqrt(E/c_k) sin a) cos^2 a  da

    for E > 0; identically 0 for E <= 0.
    """
    if E <= 0:
        return 0.0
    spec = spec or QuadratureSpec(abs_tol=1e-16, rel_tol=1e-10, max_depth=24)
    kmax = math.sqrt(E / c_k)

    def integrand(alpha):
        c = math.cos(alpha)
        return f_origin_weight(kmax * math.sin(alpha)) * c * c

    res = integrate(integrand, 0.0, 0.5 * math.pi, spec)
    pref = E / (4.0 * math.pi ** 2 * math.sqrt(c_K ** 3 * c_k))
    return pref * res.value


def g0_real(E: float, cutoff_w: float | None, *,
            c_K: float = DEFAULT_C_BIG, c_k: float = 1.0,
            spec: QuadratureSpec | None = None) -> float:
    """Band-cutoff Hilbert transform giving Re g0(E):

        Re g0(E) = PV int_0^W rho0(E') / (E - E') dE'.

    The cutoff is model specific and must be supplied; the value grows
    without bound as W -> infinity.
    """
    if cutoff_w is None:
        raise CutoffRequired("Re g0 needs an explicit band cutoff W")
    if cutoff_w <= 0:
        raise ValueError("cutoff W must be positive")
    spec = spec or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-8, max_depth=24)

    def rho(Ep):
        return g0_dos(Ep, c_K=c_K, c_k=c_k)

    if 0.0 < E < cutoff_w:
        res = principal_value(rho, E, 0.0, cutoff_w, spec)
        return res.value
    if E in (0.0, cutoff_w):
        # rho0 vanishes superexponentially at 0 but not at W
        if E == 0.0:
            res = integrate(lambda Ep: -rho(Ep) / Ep, 1e-12, cutoff_w, spec)
            return res.value
        raise QuadratureFailure("Re g0 evaluated exactly at the cutoff edge")
    res = integrate(lambda Ep: rho(Ep) / (E - Ep), 0.0, cutoff_w, spec)
    return res.value
