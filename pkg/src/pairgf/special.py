"""Complex-argument special functions with a built-in accuracy monitor.

Provides the complex gamma function, the Kummer function 1F1, Bessel
J0/J1/J2, and the central primitive of the library: a paired evaluator for
the Whittaker functions

    M(z) = M_{kappa,mu}(z) / Gamma(2 mu + 1)      (regular at z = 0)
    W(z) = W_{kappa,mu}(z)                        (recessive at Re z -> +inf)

together with both derivatives.  The pair satisfies the constant Wronskian

    W(z) M'(z) - M(z) W'(z) = 1 / Gamma(mu - kappa + 1/2)

and every evaluation reports the residual of that identity, which is the
runtime accuracy metric used throughout the library.

Evaluation strategy
-------------------
* M from the Kummer power series; W from the logarithmic series for the
  Tricomi function with integer second parameter (2 mu + 1 is always an
  integer here).
* For large |z| the standard asymptotic expansion of W is used, truncated
  at its smallest term, and M is reassembled from W(kappa, z) and
  W(-kappa, -z) through the dominant/recessive connection formula.
* Power series track their largest intermediate term.  When the implied
  cancellation exceeds what double precision can absorb, the evaluation is
  repeated in gmpy2 multiprecision arithmetic with a working precision
  sized from the observed cancellation, then rounded back to doubles.

Everything here is pure and re-entrant; the gmpy2 context is thread-local
and restored after use.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import gmpy2

from .errors import NonConvergence, PoleError, WronskianViolation

DEFAULT_WRONSKIAN_TOL = 1e-8

_EPS = 2.220446049250313e-16
_EULER = 0.5772156649015328606065120900824024
_MAX_SERIES_TERMS = 120_000
_MAX_MP_DIGITS = 400


# =============================================================================
# GAMMA AND DIGAMMA, DOUBLE PRECISION
# =============================================================================

# Lanczos g = 7, 9-term coefficient set.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_int(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def cgamma(z) -> complex:
    """Gamma function for complex argument (Lanczos approximation).

    Raises :class:`PoleError` at the poles 0, -1, -2, ...
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("cgamma requires a finite argument")
    if _is_nonpositive_int(z):
        raise PoleError(f"gamma pole at z = {z}")
    if z.real < 0.5:
        # Reflection keeps the Lanczos sum on its accurate half-plane.
        return math.pi / (cmath.sin(math.pi * z) * cgamma(1.0 - z))
    zz = z - 1.0
    x = _LANCZOS[0]
    for i in range(1, 9):
        x += _LANCZOS[i] / (zz + i)
    t = zz + 7.5
    # single exp keeps intermediates in range up to the overflow of
    # Gamma itself (~ z = 172 on the real axis)
    val = math.sqrt(2.0 * math.pi) * x * cmath.exp((zz + 0.5) * cmath.log(t) - t)
    if z.imag == 0.0:
        val = complex(val.real, 0.0)
    return val


def _rgamma(z: complex) -> complex:
    """1/Gamma(z); returns exactly 0 at the poles."""
    if _is_nonpositive_int(z):
        return 0.0 + 0.0j
    return 1.0 / cgamma(z)


_BERN_DBL = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0,
)


def _digamma(z: complex) -> complex:
    """Digamma for complex argument, recurrence plus asymptotic tail."""
    z = complex(z)
    if _is_nonpositive_int(z):
        raise PoleError(f"digamma pole at z = {z}")
    acc = 0.0 + 0.0j
    if z.real < 0.5:
        # psi(z) = psi(1-z) - pi cot(pi z)
        acc -= math.pi / cmath.tan(math.pi * z)
        z = 1.0 - z
    while z.real < 14.0:
        acc -= 1.0 / z
        z += 1.0
    w = 1.0 / (z * z)
    tail = 0.0 + 0.0j
    wp = w
    for n, b in enumerate(_BERN_DBL, start=1):
        tail += b / (2.0 * n) * wp
        wp *= w
    return acc + cmath.log(z) - 0.5 / z - tail


# =============================================================================
# MULTIPRECISION BACKEND (gmpy2)
# =============================================================================

_BERNOULLI_CACHE: list = [gmpy2.mpq(1)]


def _bernoulli(m: int):
    """Exact Bernoulli number B_m as gmpy2.mpq (B_1 = -1/2 convention)."""
    global _BERNOULLI_CACHE
    if m < len(_BERNOULLI_CACHE):
        return _BERNOULLI_CACHE[m]
    cache = list(_BERNOULLI_CACHE)
    for mm in range(len(cache), m + 1):
        s = gmpy2.mpq(0)
        for j in range(mm):
            s += math.comb(mm + 1, j) * cache[j]
        cache.append(-s / (mm + 1))
    _BERNOULLI_CACHE = cache
    return cache[m]


_SPOUGE_CACHE: dict = {}


def _spouge_coeffs(a_param: int, bits: int):
    key = (a_param, bits)
    coeffs = _SPOUGE_CACHE.get(key)
    if coeffs is None:
        c = [gmpy2.sqrt(2 * gmpy2.const_pi())]
        fact = gmpy2.mpfr(1)
        for k in range(1, a_param):
            ak = gmpy2.mpfr(a_param - k)
            c.append((-1) ** (k - 1) * ak ** (k - 0.5) * gmpy2.exp(ak) / fact)
            fact *= k
        coeffs = tuple(c)
        _SPOUGE_CACHE[key] = coeffs
    return coeffs


class _MPArith:
    """gmpy2 arithmetic helpers; methods assume the context is active."""

    def __init__(self, digits: int):
        self.digits = digits
        self.bits = int(digits * 3.3219280948873626) + 16
        self.eps = 10.0 ** (-digits)
        self._spouge_a = int(digits * 1.2533) + 6

    def activate(self):
        old = gmpy2.get_context()
        gmpy2.set_context(gmpy2.context(precision=self.bits, allow_complex=True))
        return old

    @staticmethod
    def restore(old):
        gmpy2.set_context(old)

    @staticmethod
    def from_complex(x):
        x = complex(x)
        return gmpy2.mpc(x.real, x.imag)

    @staticmethod
    def to_complex(x):
        return complex(x)

    @staticmethod
    def absf(x) -> float:
        a = abs(x)
        if a == 0:
            return 0.0
        ex = gmpy2.get_exp(a)
        if abs(ex) > 900:
            # keep a finite ordering proxy outside double range
            return math.inf if ex > 0 else 0.0
        return float(a)

    exp = staticmethod(gmpy2.exp)
    log = staticmethod(gmpy2.log)

    @property
    def euler(self):
        return gmpy2.const_euler()

    def gamma(self, z):
        if gmpy2.is_zero(z.imag) and z.real <= 0 and z.real == gmpy2.floor(z.real):
            raise PoleError("gamma pole")
        if z.real < 0.5:
            pi = gmpy2.const_pi()
            return pi / (gmpy2.sin(pi * z) * self.gamma(1 - z))
        a = self._spouge_a
        c = _spouge_coeffs(a, self.bits)
        zz = z - 1
        s = gmpy2.mpc(c[0])
        for k in range(1, a):
            s += c[k] / (zz + k)
        t = zz + a
        return t ** (zz + gmpy2.mpfr(1) / 2) * gmpy2.exp(-t) * s

    def rgamma(self, z):
        if gmpy2.is_zero(z.imag) and z.real <= 0 and z.real == gmpy2.floor(z.real):
            return gmpy2.mpc(0)
        return 1 / self.gamma(z)

    def digamma(self, z):
        acc = gmpy2.mpc(0)
        if z.real < 0.5:
            pi = gmpy2.const_pi()
            acc -= pi / gmpy2.tan(pi * z)
            z = 1 - z
        target = max(20.0, 0.45 * self.digits)
        while z.real < target:
            acc -= 1 / z
            z += 1
        w = 1 / (z * z)
        tail = gmpy2.mpc(0)
        wp = gmpy2.mpc(w)
        for n in range(1, 300):
            b = _bernoulli(2 * n)
            term = gmpy2.mpfr(b.numerator) / gmpy2.mpfr(b.denominator) / (2 * n) * wp
            tail += term
            if self.absf(term) < self.eps * max(self.absf(tail), 1e-30):
                break
            wp *= w
        return acc + gmpy2.log(z) - gmpy2.mpfr(1) / 2 / z - tail


class _DblArith:
    """Double-precision twin of :class:`_MPArith`."""

    digits = 16
    eps = _EPS
    euler = _EULER

    def activate(self):
        return None

    @staticmethod
    def restore(old):
        pass

    @staticmethod
    def from_complex(x):
        return complex(x)

    @staticmethod
    def to_complex(x):
        return complex(x)

    @staticmethod
    def absf(x) -> float:
        return abs(x)

    exp = staticmethod(cmath.exp)
    log = staticmethod(cmath.log)
    gamma = staticmethod(cgamma)
    rgamma = staticmethod(_rgamma)
    digamma = staticmethod(_digamma)


@lru_cache(maxsize=16384)
def _rgamma_hi(z: complex) -> complex:
    """1/Gamma(z) with multiprecision assist where double Lanczos degrades.

    The Lanczos sum loses about two digits once |Im z| grows past a few
    units, which is exactly where the Wronskian scale blows up; those
    arguments are recomputed with a Spouge expansion in gmpy2.
    """
    rg = _rgamma(z)
    if abs(rg) > 50.0 or abs(z.imag) > 6.0:
        digits = 30 + max(0, int(math.log10(max(abs(rg), 1.0))))
        ar = _MPArith(digits)
        old = ar.activate()
        try:
            rg = ar.to_complex(ar.rgamma(ar.from_complex(z)))
        finally:
            ar.restore(old)
    return rg


class _DblArithHi(_DblArith):
    """Double backend whose coefficient gammas use the assisted path."""

    rgamma = staticmethod(_rgamma_hi)


_DBL = _DblArithHi()


def _rgamma_ref(a: complex):
    """Wronskian reference 1/Gamma(a) and its magnitude."""
    rg = _rgamma_hi(a)
    return rg, abs(rg)


# =============================================================================
# SERIES KERNELS (backend-generic: operate on complex or gmpy2.mpc)
# =============================================================================

def _kummer_series(ar, a, b, z):
    """Sum 1F1(a, b, z) and its z-weighted derivative sum.

    Returns (S0, S1, cancel) with S0 = sum t_r, S1 = sum r t_r (so that
    d/dz 1F1 = S1/z) and cancel = max|t_r| / |S0|.
    """
    term = a * 0 + 1  # one, in the backend type
    s0 = term
    s1 = term * 0
    maxt = 1.0
    r = 0
    while r < _MAX_SERIES_TERMS:
        term = term * (a + r) * z / ((b + r) * (r + 1))
        r += 1
        s0 += term
        s1 += r * term
        at = ar.absf(term)
        if at > maxt:
            maxt = at
        if r > 6 and at < ar.eps * maxt:
            break
    else:
        raise NonConvergence("1F1 series did not converge")
    denom = ar.absf(s0)
    cancel = maxt / denom if denom > 0 else math.inf
    return s0, s1, max(1.0, cancel)


def _u_log_series(ar, a, n, z, lnz):
    """Tricomi U(a, n+1, z) for integer n >= 1 via the logarithmic series.

    Returns (U, U', cancel) where cancel measures the worst intermediate
    magnitude relative to |U|.
    """
    one = a * 0 + 1
    # infinite (logarithmic) part
    cl = ar.rgamma(a - n) * (-1) ** (n + 1) / math.factorial(n)
    a0 = one * 0
    a1 = one * 0
    b0 = one * 0
    maxc = 0.0
    if ar.absf(cl) != 0.0:
        psi_a = ar.digamma(a)
        h1 = one * 0          # psi(1+r) = -euler + h1
        hn = one * 0          # psi(n+1+r) = -euler + hn
        for j in range(1, n + 1):
            hn += one / j
        psi_term = psi_a + 2 * ar.euler - h1 - hn
        term = one
        r = 0
        while r < _MAX_SERIES_TERMS:
            contrib = term * (lnz + psi_term)
            a0 += contrib
            a1 += r * contrib
            b0 += term
            ac = ar.absf(contrib) + ar.absf(term)
            if ac > maxc:
                maxc = ac
            if r > n + 6 and ac < ar.eps * maxc:
                break
            psi_term = psi_term + one / (a + r) - one / (1 + r) - one / (n + 1 + r)
            term = term * (a + r) * z / ((n + 1 + r) * (r + 1))
            r += 1
        else:
            raise NonConvergence("Tricomi log-series did not converge")
    lpart = cl * a0
    lpart_d = cl * (a1 + b0) / z
    maxc *= ar.absf(cl)
    # finite part: (n-1)!/Gamma(a) z^{-n} sum_{k<n} (a-n)_k z^k / ((1-n)_k k!)
    cp = ar.rgamma(a) * math.factorial(n - 1)
    p0 = one * 0
    p1 = one * 0
    term = one
    zmn = z ** (-n)
    for k in range(n):
        p0 += term
        p1 += (k - n) * term
        tc = ar.absf(term) * ar.absf(cp) * ar.absf(zmn)
        if tc > maxc:
            maxc = tc
        if k < n - 1:
            term = term * (a - n + k) * z / ((1 - n + k) * (k + 1))
    ppart = cp * zmn * p0
    ppart_d = cp * zmn / z * p1
    u = lpart + ppart
    up = lpart_d + ppart_d
    denom = ar.absf(u)
    cancel = maxc / denom if denom > 0 else math.inf
    return u, up, max(1.0, cancel)


# =============================================================================
# ASYMPTOTIC EXPANSION OF W
# =============================================================================

def _w_asym_scan(kappa: complex, mu: float, az: float):
    """Predict the best relative error reachable by the W asymptotic series.

    Works on term magnitudes only.  Returns (best, s_best).
    """
    prod = 1.0
    best = 1.0
    s_best = 0
    s = 1
    smax = int(min(400, 4 * az + 30))
    while s <= smax:
        num = abs((s - 0.5 - kappa) ** 2 - mu * mu)
        ratio = num / (s * az)
        prod *= ratio
        if prod < best:
            best = prod
            s_best = s
        if ratio > 1.2 and s > s_best + 3:
            break
        s += 1
    return best, s_best


def _w_asymptotic(kappa: complex, mu: float, z: complex):
    """W and W' from the large-|z| expansion truncated at the smallest term.

    Returns (W, W', rel_err_est).
    """
    term = 1.0 + 0.0j
    s0 = term
    s1 = 0.0 + 0.0j
    best = abs(term)
    s = 1
    while s < 500:
        term = term * ((s - 0.5 - kappa) ** 2 - mu * mu) / (s * (-z))
        at = abs(term)
        if at >= best and s > 2:
            break  # past the smallest term: stop, do not add
        s0 += term
        s1 += (-s) * term
        best = at
        if at < _EPS * abs(s0):
            break
        s += 1
    pref = cmath.exp(-0.5 * z + kappa * cmath.log(z))
    w = pref * s0
    wp = w * (-0.5 + kappa / z) + pref * s1 / z
    rel = best / max(abs(s0), 1e-300)
    return w, wp, rel


# =============================================================================
# WHITTAKER PAIR EVALUATOR
# =============================================================================

@dataclass(frozen=True)
class WhittakerIndex:
    """Index pair (kappa, mu); 2*mu + 1 must be a positive integer."""

    kappa: complex
    mu: float

    def __post_init__(self):
        n = round(2 * self.mu)
        if abs(2 * self.mu - n) > 1e-12 or n < 1:
            raise ValueError("mu must be a half-integer >= 1/2")


@dataclass(frozen=True)
class WhittakerEval:
    """Values and derivatives of the Whittaker pair at one point."""

    w: complex
    w_prime: complex
    m: complex
    m_prime: complex
    wronskian_residual: float


def _eval_m_series(ar, kappa, mu, z):
    """Buchholz-normalized M and M' by the Kummer series (backend ar)."""
    n = round(2 * mu)
    a = ar.from_complex(mu - kappa + 0.5)
    zb = ar.from_complex(z)
    s0, s1, cancel = _kummer_series(ar, a, n + 1, zb)
    lnz = ar.log(zb)
    pref = ar.exp(-zb / 2 + (mu + 0.5) * lnz) / math.factorial(n)
    m = pref * s0
    mp_ = pref * ((mu + 0.5) / zb - 0.5) * s0 + pref * s1 / zb
    return ar.to_complex(m), ar.to_complex(mp_), cancel


def _eval_w_series(ar, kappa, mu, z):
    """W and W' from the Tricomi logarithmic series (backend ar)."""
    n = round(2 * mu)
    a = ar.from_complex(mu - kappa + 0.5)
    zb = ar.from_complex(z)
    lnz = ar.log(zb)
    u, up, cancel = _u_log_series(ar, a, n, zb, lnz)
    pref = ar.exp(-zb / 2 + (mu + 0.5) * lnz)
    w = pref * u
    wp = pref * (((mu + 0.5) / zb - 0.5) * u + up)
    return ar.to_complex(w), ar.to_complex(wp), cancel


def _digits_for(cancel: float, scale: float) -> int:
    if not math.isfinite(cancel):
        cancel = 1e40
    d = 20 + int(math.log10(max(cancel, 1.0))) + int(math.log10(max(scale, 1.0)))
    return min(d, _MAX_MP_DIGITS)


def _escalated(eval_fn, kappa, mu, z, budget, scale, first):
    """Retry ``eval_fn`` at increasing precision until the measured
    cancellation fits inside ``budget``.

    ``first`` is the double-precision result triple (v, vp, cancel).
    """
    v, vp, cancel = first
    eps_eff = _EPS
    digits = 16
    for _ in range(3):
        if eps_eff * cancel * 8.0 <= budget:
            return v, vp
        digits = max(int(digits * 1.5), _digits_for(cancel, scale))
        ar = _MPArith(digits)
        old = ar.activate()
        try:
            v, vp, cancel = eval_fn(ar, kappa, mu, z)
        finally:
            ar.restore(old)
        eps_eff = 10.0 ** (-digits)
    return v, vp


def whittaker_pair(idx: WhittakerIndex, z, *,
                   wronskian_tol: float = DEFAULT_WRONSKIAN_TOL,
                   strict: bool = True) -> WhittakerEval:
    """Evaluate W, M and their derivatives at ``z`` with residual monitoring.

    Parameters
    ----------
    idx : WhittakerIndex
        Index pair (kappa, mu).
    z : complex
        Argument; must be nonzero (limits at 0 belong to the caller).
    wronskian_tol : float
        Absolute tolerance on the Wronskian residual.
    strict : bool
        If true a residual above tolerance raises
        :class:`WronskianViolation`; otherwise it is emitted as a warning
        (scan mode).
    """
    kappa = complex(idx.kappa)
    mu = float(idx.mu)
    z = complex(z)
    if z == 0:
        raise ValueError("whittaker_pair requires z != 0")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("whittaker_pair requires finite z")

    a = mu - kappa + 0.5
    rg_a, scale = _rgamma_ref(a)
    budget = min(1e-11, 0.2 * wronskian_tol / max(1.0, scale))
    az = abs(z)
    on_pos_axis = (z.imag == 0.0 and z.real > 0.0)

    asym_best, _ = _w_asym_scan(kappa, mu, az)
    use_asym = az >= 8.0 and asym_best < 0.05 * budget

    # ----- W -----
    if use_asym:
        w, wp, _ = _w_asymptotic(kappa, mu, z)
    else:
        first = _eval_w_series(_DBL, kappa, mu, z)
        w, wp = _escalated(_eval_w_series, kappa, mu, z, budget, scale, first)

    # ----- M -----
    if on_pos_axis:
        # all series terms share one phase: no cancellation, but the raw sum
        # overflows doubles long before M itself does
        if z.real > 600.0:
            ar = _MPArith(24)
            old = ar.activate()
            try:
                m, mp_, _ = _eval_m_series(ar, kappa, mu, z)
            finally:
                ar.restore(old)
        else:
            m, mp_, _ = _eval_m_series(_DBL, kappa, mu, z)
    else:
        first = _eval_m_series(_DBL, kappa, mu, z)
        if use_asym and _EPS * first[2] * 8.0 > budget:
            m, mp_ = _m_from_connection(kappa, mu, z, w, wp)
        else:
            m, mp_ = _escalated(_eval_m_series, kappa, mu, z, budget, scale, first)

    for v in (w, wp, m, mp_):
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise NonConvergence(
                f"Whittaker value overflow/invalid at kappa={kappa}, mu={mu}, z={z}")

    residual = abs(w * mp_ - m * wp - rg_a)
    if residual > wronskian_tol:
        if strict:
            raise WronskianViolation(residual, wronskian_tol,
                                     f"kappa={kappa}, mu={mu}, z={z}")
        warnings.warn(
            f"Wronskian residual {residual:.2e} above {wronskian_tol:.2e} "
            f"at kappa={kappa}, mu={mu}, z={z}", stacklevel=2)
    return WhittakerEval(w=w, w_prime=wp, m=m, m_prime=mp_,
                         wronskian_residual=residual)


def _m_from_connection(kappa, mu, z, w, wp):
    """M and M' from W(kappa, z) and the asymptotics of W(-kappa, -z).

    Valid off the positive real axis:
        M = e^{-s i pi a}/Gamma(mu+kappa+1/2) W_{kappa}(z)
          + e^{s i pi kappa}/Gamma(a) W_{-kappa}(z e^{s i pi}),
    with a = mu - kappa + 1/2 and s chosen so z e^{s i pi} stays principal.
    """
    s = 1.0 if z.imag <= 0.0 else -1.0
    a = mu - kappa + 0.5
    w2, wp2, _ = _w_asymptotic(-kappa, mu, -z)
    c1 = cmath.exp(-s * 1j * math.pi * a) * _rgamma_hi(mu + kappa + 0.5)
    c2 = cmath.exp(s * 1j * math.pi * kappa) * _rgamma_hi(a)
    m = c1 * w + c2 * w2
    mp_ = c1 * wp - c2 * wp2
    return m, mp_


# =============================================================================
# PUBLIC KUMMER FUNCTION
# =============================================================================

def hyp1f1(a, b, z, *, rel_tol: float = 1e-12) -> complex:
    """Confluent hypergeometric function 1F1(a; b; z) for complex arguments.

    Uses the Taylor series with cancellation tracking, escalating to
    multiprecision when doubles cannot absorb the cancellation, and the
    large-|z| asymptotic expansion where that is the cheaper accurate route.
    """
    a = complex(a)
    b = complex(b)
    z = complex(z)
    if _is_nonpositive_int(b):
        raise PoleError(f"1F1 pole at b = {b}")
    if z == 0:
        return 1.0 + 0.0j
    s0, _, cancel = _kummer_series(_DBL, a, b, z)
    if _EPS * cancel * 8.0 <= rel_tol:
        return complex(s0)
    value = _hyp1f1_asymptotic(a, b, z, rel_tol)
    if value is not None:
        return value
    digits = _digits_for(cancel, 1.0)
    if digits >= _MAX_MP_DIGITS:
        raise NonConvergence("1F1: cancellation beyond supported precision")
    ar = _MPArith(digits)
    old = ar.activate()
    try:
        s0, _, _ = _kummer_series(ar, ar.from_complex(a), ar.from_complex(b),
                                  ar.from_complex(z))
        return ar.to_complex(s0)
    finally:
        ar.restore(old)


def _asym_pair_scan(p, q, az):
    """Smallest-term estimate for sum_s (p)_s (q)_s / (s! z^s)."""
    prod = 1.0
    best = 1.0
    s_best = 0
    for s in range(1, 200):
        ratio = abs(p + s - 1) * abs(q + s - 1) / (s * az)
        prod *= ratio
        if prod < best:
            best, s_best = prod, s
        if ratio > 1.2 and s > s_best + 3:
            break
    return best


def _hyp1f1_asymptotic(a, b, z, rel_tol):
    az = abs(z)
    if az < 10.0:
        return None
    e1 = _asym_pair_scan(a, a - b + 1, az)
    e2 = _asym_pair_scan(b - a, 1 - a, az)
    if max(e1, e2) > 0.05 * rel_tol:
        return None

    def trunc_sum(p, q, w):
        term = 1.0 + 0.0j
        tot = term
        best = abs(term)
        for s in range(1, 500):
            term = term * (p + s - 1) * (q + s - 1) / (s * w)
            at = abs(term)
            if at >= best and s > 2:
                break
            tot += term
            best = at
            if at < _EPS * abs(tot):
                break
        return tot

    s1 = trunc_sum(a, a - b + 1, -z)
    s2 = trunc_sum(b - a, 1 - a, z)
    sgn = 1.0 if z.imag >= 0.0 else -1.0
    t1 = cmath.exp(sgn * 1j * math.pi * a - a * cmath.log(z)) * _rgamma(b - a) * s1
    t2 = cmath.exp(z + (a - b) * cmath.log(z)) * _rgamma(a) * s2
    return cgamma(b) * (t1 + t2)


# =============================================================================
# BESSEL J0 / J1 / J2
# =============================================================================

def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind J_n(x) for n in {0, 1, 2}, x >= 0.

    Power series below x = 16, Hankel asymptotic expansion above.
    """
    if n not in (0, 1, 2):
        raise ValueError("bessel_j supports n in {0, 1, 2}")
    if x < 0:
        raise ValueError("bessel_j requires x >= 0")
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x < 16.0:
        half = 0.5 * x
        term = half ** n / math.factorial(n)
        total = term
        m = 0
        while True:
            m += 1
            term *= -(half * half) / (m * (m + n))
            total += term
            if abs(term) < 1e-18 * max(abs(total), 1e-30) and m > 4:
                return total
            if m > 400:
                raise NonConvergence("bessel series stalled")
    mu4 = 4.0 * n * n
    t = 1.0
    p = 1.0
    q = 0.0
    best = math.inf
    for k in range(1, 40):
        t *= (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * x)
        at = abs(t)
        if at >= best:
            break
        best = at
        if k % 2 == 1:
            q += t if (k // 2) % 2 == 0 else -t
        else:
            p += -t if (k // 2) % 2 == 1 else t
        if at < 1e-18:
            break
    chi = x - 0.5 * n * math.pi - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))
