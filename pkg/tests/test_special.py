"""Special functions against independent oracles.

Golden values were produced with mpmath (30 significant digits) and are
frozen here; mpmath is also used live as a cross-check oracle where cheap.
"""

import cmath
import math
import random

import mpmath as mp
import pytest

from pairgf.errors import NonConvergence, PoleError, WronskianViolation
from pairgf.special import (WhittakerEval, WhittakerIndex, bessel_j, cgamma,
                            hyp1f1, whittaker_pair)

mp.mp.dps = 30


# =============================================================================
# GAMMA
# =============================================================================

def test_gamma_one():
    assert abs(cgamma(1.0) - 1.0) < 1e-14


def test_gamma_half():
    assert abs(cgamma(0.5) - math.sqrt(math.pi)) < 1e-13


def test_gamma_abs_one_plus_i():
    # |Gamma(1+ib)|^2 = pi b / sinh(pi b)
    want = math.sqrt(math.pi / math.sinh(math.pi))
    assert abs(abs(cgamma(1 + 1j)) - want) < 1e-13


def test_gamma_recurrence_property():
    rng = random.Random(1)
    for _ in range(40):
        z = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
        if abs(z.imag) < 0.1 and z.real < 0.5:
            continue  # stay away from the pole line
        lhs = cgamma(z + 1)
        rhs = z * cgamma(z)
        assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


def test_gamma_poles():
    for z in (0.0, -1.0, -5.0):
        with pytest.raises(PoleError):
            cgamma(z)


def test_gamma_against_mpmath():
    for z in (3.7 - 2.1j, 0.25 + 4j, -1.5 + 0.25j, 1 - 10j, 151.0):
        ref = complex(mp.gamma(z))
        assert abs(cgamma(z) - ref) <= 2e-13 * abs(ref)


# =============================================================================
# KUMMER 1F1
# =============================================================================

def test_hyp1f1_at_zero():
    assert hyp1f1(0.3 - 2j, 1.5, 0.0) == 1.0 + 0.0j


def test_hyp1f1_exponential_identity():
    for z in (0.7, -2.5, 1 + 3j, -60j):
        got = hyp1f1(1.0, 1.0, z)
        assert abs(got - cmath.exp(z)) <= 1e-11 * abs(cmath.exp(z))


def test_hyp1f1_e_minus_one():
    assert abs(hyp1f1(1.0, 2.0, 1.0) - (math.e - 1.0)) < 1e-13


def test_hyp1f1_pole():
    with pytest.raises(PoleError):
        hyp1f1(1.0, -2.0, 0.5)


def test_hyp1f1_against_mpmath():
    cases = [(1 - 2j, 2, -8j), (0.5 + 1j, 3, 4 + 3j), (1 - 0.5j, 2, -60j),
             (2 - 1j, 4, 90.0), (1 + 5j, 2, -3j)]
    for a, b, z in cases:
        ref = complex(mp.hyp1f1(a, b, z))
        assert abs(hyp1f1(a, b, z) - ref) <= 1e-11 * abs(ref)


# =============================================================================
# BESSEL
# =============================================================================

def _bessel_series_oracle(n, x, terms=60):
    # plain Taylor sum, independently coded
    tot = 0.0
    for m in range(terms):
        term = (-1) ** m * (x / 2.0) ** (n + 2 * m) / (
            math.factorial(m) * math.factorial(n + m))
        tot += term
        if abs(term) < 1e-20:
            break
    return tot


def test_bessel_trivial():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(2, 0.0) == 0.0


def test_bessel_first_zero_of_j0():
    # location from the independent series oracle
    assert abs(bessel_j(0, 2.4048255576957)) < 1e-7


def test_bessel_matches_series_oracle():
    for n in (0, 1, 2):
        for x in (0.3, 2.0, 7.5, 14.0):
            # the plain oracle loses ~e^x eps to alternation, so the floor
            # scales accordingly
            floor = 5e-15 * math.exp(x)
            assert abs(bessel_j(n, x) - _bessel_series_oracle(n, x)) < floor


def test_bessel_large_argument():
    for n in (0, 1, 2):
        for x in (16.5, 44.0, 150.0):
            ref = float(mp.besselj(n, x))
            assert abs(bessel_j(n, x) - ref) < 1e-11


def test_bessel_domain():
    with pytest.raises(ValueError):
        bessel_j(3, 1.0)
    with pytest.raises(ValueError):
        bessel_j(0, -1.0)


# =============================================================================
# WHITTAKER PAIR
# =============================================================================

# ((kappa, mu, z), W, W', M, M') from mpmath at 30 digits
WHITTAKER_GOLDEN = [
    ((-1j, 0.5, -3j),
     (0.28806051737803057 + 0.1826852756414822j),
     (-0.022610251025338295 - 0.08262208582754922j),
     (0.0 - 7.884893561413473j),
     (4.093855189709071 + 0j)),
    ((-0.5j, 2.5, -8j),
     (-0.44908484942389926 - 0.32707473977895374j),
     (0.13618319536960669 + 0.1308018418593528j),
     (0.0 + 2.493932650536737j),
     (-0.3190362192336985 + 0j)),
    ((-2.0, 0.5, 2.5),
     (0.012224348806504326 + 0j),
     (-0.011748657171384265 + 0j),
     (19.63317913572286 + 0j),
     (22.032789918977873 + 0j)),
    ((-4j, 0.5, -1.2j),
     (-2.751748991928254 - 3.020323519909984j),
     (-4.708287295721024 + 4.28961549250401j),
     (0.0 - 7.286935879908615j),
     (14.783079488229005 + 0j)),
]


@pytest.mark.parametrize("case", range(len(WHITTAKER_GOLDEN)))
def test_whittaker_golden(case):
    (kappa, mu, z), w, wp, m, mp_ = WHITTAKER_GOLDEN[case]
    ev = whittaker_pair(WhittakerIndex(kappa=kappa, mu=mu), z)
    assert abs(ev.w - w) <= 5e-13 * abs(w)
    assert abs(ev.w_prime - wp) <= 5e-13 * abs(wp)
    assert abs(ev.m - m) <= 5e-13 * abs(m)
    assert abs(ev.m_prime - mp_) <= 5e-13 * abs(mp_)


def test_whittaker_free_elementary_forms():
    # kappa = 0, mu = 1/2: W = e^{-z/2}, M = 2 sinh(z/2)
    for z in (-2j, 1.7, -0.35j):
        ev = whittaker_pair(WhittakerIndex(kappa=0.0, mu=0.5), z)
        assert abs(ev.w - cmath.exp(-z / 2)) < 1e-13 * abs(cmath.exp(-z / 2))
        want_m = 2.0 * cmath.sinh(z / 2)
        assert abs(ev.m - want_m) < 1e-12 * max(abs(want_m), 1.0)


def test_wronskian_constancy_grid():
    # |W M' - M W' - 1/Gamma(1 - i nu)| stays below 1e-8 across the
    # working (k, r) range at mu = 1/2
    worst = 0.0
    n = 9
    for i in range(n):
        k = 0.1 * (10.0 / 0.1) ** (i / (n - 1))
        for j in range(n):
            r = 0.05 * (20.0 / 0.05) ** (j / (n - 1))
            ev = whittaker_pair(WhittakerIndex(kappa=-1j / k, mu=0.5),
                                -2j * k * r)
            worst = max(worst, ev.wronskian_residual)
    assert worst < 1e-8


def test_whittaker_ode_residual_by_finite_differences():
    # for mu = 1/2 the ODE is f'' = (1/4 - kappa/z) f; check both
    # solutions with central differences at sample points
    h = 1e-3
    for (kappa, z) in [(-1j, -4j), (-0.5j, -9j), (-1.5, 3.0)]:
        idx = WhittakerIndex(kappa=kappa, mu=0.5)
        step = h * abs(z)
        evs = [whittaker_pair(idx, z + dz)
               for dz in (-step, 0.0, step)]
        for attr in ("w", "m"):
            fm, f0, fp = (getattr(e, attr) for e in evs)
            second = (fp - 2.0 * f0 + fm) / step ** 2
            rhs = (0.25 - kappa / z) * f0
            scale = max(abs(second), abs(f0), 1.0)
            assert abs(second - rhs) < 5e-5 * scale


def test_whittaker_derivatives_match_finite_differences():
    # derivatives come from term-wise differentiation; finite differences
    # provide an independent consistency check
    idx = WhittakerIndex(kappa=-2j, mu=0.5)
    z = -5j
    step = 1e-5
    em = whittaker_pair(idx, z - step)
    ep = whittaker_pair(idx, z + step)
    e0 = whittaker_pair(idx, z)
    for attr, dattr in (("w", "w_prime"), ("m", "m_prime")):
        fd = (getattr(ep, attr) - getattr(em, attr)) / (2.0 * step)
        assert abs(fd - getattr(e0, dattr)) < 1e-8 * max(1.0, abs(fd))


def test_whittaker_strict_mode_raises_on_hopeless_tolerance():
    with pytest.raises(WronskianViolation):
        whittaker_pair(WhittakerIndex(kappa=-1j, mu=0.5), -3j,
                       wronskian_tol=1e-18, strict=True)


def test_whittaker_scan_mode_warns():
    with pytest.warns(UserWarning):
        whittaker_pair(WhittakerIndex(kappa=-1j, mu=0.5), -3j,
                       wronskian_tol=1e-18, strict=False)


def test_whittaker_rejects_bad_index():
    with pytest.raises(ValueError):
        WhittakerIndex(kappa=0.0, mu=0.75)
    with pytest.raises(ValueError):
        whittaker_pair(WhittakerIndex(kappa=0.0, mu=0.5), 0.0)


def test_thread_safety_of_evaluator():
    # pure and re-entrant: concurrent evaluations (including the
    # multiprecision escalation path) agree with serial ones
    from concurrent.futures import ThreadPoolExecutor

    cases = [(-1j / k, -2j * k * r)
             for k in (0.1, 0.5, 2.0) for r in (0.05, 1.0, 10.0)]

    def run(args):
        kappa, z = args
        ev = whittaker_pair(WhittakerIndex(kappa=kappa, mu=0.5), z)
        return (ev.w, ev.m)

    serial = [run(c) for c in cases]
    with ThreadPoolExecutor(max_workers=4) as pool:
        parallel = list(pool.map(run, cases * 3))
    assert parallel[:len(cases)] == serial
    assert parallel[len(cases):2 * len(cases)] == serial


def test_coulomb_normalization_product_form():
    # |Gamma(l+1+i/k)| against the closed product
    #   C_kl = 2k e^{-pi/2k} |Gamma(l+1+i/k)|
    #        = sqrt(8 pi k/(e^{2 pi/k}-1)) prod_s sqrt(s^2 + 1/k^2)
    for k in (0.5, 1.0, 2.7):
        for l in (0, 1, 3):
            lhs = 2 * k * math.exp(-math.pi / (2 * k)) * abs(
                cgamma(l + 1 + 1j / k))
            rhs = math.sqrt(8 * math.pi * k / math.expm1(2 * math.pi / k))
            for s in range(1, l + 1):
                rhs *= math.sqrt(s * s + 1.0 / (k * k))
            assert abs(lhs - rhs) <= 1e-10 * rhs
