import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clampedte import specfun as sf
from clampedte.specfun import SpecialFunctionDomainError

mpmath.mp.dps = 30


def _ref(fn, n, z):
    return complex(fn(n, mpmath.mpc(z.real, z.imag)))


REFS = {
    "j": (sf.bessel_j, mpmath.besselj),
    "y": (sf.bessel_y, mpmath.bessely),
    "i": (sf.bessel_i, mpmath.besseli),
    "k": (sf.bessel_k, mpmath.besselk),
}


@pytest.mark.parametrize("name", sorted(REFS))
@pytest.mark.parametrize("n", [0, 1, 2, 7, 20, 40])
@pytest.mark.parametrize("x", [1e-8, 1e-3, 0.5, 1.999, 2.0, 7.3, 12.0, 24.9, 25.1, 37.0, 50.0])
def test_real_axis_matches_mpmath(name, n, x):
    ours, ref = REFS[name]
    got = complex(ours(n, x))
    want = _ref(ref, n, complex(x))
    if want == 0 or not math.isfinite(abs(want)) or abs(want) > 1e300 or abs(want) < 1e-300:
        pytest.skip("reference outside double range")
    assert abs(got - want) <= 1e-10 * abs(want)


@pytest.mark.parametrize("name", ["j", "y"])
@pytest.mark.parametrize("n", [0, 1, 3, 10])
def test_complex_strip_matches_mpmath(name, n):
    ours, ref = REFS[name]
    rng = np.random.default_rng(11)
    zs = rng.uniform(0.05, 45.0, 40) + 1j * rng.uniform(-2.0, 2.0, 40)
    for z in zs:
        want = _ref(ref, n, z)
        assert abs(complex(ours(n, z)) - want) <= 1e-8 * abs(want)


@pytest.mark.parametrize("name", ["i", "k"])
@pytest.mark.parametrize("n", [0, 1, 4])
def test_complex_right_half_plane_matches_mpmath(name, n):
    ours, ref = REFS[name]
    rng = np.random.default_rng(12)
    zs = rng.uniform(0.05, 45.0, 40) + 1j * rng.uniform(-2.0, 2.0, 40)
    for z in zs:
        want = _ref(ref, n, z)
        assert abs(complex(ours(n, z)) - want) <= 1e-8 * abs(want)


def _wide_k_arguments(seed):
    # 2 <= |z| <= 1e4 with |arg z| up to 1.35, the range served by the integral rule
    rng = np.random.default_rng(seed)
    mod = np.exp(rng.uniform(np.log(2.0), np.log(1e4), 120))
    return mod * np.exp(1j * rng.uniform(-1.35, 1.35, 120))


def _scaled_k_refs(zs):
    return np.array([[complex(mpmath.besselk(n, z) * mpmath.exp(z)) for n in (0, 1)]
                     for z in zs])


def test_scaled_k_wide_sector_matches_mpmath():
    zs = _wide_k_arguments(21)
    want = _scaled_k_refs(zs)
    got = np.array(sf._k01_integral_scaled(zs)).T
    assert np.max(np.abs(got - want) / np.abs(want)) <= 1e-14


def test_wronskian_example_n3_x7():
    j3, j4 = sf.bessel_j(3, 7.0), sf.bessel_j(4, 7.0)
    y3, y4 = sf.bessel_y(3, 7.0), sf.bessel_y(4, 7.0)
    assert abs(j4 * y3 - j3 * y4 - 2 / (math.pi * 7)) <= 1e-10


def test_wronskian_example_y1_at_one():
    val = sf.bessel_j(2, 1.0) * sf.bessel_y(1, 1.0) - sf.bessel_j(1, 1.0) * sf.bessel_y(2, 1.0)
    assert abs(val - 2 / math.pi) <= 1e-10


def test_y2_upward_recurrence_at_five():
    y0, y1, y2 = (sf.bessel_y(n, 5.0) for n in range(3))
    assert abs(y2 - ((2 / 5) * y1 - y0)) <= 1e-10


def test_y0_log_singularity_is_bounded_remainder():
    xs = np.array([1e-2, 1e-4, 1e-6, 1e-8])
    rem = sf.bessel_y(0, xs).real - (2 / math.pi) * np.log(xs / 2)
    # the remainder tends to 2 gamma / pi
    assert np.all(np.abs(rem - 2 * sf.EULER_GAMMA / math.pi) < 1e-3)


def test_modified_wronskian_example():
    z = 2.0
    val = sf.bessel_i(0, z) * sf.bessel_k(1, z) + sf.bessel_i(1, z) * sf.bessel_k(0, z)
    assert abs(val - 1 / z) <= 1e-10


@pytest.mark.parametrize("nu", [0, 1])
def test_connection_formula_k_from_hankel(nu):
    x = 1.5
    rhs = (math.pi / 2) * (1j ** (nu + 1)) * sf.hankel1(nu, 1j * x)
    assert abs(sf.bessel_k(nu, x) - rhs) <= 1e-9


def test_k_at_three_four_digits():
    # independent high-precision evaluation
    assert abs(sf.bessel_k(0, 3.0).real - 0.03474) < 5e-6
    assert abs(sf.bessel_k(1, 3.0).real - 0.04016) < 5e-6


def test_wronskian_sweep_500():
    rng = np.random.default_rng(5)
    ns = rng.integers(0, 21, 500)
    zs = rng.uniform(0.1, 30.0, 500)
    worst = 0.0
    for n, z in zip(ns, zs):
        lhs = (sf.bessel_j(n + 1, z) * sf.bessel_y(n, z)
               - sf.bessel_j(n, z) * sf.bessel_y(n + 1, z))
        ref = 2 / (math.pi * z)
        worst = max(worst, abs(lhs - ref) / (1 + abs(ref)))
    assert worst <= 1e-10


def test_modified_wronskian_sweep_500():
    rng = np.random.default_rng(6)
    ns = rng.integers(0, 21, 500)
    zs = rng.uniform(0.1, 30.0, 500)
    worst = 0.0
    for n, z in zip(ns, zs):
        lhs = sf.bessel_i(n, z) * sf.bessel_k(n + 1, z) + sf.bessel_i(n + 1, z) * sf.bessel_k(n, z)
        worst = max(worst, abs(lhs - 1 / z) / (1 + 1 / z))
    assert worst <= 1e-10


@pytest.mark.parametrize("n", [2, 5, 17, 40])
def test_recurrence_consistency(n):
    for z in np.linspace(n / 2, n / 2 + 30, 13):
        for f, sign in ((sf.bessel_j, -1), (sf.bessel_y, -1)):
            direct = f(n, z)
            rec = (2 * (n - 1) / z) * f(n - 1, z) + sign * f(n - 2, z)
            assert abs(direct - rec) <= 1e-9 * max(abs(direct), 1e-300) + 1e-15


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 40.0), st.floats(-2.0, 2.0), st.integers(0, 12))
def test_conjugate_symmetry_j_and_i(re, im, n):
    z = complex(re, im)
    for f in (sf.bessel_j, sf.bessel_i):
        assert abs(f(n, z.conjugate()) - np.conj(f(n, z))) <= 1e-12 * (1 + abs(f(n, z)))


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-6, 50.0), st.integers(0, 40))
def test_real_arguments_give_real_values(x, n):
    for f in (sf.bessel_j, sf.bessel_y, sf.bessel_i, sf.bessel_k):
        assert f(n, x).imag == 0.0


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-4, 50.0))
def test_k_and_i_positive_on_positive_axis(x):
    for n in (0, 1, 5):
        assert sf.bessel_k(n, x).real > 0
        assert sf.bessel_i(n, x).real > 0


def test_hankel_outgoing_phase():
    z = 400.0
    h = sf.hankel1(0, z)
    lead = math.sqrt(2 / (math.pi * z)) * np.exp(1j * (z - math.pi / 4))
    assert abs(h - lead) <= 1e-3 * abs(lead)


def test_vectorised_matches_scalar():
    xs = np.array([0.3, 3.3, 30.3])
    vec = sf.bessel_j(3, xs)
    assert vec.shape == (3,)
    for x, v in zip(xs, vec):
        # the Miller start index depends on the largest argument in the batch
        assert abs(v - sf.bessel_j(3, x)) <= 1e-14 * abs(v)


def test_k_ratio_matches_direct_ratio():
    for n in (0, 1, 2, 9):
        for x in (0.01, 1.0, 7.5):
            direct = sf.bessel_k(abs(n - 1) if n else 1, x) / sf.bessel_k(n, x)
            assert abs(sf.bessel_k_ratio(n, x) - direct.real) <= 1e-12 * abs(direct)


def test_k_ratio_large_argument_no_underflow():
    # K_n(x) underflows beyond x ~ 700 but the ratio tends to 1
    assert abs(sf.bessel_k_ratio(3, 900.0) - 1.0) < 5e-3


@pytest.mark.parametrize("call", [
    lambda: sf.bessel_j(129, 1.0),
    lambda: sf.bessel_j(-1, 1.0),
    lambda: sf.bessel_j(1.5, 1.0),
    lambda: sf.bessel_j(0, 2e4),
    lambda: sf.bessel_y(0, -1.0),
    lambda: sf.bessel_y(0, 0.0),
    lambda: sf.hankel1(1, -3.0),
    lambda: sf.bessel_k(0, -1.0),
    lambda: sf.bessel_i(0, 0.0),
    lambda: sf.bessel_j(0, float("nan")),
])
def test_domain_errors(call):
    with pytest.raises(SpecialFunctionDomainError):
        call()


def test_domain_error_is_value_error():
    assert issubclass(SpecialFunctionDomainError, ValueError)


def test_j_at_zero():
    assert sf.bessel_j(0, 0.0) == 1.0
    assert sf.bessel_j(3, 0.0) == 0.0


def test_overflow_reports_signed_infinity():
    assert sf.bessel_y(40, 1e-8) == -np.inf
    assert sf.bessel_k(40, 1e-8) == np.inf


def test_hankel_is_j_plus_i_y():
    z = 1 + 0.3j
    assert abs(sf.hankel1(0, z) - (sf.bessel_j(0, z) + 1j * sf.bessel_y(0, z))) <= 1e-10


def test_hankel0_log_behaviour_near_zero():
    xs = np.array([1e-3, 1e-5, 1e-7])
    rem = sf.hankel1(0, xs) - (2j / math.pi) * np.log(xs)
    assert np.ptp(np.abs(rem)) < 1e-3


def test_j0_vanishes_at_first_disk_dirichlet_value():
    assert abs(sf.bessel_j(0, 2.40483)) < 5e-6


def test_hankel_negative_order_rejected():
    with pytest.raises(SpecialFunctionDomainError):
        sf.hankel1(-2, 1.0)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 20])
@pytest.mark.parametrize("z", [3j, 7j, 20j, 5 + 5j, -4 + 3j, 30 + 40j, -30 + 2.5j])
def test_hankel_upper_half_plane_decay(n, z):
    with mpmath.workdps(50):
        want = complex(mpmath.hankel1(n, z))
    assert abs(sf.hankel1(n, z) - want) <= 1e-12 * abs(want)
