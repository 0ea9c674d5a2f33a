import math

import numpy as np
import pytest

from clampedte import dtn, specfun


def test_gamma0_modulus_small_k():
    k = 1e-4
    ref = 1 / abs(math.log(k))
    assert abs(abs(dtn.gamma_n(0, k)) - ref) <= 0.15 * ref


def test_gamma_n2_k1_is_bessel_ratio():
    direct = -(specfun.bessel_k(1, 1.0) / specfun.bessel_k(2, 1.0)).real
    assert abs(dtn.gamma_n(2, 1.0) - direct) <= 1e-10


@pytest.mark.parametrize("n", [0, 1, 2, 5, 17, 40])
@pytest.mark.parametrize("k,R", [(1e-3, 1.0), (0.5, 2.0), (1.0, 1.0), (7.0, 1.0)])
def test_ratio_form_matches_hankel_form(n, k, R):
    a = dtn.gamma_n(n, k, R)
    b = dtn.gamma_hankel(n, k, R)
    assert abs(b.imag) <= 1e-10 * abs(a)
    assert abs(a - b.real) <= 1e-10 * abs(a)


def test_n5_small_k_against_printed_leading_form():
    # the -k^2 R/(2n) form misses the true leading constant: measured gap is 25%
    k = 1e-3
    g = dtn.gamma_n(5, k)
    printed = -k * k / 10
    assert abs(g / printed - 1.25) <= 1e-3


@pytest.mark.parametrize("R", [1.0, 2.0])
@pytest.mark.parametrize("k", [1e-3, 1e-4])
def test_small_k_asymptotics_corrected(k, R):
    for n in range(2, 41):
        g = dtn.gamma_n(n, k, R)
        lead = dtn.gamma_small_k(n, k, R)
        assert abs(g - lead) <= 0.1 * abs(lead)


def test_small_k_n1_log_form():
    k = 1e-3
    lead = dtn.gamma_small_k(1, k)
    assert abs(dtn.gamma_n(1, k) - lead) <= 0.05 * abs(lead)


def test_laplace_map_example():
    m = dtn.dtn_matrix(0.0, R=2.0, nf=3)
    assert np.array_equal(m.diag, [-1.5, -1.0, -0.5, 0.0, -0.5, -1.0, -1.5])


@pytest.mark.parametrize("k", [0.0, 1e-4, 1e-2, 1.0, 10.0])
@pytest.mark.parametrize("R", [1.0, 2.0])
def test_entries_real_nonpositive(k, R):
    d = dtn.dtn_matrix(k, R, nf=40).diag
    assert d.dtype == float
    assert np.all(d <= 0)


def test_truncation_stability():
    a = dtn.dtn_matrix(0.8, 1.0, nf=10)
    b = dtn.dtn_matrix(0.8, 1.0, nf=40)
    for n in range(-10, 11):
        assert a.entry(n) == b.entry(n)


def test_apply_and_dense_agree():
    m = dtn.dtn_matrix(1.3, 1.0, nf=5)
    c = np.arange(11.0)
    assert np.allclose(m.dense() @ c, m.apply(c))


def test_norm_vanishes_monotonically():
    t0 = dtn.dtn_matrix(0.0)
    ks = [1.0, 0.3, 0.1, 3e-2, 1e-2, 3e-3, 1e-3, 1e-4, 1e-6, 1e-9]
    norms = [dtn.dtn_norm(dtn.dtn_matrix(k), t0) for k in ks]
    assert all(b < a for a, b in zip(norms, norms[1:]))
    assert norms[-1] < 0.05


def test_norm_at_small_k_dominated_by_zero_mode():
    k = 1e-3
    nrm = dtn.dtn_norm(dtn.dtn_matrix(k), dtn.dtn_matrix(0.0))
    assert nrm == pytest.approx(abs(dtn.gamma_n(0, k)), rel=1e-12)


def test_norm_zero_at_identical_operators():
    assert dtn.dtn_norm(dtn.dtn_matrix(0.0), dtn.dtn_matrix(0.0)) == 0.0
    assert dtn.dtn_continuity_modulus(1.5, 1.5) == 0.0


def test_continuity_ratio_variation_near_one():
    taus = [t for t in np.linspace(0.9, 1.1, 21) if abs(t - 1.0) > 1e-12]
    ratios = [dtn.dtn_continuity_modulus(1.0, t) / abs(1.0 - t * t) for t in taus]
    assert (max(ratios) - min(ratios)) / min(ratios) < 0.25
    assert dtn.dtn_continuity_modulus(1.0, 1.1) <= max(ratios) * abs(1 - 1.21) + 1e-15


def test_continuity_first_order_small():
    assert dtn.dtn_continuity_modulus(2.0, 2.0 + 1e-8) <= 1e-7


def test_validation():
    with pytest.raises(ValueError):
        dtn.gamma_n(-1, 1.0)
    with pytest.raises(ValueError):
        dtn.gamma_n(1, 0.0)
    with pytest.raises(ValueError):
        dtn.dtn_matrix(1.0, R=0.0)
    with pytest.raises(ValueError):
        dtn.dtn_matrix(1.0, nf=0)
    with pytest.raises(ValueError):
        dtn.dtn_norm(dtn.dtn_matrix(1.0, nf=3), dtn.dtn_matrix(1.0, nf=4))
