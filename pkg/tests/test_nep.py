import warnings

import numpy as np
import pytest
import scipy.linalg as sla

from clampedte import bie, nep, oracle
from clampedte.geometry import disk


class Poly:
    """Small explicit holomorphic family for solver checks."""

    def __init__(self, fn, size):
        self.fn, self.size = fn, size

    def __call__(self, z):
        return np.asarray(self.fn(z), dtype=complex)


def test_linear_diagonal_family():
    fam = Poly(lambda z: np.diag([z - 2, z - 5]), 2)
    res = nep.beyn_solve(fam, nep.ContourSpec(2.0, 1.0, 1.0, subspace_dim=2))
    assert len(res) == 1
    assert abs(res[0].eigenvalue - 2) <= 1e-12
    assert res[0].multiplicity == 1
    assert res[0].residual <= 1e-12


def test_quadratic_block_family_against_companion_roots():
    fam = Poly(lambda z: np.array([[z * z - 1, 0], [0, z - 10]]), 2)
    # oracle: roots of each scalar factor from its companion matrix
    roots = np.concatenate([np.roots([1, 0, -1]), np.roots([1, -10])])
    spec = nep.ContourSpec(0.9, 0.5, 0.5, subspace_dim=2)
    inside = sorted(r for r in roots if spec.contains(r))
    res = nep.beyn_solve(fam, spec)
    assert [round(r.eigenvalue.real, 10) for r in res] == [round(r.real, 10) for r in inside]


@pytest.fixture(scope="module")
def disk_de_family():
    return bie.dirichlet_family(disk().discretize(128))


@pytest.fixture(scope="module")
def disk_de_2_4(disk_de_family):
    spec = nep.ContourSpec(3.0, 1.0, 0.2)
    return nep.beyn_solve(disk_de_family, spec, diagnostics=True)


def test_disk_dirichlet_in_two_to_four(disk_de_2_4):
    res, _ = disk_de_2_4
    ref = oracle.disk_dirichlet(3)
    got = [(r.eigenvalue.real, r.multiplicity) for r in res]
    assert len(got) == 2
    assert abs(got[0][0] - 2.40483) <= 1e-4 and got[0][1] == 1
    assert abs(got[1][0] - 3.83171) <= 1e-4 and got[1][1] == 2
    assert abs(got[0][0] - ref.values[0]) <= 1e-8
    assert abs(got[1][0] - ref.values[1]) <= 1e-8


def test_disk_dirichlet_realness_and_residual(disk_de_2_4):
    res, _ = disk_de_2_4
    for r in res:
        assert r.eigenvalue.imag == 0.0
        assert abs(r.raw.imag) <= nep.REAL_TOL * (1 + abs(r.raw.real))
        assert r.residual <= 1e-6
        assert r.vectors.shape[1] == r.multiplicity


def test_quadrature_refinement_16_to_32(disk_de_family, disk_de_2_4):
    res32, _ = disk_de_2_4
    res16 = nep.beyn_solve(disk_de_family, nep.ContourSpec(3.0, 1.0, 0.2, quadrature_points=16))
    assert len(res16) == len(res32)
    for a, b in zip(res16, res32):
        assert abs(a.eigenvalue - b.eigenvalue) <= 1e-8


def test_empty_contour(disk_de_family):
    # no Bessel zero in [0.6, 1.4]
    res, diag = nep.beyn_solve(disk_de_family, nep.ContourSpec(1.0, 0.4, 0.2), diagnostics=True)
    assert res == []
    assert diag.empty
    assert diag.singular_values[0] <= 1e-8 * diag.scale


def test_reproducible_with_seed(disk_de_family):
    spec = nep.ContourSpec(5.0, 0.5, 0.2)
    a = nep.beyn_solve(disk_de_family, spec, seed=3)
    b = nep.beyn_solve(disk_de_family, spec, seed=3)
    assert [r.eigenvalue for r in a] == [r.eigenvalue for r in b]


def test_rank_overflow_doubles_subspace():
    # 12 distinct eigenvalues inside with l = 1 start: needs doublings 1 -> 16
    vals = np.linspace(1.5, 2.5, 12)
    fam = Poly(lambda z: np.diag(z - vals), 12)
    res = nep.beyn_solve(fam, nep.ContourSpec(2.0, 1.0, 0.5, subspace_dim=2))
    assert np.allclose(sorted(r.eigenvalue.real for r in res), vals, atol=1e-10)


def test_rank_overflow_raises_when_saturated():
    vals = np.linspace(1.5, 2.5, 40)
    fam = Poly(lambda z: np.diag(z - vals), 40)
    with pytest.raises(nep.RankOverflowError):
        nep.beyn_solve(fam, nep.ContourSpec(2.0, 1.0, 0.5, subspace_dim=1))


def test_node_on_eigenvalue_is_rotated():
    # the contour node at theta = 0 hits z = 3 exactly
    fam = Poly(lambda z: np.diag([z - 3, z - 2.2]), 2)
    res, diag = nep.beyn_solve(fam, nep.ContourSpec(2.0, 1.0, 1.0, subspace_dim=2),
                               diagnostics=True)
    assert diag.node_shift != 0.0
    # z = 3 lies on the contour itself, so only the interior value is meaningful
    assert 2.2 in [round(r.eigenvalue.real, 10) for r in res]


def test_accept_hook_vetoes():
    fam = Poly(lambda z: np.diag([z - 1.8, z - 2.2]), 2)

    class Verdict:
        def __init__(self, ok):
            self.passed = ok

    res, diag = nep.beyn_solve(fam, nep.ContourSpec(2.0, 1.0, 1.0, subspace_dim=2),
                               accept=lambda z, q: Verdict(z.real > 2), diagnostics=True)
    assert [round(r.eigenvalue.real, 10) for r in res] == [2.2]
    assert [round(r.eigenvalue.real, 10) for r in diag.rejected] == [1.8]


def test_sweep_ownership_counts_multiplicity(disk_de_family):
    sw = nep.sweep_real_axis(disk_de_family, 5)
    vals = [r.eigenvalue.real for r in sw.eigenvalues for _ in range(r.multiplicity)]
    assert sw.complete
    assert np.allclose(vals[:5], oracle.disk_dirichlet(5).values, atol=1e-8)
    assert vals == sorted(vals)


def test_sweep_reports_incomplete_below_ceiling(disk_de_family):
    sw = nep.sweep_real_axis(disk_de_family, 5, z_max=3.0)
    assert not sw.complete


@pytest.mark.parametrize("kwargs", [
    dict(center=0.5, radius_real=1.0, radius_imag=0.2),
    dict(center=2.0, radius_real=-1.0, radius_imag=0.2),
    dict(center=2.0, radius_real=1.0, radius_imag=0.2, quadrature_points=15),
    dict(center=2.0, radius_real=1.0, radius_imag=0.2, subspace_dim=0),
])
def test_contour_validation(kwargs):
    with pytest.raises(ValueError):
        nep.ContourSpec(**kwargs)


def test_cluster_and_snap():
    groups = nep.cluster([2.0 + 1e-9j, 2.0 + 2e-8, 3.0])
    assert [len(g) for g in groups] == [2, 1]
    assert nep.snap_real(2.0 + 1e-7j) == 2.0
    assert nep.snap_real(2.0 + 1e-3j).imag == 1e-3


def test_lu_identity():
    b = np.arange(12.0).reshape(4, 3) + 1j
    assert np.array_equal(nep.dense_lu_solve(np.eye(4), b), b)


def test_lu_recovers_known_solution():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((50, 50)) + 1j * rng.standard_normal((50, 50))
    x = rng.standard_normal((50, 3)) + 1j * rng.standard_normal((50, 3))
    assert np.max(np.abs(nep.dense_lu_solve(a, a @ x) - x)) <= 1e-9


def test_lu_warns_on_hilbert():
    h = sla.hilbert(12)
    cond = np.linalg.svd(h, compute_uv=False)
    assert cond[0] / cond[-1] > 1e12          # oracle: SVD condition number
    with pytest.warns(nep.IllConditionedWarning):
        nep.dense_lu_solve(h, np.ones(12))


def test_lu_quiet_when_well_conditioned():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        nep.dense_lu_solve(np.diag([1.0, 2.0, 3.0]), np.ones(3))


def test_lu_singular_reports_pivot():
    a = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(nep.SingularMatrixError) as info:
        nep.dense_lu_solve(a, np.ones(2))
    assert info.value.pivot == 1


def test_lu_rejects_nonsquare():
    with pytest.raises(ValueError):
        nep.dense_lu_solve(np.ones((2, 3)), np.ones(2))


def test_svd_of_diagonal():
    _, s, _ = nep.dense_svd(np.diag([3.0, 1.0, 7.0]))
    assert np.array_equal(s, [7.0, 3.0, 1.0])


def test_svd_rank_one():
    rng = np.random.default_rng(1)
    u = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    s = nep.dense_svd(np.outer(u, v))[1]
    assert s[1] / s[0] <= 1e-12


def test_svd_reconstruction():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((30, 8)) + 1j * rng.standard_normal((30, 8))
    u, s, v = nep.dense_svd(a)
    assert np.max(np.abs(u @ np.diag(s) @ v.conj().T - a)) <= 1e-10
