"""Cone algebra: reduction maps, quadric residuals, Hopf quotients, Stenzel."""
from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagcones.charts import DomainError, make_spec, resolve_case
from flagcones.exact import QC
from flagcones.hvcone import (GammaGroup, algebraic_residual,
                              casimir_quadric_residual, determinant_residual,
                              eguchi_hanson_Upsilon,
                              eguchi_hanson_Upsilon_prime,
                              eguchi_hanson_potential_field,
                              gamma_canonicalize, hopf_distance,
                              kodaira_embedding, plucker_residual,
                              quadric_residual, remmert, remmert_norm_sq,
                              singular_cone_potential, stenzel_fprime,
                              stenzel_ode_residual)
from flagcones.reps import sl2_module, wedge_module


def _rand_qc(rng, n):
    return tuple(QC(Q(int(rng.integers(-5, 6)), 4), Q(int(rng.integers(-5, 6)), 3)) for _ in range(n))


# -- reduction map ---------------------------------------------------------------

def test_remmert_origin_is_highest_vector():
    spec = make_spec("gr24")
    v = remmert(spec, np.zeros(4, dtype=complex), 1.0)
    rep, _ = spec.chart.embedding_rep(spec.exponents)
    assert np.allclose(v, rep.hw_unit())


def test_remmert_linear_in_fiber():
    spec = make_spec("quadric:6")
    rng = np.random.default_rng(0)
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    v1 = remmert(spec, z, 1.0)
    v2 = remmert(spec, z, 0.3 - 0.7j)
    assert np.allclose(v2, (0.3 - 0.7j) * v1)


def test_remmert_rejects_apex():
    spec = make_spec("hopf:cp1")
    with pytest.raises(DomainError):
        remmert(spec, [0.1], 0.0)


@pytest.mark.parametrize("case,ell", [
    ("hopf:cp1", 1), ("cp:2", 1), ("gr24", 1), ("grassmann:4:2", 1),
    ("quadric:5", 1), ("quadric:6", 1), ("quadric:8", 1), ("conifold", 1), ("cp:1", 2),
])
def test_remmert_norm_matches_potential(case, ell):
    spec = make_spec(case, ell=ell)
    rng = np.random.default_rng(1)
    for _ in range(10):
        z = rng.normal(size=spec.chart.n_z) + 1j * rng.normal(size=spec.chart.n_z)
        w = complex(rng.normal(), rng.normal())
        nsq = remmert_norm_sq(spec, z, w)
        K1 = float(spec.K1(z, w))
        assert abs(nsq - K1) < 1e-12 * max(1.0, K1)


@pytest.mark.parametrize("case,ell", [("gr24", 1), ("quadric:6", 1), ("conifold", 1), ("cp:1", 2)])
def test_remmert_norm_exact(case, ell):
    spec = make_spec(case, ell=ell)
    rng = np.random.default_rng(2)
    for _ in range(5):
        z = _rand_qc(rng, spec.chart.n_z)
        w = QC(Q(3, 2), Q(-1, 5))
        assert remmert_norm_sq(spec, z, w, exact=True) == spec.K1(z, w)


# -- algebraic residuals -----------------------------------------------------------

def test_plucker_basics():
    v = [0.0] * 6
    v[0] = 1.0                      # e1 ^ e2
    assert plucker_residual(3, 2, v) == 0.0
    v2 = [0.0] * 6
    v2[0] = 1.0
    v2[5] = 1.0                     # Z12 = Z34 = 1
    assert np.isclose(plucker_residual(3, 2, v2), 1.0)


@pytest.mark.parametrize("n", [3, 4])
def test_plucker_on_reduction_images(n):
    spec = make_spec(f"grassmann:{n}:2")
    rng = np.random.default_rng(3)
    for _ in range(10):
        z = rng.normal(size=spec.chart.n_z) + 1j * rng.normal(size=spec.chart.n_z)
        v = remmert(spec, z, complex(rng.normal(), rng.normal()))
        v = v / np.linalg.norm(v)
        assert plucker_residual(n, 2, list(v)) < 1e-12


def test_plucker_exact_on_exact_images():
    spec = make_spec("gr24")
    rng = np.random.default_rng(4)
    z = _rand_qc(rng, 4)
    u, _ = remmert(spec, z, QC(2), exact=True)
    assert plucker_residual(3, 2, list(u)) == 0


def test_plucker_generic_nonmembership():
    rng = np.random.default_rng(5)
    vals = []
    for _ in range(10):
        v = rng.normal(size=6) + 1j * rng.normal(size=6)
        vals.append(plucker_residual(3, 2, list(v / np.linalg.norm(v))))
    assert min(vals) > 1e-2


def test_quadric_residual_cases():
    rep = wedge_module(4, 1)
    assert quadric_residual(5, [1, -1j, 0, 0, 0]) == 0
    assert np.isclose(quadric_residual(5, [1, 0, 0, 0, 0]), 1.0)
    spec = make_spec("quadric:8")
    rng = np.random.default_rng(6)
    for _ in range(5):
        z = rng.normal(size=6) + 1j * rng.normal(size=6)
        v = remmert(spec, z, 1.3)
        assert quadric_residual(8, v / np.linalg.norm(v)) < 1e-12
    vals = [quadric_residual(8, v / np.linalg.norm(v))
            for v in rng.normal(size=(10, 8)) + 1j * rng.normal(size=(10, 8))]
    assert min(vals) > 1e-2


def test_quadric_exact_isotropy():
    spec = make_spec("quadric:5")
    rng = np.random.default_rng(7)
    z = _rand_qc(rng, 3)
    u, _ = remmert(spec, z, QC(1), exact=True)
    assert quadric_residual(5, list(u)) == 0


def test_determinant_residual_conifold():
    spec = make_spec("conifold")
    rng = np.random.default_rng(8)
    for _ in range(5):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = remmert(spec, z, complex(rng.normal(), rng.normal()))
        assert determinant_residual(v / np.linalg.norm(v)) < 1e-13
    assert np.isclose(determinant_residual([1, 0, 0, 1]), 1.0)
    assert determinant_residual([1, 0, 0, 0]) == 0.0


def test_casimir_quadric_every_vector_of_fundamental():
    rep = sl2_module(1)
    rng = np.random.default_rng(9)
    for _ in range(5):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert casimir_quadric_residual(rep, v) < 1e-13


def test_casimir_quadric_level_two():
    spec = make_spec("cp:1", ell=2)
    rep, _ = spec.chart.embedding_rep(spec.exponents)
    rng = np.random.default_rng(10)
    for _ in range(10):
        v = remmert(spec, [complex(rng.normal(), rng.normal())], complex(rng.normal(), rng.normal()))
        assert casimir_quadric_residual(rep, v) < 1e-12
    generic = [casimir_quadric_residual(rep, rng.normal(size=3) + 1j * rng.normal(size=3))
               for _ in range(10)]
    assert min(generic) > 1e-1


def test_casimir_orbit_point_via_word():
    """An exponential orbit point of the highest vector stays on the cone."""
    from flagcones.reps import act

    rep = sl2_module(2)
    E, F, H = (np.array([[0, 2, 0], [0, 0, 1], [0, 0, 0]], dtype=complex),
               None, None)
    v = act(rep, [(rep.simple[1][1], 0.7 - 0.2j), (rep.simple[1][0], 0.3j)], rep.hw_unit())
    assert casimir_quadric_residual(rep, v) < 1e-10


# -- Hopf quotient -----------------------------------------------------------------

def test_gamma_group_validation():
    with pytest.raises(DomainError):
        GammaGroup(1.2)
    with pytest.raises(DomainError):
        GammaGroup(0.0)


def test_canonicalize_unit_norm():
    hp = gamma_canonicalize(GammaGroup(0.5), np.array([1.0 + 0j]))
    assert hp.branch == 0 and np.isclose(hp.norm, 1.0)


def test_canonicalize_annulus_arithmetic():
    hp = gamma_canonicalize(GammaGroup(0.5), np.array([5.0 + 0j]))
    assert hp.branch == 3
    assert np.isclose(hp.norm, 5.0 / 8.0)


def test_canonicalize_boundary_upward():
    hp = gamma_canonicalize(GammaGroup(0.5), np.array([0.5 + 0j]))
    assert np.isclose(hp.norm, 1.0)


def test_canonicalize_rejects_zero():
    with pytest.raises(DomainError):
        gamma_canonicalize(GammaGroup(0.5), np.zeros(3, dtype=complex))


@settings(deadline=None, derandomize=True)
@given(st.floats(min_value=-8, max_value=8), st.integers(min_value=-3, max_value=3))
def test_canonicalize_gamma_invariance(logn, k):
    gamma = GammaGroup(0.3 + 0.2j)
    v = np.exp(logn) * np.array([0.6 + 0.8j, 0.1])
    a = gamma_canonicalize(gamma, v)
    b = gamma_canonicalize(gamma, gamma.lam ** k * v)
    assert hopf_distance(a, b) < 1e-9
    assert abs(gamma.lam) - 1e-12 < a.norm <= 1.0 + 1e-12


@pytest.mark.parametrize("lam", [0.5, 0.3 + 0.2j])
def test_embedding_equivariance_and_injectivity(lam):
    spec = make_spec("hopf:cp1")
    gamma = GammaGroup(lam)
    rng = np.random.default_rng(11)
    reps = []
    for _ in range(20):
        z = [complex(rng.normal(), rng.normal())]
        w = complex(rng.normal(), rng.normal())
        if abs(w) < 1e-3:
            continue
        h1 = kodaira_embedding(spec, gamma, z, w)
        h2 = kodaira_embedding(spec, gamma, z, lam * w)
        assert hopf_distance(h1, h2) < 1e-9
        assert h2.branch == h1.branch - 1
        reps.append(h1.representative)
    dists = [np.max(np.abs(a - b)) for i, a in enumerate(reps) for b in reps[i + 1:]]
    assert min(dists) > 1e-8


def test_embedding_image_on_quadric():
    spec = make_spec("gr24")
    gamma = GammaGroup(0.5)
    rng = np.random.default_rng(12)
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    hp = kodaira_embedding(spec, gamma, z, 1.7)
    assert plucker_residual(3, 2, list(hp.representative / np.linalg.norm(hp.representative))) < 1e-12


# -- special cone potentials ----------------------------------------------------------

def test_stenzel_limit_value():
    assert np.isclose(stenzel_fprime(1.0, 0.0), 1.0)
    assert np.isclose(stenzel_fprime(2.0, 0.0), 2.0 ** (-2.0 / 3.0))
    # the series branch agrees with the closed form at the switch point
    t = 2.1e-3
    closed = (3.0 / 4.0) ** (1.0 / 3.0) * np.cbrt(np.sinh(2 * t) - 2 * t) / np.sinh(t)
    assert abs(stenzel_fprime(1.0, 1.9e-3) - (1.0 - 1.9e-3 ** 2 / 10.0)) < 1e-9
    assert abs(closed - stenzel_fprime(1.0, t)) < 1e-9


def test_stenzel_scaling():
    for t in (0.3, 1.0, 2.5):
        assert np.isclose(stenzel_fprime(2.0, t), 2.0 ** (-2.0 / 3.0) * stenzel_fprime(1.0, t))


@pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
def test_stenzel_ode_residual_grid(eps):
    for t in np.linspace(0.1, 3.0, 16):
        assert abs(stenzel_ode_residual(eps, float(t))) < 1e-8


def test_singular_cone_potential_value():
    W = np.array([[1.0, 0.0], [0.0, 0.0]])
    assert np.isclose(singular_cone_potential(W), 1.5 ** (4.0 / 3.0))


def test_upsilon_values_and_derivative():
    assert eguchi_hanson_Upsilon(0.0) == 1.0
    assert eguchi_hanson_Upsilon_prime(0.0) == 1.0
    xs = np.linspace(0.1, 10.0, 41)
    h = 1e-6
    fd = (eguchi_hanson_Upsilon(xs + h) - eguchi_hanson_Upsilon(xs - h)) / (2 * h)
    assert np.max(np.abs(fd - eguchi_hanson_Upsilon_prime(xs))) < 1e-8


def test_eguchi_hanson_ricci_flat():
    from flagcones.diffgeo import FDConfig, i_del_delbar, ricci_form

    cfg = FDConfig()
    spec = make_spec("cp:1", ell=2)
    F = eguchi_hanson_potential_field(spec)
    rng = np.random.default_rng(13)
    for _ in range(5):
        p = np.concatenate([rng.uniform(-0.9, 0.9, size=2),
                            [rng.uniform(0.6, 1.4), rng.uniform(-0.5, 0.5)]])
        rho = ricci_form(F, p, cfg)
        om = i_del_delbar(F, p, cfg)
        assert np.max(np.abs(rho)) / np.max(np.abs(om)) < 1e-4


def test_algebraic_residual_dispatch():
    for case, kind in [("gr24", "plucker"), ("quadric:6", "quadric"),
                       ("conifold", "determinant"), ("hopf:cp1", "trivial")]:
        spec = make_spec(case)
        rng = np.random.default_rng(14)
        z = rng.normal(size=spec.chart.n_z) + 1j * rng.normal(size=spec.chart.n_z)
        v = remmert(spec, z, 1.0)
        name, resid = algebraic_residual(spec, v / np.linalg.norm(v))
        assert name == kind
        assert resid < 1e-12


def test_stenzel_potential_quadrature():
    from flagcones.hvcone import stenzel_potential

    assert stenzel_potential(1.0, 0.0) == 0.0
    # d/dt K(t) = F'(t) * eps^2 sinh(t)
    eps, t, h = 0.8, 1.3, 1e-5
    fd = (stenzel_potential(eps, t + h) - stenzel_potential(eps, t - h)) / (2 * h)
    assert abs(fd - stenzel_fprime(eps, t) * eps * eps * np.sinh(t)) < 1e-8
    assert stenzel_potential(eps, 2.0) > stenzel_potential(eps, 1.0) > 0
