"""Highest-weight cones: reduction maps, algebraic residuals, Hopf quotients.

The reduction map sends a chart point ``(z, w)`` of the punctured bundle to
``w . n(z) . v+`` in the module attached to the bundle.  Its image lies on
the affine cone cut out by quadrics (Pluecker relations, the isotropic
quadric, the rank-one determinant, or the Casimir condition on V (x) V),
and its squared norm reproduces the Kahler potential exactly.

The cyclic group generated by ``lambda . Id`` (0 < |lambda| < 1) acts by
scaling; ``gamma_canonicalize`` picks the representative whose norm lies
in the half-open annulus (|lambda|, 1], recording the integer branch.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, log
from typing import Optional, Sequence, Tuple

import numpy as np

from .charts import DomainError, PotentialSpec
from .exact import QC
from .reps import RepSpace, act, casimir_tensor_matrix
from .roots import Weight, casimir_eigenvalue


@dataclass(frozen=True)
class GammaGroup:
    """Cyclic scaling group generated by lambda, with 0 < |lambda| < 1."""

    lam: complex

    def __post_init__(self):
        if not 0 < abs(self.lam) < 1:
            raise DomainError("the generator must satisfy 0 < |lambda| < 1")


@dataclass
class HopfPoint:
    """Canonical representative in the annulus (|lambda|, 1], plus its branch."""

    representative: np.ndarray
    branch: int
    norm: float


# ---------------------------------------------------------------------------
# reduction map
# ---------------------------------------------------------------------------

def remmert(spec: PotentialSpec, z, w, exact: bool = False):
    """w . n(z) . v+ in the module of the bundle.

    Float mode returns the complex coordinate vector with the unit-norm
    highest weight vector.  Exact mode returns ``(u, s2)`` where the
    physical vector is ``sqrt(s2) . u`` with ``u`` Gaussian rational and
    ``s2`` rational, so every quadratic quantity of the image is exact.
    """
    rep, word = spec.chart.embedding_rep(spec.exponents)
    if exact:
        if not isinstance(w, QC):
            raise DomainError("exact mode needs Gaussian rational inputs")
        if w.is_zero():
            raise DomainError("the fiber coordinate must be nonzero")
        u = act(rep, word(z, exact=True), rep.hw_raw, exact=True)
        u = tuple(w * x for x in u)
        return u, Fraction(1) / rep.hw_norm_sq
    wv = complex(w)
    if wv == 0:
        raise DomainError("the fiber coordinate must be nonzero")
    v = act(rep, word(np.asarray(z, dtype=complex)), rep.hw_unit(), exact=False)
    return wv * v


def remmert_norm_sq(spec: PotentialSpec, z, w, exact: bool = False):
    rep, _ = spec.chart.embedding_rep(spec.exponents)
    if exact:
        u, s2 = remmert(spec, z, w, exact=True)
        return rep.norm_sq(u) * s2
    v = remmert(spec, z, w)
    return rep.norm_sq(v)


# ---------------------------------------------------------------------------
# algebraic residuals
# ---------------------------------------------------------------------------

class _PlueckerCoord:
    """Antisymmetric access to wedge coordinates indexed by sorted tuples."""

    def __init__(self, n: int, k: int, v):
        self.index = {b: i for i, b in enumerate(combinations(range(1, n + 2), k))}
        if len(v) != comb(n + 1, k):
            raise DomainError("coordinate vector has the wrong dimension")
        self.v = v
        self.exact = _all_qc(v)

    def __call__(self, idx: Sequence[int]):
        idx = list(idx)
        if len(set(idx)) != len(idx):
            return QC(0) if self.exact else 0j
        arranged = tuple(sorted(idx))
        inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        val = self.v[self.index[arranged]]
        return -val if inversions % 2 else val


def _all_qc(v) -> bool:
    return isinstance(v, (tuple, list)) and all(isinstance(x, QC) for x in v)


def plucker_residual(n: int, k: int, v):
    """Largest violation of the Grassmannian quadric relations.

    The relations run over (k-1)-tuples a and (k+1)-tuples b:
    ``sum_l (-1)^l Z[a, b_l] Z[b \\ b_l] = 0``.  Exact for QC input.
    """
    Z = _PlueckerCoord(n, k, v)
    exact = Z.exact
    worst = Fraction(0) if exact else 0.0
    for a in combinations(range(1, n + 2), k - 1):
        for b in combinations(range(1, n + 2), k + 1):
            total = QC(0) if exact else 0j
            for l, bl in enumerate(b):
                rest = b[:l] + b[l + 1:]
                term = Z(a + (bl,)) * Z(rest)
                total = total - term if l % 2 == 0 else total + term
            mag = total.abs2() if exact else abs(total) ** 2
            if mag > worst:
                worst = mag
    import math

    return worst if exact else math.sqrt(worst)


def quadric_residual(N: int, v):
    """|q(v, v)| with q the symmetric form cutting out the quadric cone.

    For N >= 5 this is ``|sum v_k^2|`` in the standard coordinates; N = 3
    goes through the degree-2 polynomial dictionary where the cone is the
    discriminant locus ``c_1^2/4 - c_0 c_2 = 0``.
    """
    if N == 3:
        if _all_qc(v):
            c0, c1, c2 = v
            q = c1 * c1 * QC(Fraction(1, 4)) - c0 * c2
            return q.abs2()
        c0, c1, c2 = (complex(x) for x in v)
        return abs(c1 * c1 / 4 - c0 * c2)
    if _all_qc(v):
        q = QC(0)
        for x in v:
            q = q + x * x
        return q.abs2()
    v = np.asarray(v, dtype=complex)
    return abs(np.sum(v * v))


def determinant_residual(v):
    """|det W| for a vector in the 2x2 Segre product (conifold ambient)."""
    if _all_qc(v):
        return (v[0] * v[3] - v[1] * v[2]).abs2()
    v = np.asarray(v, dtype=complex)
    return abs(v[0] * v[3] - v[1] * v[2])


def casimir_quadric_residual(rep: RepSpace, v, mu: Optional[Weight] = None,
                             constant: Optional[Fraction] = None) -> float:
    """|(Delta(C) - c(2 mu) Id)(v (x) v)| for the unit-normalised v.

    ``c(2 mu)`` comes from the weight formula; for modules over product
    algebras pass the constant directly.
    """
    if constant is None:
        if mu is None:
            mu = rep.highest_weight
        if mu is None:
            raise DomainError("need a highest weight or an explicit Casimir constant")
        constant = casimir_eigenvalue(2 * mu)
    key = "casimir_tensor"
    if key not in rep._np_cache:
        rep._np_cache[key] = casimir_tensor_matrix(rep)
    D = rep._np_cache[key]
    v = np.asarray([x.to_complex() if isinstance(x, QC) else complex(x) for x in v])
    gs = np.sqrt(rep.gram_np())
    nv = v / np.sqrt(rep.norm_sq(v))
    vv = np.kron(nv, nv)
    resid = (D - float(constant) * np.eye(D.shape[0])) @ vv
    # measure in the invariant norm of V (x) V
    gg = np.kron(rep.gram_np(), rep.gram_np())
    return float(np.sqrt(np.sum(gg * np.abs(resid) ** 2)))


def algebraic_residual(spec: PotentialSpec, v) -> Tuple[str, float]:
    """The case-appropriate cone membership residual for an ambient vector."""
    chart = spec.chart
    if chart.kind == "product":
        return "determinant", float(determinant_residual(v))
    if chart.kind == "quadric":
        return "quadric", float(quadric_residual(chart.params["N"], v))
    n = chart.params["n"]
    if chart.params.get("full"):
        raise DomainError("full flag cones need the Casimir residual; no single quadric family applies")
    k = chart.params["k"]
    if k == 1 and all(e == 1 for e in spec.exponents):
        return "trivial", 0.0
    if n == 1:
        rep, _ = chart.embedding_rep(spec.exponents)
        return "casimir", casimir_quadric_residual(rep, v)
    return "plucker", float(plucker_residual(n, k, v))


# ---------------------------------------------------------------------------
# Hopf quotient
# ---------------------------------------------------------------------------

def gamma_canonicalize(gamma: GammaGroup, v: np.ndarray, norm: Optional[float] = None) -> HopfPoint:
    """Scale by a power of lambda into the norm annulus (|lambda|, 1].

    A representative landing exactly on the inner boundary is pushed once
    more so the annulus is genuinely half open; ties resolve upward.
    """
    v = np.asarray(v, dtype=complex)
    nv = float(norm) if norm is not None else float(np.linalg.norm(v))
    if nv == 0:
        raise DomainError("cannot canonicalise the apex")
    L = -log(abs(gamma.lam))
    n = ceil(log(nv) / L - 1e-12)
    rep = gamma.lam ** n * v
    return HopfPoint(representative=rep, branch=n, norm=nv * abs(gamma.lam) ** n)


def kodaira_embedding(spec: PotentialSpec, gamma: GammaGroup, z, w) -> HopfPoint:
    """Canonical Hopf-manifold representative of the reduction image.

    Equivariance: the input ``(z, lambda w)`` yields the same HopfPoint
    with the branch shifted by one.
    """
    rep, _ = spec.chart.embedding_rep(spec.exponents)
    v = remmert(spec, z, w)
    return gamma_canonicalize(gamma, v, norm=float(np.sqrt(rep.norm_sq(v))))


def hopf_distance(a: HopfPoint, b: HopfPoint) -> float:
    return float(np.max(np.abs(a.representative - b.representative)))


# ---------------------------------------------------------------------------
# special cone potentials
# ---------------------------------------------------------------------------

def stenzel_fprime(eps: float, t: float) -> float:
    """Radial derivative of the smoothed cone potential on the deformation.

    Closed form ``(3/(4 eps^2))^(1/3) (sinh 2t - 2t)^(1/3) / sinh t`` with
    the limit ``eps^(-2/3)`` at t = 0.
    """
    if eps <= 0:
        raise DomainError("deformation parameter must be positive")
    if t < 0:
        raise DomainError("the radial parameter is nonnegative")
    if t < 2e-3:
        # sinh(2t) - 2t cancels catastrophically here; use its series instead
        return eps ** (-2.0 / 3.0) * (1.0 - t * t / 10.0 + 13.0 * t ** 4 / 2100.0)
    val = (3.0 / (4.0 * eps * eps)) ** (1.0 / 3.0)
    return val * np.cbrt(np.sinh(2.0 * t) - 2.0 * t) / np.sinh(t)


def stenzel_ode_residual(eps: float, t: float, fd_step: float = 1e-4) -> float:
    """Residual of eps^2 cosh(t) (F')^3 + (eps^2 sinh(t)/3) d/dt (F')^3 = 1."""
    if t <= 4 * fd_step:
        raise DomainError("residual grid must stay away from t = 0")

    def cube(s: float) -> float:
        return stenzel_fprime(eps, s) ** 3

    d1 = (cube(t + fd_step) - cube(t - fd_step)) / (2 * fd_step)
    d2 = (cube(t + fd_step / 2) - cube(t - fd_step / 2)) / fd_step
    dG = (4 * d2 - d1) / 3
    return eps * eps * np.cosh(t) * cube(t) + eps * eps * np.sinh(t) / 3.0 * dG - 1.0


def stenzel_potential(eps: float, t: float) -> float:
    """Smoothed cone potential as a function of the radial parameter.

    Adaptive quadrature of ``F'(s) d(r^2)/ds`` with ``r^2 = eps^2 cosh s``,
    normalised to vanish at the apex.  Only residual-level claims about
    the solution are certified; this is a convenience evaluator.
    """
    if t < 0:
        raise DomainError("the radial parameter is nonnegative")
    if t == 0:
        return 0.0
    from scipy.integrate import quad

    val, _ = quad(lambda s: stenzel_fprime(eps, s) * eps * eps * np.sinh(s), 0.0, t, limit=200)
    return float(val)


def singular_cone_potential(W) -> float:
    """(3/2)^(4/3) (Tr(W W+)^2)^(1/3) for a 2x2 matrix on the rank-one cone."""
    W = np.asarray(W, dtype=complex)
    r2 = float(np.sum(np.abs(W) ** 2))
    return (1.5) ** (4.0 / 3.0) * np.cbrt(r2 * r2)


def eguchi_hanson_Upsilon(x):
    """Upsilon(x) = sqrt(1 + 4x) - log((1 + sqrt(1 + 4x)) / 2); Upsilon(0) = 1."""
    x = np.asarray(x, dtype=float)
    s = np.sqrt(1.0 + 4.0 * x)
    return s - np.log((1.0 + s) / 2.0)


def eguchi_hanson_Upsilon_prime(x):
    s = np.sqrt(1.0 + 4.0 * np.asarray(x, dtype=float))
    return 2.0 / (1.0 + s)


def eguchi_hanson_potential_field(spec: PotentialSpec):
    """Pulled-back smoothed potential (1/2) log K + Upsilon(K) on the level-2 chart."""
    K = spec.field()

    def F(points: np.ndarray) -> np.ndarray:
        k = K(points)
        return 0.5 * np.log(k) + eguchi_hanson_Upsilon(k)

    return F
