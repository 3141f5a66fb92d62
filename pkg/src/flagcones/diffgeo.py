"""Pointwise numerical tensor calculus over real chart coordinates.

Points are real vectors ``(Re z_1, Im z_1, ..., Re z_n, Im z_n, Re w, Im w)``.
All derivatives are nested central differences with per-axis scaling and
Richardson extrapolation; scalar fields must accept batched point arrays
``(m, d) -> (m,)`` so that whole stencils evaluate in one call.

Conventions (with ``d^c = i (dbar - d)`` and real potentials F):

    d^c F        =  J grad F            (as covector components)
    d d^c F      = -(H J + J H),        H the real Hessian
    kahler form  = (i/2) ddbar F = (1/4) d d^c F
    metric       g_ij = omega(e_i, J e_j) = (omega J)_ij
    ricci form   = -i ddbar log det (complex Hessian)   [i ddbar scale]

The quarter-normalised Kahler form makes ``|w|^2`` produce the standard
flat metric and gives the conformal geometry of the cone potentials the
classical product shape; with it the Lee form ``-d log K`` of a cone
potential has squared norm 4 for the associated Vaisman metric.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


class ChartDegeneracyError(ValueError):
    """Point too close to the degenerate fiber w = 0."""


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference steps and extrapolation depth.

    ``base_step`` drives first derivatives; second derivatives use
    ``hessian_step`` and the nested curvature pipelines (Ricci of a metric
    field, Ricci form of a potential, Weyl-Ricci) use ``nested_step``,
    matched across nesting levels so that composite Richardson
    extrapolation cancels the leading error.
    """

    base_step: float = 1e-4
    hessian_step: float = 4e-3
    nested_step: float = 2e-2
    jet_step: float = 4e-2
    richardson: int = 2
    w_floor: float = 1e-6

    def echo(self) -> dict:
        return {
            "base_step": self.base_step,
            "hessian_step": self.hessian_step,
            "nested_step": self.nested_step,
            "jet_step": self.jet_step,
            "richardson": self.richardson,
        }


def complex_structure(dim: int) -> np.ndarray:
    """Standard complex structure: J e_(2a) = e_(2a+1), J e_(2a+1) = -e_(2a)."""
    if dim % 2:
        raise ValueError("real dimension must be even")
    J = np.zeros((dim, dim))
    for a in range(dim // 2):
        J[2 * a + 1, 2 * a] = 1.0
        J[2 * a, 2 * a + 1] = -1.0
    return J


def apply_J(v: np.ndarray) -> np.ndarray:
    return complex_structure(len(v)) @ v


def _axis_steps(p: np.ndarray, step) -> np.ndarray:
    """Per-axis steps; an array is taken verbatim as absolute step sizes."""
    if isinstance(step, np.ndarray):
        return step
    return step * np.maximum(1.0, np.abs(p))


# ---------------------------------------------------------------------------
# batched stencils
# ---------------------------------------------------------------------------

def _grad_single(F, P: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Central-difference gradients for a batch of points, one step size."""
    m, d = P.shape
    pts = np.empty((m, 2 * d, d))
    for i in range(d):
        pts[:, 2 * i, :] = P
        pts[:, 2 * i, i] += h[i]
        pts[:, 2 * i + 1, :] = P
        pts[:, 2 * i + 1, i] -= h[i]
    vals = np.asarray(F(pts.reshape(-1, d))).reshape(m, 2 * d)
    return (vals[:, 0::2] - vals[:, 1::2]) / (2.0 * h)


def grad_batch(F, P: np.ndarray, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    P = np.atleast_2d(np.asarray(P, dtype=float))
    h0 = _axis_steps(P[0], cfg.base_step if step is None else step)
    est = _grad_single(F, P, h0)
    for level in range(1, cfg.richardson):
        est2 = _grad_single(F, P, h0 / 2 ** level)
        est = (4.0 ** level * est2 - est) / (4.0 ** level - 1.0)
    return est


def d_scalar(F, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """Exterior derivative of a scalar field at a point (a covector)."""
    return grad_batch(F, np.asarray(p)[None, :], cfg, step)[0]


def dc_scalar(F, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """d^c F = -dF o J = J grad F."""
    d = len(p)
    return complex_structure(d) @ d_scalar(F, p, cfg, step)


class _HessStencil:
    """Precomputed second-derivative stencil with weights, batched assembly."""

    def __init__(self, h: np.ndarray):
        d = len(h)
        offsets = [np.zeros(d)]
        entries = []  # (slot, i, j, weight)
        entries.append(("center", None))
        for i in range(d):
            for s in (+1, -1):
                off = np.zeros(d)
                off[i] = s * h[i]
                offsets.append(off)
        for i in range(d):
            for j in range(i + 1, d):
                for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                    off = np.zeros(d)
                    off[i] = si * h[i]
                    off[j] = sj * h[j]
                    offsets.append(off)
        self.offsets = np.array(offsets)
        self.h = h
        self.d = d

    def assemble(self, vals: np.ndarray) -> np.ndarray:
        """vals: (m, S) field values at p + offsets -> (m, d, d) Hessians."""
        d, h = self.d, self.h
        m = vals.shape[0]
        H = np.zeros((m, d, d))
        c = vals[:, 0]
        pos = 1
        for i in range(d):
            plus, minus = vals[:, pos], vals[:, pos + 1]
            H[:, i, i] = (plus - 2 * c + minus) / h[i] ** 2
            pos += 2
        for i in range(d):
            for j in range(i + 1, d):
                pp, pm, mp, mm = (vals[:, pos], vals[:, pos + 1], vals[:, pos + 2], vals[:, pos + 3])
                val = (pp - pm - mp + mm) / (4 * h[i] * h[j])
                H[:, i, j] = val
                H[:, j, i] = val
                pos += 4
        return H


def hessian_batch(F, P: np.ndarray, cfg: FDConfig, step: Optional[float] = None,
                  richardson: Optional[int] = None) -> np.ndarray:
    """Real Hessians of a batched scalar field, (m, d) -> (m, d, d)."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    m, d = P.shape
    levels = cfg.richardson if richardson is None else richardson
    h0 = _axis_steps(P[0], cfg.hessian_step if step is None else step)
    est = None
    for level in range(levels):
        st = _HessStencil(h0 / 2 ** level)
        pts = (P[:, None, :] + st.offsets[None, :, :]).reshape(-1, d)
        vals = np.asarray(F(pts)).reshape(m, -1)
        H = st.assemble(vals)
        est = H if est is None else (4.0 ** level * H - est) / (4.0 ** level - 1.0)
    return est


def kahler_form_batch(F, P: np.ndarray, cfg: FDConfig, step: Optional[float] = None,
                      richardson: Optional[int] = None) -> np.ndarray:
    """(i/2) ddbar F as real 2-form matrices: -(HJ + JH)/4."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    J = complex_structure(P.shape[1])
    H = hessian_batch(F, P, cfg, step, richardson)
    return -(H @ J + J @ H) / 4.0


def kahler_form(F, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    return kahler_form_batch(F, np.asarray(p)[None, :], cfg, step)[0]


def i_del_delbar(F, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """i ddbar F (twice the quarter-normalised Kahler form)."""
    return 2.0 * kahler_form(F, p, cfg, step)


def metric_from_form(omega: np.ndarray) -> np.ndarray:
    """g(X, Y) = omega(X, JY)."""
    J = complex_structure(omega.shape[-1])
    return omega @ J


def metric_batch(F, P: np.ndarray, cfg: FDConfig, step: Optional[float] = None,
                 richardson: Optional[int] = None) -> np.ndarray:
    return kahler_form_batch(F, P, cfg, step, richardson) @ complex_structure(np.atleast_2d(P).shape[1])


def complex_hessian_batch(F, P: np.ndarray, cfg: FDConfig, step: Optional[float] = None,
                          richardson: Optional[int] = None) -> np.ndarray:
    """Mixed holomorphic Hessians d^2 F / dz_a dzbar_b, (m, nc, nc) complex."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    H = hessian_batch(F, P, cfg, step, richardson)
    d = P.shape[1]
    nc = d // 2
    xx = H[:, 0:d:2, 0:d:2]
    yy = H[:, 1:d:2, 1:d:2]
    xy = H[:, 0:d:2, 1:d:2]
    yx = H[:, 1:d:2, 0:d:2]
    return 0.25 * ((xx + yy) + 1j * (xy - yx))


def ricci_form_batch(F, P: np.ndarray, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """Ricci form -i ddbar log det(complex Hessian of F), (m, d, d).

    Fourth derivatives of F: inner complex Hessians and the outer ddbar
    run at a matched step so a single composite Richardson extrapolation
    controls the truncation error.
    """
    P = np.atleast_2d(np.asarray(P, dtype=float))
    m, d = P.shape
    J = complex_structure(d)
    h0 = cfg.nested_step if step is None else step

    def rho_at(h: float) -> np.ndarray:
        def logdet(Q: np.ndarray) -> np.ndarray:
            Hc = complex_hessian_batch(F, Q, cfg, step=h, richardson=1)
            sign, logabs = np.linalg.slogdet(Hc)
            return logabs

        HG = hessian_batch(logdet, P, cfg, step=h, richardson=1)
        return (HG @ J + J @ HG) / 2.0

    est = rho_at(h0)
    for level in range(1, cfg.richardson):
        est2 = rho_at(h0 / 2 ** level)
        est = (4.0 ** level * est2 - est) / (4.0 ** level - 1.0)
    return est


def ricci_form(F, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    return ricci_form_batch(F, np.asarray(p)[None, :], cfg, step)[0]


# ---------------------------------------------------------------------------
# one-forms, two-forms
# ---------------------------------------------------------------------------

def _jacobian_of_field(field, P: np.ndarray, cfg: FDConfig, step: float,
                       richardson: Optional[int] = None) -> np.ndarray:
    """d/dx_a of an array-valued batched field: (m, d, *shape)."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    m, d = P.shape
    levels = cfg.richardson if richardson is None else richardson
    h0 = _axis_steps(P[0], step)
    est = None
    for level in range(levels):
        h = h0 / 2 ** level
        pts = np.empty((m, 2 * d, d))
        for i in range(d):
            pts[:, 2 * i, :] = P
            pts[:, 2 * i, i] += h[i]
            pts[:, 2 * i + 1, :] = P
            pts[:, 2 * i + 1, i] -= h[i]
        vals = np.asarray(field(pts.reshape(-1, d)))
        shape = vals.shape[1:]
        vals = vals.reshape(m, 2 * d, *shape)
        D = (vals[:, 0::2] - vals[:, 1::2]) / (2.0 * h.reshape(1, d, *([1] * len(shape))))
        est = D if est is None else (4.0 ** level * D - est) / (4.0 ** level - 1.0)
    return est


def d_oneform(omega_field, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """(d omega)_ij = d_i omega_j - d_j omega_i for a batched covector field."""
    D = _jacobian_of_field(omega_field, np.asarray(p)[None, :], cfg, cfg.base_step if step is None else step)[0]
    return D - D.T


def d_twoform(Omega_field, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """(d Omega)_ijk for an antisymmetric-matrix-valued field."""
    D = _jacobian_of_field(Omega_field, np.asarray(p)[None, :], cfg, cfg.nested_step / 2 if step is None else step)[0]
    return D - np.transpose(D, (1, 0, 2)) + np.transpose(D, (1, 2, 0))


def wedge_one_two(theta: np.ndarray, Omega: np.ndarray) -> np.ndarray:
    """(theta ^ Omega)_ijk with the same component convention as d_twoform."""
    t1 = theta[:, None, None] * Omega[None, :, :]
    t2 = theta[None, :, None] * Omega[:, None, :]
    t3 = theta[None, None, :] * Omega[:, :, None]
    return t1 - t2 + t3


# ---------------------------------------------------------------------------
# connections and curvature
# ---------------------------------------------------------------------------

def christoffel_batch(g_field, P: np.ndarray, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """Levi-Civita symbols Gamma[k, i, j] for a batched metric field."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    dg = _jacobian_of_field(g_field, P, cfg, cfg.hessian_step if step is None else step)   # dg[m, a, i, j] = d_a g_ij
    g = g_field(P)
    ginv = np.linalg.inv(g)
    # S[m, i, j, l] = d_i g_jl + d_j g_il - d_l g_ij
    S = dg + dg.transpose(0, 2, 1, 3) - dg.transpose(0, 2, 3, 1)
    return 0.5 * np.einsum("mkl,mijl->mkij", ginv, S)


def christoffel(g_field, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    return christoffel_batch(g_field, np.asarray(p)[None, :], cfg, step)[0]


def nabla_oneform(theta_field, g_field, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """(nabla theta)_ij = d_i theta_j - Gamma^k_ij theta_k."""
    p = np.asarray(p, dtype=float)
    D = _jacobian_of_field(theta_field, p[None, :], cfg, cfg.hessian_step if step is None else step)[0]
    G = christoffel(g_field, p, cfg, step)
    th = theta_field(p[None, :])[0]
    return D - np.einsum("kij,k->ij", G, th)


def _ricci_from_symbols(G: np.ndarray, dG: np.ndarray) -> np.ndarray:
    """Ric_jk from connection coefficients and their derivatives dG[a,k,i,j]."""
    t1 = np.einsum("iijk->jk", dG)
    t2 = np.einsum("jiik->jk", dG)
    t3 = np.einsum("iim,mjk->jk", G, G)
    t4 = np.einsum("ijm,mik->jk", G, G)
    return t1 - t2 + t3 - t4


def _field_hessian(field, p, cfg: FDConfig, step: float, richardson: Optional[int] = None) -> np.ndarray:
    """Second derivatives of an array-valued batched field: (a, b, *shape)."""
    p = np.asarray(p, dtype=float)
    d = len(p)
    levels = cfg.richardson if richardson is None else richardson
    h0 = _axis_steps(p, step)
    est = None
    for level in range(levels):
        st = _HessStencil(h0 / 2 ** level)
        pts = p[None, :] + st.offsets
        vals = np.asarray(field(pts))
        shape = vals.shape[1:]
        flat = vals.reshape(len(pts), -1).T[:, None, :]          # (K, 1, S)
        H = np.stack([st.assemble(flat[k]) for k in range(flat.shape[0])])  # (K, 1, d, d)
        H = H[:, 0].reshape(*shape, d, d)
        H = np.moveaxis(H, (-2, -1), (0, 1))                     # (a, b, *shape)
        est = H if est is None else (4.0 ** level * H - est) / (4.0 ** level - 1.0)
    return est


def _metric_jets(g_field, p, cfg: FDConfig, step: Optional[float] = None):
    """Metric, first and second derivatives at a point.

    Returns (g, dg, ddg) with dg[a, i, j] = d_a g_ij and
    ddg[a, b, i, j] = d_a d_b g_ij.
    """
    p = np.asarray(p, dtype=float)
    h1 = cfg.jet_step if step is None else step
    g = g_field(p[None, :])[0]
    dg = _jacobian_of_field(g_field, p[None, :], cfg, h1)[0]
    ddg = _field_hessian(g_field, p, cfg, h1)
    return g, dg, ddg


def _symbol_jets(g, dg, ddg):
    """Levi-Civita symbols and their first derivatives from metric jets."""
    ginv = np.linalg.inv(g)
    S = dg + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0)               # S[i,j,l]
    G = 0.5 * np.einsum("kl,ijl->kij", ginv, S)
    dginv = -np.einsum("km,amn,nl->akl", ginv, dg, ginv)
    # dS[a,i,j,l] = d_a S_ijl from the symmetric second derivatives
    dS = ddg + ddg.transpose(0, 2, 1, 3) - ddg.transpose(0, 2, 3, 1)
    dG = 0.5 * (np.einsum("akl,ijl->akij", dginv, S) + np.einsum("kl,aijl->akij", ginv, dS))
    return ginv, G, dG


def ricci(g_field, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    """Ricci tensor of a batched metric field.

    The Christoffel derivatives are assembled algebraically from first and
    second finite differences of the metric itself, so no finite
    difference is ever nested inside another.
    """
    g, dg, ddg = _metric_jets(g_field, p, cfg, step)
    _, G, dG = _symbol_jets(g, dg, ddg)
    return _ricci_from_symbols(G, dG)


def weyl_christoffel_batch(g_field, theta_field, P: np.ndarray, cfg: FDConfig,
                           step: Optional[float] = None) -> np.ndarray:
    """Symbols of D = nabla - (theta . id + id . theta - g tensor A)/2."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    G = christoffel_batch(g_field, P, cfg, step)
    g = g_field(P)
    th = theta_field(P)
    A = np.einsum("mkl,ml->mk", np.linalg.inv(g), th)
    d = P.shape[1]
    eye = np.eye(d)
    corr = (np.einsum("mi,kj->mkij", th, eye) + np.einsum("mj,ki->mkij", th, eye)
            - np.einsum("mij,mk->mkij", g, A))
    return G - 0.5 * corr


def weyl_connection(g_field, theta_field, p, cfg: FDConfig, step: Optional[float] = None) -> np.ndarray:
    return weyl_christoffel_batch(g_field, theta_field, np.asarray(p)[None, :], cfg, step)[0]


def weyl_ricci(g_field, theta_field, p, cfg: FDConfig,
               step: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Ricci of the Weyl connection, from curvature and from the identity.

    The curvature path assembles the derivative of the Weyl symbols from
    metric and Lee-form jets and contracts the curvature directly.  The
    identity path evaluates the conformal-rescaling formula

        Ric^D = Ric + div(t) g + (n-2)(nabla t - |t|^2 g + t (x) t),

    with ``t = theta/2``: the Weyl connection attached to a Higgs field
    ``theta`` (our ``D g = theta (x) g`` convention) is the one the
    half-field conformal bookkeeping describes.  Both are returned so
    callers can report the cross-validation residual.
    """
    p = np.asarray(p, dtype=float)
    n = len(p)
    g, dg, ddg = _metric_jets(g_field, p, cfg, step)
    ginv, G, dG = _symbol_jets(g, dg, ddg)
    th = theta_field(p[None, :])[0]
    dth = _jacobian_of_field(theta_field, p[None, :], cfg, cfg.jet_step if step is None else step)[0]
    A = ginv @ th
    eye = np.eye(n)
    W = -0.5 * (np.einsum("i,kj->kij", th, eye) + np.einsum("j,ki->kij", th, eye)
                - np.einsum("ij,k->kij", g, A))
    dginv = -np.einsum("km,amn,nl->akl", ginv, dg, ginv)
    dA = np.einsum("akl,l->ak", dginv, th) + np.einsum("kl,al->ak", ginv, dth)
    dW = -0.5 * (np.einsum("ai,kj->akij", dth, eye) + np.einsum("aj,ki->akij", dth, eye)
                 - np.einsum("aij,k->akij", dg, A) - np.einsum("ij,ak->akij", g, dA))
    ric_curv = _ricci_from_symbols(G + W, dG + dW)

    t = th / 2.0
    dt = dth / 2.0
    ric_g = _ricci_from_symbols(G, dG)
    nab = dt - np.einsum("kij,k->ij", G, t)
    div = np.einsum("ij,ij->", ginv, nab)
    norm2 = t @ ginv @ t
    ric_formula = ric_g + div * g + (n - 2) * (nab - norm2 * g + np.outer(t, t))
    return ric_curv, ric_formula
