"""Curvature pipeline: Christoffel, Riemann, Ricci, Hessians, Lie derivatives.

Everything is assembled from second-order jets of the metric entries, so all
first derivatives of Christoffel symbols are exact to rounding.  Conventions:

    dg[i,j,k]    = d_k g_ij
    ddg[i,j,k,l] = d_k d_l g_ij
    Gamma[k,i,j] = Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
    R[l,i,j,k]   = R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
                   + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
    Ric[j,k]     = R^i_ijk,   r = g^{jk} Ric_jk

An independent finite-difference oracle (fd_cross_check) rebuilds Gamma,
Riemann and Ricci from plain metric samples and reports the deviation from
the jet pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularMetricError
from .exprs import (
    Binary,
    Constant,
    Expr,
    Unary,
    differentiate,
    eval_value,
)
from .manifolds import (
    DET_FLOOR,
    DOMAIN_CLAMP,
    ChartManifold,
    SamplePlan,
    ScalarField,
    VectorField,
    sample_points,
)


@dataclass(frozen=True)
class MetricJet:
    """Metric with inverse and first/second coordinate derivatives at a point."""

    g: np.ndarray
    g_inv: np.ndarray
    dg: np.ndarray
    ddg: np.ndarray
    det: float


def _invert(g: np.ndarray) -> tuple[np.ndarray, float]:
    det = float(np.linalg.det(g))
    if abs(det) <= DET_FLOOR:
        raise SingularMetricError(det)
    d = g.shape[0]
    eye = np.eye(d)
    inv = np.linalg.solve(g, eye)
    # one Newton step tightens g @ inv to the identity well below 1e-12
    inv = inv @ (2.0 * eye - g @ inv)
    inv = 0.5 * (inv + inv.T)
    return inv, det


def metric_jet(M: ChartManifold, pt) -> MetricJet:
    """Jets of every metric entry; inverse via pivoted elimination."""
    d = M.dim
    g = np.empty((d, d))
    dg = np.empty((d, d, d))
    ddg = np.empty((d, d, d, d))
    for i in range(d):
        for j in range(i, d):
            jet = M.jet(M.metric[i][j], pt)
            g[i, j] = g[j, i] = jet.value
            dg[i, j, :] = dg[j, i, :] = jet.grad
            ddg[i, j, :, :] = ddg[j, i, :, :] = jet.hess
    g_inv, det = _invert(g)
    return MetricJet(g, g_inv, dg, ddg, det)


# -- assembly helpers shared by the jet and finite-difference routes --------


def _christoffel_from(g_inv: np.ndarray, dg: np.ndarray) -> np.ndarray:
    S = (
        np.einsum("jli->lij", dg)
        + np.einsum("ilj->lij", dg)
        - np.einsum("ijl->lij", dg)
    )
    return 0.5 * np.einsum("kl,lij->kij", g_inv, S)


def _riemann_from(mj: MetricJet) -> np.ndarray:
    g_inv, dg, ddg = mj.g_inv, mj.dg, mj.ddg
    S = (
        np.einsum("jli->lij", dg)
        + np.einsum("ilj->lij", dg)
        - np.einsum("ijl->lij", dg)
    )
    dS = (
        np.einsum("jlim->mlij", ddg)
        + np.einsum("iljm->mlij", ddg)
        - np.einsum("ijlm->mlij", ddg)
    )
    dginv = -np.einsum("ac,cdm,db->mab", g_inv, dg, g_inv)
    gamma = 0.5 * np.einsum("kl,lij->kij", g_inv, S)
    dgamma = 0.5 * (
        np.einsum("mkl,lij->mkij", dginv, S) + np.einsum("kl,mlij->mkij", g_inv, dS)
    )
    term12 = np.einsum("iljk->lijk", dgamma) - np.einsum("jlik->lijk", dgamma)
    term34 = np.einsum("lim,mjk->lijk", gamma, gamma) - np.einsum(
        "ljm,mik->lijk", gamma, gamma
    )
    return term12 + term34


def _ricci_from(mj: MetricJet) -> np.ndarray:
    return np.einsum("iijk->jk", _riemann_from(mj))


# -- public jet-route operations --------------------------------------------


def christoffel(M: ChartManifold, pt) -> np.ndarray:
    """Levi-Civita connection coefficients Gamma[k,i,j], symmetric in (i,j)."""
    mj = metric_jet(M, pt)
    return _christoffel_from(mj.g_inv, mj.dg)


def riemann(M: ChartManifold, pt) -> np.ndarray:
    return _riemann_from(metric_jet(M, pt))


def ricci(M: ChartManifold, pt) -> np.ndarray:
    return _ricci_from(metric_jet(M, pt))


def scalar_curvature(M: ChartManifold, pt) -> float:
    mj = metric_jet(M, pt)
    return float(np.einsum("jk,jk->", mj.g_inv, _ricci_from(mj)))


def sectional_curvature(M: ChartManifold, pt, i: int, j: int) -> float:
    """Sectional curvature of the coordinate plane (e_i, e_j)."""
    mj = metric_jet(M, pt)
    R = _riemann_from(mj)
    num = float(mj.g[i, :] @ R[:, i, j, j])
    den = mj.g[i, i] * mj.g[j, j] - mj.g[i, j] ** 2
    return num / den


def hessian(M: ChartManifold, phi: ScalarField, pt) -> np.ndarray:
    """Covariant Hessian H_ij = d_i d_j phi - Gamma^k_ij d_k phi."""
    mj = metric_jet(M, pt)
    jet = M.jet(phi.expr, pt)
    gamma = _christoffel_from(mj.g_inv, mj.dg)
    return jet.hess - np.einsum("kij,k->ij", gamma, jet.grad)


def laplacian_gradnorm(M: ChartManifold, phi: ScalarField, pt) -> tuple[float, float]:
    """(Laplacian, squared gradient norm); the norm can be negative on
    indefinite metrics."""
    mj = metric_jet(M, pt)
    jet = M.jet(phi.expr, pt)
    gamma = _christoffel_from(mj.g_inv, mj.dg)
    H = jet.hess - np.einsum("kij,k->ij", gamma, jet.grad)
    lap = float(np.einsum("ij,ij->", mj.g_inv, H))
    norm2 = float(jet.grad @ mj.g_inv @ jet.grad)
    return lap, norm2


def field_jets(M: ChartManifold, X: VectorField, pt) -> tuple[np.ndarray, np.ndarray]:
    """Values X^k and partials dX[k,i] = d_i X^k of a vector field."""
    d = M.dim
    vals = np.empty(d)
    grads = np.empty((d, d))
    for k, comp in enumerate(X.components):
        jet = M.jet(comp, pt)
        vals[k] = jet.value
        grads[k, :] = jet.grad
    return vals, grads


def lie_metric_from_arrays(
    mj: MetricJet, Xv: np.ndarray, Xg: np.ndarray
) -> np.ndarray:
    """(L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k."""
    return (
        np.einsum("ijk,k->ij", mj.dg, Xv)
        + np.einsum("kj,ki->ij", mj.g, Xg)
        + np.einsum("ik,kj->ij", mj.g, Xg)
    )


def lie_derivative_metric(M: ChartManifold, X: VectorField, pt) -> np.ndarray:
    """Lie derivative of the metric along X; exactly symmetric, zero for
    Killing fields."""
    mj = metric_jet(M, pt)
    Xv, Xg = field_jets(M, X, pt)
    return lie_metric_from_arrays(mj, Xv, Xg)


def covariant_derivative_vector(
    M: ChartManifold, direction: VectorField, xi: VectorField, pt
) -> np.ndarray:
    """(nabla_X xi)^k = X^i d_i xi^k + Gamma^k_ij X^i xi^j."""
    mj = metric_jet(M, pt)
    gamma = _christoffel_from(mj.g_inv, mj.dg)
    dv, _ = field_jets(M, direction, pt)
    xv, xg = field_jets(M, xi, pt)
    return np.einsum("ki,i->k", xg, dv) + np.einsum("kij,i,j->k", gamma, dv, xv)


def _syntactic_zero(e: Expr) -> bool:
    if isinstance(e, Constant):
        return e.value == 0.0
    if isinstance(e, Unary) and e.op == "neg":
        return _syntactic_zero(e.child)
    if isinstance(e, Binary) and e.op == "mul":
        return _syntactic_zero(e.left) or _syntactic_zero(e.right)
    return False


def metric_is_diagonal(M: ChartManifold) -> bool:
    """True when every off-diagonal metric entry is syntactically zero."""
    for i in range(M.dim):
        for j in range(M.dim):
            if i != j and not _syntactic_zero(M.metric[i][j]):
                return False
    return True


def gradient_field(M: ChartManifold, phi: ScalarField) -> VectorField:
    """Closed-form gradient g^{ij} d_j phi as a vector field.

    Needs the metric inverse in closed form, so only diagonal metrics are
    supported symbolically; use gradient_at for pointwise values elsewhere.
    """
    if not metric_is_diagonal(M):
        raise ValueError("closed-form gradient needs a diagonal metric")
    comps = []
    for i, name in enumerate(M.coord_names):
        dphi = differentiate(phi.expr, name)
        comps.append(Binary("div", dphi, M.metric[i][i]))
    return VectorField(tuple(comps))


def gradient_at(M: ChartManifold, phi: ScalarField, pt) -> np.ndarray:
    """Pointwise contravariant gradient (works for any metric)."""
    mj = metric_jet(M, pt)
    return mj.g_inv @ M.jet(phi.expr, pt).grad


# -- finite-difference oracle ------------------------------------------------


@dataclass(frozen=True)
class FdCheck:
    """Max absolute deviations between the jet route and the FD route."""

    christoffel: float
    riemann: float
    ricci: float


def fd_metric_jet(M: ChartManifold, pt, h: float) -> MetricJet:
    """MetricJet rebuilt from central differences of plain metric samples."""
    if h <= 0:
        raise ValueError("h must be positive")
    x = np.asarray(pt, dtype=float)
    d = M.dim
    for i, (lo, hi) in enumerate(M.domain):
        lo = max(lo, -DOMAIN_CLAMP)
        hi = min(hi, DOMAIN_CLAMP)
        if not (lo + 2 * h < x[i] < hi - 2 * h):
            raise DomainError(
                f"point too close to the domain boundary for steps of {h:g}"
            )

    def gmat(y):
        return M.metric_values(y)

    g0 = gmat(x)
    dg = np.empty((d, d, d))
    ddg = np.empty((d, d, d, d))
    plus = []
    minus = []
    for k in range(d):
        xp, xm = x.copy(), x.copy()
        xp[k] += h
        xm[k] -= h
        gp, gm = gmat(xp), gmat(xm)
        plus.append(gp)
        minus.append(gm)
        dg[:, :, k] = (gp - gm) / (2.0 * h)
        ddg[:, :, k, k] = (gp - 2.0 * g0 + gm) / (h * h)
    for k in range(d):
        for l in range(k + 1, d):
            xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
            xpp[[k, l]] += h
            xmm[[k, l]] -= h
            xpm[k] += h
            xpm[l] -= h
            xmp[k] -= h
            xmp[l] += h
            mixed = (gmat(xpp) - gmat(xpm) - gmat(xmp) + gmat(xmm)) / (4.0 * h * h)
            ddg[:, :, k, l] = mixed
            ddg[:, :, l, k] = mixed
    g_inv, det = _invert(g0)
    return MetricJet(g0, g_inv, dg, ddg, det)


def fd_cross_check(M: ChartManifold, pt, h: float = 1e-4) -> FdCheck:
    """Deviation of the jet pipeline from the finite-difference oracle."""
    ad = metric_jet(M, pt)
    fd = fd_metric_jet(M, pt, h)
    gamma_ad = _christoffel_from(ad.g_inv, ad.dg)
    gamma_fd = _christoffel_from(fd.g_inv, fd.dg)
    riem_ad = _riemann_from(ad)
    riem_fd = _riemann_from(fd)
    ric_ad = np.einsum("iijk->jk", riem_ad)
    ric_fd = np.einsum("iijk->jk", riem_fd)
    return FdCheck(
        christoffel=float(np.max(np.abs(gamma_ad - gamma_fd))),
        riemann=float(np.max(np.abs(riem_ad - riem_fd))),
        ricci=float(np.max(np.abs(ric_ad - ric_fd))),
    )


def fd_worst_case(M: ChartManifold, plan: SamplePlan, h: float = 1e-4) -> FdCheck:
    """fd_cross_check maximized over a sample plan."""
    worst = FdCheck(0.0, 0.0, 0.0)
    for pt in sample_points(M, plan):
        c = fd_cross_check(M, pt, h)
        worst = FdCheck(
            max(worst.christoffel, c.christoffel),
            max(worst.riemann, c.riemann),
            max(worst.ricci, c.ricci),
        )
    return worst
