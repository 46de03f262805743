"""Conformal Ricci soliton residuals, field classification and theorem suites.

The soliton equation is always evaluated in the un-divided form

    L_xi g + 2 Ric - mu g,        mu = 2*lambda - (p + 2/n),

so no factor-of-2 convention can drift between checks.  Gradient solitons
substitute 2 Hess(phi) for the Lie term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisFailedError
from .exprs import Binary, Constant, Expr, Unary, substitute
from .manifolds import (
    ChartManifold,
    SamplePlan,
    ScalarField,
    SolitonParams,
    VectorField,
    classify_lambda,
    sample_points,
)
from .warped import (
    WarpedProduct,
    base_soliton_field,
    lift_sum,
    tilde_f,
)
from . import curvature as cv


def soliton_residual(
    M: ChartManifold, xi: VectorField, params: SolitonParams, pt
) -> np.ndarray:
    """L_xi g + 2 Ric - mu g at a point; zero iff the soliton equation holds."""
    mj = cv.metric_jet(M, pt)
    xv, xg = cv.field_jets(M, xi, pt)
    lie = cv.lie_metric_from_arrays(mj, xv, xg)
    return lie + 2.0 * cv._ricci_from(mj) - params.mu * mj.g


def gradient_soliton_residual(
    M: ChartManifold, phi: ScalarField, params: SolitonParams, pt
) -> np.ndarray:
    """2 Hess(phi) + 2 Ric - mu g at a point."""
    mj = cv.metric_jet(M, pt)
    jet = M.jet(phi.expr, pt)
    gamma = cv._christoffel_from(mj.g_inv, mj.dg)
    hess = jet.hess - np.einsum("kij,k->ij", gamma, jet.grad)
    return 2.0 * hess + 2.0 * cv._ricci_from(mj) - params.mu * mj.g


def max_soliton_residual(M, xi, params, plan) -> float:
    return max(
        float(np.max(np.abs(soliton_residual(M, xi, params, pt))))
        for pt in sample_points(M, plan)
    )


def max_gradient_residual(M, phi, params, plan) -> float:
    return max(
        float(np.max(np.abs(gradient_soliton_residual(M, phi, params, pt))))
        for pt in sample_points(M, plan)
    )


# -- vector field classification ----------------------------------------------


@dataclass(frozen=True)
class FieldClass:
    """Most specific class of a vector field on sampled points.

    kind is one of killing, conformal, concircular, concurrent, unclassified.
    sigma/alpha hold the per-point conformal and concircular factor estimates;
    residuals maps each candidate class to its max residual.
    """

    kind: str
    max_residual: float
    sigma: np.ndarray
    alpha: np.ndarray
    residuals: dict[str, float]


def classify_field(
    M: ChartManifold, X: VectorField, plan: SamplePlan, tol: float = 1e-8
) -> FieldClass:
    """Classify X by testing, per point, L_X g = sigma g and nabla X = alpha I."""
    pts = sample_points(M, plan)
    d = M.dim
    sigmas = np.empty(len(pts))
    alphas = np.empty(len(pts))
    res = {"killing": 0.0, "conformal": 0.0, "concircular": 0.0, "concurrent": 0.0}
    eye = np.eye(d)
    for idx, pt in enumerate(pts):
        mj = cv.metric_jet(M, pt)
        xv, xg = cv.field_jets(M, X, pt)
        lie = cv.lie_metric_from_arrays(mj, xv, xg)
        sigma = float(np.trace(mj.g_inv @ lie)) / d
        sigmas[idx] = sigma
        res["killing"] = max(res["killing"], float(np.max(np.abs(lie))))
        res["conformal"] = max(
            res["conformal"], float(np.max(np.abs(lie - sigma * mj.g)))
        )
        gamma = cv._christoffel_from(mj.g_inv, mj.dg)
        # nabla_{e_i} X as the matrix D[k,i]
        D = xg + np.einsum("kij,j->ki", gamma, xv)
        alpha = float(np.trace(D)) / d
        alphas[idx] = alpha
        res["concircular"] = max(
            res["concircular"], float(np.max(np.abs(D - alpha * eye)))
        )
        res["concurrent"] = max(res["concurrent"], float(np.max(np.abs(D - eye))))
    # most specific class first
    for kind in ("concurrent", "killing", "concircular", "conformal"):
        if res[kind] <= tol:
            return FieldClass(kind, res[kind], sigmas, alphas, res)
    return FieldClass(
        "unclassified", min(res["conformal"], res["concircular"]), sigmas, alphas, res
    )


def einstein_fit(M: ChartManifold, plan: SamplePlan) -> tuple[float, float]:
    """Fit Ric = c g: c is the sample mean of tr(g^-1 Ric)/d, the residual the
    max of |Ric - c g| over the samples."""
    pts = sample_points(M, plan)
    rics = []
    gs = []
    traces = []
    for pt in pts:
        mj = cv.metric_jet(M, pt)
        ric = cv._ricci_from(mj)
        rics.append(ric)
        gs.append(mj.g)
        traces.append(float(np.trace(mj.g_inv @ ric)) / M.dim)
    c = float(np.mean(traces))
    residual = max(
        float(np.max(np.abs(ric - c * g))) for ric, g in zip(rics, gs)
    )
    return c, residual


# -- induced solitons on the factors ------------------------------------------


class InducedSolitons:
    """Base and fiber soliton data induced by a warped-product soliton.

    The base keeps the product constant mu with field xi_B - n grad_B(ln f);
    the fiber constant mu_F(b) = mu f^2 - 2 f xi_B(f) + 2 f~ depends on the
    base anchor b and is recomputed on request.
    """

    def __init__(self, wp: WarpedProduct, xi_base, xi_fiber, params: SolitonParams):
        self.wp = wp
        self.xi_base = xi_base
        self.xi_fiber = xi_fiber
        self.params = params
        self.base_field: VectorField = base_soliton_field(wp, xi_base)
        self.base_mu: float = params.mu

    def fiber_mu(self, pt_base) -> float:
        fv = self.wp.f_value(pt_base)
        xbf = self.wp.xi_b_of_f(self.xi_base, pt_base)
        return self.params.mu * fv * fv - 2.0 * fv * xbf + 2.0 * tilde_f(self.wp, pt_base)

    def fiber_field(self, pt_base) -> VectorField:
        scale = Constant(self.wp.f_value(pt_base) ** 2)
        return VectorField(
            tuple(Binary("mul", scale, c) for c in self.xi_fiber.components)
        )


def induced_solitons(
    wp: WarpedProduct,
    xi_base: VectorField,
    xi_fiber: VectorField,
    params: SolitonParams,
    plan: SamplePlan,
    hypothesis_tol: float = 1e-8,
) -> tuple[InducedSolitons, dict[str, float]]:
    """Verify that a warped-product soliton induces solitons on both factors.

    Raises HypothesisFailedError when the product is not a soliton at the
    sampled points.  Returns the induced data and the residual summary:
    base_residual, fiber_residual (max over base anchors) and mu_fiber_spread.
    """
    xi = lift_sum(wp, xi_base, xi_fiber)
    hyp = max_soliton_residual(wp.product, xi, params, plan)
    if hyp > hypothesis_tol:
        raise HypothesisFailedError("the product is not a conformal Ricci soliton", hyp)

    induced = InducedSolitons(wp, xi_base, xi_fiber, params)
    mu = params.mu
    base_pts = sample_points(wp.base, plan)
    base_res = 0.0
    for pb in base_pts:
        lie = cv.lie_derivative_metric(wp.base, induced.base_field, pb)
        g_b = wp.base.metric_values(pb)
        r = lie + 2.0 * cv.ricci(wp.base, pb) - mu * g_b
        base_res = max(base_res, float(np.max(np.abs(r))))

    fiber_pts = sample_points(wp.fiber, plan)
    fiber_data = []
    for pf in fiber_pts:
        lie_f = cv.lie_derivative_metric(wp.fiber, xi_fiber, pf)
        fiber_data.append((lie_f, cv.ricci(wp.fiber, pf), wp.fiber.metric_values(pf)))

    fiber_res = 0.0
    mus = []
    for pb in base_pts:
        fv = wp.f_value(pb)
        mu_f = induced.fiber_mu(pb)
        mus.append(mu_f)
        for lie_f, ric_f, g_f in fiber_data:
            r = fv * fv * lie_f + 2.0 * ric_f - mu_f * g_f
            fiber_res = max(fiber_res, float(np.max(np.abs(r))))
    summary = {
        "hypothesis_residual": hyp,
        "base_residual": base_res,
        "fiber_residual": fiber_res,
        "mu_fiber_spread": float(max(mus) - min(mus)),
    }
    return induced, summary


def gradient_induced_solitons(
    wp: WarpedProduct,
    phi: ScalarField,
    params: SolitonParams,
    plan: SamplePlan,
    hypothesis_tol: float = 1e-8,
    const_tol: float = 1e-10,
    anchors: int = 4,
) -> dict:
    """Induced gradient solitons for a product gradient soliton.

    The base potential is phi frozen at fiber anchors minus n ln f; the fiber
    check runs only when f is constant (otherwise it is reported skipped, with
    the base check still evaluated).  Anchors are the first ``anchors``
    sampled points of the other factor; the residual is the max over anchors.
    """
    hyp = max_gradient_residual(wp.product, phi, params, plan)
    if hyp > hypothesis_tol:
        raise HypothesisFailedError(
            "the product is not a conformal gradient Ricci soliton", hyp
        )
    mu = params.mu
    n = wp.n
    base_pts = sample_points(wp.base, plan)
    fiber_pts = sample_points(wp.fiber, plan)

    grad_norm = max(
        float(np.max(np.abs(wp.base.jet(wp.f.expr, pb).grad))) for pb in base_pts
    )
    f_constant = grad_norm <= const_tol

    n_ln_f = Binary("mul", Constant(float(n)), Unary("log", wp.f.expr))
    base_res = 0.0
    for anchor in fiber_pts[:anchors]:
        frozen = dict(zip(wp.fiber.coord_names, anchor))
        phi_b = substitute(phi.expr, frozen)
        psi = ScalarField(Binary("sub", phi_b, n_ln_f))
        for pb in base_pts:
            r = (
                2.0 * cv.hessian(wp.base, psi, pb)
                + 2.0 * cv.ricci(wp.base, pb)
                - mu * wp.base.metric_values(pb)
            )
            base_res = max(base_res, float(np.max(np.abs(r))))

    out = {
        "hypothesis_residual": hyp,
        "base_residual": base_res,
        "fiber_skipped": not f_constant,
        "fiber_residual": None,
        "mu_fiber": None,
    }
    if f_constant:
        c = wp.f_value(base_pts[0])
        mu_f = mu * c * c
        fiber_res = 0.0
        for anchor in base_pts[:anchors]:
            frozen = dict(zip(wp.base.coord_names, anchor))
            phi_f = ScalarField(substitute(phi.expr, frozen))
            for pf in fiber_pts:
                r = (
                    2.0 * cv.hessian(wp.fiber, phi_f, pf)
                    + 2.0 * cv.ricci(wp.fiber, pf)
                    - mu_f * wp.fiber.metric_values(pf)
                )
                fiber_res = max(fiber_res, float(np.max(np.abs(r))))
        out["fiber_residual"] = fiber_res
        out["mu_fiber"] = mu_f
    return out


# -- pure relations ------------------------------------------------------------


def warping_quadratic_residual(
    f_val: float, xi_b_f: float, rho: float, mu: float, beta: float, k: float, n: int
) -> float:
    """(2 rho - mu) f^2 + 2 f xi_B(f) + 2 beta + 2 (1 - n) k^2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not f_val > 0:
        raise ValueError("the warping value must be positive")
    return (
        (2.0 * rho - mu) * f_val * f_val
        + 2.0 * f_val * xi_b_f
        + 2.0 * beta
        + 2.0 * (1 - n) * k * k
    )


def concircular_lambda(alpha: float, p: float, n: int) -> tuple[float, str, float]:
    """Soliton constant for a concircular field under the unit scalar-curvature
    normalization: lambda = alpha + p/2 + 1/(2n).

    Returns (lambda, classification, bracket) with bracket = p + 2*alpha + 1/n
    = 2*lambda, so any convention mismatch stays visible.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = alpha + p / 2.0 + 1.0 / (2 * n)
    bracket = p + 2.0 * alpha + 1.0 / n
    return lam, classify_lambda(lam), bracket


# -- potential/gradient identity ------------------------------------------------


def gradient_potential_residual(M: ChartManifold, xi: VectorField, pt) -> float:
    """Residual of xi-flat = d(|xi|^2 / 2), the gradient-potential identity
    satisfied by concurrent fields."""
    mj = cv.metric_jet(M, pt)
    xv, xg = cv.field_jets(M, xi, pt)
    flat = mj.g @ xv
    dphi = 0.5 * np.einsum("ijk,i,j->k", mj.dg, xv, xv) + np.einsum(
        "ij,ik,j->k", mj.g, xg, xv
    )
    return float(np.max(np.abs(flat - dphi)))


# -- theorem suites -------------------------------------------------------------


def concurrent_suite(
    wp: WarpedProduct,
    xi_base: VectorField,
    xi_fiber: VectorField,
    params: SolitonParams,
    plan: SamplePlan,
    classify_tol: float = 1e-8,
) -> dict[str, float]:
    """Checks for a direct-product soliton with concurrent lifts:
    mu = 2, all three Ricci tensors vanish, and each field is the gradient
    of half its squared length."""
    fc_b = classify_field(wp.base, xi_base, plan, tol=classify_tol)
    fc_f = classify_field(wp.fiber, xi_fiber, plan, tol=classify_tol)
    if fc_b.kind != "concurrent" or fc_f.kind != "concurrent":
        raise HypothesisFailedError(
            "both lifts must be concurrent "
            f"(base: {fc_b.kind}, fiber: {fc_f.kind})",
            max(fc_b.residuals["concurrent"], fc_f.residuals["concurrent"]),
        )
    base_pts = sample_points(wp.base, plan)
    grad_norm = max(
        float(np.max(np.abs(wp.base.jet(wp.f.expr, pb).grad))) for pb in base_pts
    )
    if grad_norm > classify_tol:
        raise HypothesisFailedError("the warping function must be constant", grad_norm)

    n = params.n_conv
    checks = {
        "base_concurrent_residual": fc_b.residuals["concurrent"],
        "fiber_concurrent_residual": fc_f.residuals["concurrent"],
        "mu_equals_two": abs(params.mu - 2.0),
        "lambda_relation": abs(params.lam - (params.pressure / 2.0 + 1.0 / n + 1.0)),
    }
    xi = lift_sum(wp, xi_base, xi_fiber)
    checks["ricci_product"] = max(
        float(np.max(np.abs(cv.ricci(wp.product, pt))))
        for pt in sample_points(wp.product, plan)
    )
    checks["ricci_base"] = max(
        float(np.max(np.abs(cv.ricci(wp.base, pb)))) for pb in base_pts
    )
    checks["ricci_fiber"] = max(
        float(np.max(np.abs(cv.ricci(wp.fiber, pf))))
        for pf in sample_points(wp.fiber, plan)
    )
    checks["potential_gradient_product"] = max(
        gradient_potential_residual(wp.product, xi, pt)
        for pt in sample_points(wp.product, plan)
    )
    checks["potential_gradient_base"] = max(
        gradient_potential_residual(wp.base, xi_base, pb) for pb in base_pts
    )
    checks["potential_gradient_fiber"] = max(
        gradient_potential_residual(wp.fiber, xi_fiber, pf)
        for pf in sample_points(wp.fiber, plan)
    )
    return checks


def grw_suite(
    grw: WarpedProduct,
    phi: ScalarField,
    params: SolitonParams,
    plan: SamplePlan,
    hypothesis_tol: float = 1e-8,
    affine_tol: float = 1e-8,
) -> dict:
    """Robertson-Walker soliton checks for the radial field xi = f d/dt.

    phi is the antiderivative of f on the base interval (checked first); the
    field f d/dt is the metric gradient of -phi, so the scaling identities are
    evaluated through Hess(-phi) and L_xi g:

      potential_derivative : phi' = f
      hessian_scaling      : Hess(-phi) = f' g
      lie_scaling          : L_{f d/dt} g = 2 f' g
      ricci_shift          : Ric = (lambda - f' - p/2 - 1/n) g
      einstein (when f'' = 0): the product fits Ric = c g

    Returns per-check residuals; ricci_shift is pointwise and may genuinely be
    nonzero for non-soliton instances.
    """
    if not grw.is_grw:
        raise ValueError("grw_suite needs a product built by build_grw")
    t_name = grw.base.coord_names[0]
    base_pts = sample_points(grw.base, plan)
    pot_res = 0.0
    fpp_max = 0.0
    for pb in base_pts:
        fjet = grw.base.jet(grw.f.expr, pb)
        pjet = grw.base.jet(phi.expr, pb)
        pot_res = max(pot_res, abs(pjet.grad[0] - fjet.value))
        fpp_max = max(fpp_max, abs(fjet.hess[0, 0]))
    if pot_res > hypothesis_tol:
        raise HypothesisFailedError("phi is not an antiderivative of f", pot_res)

    neg_phi = ScalarField(Unary("neg", phi.expr))
    xi = VectorField((grw.f.expr,) + (Constant(0.0),) * grw.n)
    mu = params.mu
    shift = params.lam - params.pressure / 2.0 - 1.0 / params.n_conv

    hess_res = lie_res = ricci_res = 0.0
    for pt in sample_points(grw.product, plan):
        pb, _ = grw.split_point(pt)
        fdot = grw.base.jet(grw.f.expr, pb).grad[0]
        mj = cv.metric_jet(grw.product, pt)
        hess = cv.hessian(grw.product, neg_phi, pt)
        hess_res = max(hess_res, float(np.max(np.abs(hess - fdot * mj.g))))
        xv, xg = cv.field_jets(grw.product, xi, pt)
        lie = cv.lie_metric_from_arrays(mj, xv, xg)
        lie_res = max(lie_res, float(np.max(np.abs(lie - 2.0 * fdot * mj.g))))
        ric = cv._ricci_from(mj)
        ricci_res = max(
            ricci_res, float(np.max(np.abs(ric - (shift - fdot) * mj.g)))
        )

    out = {
        "potential_derivative": pot_res,
        "hessian_scaling": hess_res,
        "lie_scaling": lie_res,
        "ricci_shift": ricci_res,
        "affine": fpp_max <= affine_tol,
        "einstein_constant": None,
        "einstein_residual": None,
    }
    if out["affine"]:
        c, res = einstein_fit(grw.product, plan)
        out["einstein_constant"] = c
        out["einstein_residual"] = res
    return out
