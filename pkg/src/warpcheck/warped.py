"""Warped products B x_f F and Robertson-Walker style product charts.

The product chart keeps the base metric in the upper-left block, multiplies
every fiber entry by f^2 syntactically, and leaves the off-blocks at zero.
Factor computations (Ricci of base/fiber, Hessian of f, ...) run on the
factor charts and are compared against the product chart built here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NameClashError, NonPositiveWarpingError, SignatureError
from .exprs import Binary, Constant, Expr, Unary, differentiate
from .manifolds import (
    ChartManifold,
    SamplePlan,
    ScalarField,
    VectorField,
    require_riemannian,
    sample_points,
)
from . import curvature as cv

_BUILD_PLAN = SamplePlan(count=64, seed=20210, margin=0.0)


@dataclass(frozen=True)
class WarpedProduct:
    base: ChartManifold
    fiber: ChartManifold
    f: ScalarField  # positive warping scalar on the base
    product: ChartManifold
    is_grw: bool = False

    @property
    def m(self) -> int:
        return self.base.dim

    @property
    def n(self) -> int:
        return self.fiber.dim

    def split_point(self, pt) -> tuple[np.ndarray, np.ndarray]:
        pt = np.asarray(pt, dtype=float)
        return pt[: self.m], pt[self.m :]

    def f_value(self, pt_base) -> float:
        return self.base.value(self.f.expr, pt_base)

    def xi_b_of_f(self, xi_base: VectorField, pt_base) -> float:
        """Directional derivative xi_B(f) at a base point."""
        jet = self.base.jet(self.f.expr, pt_base)
        vals, _ = cv.field_jets(self.base, xi_base, pt_base)
        return float(vals @ jet.grad)


def _combine_hint(base: ChartManifold, fiber: ChartManifold):
    hb, hf = base.signature_hint, fiber.signature_hint
    if hb is None or hf is None:
        return None
    return (hb[0] + hf[0], hb[1] + hf[1])


def build_warped(
    base: ChartManifold,
    fiber: ChartManifold,
    f: ScalarField,
    check_plan: SamplePlan = _BUILD_PLAN,
) -> WarpedProduct:
    """Assemble the product chart with block metric g_B + f^2 g_F."""
    clash = set(base.coord_names) & set(fiber.coord_names)
    if clash:
        raise NameClashError(f"coordinate names {sorted(clash)} appear in both factors")
    for pt in sample_points(base, check_plan):
        v = base.value(f.expr, pt)
        if not v > 0.0:
            raise NonPositiveWarpingError(pt, v)
    m, n = base.dim, fiber.dim
    d = m + n
    f_sq = Binary("pow", f.expr, Constant(2.0))
    metric = [[Constant(0.0)] * d for _ in range(d)]
    for i in range(m):
        for j in range(m):
            metric[i][j] = base.metric[i][j]
    for a in range(n):
        for b in range(n):
            metric[m + a][m + b] = Binary("mul", f_sq, fiber.metric[a][b])
    product = ChartManifold(
        base.coord_names + fiber.coord_names,
        metric,
        base.domain + fiber.domain,
        signature_hint=_combine_hint(base, fiber),
    )
    return WarpedProduct(base, fiber, f, product)


def build_grw(
    f: ScalarField,
    fiber: ChartManifold,
    t_domain: tuple[float, float],
    t_name: str = "t",
    check_plan: SamplePlan = _BUILD_PLAN,
) -> WarpedProduct:
    """Lorentzian product -dt^2 + f(t)^2 g_F over an interval base."""
    base = ChartManifold(
        (t_name,), [[Constant(-1.0)]], [t_domain], signature_hint=(0, 1)
    )
    require_riemannian(fiber, check_plan, "a Robertson-Walker fiber")
    wp = build_warped(base, fiber, f, check_plan)
    product = ChartManifold(
        wp.product.coord_names,
        wp.product.metric,
        wp.product.domain,
        signature_hint=(fiber.dim, 1),
    )
    return WarpedProduct(base, fiber, f, product, is_grw=True)


# -- lifts --------------------------------------------------------------------


def lift_base_vector(wp: WarpedProduct, xi_base: VectorField) -> VectorField:
    return VectorField(tuple(xi_base.components) + (Constant(0.0),) * wp.n)


def lift_fiber_vector(wp: WarpedProduct, xi_fiber: VectorField) -> VectorField:
    return VectorField((Constant(0.0),) * wp.m + tuple(xi_fiber.components))


def lift_sum(wp: WarpedProduct, xi_base: VectorField, xi_fiber: VectorField) -> VectorField:
    return VectorField(
        tuple(xi_base.components) + tuple(xi_fiber.components)
    )


# -- scalar combinations ------------------------------------------------------


def tilde_f(wp: WarpedProduct, pt_base) -> float:
    """f * Lap_B(f) + (n - 1) * |grad_B f|^2 at a base point."""
    lap, norm2 = cv.laplacian_gradnorm(wp.base, wp.f, pt_base)
    fv = wp.f_value(pt_base)
    return fv * lap + (wp.n - 1) * norm2


def grad_ln_f_field(wp: WarpedProduct) -> VectorField:
    """Closed-form gradient of ln f on the base (diagonal base metrics)."""
    ln_f = ScalarField(Unary("log", wp.f.expr))
    return cv.gradient_field(wp.base, ln_f)


def base_soliton_field(wp: WarpedProduct, xi_base: VectorField) -> VectorField:
    """xi_B - n * grad_B(ln f), the induced field on the base."""
    grad_ln = grad_ln_f_field(wp)
    comps = tuple(
        Binary("sub", xb, Binary("mul", Constant(float(wp.n)), gl))
        for xb, gl in zip(xi_base.components, grad_ln.components)
    )
    return VectorField(comps)


def _grad_ln_f_arrays(wp: WarpedProduct, pt_base) -> tuple[np.ndarray, np.ndarray]:
    """Values and partials of grad_B(ln f) at a point, for any base metric."""
    mj = cv.metric_jet(wp.base, pt_base)
    ln_f = Unary("log", wp.f.expr)
    jet = wp.base.jet(ln_f, pt_base)
    dginv = -np.einsum("ac,cdm,db->mab", mj.g_inv, mj.dg, mj.g_inv)
    vals = mj.g_inv @ jet.grad
    grads = np.einsum("ikj,j->ki", dginv, jet.grad) + np.einsum(
        "kj,ij->ki", mj.g_inv, jet.hess
    )
    return vals, grads


# -- identity checks ----------------------------------------------------------


def warped_ricci_identities(wp: WarpedProduct, plan: SamplePlan) -> dict[str, float]:
    """Connection and Ricci block identities of a Riemannian warped product.

    At sampled product points, for coordinate lifts X,Y (base) and U,V (fiber):

      connection_lift : nabla_X U = (X(f)/f) U
      ricci_mixed     : Ric(X, U) = 0
      ricci_base      : Ric(X, Y) = Ric_B(X, Y) - (n/f) Hess_B(f)(X, Y)
      ricci_fiber     : Ric(U, V) = Ric_F(U, V)
                        - (Lap f / f + (n-1) |grad f|^2 / f^2) g(U, V)

    with g(U,V) the product metric restricted to the fiber block.  Returns the
    max absolute residual per identity.
    """
    require_riemannian(wp.base, plan, "the warped-product identity check")
    require_riemannian(wp.fiber, plan, "the warped-product identity check")
    m, n = wp.m, wp.n
    res = {"connection_lift": 0.0, "ricci_mixed": 0.0, "ricci_base": 0.0, "ricci_fiber": 0.0}
    for pt in sample_points(wp.product, plan):
        pb, pf = wp.split_point(pt)
        mj = cv.metric_jet(wp.product, pt)
        gamma = cv._christoffel_from(mj.g_inv, mj.dg)
        ric = cv._ricci_from(mj)
        fjet = wp.base.jet(wp.f.expr, pb)
        fv = fjet.value

        expect = np.zeros((m + n, m, n))
        for a in range(m):
            for b in range(n):
                expect[m + b, a, b] = fjet.grad[a] / fv
        res["connection_lift"] = max(
            res["connection_lift"],
            float(np.max(np.abs(gamma[:, :m, m:] - expect))),
        )
        res["ricci_mixed"] = max(
            res["ricci_mixed"], float(np.max(np.abs(ric[:m, m:])))
        )

        ric_b = cv.ricci(wp.base, pb)
        hess_f = cv.hessian(wp.base, wp.f, pb)
        res["ricci_base"] = max(
            res["ricci_base"],
            float(np.max(np.abs(ric[:m, :m] - (ric_b - (n / fv) * hess_f)))),
        )

        ric_f = cv.ricci(wp.fiber, pf)
        lap, norm2 = cv.laplacian_gradnorm(wp.base, wp.f, pb)
        factor = lap / fv + (n - 1) * norm2 / (fv * fv)
        res["ricci_fiber"] = max(
            res["ricci_fiber"],
            float(np.max(np.abs(ric[m:, m:] - (ric_f - factor * mj.g[m:, m:])))),
        )
    return res


def lie_split_residual(
    wp: WarpedProduct, xi_base: VectorField, xi_fiber: VectorField, pt
) -> np.ndarray:
    """Residual of the block split of L_xi g for xi = lift(xi_B) + lift(xi_F).

    The right side is assembled factor-wise:
    base block L_B, fiber block f^2 L_F + 2 f xi_B(f) g_F, zero off-blocks.
    """
    m = wp.m
    pb, pf = wp.split_point(pt)
    lhs = cv.lie_derivative_metric(wp.product, lift_sum(wp, xi_base, xi_fiber), pt)
    rhs = np.zeros_like(lhs)
    rhs[:m, :m] = cv.lie_derivative_metric(wp.base, xi_base, pb)
    lie_f = cv.lie_derivative_metric(wp.fiber, xi_fiber, pf)
    g_f = wp.fiber.metric_values(pf)
    fv = wp.f_value(pb)
    xbf = wp.xi_b_of_f(xi_base, pb)
    rhs[m:, m:] = fv * fv * lie_f + 2.0 * fv * xbf * g_f
    return lhs - rhs


def warping_rewrite_residual(
    wp: WarpedProduct, xi_base: VectorField, pt_base
) -> np.ndarray:
    """Residual of L_X g_B - (2n/f) Hess_B(f)  vs  L_{X - n grad ln f} g_B.

    The rewrite holds only for constant f: the two sides differ by the exact
    term 2 n dln(f) (x) dln(f), which warping_rewrite_defect predicts.
    """
    n = wp.n
    fv = wp.f_value(pt_base)
    lhs = cv.lie_derivative_metric(wp.base, xi_base, pt_base) - (
        2.0 * n / fv
    ) * cv.hessian(wp.base, wp.f, pt_base)
    mj = cv.metric_jet(wp.base, pt_base)
    xv, xg = cv.field_jets(wp.base, xi_base, pt_base)
    gv, gg = _grad_ln_f_arrays(wp, pt_base)
    rhs = cv.lie_metric_from_arrays(mj, xv - n * gv, xg - n * gg)
    return lhs - rhs


def warping_rewrite_defect(wp: WarpedProduct, pt_base) -> np.ndarray:
    """The exact gap of the rewrite: 2 n dln(f) (x) dln(f)."""
    jet = wp.base.jet(Unary("log", wp.f.expr), pt_base)
    return 2.0 * wp.n * np.outer(jet.grad, jet.grad)
