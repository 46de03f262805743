"""Scenario ingestion and suite orchestration.

A scenario is a JSON document declaring charts, warped products, named
fields, and a list of suite invocations.  Expressions are strings in the
expression grammar and are parsed eagerly so syntax errors surface at load
time with positions.  Re-running the same scenario with the same seed
produces a byte-identical report.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import curvature as cv
from . import solitons as so
from . import warped as wg
from .errors import EngineError, HypothesisFailedError, ScenarioParseError, ScenarioValidationError
from .manifolds import (
    DET_FLOOR,
    ChartManifold,
    SamplePlan,
    ScalarField,
    SolitonParams,
    VectorField,
    sample_points,
    validate_chart,
)
from .reports import (
    ERROR,
    FAIL,
    HYPOTHESIS_FAILED,
    PASS,
    SKIPPED,
    CheckResult,
    ReportFile,
    SuiteReport,
)

DEFAULT_PLAN = SamplePlan(count=64, seed=42, margin=0.05)


@dataclass
class Scenario:
    name: str
    charts: dict[str, ChartManifold]
    warps: dict[str, wg.WarpedProduct]
    scalars: dict[str, tuple[str, ScalarField]]
    vectors: dict[str, tuple[str, VectorField]]
    suites: list[dict]
    plan: SamplePlan = DEFAULT_PLAN

    def chart(self, name: str) -> ChartManifold:
        try:
            return self.charts[name]
        except KeyError:
            raise ScenarioValidationError(name, "unknown chart") from None

    def warp(self, name: str) -> wg.WarpedProduct:
        try:
            return self.warps[name]
        except KeyError:
            raise ScenarioValidationError(name, "unknown warped product") from None

    def scalar(self, name: str, chart: str) -> ScalarField:
        try:
            owner, f = self.scalars[name]
        except KeyError:
            raise ScenarioValidationError(name, "unknown scalar field") from None
        if owner != chart:
            raise ScenarioValidationError(name, f"lives on {owner}, not {chart}")
        return f

    def vector(self, name: str, chart: str) -> VectorField:
        try:
            owner, v = self.vectors[name]
        except KeyError:
            raise ScenarioValidationError(name, "unknown vector field") from None
        if owner != chart:
            raise ScenarioValidationError(name, f"lives on {owner}, not {chart}")
        return v


def _interval(pair) -> tuple[float, float]:
    def end(v, default):
        if v is None:
            return default
        if isinstance(v, str):
            if v == "inf":
                return math.inf
            if v == "-inf":
                return -math.inf
            raise ValueError(f"bad interval end {v!r}")
        return float(v)

    lo, hi = pair
    return end(lo, -math.inf), end(hi, math.inf)


def scenario_from_dict(doc: dict, name: str | None = None) -> Scenario:
    """Build and fully validate a Scenario from a parsed JSON document."""
    try:
        scen_name = name or doc["name"]
        plan_doc = doc.get("plan", {})
        plan = SamplePlan(
            count=int(plan_doc.get("count", DEFAULT_PLAN.count)),
            seed=int(plan_doc.get("seed", DEFAULT_PLAN.seed)),
            margin=float(plan_doc.get("margin", DEFAULT_PLAN.margin)),
        )
        charts: dict[str, ChartManifold] = {}
        for mname, mdoc in doc.get("manifolds", {}).items():
            sig = mdoc.get("signature")
            charts[mname] = ChartManifold(
                mdoc["coords"],
                mdoc["metric"],
                [_interval(p) for p in mdoc["domain"]],
                signature_hint=tuple(sig) if sig is not None else None,
            )
        warps: dict[str, wg.WarpedProduct] = {}
        for wname, wdoc in doc.get("warped", {}).items():
            if wname in charts:
                raise ScenarioValidationError(wname, "name already used by a manifold")
            if wdoc.get("kind") == "grw":
                fiber = charts.get(wdoc["fiber"])
                if fiber is None:
                    raise ScenarioValidationError(wdoc["fiber"], "unknown fiber chart")
                t_name = wdoc.get("t_name", "t")
                t_dom = _interval(wdoc["t_domain"])
                f = ScalarField.parse(wdoc["f"], ChartManifold((t_name,), [[-1.0]], [t_dom]))
                wp = wg.build_grw(f, fiber, t_dom, t_name=t_name)
            else:
                base = charts.get(wdoc["base"])
                fiber = charts.get(wdoc["fiber"])
                if base is None:
                    raise ScenarioValidationError(wdoc["base"], "unknown base chart")
                if fiber is None:
                    raise ScenarioValidationError(wdoc["fiber"], "unknown fiber chart")
                f = ScalarField.parse(wdoc["f"], base)
                wp = wg.build_warped(base, fiber, f)
            warps[wname] = wp
            charts[wname] = wp.product
            base_alias = f"{wname}.base"
            if base_alias not in charts:
                charts[base_alias] = wp.base
        scalars: dict[str, tuple[str, ScalarField]] = {}
        for sname, sdoc in doc.get("scalars", {}).items():
            owner = sdoc["chart"]
            if owner not in charts:
                raise ScenarioValidationError(sname, f"unknown chart {owner!r}")
            scalars[sname] = (owner, ScalarField.parse(sdoc["expr"], charts[owner]))
        vectors: dict[str, tuple[str, VectorField]] = {}
        for vname, vdoc in doc.get("vectors", {}).items():
            owner = vdoc["chart"]
            if owner not in charts:
                raise ScenarioValidationError(vname, f"unknown chart {owner!r}")
            vectors[vname] = (
                owner,
                VectorField.parse(vdoc["components"], charts[owner]),
            )
        suites = list(doc.get("suites", []))
    except KeyError as exc:
        raise ScenarioValidationError(str(exc.args[0]), "missing required key") from None
    scn = Scenario(scen_name, charts, warps, scalars, vectors, suites, plan)
    _validate_suites(scn)
    return scn


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioParseError(path, str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(path, f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return scenario_from_dict(doc)


def _validate_suites(scn: Scenario) -> None:
    for sdoc in scn.suites:
        kind = sdoc.get("suite")
        if kind not in _HANDLERS:
            raise ScenarioValidationError(str(kind), "unknown suite kind")
        if "manifold" in sdoc:
            scn.chart(sdoc["manifold"])
        if "warped" in sdoc:
            scn.warp(sdoc["warped"])
        wp = scn.warps.get(sdoc.get("warped", ""))
        if "vector" in sdoc:
            scn.vector(sdoc["vector"], sdoc["manifold"])
        if "scalar" in sdoc:
            scn.scalar(sdoc["scalar"], sdoc.get("manifold") or sdoc.get("warped"))
        if wp is not None:
            base_name = _factor_name(scn, wp.base)
            fiber_name = _factor_name(scn, wp.fiber)
            if "xi_base" in sdoc:
                scn.vector(sdoc["xi_base"], base_name)
            if "xi_fiber" in sdoc:
                scn.vector(sdoc["xi_fiber"], fiber_name)
            if "phi" in sdoc:
                scn.scalar(sdoc["phi"], base_name)


def _factor_name(scn: Scenario, chart: ChartManifold) -> str:
    for cname, c in scn.charts.items():
        if c is chart:
            return cname
    raise ScenarioValidationError("?", "factor chart is not registered")


def _params(sdoc: dict) -> SolitonParams:
    p = sdoc["params"]
    return SolitonParams(
        lam=float(p["lambda"]), pressure=float(p["pressure"]), n_conv=int(p["n_conv"])
    )


def _suite_plan(sdoc: dict, plan: SamplePlan) -> SamplePlan:
    p = sdoc.get("plan")
    if not p:
        return plan
    return SamplePlan(
        count=int(p.get("count", plan.count)),
        seed=int(p.get("seed", plan.seed)),
        margin=float(p.get("margin", plan.margin)),
    )


class _Tol:
    """Per-check tolerance with an optional global override."""

    def __init__(self, override: float | None):
        self.override = override

    def __call__(self, configured: float) -> float:
        return self.override if self.override is not None else configured


# ---------------------------------------------------------------------------
# suite handlers
# ---------------------------------------------------------------------------


def _h_curvature(scn, sdoc, plan, tol):
    M = scn.chart(sdoc["manifold"])
    expect = sdoc["expect"]
    pts = sample_points(M, plan)
    checks: list[CheckResult] = []

    gamma_max = riem_max = ric_max = scal_abs = 0.0
    ric_fac_res = scal_err = sect_err = 0.0
    traces = []
    rics, gs = [], []
    sect = expect.get("sectional")
    for pt in pts:
        mj = cv.metric_jet(M, pt)
        gamma = cv._christoffel_from(mj.g_inv, mj.dg)
        R = cv._riemann_from(mj)
        ric = np.einsum("iijk->jk", R)
        r = float(np.einsum("jk,jk->", mj.g_inv, ric))
        gamma_max = max(gamma_max, float(np.max(np.abs(gamma))))
        riem_max = max(riem_max, float(np.max(np.abs(R))))
        ric_max = max(ric_max, float(np.max(np.abs(ric))))
        scal_abs = max(scal_abs, abs(r))
        if "ricci_factor" in expect:
            c = expect["ricci_factor"]["value"]
            ric_fac_res = max(ric_fac_res, float(np.max(np.abs(ric - c * mj.g))))
        if "scalar" in expect:
            scal_err = max(scal_err, abs(r - expect["scalar"]["value"]))
        if sect:
            i, j = sect["i"], sect["j"]
            num = float(mj.g[i, :] @ R[:, i, j, j])
            den = mj.g[i, i] * mj.g[j, j] - mj.g[i, j] ** 2
            sect_err = max(sect_err, abs(num / den - sect["value"]))
        if "einstein" in expect:
            traces.append(float(np.trace(mj.g_inv @ ric)) / M.dim)
            rics.append(ric)
            gs.append(mj.g)

    if "flat" in expect:
        t = tol(expect["flat"])
        checks.append(CheckResult.compare("christoffel-max", gamma_max, t))
        checks.append(CheckResult.compare("riemann-max", riem_max, t))
        checks.append(CheckResult.compare("ricci-max", ric_max, t))
        checks.append(CheckResult.compare("scalar-max", scal_abs, t))
    if "ricci_max" in expect:
        checks.append(
            CheckResult.compare("ricci-max", ric_max, tol(expect["ricci_max"]))
        )
    if "ricci_factor" in expect:
        checks.append(
            CheckResult.compare(
                "ricci-vs-metric-factor", ric_fac_res, tol(expect["ricci_factor"]["tol"])
            )
        )
    if "scalar" in expect:
        checks.append(
            CheckResult.compare("scalar-curvature-error", scal_err, tol(expect["scalar"]["tol"]))
        )
    if sect:
        checks.append(
            CheckResult.compare("sectional-curvature-error", sect_err, tol(sect["tol"]))
        )
    if "einstein" in expect:
        e = expect["einstein"]
        c_fit = float(np.mean(traces))
        resid = max(float(np.max(np.abs(ric - c_fit * g))) for ric, g in zip(rics, gs))
        checks.append(CheckResult.compare("einstein-fit-residual", resid, tol(e["tol"])))
        if e.get("c") is not None:
            checks.append(
                CheckResult.compare(
                    "einstein-constant-error", abs(c_fit - e["c"]), tol(e.get("c_tol", e["tol"]))
                )
            )
    return checks, None


def _h_fd_cross_check(scn, sdoc, plan, tol):
    M = scn.chart(sdoc["manifold"])
    worst = cv.fd_worst_case(M, plan, h=float(sdoc.get("h", 1e-4)))
    checks = [
        CheckResult.compare("christoffel-deviation", worst.christoffel, tol(sdoc["christoffel_tol"])),
        CheckResult.compare("riemann-deviation", worst.riemann, tol(sdoc["riemann_tol"])),
        CheckResult.compare("ricci-deviation", worst.ricci, tol(sdoc["ricci_tol"])),
    ]
    return checks, None


def _h_classify(scn, sdoc, plan, tol):
    M = scn.chart(sdoc["manifold"])
    X = scn.vector(sdoc["vector"], sdoc["manifold"])
    t = tol(sdoc.get("tolerance", 1e-8))
    fc = so.classify_field(M, X, plan, tol=t)
    expect = sdoc["expect"]
    if expect == "unclassified":
        residual = fc.max_residual
    else:
        residual = fc.residuals[expect]
    status = PASS if fc.kind == expect else FAIL
    checks = [CheckResult(f"classified-as-{expect}", residual, t, status)]
    fac = sdoc.get("factor")
    if fac:
        values = fc.sigma if fac["kind"] == "conformal" else fc.alpha
        err = float(np.max(np.abs(values - fac["value"])))
        checks.append(CheckResult.compare("factor-error", err, tol(fac["tol"])))
    return checks, None


def _h_soliton(scn, sdoc, plan, tol):
    M = scn.chart(sdoc["manifold"])
    params = _params(sdoc)
    checks = []
    if "vector" in sdoc:
        X = scn.vector(sdoc["vector"], sdoc["manifold"])
        res = so.max_soliton_residual(M, X, params, plan)
        checks.append(CheckResult.compare("soliton-residual", res, tol(sdoc["tolerance"])))
    if "scalar" in sdoc:
        phi = scn.scalar(sdoc["scalar"], sdoc["manifold"])
        if sdoc.get("assert_residual", True):
            res = so.max_gradient_residual(M, phi, params, plan)
            checks.append(
                CheckResult.compare("gradient-residual", res, tol(sdoc["tolerance"]))
            )
        if "equivalence_tol" in sdoc:
            grad = cv.gradient_field(M, phi)
            diff = max(
                float(
                    np.max(
                        np.abs(
                            so.soliton_residual(M, grad, params, pt)
                            - so.gradient_soliton_residual(M, phi, params, pt)
                        )
                    )
                )
                for pt in sample_points(M, plan)
            )
            checks.append(
                CheckResult.compare(
                    "gradient-equivalence", diff, tol(sdoc["equivalence_tol"])
                )
            )
    return checks, params


def _h_warped_identities(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    t = tol(sdoc["tolerance"])
    res = wg.warped_ricci_identities(wp, plan)
    checks = [CheckResult.compare(name, value, t) for name, value in res.items()]
    return checks, None


def _h_lie_split(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    xb = scn.vector(sdoc["xi_base"], _factor_name(scn, wp.base))
    xf = scn.vector(sdoc["xi_fiber"], _factor_name(scn, wp.fiber))
    res = max(
        float(np.max(np.abs(wg.lie_split_residual(wp, xb, xf, pt))))
        for pt in sample_points(wp.product, plan)
    )
    return [CheckResult.compare("lie-split-residual", res, tol(sdoc["tolerance"]))], None


def _h_warping_rewrite(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    xb = scn.vector(sdoc["xi_base"], _factor_name(scn, wp.base))
    soft = not sdoc.get("assert", True)
    res = defect_mismatch = 0.0
    for pb in sample_points(wp.base, plan):
        r = wg.warping_rewrite_residual(wp, xb, pb)
        res = max(res, float(np.max(np.abs(r))))
        defect_mismatch = max(
            defect_mismatch,
            float(np.max(np.abs(r + wg.warping_rewrite_defect(wp, pb)))),
        )
    t = tol(sdoc["tolerance"])
    checks = [
        CheckResult.compare("rewrite-residual", res, t, soft=soft),
        CheckResult.compare("rewrite-defect-prediction", defect_mismatch, t),
    ]
    return checks, None


def _h_mixed_ricci(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    m = wp.m
    res = max(
        float(np.max(np.abs(cv.ricci(wp.product, pt)[:m, m:])))
        for pt in sample_points(wp.product, plan)
    )
    return [CheckResult.compare("mixed-ricci", res, tol(sdoc["tolerance"]))], None


def _h_induced(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    xb = scn.vector(sdoc["xi_base"], _factor_name(scn, wp.base))
    xf = scn.vector(sdoc["xi_fiber"], _factor_name(scn, wp.fiber))
    params = _params(sdoc)
    t = tol(sdoc["tolerance"])
    _, summary = so.induced_solitons(
        wp, xb, xf, params, plan, hypothesis_tol=sdoc.get("hypothesis_tol", 1e-8)
    )
    checks = [
        CheckResult.compare(
            "hypothesis-residual", summary["hypothesis_residual"], tol(sdoc.get("hypothesis_tol", 1e-8))
        ),
        CheckResult.compare("base-soliton-residual", summary["base_residual"], t),
        CheckResult.compare("fiber-soliton-residual", summary["fiber_residual"], t),
        CheckResult.compare(
            "mu-fiber-spread", summary["mu_fiber_spread"], tol(sdoc.get("spread_tol", t))
        ),
    ]
    return checks, params


def _h_gradient_induced(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    phi = scn.scalar(sdoc["scalar"], sdoc["warped"])
    params = _params(sdoc)
    t = tol(sdoc["tolerance"])
    out = so.gradient_induced_solitons(
        wp, phi, params, plan, hypothesis_tol=sdoc.get("hypothesis_tol", 1e-8)
    )
    checks = [
        CheckResult.compare(
            "hypothesis-residual", out["hypothesis_residual"], tol(sdoc.get("hypothesis_tol", 1e-8))
        ),
        CheckResult.compare("base-soliton-residual", out["base_residual"], t),
    ]
    if out["fiber_skipped"]:
        checks.append(CheckResult("fiber-soliton-residual", None, t, SKIPPED))
    else:
        checks.append(
            CheckResult.compare("fiber-soliton-residual", out["fiber_residual"], t)
        )
    return checks, params


def _h_concurrent(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    xb = scn.vector(sdoc["xi_base"], _factor_name(scn, wp.base))
    xf = scn.vector(sdoc["xi_fiber"], _factor_name(scn, wp.fiber))
    params = _params(sdoc)
    res = so.concurrent_suite(
        wp, xb, xf, params, plan, classify_tol=tol(sdoc.get("classify_tol", 1e-8))
    )
    tols = {
        "base_concurrent_residual": sdoc.get("classify_tol", 1e-8),
        "fiber_concurrent_residual": sdoc.get("classify_tol", 1e-8),
        "mu_equals_two": sdoc.get("mu_tol", 1e-12),
        "lambda_relation": sdoc.get("lambda_tol", 1e-12),
        "ricci_product": sdoc.get("ricci_tol", 1e-9),
        "ricci_base": sdoc.get("ricci_tol", 1e-9),
        "ricci_fiber": sdoc.get("ricci_tol", 1e-9),
        "potential_gradient_product": sdoc.get("potential_tol", 1e-9),
        "potential_gradient_base": sdoc.get("potential_tol", 1e-9),
        "potential_gradient_fiber": sdoc.get("potential_tol", 1e-9),
    }
    checks = [
        CheckResult.compare(name.replace("_", "-"), value, tol(tols[name]))
        for name, value in res.items()
    ]
    return checks, params


def _h_grw(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    phi = scn.scalar(sdoc["phi"], _factor_name(scn, wp.base))
    params = _params(sdoc)
    t = tol(sdoc["tolerance"])
    soft_ricci = sdoc.get("d_mode", "assert") == "finding"
    out = so.grw_suite(
        wp, phi, params, plan, hypothesis_tol=sdoc.get("hypothesis_tol", 1e-8)
    )
    checks = [
        CheckResult.compare("potential-derivative", out["potential_derivative"], t),
        CheckResult.compare("hessian-scaling", out["hessian_scaling"], t),
        CheckResult.compare("lie-scaling", out["lie_scaling"], t),
        CheckResult.compare("ricci-shift", out["ricci_shift"], t, soft=soft_ricci),
    ]
    if out["affine"]:
        et = tol(sdoc.get("einstein_tol", 1e-6))
        checks.append(
            CheckResult.compare("einstein-fit-residual", out["einstein_residual"], et)
        )
        if sdoc.get("einstein_c") is not None:
            checks.append(
                CheckResult.compare(
                    "einstein-constant-error",
                    abs(out["einstein_constant"] - sdoc["einstein_c"]),
                    et,
                )
            )
    else:
        checks.append(CheckResult("einstein-fit-residual", None, None, SKIPPED))
    return checks, params


def _h_killing_lifts(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    xb = scn.vector(sdoc["xi_base"], _factor_name(scn, wp.base))
    xf = scn.vector(sdoc["xi_fiber"], _factor_name(scn, wp.fiber))
    t = tol(sdoc["tolerance"])
    fc_b = so.classify_field(wp.base, xb, plan, tol=t)
    fc_f = so.classify_field(wp.fiber, xf, plan, tol=t)
    checks = [
        CheckResult.compare("base-killing-residual", fc_b.residuals["killing"], t),
        CheckResult.compare("fiber-killing-residual", fc_f.residuals["killing"], t),
    ]
    base_pts = sample_points(wp.base, plan)
    xbf_max = max(abs(wp.xi_b_of_f(xb, pb)) for pb in base_pts)
    xi = wg.lift_sum(wp, xb, xf)
    if xbf_max <= t:
        params = _params(sdoc)
        res = so.max_soliton_residual(wp.product, xi, params, plan)
        checks.append(CheckResult.compare("soliton-residual", res, t))
        c_fit, resid = so.einstein_fit(wp.product, plan)
        checks.append(CheckResult.compare("einstein-fit-residual", resid, t))
        checks.append(
            CheckResult.compare(
                "einstein-constant-error", abs(c_fit - params.mu / 2.0), t
            )
        )
        return checks, params
    # nonzero xi_B(f): the Lie derivative reduces to the pure warping term
    m = wp.m
    res = 0.0
    for pt in sample_points(wp.product, plan):
        pb, pf = wp.split_point(pt)
        lie = cv.lie_derivative_metric(wp.product, xi, pt)
        expected = np.zeros_like(lie)
        expected[m:, m:] = (
            2.0 * wp.f_value(pb) * wp.xi_b_of_f(xb, pb) * wp.fiber.metric_values(pf)
        )
        res = max(res, float(np.max(np.abs(lie - expected))))
    checks.append(CheckResult.compare("lie-equals-warping-term", res, t))
    return checks, None


def _h_conformal_lifts(scn, sdoc, plan, tol):
    wp = scn.warp(sdoc["warped"])
    xb = scn.vector(sdoc["xi_base"], _factor_name(scn, wp.base))
    xf = scn.vector(sdoc["xi_fiber"], _factor_name(scn, wp.fiber))
    params = _params(sdoc)
    t = tol(sdoc["tolerance"])
    mu = params.mu
    m = wp.m

    fc_b = so.classify_field(wp.base, xb, plan, tol=t)
    fc_f = so.classify_field(wp.fiber, xf, plan, tol=t)
    checks = [
        CheckResult.compare("base-conformal-residual", fc_b.residuals["conformal"], t),
        CheckResult.compare("fiber-conformal-residual", fc_f.residuals["conformal"], t),
    ]
    xi = wg.lift_sum(wp, xb, xf)
    hyp = so.max_soliton_residual(wp.product, xi, params, plan)
    checks.append(CheckResult.compare("soliton-hypothesis", hyp, t))

    # rho on each factor is half the pointwise conformal factor
    rho_f = fc_f.sigma / 2.0
    assembly = relation = einstein = 0.0
    base_pts = sample_points(wp.base, plan)
    rho_b_shifted = []
    for pb in base_pts:
        mjb = cv.metric_jet(wp.base, pb)
        lie_b = cv.lie_derivative_metric(wp.base, xb, pb)
        rho_b = float(np.trace(mjb.g_inv @ lie_b)) / (2.0 * wp.base.dim)
        xbf = wp.xi_b_of_f(xb, pb)
        fv = wp.f_value(pb)
        rho_b_shifted.append(rho_b - xbf / fv)
    relation = max(
        abs(max(rho_b_shifted) - float(np.min(rho_f))),
        abs(min(rho_b_shifted) - float(np.max(rho_f))),
    )
    checks.append(CheckResult.compare("factor-relation", relation, t))

    for pt in sample_points(wp.product, plan):
        pb, pf = wp.split_point(pt)
        mj = cv.metric_jet(wp.product, pt)
        ric = cv._ricci_from(mj)
        lie_b = cv.lie_derivative_metric(wp.base, xb, pb)
        mjb = cv.metric_jet(wp.base, pb)
        rho_b = float(np.trace(mjb.g_inv @ lie_b)) / (2.0 * wp.base.dim)
        lie_f = cv.lie_derivative_metric(wp.fiber, xf, pf)
        mjf = cv.metric_jet(wp.fiber, pf)
        rho_fp = float(np.trace(mjf.g_inv @ lie_f)) / (2.0 * wp.fiber.dim)
        fv = wp.f_value(pb)
        xbf = wp.xi_b_of_f(xb, pb)
        rhs = 0.5 * mu * mj.g.copy()
        rhs[:m, :m] -= rho_b * mjb.g
        rhs[m:, m:] -= fv * fv * (rho_fp + xbf / fv) * mjf.g
        assembly = max(assembly, float(np.max(np.abs(ric - rhs))))
        einstein = max(
            einstein, float(np.max(np.abs(ric - (0.5 * mu - rho_b) * mj.g)))
        )
    checks.append(CheckResult.compare("ricci-block-assembly", assembly, t))
    if relation <= t:
        checks.append(CheckResult.compare("einstein-residual", einstein, t))
    else:
        checks.append(CheckResult("einstein-residual", None, t, SKIPPED))
    return checks, params


def _h_warping_quadratic(scn, sdoc, plan, tol):
    checks = []
    for i, case in enumerate(sdoc["cases"]):
        value = so.warping_quadratic_residual(
            case["f"], case["xi_b_f"], case["rho"], case["mu"], case["beta"],
            case["k"], case["n"],
        )
        checks.append(
            CheckResult.compare(f"case-{i}", abs(value - case["expected"]), tol(0.0))
        )
    return checks, None


def _h_concircular_lambda(scn, sdoc, plan, tol):
    checks = []
    for i, case in enumerate(sdoc["cases"]):
        lam, cls, _ = so.concircular_lambda(case["alpha"], case["p"], case["n"])
        err = abs(lam - case["lambda"])
        status = PASS if (err <= tol(0.0) and cls == case["class"]) else FAIL
        checks.append(CheckResult(f"case-{i}-{case['class']}", err, tol(0.0), status))
    return checks, None


_HANDLERS = {
    "curvature": _h_curvature,
    "fd-cross-check": _h_fd_cross_check,
    "classify": _h_classify,
    "soliton": _h_soliton,
    "warped-ricci-identities": _h_warped_identities,
    "lie-split": _h_lie_split,
    "warping-rewrite": _h_warping_rewrite,
    "mixed-ricci": _h_mixed_ricci,
    "induced-solitons": _h_induced,
    "gradient-induced-solitons": _h_gradient_induced,
    "concurrent-lifts": _h_concurrent,
    "grw-soliton": _h_grw,
    "killing-lifts": _h_killing_lifts,
    "conformal-lifts": _h_conformal_lifts,
    "warping-quadratic": _h_warping_quadratic,
    "concircular-lambda": _h_concircular_lambda,
}


def _chart_validation(scn: Scenario, plan: SamplePlan) -> SuiteReport:
    report = SuiteReport("chart-validation", provenance={"seed": plan.seed, "count": plan.count, "n_conv": None})
    for name in sorted(scn.charts):
        info = validate_chart(scn.charts[name], plan)
        shortfall = max(0.0, DET_FLOOR - info["min_abs_det"])
        report.checks.append(
            CheckResult.compare(f"{name}:nondegenerate", shortfall, 0.0)
        )
        if info["signature_mismatches"] is not None:
            report.checks.append(
                CheckResult.compare(
                    f"{name}:signature", float(info["signature_mismatches"]), 0.0
                )
            )
    return report


def run_scenario(
    scn: Scenario,
    tolerance: float | None = None,
    seed: int | None = None,
    count: int | None = None,
) -> ReportFile:
    """Execute every suite in declaration order and assemble the report."""
    plan = scn.plan
    if seed is not None or count is not None:
        plan = SamplePlan(
            count=count if count is not None else plan.count,
            seed=seed if seed is not None else plan.seed,
            margin=plan.margin,
        )
    tol = _Tol(tolerance)
    suites = [_chart_validation(scn, plan)]
    for sdoc in scn.suites:
        name = sdoc.get("name", sdoc["suite"])
        suite_plan = _suite_plan(sdoc, plan)
        prov = {"seed": suite_plan.seed, "count": suite_plan.count, "n_conv": None}
        report = SuiteReport(name, provenance=prov)
        try:
            checks, params = _HANDLERS[sdoc["suite"]](scn, sdoc, suite_plan, tol)
            report.checks = checks
            if params is not None:
                prov["n_conv"] = params.n_conv
        except HypothesisFailedError as exc:
            report.checks = [
                CheckResult("hypothesis", exc.max_residual, None, HYPOTHESIS_FAILED)
            ]
        except EngineError as exc:
            report.checks = [
                CheckResult(f"error: {exc}", None, None, ERROR)
            ]
        suites.append(report)
    return ReportFile(scn.name, suites, engine_version=__version__)
