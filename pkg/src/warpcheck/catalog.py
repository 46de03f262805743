"""Built-in catalog of verification scenarios.

Each entry is a plain scenario document (the same schema the JSON loader
accepts), so running a catalog name exercises exactly the code path a user
scenario file would.
"""

from __future__ import annotations

import copy

from .scenario import Scenario, scenario_from_dict

_PLAN = {"count": 64, "seed": 42, "margin": 0.05}

_E2 = {
    "coords": ["x", "y"],
    "domain": [[-5, 5], [-5, 5]],
    "metric": [["1", "0"], ["0", "1"]],
    "signature": [2, 0],
}

_PLANE_B = {
    "coords": ["x1", "x2"],
    "domain": [[-4, 4], [-4, 4]],
    "metric": [["1", "0"], ["0", "1"]],
    "signature": [2, 0],
}

_PLANE_F = {
    "coords": ["y1", "y2"],
    "domain": [[-4, 4], [-4, 4]],
    "metric": [["1", "0"], ["0", "1"]],
    "signature": [2, 0],
}

_HYPERBOLIC = {
    "coords": ["x", "y"],
    "domain": [[-4, 4], [0.3, 3]],
    "metric": [["1/y^2", "0"], ["0", "1/y^2"]],
    "signature": [2, 0],
}

_FLAT_PARAMS = {"lambda": 0.5, "pressure": 0.0, "n_conv": 2}       # mu = 0
_MU2_PARAMS = {"lambda": 1.5, "pressure": 0.0, "n_conv": 2}        # mu = 2
_MU2_PARAMS_4 = {"lambda": 1.25, "pressure": 0.0, "n_conv": 4}     # mu = 2

CATALOG: dict[str, dict] = {}

CATALOG["euclidean-flat"] = {
    "name": "euclidean-flat",
    "plan": _PLAN,
    "manifolds": {"E2": _E2},
    "vectors": {
        "dx": {"chart": "E2", "components": ["1", "0"]},
        "pos": {"chart": "E2", "components": ["x", "y"]},
        "stretch": {"chart": "E2", "components": ["x", "0"]},
        "halfpos": {"chart": "E2", "components": ["0.5*x", "0.5*y"]},
        "zero": {"chart": "E2", "components": ["0", "0"]},
    },
    "scalars": {"quad": {"chart": "E2", "expr": "(x^2 + y^2)/2"}},
    "suites": [
        {"name": "curvature", "suite": "curvature", "manifold": "E2",
         "expect": {"flat": 1e-12,
                    "einstein": {"c": 0.0, "tol": 1e-12, "c_tol": 1e-8}}},
        {"name": "fd-oracle", "suite": "fd-cross-check", "manifold": "E2", "h": 1e-4,
         "christoffel_tol": 1e-10, "riemann_tol": 1e-10, "ricci_tol": 1e-10},
        {"name": "classify-translation", "suite": "classify", "manifold": "E2",
         "vector": "dx", "expect": "killing", "tolerance": 1e-10},
        {"name": "classify-position", "suite": "classify", "manifold": "E2",
         "vector": "pos", "expect": "concurrent", "tolerance": 1e-10,
         "factor": {"kind": "conformal", "value": 2.0, "tol": 1e-10}},
        {"name": "classify-stretch", "suite": "classify", "manifold": "E2",
         "vector": "stretch", "expect": "unclassified", "tolerance": 1e-8},
        {"name": "classify-half-position", "suite": "classify", "manifold": "E2",
         "vector": "halfpos", "expect": "concircular", "tolerance": 1e-10,
         "factor": {"kind": "concircular", "value": 0.5, "tol": 1e-10}},
        {"name": "soliton-zero-field", "suite": "soliton", "manifold": "E2",
         "vector": "zero", "params": _FLAT_PARAMS, "tolerance": 1e-12},
        {"name": "soliton-position", "suite": "soliton", "manifold": "E2",
         "vector": "pos", "params": _MU2_PARAMS, "tolerance": 1e-12},
        {"name": "soliton-concircular", "suite": "soliton", "manifold": "E2",
         "vector": "halfpos",
         "params": {"lambda": 1.0, "pressure": 0.0, "n_conv": 2},  # mu = 1 = 2*alpha
         "tolerance": 1e-12},
        {"name": "gradient-soliton", "suite": "soliton", "manifold": "E2",
         "scalar": "quad", "params": _MU2_PARAMS, "tolerance": 1e-12,
         "equivalence_tol": 1e-9},
        {"name": "concircular-lambda", "suite": "concircular-lambda", "cases": [
            {"alpha": 1.0, "p": -2.5, "n": 2, "lambda": 0.0, "class": "steady"},
            {"alpha": 0.0, "p": 0.0, "n": 2, "lambda": 0.25, "class": "shrinking"},
            {"alpha": -1.0, "p": 0.0, "n": 2, "lambda": -0.75, "class": "expanding"},
        ]},
        {"name": "warping-quadratic", "suite": "warping-quadratic", "cases": [
            {"f": 1.0, "xi_b_f": 0.0, "rho": 1.0, "mu": 2.0, "beta": 1.0, "k": 1.0,
             "n": 2, "expected": 0.0},
            {"f": 1.0, "xi_b_f": 0.0, "rho": 0.0, "mu": 2.0, "beta": 1.0, "k": 0.0,
             "n": 2, "expected": 0.0},
            {"f": 2.0, "xi_b_f": 1.0, "rho": 1.0, "mu": 2.0, "beta": 3.0, "k": 1.0,
             "n": 3, "expected": 6.0},
        ]},
    ],
}

CATALOG["sphere-unit"] = {
    "name": "sphere-unit",
    "plan": _PLAN,
    "manifolds": {
        "S2": {
            "coords": ["theta", "phi"],
            "domain": [[0, 3.141592653589793], [0, 6.283185307179586]],
            "metric": [["1", "0"], ["0", "sin(theta)^2"]],
            "signature": [2, 0],
        }
    },
    "vectors": {"rot": {"chart": "S2", "components": ["0", "1"]}},
    "suites": [
        {"name": "fd-oracle", "suite": "fd-cross-check", "manifold": "S2", "h": 1e-4,
         "christoffel_tol": 1e-5, "riemann_tol": 1e-3, "ricci_tol": 1e-3},
        {"name": "curvature", "suite": "curvature", "manifold": "S2",
         "expect": {"ricci_factor": {"value": 1.0, "tol": 1e-8},
                    "scalar": {"value": 2.0, "tol": 1e-8},
                    "sectional": {"i": 0, "j": 1, "value": 1.0, "tol": 1e-9},
                    "einstein": {"c": 1.0, "tol": 1e-8, "c_tol": 1e-8}}},
        {"name": "classify-rotation", "suite": "classify", "manifold": "S2",
         "vector": "rot", "expect": "killing", "tolerance": 1e-10},
    ],
}

CATALOG["hyperbolic-halfplane"] = {
    "name": "hyperbolic-halfplane",
    "plan": _PLAN,
    "manifolds": {
        "H2": _HYPERBOLIC,
        "H2S": {
            "coords": ["x", "y"],
            "domain": [[-4, 4], [0.3, 3]],
            "metric": [["2/y^2", "0"], ["0", "2/y^2"]],
            "signature": [2, 0],
        },
    },
    "suites": [
        {"name": "fd-oracle", "suite": "fd-cross-check", "manifold": "H2", "h": 1e-4,
         "christoffel_tol": 1e-5, "riemann_tol": 1e-3, "ricci_tol": 1e-3},
        {"name": "curvature", "suite": "curvature", "manifold": "H2",
         "expect": {"sectional": {"i": 0, "j": 1, "value": -1.0, "tol": 1e-9},
                    "scalar": {"value": -2.0, "tol": 1e-8},
                    "einstein": {"c": -1.0, "tol": 1e-8, "c_tol": 1e-8}}},
        {"name": "unit-scalar-constraint", "suite": "curvature", "manifold": "H2S",
         "expect": {"scalar": {"value": -1.0, "tol": 1e-8}}},
    ],
}

CATALOG["polar-warped"] = {
    "name": "polar-warped",
    "plan": _PLAN,
    "manifolds": {
        "B1": {"coords": ["t"], "domain": [[0.2, 5]], "metric": [["1"]],
               "signature": [1, 0]},
        "F1": {"coords": ["u"], "domain": [[-3, 3]], "metric": [["1"]],
               "signature": [1, 0]},
    },
    "warped": {"POL": {"base": "B1", "fiber": "F1", "f": "t"}},
    "vectors": {
        "xiB-scale": {"chart": "B1", "components": ["t"]},
        "xiB-unit": {"chart": "B1", "components": ["1"]},
        "xiF-unit": {"chart": "F1", "components": ["1"]},
        "zeroF": {"chart": "F1", "components": ["0"]},
    },
    "scalars": {"gpot": {"chart": "POL", "expr": "t^2/2"}},
    "suites": [
        {"name": "curvature", "suite": "curvature", "manifold": "POL",
         "expect": {"flat": 1e-10,
                    "einstein": {"c": 0.0, "tol": 1e-10, "c_tol": 1e-10}}},
        {"name": "fd-oracle", "suite": "fd-cross-check", "manifold": "POL", "h": 1e-4,
         "christoffel_tol": 1e-5, "riemann_tol": 1e-3, "ricci_tol": 1e-3},
        {"name": "ricci-identities", "suite": "warped-ricci-identities",
         "warped": "POL", "tolerance": 1e-8},
        {"name": "lie-split", "suite": "lie-split", "warped": "POL",
         "xi_base": "xiB-scale", "xi_fiber": "xiF-unit", "tolerance": 1e-8},
        {"name": "warping-rewrite", "suite": "warping-rewrite", "warped": "POL",
         "xi_base": "xiB-scale", "tolerance": 1e-8, "assert": False},
        {"name": "mixed-ricci", "suite": "mixed-ricci", "warped": "POL",
         "tolerance": 1e-9},
        {"name": "killing-lifts-defect", "suite": "killing-lifts", "warped": "POL",
         "xi_base": "xiB-unit", "xi_fiber": "zeroF", "tolerance": 1e-10},
        {"name": "gaussian-gradient-soliton", "suite": "soliton", "manifold": "POL",
         "scalar": "gpot", "params": _MU2_PARAMS, "tolerance": 1e-9,
         "equivalence_tol": 1e-9},
    ],
}

CATALOG["sphere-as-warped"] = {
    "name": "sphere-as-warped",
    "plan": _PLAN,
    "manifolds": {
        "BS": {"coords": ["theta"], "domain": [[0, 3.141592653589793]],
               "metric": [["1"]], "signature": [1, 0]},
        "FS": {"coords": ["phi"], "domain": [[0, 6.283185307179586]],
               "metric": [["1"]], "signature": [1, 0]},
    },
    "warped": {"SW": {"base": "BS", "fiber": "FS", "f": "sin(theta)"}},
    "vectors": {
        "xiB-theta": {"chart": "BS", "components": ["1"]},
        "zeroB": {"chart": "BS", "components": ["0"]},
        "xiF-phi": {"chart": "FS", "components": ["1"]},
        "zeroF": {"chart": "FS", "components": ["0"]},
    },
    "suites": [
        {"name": "ricci-identities", "suite": "warped-ricci-identities",
         "warped": "SW", "tolerance": 1e-8},
        {"name": "lie-split-base", "suite": "lie-split", "warped": "SW",
         "xi_base": "xiB-theta", "xi_fiber": "zeroF", "tolerance": 1e-8},
        {"name": "lie-split-fiber", "suite": "lie-split", "warped": "SW",
         "xi_base": "zeroB", "xi_fiber": "xiF-phi", "tolerance": 1e-8},
        {"name": "warping-rewrite", "suite": "warping-rewrite", "warped": "SW",
         "xi_base": "xiB-theta", "tolerance": 1e-8, "assert": False},
        {"name": "mixed-ricci", "suite": "mixed-ricci", "warped": "SW",
         "tolerance": 1e-9},
        {"name": "killing-lifts-einstein", "suite": "killing-lifts", "warped": "SW",
         "xi_base": "zeroB", "xi_fiber": "xiF-phi", "params": _MU2_PARAMS,
         "tolerance": 1e-8},
        {"name": "curvature", "suite": "curvature", "manifold": "SW",
         "expect": {"ricci_factor": {"value": 1.0, "tol": 1e-8}}},
    ],
}

CATALOG["direct-product-concurrent"] = {
    "name": "direct-product-concurrent",
    "plan": _PLAN,
    "manifolds": {"B2": _PLANE_B, "F2": _PLANE_F},
    "warped": {"DP": {"base": "B2", "fiber": "F2", "f": "1"}},
    "vectors": {
        "posB": {"chart": "B2", "components": ["x1", "x2"]},
        "posF": {"chart": "F2", "components": ["y1", "y2"]},
        "posM": {"chart": "DP", "components": ["x1", "x2", "y1", "y2"]},
    },
    "scalars": {"quad4": {"chart": "DP", "expr": "(x1^2 + x2^2 + y1^2 + y2^2)/2"}},
    "suites": [
        {"name": "concurrent-lifts", "suite": "concurrent-lifts", "warped": "DP",
         "xi_base": "posB", "xi_fiber": "posF", "params": _MU2_PARAMS_4,
         "classify_tol": 1e-10, "mu_tol": 1e-12, "lambda_tol": 1e-12,
         "ricci_tol": 1e-9, "potential_tol": 1e-9},
        {"name": "conformal-lifts", "suite": "conformal-lifts", "warped": "DP",
         "xi_base": "posB", "xi_fiber": "posF", "params": _MU2_PARAMS_4,
         "tolerance": 1e-8},
        {"name": "soliton-product", "suite": "soliton", "manifold": "DP",
         "vector": "posM", "scalar": "quad4", "params": _MU2_PARAMS_4,
         "tolerance": 1e-12, "equivalence_tol": 1e-9},
    ],
}

CATALOG["thm21-direct-product"] = {
    "name": "thm21-direct-product",
    "plan": _PLAN,
    "manifolds": {"B2": _PLANE_B, "F2": _PLANE_F},
    "warped": {"DP": {"base": "B2", "fiber": "F2", "f": "1"}},
    "vectors": {
        "posB": {"chart": "B2", "components": ["x1", "x2"]},
        "posF": {"chart": "F2", "components": ["y1", "y2"]},
    },
    "suites": [
        {"name": "induced-solitons", "suite": "induced-solitons", "warped": "DP",
         "xi_base": "posB", "xi_fiber": "posF", "params": _MU2_PARAMS_4,
         "tolerance": 1e-9, "spread_tol": 1e-9},
    ],
}

CATALOG["thm22-constant-warping"] = {
    "name": "thm22-constant-warping",
    "plan": _PLAN,
    "manifolds": {"B2": _PLANE_B, "F2": _PLANE_F},
    "warped": {"CW": {"base": "B2", "fiber": "F2", "f": "2"}},
    "scalars": {
        "pot": {"chart": "CW", "expr": "(x1^2 + x2^2 + 4*(y1^2 + y2^2))/2"}
    },
    "suites": [
        {"name": "gradient-induced", "suite": "gradient-induced-solitons",
         "warped": "CW", "scalar": "pot", "params": _MU2_PARAMS_4,
         "tolerance": 1e-9},
        {"name": "gradient-soliton", "suite": "soliton", "manifold": "CW",
         "scalar": "pot", "params": _MU2_PARAMS_4, "tolerance": 1e-12,
         "equivalence_tol": 1e-9},
    ],
}

CATALOG["grw-static"] = {
    "name": "grw-static",
    "plan": _PLAN,
    "manifolds": {"F2": _PLANE_F},
    "warped": {"M": {"kind": "grw", "fiber": "F2", "f": "1", "t_domain": [-3, 3]}},
    "scalars": {
        "phi": {"chart": "M.base", "expr": "t"},
        "psi": {"chart": "M", "expr": "-t"},
    },
    "suites": [
        {"name": "grw-soliton", "suite": "grw-soliton", "warped": "M",
         "phi": "phi", "params": _FLAT_PARAMS, "tolerance": 1e-8,
         "einstein_tol": 1e-6, "einstein_c": 0.0},
        {"name": "curvature", "suite": "curvature", "manifold": "M",
         "expect": {"flat": 1e-10}},
        {"name": "mixed-ricci", "suite": "mixed-ricci", "warped": "M",
         "tolerance": 1e-9},
        {"name": "gradient-soliton", "suite": "soliton", "manifold": "M",
         "scalar": "psi", "params": _FLAT_PARAMS, "tolerance": 1e-12,
         "equivalence_tol": 1e-9},
    ],
}

CATALOG["grw-milne"] = {
    "name": "grw-milne",
    "plan": _PLAN,
    "manifolds": {"FH": _HYPERBOLIC},
    "warped": {"M": {"kind": "grw", "fiber": "FH", "f": "t", "t_domain": [0.3, 4]}},
    "scalars": {
        "phi": {"chart": "M.base", "expr": "t^2/2"},
        "psi": {"chart": "M", "expr": "-t^2/2"},
    },
    "suites": [
        {"name": "grw-soliton", "suite": "grw-soliton", "warped": "M",
         "phi": "phi", "params": _MU2_PARAMS, "tolerance": 1e-8,
         "einstein_tol": 1e-6, "einstein_c": 0.0},
        {"name": "curvature", "suite": "curvature", "manifold": "M",
         "expect": {"ricci_max": 1e-8}},
        {"name": "fd-oracle", "suite": "fd-cross-check", "manifold": "M", "h": 1e-4,
         "christoffel_tol": 1e-5, "riemann_tol": 1e-3, "ricci_tol": 1e-3},
        {"name": "gradient-soliton", "suite": "soliton", "manifold": "M",
         "scalar": "psi", "params": _MU2_PARAMS, "tolerance": 1e-8,
         "equivalence_tol": 1e-9},
    ],
}

CATALOG["grw-exponential"] = {
    "name": "grw-exponential",
    "plan": _PLAN,
    "manifolds": {"F2": _PLANE_F},
    "warped": {"M": {"kind": "grw", "fiber": "F2", "f": "exp(t)",
                     "t_domain": [-1.5, 1.5]}},
    "scalars": {
        "phi": {"chart": "M.base", "expr": "exp(t)"},
        "psi": {"chart": "M", "expr": "-exp(t)"},
    },
    "suites": [
        {"name": "grw-soliton", "suite": "grw-soliton", "warped": "M",
         "phi": "phi", "params": {"lambda": 1.0, "pressure": 0.0, "n_conv": 2},
         "tolerance": 1e-8, "d_mode": "finding"},
        {"name": "curvature", "suite": "curvature", "manifold": "M",
         "expect": {"einstein": {"c": 2.0, "tol": 1e-8, "c_tol": 1e-8}}},
        {"name": "gradient-equivalence", "suite": "soliton", "manifold": "M",
         "scalar": "psi", "params": {"lambda": 1.0, "pressure": 0.0, "n_conv": 2},
         "tolerance": 1e-8, "assert_residual": False, "equivalence_tol": 1e-9},
    ],
}

CATALOG["grw-einstein-affine"] = {
    "name": "grw-einstein-affine",
    "plan": _PLAN,
    "manifolds": {
        "FH4": {
            "coords": ["x", "y"],
            "domain": [[-4, 4], [0.3, 3]],
            "metric": [["1/(4*y^2)", "0"], ["0", "1/(4*y^2)"]],
            "signature": [2, 0],
        }
    },
    "warped": {"M": {"kind": "grw", "fiber": "FH4", "f": "2*t + 1",
                     "t_domain": [0.2, 3]}},
    "scalars": {
        "phi": {"chart": "M.base", "expr": "t^2 + t"},
        "psi": {"chart": "M", "expr": "-(t^2 + t)"},
    },
    "suites": [
        {"name": "grw-soliton", "suite": "grw-soliton", "warped": "M",
         "phi": "phi", "params": {"lambda": 2.5, "pressure": 0.0, "n_conv": 2},
         "tolerance": 1e-8, "einstein_tol": 1e-6, "einstein_c": 0.0},
        {"name": "curvature", "suite": "curvature", "manifold": "M",
         "expect": {"ricci_max": 1e-8}},
        {"name": "gradient-equivalence", "suite": "soliton", "manifold": "M",
         "scalar": "psi", "params": {"lambda": 2.5, "pressure": 0.0, "n_conv": 2},
         "tolerance": 1e-8, "assert_residual": False, "equivalence_tol": 1e-9},
    ],
}


def catalog() -> list[str]:
    """Names of the built-in scenarios."""
    return sorted(CATALOG)


def get_scenario(name: str) -> Scenario:
    try:
        doc = CATALOG[name]
    except KeyError:
        raise KeyError(
            f"unknown catalog scenario {name!r}; available: {', '.join(catalog())}"
        ) from None
    return scenario_from_dict(copy.deepcopy(doc))
