"""Chart manifolds, fields, sampling plans and soliton parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EmptyDomainError, SignatureError, SingularMetricError
from .exprs import Constant, Expr, eval_jet2, eval_value, parse_expr

# Unbounded interval ends are clamped here before sampling.
DOMAIN_CLAMP = 10.0
DET_FLOOR = 1e-12

Interval = tuple[float, float]


def _as_expr(entry, coords: Sequence[str]) -> Expr:
    if isinstance(entry, Expr):
        return entry
    if isinstance(entry, str):
        return parse_expr(entry, coords)
    if isinstance(entry, (int, float)):
        return Constant(float(entry))
    raise TypeError(f"cannot interpret {entry!r} as an expression")


@dataclass(frozen=True)
class ScalarField:
    """A scalar function of one chart's coordinates."""

    expr: Expr

    @classmethod
    def parse(cls, text: str, chart: "ChartManifold") -> "ScalarField":
        return cls(parse_expr(text, chart.coord_names))


@dataclass(frozen=True)
class VectorField:
    """Contravariant components X^i, one expression per coordinate."""

    components: tuple[Expr, ...]

    @classmethod
    def parse(cls, texts: Sequence[str], chart: "ChartManifold") -> "VectorField":
        if len(texts) != chart.dim:
            raise ValueError(f"expected {chart.dim} components, got {len(texts)}")
        return cls(tuple(parse_expr(t, chart.coord_names) for t in texts))


class ChartManifold:
    """A single coordinate chart: names, metric expression matrix, domain.

    The metric is stored exactly symmetric: the upper triangle is
    authoritative and mirrored below, so g_ij and g_ji are the same tree.
    Indefinite signatures are allowed; ``signature_hint`` is (n_plus, n_minus).
    """

    def __init__(
        self,
        coord_names: Sequence[str],
        metric,
        domain: Sequence[Interval],
        signature_hint: tuple[int, int] | None = None,
    ):
        names = tuple(coord_names)
        if not names:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise ValueError("coordinate names must be distinct")
        d = len(names)
        if len(metric) != d or any(len(row) != d for row in metric):
            raise ValueError(f"metric must be {d}x{d}")
        if len(domain) != d:
            raise ValueError(f"domain must have {d} intervals")
        for lo, hi in domain:
            if not lo < hi:
                raise ValueError(f"empty domain interval ({lo}, {hi})")
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                a, b = min(i, j), max(i, j)
                row.append(_as_expr(metric[a][b], names))
            rows.append(tuple(row))
        self.dim = d
        self.coord_names = names
        self.metric = tuple(rows)
        self.domain = tuple((float(lo), float(hi)) for lo, hi in domain)
        self.signature_hint = signature_hint

    def jet(self, expr: Expr, point):
        return eval_jet2(expr, self.coord_names, point)

    def value(self, expr: Expr, point) -> float:
        return eval_value(expr, self.coord_names, point)

    def metric_values(self, point) -> np.ndarray:
        """Metric matrix by plain value evaluation (no jets)."""
        d = self.dim
        g = np.empty((d, d))
        for i in range(d):
            for j in range(i, d):
                v = eval_value(self.metric[i][j], self.coord_names, point)
                g[i, j] = v
                g[j, i] = v
        return g

    def scalar(self, text: str) -> ScalarField:
        return ScalarField.parse(text, self)

    def vector(self, *texts: str) -> VectorField:
        return VectorField.parse(texts, self)

    def __repr__(self) -> str:
        return f"ChartManifold(coords={self.coord_names})"


@dataclass(frozen=True)
class SamplePlan:
    """Deterministic sampling: points are a pure function of (seed, count, domains)."""

    count: int
    seed: int
    margin: float = 0.0

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")
        if not 0.0 <= self.margin < 0.5:
            raise ValueError("margin must lie in [0, 0.5)")


def shrunk_domain(M: ChartManifold, margin: float) -> list[Interval]:
    """Clamp unbounded ends to +-DOMAIN_CLAMP, then shrink each side by margin."""
    out = []
    for lo, hi in M.domain:
        lo = max(lo, -DOMAIN_CLAMP)
        hi = min(hi, DOMAIN_CLAMP)
        width = hi - lo
        lo2 = lo + margin * width
        hi2 = hi - margin * width
        if not lo2 < hi2:
            raise EmptyDomainError(f"interval ({lo}, {hi}) collapses at margin {margin}")
        out.append((lo2, hi2))
    return out


def sample_points(M: ChartManifold, plan: SamplePlan) -> np.ndarray:
    """Seeded uniform samples inside the margin-shrunk domain, shape (count, d)."""
    box = shrunk_domain(M, plan.margin)
    rng = np.random.default_rng(plan.seed)
    u = rng.random((plan.count, M.dim))
    lo = np.array([a for a, _ in box])
    hi = np.array([b for _, b in box])
    return lo + u * (hi - lo)


def validate_chart(M: ChartManifold, plan: SamplePlan) -> dict:
    """Nondegeneracy and signature screening at sampled points.

    Returns {"min_abs_det": float, "signature_mismatches": int | None}.
    """
    pts = sample_points(M, plan)
    min_det = math.inf
    mismatches = 0 if M.signature_hint is not None else None
    for pt in pts:
        g = M.metric_values(pt)
        min_det = min(min_det, abs(float(np.linalg.det(g))))
        if M.signature_hint is not None:
            ev = np.linalg.eigvalsh(g)
            n_plus = int(np.sum(ev > 0))
            n_minus = int(np.sum(ev < 0))
            if (n_plus, n_minus) != tuple(M.signature_hint):
                mismatches += 1
    return {"min_abs_det": min_det, "signature_mismatches": mismatches}


def require_riemannian(M: ChartManifold, plan: SamplePlan, what: str) -> None:
    """Raise SignatureError unless the metric is positive definite on samples."""
    for pt in sample_points(M, plan):
        ev = np.linalg.eigvalsh(M.metric_values(pt))
        if np.any(ev <= 0):
            raise SignatureError(f"{what} requires a Riemannian metric")


@dataclass(frozen=True)
class SolitonParams:
    """Soliton constant, conformal pressure and the dimension convention.

    mu is always derived as 2*lam - (pressure + 2/n_conv), never stored.
    """

    lam: float
    pressure: float
    n_conv: int

    def __post_init__(self):
        if self.n_conv < 1:
            raise ValueError("n_conv must be >= 1")

    @property
    def mu(self) -> float:
        return 2.0 * self.lam - (self.pressure + 2.0 / self.n_conv)


def mu_value(params: SolitonParams) -> float:
    return params.mu


def classify_lambda(lam: float) -> str:
    """shrinking for lam > 0, steady for lam = 0, expanding for lam < 0."""
    if lam > 0:
        return "shrinking"
    if lam < 0:
        return "expanding"
    return "steady"
