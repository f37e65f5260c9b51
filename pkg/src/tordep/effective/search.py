"""The bounded search for torsion points with dependent function values."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..algnum import AlgebraicNumber, embedded_roots
from ..algnum.fields import elem_key
from ..elliptic import CurvePoint, EllipticCurve, TorsionPoint, order_of, torsion_catalog
from ..multdep import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DependenceCertificate,
    box_count,
    find_relation,
)
from ..multdep.relations import _canonical_mask, _grid
from .bounds import exponent_box, torsion_coordinate_height_bound
from .expr import RationalFunction, eval_function, function_height_bound, parse_function

EQ41_LIMIT = 10_000
HRUSHOVSKI_NOTE = (
    "per-vector torsion counts N(C_a, K) are not computed; "
    "the eq41 sum is listed symbolically"
)

# Named presets for the Bogomolov constant.  The published values carry
# their own hypotheses, so they have to be supplied by the user.
EPS_PRESETS: dict[str, Fraction | None] = {"cm": None, "rational-curve": None}


def resolve_eps(eps) -> Fraction:
    if isinstance(eps, str) and eps in EPS_PRESETS:
        val = EPS_PRESETS[eps]
        if val is None:
            raise ValueError(
                f"eps preset {eps!r} is a stub: supply a value from the literature explicitly"
            )
        return val
    q = Fraction(eps)
    if q <= 0:
        raise ValueError("eps must be positive")
    return q


def decimal_str(q: Fraction, digits: int = 12) -> str:
    """Fixed-point rendering, rounded up (values are upper bounds)."""
    scale = 10**digits
    n = -((-q.numerator * scale) // q.denominator)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{digits}d}"


@dataclass(frozen=True)
class Exclusion:
    point: TorsionPoint
    reasons: tuple[tuple[int, str], ...]  # (f_index, "vanished" | "pole")

    def to_json(self) -> dict:
        i, kind = self.reasons[0]
        return {
            "point": self.point.point.to_json(),
            "order": self.point.order,
            "reason": {"f_index": i, "kind": kind},
            "reasons": [{"f_index": j, "kind": k} for j, k in self.reasons],
        }


@dataclass(frozen=True)
class Hit:
    point: TorsionPoint
    certificate: DependenceCertificate
    values: tuple[AlgebraicNumber, ...]

    def to_json(self) -> dict:
        return {
            "point": self.point.point.to_json(),
            "order": self.point.order,
            "certificate": self.certificate.to_json(),
        }


@dataclass(frozen=True)
class Inconclusive:
    point: TorsionPoint
    bound: int
    budget: int

    def to_json(self) -> dict:
        return {
            "point": self.point.point.to_json(),
            "order": self.point.order,
            "certificate": {"kind": "inconclusive", "bound": self.bound, "budget": self.budget},
        }


@dataclass
class EffectiveReport:
    curve: EllipticCurve
    functions: list[RationalFunction]
    hx: Fraction
    hy: Fraction
    per_function: list[Fraction]
    B: Fraction
    eps: Fraction
    M: int
    n_max: int
    hits: list[Hit] = field(default_factory=list)
    excluded: list[Exclusion] = field(default_factory=list)
    inconclusive: list[Inconclusive] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    galois_closed: bool | None = None

    @property
    def n(self) -> int:
        return len(self.functions)

    def eq41_terms(self) -> tuple[list[list[int]], bool]:
        """Relation vectors of the box; the full list when it is small,
        otherwise only those realized by hits."""
        if box_count(self.n, self.M) <= EQ41_LIMIT:
            blk = next(_grid(self.n, self.M))
            blk = blk[_canonical_mask(blk, 1, self.M)]
            vecs = sorted((tuple(int(a) for a in v) for v in blk), key=lambda v: (max(map(abs, v)), v))
            return [list(v) for v in vecs], True
        seen = sorted({h.certificate.vector for h in self.hits}, key=lambda v: (max(map(abs, v)), v))
        return [list(v) for v in seen], False

    def to_json(self) -> dict:
        vecs, complete = self.eq41_terms()
        return {
            "curve": self.curve.to_json(),
            "functions": [f.text for f in self.functions],
            "hx": decimal_str(self.hx),
            "hy": decimal_str(self.hy),
            "B_i": [decimal_str(b) for b in self.per_function],
            "B": decimal_str(self.B),
            "eps": decimal_str(self.eps),
            "M": self.M,
            "N_max": self.n_max,
            "hits": [h.to_json() for h in self.hits],
            "excluded": [e.to_json() for e in self.excluded],
            "inconclusive": [c.to_json() for c in self.inconclusive],
            "eq41": [{"vector": v, "N": "unavailable"} for v in vecs],
            "eq41_complete": complete,
            "hrushovski_note": HRUSHOVSKI_NOTE,
            "galois_closed": self.galois_closed,
            "warnings": list(self.warnings),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def height_budget(E: EllipticCurve, fs: Sequence[RationalFunction]):
    hx, hy = torsion_coordinate_height_bound(E)
    per = [function_height_bound(f, hx, hy) for f in fs]
    return hx, hy, per, max(per)


def _as_functions(fs) -> list[RationalFunction]:
    return [f if isinstance(f, RationalFunction) else parse_function(f) for f in fs]


def dependent_torsion_search(
    E: EllipticCurve,
    fs,
    eps,
    n_max: int,
    *,
    budget: int = DEFAULT_BUDGET,
    check_functions: bool = True,
) -> EffectiveReport:
    fs = _as_functions(fs)
    if not fs:
        raise ValueError("need at least one function")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    eps = resolve_eps(eps)
    hx, hy, per, B = height_budget(E, fs)
    M = exponent_box(len(fs), B, eps)
    report = EffectiveReport(E, fs, hx, hy, per, B, eps, M, n_max)
    if check_functions:
        report.warnings.extend(function_dependence_warnings(E, fs))

    # conjugate points share the abstract values, hence the search outcome
    memo: dict = {}
    for T in torsion_catalog(E, n_max):
        results = [eval_function(f, T.point) for f in fs]
        bad = tuple((i, r.kind) for i, r in enumerate(results) if not r.is_value)
        if bad:
            report.excluded.append(Exclusion(T, bad))
            continue
        values = tuple(r.value for r in results)
        key = tuple((id(v.field), elem_key(v.elem)) for v in values)
        if key not in memo:
            try:
                memo[key] = find_relation(values, M, budget=budget)
            except BudgetExceeded:
                memo[key] = "inconclusive"
        outcome = memo[key]
        if outcome == "inconclusive":
            report.inconclusive.append(Inconclusive(T, M, budget))
        elif outcome is not None:
            report.hits.append(Hit(T, outcome, values))
    report.galois_closed = hits_galois_closed(report)
    return report


def hits_galois_closed(report: EffectiveReport) -> bool | None:
    """Whether the hit x-coordinates form full conjugate sets over Q.

    Functions have rational coefficients, so for a curve over Q the hit set
    is stable under Galois; for other base fields the check does not apply.
    """
    if not report.curve.is_rational:
        return None
    groups: dict[tuple, set] = {}
    for h in report.hits:
        mp = h.point.x.minpoly
        groups.setdefault(tuple(int(c) for c in mp.coeffs()), set()).add(h.point.x.root_index)
    return all(len(idx) == len(key) - 1 for key, idx in groups.items())


# -- heuristic independence of the functions themselves --


def sample_points(E: EllipticCurve, count: int = 3, max_order: int = 24) -> list[CurvePoint]:
    """Deterministic non-torsion sample points with small integer x."""
    K = E.field
    a1, a2, a3, a4, a6 = E.a
    out = []
    x0 = 2
    while len(out) < count and x0 < 200:
        b = K.reduce(a1 * x0 + a3)
        c = K.reduce(a6 + a4 * x0 + a2 * x0**2 + x0**3)
        if not K.reduce(b * b + 4 * c).is_zero():
            emb, y = embedded_roots(E.emb, [-c, b, 1])[0]
            P = CurvePoint(AlgebraicNumber(emb, emb.field.reduce(x0)), AlgebraicNumber(emb, y))
            if order_of(E, P, max_order) is None:
                out.append(P)
        x0 += 1
    return out


def function_dependence_warnings(E: EllipticCurve, fs: Sequence[RationalFunction], box: int = 4) -> list[str]:
    """Warn when the same relation holds at every sample point."""
    if len(fs) < 1:
        return []
    common = None
    samples = sample_points(E)
    for P in samples:
        results = [eval_function(f, P) for f in fs]
        if not all(r.is_value for r in results):
            return []
        cert = find_relation([r.value for r in results], box)
        if cert is None:
            return []
        vec = cert.vector
        if common is None:
            common = vec
        elif vec != common:
            return []
    if common is None or not samples:
        return []
    return [
        "functions appear multiplicatively dependent as functions "
        f"(relation {list(common)} holds at every sample point; heuristic)"
    ]
