"""Search for and certify multiplicative relations.

A relation vector ``a`` is reported when ``prod alpha_i^a_i`` is a root of
unity of order ``m``; then ``prod alpha_i^(m a_i) = 1`` exactly.  Vectors are
scanned shell by shell in sup-norm, so the first hit is minimal.  Inside a
shell candidates are ordered by the key of :func:`relation_key`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np
from flint import ctx, fmpq_poly

from ..algnum import AlgebraicNumber, common_embedding, is_root_of_unity, weil_height
from ..algnum.fields import to_embedding
from .bounds import eta_lower_bound, masser_gm_bound, omega_upper_bound

DEFAULT_BUDGET = 10**7
_BLOCK = 1 << 18
_GRID = 1 << 21


class BudgetExceeded(RuntimeError):
    def __init__(self, bound: int, budget: int, searched: int):
        super().__init__(f"exponent box of sup-norm {bound} exceeds the search budget {budget}")
        self.bound = bound
        self.budget = budget
        self.searched = searched


@dataclass(frozen=True)
class DependenceCertificate:
    vector: tuple[int, ...]
    zeta_order: int

    kind = "dependent"

    def verify(self, alphas: Sequence[AlgebraicNumber]) -> bool:
        """Re-check from scratch with exact arithmetic."""
        if len(alphas) != len(self.vector) or not any(self.vector):
            return False
        first = next(a for a in self.vector if a)
        if first < 0:
            return False
        beta = power_product(alphas, self.vector)
        if is_root_of_unity(beta) != self.zeta_order:
            return False
        return power_product(alphas, [self.zeta_order * a for a in self.vector]).is_one()

    def to_json(self) -> dict:
        return {"kind": "dependent", "vector": list(self.vector), "zeta_order": self.zeta_order}


@dataclass(frozen=True)
class IndependenceCertificate:
    exponent_bound: int
    method: str
    exhausted: bool = True

    kind = "independent"

    def to_json(self) -> dict:
        return {
            "kind": "independent",
            "bound": self.exponent_bound,
            "method": self.method,
            "exhausted": self.exhausted,
        }


@dataclass(frozen=True)
class InconclusiveResult:
    """The box was too large for the budget; ``searched`` is the largest
    sup-norm that was scanned completely without finding a relation."""

    bound: int
    budget: int
    searched: int = 0

    kind = "inconclusive"

    def to_json(self) -> dict:
        return {"kind": "inconclusive", "bound": self.bound, "budget": self.budget}


Certificate = Union[DependenceCertificate, IndependenceCertificate, InconclusiveResult]


def certificate_from_json(data: dict) -> Certificate:
    kind = data["kind"]
    if kind == "dependent":
        return DependenceCertificate(tuple(int(a) for a in data["vector"]), int(data["zeta_order"]))
    if kind == "independent":
        return IndependenceCertificate(int(data["bound"]), data["method"], bool(data["exhausted"]))
    if kind == "inconclusive":
        return InconclusiveResult(int(data["bound"]), int(data["budget"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


# ---------------------------------------------------------------------------


def power_product(alphas: Sequence[AlgebraicNumber], vector: Sequence[int]) -> AlgebraicNumber:
    emb = common_embedding(a.emb for a, e in zip(alphas, vector) if e)
    F = emb.field
    acc = fmpq_poly([1])
    for a, e in zip(alphas, vector):
        if e:
            acc = F.mul(acc, F.power(to_embedding(a.elem, a.emb, emb), e))
    return AlgebraicNumber(emb, acc)


def relation_key(v: Sequence[int]) -> tuple:
    """Order inside a sup-norm shell: smaller trailing magnitudes first,
    positive before negative.  Puts ``(1, 0)`` before ``(0, 1)``."""
    return tuple((abs(a), a < 0) for a in reversed(v))


def box_count(n: int, M: int) -> int:
    """Number of canonical nonzero vectors with sup-norm at most ``M``."""
    return ((2 * M + 1) ** n - 1) // 2


def _shell(n: int, N: int) -> Iterator[np.ndarray]:
    """Canonical vectors (first nonzero entry positive) of sup-norm ``N``."""
    if n == 1:
        yield np.array([[N]], dtype=np.int64)
        return
    side = 2 * N + 1
    rest = n - 1
    vals = np.arange(-N, N + 1, dtype=np.int64)
    # iterate over the leading coordinate, and split further if needed
    if side**rest <= _BLOCK:
        grid = np.stack(np.meshgrid(*([vals] * rest), indexing="ij"), -1).reshape(-1, rest)
        for lead in range(0, N + 1):
            blk = np.concatenate([np.full((len(grid), 1), lead, np.int64), grid], axis=1)
            yield blk
        return
    for lead in range(0, N + 1):
        for sub in _shell_all(rest, N):
            yield np.concatenate([np.full((len(sub), 1), lead, np.int64), sub], axis=1)


def _shell_all(n: int, N: int) -> Iterator[np.ndarray]:
    """All vectors in ``[-N, N]^n`` in blocks."""
    side = 2 * N + 1
    vals = np.arange(-N, N + 1, dtype=np.int64)
    if side**n <= _BLOCK:
        yield np.stack(np.meshgrid(*([vals] * n), indexing="ij"), -1).reshape(-1, n)
        return
    for v in vals:
        for sub in _shell_all(n - 1, N):
            yield np.concatenate([np.full((len(sub), 1), v, np.int64), sub], axis=1)


def _grid(n: int, N: int) -> Iterator[np.ndarray]:
    vals = np.arange(-N, N + 1, dtype=np.int64)
    yield np.stack(np.meshgrid(*([vals] * n), indexing="ij"), -1).reshape(-1, n)


def _canonical_mask(blk: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Vectors with sup-norm in ``[lo, hi]`` whose first nonzero entry is positive."""
    norm = np.abs(blk).max(axis=1)
    on_shell = (norm >= lo) & (norm <= hi)
    nz = blk != 0
    first = np.argmax(nz, axis=1)
    lead = blk[np.arange(len(blk)), first]
    return on_shell & (lead > 0)


@dataclass
class _LogMatrix:
    """``log|sigma(alpha_i)|`` for every embedding sigma of the common field,
    with a per-entry error radius."""

    logs: np.ndarray  # shape (n, s)
    err: np.ndarray  # shape (n, s)

    @classmethod
    def build(cls, alphas: Sequence[AlgebraicNumber], prec: int = 96) -> "_LogMatrix":
        emb = common_embedding(a.emb for a in alphas)
        elems = [to_embedding(a.elem, a.emb, emb) for a in alphas]
        rows, errs = [], []
        for e in elems:
            row, err = [], []
            for sigma in emb.field.embeddings():
                with ctx.workprec(prec):
                    z = sigma.evaluate(e, prec)
                    lg = z.abs_lower().log() if z.abs_lower() > 0 else None
                    hi = z.abs_upper().log()
                if lg is None:
                    raise ZeroDivisionError("zero value in relation search")
                mid = float(hi.mid())
                rad = float(hi.rad()) + float((hi - lg).abs_upper().mid())
                row.append(mid)
                err.append(rad)
            rows.append(row)
            errs.append(err)
        return cls(np.array(rows), np.array(errs))

    def survivors(self, blk: np.ndarray) -> np.ndarray:
        """Mask of vectors whose logarithmic residual is compatible with 0."""
        A = blk.astype(np.float64)
        res = A @ self.logs
        absA = np.abs(A)
        # enclosure error plus a generous float rounding allowance
        tol = absA @ (self.err + 1e-13 * (1 + np.abs(self.logs))) + 1e-12
        return np.all(np.abs(res) <= tol, axis=1)


def _check(alphas: Sequence[AlgebraicNumber], v: Sequence[int]) -> DependenceCertificate | None:
    m = is_root_of_unity(power_product(alphas, v))
    if m is None:
        return None
    return DependenceCertificate(tuple(int(a) for a in v), m)


def find_relation(
    alphas: Sequence[AlgebraicNumber],
    M: int,
    *,
    budget: int = DEFAULT_BUDGET,
    prefilter: bool = True,
) -> DependenceCertificate | None:
    """Minimal relation with sup-norm at most ``M``, or ``None``.

    Raises :class:`BudgetExceeded` (carrying the largest fully scanned norm)
    if the box holds more than ``budget`` candidate vectors and no relation
    was found inside the part that fits.
    """
    alphas = list(alphas)
    if not alphas:
        raise ValueError("need at least one number")
    if any(a.is_zero() for a in alphas):
        raise ValueError("relation search needs nonzero numbers")
    if M < 1:
        raise ValueError("M must be at least 1")
    n = len(alphas)
    logs = _LogMatrix.build(alphas) if prefilter else None
    lo = 1
    while lo <= M:
        if box_count(n, lo) > budget:
            raise BudgetExceeded(M, budget, lo - 1)
        # scan several shells at once while the full grid stays small
        hi = lo
        if (2 * lo + 1) ** n <= _GRID:
            while hi < M and (2 * hi + 3) ** n <= _GRID and box_count(n, hi + 1) <= budget:
                hi += 1
            blocks = _grid(n, hi)
        else:
            blocks = _shell(n, lo)
        cands = []
        for blk in blocks:
            blk = blk[_canonical_mask(blk, lo, hi)]
            if logs is not None and len(blk):
                blk = blk[logs.survivors(blk)]
            cands.extend(tuple(int(a) for a in row) for row in blk)
        cands.sort(key=lambda v: (max(abs(a) for a in v), relation_key(v)))
        for v in cands:
            cert = _check(alphas, v)
            if cert is not None:
                return cert
        lo = hi + 1
    return None


def are_dependent(
    alphas: Sequence[AlgebraicNumber],
    *,
    budget: int = DEFAULT_BUDGET,
    eta_override=None,
) -> Certificate:
    """Decide multiplicative dependence with the G_m exponent bound."""
    alphas = list(alphas)
    if any(a.is_zero() for a in alphas):
        raise ValueError("dependence test needs nonzero numbers")
    M = gm_exponent_bound(alphas, eta_override=eta_override)
    try:
        cert = find_relation(alphas, M, budget=budget)
    except BudgetExceeded as exc:
        return InconclusiveResult(M, budget, exc.searched)
    if cert is not None:
        return cert
    return IndependenceCertificate(M, "gm", True)


def gm_exponent_bound(alphas: Sequence[AlgebraicNumber], eta_override=None) -> int:
    """``n^(n-1) omega (h/eta)^(n-1)`` with ``d`` the product of the degrees."""
    n = len(alphas)
    d = math.prod(a.degree for a in alphas)
    h = max(weil_height(a).upper for a in alphas)
    if h == 0:
        # every alpha is a root of unity; the unit vectors already certify
        return 1
    omega = omega_upper_bound(d)
    eta = eta_lower_bound(d, eta_override)
    return masser_gm_bound(n, omega, h, eta)


__all__ = [
    "BudgetExceeded",
    "Certificate",
    "DependenceCertificate",
    "IndependenceCertificate",
    "InconclusiveResult",
    "are_dependent",
    "box_count",
    "certificate_from_json",
    "find_relation",
    "gm_exponent_bound",
    "power_product",
    "relation_key",
]

