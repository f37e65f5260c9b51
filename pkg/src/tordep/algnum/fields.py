"""Simple number fields ``Q[t]/(g)`` and their complex embeddings.

Every algebraic number in the package is an element of some field built
here, paired with a chosen root of the defining polynomial.  Fields are
interned by defining polynomial, embeddings by (field, root index), so
identity comparisons are meaningful and the subfield registry attached to
an embedding is shared by every number that lives in it.

Root indices refer to the isolating balls returned by flint at the
reference precision ``REF_PREC``; higher-precision balls are matched back
to that list by overlap.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from flint import acb, acb_poly, ctx, fmpq, fmpq_mat, fmpq_poly, fmpz_poly

REF_PREC = 64
START_PREC = 64
MAX_PREC = 1 << 16

_lock = threading.RLock()


class PrecisionExhausted(ArithmeticError):
    """Raised when refinement hits the configured precision cap."""


def primitive(p: fmpq_poly | fmpz_poly) -> fmpz_poly:
    """Primitive integer multiple of ``p`` with positive leading coefficient."""
    if isinstance(p, fmpq_poly):
        p = p.numer()
    p = fmpz_poly(p)
    if p.is_zero():
        raise ValueError("zero polynomial has no primitive form")
    c = p.content()
    if c != 1:
        p = fmpz_poly([x // c for x in p.coeffs()])
    if p.leading_coefficient() < 0:
        p = -p
    return p


def poly_key(p: fmpz_poly) -> tuple[int, ...]:
    return tuple(int(c) for c in p.coeffs())


def elem_key(a: fmpq_poly) -> tuple:
    return (tuple(int(c) for c in a.numer().coeffs()), int(a.denom()))


def is_squarefree(p: fmpq_poly) -> bool:
    return p.gcd(p.derivative()).degree() == 0


@lru_cache(maxsize=8192)
def _roots_at(key: tuple[int, ...], prec: int) -> tuple[acb, ...]:
    with ctx.workprec(prec):
        roots = fmpz_poly(list(key)).complex_roots()
    for _, mult in roots:
        if mult != 1:
            raise ValueError("defining polynomial is not squarefree")
    return tuple(r for r, _ in roots)


def roots_at(p: fmpz_poly, prec: int) -> tuple[acb, ...]:
    """Certified isolating balls for the roots of a squarefree ``p``."""
    return _roots_at(poly_key(p), prec)


def compose_mod(a: fmpq_poly, b: fmpq_poly, mod: fmpq_poly) -> fmpq_poly:
    """``a(b) mod mod`` by Horner's rule, keeping degrees bounded."""
    coeffs = a.coeffs()
    if not coeffs:
        return fmpq_poly([])
    acc = fmpq_poly([coeffs[-1]])
    for c in reversed(coeffs[:-1]):
        acc = (acc * b + c) % mod
    return acc % mod


def acb_eval(a: fmpq_poly, z: acb) -> acb:
    coeffs = a.coeffs()
    if not coeffs:
        return acb(0)
    return acb_poly([acb(c) for c in coeffs])(z)


class NumberField:
    """Abstract field ``Q[t]/(g)`` for an irreducible primitive ``g``."""

    _registry: dict[tuple[int, ...], "NumberField"] = {}

    def __init__(self, defpoly: fmpz_poly):
        self.defpoly = defpoly
        self.degree = defpoly.degree()
        self.modulus = fmpq_poly(defpoly)
        self._key = poly_key(defpoly)
        self._embeddings: dict[int, Embedding] = {}
        self._minpolys: dict[tuple, fmpz_poly] = {}
        self._ext_cache: dict = {}

    @classmethod
    def get(cls, defpoly: fmpz_poly | fmpq_poly) -> "NumberField":
        g = primitive(defpoly)
        if g.degree() < 1:
            raise ValueError("defining polynomial must have positive degree")
        key = poly_key(g)
        with _lock:
            field = cls._registry.get(key)
            if field is None:
                field = cls(g)
                cls._registry[key] = field
        return field

    def __repr__(self) -> str:
        return f"NumberField({self.defpoly})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    # -- arithmetic on elements (fmpq_poly reduced mod the modulus) --
    def reduce(self, a) -> fmpq_poly:
        if not isinstance(a, fmpq_poly):
            a = fmpq_poly([a])
        if a.degree() < self.degree:
            return a
        return a % self.modulus

    def mul(self, a: fmpq_poly, b: fmpq_poly) -> fmpq_poly:
        return self.reduce(a * b)

    def inv(self, a: fmpq_poly) -> fmpq_poly:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if a.degree() == 0:
            return fmpq_poly([1 / a[0]])
        if self.degree > 12:
            # linear solve beats the rational xgcd once coefficients grow
            d = self.degree
            u = self.mult_matrix(a).solve(fmpq_mat(d, 1, [1] + [0] * (d - 1)))
            return fmpq_poly([u[i, 0] for i in range(d)])
        g, s, _ = a.xgcd(self.modulus)
        if g.degree() != 0:
            raise ArithmeticError("defining polynomial is reducible")
        return s / g[0]

    def power(self, a: fmpq_poly, k: int) -> fmpq_poly:
        if k < 0:
            a, k = self.inv(a), -k
        result = fmpq_poly([1])
        while k:
            if k & 1:
                result = self.mul(result, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return result

    def gen(self) -> fmpq_poly:
        return self.reduce(fmpq_poly([0, 1]))

    # -- linear algebra --
    def mult_matrix(self, a: fmpq_poly) -> fmpq_mat:
        d = self.degree
        cols = []
        v = self.reduce(a)
        for _ in range(d):
            cs = v.coeffs()
            cols.append(cs + [0] * (d - len(cs)))
            v = self.mul(v, fmpq_poly([0, 1]))
        flat = [cols[j][i] for i in range(d) for j in range(d)]
        return fmpq_mat(d, d, flat)

    def minpoly(self, a: fmpq_poly) -> fmpz_poly:
        """Minimal polynomial of ``a`` over Q.

        The characteristic polynomial of multiplication by ``a`` is a power
        of the minimal polynomial, so its squarefree part is exact.
        """
        a = self.reduce(a)
        key = elem_key(a)
        cached = self._minpolys.get(key)
        if cached is not None:
            return cached
        if a.degree() <= 0:
            result = primitive(fmpq_poly([-a[0], 1]))
        elif a == self.gen():
            result = primitive(self.defpoly)
        else:
            cp = self.mult_matrix(a).charpoly()
            result = primitive(cp / cp.gcd(cp.derivative()))
        self._minpolys[key] = result
        return result

    def seed_minpoly(self, a: fmpq_poly, poly: fmpz_poly) -> None:
        """Record a known minimal polynomial (e.g. computed in a subfield)."""
        self._minpolys.setdefault(elem_key(self.reduce(a)), primitive(poly))

    # -- embeddings --
    def roots(self, prec: int = REF_PREC) -> tuple[acb, ...]:
        return roots_at(self.defpoly, max(prec, REF_PREC))

    def embedding(self, index: int) -> "Embedding":
        if not 0 <= index < self.degree:
            raise IndexError("embedding index out of range")
        with _lock:
            emb = self._embeddings.get(index)
            if emb is None:
                emb = Embedding(self, index)
                self._embeddings[index] = emb
        return emb

    def embeddings(self) -> list["Embedding"]:
        return [self.embedding(i) for i in range(self.degree)]

    def select_embedding(self, approx: Callable[[int], acb]) -> "Embedding":
        """The embedding whose root lies in the balls ``approx(prec)``."""
        return select_root([self], approx)[0]


class Embedding:
    """A field together with one of its complex embeddings."""

    def __init__(self, field: NumberField, index: int):
        self.field = field
        self.index = index
        self._balls: dict[int, acb] = {}
        # embeddings of subfields: Embedding -> image of its generator here
        self.subfields: dict[Embedding, fmpq_poly] = {}

    def __repr__(self) -> str:
        return f"Embedding({self.field.defpoly}, #{self.index})"

    def root(self, prec: int) -> acb:
        """Ball around the embedded generator at roughly ``prec`` bits."""
        f = self.field
        ref = f.roots(REF_PREC)[self.index]
        if prec <= REF_PREC:
            return ref
        cached = self._balls.get(prec)
        if cached is not None:
            return cached
        p = prec
        while True:
            cands = [r for r in roots_at(f.defpoly, p) if r.overlaps(ref)]
            if len(cands) == 1:
                self._balls[prec] = cands[0]
                return cands[0]
            p *= 2
            if p > MAX_PREC:
                raise PrecisionExhausted("cannot separate conjugate roots")

    def evaluate(self, a: fmpq_poly, prec: int) -> acb:
        """Ball around the embedded value of ``a`` with ~``prec`` bits."""
        a = self.field.reduce(a)
        if a.degree() <= 0:
            c = a[0] if a.degree() == 0 else fmpq(0)
            with ctx.workprec(prec + 10):
                return acb(c)
        wp = prec + 20
        while True:
            with ctx.workprec(wp):
                z = acb_eval(a, self.root(wp))
            if _accurate(z, prec):
                return z
            wp *= 2
            if wp > MAX_PREC:
                raise PrecisionExhausted("evaluation did not reach target accuracy")

    def image_in(self, target: "Embedding") -> fmpq_poly | None:
        """Image of this embedding's generator inside ``target``, if known."""
        if self is target:
            return target.field.gen()
        if self.field.is_rational:
            return self.field.gen()
        direct = target.subfields.get(self)
        if direct is not None:
            return direct
        for mid, img in list(target.subfields.items()):
            inner = self.image_in(mid) if mid is not self else None
            if inner is not None:
                return compose_mod(inner, img, target.field.modulus)
        return None

    def register(self, sub: "Embedding", image: fmpq_poly) -> None:
        if sub is self or sub.field.is_rational:
            return
        self.subfields.setdefault(sub, self.field.reduce(image))


def _accurate(z: acb, prec: int) -> bool:
    rad = z.rad()
    if rad == 0:
        return True
    mag = z.abs_upper()
    scale = mag if mag > 1 else acb(1).real
    return rad <= scale * acb(2).real ** (-prec)


def select_root(
    fields: Sequence[NumberField], approx: Callable[[int], acb], fixed: bool = False
) -> tuple[Embedding, int]:
    """Find the unique root, over all ``fields``, inside ``approx(prec)``.

    Returns the embedding and the position of its field in ``fields``.
    Precision doubles until exactly one candidate overlaps.  With
    ``fixed=True`` the target does not shrink, so several separated
    candidates inside it is an error rather than a reason to refine.
    """
    prec = START_PREC
    while True:
        target = approx(prec)
        cands = []
        for pos, f in enumerate(fields):
            for i in range(f.degree):
                r = f.embedding(i).root(prec)
                if r.overlaps(target):
                    cands.append((f.embedding(i), pos))
        if len(cands) == 1:
            return cands[0]
        if not cands:
            raise ArithmeticError("no root matches the target enclosure")
        if fixed and all(
            not a[0].root(prec).overlaps(b[0].root(prec))
            for i, a in enumerate(cands)
            for b in cands[:i]
        ):
            raise ValueError("enclosure contains more than one root")
        prec *= 2
        if prec > MAX_PREC:
            raise PrecisionExhausted("root selection did not separate candidates")


QQ = NumberField.get(fmpz_poly([0, 1]))
QQ_EMB = QQ.embedding(0)


# ---------------------------------------------------------------------------
# polynomials over a number field


def _pack(coeffs: list[fmpq_poly], s: int) -> fmpq_poly:
    flat = []
    for c in coeffs:
        cs = c.coeffs()
        flat.extend(cs)
        flat.extend([0] * (s - len(cs)))
    return fmpq_poly(flat)


class KPoly:
    """Dense univariate polynomial with coefficients in a NumberField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Iterable):
        self.field = field
        cs = [field.reduce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def constant(cls, field: NumberField, c) -> "KPoly":
        return cls(field, [c])

    @classmethod
    def x(cls, field: NumberField) -> "KPoly":
        return cls(field, [0, 1])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _lift(self, other) -> "KPoly":
        if isinstance(other, KPoly):
            return other
        return KPoly(self.field, [other])

    def __add__(self, other) -> "KPoly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = fmpq_poly([])
        a = self.coeffs + [zero] * (n - len(self.coeffs))
        b = other.coeffs + [zero] * (n - len(other.coeffs))
        return KPoly(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "KPoly":
        return KPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other) -> "KPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "KPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "KPoly":
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return KPoly(self.field, [])
        # Kronecker substitution: pack t-coefficients into blocks of width s
        d = self.field.degree
        s = 2 * d - 1
        prod = _pack(self.coeffs, s) * _pack(other.coeffs, s)
        flat = prod.coeffs()
        n = len(self.coeffs) + len(other.coeffs) - 1
        out = [fmpq_poly(flat[k * s : (k + 1) * s]) for k in range(n)]
        return KPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "KPoly":
        result = KPoly(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: fmpq_poly) -> "KPoly":
        return KPoly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def monic(self) -> "KPoly":
        return self.scale(self.field.inv(self.coeffs[-1]))

    def divmod(self, other: "KPoly") -> tuple["KPoly", "KPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        if f.is_rational:
            q, r = divmod(self._flat(), other._flat())
            return KPoly(f, q.coeffs()), KPoly(f, r.coeffs())
        inv_lead = f.inv(other.coeffs[-1])
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        quo = [fmpq_poly([])] * max(dq + 1, 0)
        for k in range(dq, -1, -1):
            c = f.mul(rem[k + len(other.coeffs) - 1], inv_lead)
            quo[k] = c
            if c.is_zero():
                continue
            for i, b in enumerate(other.coeffs):
                rem[k + i] = f.reduce(rem[k + i] - c * b)
        return KPoly(f, quo), KPoly(f, rem[: len(other.coeffs) - 1])

    def __mod__(self, other: "KPoly") -> "KPoly":
        return self.divmod(other)[1]

    def _flat(self) -> fmpq_poly:
        return fmpq_poly([c[0] if c.degree() == 0 else 0 for c in self.coeffs])

    def gcd(self, other: "KPoly") -> "KPoly":
        if self.field.is_rational:
            g = self._flat().gcd(other._flat())
            return KPoly(self.field, g.coeffs())
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "KPoly":
        return KPoly(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: fmpq_poly) -> fmpq_poly:
        f = self.field
        acc = fmpq_poly([])
        for c in reversed(self.coeffs):
            acc = f.reduce(f.mul(acc, x) + c)
        return acc

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        return self.field is other.field and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"KPoly({[str(c) for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# extensions: adjoining roots of a polynomial over a field


def _tower_matrix(field: NumberField, monic: list[fmpq_poly], shift: int) -> fmpq_mat:
    """Matrix of multiplication by ``z + shift*t`` on ``K[z]/(P)``.

    Basis ``t^i z^j`` at index ``j*d + i``; ``monic`` lists P's coefficients
    below the leading 1.
    """
    d, m = field.degree, len(monic)
    n = d * m
    t = fmpq_poly([0, 1])
    rows = [[fmpq(0)] * n for _ in range(n)]
    for j in range(m):
        for i in range(d):
            col = j * d + i
            ti = field.reduce(fmpq_poly([0] * i + [1]))
            # z * t^i z^j
            if j + 1 < m:
                tgt = (j + 1) * d
                for k in range(d):
                    rows[tgt + k][col] += ti[k]
            else:
                for jj, pk in enumerate(monic):
                    v = field.mul(ti, -pk)
                    for k in range(d):
                        rows[jj * d + k][col] += v[k]
            if shift and not field.is_rational:
                v = field.mul(ti, t * shift)
                for k in range(d):
                    rows[j * d + k][col] += v[k]
    return fmpq_mat(n, n, [x for row in rows for x in row])


def _express_theta(field: NumberField, monic: list[fmpq_poly], shift: int) -> fmpq_poly:
    """``t`` as a polynomial in ``gamma = z + shift*t`` inside ``K[z]/(P)``.

    Valid once the norm of gamma is squarefree, i.e. gamma generates the
    algebra; then the power matrix of gamma is invertible.
    """
    M = _tower_matrix(field, monic, shift)
    n = M.nrows()
    v = fmpq_mat(n, 1, [1] + [0] * (n - 1))
    cols = []
    for _ in range(n):
        cols.append([v[i, 0] for i in range(n)])
        v = M * v
    V = fmpq_mat(n, n, [cols[k][i] for i in range(n) for k in range(n)])
    # coordinates of t: index j*d + i with j = 0, i = 1
    target = fmpq_mat(n, 1, [0, 1] + [0] * (n - 2))
    u = V.solve(target)
    return fmpq_poly([u[i, 0] for i in range(n)])


def _shifts():
    k = 1
    while True:
        yield k
        yield -k
        k += 1


class Extension:
    """One irreducible factor of ``P`` over ``K``, as an abstract field ``L``.

    ``base_image`` is the image of K's generator in L and ``root`` is a root
    of P in L.
    """

    __slots__ = ("field", "base_image", "root", "shift")

    def __init__(self, field: NumberField, base_image: fmpq_poly, root: fmpq_poly, shift: int):
        self.field = field
        self.base_image = base_image
        self.root = root
        self.shift = shift

    def __repr__(self) -> str:
        return f"Extension({self.field.defpoly})"


def _as_fmpq_poly(p) -> fmpq_poly:
    return p if isinstance(p, fmpq_poly) else fmpq_poly([p])


def extend(field: NumberField, coeffs: Sequence) -> list[Extension]:
    """Adjoin the roots of ``P = sum coeffs[k] z^k`` (coefficients in K).

    Uses the shifted-norm construction: for a shift ``c`` making the norm
    of ``P(z - c t)`` squarefree, each rational factor of the norm is the
    minimal polynomial of a primitive element ``gamma = beta + c*theta`` of
    ``K(beta)``, and ``theta`` is recovered as the linear gcd of ``g(t)``
    and ``P(gamma - c t)`` over ``Q(gamma)``.
    """
    P = KPoly(field, [_as_fmpq_poly(c) for c in coeffs])
    if P.degree() < 1:
        raise ValueError("need a polynomial of positive degree")
    P = P.monic()
    P = P.divmod(P.gcd(P.derivative()))[0] if P.degree() > 1 else P
    key = tuple(elem_key(c) for c in P.coeffs)
    cached = field._ext_cache.get(key)
    if cached is not None:
        return cached

    if field.is_rational:
        poly = fmpq_poly([c[0] if c.degree() == 0 else 0 for c in P.coeffs])
        out = []
        for fac, _ in poly.factor()[1]:
            L = NumberField.get(fac)
            out.append(Extension(L, field.gen(), L.gen(), 0))
        field._ext_cache[key] = out
        return out

    monic = P.coeffs[:-1]
    for c in _shifts():
        norm = _tower_matrix(field, monic, c).charpoly()
        if is_squarefree(norm):
            break
    theta_in_gamma = _express_theta(field, monic, c)
    out = []
    for fac, _ in norm.factor()[1]:
        L = NumberField.get(fac)
        theta = L.reduce(theta_in_gamma)
        beta = L.reduce(L.gen() - theta * c)
        out.append(Extension(L, theta, beta, c))
    field._ext_cache[key] = out
    return out


def embedded_roots(emb: Embedding, coeffs: Sequence) -> list[tuple[Embedding, fmpq_poly]]:
    """All complex roots of ``P`` over the embedded field ``emb``.

    Each root is returned as ``(embedding of L, element of L)`` where L
    contains ``emb``'s field compatibly; the subfield image is registered.
    """
    exts = extend(emb.field, coeffs)
    out = []
    for ext in exts:
        for L_emb in ext.field.embeddings():
            if emb.field.is_rational:
                out.append((L_emb, ext.root))
                continue
            image = ext.base_image
            hit = emb.field.select_embedding(lambda p, e=L_emb, a=image: e.evaluate(a, p))
            if hit is emb:
                L_emb.register(emb, image)
                out.append((L_emb, ext.root))
    return out


_composita: dict[tuple[Embedding, Embedding], tuple[Embedding, fmpq_poly, fmpq_poly]] = {}


def compositum(e1: Embedding, e2: Embedding) -> Embedding:
    """An embedded field containing both ``e1`` and ``e2`` (images registered)."""
    if e1.image_in(e2) is not None:
        return e2
    if e2.image_in(e1) is not None:
        return e1
    with _lock:
        hit = _composita.get((e1, e2))
    if hit is not None:
        return hit[0]
    exts = extend(e1.field, e2.field.modulus.coeffs())
    c = exts[0].shift

    def approx(prec: int) -> acb:
        with ctx.workprec(prec + 20):
            return e2.root(prec + 20) + e1.root(prec + 20) * acb(c)

    L_emb, pos = select_root([x.field for x in exts], approx)
    ext = exts[pos]
    L_emb.register(e1, ext.base_image)
    L_emb.register(e2, ext.root)
    with _lock:
        _composita[(e1, e2)] = (L_emb, ext.base_image, ext.root)
    return L_emb


def common_embedding(embs: Iterable[Embedding]) -> Embedding:
    cur = QQ_EMB
    for e in embs:
        if e is cur or e.field.is_rational:
            continue
        if cur.field.is_rational:
            cur = e
            continue
        cur = compositum(cur, e)
    return cur


def to_embedding(elem: fmpq_poly, src: Embedding, target: Embedding) -> fmpq_poly:
    """Map an element of ``src`` into ``target`` (which must contain it)."""
    if src is target:
        return elem
    if src.field.is_rational:
        return target.field.reduce(src.field.reduce(elem))
    img = src.image_in(target)
    if img is None:
        raise ValueError("target embedding does not contain the source field")
    return compose_mod(elem, img, target.field.modulus)
