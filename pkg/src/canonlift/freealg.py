"""Free quotient algebras R[x]/(f) for monic f, possibly stacked into towers.

A coefficient ring is either a :class:`~canonlift.series.BaseRing` or another
:class:`QuotAlgebra`.  Both are callable for coercion and expose ``zero()``,
``one()``, ``ground`` (the bottom BaseRing) and ``flat_rank`` (rank over the
ground), which is all the generic code below relies on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .padics import PAdicInt
from .series import BaseElt, BaseRing


class NotARootError(ValueError):
    pass


class MonicPoly:
    """Monic polynomial with coefficients listed lowest degree first."""

    __slots__ = ("ring", "coeffs")
    __hash__ = None

    def __init__(self, ring, coeffs, check: bool = True):
        coeffs = tuple(ring(c) for c in coeffs)
        if len(coeffs) < 1:
            raise ValueError("a polynomial needs at least a leading coefficient")
        if check and not coeffs[-1] == ring.one():
            raise ValueError("polynomial is not monic")
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def from_roots(cls, ring, roots) -> MonicPoly:
        poly = cls(ring, [1])
        for r in roots:
            poly = poly * cls.linear(ring, r)
        return poly

    @classmethod
    def linear(cls, ring, root) -> MonicPoly:
        """x - root."""
        return cls(ring, [-ring(root), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def over(self, ring) -> MonicPoly:
        """The same polynomial with coefficients pushed into ``ring``."""
        return MonicPoly(ring, self.coeffs, check=False)

    def __mul__(self, other: MonicPoly) -> MonicPoly:
        ring = self.ring
        out = [ring.zero() for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * ring(b)
        return MonicPoly(ring, out, check=False)

    def __eq__(self, other):
        if not isinstance(other, MonicPoly):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return all(a == self.ring(b) for a, b in zip(self.coeffs, other.coeffs))

    def __call__(self, value):
        """Horner evaluation; ``value`` may live in any ring containing ours."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def evaluate_in(self, ring, value):
        value = ring(value)
        acc = ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + ring(c)
        return acc

    def constant_term(self):
        return self.coeffs[0]

    def to_json(self) -> dict:
        return {"coeffs": [element_to_json(c) for c in self.coeffs]}

    def __str__(self):
        return poly_str(self.coeffs, "x")

    def __repr__(self):
        return f"MonicPoly({self})"


class QuotAlgebra:
    """base[name]/(modulus) with basis 1, x, ..., x^(m-1)."""

    def __init__(self, base, modulus: MonicPoly, name: str = "x"):
        if not isinstance(modulus, MonicPoly):
            modulus = MonicPoly(base, modulus)
        if modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        self.base = base
        self.modulus = modulus.over(base)
        self.name = name
        self.rank = modulus.degree
        # x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        self._tail = tuple(-c for c in self.modulus.coeffs[:-1])

    @property
    def ground(self) -> BaseRing:
        return self.base.ground

    @property
    def flat_rank(self) -> int:
        return self.rank * self.base.flat_rank

    @property
    def names(self) -> tuple:
        inner = self.base.names if isinstance(self.base, QuotAlgebra) else ()
        return inner + (self.name,)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, QuotAlgebra):
            return NotImplemented
        return (self.name == other.name and self.base == other.base
                and self.modulus.degree == other.modulus.degree
                and self.modulus == other.modulus)

    __hash__ = object.__hash__

    def zero(self) -> AlgElt:
        z = self.base.zero()
        return AlgElt(self, (z,) * self.rank)

    def one(self) -> AlgElt:
        return self.scalar(self.base.one())

    def scalar(self, c) -> AlgElt:
        z = self.base.zero()
        return AlgElt(self, (self.base(c),) + (z,) * (self.rank - 1))

    def gen(self) -> AlgElt:
        if self.rank == 1:
            return AlgElt(self, (self._tail[0],))
        z = self.base.zero()
        vec = [z] * self.rank
        vec[1] = self.base.one()
        return AlgElt(self, tuple(vec))

    def basis(self) -> list:
        x = self.gen()
        out = [self.one()]
        for _ in range(1, self.rank):
            out.append(out[-1] * x)
        return out

    def flat_basis(self) -> list:
        """Products x^i * b_j, in the order used by :meth:`AlgElt.flat_coords`."""
        if isinstance(self.base, QuotAlgebra):
            lower = [self(b) for b in self.base.flat_basis()]
        else:
            lower = [self.one()]
        return [xi * b for xi in self.basis() for b in lower]

    def from_vec(self, vec) -> AlgElt:
        if len(vec) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(vec)}")
        return AlgElt(self, tuple(self.base(c) for c in vec))

    def __call__(self, v) -> AlgElt:
        if isinstance(v, AlgElt):
            if v.parent == self:
                return v
            return self.scalar(self.base(v))
        return self.scalar(v)

    def reduce(self, coeffs: list) -> AlgElt:
        """Reduce a coefficient list (lowest first) modulo the modulus."""
        coeffs = list(coeffs)
        m = self.rank
        tail = self._tail
        for k in range(len(coeffs) - 1, m - 1, -1):
            top = coeffs[k]
            if _is_zero(top):
                continue
            for i, t in enumerate(tail):
                coeffs[k - m + i] = coeffs[k - m + i] + top * t
        z = self.base.zero()
        vec = tuple(coeffs[:m]) + (z,) * max(0, m - len(coeffs))
        return AlgElt(self, vec)

    def random_element(self, rng, **kw) -> AlgElt:
        return AlgElt(self, tuple(_random(self.base, rng, **kw) for _ in range(self.rank)))

    def __str__(self):
        return f"({self.base})[{self.name}]/({poly_str(self.modulus.coeffs, self.name)})"

    def __repr__(self):
        return f"QuotAlgebra({self})"


def _lies_above(big, small) -> bool:
    """True when ``small`` occurs strictly below ``big`` in a tower."""
    ring = big
    while isinstance(ring, QuotAlgebra):
        ring = ring.base
        if ring == small:
            return True
    return False


def _random(ring, rng, **kw):
    return ring.random_element(rng, **kw)


def _is_zero(c) -> bool:
    return c.is_zero()


class AlgElt:
    __slots__ = ("parent", "vec")
    __hash__ = None

    def __init__(self, parent: QuotAlgebra, vec: tuple):
        if len(vec) != parent.rank:
            raise ValueError("coordinate vector has the wrong length")
        self.parent = parent
        self.vec = tuple(vec)

    def _pair(self, other):
        """Bring both operands into one parent; None when impossible."""
        if isinstance(other, AlgElt):
            if other.parent == self.parent:
                return self, other
            if _lies_above(other.parent, self.parent):
                return other.parent(self), other
        try:
            return self, self.parent(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgElt(a.parent, tuple(x + y for x, y in zip(a.vec, b.vec)))

    __radd__ = __add__

    def __neg__(self):
        return AlgElt(self.parent, tuple(-a for a in self.vec))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgElt(a.parent, tuple(x - y for x, y in zip(a.vec, b.vec)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgElt) and other.parent != self.parent:
            if _lies_above(other.parent, self.parent):
                return other * self
            return self._scale(self.parent.base(other))
        if isinstance(other, (int, PAdicInt, BaseElt)):
            return self._scale(self.parent.base(other))
        if not isinstance(other, AlgElt):
            return NotImplemented
        m = self.parent.rank
        out = [None] * (2 * m - 1)
        for i, a in enumerate(self.vec):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.vec):
                if _is_zero(b):
                    continue
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        z = self.parent.base.zero()
        return self.parent.reduce([z if c is None else c for c in out])

    __rmul__ = __mul__

    def _scale(self, c):
        # scalar from a lower ring acts coordinatewise
        return AlgElt(self.parent, tuple(a * c for a in self.vec))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = self.parent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return all(x == y for x, y in zip(a.vec, b.vec))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.vec)

    def is_scalar(self) -> bool:
        return all(a.is_zero() for a in self.vec[1:])

    def flat_coords(self) -> list:
        """Coordinates over the ground ring, index i * lower_rank + j."""
        if isinstance(self.parent.base, QuotAlgebra):
            return [c for a in self.vec for c in a.flat_coords()]
        return list(self.vec)

    def to_json(self) -> dict:
        return {"vec": [element_to_json(c) for c in self.vec]}

    def __str__(self):
        return poly_str(self.vec, self.parent.name, constant_tail=False)

    def __repr__(self):
        return f"AlgElt({self})"


def poly_str(coeffs, name: str, constant_tail: bool = False) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        body = c.polynomial_str() if isinstance(c, BaseElt) else str(c)
        needs_paren = (" + " in body or " - " in body) and i > 0
        if i == 0:
            parts.append(body)
            continue
        mono = name if i == 1 else f"{name}^{i}"
        if body == "1":
            parts.append(mono)
        elif body == "-1":
            parts.append(f"-{mono}")
        else:
            parts.append(f"({body})*{mono}" if needs_paren else f"{body}*{mono}")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out


def element_to_json(c):
    return c.to_json()


# -- linear algebra over the ground ring ------------------------------------

def mult_matrix(a: AlgElt, flat: bool = False) -> list:
    """Matrix of multiplication by ``a``; column j holds the coordinates of a*b_j.

    With ``flat`` the basis is the flattened basis over the ground ring.
    Returned as a list of rows.
    """
    A = a.parent
    if flat:
        cols = [(a * b).flat_coords() for b in A.flat_basis()]
    else:
        x = A.gen()
        cols = []
        cur = a
        for j in range(A.rank):
            cols.append(list(cur.vec))
            if j + 1 < A.rank:
                cur = cur * x
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def alg_trace(a: AlgElt) -> BaseElt:
    """Trace of multiplication by ``a`` as an endomorphism of a free ground-module."""
    A = a.parent
    ground = A.ground
    total = ground.zero()
    for k, b in enumerate(A.flat_basis()):
        total = total + (a * b).flat_coords()[k]
    return total


def newton_power_sums(f: MonicPoly, kmax: int) -> list:
    """Power sums p_1..p_kmax of the roots of ``f`` via Newton's identities."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    ring, m = f.ring, f.degree
    # e_i = (-1)^i c_{m-i}
    e = [ring.one()] + [f.coeffs[m - i] * (-1) ** i for i in range(1, m + 1)]
    p = [None]
    for k in range(1, kmax + 1):
        s = ring.zero()
        for i in range(1, min(k - 1, m) + 1):
            term = e[i] * p[k - i]
            s = s + term if i % 2 == 1 else s - term
        if k <= m:
            term = e[k] * k
            s = s + term if k % 2 == 1 else s - term
        p.append(s)
    return p[1:]


def _mat_mul(X, Y, ring):
    n = len(X)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ring.zero()
            for k in range(n):
                if not X[i][k].is_zero() and not Y[k][j].is_zero():
                    acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(row)
    return out


def charpoly_check(A: QuotAlgebra) -> bool:
    """Cayley-Hamilton sanity check: the modulus kills the matrix of x."""
    ring = A.base
    M = mult_matrix(A.gen())
    n = A.rank
    identity = [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]
    acc = [[ring.zero()] * n for _ in range(n)]
    power = identity
    for k, c in enumerate(A.modulus.coeffs):
        acc = [[acc[i][j] + power[i][j] * c for j in range(n)] for i in range(n)]
        if k < A.modulus.degree:
            power = _mat_mul(power, M, ring)
    return all(entry.is_zero() for row in acc for entry in row)


def determinant(rows: list, ring=None):
    """Leibniz expansion; sizes here stay below 8, and no division is needed."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if ring is None:
        ring = rows[0][0].ring if n else None
    total = ring.zero()
    for perm in itertools.permutations(range(n)):
        term = ring.one()
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if term.is_zero():
                break
        else:
            total = total + term if _sign(perm) > 0 else total - term
    return total


def _sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class IndexReport:
    determinant: BaseElt
    valuation: float
    cofactor: BaseElt | None
    cofactor_is_unit: bool

    def to_json(self) -> dict:
        return {
            "determinant": str(self.determinant),
            "valuation": self.valuation if self.valuation != float("inf") else "inf",
            "cofactor": None if self.cofactor is None else str(self.cofactor),
            "cofactor_is_unit": self.cofactor_is_unit,
        }


def submodule_index(vectors: list) -> IndexReport:
    """Index of the span of ``vectors`` in the ambient free module.

    Over Z_p[[u]] the index is p^v exactly when det = p^v * unit; the report
    gives v (the content valuation of det) and whether det / p^v is a unit.
    """
    n = len(vectors)
    if n == 0 or any(len(v) != n for v in vectors):
        raise ValueError("submodule_index needs n vectors of length n")
    rows = [[vectors[j][i] for j in range(n)] for i in range(n)]
    det = determinant(rows)
    v = det.valuation()
    if v == float("inf"):
        return IndexReport(det, v, None, False)
    cof = det.div_exact(v) if v else det
    return IndexReport(det, v, cof, cof.is_unit())


# -- polynomials over algebras ----------------------------------------------

def poly_divide_linear(f: MonicPoly, r: AlgElt) -> MonicPoly:
    """Quotient of f(z) by (z - r); ``r`` must be a root of f."""
    ring = r.parent if isinstance(r, AlgElt) else r.ring
    coeffs = [ring(c) for c in f.coeffs]
    m = len(coeffs) - 1
    q = [None] * m
    q[m - 1] = ring.one()
    for i in range(m - 1, 0, -1):
        q[i - 1] = coeffs[i] + r * q[i]
    remainder = coeffs[0] + r * q[0]
    if not remainder.is_zero():
        raise NotARootError(f"{r} is not a root: f(r) = {remainder}")
    return MonicPoly(ring, q, check=False)


def adjoin_root(A, g, name: str = "z") -> QuotAlgebra:
    """A[name]/(g); ``g`` may have coefficients in any ring below ``A``."""
    if not isinstance(g, MonicPoly):
        g = MonicPoly(A, g)
    return QuotAlgebra(A, g.over(A), name)


class RingMap:
    """Algebra map out of ``source`` fixed by the image of its generator."""

    def __init__(self, source: QuotAlgebra, target, genimage, label: str = ""):
        self.source = source
        self.target = target
        self.genimage = target(genimage)
        self.label = label
        residual = source.modulus.evaluate_in(target, self.genimage)
        if not residual.is_zero():
            raise NotARootError(
                f"{self.genimage} does not satisfy {source.modulus}: residual {residual}")

    def __call__(self, a: AlgElt):
        if a.parent != self.source:
            raise ValueError("element does not belong to the source algebra")
        t = self.target
        acc = t.zero()
        for c in reversed(a.vec):
            acc = acc * self.genimage + t(c)
        return acc

    def matrix(self) -> list:
        """Flat matrix when source and target are algebras over one ground ring."""
        cols = [self(b).flat_coords() for b in self.source.flat_basis()]
        n, k = len(cols[0]), len(cols)
        return [[cols[j][i] for j in range(k)] for i in range(n)]

    def __repr__(self):
        return f"RingMap({self.label or self.source.name} -> {self.genimage})"


def ringmap_apply(phi: RingMap, a: AlgElt):
    return phi(a)
