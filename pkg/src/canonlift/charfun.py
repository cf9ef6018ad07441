"""Subgroups of (Q_p/Z_p)^n and class functions on Sigma_p.

A subgroup of order p^k in (Q_p/Z_p)^n lives in its p^k-torsion, which is
(Z/p^k)^n.  Subgroups are found by closure and named by their Howell form,
a canonical row-echelon generator matrix over Z/p^k.

Conjugacy classes of maps Z_p^n -> Sigma_p are the trivial class plus one
class per order-p subgroup, so a class function is a trivial value and one
value per entry of the k=1 table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .freealg import AlgElt, RingMap
from .padics import check_prime, int_valuation


def howell_form(rows, p: int, k: int) -> tuple:
    """Canonical generator matrix of the row span of ``rows`` in (Z/p^k)^n."""
    N = p ** k
    work = [[x % N for x in r] for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return ()
    n = len(work[0])
    pivots = []  # (column, exponent, row)
    for c in range(n):
        live = [i for i, r in enumerate(work) if r[c]]
        if not live:
            continue
        ip = min(live, key=lambda i: int_valuation(work[i][c], p))
        j = int_valuation(work[ip][c], p)
        inv = pow(work[ip][c] // p ** j, -1, N)
        piv = [x * inv % N for x in work[ip]]
        rest = []
        for i, r in enumerate(work):
            if i == ip:
                continue
            q = r[c] // p ** j
            r = [(x - q * y) % N for x, y in zip(r, piv)]
            if any(r):
                rest.append(r)
        # Howell property: the multiple of the pivot row that dies in column c
        extra = [x * p ** (k - j) % N for x in piv]
        if any(extra):
            rest.append(extra)
        pivots.append((c, j, piv))
        work = rest
    # reduce entries above each pivot into [0, p^j)
    out = [row for _, _, row in pivots]
    for i, (c, j, piv) in enumerate(pivots):
        for t in range(i):
            q = out[t][c] // p ** j
            if q:
                out[t] = [(x - q * y) % N for x, y in zip(out[t], piv)]
    return tuple(tuple(r) for r in out)


def _span_with(S: frozenset, g: tuple, N: int) -> frozenset:
    multiples = [tuple(0 for _ in g)]
    cur = g
    while any(cur):
        multiples.append(cur)
        cur = tuple((a + b) % N for a, b in zip(cur, g))
    return frozenset(tuple((a + b) % N for a, b in zip(s, m)) for s in S for m in multiples)


def _order_mod(S: frozenset, g: tuple, p: int, N: int) -> int:
    order = 1
    cur = g
    while cur not in S:
        cur = tuple(x * p % N for x in cur)
        order *= p
    return order


@lru_cache(maxsize=None)
def _subgroup_sets(p: int, n: int, k: int) -> tuple:
    N = p ** k
    target = p ** k
    zero = frozenset([(0,) * n])
    elements = list(itertools.product(range(N), repeat=n))
    found = {zero}
    frontier = [zero]
    while frontier:
        S = frontier.pop()
        if len(S) >= target:
            continue
        for g in elements:
            if g in S:
                continue
            if len(S) * _order_mod(S, g, p, N) > target:
                continue
            T = _span_with(S, g, N)
            if T not in found:
                found.add(T)
                frontier.append(T)
    return tuple(S for S in found if len(S) == target)


@dataclass(frozen=True)
class SubgroupTable:
    p: int
    n: int
    k: int
    subgroups: tuple

    @property
    def count(self) -> int:
        return len(self.subgroups)

    def to_json(self) -> dict:
        return {
            "p": self.p, "n": self.n, "k": self.k,
            "count": self.count,
            "subgroups": [[list(r) for r in g] for g in self.subgroups],
        }


def enum_subgroups(p: int, n: int, k: int = 1) -> SubgroupTable:
    """All subgroups of order p^k in (Q_p/Z_p)^n, by canonical generator matrix."""
    check_prime(p)
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k == 0:
        return SubgroupTable(p, n, 0, ((),))
    forms = sorted(howell_form(S, p, k) for S in _subgroup_sets(p, n, k))
    return SubgroupTable(p, n, k, tuple(forms))


def span_of_form(form, p: int, k: int, n: int) -> frozenset:
    S = frozenset([(0,) * n])
    for row in form:
        S = _span_with(S, tuple(row), p ** k)
    return S


def subgroup_count_formula(p: int, n: int) -> int:
    """(p^n - 1)/(p - 1)."""
    return sum(p ** i for i in range(n))


def count_formula_check(p: int, n: int) -> bool:
    count = enum_subgroups(p, n, 1).count
    return count == subgroup_count_formula(p, n) and count % p == 1 % p


@dataclass(frozen=True)
class ClassFun:
    table: SubgroupTable
    trivial_value: object
    values: tuple

    def __post_init__(self):
        if self.table.k != 1:
            raise ValueError("class functions on Sigma_p use the order-p table")
        if len(self.values) != self.table.count:
            raise ValueError(
                f"expected {self.table.count} values, got {len(self.values)}")

    @classmethod
    def constant(cls, table, value, trivial_value=None) -> ClassFun:
        trivial = value if trivial_value is None else trivial_value
        return cls(table, trivial, (value,) * table.count)


def transfer_scaled(phi: ClassFun):
    """p! times the transfer to the trivial group: the plain sum over classes."""
    total = phi.trivial_value
    for v in phi.values:
        total = total + v
    return total


def _ring_of(x):
    return x.parent if isinstance(x, AlgElt) else x.ring


def classfun_of_element(a: AlgElt, roots, table: SubgroupTable | None = None,
                        trivial_value=None) -> ClassFun:
    """Evaluate ``a`` at each root of its modulus.

    Roots are paired with subgroups in table order; which root classifies
    which subgroup depends on the chosen level structure.  Without an
    explicit ``trivial_value`` the trivial class gets zero, i.e. the
    function is restricted to the nontrivial classes.
    """
    m = a.parent.rank
    roots = list(roots)
    if len(roots) != m:
        raise ValueError(f"need {m} roots, got {len(roots)}")
    if table is None:
        table = _table_for_rank(a.parent.ground.prime, m)
    values = tuple(RingMap(a.parent, _ring_of(r), r)(a) for r in roots)
    if trivial_value is None:
        trivial_value = values[0] * 0
    return ClassFun(table, trivial_value, values)


def _table_for_rank(p: int, m: int) -> SubgroupTable:
    n = 1
    while subgroup_count_formula(p, n) < m:
        n += 1
    if subgroup_count_formula(p, n) != m:
        raise ValueError(f"rank {m} is not a subgroup count at p={p}")
    return enum_subgroups(p, n, 1)
