"""Truncated multivariate power series over Z/p^N.

``BaseRing`` describes Z_p[[u_1, ..., u_k]] cut off at total degree ``degcap``
and p-adic precision ``prec``; ``BaseElt`` is an element of it.  Monomials of
total degree above the cap form an ideal, so the truncated ring is an honest
quotient ring and every operation here is exact in it.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, replace
from functools import lru_cache

from .padics import DEFAULT_PREC, NotDivisibleError, PAdicInt, centered, check_prime, int_valuation

DEFAULT_DEGCAP = 8


@lru_cache(maxsize=None)
def _monomials(nvars: int, degcap: int) -> tuple:
    out = []
    for total in range(degcap + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            exp = [0] * nvars
            for i in combo:
                exp[i] += 1
            out.append(tuple(exp))
    return tuple(sorted(set(out), key=lambda e: (sum(e), tuple(-x for x in e))))


@dataclass(frozen=True)
class BaseRing:
    vars: tuple = ()
    degcap: int = DEFAULT_DEGCAP
    prime: int = 2
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "vars", tuple(self.vars))
        if self.prec < 1:
            raise ValueError("precision must be >= 1")
        if self.degcap < 0:
            raise ValueError("degree cap must be >= 0")

    @property
    def modulus(self) -> int:
        return self.prime ** self.prec

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def ground(self) -> BaseRing:
        return self

    flat_rank = 1

    def with_prec(self, prec: int) -> BaseRing:
        return self if prec == self.prec else replace(self, prec=prec)

    def same_shape(self, other: BaseRing) -> bool:
        return (self.vars, self.degcap, self.prime) == (other.vars, other.degcap, other.prime)

    def monomials(self) -> tuple:
        return _monomials(self.nvars, self.degcap)

    def zero(self) -> BaseElt:
        return BaseElt(self, {})

    def one(self) -> BaseElt:
        return BaseElt(self, {self._zero_exp(): 1})

    def _zero_exp(self) -> tuple:
        return (0,) * self.nvars

    def gen(self, name) -> BaseElt:
        i = self.vars.index(name) if isinstance(name, str) else name
        exp = [0] * self.nvars
        exp[i] = 1
        return BaseElt(self, {tuple(exp): 1})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def __call__(self, v) -> BaseElt:
        """Coerce an int, PAdicInt or compatible BaseElt into this ring.

        Values known to lower precision keep their lower precision.
        """
        if isinstance(v, BaseElt):
            if not self.same_shape(v.ring):
                raise ValueError(f"cannot coerce element of {v.ring} into {self}")
            return v if v.ring.prec <= self.prec else BaseElt(self, v.terms)
        if isinstance(v, PAdicInt):
            if v.prime != self.prime:
                raise ValueError("prime mismatch")
            ring = self.with_prec(min(self.prec, v.prec))
            return BaseElt(ring, {self._zero_exp(): v.residue})
        if isinstance(v, int):
            return BaseElt(self, {self._zero_exp(): v})
        raise TypeError(f"cannot coerce {type(v).__name__} into {self}")

    def from_dict(self, terms: dict) -> BaseElt:
        return BaseElt(self, {tuple(k): int(c) for k, c in terms.items()})

    def random_element(self, rng: random.Random, degree: int | None = None,
                       density: float = 1.0) -> BaseElt:
        degree = self.degcap if degree is None else min(degree, self.degcap)
        terms = {}
        for exp in self.monomials():
            if sum(exp) <= degree and rng.random() < density:
                terms[exp] = rng.randrange(self.modulus)
        return BaseElt(self, terms)

    def __str__(self):
        names = ",".join(self.vars)
        base = f"Z_{self.prime}[[{names}]]" if names else f"Z_{self.prime}"
        return f"{base} (deg<={self.degcap}, prec {self.prec})"


def unify(a: BaseRing, b: BaseRing) -> BaseRing:
    if a is b:
        return a
    if not a.same_shape(b):
        raise ValueError(f"incompatible coefficient rings: {a} vs {b}")
    return a if a.prec <= b.prec else b


class BaseElt:
    """Immutable truncated power series; ``terms`` maps exponents to residues."""

    __slots__ = ("ring", "terms")
    __hash__ = None

    def __init__(self, ring: BaseRing, terms: dict):
        mod = ring.modulus
        cap = ring.degcap
        clean = {}
        for exp, c in terms.items():
            if len(exp) != ring.nvars:
                raise ValueError(f"exponent {exp} does not match variables {ring.vars}")
            if sum(exp) > cap:
                continue
            c %= mod
            if c:
                clean[exp] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BaseElt is immutable")

    @property
    def prime(self) -> int:
        return self.ring.prime

    @property
    def prec(self) -> int:
        return self.ring.prec

    def _other(self, other):
        if isinstance(other, BaseElt):
            return other
        if isinstance(other, (int, PAdicInt)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        ring = unify(self.ring, other.ring)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return BaseElt(ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return BaseElt(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        ring = unify(self.ring, other.ring)
        cap = ring.degcap
        out: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return BaseElt(ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp) -> PAdicInt:
        return PAdicInt(self.prime, self.prec, self.terms.get(tuple(exp), 0))

    def constant_term(self) -> PAdicInt:
        return self.coeff(self.ring._zero_exp())

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def is_unit(self) -> bool:
        """A series is invertible iff its constant term is a p-adic unit."""
        return self.constant_term().is_unit()

    def valuation(self):
        """Minimum p-adic valuation over the coefficients (inf for zero)."""
        if not self.terms:
            return math.inf
        return min(int_valuation(c, self.prime) for c in self.terms.values())

    def reduce(self, prec: int) -> BaseElt:
        return BaseElt(self.ring.with_prec(min(prec, self.prec)), self.terms)

    def mod_p(self) -> BaseElt:
        return self.reduce(1)

    def div_exact(self, k: int) -> BaseElt:
        """Divide every coefficient by p^k, losing k digits of precision."""
        if k == 0:
            return self
        if k >= self.prec:
            raise NotDivisibleError(f"dividing by {self.prime}^{k} leaves no known digits")
        q = self.prime ** k
        for e, c in self.terms.items():
            if c % q:
                raise NotDivisibleError(
                    f"coefficient of {_monomial_str(self.ring.vars, e) or '1'} "
                    f"({c}) is not divisible by {self.prime}^{k}")
        return BaseElt(self.ring.with_prec(self.prec - k), {e: c // q for e, c in self.terms.items()})

    def frobenius_mod_p(self) -> BaseElt:
        """a^p reduced mod p."""
        return self.mod_p() ** self.prime

    def frobenius_by_substitution(self) -> BaseElt:
        """(a mod p) with every u_i replaced by u_i^p.

        Agrees with :meth:`frobenius_mod_p` because the coefficients lie in F_p.
        """
        p = self.prime
        return BaseElt(self.ring.with_prec(1),
                       {tuple(p * x for x in e): c for e, c in self.terms.items()})

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.vars),
            "p": self.prime,
            "prec": self.prec,
            "degcap": self.ring.degcap,
            "terms": [[list(e), c] for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict, ring: BaseRing | None = None) -> BaseElt:
        if ring is None:
            ring = BaseRing(tuple(data["vars"]), data.get("degcap", DEFAULT_DEGCAP),
                            data["p"], data.get("prec", DEFAULT_PREC))
        elif "vars" in data and tuple(data["vars"]) != ring.vars:
            raise ValueError(f"variables {data['vars']} do not match {list(ring.vars)}")
        return BaseElt(ring, {tuple(e): int(c) for e, c in data["terms"]})

    def polynomial_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            c = centered(c, self.ring.modulus)
            mono = _monomial_str(self.ring.vars, e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        p, n = self.prime, self.prec
        tail = f"O({p}^{n})" if not self.ring.vars else f"O(deg {self.ring.degcap + 1}, {p}^{n})"
        if not self.terms:
            return tail
        return f"{self.polynomial_str()} + {tail}"

    def __repr__(self):
        return f"BaseElt({self})"


def _monomial_str(names, exp) -> str:
    out = []
    for name, k in zip(names, exp):
        if k == 1:
            out.append(name)
        elif k:
            out.append(f"{name}^{k}")
    return "*".join(out)


def parse_series(text: str, ring: BaseRing) -> BaseElt:
    """Parse a polynomial such as ``"u1^2 + 3*u1 - 1"`` into ``ring``."""
    import sympy

    symbols = sympy.symbols(ring.vars) if ring.vars else ()
    if ring.nvars == 1:
        symbols = (symbols,) if not isinstance(symbols, tuple) else symbols
    local = {name: s for name, s in zip(ring.vars, symbols)}
    expr = sympy.sympify(text, locals=local, convert_xor=True)
    if not symbols:
        value = sympy.Integer(expr) if expr.is_integer else None
        if value is None:
            raise ValueError(f"{text!r} is not an integer")
        return ring(int(value))
    poly = sympy.Poly(expr, *symbols)
    if poly.domain != sympy.ZZ and not all(c.is_integer for c in poly.coeffs()):
        raise ValueError(f"{text!r} has non-integer coefficients")
    return BaseElt(ring, {tuple(e): int(c) for e, c in poly.terms()})
