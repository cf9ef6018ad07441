"""Concrete ring towers E -> E(BSigma_p) -> E(BSigma_p)/I -> D_1.

Height 1 is derived from the multiplicative formal group law; height 2 at
p = 2 is the elliptic-curve presentation with E(BSigma_2)/I =
Z_2[[u1]][x]/(x^3 - u1 x - 2) and P_2/I(u1) = u1^2 + 3x - u1 x^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .freealg import (AlgElt, MonicPoly, QuotAlgebra, RingMap, adjoin_root,
                      poly_divide_linear)
from .padics import DEFAULT_PREC
from .series import DEFAULT_DEGCAP, BaseElt, BaseRing

HEIGHT1_PRIMES = (2, 3, 5)


class ModelError(ValueError):
    pass


class PowerOperationError(ArithmeticError):
    """The image of a generator is not topologically nilpotent."""


@dataclass(frozen=True, eq=False)
class TheoryModel:
    name: str
    p: int
    n: int
    base: BaseRing
    sigma_algebra: QuotAlgebra       # E(BSigma_p)/I = E[x]/(f)
    full_algebra: QuotAlgebra        # E(BSigma_p) = E[y]/(y f(y))
    variable_images: tuple           # P_p/I of each u_i, in sigma_algebra
    splitting_ring: object           # D_1, or E when f is linear
    roots: tuple
    extras: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.sigma_algebra.rank

    @property
    def modulus(self) -> MonicPoly:
        return self.sigma_algebra.modulus

    @property
    def full_modulus(self) -> MonicPoly:
        return self.full_algebra.modulus

    @property
    def power_image(self) -> AlgElt | None:
        return self.variable_images[0] if self.variable_images else None

    @cached_property
    def quotient_map(self) -> RingMap:
        """E(BSigma_p) -> E(BSigma_p)/I, y -> x."""
        return RingMap(self.full_algebra, self.sigma_algebra, self.sigma_algebra.gen(), "quotient")

    @cached_property
    def restriction_map(self) -> RingMap:
        """E(BSigma_p) -> E, y -> 0."""
        return RingMap(self.full_algebra, self.base, 0, "restriction")

    @cached_property
    def frobenius_class_map(self) -> RingMap:
        """E(BSigma_p)/I -> E/p, x -> 0."""
        return RingMap(self.sigma_algebra, self.base.with_prec(1), 0, "frobenius class")

    @cached_property
    def characters(self) -> tuple:
        """One algebra map into D_1 per root, i.e. per order-p subgroup."""
        return tuple(RingMap(self.sigma_algebra, self.splitting_ring, r, f"chi_{i}")
                     for i, r in enumerate(self.roots))

    @cached_property
    def image_powers(self) -> tuple:
        """Powers 0..degcap of every generator image, after a nilpotence check."""
        bound = 3 * (self.base.prec + self.base.degcap + 2)
        out = []
        for img in self.variable_images:
            cur = img
            for _ in range(bound):
                if cur.is_zero():
                    break
                cur = cur * img
            else:
                raise PowerOperationError(
                    f"{img} is not nilpotent within {bound} multiplications; "
                    "it cannot be the image of a maximal-ideal generator")
            powers = [self.sigma_algebra.one()]
            for _ in range(self.base.degcap):
                powers.append(powers[-1] * img)
            out.append(tuple(powers))
        return tuple(out)

    def summary(self) -> dict:
        return {
            "model": self.name,
            "p": self.p,
            "n": self.n,
            "rank": self.m,
            "base": str(self.base),
            "modulus": poly_str_named(self.modulus, self.sigma_algebra.name),
            "full_modulus": poly_str_named(self.full_modulus, self.full_algebra.name),
            "f0": str(self.modulus.constant_term()),
            "power_image": None if self.power_image is None else str(self.power_image),
            "splitting_rank": self.splitting_ring.flat_rank,
            "roots": [root_str(r) for r in self.roots],
            **{k: str(v) for k, v in self.extras.items() if k in ("norm_class", "p_series")},
        }


def poly_str_named(f: MonicPoly, name: str) -> str:
    from .freealg import poly_str
    return poly_str(f.coeffs, name)


def root_str(r) -> str:
    return r.polynomial_str() if isinstance(r, BaseElt) else str(r)


def p_series_multiplicative(p: int, prec: int = DEFAULT_PREC,
                            degcap: int = DEFAULT_DEGCAP) -> MonicPoly:
    """[p](x) = (1 + x)^p - 1 for the multiplicative formal group law."""
    E = BaseRing((), degcap, p, prec)
    return MonicPoly(E, [0] + [math.comb(p, i) for i in range(1, p + 1)])


def _u_series(x: AlgElt, u: int) -> AlgElt:
    return (x + 1) ** u - 1


def _invariant_rank(bz: QuotAlgebra, automorphisms) -> int:
    import sympy

    n = bz.rank
    blocks = []
    for phi in automorphisms:
        M = phi.matrix()
        rows = [[M[i][j].constant_term().lift() - (1 if i == j else 0) for j in range(n)]
                for i in range(n)]
        blocks.extend(rows)
    return n - sympy.Matrix(blocks).rank()


def height1_model(p: int, prec: int = DEFAULT_PREC, degcap: int = DEFAULT_DEGCAP) -> TheoryModel:
    """Height 1 at p in {2, 3, 5}, built from the multiplicative [p]-series.

    E(BZ/p)/I = Z_p[x]/([p](x)/x).  The Aut(Z/p)-invariant generator is the
    norm class prod_u [u](x); it reduces to a constant c of valuation one,
    which gives f(y) = y - c.
    """
    if p not in HEIGHT1_PRIMES:
        raise ModelError(f"height-1 models are built for p in {HEIGHT1_PRIMES}, not {p}")
    E = BaseRing((), degcap, p, prec)
    pser = p_series_multiplicative(p, prec, degcap)
    g = MonicPoly(E, pser.coeffs[1:])
    bz = QuotAlgebra(E, g, "x")
    x = bz.gen()

    norm = bz.one()
    for u in range(1, p):
        norm = norm * _u_series(x, u)
    autos = [RingMap(bz, bz, _u_series(x, u), f"[{u}]") for u in range(1, p)]
    for phi in autos:
        if not phi(norm) == norm:
            raise ModelError(f"norm class is not fixed by {phi.label}")
    rank = _invariant_rank(bz, autos)
    if rank != 1:
        raise ModelError(f"invariant submodule has rank {rank}, expected 1")
    if not norm.is_scalar():
        raise ModelError(f"norm class {norm} does not reduce to a constant")
    c = norm.vec[0]
    if c.valuation() != 1:
        raise ModelError(f"norm class {c} does not have valuation 1")

    f = MonicPoly(E, [-c, 1])
    sigma = QuotAlgebra(E, f, "y")
    full = QuotAlgebra(E, f * MonicPoly(E, [0, 1]), "y")
    model = TheoryModel(
        name=f"height1-p{p}", p=p, n=1, base=E,
        sigma_algebra=sigma, full_algebra=full, variable_images=(),
        splitting_ring=E, roots=(c,),
        extras={"p_series": poly_str_named(pser, "x"), "cyclic_algebra": bz,
                "norm_class": norm, "automorphisms": autos},
    )
    model.extras["to_cyclic"] = RingMap(sigma, bz, norm, "y -> norm class")
    return model


def height2_model(prec: int = DEFAULT_PREC, degcap: int = DEFAULT_DEGCAP) -> TheoryModel:
    """p = 2, height 2: f = x^3 - u1 x - 2 and u1 -> u1^2 + 3x - u1 x^2.

    The splitting ring D_1 = E[y]/(f(y))[z]/(z^2 + yz + y^2 - u1) carries
    the roots y, z, -y-z.
    """
    E = BaseRing(("u1",), degcap, 2, prec)
    u1 = E.gen("u1")
    f = MonicPoly(E, [-2, -u1, 0, 1])
    sigma = QuotAlgebra(E, f, "x")
    full = QuotAlgebra(E, f * MonicPoly(E, [0, 1]), "y")
    x = sigma.gen()
    power_image = u1 ** 2 + x * 3 - x * x * u1

    A = adjoin_root(E, f, "y")
    y = A.gen()
    g = poly_divide_linear(f, y)
    D1 = adjoin_root(A, g, "z")
    z = D1.gen()
    last = poly_divide_linear(g, z)
    roots = (D1(y), z, -last.coeffs[0])
    residual = [a - b for a, b in zip(MonicPoly.from_roots(D1, roots).coeffs, f.over(D1).coeffs)]
    if not all(r.is_zero() for r in residual):
        raise ModelError("f does not split over D_1")
    return TheoryModel(
        name="height2-p2", p=2, n=2, base=E,
        sigma_algebra=sigma, full_algebra=full, variable_images=(power_image,),
        splitting_ring=D1, roots=roots,
        extras={"intermediate": A, "quadratic": g},
    )


def build_model(height: int, p: int = 2, prec: int = DEFAULT_PREC,
                degcap: int = DEFAULT_DEGCAP) -> TheoryModel:
    if height == 1:
        return height1_model(p, prec, degcap)
    if height == 2:
        if p != 2:
            raise ModelError("the height-2 model is only available at p = 2")
        return height2_model(prec, degcap)
    raise ModelError(f"no model at height {height}")


def power_op(model: TheoryModel, g) -> AlgElt:
    """P_p/I on the coefficient ring: substitute generator images into g.

    g is read as the polynomial its truncation represents, so the result is
    a finite sum; the images are checked to be nilpotent first.
    """
    g = model.base(g)
    sigma = model.sigma_algebra
    if not model.variable_images:
        return sigma.scalar(g)
    powers = model.image_powers
    total = sigma.zero()
    for exp, c in g.terms.items():
        term = None
        for i, e in enumerate(exp):
            if e:
                term = powers[i][e] if term is None else term * powers[i][e]
        coeff = BaseElt(g.ring, {(0,) * len(exp): c})
        total = total + (sigma.scalar(coeff) if term is None else term * coeff)
    return total
