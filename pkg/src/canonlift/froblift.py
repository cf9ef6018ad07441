"""The canonical Frobenius lift, the p-th Hecke operator and theta.

``sigma_can`` is the trace of multiplication on E(BSigma_p)/I: summing the
character maps over all order-p subgroups is the same as taking the trace,
and the trace needs no denominators.  ``hecke_Tp`` composes it with the
power operation; ``adams_psi`` evaluates the power operation at a single
root so the Hecke operator can be recomputed as a sum of ring maps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .charfun import enum_subgroups, subgroup_count_formula
from .freealg import (AlgElt, IndexReport, MonicPoly, QuotAlgebra, alg_trace, charpoly_check,
                      submodule_index)
from .models import TheoryModel, power_op
from .padics import NotDivisibleError, PAdicInt
from .series import BaseElt

DEFAULT_SEED = 1
DEFAULT_SAMPLES = 200


class TorsionObstructionError(ArithmeticError):
    """T_p(g) - g^p is not divisible by p, so theta(g) does not exist."""


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    claim: str = ""

    def to_json(self) -> dict:
        return {"check": self.name, "pass": bool(self.passed),
                "witness": self.witness, "paper_ref": self.claim}


@dataclass
class FrobeniusReport:
    model: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=None, claim="") -> Check:
        check = Check(name, bool(passed), witness, claim)
        self.checks.append(check)
        return check

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"model": self.model, "pass": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def sigma_can(model: TheoryModel, a: AlgElt, normalized: bool = False) -> BaseElt:
    """p! Tr restricted to E(BSigma_p)/I, computed as a trace.

    With ``normalized`` the result is divided by the unit m = |Sub_p|, so
    scalars are fixed.
    """
    a = model.sigma_algebra(a)
    t = alg_trace(a)
    if normalized:
        m = PAdicInt(model.p, model.base.prec, model.m)
        t = t * m.inverse()
    return t


def frobenius_class_check(model: TheoryModel) -> FrobeniusReport:
    """sigma_can reduces mod p to the map killing x, and sigma_can(1) = m = 1 mod p."""
    report = FrobeniusReport(model.name)
    sigma = model.sigma_algebra
    bar = model.frobenius_class_map
    basis = sigma.basis()
    one_value = sigma_can(model, basis[0])
    report.add("sigma_can(1) = m", one_value == model.m, str(one_value),
               "sigma_can(e) = |Sub_p| e")
    report.add("m = 1 mod p", model.m % model.p == 1 % model.p, model.m,
               "|Sub_p| = 1 mod p")
    for i, b in enumerate(basis):
        value = sigma_can(model, b)
        if i:
            report.add(f"sigma_can({sigma.name}^{i}) = 0 mod p",
                       value.mod_p().is_zero(), str(value), "sigma_can(q(y^i)) = 0 mod p")
        report.add(f"sigma_can({sigma.name}^{i}) mod p = frobenius class",
                   value.mod_p() == bar(b), str(value.mod_p()),
                   "frobenius class is the quotient by (y)")
    return report


def hecke_Tp(model: TheoryModel, g) -> BaseElt:
    """(sigma_can x 1)(P_p/I)(g)."""
    return alg_trace(power_op(model, g))


def adams_psi(model: TheoryModel, g, root_index: int):
    """The Adams operation for one order-p subgroup, valued in D_1."""
    chars = model.characters
    if not 0 <= root_index < len(chars):
        raise IndexError(f"root index {root_index} out of range 0..{len(chars) - 1}")
    return chars[root_index](power_op(model, g))


def hecke_as_sum(model: TheoryModel, g):
    """Sum of adams_psi over all subgroups, in D_1."""
    total = model.splitting_ring.zero()
    for i in range(model.m):
        total = total + adams_psi(model, g, i)
    return total


def congruence_check(model: TheoryModel, samples: int = DEFAULT_SAMPLES,
                     seed: int = DEFAULT_SEED) -> FrobeniusReport:
    """T_p(g) = g^p mod p for seeded random g."""
    report = FrobeniusReport(model.name)
    rng = random.Random(seed)
    bad = []
    for k in range(samples):
        g = model.base.random_element(rng)
        diff = hecke_Tp(model, g) - g ** model.p
        if not diff.mod_p().is_zero():
            bad.append({"sample": k, "g": str(g), "difference": str(diff)})
    report.add(f"T_p(g) = g^p mod p ({samples} samples, seed {seed})",
               not bad, bad[0] if bad else samples, "T_p(x) = x^p mod p")
    return report


def theta(model: TheoryModel, g) -> BaseElt:
    """(T_p(g) - g^p) / p, known to one digit less than g."""
    g = model.base(g)
    diff = hecke_Tp(model, g) - g ** model.p
    try:
        return diff.div_exact(1)
    except NotDivisibleError as exc:
        raise TorsionObstructionError(f"theta({g}) does not exist: {exc}") from exc


def index_vectors(model: TheoryModel) -> list:
    """Images of 1, y, ..., y^m under E(BSigma_p) -> E x E(BSigma_p)/I."""
    full = model.full_algebra
    res, quo = model.restriction_map, model.quotient_map
    return [[res(b)] + list(quo(b).vec) for b in full.basis()]


def index_check(model: TheoryModel) -> IndexReport:
    return submodule_index(index_vectors(model))


def factorization_check(model: TheoryModel) -> FrobeniusReport:
    """f splits as prod (x - root) over D_1 and the roots have the right symmetric functions."""
    report = FrobeniusReport(model.name)
    D = model.splitting_ring
    f = model.modulus
    product = MonicPoly.from_roots(D, model.roots)
    report.add("prod (x - root) = f over D_1", product == f.over(D),
               " * ".join(f"(x - ({_show(r)}))" for r in model.roots),
               "x^3 - u1 x - 2 = (x - y)(x - z)(x + y + z)")
    for i in range(1, model.m + 1):
        e = _elementary(model.roots, i, D)
        expected = D(f.coeffs[model.m - i]) * (-1) ** i
        report.add(f"e_{i}(roots) = (-1)^{i} f_{model.m - i}", e == expected, _show(e))
    for i, root in enumerate(model.roots):
        report.add(f"f(root_{i}) = 0", f.evaluate_in(D, root).is_zero(), _show(root))
    return report


def _elementary(roots, k, ring):
    from itertools import combinations
    total = ring.zero()
    for combo in combinations(roots, k):
        term = ring.one()
        for r in combo:
            term = term * r
        total = total + term
    return total


def _show(x) -> str:
    return x.polynomial_str() if isinstance(x, BaseElt) else str(x)


def structural_check(model: TheoryModel) -> FrobeniusReport:
    report = FrobeniusReport(model.name)
    algebras = {"E(BSigma_p)/I": model.sigma_algebra, "E(BSigma_p)": model.full_algebra}
    ring, level = model.splitting_ring, 0
    while isinstance(ring, QuotAlgebra):
        algebras[f"splitting stage {level}"] = ring
        ring, level = ring.base, level + 1
    if "cyclic_algebra" in model.extras:
        algebras["E(BZ/p)/I"] = model.extras["cyclic_algebra"]
    for label, A in algebras.items():
        report.add(f"charpoly_check {label}", charpoly_check(A), str(A))
    report.add("rank = |Sub_p|", model.m == subgroup_count_formula(model.p, model.n),
               model.m, "E(BSigma_p)/I is free of rank |Sub_p|")
    report.add("val f(0) = 1", model.modulus.constant_term().valuation() == 1,
               str(model.modulus.constant_term()), "f(0) = p (up to a unit)")
    report.add("subgroup table size = m", enum_subgroups(model.p, model.n, 1).count == model.m)
    return report
