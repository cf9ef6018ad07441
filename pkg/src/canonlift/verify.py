"""Check batteries behind ``canonlift verify``.

Each function returns a FrobeniusReport; ``run_all`` strings them together
in the order of the acceptance suite.
"""

from __future__ import annotations

import random

from .charfun import (ClassFun, classfun_of_element, count_formula_check, enum_subgroups,
                      subgroup_count_formula, transfer_scaled)
from .freealg import MonicPoly, QuotAlgebra, alg_trace, newton_power_sums
from .froblift import (FrobeniusReport, TorsionObstructionError, adams_psi, congruence_check,
                       factorization_check, frobenius_class_check, hecke_Tp, index_check,
                       sigma_can, structural_check, theta)
from .models import HEIGHT1_PRIMES, TheoryModel, height1_model, height2_model, power_op

SUBGROUP_CASES = ((2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2))
ORACLE_SAMPLES = 50


def subgroup_counts(cases=SUBGROUP_CASES) -> FrobeniusReport:
    report = FrobeniusReport("subgroups")
    for p, n in cases:
        count = enum_subgroups(p, n, 1).count
        report.add(f"|Sub_{p}| at n={n} = {subgroup_count_formula(p, n)}",
                   count_formula_check(p, n), count, "|Sub_p| = (p^n - 1)/(p - 1) = 1 mod p")
    return report


def height2_values(model: TheoryModel) -> FrobeniusReport:
    report = FrobeniusReport(model.name)
    x = model.sigma_algebra.gen()
    u1 = model.base.gen("u1")
    s = sigma_can(model, x)
    report.add("sigma_can(x) = 0", s.is_zero(), str(s), "sigma_can(x) = 0")
    t = hecke_Tp(model, u1)
    report.add("T2(u1) = u1^2", t == u1 ** 2 and t.prec == model.base.prec, str(t),
               "T_2(u1) = u1^2")
    fact = factorization_check(model)
    report.checks.extend(fact.checks)
    return report


def _random_monic(E, rng, degree: int) -> MonicPoly:
    coeffs = []
    for _ in range(degree):
        c = E.zero()
        for exp in E.monomials():
            if sum(exp) <= 2 and rng.random() < 0.6:
                c = c + E.from_dict({exp: rng.randint(-5, 5)})
        coeffs.append(c)
    return MonicPoly(E, coeffs + [E.one()])


def oracle_equivalences(model: TheoryModel, samples: int = ORACLE_SAMPLES,
                        seed: int = 1) -> FrobeniusReport:
    report = FrobeniusReport(model.name)
    rng = random.Random(seed)
    E = model.base

    bad = []
    for k in range(samples):
        f = _random_monic(E, rng, rng.randint(1, 6))
        A = QuotAlgebra(E, f, "t")
        sums = newton_power_sums(f, 8)
        t = A.gen()
        power = A.one()
        for j in range(1, 9):
            power = power * t
            if not sums[j - 1] == alg_trace(power):
                bad.append({"sample": k, "f": str(f), "k": j})
    report.add(f"newton power sums = trace(x^k) ({samples} random f)", not bad,
               bad[0] if bad else samples)

    D = model.splitting_ring
    bad = []
    for k in range(samples):
        a = model.sigma_algebra.random_element(rng)
        by_roots = transfer_scaled(classfun_of_element(a, model.roots))
        if not by_roots == D(alg_trace(a)):
            bad.append({"sample": k, "a": str(a)})
    report.add(f"sum over characters = trace ({samples} random a)", not bad,
               bad[0] if bad else samples, "sigma_can is a sum of maps, one per subgroup")

    bad = []
    for k in range(samples):
        g = E.random_element(rng)
        total = D.zero()
        for i in range(model.m):
            total = total + adams_psi(model, g, i)
        if not total == D(hecke_Tp(model, g)):
            bad.append({"sample": k, "g": str(g)})
    report.add(f"sum of psi^H = T_p ({samples} random g)", not bad,
               bad[0] if bad else samples, "(sigma_can x 1)(P_p/I) = T_p")
    return report


def height1_hecke(samples: int = ORACLE_SAMPLES, seed: int = 1, prec: int = 16,
                  degcap: int = 8, primes=HEIGHT1_PRIMES) -> FrobeniusReport:
    report = FrobeniusReport("height1")
    rng = random.Random(seed)
    for p in primes:
        model = height1_model(p, prec, degcap)
        bad_eq, bad_cong = [], []
        for _ in range(samples):
            z = model.base(rng.randrange(p ** prec))
            t = hecke_Tp(model, z)
            if not t == z:
                bad_eq.append(str(z))
            if not (t - z ** p).mod_p().is_zero():
                bad_cong.append(str(z))
        report.add(f"T_{p}(z) = z at height 1", not bad_eq, bad_eq[:1] or samples,
                   "T_p(z) = |Sub_p| z")
        report.add(f"T_{p}(z) = z^{p} mod {p} at height 1", not bad_cong,
                   bad_cong[:1] or samples, "T_p(x) = x^p mod p")
    return report


def corrupted_model(model: TheoryModel) -> TheoryModel:
    """Shift the power operation by u1; the trace difference acquires a unit coefficient."""
    from dataclasses import replace

    u1 = model.base.gen(0)
    return replace(model, variable_images=(model.power_image + u1,))


def theta_contract(model: TheoryModel, samples: int = ORACLE_SAMPLES,
                   seed: int = 1) -> FrobeniusReport:
    report = FrobeniusReport(model.name)
    u1 = model.base.gen("u1")
    t = theta(model, u1)
    report.add("theta(u1) = 0", t.is_zero(), str(t))
    t = theta(model, 1)
    report.add("theta(1) = 1", t == 1, str(t))
    rng = random.Random(seed)
    bad = []
    p = model.p
    for k in range(samples):
        g = model.base.random_element(rng)
        th = theta(model, g)
        lhs = g ** p + th * p
        rhs = hecke_Tp(model, g)
        if th.prec != model.base.prec - 1 or not lhs == rhs:
            bad.append({"sample": k, "g": str(g)})
    report.add(f"g^p + p theta(g) = T_p(g) at prec N-1 ({samples} random g)", not bad,
               bad[0] if bad else samples, "T_p(x) = x^p + p theta(x)")
    try:
        theta(corrupted_model(model), u1)
        raised, witness = False, "no error"
    except TorsionObstructionError as exc:
        raised, witness = True, str(exc)
    report.add("theta detects a torsion obstruction", raised, witness)
    return report


def homomorphism_check(model: TheoryModel, samples: int = ORACLE_SAMPLES,
                       seed: int = 1) -> FrobeniusReport:
    """P_p/I is additive and multiplicative on pairs whose product is not truncated."""
    report = FrobeniusReport(model.name)
    rng = random.Random(seed)
    D = model.base.degcap
    bad = []
    for k in range(samples):
        dg = rng.randint(0, D)
        g = model.base.random_element(rng, degree=dg)
        h = model.base.random_element(rng, degree=D - dg)
        mult = power_op(model, g * h) == power_op(model, g) * power_op(model, h)
        add = power_op(model, g + h) == power_op(model, g) + power_op(model, h)
        if not (mult and add):
            bad.append({"sample": k, "g": str(g), "h": str(h)})
    report.add(f"power_op is a ring map ({samples} random pairs)", not bad,
               bad[0] if bad else samples)
    return report


def transfer_check(model: TheoryModel) -> FrobeniusReport:
    report = FrobeniusReport(model.name)
    table = enum_subgroups(model.p, model.n, 1)
    E = model.base
    e = E.gen(0) + 5 if E.nvars else E(5)
    phi = ClassFun.constant(table, e, trivial_value=E.zero())
    value = transfer_scaled(phi)
    report.add("p! Tr(e off the trivial class) = |Sub_p| e", value == e * table.count,
               str(value), "p! Tr(e) = |Sub_p| e")
    ones = transfer_scaled(ClassFun.constant(table, E.one()))
    report.add("p! Tr(1) counts 1 + |Sub_p| classes", ones == 1 + table.count, str(ones))
    return report


def run_all(prec: int = 16, degcap: int = 8, samples: int = 200, seed: int = 1) -> list:
    h2 = height2_model(prec, degcap)
    h1 = [height1_model(p, prec, degcap) for p in HEIGHT1_PRIMES]
    reports = [subgroup_counts(), height2_values(h2), congruence_check(h2, samples, seed)]
    reports += [frobenius_class_check(m) for m in h1 + [h2]]
    for m in (h1[1], h2):
        rep = FrobeniusReport(m.name)
        idx = index_check(m)
        rep.add("index of E(BSigma_p) in E x E(BSigma_p)/I is p",
                idx.valuation == 1 and idx.cofactor_is_unit, idx.to_json(),
                "index is p")
        reports.append(rep)
    reports.append(oracle_equivalences(h2, ORACLE_SAMPLES, seed))
    reports.append(height1_hecke(ORACLE_SAMPLES, seed, prec, degcap))
    reports.append(theta_contract(h2, ORACLE_SAMPLES, seed))
    reports += [structural_check(m) for m in h1 + [h2]]
    reports.append(homomorphism_check(h2, ORACLE_SAMPLES, seed))
    reports += [transfer_check(m) for m in (h1[0], h2)]
    return reports
