"""Command-line driver.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import froblift, verify
from .charfun import enum_subgroups
from .freealg import AlgElt
from .models import HEIGHT1_PRIMES, ModelError, TheoryModel, build_model
from .padics import DEFAULT_PREC
from .series import DEFAULT_DEGCAP, BaseElt, BaseRing, parse_series


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    prime: int = 2
    height: str = "height2"
    precision: int = DEFAULT_PREC
    degree: int = DEFAULT_DEGCAP
    seed: int = froblift.DEFAULT_SEED
    samples: int = froblift.DEFAULT_SAMPLES
    output: str = "pretty"

    def validate(self) -> None:
        if self.precision < 2:
            raise InputError("--precision must be at least 2")
        if self.degree < 2:
            raise InputError("--degree must be at least 2")
        if self.samples < 0:
            raise InputError("--samples must be non-negative")
        if self.height == "height1" and self.prime not in HEIGHT1_PRIMES:
            raise InputError(f"height1 needs --prime in {list(HEIGHT1_PRIMES)}")
        if self.height == "height2" and self.prime != 2:
            raise InputError("height2 fixes p = 2")

    def model(self) -> TheoryModel:
        h = 1 if self.height == "height1" else 2
        return build_model(h, self.prime, self.precision, self.degree)


def parse_element(text, ring: BaseRing) -> BaseElt:
    """Read a base element from JSON (int, term list, dict) or a polynomial string."""
    if isinstance(text, str):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError:
            obj = text
    else:
        obj = text
    try:
        if isinstance(obj, bool):
            raise InputError("booleans are not ring elements")
        if isinstance(obj, int):
            return ring(obj)
        if isinstance(obj, str):
            return parse_series(obj, ring)
        if isinstance(obj, dict):
            return BaseElt.from_json(obj, ring)
        if isinstance(obj, list):
            return BaseElt.from_json({"terms": obj}, ring)
    except InputError:
        raise
    except Exception as exc:
        raise InputError(f"cannot read element {text!r}: {exc}") from exc
    raise InputError(f"cannot read element {text!r}")


def parse_alg_element(text, model: TheoryModel) -> AlgElt:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"algebra elements are JSON lists of coordinates: {exc}") from exc
    if isinstance(obj, dict):
        obj = obj.get("vec")
    if not isinstance(obj, list):
        raise InputError("algebra elements are JSON lists of coordinates")
    if len(obj) != model.m:
        raise InputError(f"expected {model.m} coordinates, got {len(obj)}")
    return model.sigma_algebra.from_vec([parse_element(c, model.base) for c in obj])


def _config_from(args) -> RunConfig:
    height = args.height
    if height is None:
        height = "height2" if args.prime == 2 else "height1"
    return RunConfig(args.prime, height, args.precision, args.degree,
                     args.seed, args.samples, "json" if args.json else "pretty")


def _reports_result(reports, summary_prefix: str) -> dict:
    checks = [c for r in reports for c in r.checks]
    passed = all(c.passed for c in checks)
    failed = [c.name for c in checks if not c.passed]
    summary = f"{summary_prefix}: {len(checks) - len(failed)}/{len(checks)} checks passed"
    if failed:
        summary += "; failed: " + ", ".join(failed)
    return {"pass": passed, "reports": [r.to_json() for r in reports], "summary": summary}


def cmd_subgroups(args, cfg):
    table = enum_subgroups(args.prime, args.n, args.k)
    out = table.to_json()
    out["pass"] = True
    out["summary"] = f"{table.count} subgroups of order {args.prime}^{args.k} in (Q_{args.prime}/Z_{args.prime})^{args.n}"
    return out


def cmd_model(args, cfg):
    if args.which == "height2" and cfg.prime != 2:
        raise InputError("height2 fixes p = 2")
    cfg = RunConfig(cfg.prime, args.which, cfg.precision, cfg.degree, cfg.seed, cfg.samples)
    cfg.validate()
    model = cfg.model()
    out = model.summary()
    out["pass"] = True
    out["summary"] = f"{model.name}: rank {model.m}, modulus {out['modulus']}"
    return out


def cmd_sigma_can(args, cfg):
    model = cfg.model()
    basis = model.sigma_algebra.basis()
    name = model.sigma_algebra.name
    values = []
    for i, b in enumerate(basis):
        values.append({
            "element": f"{name}^{i}",
            "sigma_can": str(froblift.sigma_can(model, b)),
            "normalized": str(froblift.sigma_can(model, b, normalized=True)),
        })
    out = {"model": model.name, "basis": values}
    if args.elt is not None:
        a = parse_alg_element(args.elt, model)
        out["element"] = str(a)
        out["sigma_can"] = str(froblift.sigma_can(model, a))
        out["normalized"] = str(froblift.sigma_can(model, a, normalized=True))
    out["pass"] = True
    out["summary"] = "sigma_can on the basis: " + ", ".join(
        f"{v['element']} -> {v['sigma_can']}" for v in values)
    return out


def cmd_hecke(args, cfg):
    model = cfg.model()
    g = parse_element(args.elt, model.base)
    t = froblift.hecke_Tp(model, g)
    return {"model": model.name, "input": str(g), "result": str(t), "json": t.to_json(),
            "pass": True, "summary": f"T{model.p}({g.polynomial_str()}) = {t.polynomial_str()}"}


def cmd_theta(args, cfg):
    model = cfg.model()
    g = parse_element(args.elt, model.base)
    try:
        t = froblift.theta(model, g)
    except froblift.TorsionObstructionError as exc:
        return {"model": model.name, "input": str(g), "pass": False, "error": str(exc),
                "summary": f"theta({g.polynomial_str()}) obstructed"}
    return {"model": model.name, "input": str(g), "result": str(t), "json": t.to_json(),
            "pass": True, "summary": f"theta({g.polynomial_str()}) = {t}"}


def cmd_verify(args, cfg):
    what = args.what
    if what == "all":
        reports = verify.run_all(cfg.precision, cfg.degree, cfg.samples, cfg.seed)
    else:
        model = cfg.model()
        if what == "congruence":
            reports = [froblift.congruence_check(model, cfg.samples, cfg.seed)]
        elif what == "frobenius-class":
            reports = [froblift.frobenius_class_check(model)]
        elif what == "index-lemma":
            idx = froblift.index_check(model)
            rep = froblift.FrobeniusReport(model.name)
            rep.add("index of E(BSigma_p) in E x E(BSigma_p)/I is p",
                    idx.valuation == 1 and idx.cofactor_is_unit, idx.to_json(), "index is p")
            reports = [rep]
        else:
            reports = [froblift.factorization_check(model)]
    return _reports_result(reports, f"verify {what}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", "--p", dest="prime", type=int, default=2)
    sel = common.add_mutually_exclusive_group()
    sel.add_argument("--height1", dest="height", action="store_const", const="height1")
    sel.add_argument("--height2", dest="height", action="store_const", const="height2")
    common.add_argument("--precision", type=int, default=DEFAULT_PREC)
    common.add_argument("--degree", type=int, default=DEFAULT_DEGCAP)
    common.add_argument("--seed", type=int, default=froblift.DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=froblift.DEFAULT_SAMPLES)
    common.add_argument("--json", action="store_true", help="compact JSON only")

    parser = argparse.ArgumentParser(
        prog="canonlift",
        description="Canonical Frobenius lift, Hecke operator and theta at desk scale.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subgroups", parents=[common], help="enumerate subgroups of (Q_p/Z_p)^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_subgroups)

    p = sub.add_parser("model", parents=[common], help="describe a model")
    p.add_argument("which", choices=["height1", "height2"])
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("sigma-can", parents=[common], help="sigma_can on the basis")
    p.add_argument("--elt", help="JSON list of coordinates")
    p.set_defaults(func=cmd_sigma_can)

    p = sub.add_parser("hecke", parents=[common], help="apply T_p to a base element")
    p.add_argument("--elt", required=True)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("theta", parents=[common], help="apply theta to a base element")
    p.add_argument("--elt", required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("verify", parents=[common], help="run checks")
    p.add_argument("what", choices=["congruence", "frobenius-class", "index-lemma",
                                    "factorization", "all"])
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        if args.command not in ("subgroups", "model"):
            cfg.validate()
        result = args.func(args, cfg)
    except (InputError, ModelError) as exc:
        print(f"canonlift: error: {exc}", file=sys.stderr)
        return 2
    result = {"command": args.command, "config": asdict(cfg), **result}
    if cfg.output == "json":
        stdout.write(json.dumps(result) + "\n")
    else:
        stdout.write(json.dumps(result, indent=2) + "\n")
        stdout.write(result["summary"] + "\n")
    return 0 if result["pass"] else 1


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
