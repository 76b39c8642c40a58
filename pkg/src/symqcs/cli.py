"""Command-line front end: builders, checks and verification suites with JSON reports.

Exit status: 0 on success, 1 on input errors, 2 when a verification fails.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from math import comb, factorial

from .algebra import SymAlgebra
from .errors import ConfigurationError, DimensionOverflow, InvariantViolation, SymqcsError
from .linalg import ModP

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _json_default(x):
    if isinstance(x, (Fraction, ModP)):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    return str(x)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default) + "\n"


def max_dim() -> int:
    try:
        return int(os.environ.get("SYMQCS_MAX_DIM", "5000"))
    except ValueError as exc:
        raise ConfigurationError("SYMQCS_MAX_DIM must be an integer") from exc


def guard(dims, what: str) -> None:
    bound = max_dim()
    worst = max(dims, default=0)
    if worst > bound:
        raise DimensionOverflow(f"{what}: level dimension {worst} exceeds SYMQCS_MAX_DIM={bound}")


# ---------------------------------------------------------------- algebra sources

def algebra_spec(args) -> str | None:
    chosen = [s for s in (args.tensor, args.exterior, args.sym_group, args.ring is not None) if s]
    if len(chosen) > 1:
        raise ConfigurationError("choose one of --tensor, --exterior, --sym-group, --ring")
    if args.tensor:
        return f"T({args.dim})"
    if args.exterior:
        return f"Lambda({args.dim})"
    if args.sym_group:
        return "kSigma" if args.action == "left" else "kSigma(conjugation)"
    return args.ring


def predicted_dims(spec: str, cutoff: int) -> list[int]:
    import re
    m = re.fullmatch(r"(T|Lambda)\((\d+)\)", spec)
    if m:
        d = int(m.group(2))
        return [d ** n if m.group(1) == "T" else comb(d, n) for n in range(cutoff + 1)]
    if spec.startswith("kSigma"):
        return [factorial(n) for n in range(cutoff + 1)]
    from .parse import parse_ring
    ring = parse_ring(spec)
    return [comb(ring.nvars + n - 1, n) for n in range(cutoff + 1)]


def build(spec: str, cutoff: int, field_name: str | None) -> SymAlgebra:
    from .parse import build_algebra, parse_field
    if cutoff < 0:
        raise ConfigurationError("cutoff must be non-negative")
    guard(predicted_dims(spec, cutoff), spec)
    E = build_algebra(spec, cutoff, parse_field(field_name))
    guard(E.dims(), spec)
    return E


def read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path} is not valid JSON: {exc}") from exc


def algebra_from_json(d) -> SymAlgebra:
    if not isinstance(d, dict):
        raise ConfigurationError("algebra JSON must be an object")
    if isinstance(d.get("report"), dict):
        d = d["report"]
    if "algebra" in d and isinstance(d["algebra"], dict):
        d = d["algebra"]
    b = d.get("builder")
    if b:
        return build(b["spec"], int(b["cutoff"]), b.get("field"))
    try:
        E = SymAlgebra.from_json(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"algebra JSON does not match the schema: {exc}") from exc
    guard(E.dims(), "input algebra")
    rpt = E.check_axioms()
    if not rpt.ok:
        raise ConfigurationError(f"input algebra violates the axioms at {rpt.violations[:3]}")
    return E


def load_algebra(args, default: str | None = None) -> SymAlgebra:
    spec = algebra_spec(args)
    if spec is None and getattr(args, "input", None):
        return algebra_from_json(read_json(args.input))
    spec = spec or default
    if spec is None:
        raise ConfigurationError("no algebra given (use --tensor/--exterior/--sym-group/--ring or --input)")
    return build(spec, args.cutoff, args.field)


def ideal_list(E: SymAlgebra, s: str) -> list:
    """``x,y`` is two principal ideals; generators of one ideal are separated by ``;``."""
    from .ideal import sigma_closure
    from .parse import parse_element
    out = []
    for part in s.split(","):
        gens = [parse_element(E, g) for g in part.split(";") if g.strip()]
        if not gens:
            raise ConfigurationError(f"empty ideal in {s!r}")
        out.append(sigma_closure(E, gens))
    return out


# ---------------------------------------------------------------- commands

def cmd_build_algebra(args):
    E = load_algebra(args)
    return {"algebra": E.to_json(), "dims": E.dims()}, True


def cmd_build_module(args):
    from .emod.adjunction import random_relations, rng_for, suspension
    from .emod.core import algebra_as_module, free_module, shift
    E = load_algebra(args)
    if args.free is not None:
        M = free_module(E, args.free, E.cutoff)
    elif args.suspension is not None:
        rng = rng_for(args.seed)
        rels = random_relations(E, args.suspension, rng, args.relations, degree=args.degree)
        M = suspension(E, args.suspension, args.degree, rels)
    else:
        M = algebra_as_module(E)
    if args.shift:
        M = shift(M, args.shift)
    guard(M.dims(), M.name)
    rpt = M.check_axioms()
    return {"module": M.to_json(), "dims": M.dims(), "name": M.name, "axioms": rpt.to_json(),
            "algebra": E.to_json()}, rpt.ok


def cmd_check(args):
    E = load_algebra(args)
    out, ok = {"cutoff": E.cutoff, "dims": E.dims()}, True
    picked = [k for k in ("axioms", "commutative", "flatness", "hom_shift", "adjunction") if getattr(args, k)]
    if not picked:
        picked = ["axioms"]
    for k in picked:
        if k == "axioms":
            r = E.check_axioms()
            out["axioms"] = r.to_json()
        elif k == "commutative":
            r = E.check_commutative(naive=args.naive)
            out["commutative"] = r.to_json()
            if r.violations:
                out["commutative"]["first_violation"] = list(r.violations[0][1:])
        elif k == "flatness":
            from .emod.flat import random_monomorphism, smash_preserves_injectivity
            bad = []
            for t in range(args.trials):
                rr = smash_preserves_injectivity(random_monomorphism(E, args.seed * 1000 + t), args.m)
                if not rr.ok:
                    bad.append({"trial": t, "violations": [list(v) for v in rr.violations]})
            out["flatness"] = {"trials": args.trials, "m": args.m, "failures": bad,
                               "status": "verified" if not bad else "violated"}
            ok &= not bad
            continue
        elif k == "hom_shift":
            from .emod.core import algebra_as_module, free_module
            from .emod.hom import evaluation_iso, internal_hom
            M = algebra_as_module(E)
            bad = []
            for m in range(min(args.m, E.cutoff) + 1):
                f = evaluation_iso(internal_hom(free_module(E, m), M), M, m)
                if not (f.check().ok and f.is_iso()):
                    bad.append(m)
            out["hom_shift"] = {"m_max": args.m, "failures": bad, "status": "verified" if not bad else "violated"}
            ok &= not bad
            continue
        else:
            from .emod.adjunction import random_presentation, uv_identity
            from .emod.core import algebra_as_module, free_module
            from .emod.graded import adjunction_triangle
            r = adjunction_triangle(free_module(E, 1) if E.cutoff >= 1 else algebra_as_module(E))
            out["adjunction"] = r.to_json()
            if E.has_trivial_action and E.ring is not None:
                uv = uv_identity(random_presentation(E, args.seed))
                out["uv_identity"] = uv.to_json()
                ok &= uv.ok
        ok &= r.ok
    return out, ok


def cmd_ideal(args):
    from .ideal import (element_str, ideal_sum, is_prime_up_to, is_two_sided, product, radical_up_to)
    E = load_algebra(args)
    if not args.gens:
        raise ConfigurationError("--gens is required")
    ideals = ideal_list(E, args.gens)
    I = ideals[0] if len(ideals) == 1 else ideal_sum(ideals)
    out = {"ideal": I.name, "dims": I.dims(), "cutoff": E.cutoff}
    ok = True
    if args.op == "closure":
        out["json"] = I.to_json()
    elif args.op == "product":
        if not args.with_:
            raise ConfigurationError("product needs --with")
        J = ideal_list(E, args.with_)
        J = J[0] if len(J) == 1 else ideal_sum(J)
        P = product(I, J)
        out.update({"with": J.name, "with_dims": J.dims(), "product": P.name, "product_dims": P.dims(),
                    "json": P.to_json()})
    elif args.op == "prime":
        out["verdict"] = is_prime_up_to(I, seed=args.seed)
    elif args.op == "radical":
        R = radical_up_to(I)
        out.update({"radical_dims": R.dims(),
                    "radical_generators": [element_str(E, d, v) for d, v in R.generators],
                    "json": R.to_json()})
    else:
        r = is_two_sided(I)
        out["two_sided"] = r.to_json()
        ok = r.ok
    return out, ok


def _graded_input(args):
    from .emod.graded import GradedModule, algebra_graded, quotient_by_tail
    E = load_algebra(args, "Q[x]")
    if args.module:
        d = read_json(args.module)
        try:
            G = GradedModule.from_json(d, E)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ConfigurationError(f"graded module JSON does not match the schema: {exc}") from exc
        rpt = G.check_axioms()
        if not rpt.ok:
            raise ConfigurationError(f"input module violates the axioms at {rpt.violations[:3]}")
        return G
    if args.quotient_tail is not None:
        return quotient_by_tail(E, args.quotient_tail)
    return algebra_graded(E)


def cmd_torsion(args):
    from .emod.graded import is_tors_closed, is_torsion
    G = _graded_input(args)
    if args.op == "test":
        v = is_torsion(G)
        return {"module": G.name, "dims": G.dims, "verdict": v}, True
    v = is_tors_closed(G, args.n_max)
    return {"module": G.name, "dims": G.dims, "verdict": v}, True


def cmd_reconstruct(args):
    from .emod.adjunction import a_map, random_presentation, random_suspension_presentation, uv_identity
    from .emod.core import cokernel
    from .emod.graded import is_torsion, l_filtration, max_annihilation, u_functor
    E = load_algebra(args, "Q[x,y]")
    if args.op == "uv-identity":
        rows = []
        for k in range(args.count):
            r = uv_identity(random_suspension_presentation(E, args.seed * 1000 + k))
            rows.append({"case": k, **r.to_json()})
        ok = all(r["status"] == "verified" for r in rows)
        return {"cases": rows, "status": "verified" if ok else "violated"}, ok
    if args.op == "filtration":
        r = l_filtration(random_presentation(E, args.seed).cokernel())
        return r.to_json(), r.ok
    f = a_map(E, args.n)
    Q = u_functor(cokernel(f)[0])
    v = is_torsion(Q)
    ann = max_annihilation(v)
    ok = f.relations_respected and f.check().ok and v["torsion"] and (ann is None or ann <= args.n)
    return {"n": args.n, "cokernel_dims": Q.dims, "relations_respected": f.relations_respected,
            "torsion": v, "annihilation": ann, "status": "verified" if ok else "violated"}, ok


def cmd_proj(args):
    from .parse import parse_elements, parse_ring
    from .projtop import (PrimeFamily, check_spectral_properties, check_topology_laws, monomial_family,
                          projective_space_embedding_check, sections_commutative, v_set)
    if args.op == "pn-embedding":
        guard([args.dim ** args.cutoff], f"T({args.dim})")
        r = projective_space_embedding_check(args.dim, args.cutoff)
        return r, r["status"] == "verified"
    if args.op == "sections":
        from .parse import parse_monomial
        ring = parse_ring(args.ring or "Q[x,y]")
        if not args.chart:
            raise ConfigurationError("sections needs --chart")
        r = sections_commutative(ring, parse_monomial(args.chart, ring.names), args.bound)
        r.pop("relation_polys", None)
        return r, True
    E = load_algebra(args, "Q[x,y]")
    if args.family == "monomial":
        fam = monomial_family(E)
    else:
        fam = PrimeFamily(E, ideal_list(E, args.family))
    ideals = ideal_list(E, args.ideals) if args.ideals else []
    base = {"family": fam.names(range(len(fam))), "rejected": fam.rejected}
    if args.op == "vset":
        if not ideals:
            raise ConfigurationError("vset needs --ideals")
        base["V"] = {I.name: fam.names(v_set(I, fam)) for I in ideals}
        return base, True
    elements = parse_elements(E, args.elements) if args.elements else None
    if args.op == "laws":
        r = check_topology_laws(fam, ideals, elements)
    else:
        r = check_spectral_properties(fam, ideals, elements)
    return {**base, **r}, r["ok"]


def cmd_suite(args):
    from .suites import BUDGETS, run_suite
    if args.number not in BUDGETS:
        raise ConfigurationError(f"suite must be one of {sorted(BUDGETS)}")
    t0 = time.perf_counter()
    r = run_suite(args.number, args.seed)
    elapsed = time.perf_counter() - t0
    ok = r["ok"]
    if args.timing:
        r["elapsed_seconds"] = round(elapsed, 3)
        r["within_budget"] = elapsed < BUDGETS[args.number]
        ok = ok and r["within_budget"]
    return r, ok


# ---------------------------------------------------------------- parser

def parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    common.add_argument("--field", default=None, help="Q (default) or GF(p)")
    common.add_argument("--cutoff", type=int, default=4, help="maximal level")
    common.add_argument("--input", default=None, help="algebra JSON file ('-' for stdin)")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    alg = common.add_argument_group("algebra builders")
    alg.add_argument("--tensor", action="store_true", help="tensor algebra T(V)")
    alg.add_argument("--exterior", action="store_true", help="exterior algebra Lambda(V)")
    alg.add_argument("--sym-group", action="store_true", help="symmetric group algebra kSigma_*")
    alg.add_argument("--action", choices=("left", "conjugation"), default="left",
                     help="Sigma_n action on kSigma_n")
    alg.add_argument("--ring", default=None, help='trivial-action ring, e.g. "Q[x,y]/(x^3)"')
    alg.add_argument("--dim", type=int, default=2, help="dim V for --tensor/--exterior, d for pn-embedding")

    p = _Parser(prog="symqcs", description="Symmetric graded algebras, modules, ideals and Proj^Sigma.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("build-algebra", parents=[common], help="emit an algebra as JSON")
    s.set_defaults(func=cmd_build_algebra)

    s = sub.add_parser("build-module", parents=[common], help="emit an E-module as JSON")
    s.add_argument("--free", type=int, default=None, help="free module F_mE")
    s.add_argument("--suspension", type=int, default=None, help="suspension module on k^BASE")
    s.add_argument("--degree", type=int, default=0, help="bottom degree of the suspension")
    s.add_argument("--relations", type=int, default=0, help="number of seeded random relations")
    s.add_argument("--shift", type=int, default=0, help="shift the result by k")
    s.set_defaults(func=cmd_build_module)

    s = sub.add_parser("check", parents=[common], help="verify algebra and module identities")
    for flag in ("axioms", "commutative", "flatness", "hom-shift", "adjunction"):
        s.add_argument(f"--{flag}", action="store_true")
    s.add_argument("--naive", action="store_true", help="drop the shuffle in the commutativity square")
    s.add_argument("--trials", type=int, default=50, help="random monomorphisms for --flatness")
    s.add_argument("--m", type=int, default=2, help="free degree for --flatness, max m for --hom-shift")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("ideal", parents=[common], help="Sigma-ideal operations")
    s.add_argument("op", choices=("closure", "product", "prime", "radical", "two-sided"))
    s.add_argument("--gens", default=None, help="generators, e.g. x,x*y (';' separates ideals to add)")
    s.add_argument("--with", dest="with_", default=None, help="second ideal for product")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("torsion", parents=[common], help="torsion and Tors-closedness of graded modules")
    s.add_argument("op", choices=("test", "closed"))
    s.add_argument("--module", default=None, help="graded module JSON {levels, mult}")
    s.add_argument("--quotient-tail", type=int, default=None, help="use A / A_>=n")
    s.add_argument("--n-max", type=int, default=4)
    s.set_defaults(func=cmd_torsion)

    s = sub.add_parser("reconstruct", parents=[common], help="adjunction and reconstruction checks")
    s.add_argument("op", choices=("uv-identity", "filtration", "a-map-cokernel"))
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("proj", parents=[common], help="Proj^Sigma over finite prime families")
    s.add_argument("op", choices=("vset", "laws", "spectral", "sections", "pn-embedding"))
    s.add_argument("--ideals", default=None, help="ideals x,y; generators of one ideal joined by ';'")
    s.add_argument("--family", default="monomial", help="'monomial' or a list of prime ideals")
    s.add_argument("--elements", default=None, help="homogeneous elements for basic opens")
    s.add_argument("--chart", default=None, help="monomial f for the chart D(f)")
    s.add_argument("--bound", type=int, default=4)
    s.set_defaults(func=cmd_proj)

    s = sub.add_parser("suite", parents=[common], help="run one acceptance suite")
    s.add_argument("number", type=int)
    s.add_argument("--timing", action="store_true", help="add elapsed time and budget verdict")
    s.set_defaults(func=cmd_suite)
    return p


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    try:
        args = parser().parse_args(argv)
        if args.cutoff < 0:
            raise ConfigurationError("cutoff must be non-negative")
        report, ok = args.func(args)
    except InputError as exc:
        sys.stderr.write(dumps({"error": str(exc), "kind": "usage"}))
        return EXIT_INPUT
    except (SymqcsError, ConfigurationError, InvariantViolation) as exc:
        sys.stderr.write(dumps({"error": str(exc), "kind": type(exc).__name__}))
        return EXIT_INPUT
    report = {"command": args.command, "seed": args.seed, "ok": bool(ok), "report": report}
    try:
        _emit(dumps(report), args.output)
    except OSError as exc:
        sys.stderr.write(dumps({"error": f"cannot write {args.output}: {exc.strerror}", "kind": "io"}))
        return EXIT_INPUT
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
