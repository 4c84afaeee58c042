"""Command-line front end.

    catkit tabulate  -i presentation.json [--max-arity N] [--term-depth D]
    catkit roundtrip -i monad-or-theory.json | --exhaustive-base chain2
    catkit check     -i file.json --suite NAME [--carrier k] [--extent-family chain1,chain2]

Exit status: 0 success, 1 a check failed, 2 malformed input, 3 a resource
bound (including tabulation that does not stabilize) was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .algebra import (check_kleisli, check_law_theory, check_triangle, compare_theories, monad_to_theory,
                      presentation_from_json, substitution_sound, tabulate, theory_from_json, theory_to_monad)
from .errors import LIMITS, CatkitError, ParseError, ResourceError
from .fincat import check_category, named_base
from .lexprof import check_duality, conjoint, find_iso, search_left_dual
from .wcat import (check_absolute_tensored, check_eq31, check_parfl, check_wcategory, enumerate_lattice_monads,
                   epsilon, eta, gamma, integrate, monad_to_oneobject, roundtrip_monad, tabmonad_to_lexmonad,
                   theory_from_monad, wfunctor_report)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3

SUITES = ("kleisli", "theory", "triangle", "wcat", "gamma-int", "duality")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return v


def _family(text: str) -> list:
    try:
        return [named_base(name.strip()) for name in text.split(",") if name.strip()]
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"unknown base in {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catkit", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="input JSON file ('-' for stdin)")
    common.add_argument("-o", "--output", help="write the JSON result here instead of stdout")
    common.add_argument("--max-arity", type=_positive, default=3, help="arity bound N (default 3)")
    common.add_argument("--term-depth", type=_positive, default=8, help="term depth bound D (default 8)")
    common.add_argument("--carrier", type=_positive, default=3, help="carrier bound k (default 3)")
    common.add_argument("--max-set-size", type=_positive, default=None)
    common.add_argument("--max-candidates", type=_positive, default=None)
    common.add_argument("-q", "--quiet", action="store_true", help="no human-readable summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("tabulate", parents=[common], help="free-algebra monad of a presentation")
    rt = sub.add_parser("roundtrip", parents=[common], help="monad -> theory -> monad and back")
    rt.add_argument("--exhaustive-base", help="round-trip every monad on this lattice")
    ck = sub.add_parser("check", parents=[common], help="run a named check suite")
    ck.add_argument("--suite", required=True, choices=SUITES)
    ck.add_argument("--extent-family", type=_family, default=None,
                    help="comma-separated lattice names quantified over by absolute-tensor checks")
    return p


def _emit(args, result: dict) -> None:
    text = io.dumps(result)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _say(args, line: str) -> None:
    if not args.quiet:
        print(line, file=sys.stderr)


def _input(args) -> dict:
    if not args.input:
        raise ParseError("no input file given (-i)")
    return io.load(args.input)


# ---------------------------------------------------------------------------


def cmd_tabulate(args) -> int:
    data = _input(args)
    if data["kind"] != "presentation":
        raise ParseError(f"tabulate expects a presentation, got {data['kind']}")
    pres = presentation_from_json(data)
    t = tabulate(pres, args.max_arity, args.term_depth)
    problems = check_kleisli(t) + substitution_sound(pres, t)
    _say(args, f"{pres.name or 'presentation'}: sizes {list(t.sizes)} for n = 0..{t.N}")
    if problems:
        _say(args, f"FAIL {problems[0]}")
        return EXIT_FAIL
    _emit(args, io.tabmonad_to_json(t))
    return EXIT_OK


def _roundtrip_tabmonad(t) -> dict:
    problems = check_kleisli(t)
    if problems:
        return {"passed": False, "invariant": "kleisli laws", "detail": problems[0]}
    l = monad_to_theory(t)
    back = theory_to_monad(l)
    same_monad = (back.sizes, back.unit, back.ext) == (t.sizes, t.unit, t.ext)
    again = monad_to_theory(back)
    same_theory = not compare_theories(l, again.cat, again.J)
    lw = theory_from_monad(tabmonad_to_lexmonad(t, l.base))
    cross = compare_theories(l, lw.cat, lw.J)
    enriched = roundtrip_monad(tabmonad_to_lexmonad(t, l.base))
    out = {"sizes": list(t.sizes), "monad_identity": same_monad, "theory_identity": same_theory,
           "cross_pipeline": not cross, "enriched": enriched}
    out["passed"] = same_monad and same_theory and not cross and enriched["passed"]
    if cross:
        out["detail"] = cross[0]
    return out


def _roundtrip_theory(data: dict) -> dict:
    l = theory_from_json(data)
    problems = check_law_theory(l)
    if problems:
        invariant = "tupling bijection" if "tupling" in problems[0] else "theory laws"
        return {"passed": False, "invariant": invariant, "detail": problems[0]}
    t = theory_to_monad(l)
    again = monad_to_theory(t)
    diff = compare_theories(l, again.cat, again.J)
    out = _roundtrip_tabmonad(t)
    out["theory_identity"] = out["theory_identity"] and not diff
    out["passed"] = out["passed"] and not diff
    return out


def cmd_roundtrip(args) -> int:
    if args.exhaustive_base:
        try:
            A = named_base(args.exhaustive_base)
        except (KeyError, ValueError) as exc:
            raise ParseError(f"unknown base {args.exhaustive_base!r}") from exc
        results = []
        for m in enumerate_lattice_monads(A):
            r = roundtrip_monad(m)
            r["monad"] = m.name
            results.append(r)
        result = {"base": A.name, "monads": results, "passed": all(r["passed"] for r in results)}
        _say(args, f"{A.name}: {sum(r['passed'] for r in results)}/{len(results)} monads round-trip")
    else:
        data = _input(args)
        kind = data["kind"]
        if kind == "tabmonad":
            result = _roundtrip_tabmonad(io.tabmonad_from_json(data))
        elif kind == "presentation":
            result = _roundtrip_tabmonad(tabulate(presentation_from_json(data), args.max_arity, args.term_depth))
        elif kind == "theory":
            result = _roundtrip_theory(data)
        elif kind == "monad":
            result = roundtrip_monad(io.monad_from_json(data))
        else:
            raise ParseError(f"roundtrip expects a monad, theory or presentation, got {kind}")
        _say(args, ("PASS" if result["passed"] else "FAIL") + " round trip"
             + (f" ({result['invariant']}: {result['detail']})" if "invariant" in result else ""))
    _emit(args, result)
    return EXIT_OK if result["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------


def _load_tabmonad(args, data):
    if data["kind"] == "tabmonad":
        return io.tabmonad_from_json(data)
    if data["kind"] == "presentation":
        return tabulate(presentation_from_json(data), args.max_arity, args.term_depth)
    raise ParseError(f"expected a tabmonad or presentation, got {data['kind']}")


def _load_wcat(data):
    """A wcat document names a monad (one-object W-category) or a parfl
    category whose Gamma is taken."""
    if "monad" in data:
        return monad_to_oneobject(io.monad_from_json(data["monad"]))
    if "gamma" in data:
        return gamma(io.parfl_from_json(data["gamma"]))
    raise ParseError("wcat document needs a 'monad' or 'gamma' entry")


def suite_kleisli(args, data) -> dict:
    t = _load_tabmonad(args, data)
    problems = check_kleisli(t)
    return {"kleisli_laws": {"passed": not problems, "failures": problems[:5]}}


def suite_theory(args, data) -> dict:
    l = theory_from_json(data) if data["kind"] == "theory" else monad_to_theory(_load_tabmonad(args, data))
    problems = check_law_theory(l)
    return {"theory_laws": {"passed": not problems, "failures": problems[:5]}}


def suite_triangle(args, data) -> dict:
    t = _load_tabmonad(args, data)
    k = min(args.carrier, t.N)
    return {"triangle": check_triangle(t, k)}


def suite_wcat(args, data) -> dict:
    if data["kind"] == "monad":
        c = monad_to_oneobject(io.monad_from_json(data), check=False)
    elif data["kind"] == "wcat":
        c = _load_wcat(data)
    else:
        raise ParseError(f"suite wcat expects a monad or wcat document, got {data['kind']}")
    family = args.extent_family or list({id(A): A for A in c.extents}.values())
    problems = check_wcategory(c)
    out = {"axioms": {"passed": not problems, "failures": problems[:5]}}
    if problems:
        return out
    rep = wfunctor_report(eta(c, family))
    absolute = check_absolute_tensored(c, family)
    out["eta_fully_faithful"] = {"passed": rep["fully_faithful"]}
    out["eta_vs_absolute_tensors"] = {
        "passed": rep["essentially_surjective"] == absolute["passed"],
        "essentially_surjective": rep["essentially_surjective"],
        "absolute_tensored": absolute["passed"], "family": absolute["family"]}
    return out


def suite_gamma_int(args, data) -> dict:
    if data["kind"] != "parfl":
        raise ParseError(f"suite gamma-int expects a parfl document, got {data['kind']}")
    p = io.parfl_from_json(data)
    problems = check_parfl(p)
    out = {"parfl": {"passed": not problems, "failures": problems[:5]}}
    if problems:
        return out
    _, rep = epsilon(p)
    out["epsilon"] = {"passed": rep["equivalence"] and rep["sieve_reflecting"], **rep}
    g = gamma(p)
    eq31 = check_eq31(g, integrate(g))
    out["integral_homs"] = {"passed": not eq31, "failures": eq31[:5]}
    out["category"] = {"passed": not check_category(p.cat)}
    return out


def suite_duality(args, data) -> dict:
    if data["kind"] != "profunctor":
        raise ParseError(f"suite duality expects a profunctor document, got {data['kind']}")
    W = io.profunctor_from_json(data)
    cert = search_left_dual(W)
    expect = data.get("expect", "dual")
    if cert is None:
        return {"left_dual": {"passed": expect == "none", "found": False}}
    problems = check_duality(cert)
    out = {"left_dual": {"passed": not problems and expect == "dual", "found": True, "failures": problems[:5]}}
    if data.get("construct") == "companion":
        F = io.functor_from_map(W.dst, W.src.cat, data.get("map"))
        out["dual_is_conjoint"] = {"passed": find_iso(cert.Wstar, conjoint(F, W.dst, W.src)) is not None}
    return out


SUITE_FUNCS = {"kleisli": suite_kleisli, "theory": suite_theory, "triangle": suite_triangle,
               "wcat": suite_wcat, "gamma-int": suite_gamma_int, "duality": suite_duality}


def cmd_check(args) -> int:
    data = _input(args)
    results = SUITE_FUNCS[args.suite](args, data)
    passed = all(v.get("passed", False) for v in results.values())
    for name, v in results.items():
        _say(args, f"{'PASS' if v.get('passed') else 'FAIL'} {name}")
    _emit(args, {"suite": args.suite, "results": results, "passed": passed})
    return EXIT_OK if passed else EXIT_FAIL


COMMANDS = {"tabulate": cmd_tabulate, "roundtrip": cmd_roundtrip, "check": cmd_check}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    saved = (LIMITS.max_set_size, LIMITS.max_candidates)
    if args.max_set_size:
        LIMITS.max_set_size = args.max_set_size
    if args.max_candidates:
        LIMITS.max_candidates = args.max_candidates
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CatkitError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        LIMITS.max_set_size, LIMITS.max_candidates = saved


if __name__ == "__main__":
    sys.exit(main())
