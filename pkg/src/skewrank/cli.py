"""Command-line front end.

Exit codes: 0 ok, 1 self-test failure, 2 bad group spec or input,
3 element cap exceeded, 4 non-regular number, 5 verification failure,
6 size budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, acceptance
from .apolar import BUDGET_DEGREE, BUDGET_ORDER, rs_bound_report, steinberg_check, sylvester_binary_rank
from .errors import BudgetExceeded, InvalidGroupSpec, SkewRankError, VerificationError
from .groups import build_family, default_cap, family_spec, group_from_config, regular_elements, regular_numbers
from .poly import Polynomial, is_scalar_multiple, parse_form
from .skew import build_skew_invariant, family_formula
from .waring import WaringDecomposition, decompose, verify

GROUP_KINDS = {
    "sym": "symmetric",
    "hyper": "hyperoctahedral",
    "demihyper": "demihyperoctahedral",
    "imprimitive": "imprimitive",
    "cyclicprod": "cyclicProduct",
    "dihedral": "dihedral",
    "custom": None,
}

COMMANDS = ("info", "skew", "decompose", "verify", "apolar", "regular", "selftest")

_DEFAULTS = {
    "group": None,
    "n": None,
    "m": None,
    "d": None,
    "e": None,
    "a": None,
    "config": None,
    "format": "text",
    "cap": None,
    "threads": None,
    "seed": 1,
    "only": None,
    "form": None,
    "nvars": None,
    "sylvester": False,
    "exhaustive": False,
    "input": None,
    "regular_number": None,
}


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common():
    # every option defaults to SUPPRESS so it can appear before or after the command
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--group", choices=sorted(GROUP_KINDS), default=S, help="group family")
    p.add_argument("--n", type=int, default=S, help="rank parameter n")
    p.add_argument("--m", type=int, default=S, help="dihedral parameter m")
    p.add_argument("--d", type=int, default=S, help="imprimitive parameter d")
    p.add_argument("--e", type=int, default=S, help="imprimitive parameter e")
    p.add_argument("--a", type=_int_list, default=S, help="cyclic product exponents, e.g. 2,2,2")
    p.add_argument("--config", default=S, help="JSON file describing a custom group")
    p.add_argument("--format", choices=("text", "json"), default=S)
    p.add_argument("--cap", type=int, default=S, help="element cap for group enumeration")
    p.add_argument("--threads", type=int, default=S, help="worker threads for expansions")
    p.add_argument("--seed", type=int, default=S, help="seed for randomized checks")
    p.add_argument("--only", default=S, help="comma-separated self-test item filter")
    p.add_argument("--form", default=S, help='polynomial such as "x^5 - y^5"')
    p.add_argument("--nvars", type=int, default=S, help="ambient variable count for --form")
    p.add_argument("--sylvester", action="store_true", default=S, help="also run Sylvester's binary rank")
    p.add_argument("--exhaustive", action="store_true", default=S, help="check every element, not just generators")
    p.add_argument("--input", default=S, help="decomposition JSON file (verify)")
    p.add_argument("--regular-number", dest="regular_number", type=int, default=S,
                   help="regular number d for decompose (default: the largest)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(
        prog="skewrank",
        parents=[common],
        description="Exact Waring decompositions and apolarity bounds for skew invariants of reflection groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    helps = {
        "info": "group order, degrees, hyperplanes and regular numbers",
        "skew": "the fundamental skew invariant f_W",
        "decompose": "coset-reduced Waring decomposition of f_W",
        "verify": "verify a decomposition file against f_W or --form",
        "apolar": "Hilbert function, generator degrees and rank bounds",
        "regular": "regular numbers with their canonical regular elements",
        "selftest": "run the acceptance matrix",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


class Options:
    def __init__(self, ns):
        for k, v in _DEFAULTS.items():
            setattr(self, k, getattr(ns, k, v))
        self.command = ns.command
        if self.threads is None:
            self.threads = os.cpu_count() or 1
        if self.threads < 1:
            raise InvalidGroupSpec("--threads must be positive")


def _group_from_options(opt):
    cap = opt.cap if opt.cap is not None else default_cap()
    if opt.cap is not None and opt.cap < 1:
        raise InvalidGroupSpec("--cap must be positive")
    kind = opt.group
    if opt.config is not None:
        if kind not in (None, "custom"):
            raise InvalidGroupSpec("give either a family (--group) or --config, not both")
        try:
            with open(opt.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidGroupSpec(f"cannot read group config: {exc}") from None
        return group_from_config(data, cap=opt.cap)
    if kind is None:
        raise InvalidGroupSpec("no group given: use --group or --config")
    if kind == "custom":
        raise InvalidGroupSpec("--group custom needs --config")
    params = {k: getattr(opt, k) for k in ("n", "m", "d", "e", "a") if getattr(opt, k) is not None}
    spec = family_spec(GROUP_KINDS[kind], **params)
    return build_family(spec, cap=cap)


def _emit(opt, payload, text):
    if opt.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _lit(c):
    return str(c)


def cmd_info(opt):
    G = _group_from_options(opt)
    info = G.info()
    lines = [
        f"group          {G.name}",
        f"order          {G.order}",
        f"nvars          {G.nvars}",
        f"field order    {G.field_order}",
        f"degrees        {info['degrees']}",
        f"reflections    {info['reflections']}",
        f"hyperplanes    {len(G.hyperplanes)}",
    ]
    for h in G.hyperplanes:
        lines.append(f"  k_H={h.multiplicity}  {h.form}")
    lines.append(f"regular nums   {info['regularNumbers']}")
    _emit(opt, info, "\n".join(lines))
    return 0


def cmd_skew(opt):
    G = _group_from_options(opt)
    s = build_skew_invariant(G)
    from .skew import is_skew_invariant

    ok = is_skew_invariant(G, s, exhaustive=opt.exhaustive)
    payload = s.to_json()
    payload["skewInvariant"] = ok
    lines = [f"f_W for {G.name} (degree {s.degree}, {s.normalization})", str(s.polynomial)]
    if G.family is not None:
        c = is_scalar_multiple(family_formula(G.family), s.polynomial)
        payload["familyFormulaScalar"] = c.to_json() if c is not None else None
        lines.append(f"family formula = ({c}) * f_W" if c is not None else "family formula NOT proportional")
    lines.append(f"skew invariant check: {'ok' if ok else 'FAILED'}")
    _emit(opt, payload, "\n".join(lines))
    return 0 if ok else 5


def _maybe_report(f, dec, ver, G=None):
    if f.degree() > BUDGET_DEGREE or (G is not None and G.order > BUDGET_ORDER):
        return None
    return rs_bound_report(f, dec, ver)


def cmd_decompose(opt):
    G = _group_from_options(opt)
    f = build_skew_invariant(G).polynomial
    dec = decompose(G, opt.regular_number)
    ver = verify(dec, f, threads=opt.threads)
    if not ver.exact:
        raise VerificationError("decomposition failed to verify against f_W")
    rep = _maybe_report(f, dec, ver, G)
    payload = dec.to_json(ver)
    payload["certification"] = rep.to_json() if rep is not None else None
    lines = [
        f"{G.name}: {dec.term_count} terms of degree {dec.exponent} "
        f"(regular number {dec.provenance['regularNumber']}, {dec.provenance['cosetCount']} cosets)",
        f"eigenform L = {dec.provenance['eigenform']}",
        f"sum c_i l_i^D = ({_lit(ver.scalar)}) * f_W, exact",
    ]
    if rep is not None:
        lines.append(
            f"lower bound {rep.rs_lower_bound}, upper bound {rep.upper_bound}, "
            f"{'certified' if rep.certified else 'not certified'}"
        )
    else:
        lines.append("apolar certification skipped (over the size budget)")
    lines.append("terms:")
    for c, form in dec.terms:
        lines.append(f"  ({c}) * ({form})^{dec.exponent}")
    _emit(opt, payload, "\n".join(lines))
    return 0


def _target(opt, nvars=None):
    if opt.form is not None:
        return parse_form(opt.form, nvars=opt.nvars or nvars), "form"
    G = _group_from_options(opt)
    return build_skew_invariant(G).polynomial, G.name


def cmd_verify(opt):
    if opt.input is None:
        raise InvalidGroupSpec("verify needs --input <decomposition.json>")
    try:
        with open(opt.input) as fh:
            dec = WaringDecomposition.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise InvalidGroupSpec(f"cannot read decomposition: {exc}") from None
    f, label = _target(opt, dec.nvars)
    ver = verify(dec, f, threads=opt.threads)
    text = (
        f"{dec.term_count} terms: sum = ({_lit(ver.scalar)}) * {label}, exact"
        if ver.exact
        else f"{dec.term_count} terms: NOT proportional to {label}"
    )
    _emit(opt, ver.to_json(), text)
    return 0 if ver.exact else 5


def cmd_apolar(opt):
    G = None
    if opt.form is not None:
        f = parse_form(opt.form, nvars=opt.nvars)
        if opt.sylvester and f.nvars == 1:
            f = Polynomial(2, {e + (0,): c for e, c in f.terms.items()})
        dec = ver = None
    else:
        G = _group_from_options(opt)
        if G.order > BUDGET_ORDER:
            raise BudgetExceeded(f"apolar reports are limited to groups of order <= {BUDGET_ORDER}")
        f = build_skew_invariant(G).polynomial
        dec = decompose(G)
        ver = verify(dec, f, threads=opt.threads)
    if f.degree() > BUDGET_DEGREE:
        raise BudgetExceeded(f"apolar reports are limited to degree <= {BUDGET_DEGREE}")
    rep = rs_bound_report(f, dec, ver)
    if G is not None:
        rep.steinberg = steinberg_check(G, f)
    payload = rep.to_json()
    lines = [
        f"hilbert function   {rep.hilbert}",
        f"dim A^f            {rep.dim_af}",
        f"generator degrees  {rep.generator_degrees}",
        f"delta              {rep.delta}",
        f"lower bound        {rep.rs_lower_bound}",
        f"upper bound        {rep.upper_bound if rep.upper_bound is not None else '-'}",
        f"certified          {'yes' if rep.certified else 'no'}",
    ]
    if rep.ccg_reference is not None:
        lines.append(f"monomial rank      {rep.ccg_reference}")
    if rep.steinberg is not None:
        lines.append(f"steinberg          {'ok' if rep.steinberg else 'FAILED'}")
    if opt.sylvester:
        r = sylvester_binary_rank(f)
        payload["sylvesterRank"] = r
        lines.append(f"sylvester rank     {r}")
    _emit(opt, payload, "\n".join(lines))
    return 0 if rep.steinberg in (None, True) else 5


def cmd_regular(opt):
    G = _group_from_options(opt)
    rows = []
    lines = [f"{G.name}: degrees {G.degrees}"]
    for d in regular_numbers(G):
        w, v = regular_elements(G, d, first_only=True)[0]
        rows.append({"d": d, "element": w.to_json(), "eigenvector": v.to_json(), "elementOrder": w.order})
        lines.append(f"  d={d:<3} |<w>|={w.order:<3} v = {v}")
    _emit(opt, {"group": G.name, "degrees": G.degrees, "regular": rows}, "\n".join(lines))
    return 0


def cmd_selftest(opt):
    text = opt.format != "json"

    def report(res, seconds):
        if text:
            mark = "PASS" if res["passed"] else "FAIL"
            print(f"{mark}  {res['id']:<22} {seconds:7.2f}s  {res['title']}", flush=True)

    results = acceptance.run(seed=opt.seed, threads=opt.threads, only=opt.only, on_result=report)
    if not results:
        raise InvalidGroupSpec(f"--only {opt.only!r} matches no self-test item")
    ok = all(r["passed"] for r in results)
    if text:
        print(f"{sum(r['passed'] for r in results)}/{len(results)} items passed")
    else:
        print(json.dumps({"seed": opt.seed, "passed": ok, "items": results}, indent=2))
    return 0 if ok else 1


HANDLERS = {
    "info": cmd_info,
    "skew": cmd_skew,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "apolar": cmd_apolar,
    "regular": cmd_regular,
    "selftest": cmd_selftest,
}


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        opt = Options(ns)
        return HANDLERS[ns.command](opt)
    except SkewRankError as exc:
        print(f"skewrank: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"skewrank: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
