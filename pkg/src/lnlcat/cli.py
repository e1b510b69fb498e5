"""Command-line front end: ``lnlcat <command> ...``.

Exit status is 0 when the report passes, 1 when a law fails and 2 when the
input cannot be read.  ``--json`` prints the whole report as one JSON
document.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .catalog import BY_NAME, terminal_functor
from .colax import build_colimit, colimit_to_fincat
from .fincat import FinCat, Functor, validate_category, validate_functor
from .lnlmonad import Q, Tag
from .report import CheckReport
from .seqmonads import check_monad_laws, monad_for
from .structure import (
    algebra_from_structure,
    check_q_algebra,
    check_structure_object,
    free_q_algebra,
    roundtrip_algebra,
    roundtrip_structure,
    structure_from_algebra,
    structure_from_json,
)
from .terms import (
    DEFAULT_SIGNATURE,
    Signature,
    check_term,
    parse_context,
    parse_term,
    substitute,
    tag_arithmetic_check,
)


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_category(ref) -> FinCat:
    """A builtin name (``one``, ``arrow``, ...), a JSON file, or an inline JSON document."""
    if isinstance(ref, dict):
        return FinCat.from_json(ref, name=ref.get("name", "FinCat"))
    if ref.lower() in BY_NAME:
        return BY_NAME[ref.lower()]
    doc = _load_json(ref)
    if not isinstance(doc, dict):
        raise InputError(f"{ref}: expected a JSON object")
    try:
        return FinCat.from_json(doc, name=doc.get("name", os.path.splitext(os.path.basename(ref))[0]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"{ref}: malformed category ({exc})") from None


def load_functor(path: str) -> Functor:
    doc = _load_json(path)
    try:
        src = load_category(doc["source"])
        tgt = load_category(doc["target"])
        return Functor.from_tables(src, tgt, doc["objects"], doc.get("morphisms", {}), name=doc.get("name", "F"))
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed functor ({exc})") from None


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: column {exc.colno}: {exc.msg}") from None


def _entry(monad: str, e):
    if monad != "Q":
        return str(e)
    if isinstance(e, list) and len(e) == 2:
        return (str(e[0]), Tag(e[1]))
    if isinstance(e, str) and "^" in e:
        a, t = e.rsplit("^", 1)
        return (a, Tag(t))
    raise InputError(f"Q entries look like \"a^L\" or [\"a\", \"N\"], got {e!r}")


def parse_sequence(text: str, monad: str, base=None) -> tuple:
    val = _parse_json_arg(text, "sequence")
    if not isinstance(val, list):
        raise InputError(f"expected a JSON list, got {text!r}")
    try:
        seq = tuple(_entry(monad, e) for e in val)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if base is not None:
        T = monad_for(monad).apply(base)
        if not T.is_object(seq):
            raise InputError(f"{text} is not an object of {T.name}")
    return seq


# --------------------------------------------------------------------------
# commands; each returns (report, result payload)


def cmd_fincat_validate(args):
    cat = load_category(args.file)
    rep = validate_category(cat)
    return rep, {"objects": len(cat.objects()), "morphisms": len(cat.arrow_list)}


def cmd_laws(args):
    base = load_category(args.base)
    vrep = validate_category(base)
    if not vrep.ok:
        return vrep, None
    monad = monad_for(args.monad)
    rep = check_monad_laws(monad, base, args.max_len, functors=[terminal_functor(base)])
    return rep, None


def cmd_hom(args):
    base = load_category(args.base)
    if args.monad not in ("S", "C", "Q"):
        raise InputError("hom supports the sequence monads S, C and Q")
    T = monad_for(args.monad).apply(base)
    src = parse_sequence(args.src, args.monad, base)
    tgt = parse_sequence(args.tgt, args.monad, base)
    homs = T.hom(src, tgt)
    rep = CheckReport(name=f"hom({T.name})")
    rep.meta.update(src=T.render_object(src), tgt=T.render_object(tgt))
    return rep, {"count": len(homs), "morphisms": [T.render_morphism(m) for m in homs]}


def cmd_colimit(args):
    F = load_functor(args.functor)
    rep = CheckReport(name=f"colimit({F.name})")
    for cat in (F.source, F.target):
        rep.merge(validate_category(cat), f"{cat.name}:")
    if rep.ok:
        rep.merge(validate_functor(F), "functor:")
    if not rep.ok:
        return rep, None
    col = build_colimit(F)
    carrier, names = colimit_to_fincat(col)
    crep = validate_category(carrier)
    rep.merge(crep, "carrier:")
    on, mn = names["objects"], names["morphisms"]
    A, B = F.source, F.target
    out = {
        "carrier": carrier.to_json(),
        "iota_A": {"objects": {a: on[col.iota_a.obj(a)] for a in A.objects()},
                   "morphisms": {m: mn[col.iota_a.mor(m)] for m, _, _ in A.arrow_list}},
        "iota_B": {"objects": {b: on[col.iota_b.obj(b)] for b in B.objects()},
                   "morphisms": {m: mn[col.iota_b.mor(m)] for m, _, _ in B.arrow_list}},
        "beta": {a: mn[col.beta.at(a)] for a in A.objects()},
    }
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for key in ("carrier", "iota_A", "iota_B", "beta"):
            with open(os.path.join(args.out, f"{key}.json"), "w", encoding="utf-8") as fh:
                json.dump(out[key], fh, indent=2, ensure_ascii=False)
    return rep, out


def _structure(args):
    if args.builtin:
        from .instances import STRUCTURES
        if args.builtin not in STRUCTURES:
            raise InputError(f"unknown builtin structure {args.builtin!r}; try {', '.join(STRUCTURES)}")
        return STRUCTURES[args.builtin]()
    if not args.file:
        raise InputError("give a structure file or --builtin NAME")
    doc = _load_json(args.file)
    try:
        return structure_from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.file}: malformed structure object ({exc})") from None


def cmd_structure(args):
    if args.action == "roundtrip" and args.free:
        base = load_category(args.free)
        rep = roundtrip_algebra(free_q_algebra(base), args.max_len)
        return rep, None
    s = _structure(args)
    if args.action == "check":
        return check_structure_object(s, args.bound, args.max_len), None
    rep = check_structure_object(s, args.bound, args.max_len)
    if not rep.ok:
        return rep, None
    if args.action == "to-algebra":
        q = algebra_from_structure(s)
        rep.merge(check_q_algebra(q, args.max_len), "Q-algebra:")
        result = None
        if args.eval:
            seq = parse_sequence(args.eval, "Q", s.carrier)
            result = {"input": Q.apply(s.carrier).render_object(seq), "value": q.structure.obj(seq)}
        return rep, result
    if args.action == "from-algebra":
        back = structure_from_algebra(algebra_from_structure(s), name=s.name)
        rep.merge(check_structure_object(back, args.bound, args.max_len), "read back:")
        return rep, back.to_tables()
    if args.action == "roundtrip":
        rep.merge(roundtrip_structure(s, args.bound))
        return rep, None
    raise InputError(f"unknown structure action {args.action!r}")


def _signature(args) -> Signature:
    if not args.sig:
        return DEFAULT_SIGNATURE
    try:
        return Signature.from_json(_load_json(args.sig))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.sig}: malformed signature ({exc})") from None


def _parse(fn, text, what):
    try:
        return fn(text)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def cmd_term(args):
    sig = _signature(args)
    if args.action == "fuzz":
        return tag_arithmetic_check(args.trials, args.seed, sig), None
    ctx = _parse(parse_context, args.ctx, "--ctx")
    t = _parse(parse_term, args.term, "--term")
    if args.action == "check":
        return check_term(ctx, t, sig), {"term": str(t), "context": str(ctx)}
    if not (args.var and args.with_term is not None and args.with_ctx is not None):
        raise InputError("term subst needs --var, --with and --with-ctx")
    s = _parse(parse_term, args.with_term, "--with")
    ctx_s = _parse(parse_context, args.with_ctx, "--with-ctx")
    rep = CheckReport(name="term subst")
    rep.merge(check_term(ctx, t, sig), "term:")
    rep.merge(check_term(ctx_s, s, sig), "substituted:")
    if not rep.ok:
        return rep, None
    try:
        out, ctx_out = substitute(t, ctx, args.var, s, ctx_s)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.merge(check_term(ctx_out, out, sig), "result:")
    return rep, {"term": str(out), "context": str(ctx_out)}


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lnlcat", description="Law checkers for sequence monads and their algebras.")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    # accept --json after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the report as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    fc = sub.add_parser("fincat", help="finite categories", parents=[common])
    fc.add_argument("action", choices=["validate"])
    fc.add_argument("file", help="category JSON file or builtin name")
    fc.set_defaults(run=cmd_fincat_validate)

    lw = sub.add_parser("laws", help="monad-law sweep", parents=[common])
    lw.add_argument("--monad", required=True, choices=["S", "C", "Q", "Cplus"])
    lw.add_argument("--base", required=True)
    lw.add_argument("--max-len", type=int, default=2)
    lw.set_defaults(run=cmd_laws)

    hm = sub.add_parser("hom", help="list a hom-set of T(base)", parents=[common])
    hm.add_argument("--monad", required=True, choices=["S", "C", "Q"])
    hm.add_argument("--base", required=True)
    hm.add_argument("--src", required=True, help='JSON list, e.g. \'["•","•"]\' or \'["•^L"]\'')
    hm.add_argument("--tgt", required=True)
    hm.set_defaults(run=cmd_hom)

    co = sub.add_parser("colimit", help="colax colimit of a functor", parents=[common])
    co.add_argument("--functor", required=True)
    co.add_argument("--out", help="directory for carrier/injection/β files")
    co.set_defaults(run=cmd_colimit)

    st = sub.add_parser("structure", help="structure objects and their Q-algebras", parents=[common])
    st.add_argument("action", choices=["check", "to-algebra", "from-algebra", "roundtrip"])
    st.add_argument("file", nargs="?")
    st.add_argument("--builtin", help="chain3, chain3-meet, diamond or chain3-bad")
    st.add_argument("--free", help="roundtrip the free Q-algebra over this base instead")
    st.add_argument("--eval", help="tagged sequence to evaluate, e.g. '[\"1^L\",\"1^N\"]'")
    st.add_argument("--bound", type=int, default=2)
    st.add_argument("--max-len", type=int, default=2)
    st.set_defaults(run=cmd_structure)

    tm = sub.add_parser("term", help="linear/non-linear terms", parents=[common])
    tm.add_argument("action", choices=["check", "subst", "fuzz"])
    tm.add_argument("--ctx")
    tm.add_argument("--term")
    tm.add_argument("--var")
    tm.add_argument("--with", dest="with_term")
    tm.add_argument("--with-ctx")
    tm.add_argument("--sig", help="signature JSON file")
    tm.add_argument("--trials", type=int, default=500)
    tm.add_argument("--seed", type=int, default=0)
    tm.set_defaults(run=cmd_term)
    return p


def run(argv=None) -> tuple[int, dict]:
    code, report, _ = _run(argv)
    return code, report


def _run(argv):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "term" and args.action != "fuzz" and (args.ctx is None or args.term is None):
        parser.error("term check/subst need --ctx and --term")
    start = time.perf_counter()
    try:
        rep, result = args.run(args)
        status = "pass" if rep.ok else "fail"
        doc = rep.to_json()
    except InputError as exc:
        status = "error"
        doc = {"name": args.command, "ok": False, "checked": 0, "truncated": False, "meta": {},
               "findings": [{"law": "input", "witness": str(exc), "structural": True}]}
        result = None
    report = {
        "command": argv,
        "status": status,
        "findings": doc["findings"],
        "checked": doc["checked"],
        "sweep": {"truncated": doc["truncated"], **doc["meta"]},
        "result": result,
        "timing": round(time.perf_counter() - start, 4),
    }
    code = {"pass": 0, "fail": 1, "error": 2}[status]
    return code, report, args.json


def _print_human(report: dict) -> None:
    cmd = " ".join(report["command"])
    print(f"{report['status'].upper()}  {cmd}  ({report['checked']} checks, {report['timing']}s)")
    if report["sweep"].get("truncated"):
        print("  note: sweep truncated by the hom limit")
    for f in report["findings"][:20]:
        print(f"  [{f['law']}] {f['witness']}")
    if len(report["findings"]) > 20:
        print(f"  ... {len(report['findings']) - 20} more")
    if report["result"] is not None:
        print(json.dumps(report["result"], indent=2, ensure_ascii=False))


def main(argv=None) -> int:
    code, report, as_json = _run(argv)
    if as_json:
        print(json.dumps(report, ensure_ascii=False, default=str))
    else:
        _print_human(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
