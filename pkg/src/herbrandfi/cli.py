"""Command-line front end.

Exit status: 0 on success, 1 when a proof or check fails, 2 for unreadable
or malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Optional

from . import generators as gen
from .calculus import onesided as o
from .calculus import twosided as t2
from .calculus.translate import translate
from .errors import HerbrandFIError, ParseError, SignatureError
from .herbrand import extract
from .interpretation import TransformerEnv, canonical_args, evidence_type, transform
from .kernel import DEFAULT_FUEL, alpha_eq, is_normal, normalize_counted, step, typecheck
from .proofformat import ProofFile, parse_proof_file, print_proof_file
from .syntax import Not, show_formula, show_sequent, show_term
from .verifier import soundness_report


class InputError(Exception):
    """Problems with the input file itself (exit status 2)."""


def _load(path: str) -> ProofFile:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None
    try:
        return parse_proof_file(data)
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not valid UTF-8 ({e.reason})") from None
    except ParseError as e:
        raise InputError(f"{path}:{e}") from None
    except SignatureError as e:
        raise InputError(f"{path}: {e}") from None


def _one_sided(pf: ProofFile) -> o.Proof:
    """The proof as a regular one-sided proof (translating if needed)."""
    if pf.two_sided:
        return translate(pf.proof)
    o.check_one_sided(pf.proof, regular=False)
    return o.regularize(pf.proof)


def _seq_strings(seq):
    return [show_formula(f) for f in seq]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _tree(p, seqs, path="root"):
    s = seqs[id(p)]
    if isinstance(p, t2.Proof2):
        sequent = {"antecedent": _seq_strings(s[0]), "succedent": _seq_strings(s[1])}
    else:
        sequent = _seq_strings(s)
    return {"path": path, "rule": p.rule, "sequent": sequent,
            "premises": [_tree(c, seqs, f"{path}/{j + 1}") for j, c in enumerate(p.children())]}


def cmd_check(args, out):
    pf = _load(args.file)
    if pf.two_sided:
        g, d = t2.check_two_sided(pf.proof)
        seqs = t2.conclusions2(pf.proof)
        text = f"{show_sequent(g)} ⊢ {show_sequent(d)}".strip()
        end = {"antecedent": _seq_strings(g), "succedent": _seq_strings(d)}
    else:
        seq = o.check_one_sided(pf.proof, regular=not args.allow_irregular)
        seqs = o.conclusions(pf.proof)
        text = f"⊢ {show_sequent(seq)}"
        end = _seq_strings(seq)
    if args.json:
        out({"command": "check", "ok": True, "twoSided": pf.two_sided,
             "endSequent": end, "tree": _tree(pf.proof, seqs)})
    else:
        print(f"OK {text}")
    return 0


def cmd_translate(args, out):
    pf = _load(args.file)
    if not pf.two_sided:
        raise HerbrandFIError("translate expects a two-sided proof (proof2)")
    res = ProofFile(pf.signature, translate(pf.proof))
    text = print_proof_file(res)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        out({"command": "translate", "ok": True, "proof": text,
             "endSequent": _seq_strings(o.end_sequent(res.proof))})
    elif not args.output:
        sys.stdout.write(text)
    return 0


def cmd_interpret(args, out):
    pf = _load(args.file)
    p = _one_sided(pf)
    const = pf.signature.default_constant
    env = TransformerEnv(p, const)
    seq = env.end_sequent
    cargs = canonical_args(seq, const)
    term = transform(env, args.index, cargs)
    ty = typecheck(term)
    steps = 0
    if not args.raw:
        term, steps = normalize_counted(term, args.fuel)
    if args.json:
        out({"command": "interpret", "ok": True, "index": args.index,
             "formula": show_formula(seq[args.index - 1]), "type": str(ty),
             "term": show_term(term), "normalized": not args.raw, "stepCount": steps})
    else:
        print(f"F_{args.index} for {show_formula(seq[args.index - 1])}")
        print(f"type: {ty}")
        print(f"term: {show_term(term)}")
    return 0


def cmd_verify(args, out):
    pf = _load(args.file)
    p = _one_sided(pf)
    ok, formula, bad = soundness_report(p, const=pf.signature.default_constant, fuel=args.fuel)
    assignment = None if bad is None else {show_formula(k): v for k, v in bad.items()}
    if args.json:
        out({"command": "verify", "ok": ok, "passed": ok,
             "endSequent": _seq_strings(o.end_sequent(p)), "falsifyingAssignment": assignment})
    elif ok:
        print("PASS")
    else:
        print("FAIL")
        for k, v in assignment.items():
            print(f"  {k} = {'true' if v else 'false'}")
    return 0 if ok else 1


def cmd_extract(args, out):
    pf = _load(args.file)
    p = _one_sided(pf)
    res = extract(p, pf.signature.default_constant, fuel=args.fuel)
    if args.json:
        doc = {"command": "extract", "ok": res.verified,
               "witnesses": [show_term(t) for t in res.witnesses],
               "disjunction": show_formula(res.disjunction),
               "verified": res.verified, "stepCount": res.step_count}
        if args.emit_realizer:
            doc["realizer"] = show_term(res.realizer)
        out(doc)
    else:
        print("witnesses: " + ", ".join(show_term(t) for t in res.witnesses))
        print("disjunction: " + show_formula(res.disjunction))
        print("verified: " + ("yes" if res.verified else "no"))
        if args.emit_realizer:
            print("realizer: " + show_term(res.realizer))
    return 0 if res.verified else 1


def _fuzz_cases(rng: random.Random, fuel: int):
    """Named checks on freshly generated objects; each returns None or a message."""
    def soundness():
        p = gen.random_closed_proof(rng, steps=rng.randint(3, 10))
        ok, _, bad = soundness_report(p, fuel=fuel)
        return None if ok else f"soundness fails on ⊢ {show_sequent(o.end_sequent(p))}"

    def herbrand():
        p = gen.random_exists_proof(rng)
        res = extract(p, fuel=fuel)
        return None if res.verified else f"unverified disjunction {show_formula(res.disjunction)}"

    def translation():
        q = gen.random_two_sided_proof(rng, steps=rng.randint(3, 10))
        g, d = t2.check_two_sided(q)
        got = o.check_one_sided(translate(q))
        want = tuple(Not(a) for a in g) + tuple(d)
        if len(got) != len(want) or not all(alpha_eq(a, b) for a, b in zip(got, want)):
            return "translated end sequent differs"
        return None

    def reduction():
        ty = gen.random_type(rng, 2)
        t = gen.random_closed_term(rng, ty, rng.randint(2, 8))
        for _ in range(fuel):
            if typecheck(t) != ty:
                return f"type changed along reduction of {show_term(t)}"
            if is_normal(t):
                return None
            t = step(t)
        return "step budget exhausted"

    def typing():
        p = gen.random_closed_proof(rng, steps=rng.randint(3, 8))
        env = TransformerEnv(p)
        cargs = canonical_args(env.end_sequent)
        for i, a in enumerate(env.end_sequent, start=1):
            if typecheck(transform(env, i, cargs)) != evidence_type(a):
                return f"transformer {i} has the wrong type"
        return None

    return (("soundness", soundness), ("herbrand", herbrand), ("translation", translation),
            ("reduction", reduction), ("typing", typing))


def cmd_fuzz(args, out):
    rng = random.Random(args.seed)
    counts = {}
    failures = []
    start = time.perf_counter()
    for case in range(args.count):
        for name, fn in _fuzz_cases(rng, args.fuel):
            c = counts.setdefault(name, {"passed": 0, "failed": 0})
            try:
                msg = fn()
            except HerbrandFIError as e:
                msg = f"{type(e).__name__}: {e}"
            if msg is None:
                c["passed"] += 1
            else:
                c["failed"] += 1
                failures.append({"check": name, "case": case, "message": msg})
    ok = not failures
    if args.json:
        out({"command": "fuzz", "ok": ok, "seed": args.seed, "count": args.count,
             "checks": counts, "failures": failures,
             "seconds": round(time.perf_counter() - start, 3)})
    else:
        for name, c in counts.items():
            print(f"{name}: {c['passed']} passed, {c['failed']} failed")
        for f in failures:
            print(f"  case {f['case']} [{f['check']}]: {f['message']}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL,
                        help="maximum number of reduction steps (default %(default)s)")

    parser = argparse.ArgumentParser(
        prog="herbrandfi",
        description="Check proofs, compute their functional interpretation and "
                    "extract Herbrand disjunctions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check a proof file")
    p.add_argument("file")
    p.add_argument("--allow-irregular", action="store_true",
                   help="accept eigenvariables introduced more than once")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("translate", parents=[common], help="two-sided to one-sided proof")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the proof file here")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("interpret", parents=[common],
                       help="term transformer for one formula occurrence")
    p.add_argument("file")
    p.add_argument("--index", type=int, required=True, help="1-based occurrence index")
    p.add_argument("--raw", action="store_true", help="do not normalize the result")
    p.set_defaults(func=cmd_interpret)

    p = sub.add_parser("verify", parents=[common], help="decide the soundness formula")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extract", parents=[common], help="Herbrand disjunction for ∃x A")
    p.add_argument("file")
    p.add_argument("--emit-realizer", action="store_true", help="also print the normal form")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("fuzz", parents=[common], help="run randomized self-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    def out(doc):
        print(json.dumps(doc, ensure_ascii=False, indent=2))

    def fail(code, kind, message, path=None):
        print(f"herbrandfi {args.command}: {message}", file=sys.stderr)
        if args.json:
            err = {"kind": kind, "message": message}
            if path is not None:
                err["path"] = path
            out({"command": args.command, "ok": False, "error": err})
        return code

    try:
        return args.func(args, out)
    except InputError as e:
        return fail(2, "input", str(e))
    except HerbrandFIError as e:
        return fail(1, type(e).__name__, str(e), getattr(e, "path", None))
    except RecursionError:
        return fail(1, "RecursionError", "input nested too deeply")


if __name__ == "__main__":
    sys.exit(main())
