"""Command-line interface.

Exit codes: 0 success (or every audit passed), 1 an axiom violation or an
oracle disagreement was found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from updown import io
from updown.axioms import Axiom
from updown.claims import DEFAULT_ORACLE_GUARD, claim_formula, claim_oracle
from updown.errors import BadParams, NotApplicable, UpdownError
from updown.fixtures import FIXTURES
from updown.rules_symmetric import pav_exact, pav_local_search, pav_score
from updown.runner import RULES, run_audit, run_rule

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_group(e, text):
    if text is None:
        return frozenset(range(e.n))
    group = set()
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in e.voters:
            group.add(e.voter_index(tok))
        elif tok.isdigit() and 1 <= int(tok) <= e.n:
            group.add(int(tok) - 1)
        else:
            raise UsageError(f"unknown voter {tok!r} in --group")
    if not group:
        raise UsageError("--group is empty")
    return frozenset(group)


def _parse_gen_params(text: str) -> dict:
    out = {"n": 8, "m": 8, "pa": Fraction(1, 3), "pd": Fraction(1, 3)}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        key, sep, value = part.partition("=")
        if not sep or key not in ("n", "m", "k", "pa", "pd"):
            raise UsageError(f"bad --gen-params entry {part!r}")
        try:
            out[key] = Fraction(value) if key in ("pa", "pd") else int(value)
        except ValueError:
            raise UsageError(f"bad value in --gen-params entry {part!r}") from None
    return out


def cmd_example(args):
    _emit(io.dumps_election(FIXTURES[args.name]), args.out)
    return EXIT_OK


def cmd_gen(args):
    try:
        p = io.GenParams(args.n, args.m, args.k, Fraction(args.pa), Fraction(args.pd), args.seed)
    except ValueError as exc:
        raise BadParams(str(exc)) from None
    _emit(io.dumps_election(io.gen_random(p)), args.out)
    return EXIT_OK


def cmd_run(args):
    e = io.read_election(args.input)
    scoring = io.read_scoring(args.scoring) if args.scoring else None
    o, extra = run_rule(args.rule, e, scoring=scoring, complete=args.complete,
                        uncapped=args.uncapped, negative_first=args.negative_first,
                        guard=args.guard)
    ledger = extra if args.rule in ("tax-mes", "tax-phragmen") else None
    _emit(io.dumps_outcome(e, io.OutcomeRecord.from_ledger(o, ledger)), args.out)
    return EXIT_OK


def _report_lines(e, rep):
    lines = [f"{rep.axiom.value}: {rep.verdict}"
             + (f" ({rep.violation_count} violating sets)" if not rep.passed else "")]
    for w in rep.witnesses[:5]:
        who = ",".join(e.voters[i] for i in sorted(w.group)) or "-"
        line = f"  group {{{who}}}"
        if w.candidate_set is not None:
            line += " T {" + ",".join(e.candidates[c] for c in sorted(w.candidate_set)) + "}"
        lines.append(f"{line} required {w.required} achieved {w.achieved}")
    return lines


def cmd_audit(args):
    e = io.read_election(args.input)
    o = io.read_outcome(e, args.outcome).outcome
    axioms = list(Axiom) if args.axiom == "all" else [Axiom(args.axiom)]
    reports, failed = [], False
    for axiom in axioms:
        try:
            rep = run_audit(axiom, e, o, guard=args.guard, limit=args.limit)
        except NotApplicable as exc:
            print(f"{axiom.value}: not applicable ({exc})")
            continue
        reports.append(io.report_to_dict(e, rep))
        failed |= not rep.passed
        print("\n".join(_report_lines(e, rep)))
    if args.out:
        payload = reports[0] if args.axiom != "all" and reports else reports
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_oracle(args):
    e = io.read_election(args.input)
    if args.what == "claim":
        group = _parse_group(e, args.group)
        g = claim_formula(e, group)
        print("group: " + ",".join(e.voters[i] for i in sorted(group)))
        print(f"|A_S| = {g.a_s}, |D_S| = {g.d_s}")
        print(f"formula: {g.formula_value} (case {g.case_index})")
        print(f"entitlement: {g.entitlement}")
        guard = args.guard if args.guard is not None else DEFAULT_ORACLE_GUARD
        if e.m > guard:
            print(f"oracle: skipped (m={e.m} > guard {guard})")
            return EXIT_OK
        value = claim_oracle(e, group, guard=guard)
        print(f"oracle: {value}")
        return EXIT_OK if value == g.entitlement else EXIT_VIOLATION
    kwargs = {} if args.guard is None else {"guard": args.guard}
    best = pav_exact(e, **kwargs)
    local = pav_local_search(e)
    names = lambda s: ",".join(e.candidates[c] for c in sorted(s))  # noqa: E731
    print(f"exact: {{{names(best.selected)}}} score {pav_score(e, best.selected)}")
    print(f"local: {{{names(local.selected)}}} score {pav_score(e, local.selected)}")
    return EXIT_OK


def cmd_compare(args):
    rules = [r.strip() for r in args.rules.split(",") if r.strip()]
    unknown = [r for r in rules if r not in RULES]
    if unknown:
        raise UsageError(f"unknown rules: {', '.join(unknown)}")
    gen = _parse_gen_params(args.gen_params)
    summary = io.compare_batch(rules, args.trials, gen, args.seed, guard=args.guard or 16)
    print(summary.table())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(summary.to_dict(), indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="updown", description="""Committee elections with
                                     approvals, vetoes and abstentions.""")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="write a built-in election")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("gen", help="generate a seeded random election")
    p.add_argument("--n", type=int, required=True, help="number of voters")
    p.add_argument("--m", type=int, required=True, help="number of candidates")
    p.add_argument("--k", type=int, required=True, help="committee bound")
    p.add_argument("--pa", default="1/3", help="approval probability (rational)")
    p.add_argument("--pd", default="1/3", help="disapproval probability (rational)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run a rule on an election")
    p.add_argument("--rule", required=True, choices=RULES)
    p.add_argument("--input", required=True, help="election JSON")
    p.add_argument("--scoring", help="Thiele scoring table JSON (rule thiele)")
    p.add_argument("--complete", action="store_true", help="complete Tax-MES by net approval")
    p.add_argument("--uncapped", action="store_true", help="Tax-Phragmén without the k/n income cap")
    p.add_argument("--negative-first", action="store_true",
                   help="up/down Phragmén: buy vetoes first at time ties")
    p.add_argument("--guard", type=int, help="enumeration bound on m for exhaustive rules")
    p.add_argument("--out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("audit", help="audit an outcome against an axiom")
    p.add_argument("--axiom", required=True, choices=[a.value for a in Axiom] + ["all"])
    p.add_argument("--input", required=True, help="election JSON")
    p.add_argument("--outcome", required=True, help="outcome JSON")
    p.add_argument("--guard", type=int, help="enumeration bound (n, or |selected| for veto axioms)")
    p.add_argument("--limit", type=int, default=50, help="witnesses kept per report")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("oracle", help="brute-force cross-checks")
    p.add_argument("--what", required=True, choices=["claim", "pav"])
    p.add_argument("--input", required=True)
    p.add_argument("--group", help='voters, by id or 1-based position, e.g. "1,2,5"')
    p.add_argument("--guard", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="batch-compare rules on random elections")
    p.add_argument("--rules", required=True, help="comma-separated rule names")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gen-params", default="", help='e.g. "n=8,m=8,k=4,pa=1/3,pd=1/3" (maxima)')
    p.add_argument("--guard", type=int)
    p.add_argument("--json", help="write the JSON summary here")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UpdownError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
