"""JSON formats, seeded election generation and the batch comparison harness.

Rationals are written as ``"num/den"`` strings so files stay exact.  All
writers emit keys in a fixed order with a trailing newline, so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from updown.axioms import Axiom, AuditReport, Witness
from updown.core import Election, ExtendedOutcome, validate_election
from updown.errors import BadParams, ParseError, UpdownError
from updown.rules_asymmetric import PaymentLedger, ThieleScoring


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text, field_name=None, path=None) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"expected a rational string, got {text!r}", path=path, field=field_name)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}", path=path, field=field_name) from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=path) from None
    return loads(text, path)


def loads(text: str, path=None) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path=path, line=exc.lineno) from None


def _expect(obj, kind, field_name, path):
    if not isinstance(obj, kind) or isinstance(obj, bool) and kind is not bool:
        raise ParseError(f"expected {kind.__name__}, got {type(obj).__name__}", path=path, field=field_name)
    return obj


def _names(obj, field_name, path) -> list:
    _expect(obj, list, field_name, path)
    for j, x in enumerate(obj):
        _expect(x, str, f"{field_name}[{j}]", path)
    return obj


# -- elections ---------------------------------------------------------------

def election_to_dict(e: Election) -> dict:
    return {
        "k": e.k,
        "candidates": list(e.candidates),
        "voters": [
            {
                "id": v,
                "approve": [e.candidates[c] for c in sorted(b.approve)],
                "disapprove": [e.candidates[c] for c in sorted(b.disapprove)],
            }
            for v, b in zip(e.voters, e.ballots)
        ],
    }


def election_from_dict(data, path=None) -> Election:
    _expect(data, dict, "<root>", path)
    for key in ("k", "candidates", "voters"):
        if key not in data:
            raise ParseError("missing key", path=path, field=key)
    k = _expect(data["k"], int, "k", path)
    candidates = _names(data["candidates"], "candidates", path)
    voters, ballots = [], []
    for j, v in enumerate(_expect(data["voters"], list, "voters", path)):
        where = f"voters[{j}]"
        _expect(v, dict, where, path)
        if "id" not in v:
            raise ParseError("missing key", path=path, field=f"{where}.id")
        voters.append(_expect(v["id"], str, f"{where}.id", path))
        ballots.append((_names(v.get("approve", []), f"{where}.approve", path),
                        _names(v.get("disapprove", []), f"{where}.disapprove", path)))
    return validate_election(candidates, voters, k, ballots)


def read_election(path) -> Election:
    return election_from_dict(_load(path), path)


def write_election(e: Election, path) -> None:
    Path(path).write_text(dumps_election(e), encoding="utf-8")


def dumps_election(e: Election) -> str:
    return _dump(election_to_dict(e))


# -- outcomes ----------------------------------------------------------------

@dataclass
class OutcomeRecord:
    """An outcome plus the optional payment certificate stored beside it."""

    outcome: ExtendedOutcome
    payments: dict | None = None
    residual: tuple | None = None

    @classmethod
    def from_ledger(cls, outcome, ledger: PaymentLedger | None):
        if ledger is None:
            return cls(outcome)
        return cls(outcome, dict(ledger.payments), tuple(ledger.residual))


def outcome_to_dict(e: Election, rec: OutcomeRecord) -> dict:
    o = rec.outcome
    out = {
        "selected": [e.candidates[c] for c in sorted(o.selected)],
        "vetoed": [e.candidates[c] for c in sorted(o.vetoed)],
    }
    if rec.payments is not None:
        table: dict = {}
        for (i, c), p in sorted(rec.payments.items()):
            table.setdefault(e.voters[i], {})[e.candidates[c]] = format_rational(p)
        out["payments"] = table
    if rec.residual is not None:
        out["residual"] = {e.voters[i]: format_rational(r) for i, r in enumerate(rec.residual)}
    return out


def _candidate_list(e: Election, names, field_name, path) -> frozenset:
    out = set()
    for j, x in enumerate(_names(names, field_name, path)):
        try:
            out.add(e.candidate_index(x))
        except (KeyError, ValueError, UpdownError):
            raise ParseError(f"unknown candidate {x!r}", path=path, field=f"{field_name}[{j}]") from None
    return frozenset(out)


def _voter(e: Election, name, field_name, path) -> int:
    try:
        return e.voter_index(name)
    except (KeyError, ValueError, UpdownError):
        raise ParseError(f"unknown voter {name!r}", path=path, field=field_name) from None


def outcome_from_dict(e: Election, data, path=None) -> OutcomeRecord:
    _expect(data, dict, "<root>", path)
    selected = _candidate_list(e, data.get("selected", []), "selected", path)
    vetoed = _candidate_list(e, data.get("vetoed", []), "vetoed", path)
    payments = residual = None
    if "payments" in data:
        payments = {}
        for v, row in _expect(data["payments"], dict, "payments", path).items():
            i = _voter(e, v, f"payments.{v}", path)
            for c, p in _expect(row, dict, f"payments.{v}", path).items():
                cc = _candidate_list(e, [c], f"payments.{v}", path)
                payments[(i, next(iter(cc)))] = parse_rational(p, f"payments.{v}.{c}", path)
    if "residual" in data:
        res = _expect(data["residual"], dict, "residual", path)
        vals = [Fraction(0)] * e.n
        for v, r in res.items():
            vals[_voter(e, v, f"residual.{v}", path)] = parse_rational(r, f"residual.{v}", path)
        residual = tuple(vals)
    return OutcomeRecord(ExtendedOutcome(selected, vetoed), payments, residual)


def read_outcome(e: Election, path) -> OutcomeRecord:
    return outcome_from_dict(e, _load(path), path)


def dumps_outcome(e: Election, rec: OutcomeRecord) -> str:
    return _dump(outcome_to_dict(e, rec))


def write_outcome(e: Election, rec: OutcomeRecord, path) -> None:
    Path(path).write_text(dumps_outcome(e, rec), encoding="utf-8")


# -- audit reports -----------------------------------------------------------

def _value_out(x):
    return x if isinstance(x, int) else format_rational(x)


def _value_in(x, field_name, path):
    return x if isinstance(x, int) and not isinstance(x, bool) else parse_rational(x, field_name, path)


def report_to_dict(e: Election, r: AuditReport) -> dict:
    return {
        "axiom": r.axiom.value,
        "verdict": r.verdict,
        "violation_count": r.violation_count,
        "guards": dict(sorted(r.guards.items())),
        "notes": list(r.notes),
        "witnesses": [
            {
                "group": [e.voters[i] for i in sorted(w.group)],
                "candidate_set": (None if w.candidate_set is None
                                  else [e.candidates[c] for c in sorted(w.candidate_set)]),
                "required": _value_out(w.required),
                "achieved": _value_out(w.achieved),
                "details": dict(sorted(w.details.items())),
            }
            for w in r.witnesses
        ],
    }


def report_from_dict(e: Election, data, path=None) -> AuditReport:
    _expect(data, dict, "<root>", path)
    try:
        axiom = Axiom(data["axiom"])
    except (KeyError, ValueError):
        raise ParseError("unknown or missing axiom", path=path, field="axiom") from None
    witnesses = []
    for j, w in enumerate(_expect(data.get("witnesses", []), list, "witnesses", path)):
        where = f"witnesses[{j}]"
        group = frozenset(_voter(e, v, f"{where}.group", path)
                          for v in _names(w.get("group", []), f"{where}.group", path))
        cs = w.get("candidate_set")
        cs = None if cs is None else _candidate_list(e, cs, f"{where}.candidate_set", path)
        witnesses.append(Witness(group,
                                 _value_in(w.get("required"), f"{where}.required", path),
                                 _value_in(w.get("achieved"), f"{where}.achieved", path),
                                 candidate_set=cs, details=dict(w.get("details", {}))))
    return AuditReport(axiom, witnesses, dict(data.get("guards", {})),
                       int(data.get("violation_count", len(witnesses))), list(data.get("notes", [])))


def dumps_report(e: Election, r: AuditReport) -> str:
    return _dump(report_to_dict(e, r))


# -- Thiele scoring tables ---------------------------------------------------

def scoring_from_dict(data, path=None) -> ThieleScoring:
    _expect(data, dict, "<root>", path)
    k = _expect(data.get("k"), int, "k", path)
    rows = _expect(data.get("f"), list, "f", path)
    if len(rows) != k + 1:
        raise ParseError(f"expected {k + 1} rows", path=path, field="f")
    table = []
    for z, row in enumerate(rows):
        _expect(row, list, f"f[{z}]", path)
        if len(row) != k + 1:
            raise ParseError(f"expected {k + 1} entries", path=path, field=f"f[{z}]")
        table.append([parse_rational(v, f"f[{z}][{s}]", path) for s, v in enumerate(row)])
    f = ThieleScoring.from_table(table, name=str(path or "table"))
    problems = f.check()
    if problems:
        raise ParseError("scoring table invalid: " + "; ".join(problems), path=path, field="f")
    return f


def read_scoring(path) -> ThieleScoring:
    return scoring_from_dict(_load(path), path)


def scoring_to_dict(f: ThieleScoring, k: int) -> dict:
    return {"k": k, "f": [[format_rational(v) for v in row] for row in f.as_table(k)]}


# -- random elections --------------------------------------------------------

@dataclass(frozen=True)
class GenParams:
    n: int
    m: int
    k: int
    p_approve: Fraction = Fraction(1, 3)
    p_disapprove: Fraction = Fraction(1, 3)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p_approve", Fraction(self.p_approve))
        object.__setattr__(self, "p_disapprove", Fraction(self.p_disapprove))
        if self.n < 1 or self.m < 1 or not 1 <= self.k <= self.m:
            raise BadParams(f"need n, m >= 1 and 1 <= k <= m; got n={self.n} m={self.m} k={self.k}")
        pa, pd = self.p_approve, self.p_disapprove
        if pa < 0 or pd < 0 or pa + pd > 1:
            raise BadParams("probabilities must be nonnegative with sum at most 1")
        if not 0 <= self.seed < 1 << 64:
            raise BadParams("seed must be a 64-bit unsigned integer")


def gen_random(p: GenParams) -> Election:
    """Independent approve / disapprove / abstain draws with exact marginals."""
    rng = random.Random(p.seed)
    scale = math.lcm(p.p_approve.denominator, p.p_disapprove.denominator)
    cut_a = p.p_approve * scale
    cut_d = (p.p_approve + p.p_disapprove) * scale
    ballots = []
    for _ in range(p.n):
        approve, disapprove = [], []
        for c in range(p.m):
            u = rng.randrange(scale)
            if u < cut_a:
                approve.append(f"c{c + 1}")
            elif u < cut_d:
                disapprove.append(f"c{c + 1}")
        ballots.append((approve, disapprove))
    return validate_election([f"c{c + 1}" for c in range(p.m)],
                             [f"v{i + 1}" for i in range(p.n)], p.k, ballots)


def random_sized(seed: int, n_max: int, m_max: int, p_approve=Fraction(1, 3),
                 p_disapprove=Fraction(1, 3), k_max=None) -> Election:
    """Election with ``n``, ``m`` and ``k`` also drawn from ``seed``."""
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    k = rng.randint(1, m if k_max is None else min(m, k_max))
    return gen_random(GenParams(n, m, k, p_approve, p_disapprove, rng.getrandbits(64)))


def trial_seeds(seed: int, trials: int) -> list:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(trials)]


# -- batch comparison --------------------------------------------------------

@dataclass
class CompareSummary:
    rules: list
    trials: int
    counts: dict = field(default_factory=dict)
    mean_size: dict = field(default_factory=dict)
    disagreement: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rules": list(self.rules),
            "trials": self.trials,
            "counts": self.counts,
            "mean_committee_size": {r: format_rational(v) for r, v in self.mean_size.items()},
            "disagreement": self.disagreement,
            "errors": self.errors,
        }

    def table(self) -> str:
        axioms = sorted({a for r in self.rules for a in self.counts.get(r, {})})
        header = ["rule", "mean |W|"] + axioms
        rows = [header]
        for r in self.rules:
            row = [r, f"{float(self.mean_size.get(r, 0)):.3f}"]
            for a in axioms:
                c = self.counts.get(r, {}).get(a)
                row.append("-" if c is None else f"{c['pass']}/{c['fail']}/{c['skip']}")
            rows.append(row)
        widths = [max(len(row[j]) for row in rows) for j in range(len(header))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        lines.append("cells: pass/fail/skip")
        if len(self.rules) > 1:
            lines.append("")
            lines.append("selected-set disagreements:")
            for a in self.rules:
                lines.append("  " + a.ljust(max(map(len, self.rules))) + "  "
                             + " ".join(str(self.disagreement[a][b]).rjust(4) for b in self.rules))
        return "\n".join(lines)


def compare_batch(rules, trials: int, gen: dict, seed: int, guard: int = 16) -> CompareSummary:
    """Run ``rules`` on ``trials`` random elections and audit each outcome.

    ``gen`` holds ``n``, ``m``, ``k`` maxima and ``pa``/``pd`` probabilities;
    sizes are drawn per trial.  Rule or audit errors are recorded and count
    as skips.
    """
    from updown.runner import RULES, applicable_axioms, run_audit, run_rule

    for r in rules:
        if r not in RULES:
            raise BadParams(f"unknown rule {r!r}")
    summary = CompareSummary(list(rules), trials)
    summary.disagreement = {a: {b: 0 for b in rules} for a in rules}
    sizes = {r: 0 for r in rules}
    for r in rules:
        summary.counts[r] = {a.value: {"pass": 0, "fail": 0, "skip": 0} for a in applicable_axioms(r)}
    for t, s in enumerate(trial_seeds(seed, trials)):
        e = random_sized(s, gen["n"], gen["m"], gen.get("pa", Fraction(1, 3)),
                         gen.get("pd", Fraction(1, 3)), gen.get("k"))
        chosen = {}
        for r in rules:
            try:
                o, _ = run_rule(r, e)
            except UpdownError as exc:
                summary.errors.append({"trial": t, "rule": r, "error": f"{type(exc).__name__}: {exc}"})
                for a in summary.counts[r].values():
                    a["skip"] += 1
                continue
            chosen[r] = o.selected
            sizes[r] += len(o.selected)
            for axiom in applicable_axioms(r):
                cell = summary.counts[r][axiom.value]
                try:
                    rep = run_audit(axiom, e, o, guard)
                except UpdownError:
                    cell["skip"] += 1
                    continue
                cell["pass" if rep.passed else "fail"] += 1
        for a in rules:
            for b in rules:
                if a in chosen and b in chosen and chosen[a] != chosen[b]:
                    summary.disagreement[a][b] += 1
    summary.mean_size = {r: Fraction(sizes[r], trials) if trials else Fraction(0) for r in rules}
    return summary
