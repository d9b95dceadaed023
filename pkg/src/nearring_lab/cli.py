"""Command-line front end.

Structures travel between invocations as JSON on stdin/stdout, so commands
compose with pipes, e.g. ``nearring-lab construct zn-nearring 12 | nearring-lab check --system right-near-ring``.
Exit codes: 0 success, 1 a ``--assert`` check failed, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import automata, axioms, construct, design, elements, ideals
from .construct import Algebra2
from .tables import (
    BUDGET_ENV,
    BudgetExceeded,
    LabError,
    Magma,
    MalformedInput,
    canonical_json,
    classify,
    provenance_to_json,
)

EXIT_OK, EXIT_ASSERT, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
FORMATS = ("json", "table", "dot", "csv")


class FormatMismatch(LabError):
    pass


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class Result:
    """A report document plus optional alternative renderings keyed by format."""

    doc: object
    ok: bool = True
    renders: dict[str, str] = field(default_factory=dict)


# ---------------------------------------------------------------- parsing


def parse_structure(source: str | dict, stdin=None):
    """Read a Magma, Algebra2 or machine from a path, inline JSON, ``-`` (stdin) or a dict."""
    if isinstance(source, dict):
        doc = source
    else:
        if source == "-":
            text = (stdin or sys.stdin).read()
        elif source.lstrip().startswith("{"):
            text = source
        else:
            try:
                with open(source, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise MalformedInput(source, f"cannot read: {exc.strerror}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise MalformedInput("", "expected a JSON object")
    if "structure" in doc and isinstance(doc["structure"], dict):
        doc = doc["structure"]
    if "states" in doc:
        return automata.machine_from_json(doc)
    if "add" in doc or "mul" in doc:
        return Algebra2.from_json(doc)
    if "op" in doc:
        return Magma.from_json(doc)
    raise MalformedInput("", "expected keys op, add/mul, or states")


def _load(args):
    return parse_structure(args.input, args.stdin)


def serialize(value) -> dict:
    return value.to_json()


# ---------------------------------------------------------------- construction


def _idx(path: str | None) -> Magma:
    if path is None:
        raise MalformedInput("--index", "this family needs an index magma file")
    m = parse_structure(path)
    if not isinstance(m, Magma):
        raise MalformedInput("--index", "expected a one-operation table")
    return m


FAMILIES: dict[str, tuple[int, Callable]] = {
    "zn-groupoid": (3, construct.zn_groupoid),
    "ln-loop": (2, construct.ln_loop),
    "zn-additive": (1, construct.zn_additive),
    "zn-multiplicative": (1, construct.zn_multiplicative),
    "zn-nearring": (1, construct.zn_nearring),
    "zn-seminearring": (1, construct.zn_seminearring),
    "planar-nearring": (2, construct.planar_nearring),
    "near-matrix": (2, lambda n, k: construct.near_matrix(construct.zn_nearring(n), k)),
    "near-poly": (2, construct.near_poly),
    "snp-zp": (1, construct.snp_zp),
    "magma-nearring": (1, None),
    "mod-p-envelope": (1, None),
    "parity-machine": (0, automata.parity_machine),
    "groupoid-semiautomaton": (4, automata.groupoid_semiautomaton),
    "groupoid-automaton": (6, automata.groupoid_automaton),
}


def build(family: str, params: Sequence, index: Magma | None = None):
    """Run a named construction; ``index`` feeds the formal-sum families."""
    if family not in FAMILIES:
        raise MalformedInput("family", f"unknown family {family!r}")
    arity, fn = FAMILIES[family]
    if len(params) != arity:
        raise MalformedInput("params", f"{family} takes {arity} integer parameter(s)")
    try:
        if family in ("magma-nearring", "mod-p-envelope"):
            if index is None:
                raise MalformedInput("--index", f"{family} needs an index magma")
            base = construct.zn_nearring(params[0])
            fn = construct.magma_nearring if family == "magma-nearring" else construct.mod_p_envelope
            value = fn(base, index)
            prov = (family, *params, index.to_json())
        else:
            value = fn(*params)
            prov = (family, *params)
    except ValueError as exc:
        if isinstance(exc, LabError):
            raise
        raise MalformedInput("params", str(exc)) from None
    if isinstance(value, (Magma, Algebra2)):
        value = dataclasses.replace(value, provenance=prov)
    return value, prov


def rebuild(provenance: dict):
    """Replay a recorded construction."""
    family, params = provenance["family"], list(provenance.get("params", []))
    index = None
    if family in ("magma-nearring", "mod-p-envelope"):
        index = Magma.from_json(params.pop())
    return build(family, params, index)[0]


# ---------------------------------------------------------------- verbs


def _algebra(value) -> Algebra2:
    if not isinstance(value, Algebra2):
        raise MalformedInput("", "this command needs a two-operation structure")
    return value


def _labels(value) -> tuple[str, ...]:
    return value.states if isinstance(value, automata.SemiAutomaton) else value.labels


def _elements_arg(value, text: str | None) -> list[int]:
    if not text:
        return []
    labels = _labels(value)
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in labels:
            raise MalformedInput("elements", f"unknown element {tok!r}")
        out.append(labels.index(tok))
    return out


def _named(value, subset) -> list[str]:
    labels = _labels(value)
    return [labels[i] for i in subset]


def cmd_construct(args) -> Result:
    index = _idx(args.index) if args.family in ("magma-nearring", "mod-p-envelope") else None
    value, _ = build(args.family, args.params, index)
    renders = {"dot": automata.export_dot(value)} if isinstance(value, automata.SemiAutomaton) else {}
    return Result(serialize(value), True, renders)


def cmd_check(args) -> Result:
    value = _load(args)
    if args.system:
        v = axioms.check_system(_algebra(value), args.system)
    elif args.identity:
        v = axioms.check_identity(value, args.identity, args.p)
    elif args.predicate:
        v = axioms.check_predicate(_algebra(value), args.predicate,
                                   _elements_arg(value, args.subset) or None)
    else:
        m = value if isinstance(value, Magma) else _algebra(value).mul_magma()
        if isinstance(value, Algebra2) and args.operation == "add":
            m = value.add_magma()
        c = classify(m)
        return Result(c.to_json(), True)
    return Result(v.to_json(), v.passed)


def cmd_elements(args) -> Result:
    alg = _algebra(_load(args))
    if args.quasi_regular:
        res = elements.quasi_regular_set(alg, args.quasi_regular)
        if isinstance(res, tuple):
            doc = {"mode": args.quasi_regular, "elements": _named(alg, res)}
        else:
            doc = {"mode": args.quasi_regular, **res.to_json()}
        return Result(doc)
    reports = elements.classify_elements(alg, args.kind)
    return Result({"kind": args.kind, "elements": _named(alg, [r.element for r in reports]),
                   "reports": [r.to_json() for r in reports]}, bool(reports))


def cmd_ideals(args) -> Result:
    alg = _algebra(_load(args))
    if args.n_ideal is not None:
        v = ideals.n_ideal_check(alg, args.n_ideal)
        return Result(v.to_json(), v.passed)
    if args.generated:
        seed = _elements_arg(alg, args.seed)
        if not seed:
            raise MalformedInput("--seed", "a generated ideal needs seed elements")
        fn = {"right": ideals.generated_right_ideal, "left": ideals.generated_left_ideal,
              "two-sided": ideals.generated_ideal}[args.generated]
        sub = fn(alg, seed)
        return Result({"generated": args.generated, "seed": _named(alg, seed), "ideal": list(sub),
                       "labels": _named(alg, sub)})
    res = ideals.enumerate_ideals(alg, args.kind, args.budget, args.exhaustive or None)
    doc = res.to_json()
    doc["labels"] = [_named(alg, i) for i in res.ideals]
    return Result(doc, bool(res.proper_nontrivial(alg)))


def cmd_smarandache(args) -> Result:
    value = _load(args)
    if args.relative:
        rep = ideals.s_relative_check(_algebra(value), args.relative, args.goal, args.p,
                                      args.budget, args.exhaustive or None)
        return Result(rep.to_json(), rep.passed)
    certs = ideals.find_substructure(value, args.goal, args.budget, args.exhaustive or None)
    doc = certs.to_json()
    doc["labels"] = [_named(value, c.subset) for c in certs]
    return Result(doc, bool(certs.certificates))


def cmd_bibd(args) -> Result:
    alg = _algebra(_load(args))
    if args.planar_only:
        rep = design.is_planar(alg)
        return Result(rep.to_json(), rep.planar)
    if args.relative:
        found = design.s_planar_bibds(alg)
        return Result({"designs": [{"certificate": c.to_json(), "design": d.to_json()} for c, d in found]},
                      bool(found))
    d = design.bibd_from_planar(alg)
    doc = d.to_json()
    if args.code:
        code = design.code_from_design(d, args.code)
        doc = {"axis": args.code, "words": list(code.words), "min_distance": code.min_distance}
    return Result(doc, d.is_bibd, {"csv": d.incidence_csv()})


def _add_magma(args, s: automata.SemiAutomaton) -> Magma:
    if args.add:
        m = parse_structure(args.add)
        if not isinstance(m, Magma):
            raise MalformedInput("--add", "expected a one-operation table")
        return m
    return construct.zn_additive(len(s.states))


def cmd_automaton(args) -> Result:
    s = _load(args)
    if not isinstance(s, automata.SemiAutomaton):
        raise MalformedInput("", "this command needs a machine document")
    dot = {"dot": automata.export_dot(s)}
    word = [w for w in (args.word or "").split(",") if w]
    if args.op == "describe":
        return Result(s.to_json(), True, dot)
    if args.op == "run":
        z = automata.run(s, args.start, word)
        return Result({"start": s.states[s.state(args.start)], "word": word, "state": s.states[z]}, True, dot)
    if args.op == "output":
        if not isinstance(s, automata.Automaton):
            raise MalformedInput("outputs", "run_output needs an automaton with outputs")
        out = automata.run_output(s, args.start, word)
        return Result({"start": s.states[s.state(args.start)], "word": word,
                       "output": [s.outputs[o] for o in out]}, True, dot)
    if args.op == "sub":
        subs = automata.sub_semiautomata(s, args.require, budget=args.budget)
        return Result({"require": args.require, "subsets": [list(x) for x in subs],
                       "labels": [_named(s, x) for x in subs]}, True, dot)
    if args.op == "syntactic":
        alg = automata.syntactic_nearring(s, _add_magma(args, s), args.budget)
        return Result(alg.to_json(), True, dot)
    if args.op == "s-syntactic":
        found = automata.s_syntactic_nearrings(s, _add_magma(args, s), args.budget)
        return Result({"nearrings": [{"certificate": c.to_json(), "nearring": a.to_json()} for c, a in found]},
                      bool(found), dot)
    try:
        dec = automata.additivity_decomposition(s, _add_magma(args, s), args.start)
    except automata.NotAdditive as exc:
        return Result({"additive": False, "reason": str(exc), "witness": exc.witness.to_json()}, False, dot)
    return Result({"additive": True, **dec.to_json()}, True, dot)


def report_for(value) -> dict:
    """Everything cheap to decide about a structure, with its construction record."""
    doc: dict = {"structure": value.to_json()}
    prov = getattr(value, "provenance", ())
    if prov:
        doc["construction"] = provenance_to_json(prov)
    if isinstance(value, automata.SemiAutomaton):
        doc["sub_semiautomata"] = [list(x) for x in automata.sub_semiautomata(value)]
        return doc
    if isinstance(value, Magma):
        doc["classification"] = classify(value).to_json()
        doc["certificates"] = {g: ideals.find_substructure(value, g).to_json()
                               for g in ("group-in-semigroup", "semigroup-in-groupoid")}
        return doc
    doc["classification"] = {"add": classify(value.add_magma()).to_json(),
                             "mul": classify(value.mul_magma()).to_json()}
    doc["systems"] = {s: axioms.check_system(value, s).to_json() for s in axioms.SYSTEMS}
    return doc


def cmd_report(args) -> Result:
    return Result(report_for(_load(args)))


COMMANDS = {"construct": cmd_construct, "check": cmd_check, "elements": cmd_elements,
            "ideals": cmd_ideals, "smarandache": cmd_smarandache, "bibd": cmd_bibd,
            "automaton": cmd_automaton, "report": cmd_report}


# ---------------------------------------------------------------- output


def _grid(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def _cayley(labels: Sequence[str], table, name: str) -> str:
    rows = [[name, *labels]] + [[labels[i], *(labels[v] for v in row)] for i, row in enumerate(table)]
    return _grid(rows)


def _as_table(doc) -> str:
    if isinstance(doc, dict) and "labels" in doc and ("op" in doc or "add" in doc):
        parts = [_cayley(doc["labels"], doc[k], sym) for k, sym in (("op", "*"), ("add", "+"), ("mul", "."))
                 if k in doc]
        return "\n".join(parts)
    if isinstance(doc, dict) and "states" in doc and "delta" in doc:
        out = _grid([["delta", *doc["inputs"]]] +
                    [[z, *(doc["states"][v] for v in row)] for z, row in zip(doc["states"], doc["delta"])])
        if "lambda" in doc:
            out += "\n" + _grid([["lambda", *doc["inputs"]]] +
                                [[z, *(doc["outputs"][v] for v in row)]
                                 for z, row in zip(doc["states"], doc["lambda"])])
        return out
    if isinstance(doc, dict):
        rows = [[str(k), canonical_json(v) if isinstance(v, (dict, list)) else json.dumps(v)]
                for k, v in sorted(doc.items())]
        return "".join(f"{k.ljust(max(len(r[0]) for r in rows))}  {v}\n" for k, v in rows) if rows else ""
    return canonical_json(doc) + "\n"


def emit(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "table":
        return _as_table(result.doc)
    if fmt not in result.renders:
        raise FormatMismatch(f"format {fmt!r} does not apply to this report")
    return result.renders[fmt]


# ---------------------------------------------------------------- argv


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nearring-lab", description="Finite near-ring and automaton toolkit.")
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="enumeration budget")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--assert", dest="assert_", action="store_true",
                        help="exit 1 when the report's check fails")
    common.add_argument("--output", "-o", default=None, help="write the report to a file")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_):
        v = sub.add_parser(name, parents=[common], help=help_)
        if name != "construct":
            v.add_argument("input", nargs="?", default="-", help="JSON file, inline JSON or - for stdin")
        return v

    c = verb("construct", "build a structure from a named family")
    c.add_argument("family", choices=sorted(FAMILIES))
    c.add_argument("params", nargs="*", type=int)
    c.add_argument("--index", help="index magma JSON for formal-sum families")

    k = verb("check", "decide an axiom system, identity or predicate")
    g = k.add_mutually_exclusive_group()
    g.add_argument("--system", choices=axioms.SYSTEMS)
    g.add_argument("--identity", choices=axioms.IDENTITIES)
    g.add_argument("--predicate", choices=axioms.PREDICATES)
    k.add_argument("--p", type=int, default=None, help="exponent for p-near-ring")
    k.add_argument("--subset", help="comma-separated element labels for subset predicates")
    k.add_argument("--operation", choices=("add", "mul"), default="mul",
                   help="table to classify when no check is named")

    e = verb("elements", "classify elements")
    e.add_argument("--kind", choices=elements.ELEMENT_KINDS, default="idempotent")
    e.add_argument("--quasi-regular", choices=("circle", "lz"))

    i = verb("ideals", "enumerate or generate ideals")
    i.add_argument("--kind", choices=ideals.IDEAL_KINDS, default="ideal")
    i.add_argument("--exhaustive", action="store_true")
    i.add_argument("--n-ideal", type=int)
    i.add_argument("--generated", choices=("right", "left", "two-sided"))
    i.add_argument("--seed", help="comma-separated element labels")

    s = verb("smarandache", "find proper substructures of a stronger kind")
    s.add_argument("--goal", choices=ideals.GOALS, default="group-in-semigroup")
    s.add_argument("--relative", choices=ideals.RELATIVE_PREDICATES)
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--exhaustive", action="store_true")

    b = verb("bibd", "block design from a planar near-ring")
    b.add_argument("--code", choices=("rows", "columns"))
    b.add_argument("--planar-only", action="store_true")
    b.add_argument("--relative", action="store_true", help="designs over near-field certificates")

    a = verb("automaton", "run, analyse or export a machine")
    a.add_argument("--op", choices=("describe", "run", "output", "sub", "syntactic", "s-syntactic",
                                    "decompose"), default="describe")
    a.add_argument("--start", default="0", help="start state label (or base input for decompose)")
    a.add_argument("--word", help="comma-separated input labels")
    a.add_argument("--require", action="store_true", help="keep only S-subsemigroup state sets")
    a.add_argument("--add", help="addition table on the states (defaults to Z_n)")

    verb("report", "summary report with the construction record")
    return p


def _start_default(args) -> None:
    if args.verb == "automaton" and args.op == "decompose" and args.start == "0":
        args.start = 0


def run_command(argv: Sequence[str], stdin=None, stdout=None, stderr=None) -> int:
    """Run one invocation and return its exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(list(argv))
    except _UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    if args.budget is not None and args.budget <= 0:
        print("error: --budget must be positive", file=stderr)
        return EXIT_INPUT
    _start_default(args)
    args.stdin = stdin
    saved = os.environ.get(BUDGET_ENV)
    if args.budget is not None:
        os.environ[BUDGET_ENV] = str(args.budget)
    try:
        result = COMMANDS[args.verb](args)
        text = emit(result, args.format)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except (LabError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=stderr)
        return EXIT_INPUT
    finally:
        if saved is None:
            os.environ.pop(BUDGET_ENV, None)
        else:
            os.environ[BUDGET_ENV] = saved
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.assert_ and not result.ok:
        return EXIT_ASSERT
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)
