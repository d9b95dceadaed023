"""Finite semi-automata and automata, their syntactic near-rings and state-graph export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .construct import Algebra2
from .ideals import Certificate, find_substructure
from .tables import (
    BudgetExceeded,
    LabError,
    Magma,
    MalformedInput,
    Witness,
    classify,
    identity_element,
    induced,
    is_group_kind,
    members,
    default_budget,
    validate_labels,
)

SYNTACTIC_BUDGET = 10**6


class InvalidSymbol(LabError, ValueError):
    pass


class NotAdditive(LabError):
    """The transition function does not split as psi(q) + alpha(x)."""

    def __init__(self, message: str, witness: Witness):
        super().__init__(message)
        self.witness = witness


def _rect(table, rows: int, cols: int, bound: int, path: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(table, (list, tuple)) or len(table) != rows:
        raise MalformedInput(path, f"expected {rows} rows")
    for i, row in enumerate(table):
        if not isinstance(row, (list, tuple)) or len(row) != cols:
            raise MalformedInput(f"{path}[{i}]", f"expected {cols} entries")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < bound:
                raise MalformedInput(f"{path}[{i}][{j}]", f"entry {v!r} is not an index below {bound}")
    return tuple(tuple(row) for row in table)


@dataclass(frozen=True)
class SemiAutomaton:
    """States, inputs and a transition table indexed ``delta[state][input]``.

    ``state_op`` optionally records a binary operation on the states (the
    S-semigroup the machine was built over); it is carried along in JSON.
    """

    states: tuple[str, ...]
    inputs: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    state_op: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", validate_labels(self.states, "states"))
        object.__setattr__(self, "inputs", validate_labels(self.inputs, "inputs"))
        nz, na = len(self.states), len(self.inputs)
        object.__setattr__(self, "delta", _rect(self.delta, nz, na, nz, "delta"))
        if self.state_op is not None:
            object.__setattr__(self, "state_op", _rect(self.state_op, nz, nz, nz, "state_op"))

    def state(self, sym) -> int:
        return _resolve(sym, self.states, "state")

    def symbol(self, sym) -> int:
        return _resolve(sym, self.inputs, "input")

    def transition_map(self, x: int) -> tuple[int, ...]:
        return tuple(row[x] for row in self.delta)

    def state_magma(self) -> Magma | None:
        return None if self.state_op is None else Magma(self.states, self.state_op)

    def to_json(self) -> dict:
        doc = {"states": list(self.states), "inputs": list(self.inputs),
               "delta": [list(r) for r in self.delta]}
        if self.state_op is not None:
            doc["state_op"] = [list(r) for r in self.state_op]
        return doc


@dataclass(frozen=True)
class Automaton(SemiAutomaton):
    outputs: tuple[str, ...] = ()
    lam: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "outputs", validate_labels(self.outputs, "outputs"))
        object.__setattr__(self, "lam", _rect(self.lam, len(self.states), len(self.inputs),
                                              len(self.outputs), "lambda"))

    def to_json(self) -> dict:
        doc = super().to_json()
        doc["outputs"] = list(self.outputs)
        doc["lambda"] = [list(r) for r in self.lam]
        return doc


def machine_from_json(doc) -> SemiAutomaton:
    """Parse either schema; the presence of ``lambda`` selects an Automaton."""
    if not isinstance(doc, dict):
        raise MalformedInput("", "expected a JSON object")
    for key in ("states", "inputs", "delta"):
        if key not in doc:
            raise MalformedInput(key, "missing")
    common = dict(states=doc["states"], inputs=doc["inputs"], delta=doc["delta"],
                  state_op=doc.get("state_op"))
    if "lambda" in doc or "outputs" in doc:
        if "lambda" not in doc or "outputs" not in doc:
            raise MalformedInput("lambda", "outputs and lambda must appear together")
        return Automaton(**common, outputs=doc["outputs"], lam=doc["lambda"])
    return SemiAutomaton(**common)


def _resolve(sym, labels: Sequence[str], what: str) -> int:
    if isinstance(sym, str):
        if sym in labels:
            return labels.index(sym)
        raise InvalidSymbol(f"unknown {what} {sym!r}")
    if isinstance(sym, int) and not isinstance(sym, bool) and 0 <= sym < len(labels):
        return sym
    raise InvalidSymbol(f"invalid {what} {sym!r}")


def semiautomaton_from_function(states: Sequence[str], inputs: Sequence[str], delta,
                                state_op=None) -> SemiAutomaton:
    nz, na = len(states), len(inputs)
    table = tuple(tuple(delta(z, a) for a in range(na)) for z in range(nz))
    return SemiAutomaton(tuple(states), tuple(inputs), table, state_op)


def automaton_from_function(states, inputs, outputs, delta, lam) -> Automaton:
    nz, na = len(states), len(inputs)
    d = tuple(tuple(delta(z, a) for a in range(na)) for z in range(nz))
    l_ = tuple(tuple(lam(z, a) for a in range(na)) for z in range(nz))
    return Automaton(tuple(states), tuple(inputs), d, None, tuple(outputs), l_)


def parity_machine() -> Automaton:
    """Two states; input 1 flips the state, 0 keeps it; the output echoes the input."""
    return automaton_from_function(("z0", "z1"), ("0", "1"), ("0", "1"),
                                   lambda z, a: z ^ a, lambda z, a: a)


def groupoid_semiautomaton(n: int, t: int, u: int, inputs: int) -> SemiAutomaton:
    """States Z_n, inputs 0..inputs-1, next state z*a = t*z + u*a (mod n)."""
    if n < 2 or inputs < 1:
        raise ValueError("need n >= 2 and at least one input")
    return semiautomaton_from_function([str(i) for i in range(n)], [str(i) for i in range(inputs)],
                                       lambda z, a: (t * z + u * a) % n)


def groupoid_automaton(n: int, t: int, u: int, m: int, r: int, s: int) -> Automaton:
    """States Z_n with z*a = t*z + u*a (mod n); inputs and outputs Z_m with lambda = r*z + s*a (mod m)."""
    return automaton_from_function([str(i) for i in range(n)], [str(i) for i in range(m)],
                                   [str(i) for i in range(m)],
                                   lambda z, a: (t * z + u * a) % n, lambda z, a: (r * z + s * a) % m)


def run(s: SemiAutomaton, start, word: Sequence) -> int:
    """Left fold of the transition table over ``word``; the empty word leaves the state."""
    z = s.state(start)
    for sym in word:
        z = s.delta[z][s.symbol(sym)]
    return z


def run_output(a: Automaton, start, word: Sequence) -> tuple[int, ...]:
    z = a.state(start)
    out = []
    for sym in word:
        x = a.symbol(sym)
        out.append(a.lam[z][x])
        z = a.delta[z][x]
    return tuple(out)


@dataclass(frozen=True)
class SSemigroupMachine:
    machine: SemiAutomaton
    certificates: tuple[Certificate, ...]
    verified: bool

    def to_json(self) -> dict:
        return {"machine": self.machine.to_json(), "verified": self.verified,
                "certificates": [c.to_json() for c in self.certificates]}


def s_semigroup_semiautomaton(g: Magma, inputs: Sequence[str], delta) -> SSemigroupMachine:
    """Machine over the states of ``g`` together with the group certificates of ``g``.

    ``delta`` is either a callable on (state index, input index) or a table.
    ``verified`` is False when ``g`` has no proper subgroup.
    """
    if callable(delta):
        s = semiautomaton_from_function(g.labels, inputs, delta, g.op)
    else:
        s = SemiAutomaton(g.labels, tuple(inputs), delta, g.op)
    certs = find_substructure(g, "group-in-semigroup").certificates
    return SSemigroupMachine(s, certs, bool(certs))


def _delta_closure(s: SemiAutomaton, seed: int, allowed: Sequence[int] | None = None) -> int:
    inputs = range(len(s.inputs)) if allowed is None else allowed
    mask, stack = seed, list(members(seed))
    while stack:
        z = stack.pop()
        for x in inputs:
            w = s.delta[z][x]
            if not mask >> w & 1:
                mask |= 1 << w
                stack.append(w)
    return mask


def is_delta_closed(s: SemiAutomaton, subset, inputs: Sequence[int] | None = None) -> bool:
    xs = range(len(s.inputs)) if inputs is None else inputs
    sub = set(subset)
    return all(s.delta[z][x] in sub for z in sub for x in xs)


def sub_semiautomata(s: SemiAutomaton, require: bool = False, inputs: Sequence[int] | None = None,
                     budget: int | None = None) -> list[tuple[int, ...]]:
    """Every nonempty state subset closed under delta for the chosen inputs.

    Closed sets are exactly the unions of single-state closures, so they are
    grown one principal closure at a time. With ``require`` the result keeps
    only proper subsets that are S-subsemigroups of the recorded state operation.
    """
    limit = default_budget() if budget is None else budget
    n = len(s.states)
    principal = [_delta_closure(s, 1 << z, inputs) for z in range(n)]
    seen = set(principal)
    frontier = list(seen)
    while frontier:
        nxt = []
        for mask in frontier:
            for p in principal:
                grown = mask | p
                if grown not in seen:
                    seen.add(grown)
                    if len(seen) > limit:
                        raise BudgetExceeded("delta-closed subsets", limit)
                    nxt.append(grown)
        frontier = nxt
    out = sorted((members(m) for m in seen), key=lambda t: (len(t), t))
    if require:
        g = s.state_magma()
        if g is None:
            raise MalformedInput("state_op", "the S-subsemigroup filter needs a state operation")
        out = [sub for sub in out if len(sub) < n and _is_s_subsemigroup(g, sub)]
    return out


def _is_s_subsemigroup(g: Magma, sub: Sequence[int]) -> bool:
    allowed = set(sub)
    if any(g.op[a][b] not in allowed for a in sub for b in sub):
        return False
    h = induced(g, sub)
    if not classify(h).associative:
        return False
    return len(find_substructure(h, "group-in-semigroup")) > 0


def _map_label(f: Sequence[int], labels: Sequence[str]) -> str:
    return "[" + ",".join(labels[q] for q in f) + "]"


def _map_algebra(maps: Sequence[tuple[int, ...]], add: Magma, provenance: tuple) -> Algebra2:
    maps = sorted(maps)
    pos = {f: i for i, f in enumerate(maps)}
    A = add.op
    addt = [[pos[tuple(A[f[q]][g[q]] for q in range(add.n))] for g in maps] for f in maps]
    mult = [[pos[tuple(f[q] for q in g)] for g in maps] for f in maps]
    labels = [_map_label(f, add.labels) for f in maps]
    return Algebra2(tuple(labels), tuple(map(tuple, addt)), tuple(map(tuple, mult)), None, provenance)


def _require_group(add: Magma) -> None:
    if not is_group_kind(classify(add).kind):
        raise MalformedInput("add", "the states do not form a group under the supplied addition")


def map_closure(add: Magma, generators, budget: int | None = None) -> list[tuple[int, ...]]:
    """Close a set of self-maps of the states under pointwise addition and composition."""
    limit = SYNTACTIC_BUDGET if budget is None else budget
    A, n = add.op, add.n
    found: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    queue = []
    for f in generators:
        f = tuple(f)
        if f not in seen:
            seen.add(f)
            queue.append(f)
    while queue:
        f = queue.pop()
        found.append(f)
        for g in list(found):
            for h in (tuple(A[f[q]][g[q]] for q in range(n)), tuple(A[g[q]][f[q]] for q in range(n)),
                      tuple(f[q] for q in g), tuple(g[q] for q in f)):
                if h not in seen:
                    seen.add(h)
                    if len(seen) > limit:
                        raise BudgetExceeded("syntactic near-ring maps", limit)
                    queue.append(h)
    return found


def syntactic_nearring(s: SemiAutomaton, add: Magma, budget: int | None = None) -> Algebra2:
    """Near-ring of self-maps generated by every delta_x and the identity map.

    Addition is pointwise in the state group and multiplication is composition
    (f*g)(q) = f(g(q)), which distributes on the right.
    """
    if add.n != len(s.states):
        raise MalformedInput("add", "addition table size differs from the state count")
    _require_group(add)
    gens = [tuple(range(add.n))] + [s.transition_map(x) for x in range(len(s.inputs))]
    return _map_algebra(map_closure(add, gens, budget), add, ("syntactic", len(s.states), len(s.inputs)))


def full_map_nearring(add: Magma, budget: int | None = None) -> Algebra2:
    """All n^n self-maps of a group under pointwise addition and composition."""
    _require_group(add)
    limit = SYNTACTIC_BUDGET if budget is None else budget
    if add.n ** add.n > limit:
        raise BudgetExceeded("self-maps", limit)
    return _map_algebra(list(product(range(add.n), repeat=add.n)), add, ("maps", add.n))


def restrict_machine(s: SemiAutomaton, subset: Sequence[int]) -> SemiAutomaton:
    pos = {z: i for i, z in enumerate(subset)}
    if not is_delta_closed(s, subset):
        raise MalformedInput("subset", "not closed under the transition function")
    delta = tuple(tuple(pos[s.delta[z][x]] for x in range(len(s.inputs))) for z in subset)
    op = None
    if s.state_op is not None and all(s.state_op[a][b] in pos for a in subset for b in subset):
        op = tuple(tuple(pos[s.state_op[a][b]] for b in subset) for a in subset)
    return SemiAutomaton(tuple(s.states[z] for z in subset), s.inputs, delta, op)


def s_syntactic_nearrings(s: SemiAutomaton, add_magma: Magma,
                          budget: int | None = None) -> list[tuple[Certificate, Algebra2]]:
    """One syntactic near-ring per additive group certificate that the transitions preserve."""
    out = []
    for cert in find_substructure(add_magma, "group-in-semigroup"):
        if not is_delta_closed(s, cert.subset):
            continue
        sub = restrict_machine(s, cert.subset)
        out.append((cert, syntactic_nearring(sub, induced(add_magma, cert.subset), budget)))
    return out


@dataclass(frozen=True)
class Decomposition:
    psi: tuple[int, ...]
    alpha: tuple[int, ...]

    def to_json(self) -> dict:
        return {"psi": list(self.psi), "alpha": list(self.alpha)}


def additivity_decomposition(s: SemiAutomaton, add: Magma, x0=0) -> Decomposition:
    """Split delta(q, x) as psi(q) + alpha(x) with psi additive.

    psi(q) = delta(q, x0) and alpha(x) = delta(0, x). Raises NotAdditive with a
    witness when either the split or the additivity of psi fails.
    """
    if add.n != len(s.states):
        raise MalformedInput("add", "addition table size differs from the state count")
    _require_group(add)
    x0 = s.symbol(x0)
    A, n = add.op, add.n
    zero = identity_element(A)
    neg = [next(b for b in range(n) if A[a][b] == zero) for a in range(n)]
    psi = tuple(s.delta[q][x0] for q in range(n))
    alpha = tuple(s.delta[zero][x] for x in range(len(s.inputs)))
    for q, x in product(range(n), range(len(s.inputs))):
        if s.delta[q][x] != A[psi[q]][alpha[x]]:
            raise NotAdditive(f"delta({q},{x}) != psi({q}) + alpha({x})", Witness("split", (q, x)))
    for q, r in product(range(n), repeat=2):
        if psi[A[q][neg[r]]] != A[psi[q]][neg[psi[r]]]:
            raise NotAdditive(f"psi({q} - {r}) != psi({q}) - psi({r})", Witness("psi-additive", (q, r)))
    return Decomposition(psi, alpha)


def export_dot(s: SemiAutomaton) -> str:
    """Graphviz source with one node per state and one edge per (state, input)."""
    q = json.dumps
    lines = ["digraph automaton {", "  rankdir=LR;"]
    lines += [f"  {q(z)};" for z in s.states]
    for z, x in product(range(len(s.states)), range(len(s.inputs))):
        label = s.inputs[x]
        if isinstance(s, Automaton):
            label += "/" + s.outputs[s.lam[z][x]]
        lines.append(f"  {q(s.states[z])} -> {q(s.states[s.delta[z][x]])} [label={q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
