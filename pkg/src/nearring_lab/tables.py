"""Cayley tables of one-operation structures, classification and closed subsets."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_BUDGET = 2**20
BUDGET_ENV = "NEARRING_LAB_BUDGET"
EXHAUSTIVE_CUTOFF = 22

Table = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------- errors


class LabError(Exception):
    """Base class for every error raised by the library."""


class MalformedInput(LabError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message


class BudgetExceeded(LabError):
    def __init__(self, what: str, budget: int):
        super().__init__(f"{what} exceeds budget {budget}")
        self.what = what
        self.budget = budget


class NotClosed(LabError):
    def __init__(self, pair: tuple[int, int], product: int):
        super().__init__(f"subset not closed: {pair[0]}*{pair[1]} = {product}")
        self.witness = Witness("escape", (pair[0], pair[1], product))


class NotApplicable(LabError):
    """A check needs a constant (zero, identity, inverses) the structure lacks."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise MalformedInput(BUDGET_ENV, f"not an integer: {raw!r}") from None
        if value <= 0:
            raise MalformedInput(BUDGET_ENV, "budget must be positive")
        return value
    return DEFAULT_BUDGET


# ---------------------------------------------------------------- values


@dataclass(frozen=True)
class Witness:
    kind: str
    elements: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "elements": list(self.elements)}


def validate_table(table: Sequence[Sequence[int]], n: int, path: str) -> Table:
    if not isinstance(table, (list, tuple)) or len(table) != n:
        raise MalformedInput(path, f"expected {n} rows")
    rows = []
    for i, row in enumerate(table):
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise MalformedInput(f"{path}[{i}]", f"expected {n} entries")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedInput(f"{path}[{i}][{j}]", f"entry {v!r} is not an index below {n}")
        rows.append(tuple(row))
    return tuple(rows)


def validate_labels(labels: Sequence[str], path: str = "labels") -> tuple[str, ...]:
    if not isinstance(labels, (list, tuple)) or not labels:
        raise MalformedInput(path, "need at least one label")
    for i, lab in enumerate(labels):
        if not isinstance(lab, str):
            raise MalformedInput(f"{path}[{i}]", "labels must be strings")
    if len(set(labels)) != len(labels):
        dup = next(lab for lab in labels if labels.count(lab) > 1)
        raise MalformedInput(path, f"duplicate label {dup!r}")
    return tuple(labels)


@dataclass(frozen=True)
class Magma:
    """A finite carrier 0..n-1 with one total binary operation."""

    labels: tuple[str, ...]
    op: Table
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", validate_labels(self.labels))
        object.__setattr__(self, "op", validate_table(self.op, len(self.labels), "op"))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __call__(self, a: int, b: int) -> int:
        return self.op[a][b]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @classmethod
    def from_function(cls, labels: Sequence[str], fn, provenance: tuple = ()) -> "Magma":
        n = len(labels)
        return cls(tuple(labels), tuple(tuple(fn(a, b) for b in range(n)) for a in range(n)), provenance)

    @classmethod
    def from_labelled_rows(cls, labels: Sequence[str], rows: Sequence[Sequence[str]]) -> "Magma":
        pos = {lab: i for i, lab in enumerate(labels)}
        return cls(tuple(labels), tuple(tuple(pos[x] for x in row) for row in rows))

    def to_json(self) -> dict:
        doc = {"labels": list(self.labels), "op": [list(r) for r in self.op]}
        if self.provenance:
            doc["provenance"] = provenance_to_json(self.provenance)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Magma":
        if not isinstance(doc, dict):
            raise MalformedInput("", "expected a JSON object")
        for key in ("labels", "op"):
            if key not in doc:
                raise MalformedInput(key, "missing")
        labels = validate_labels(doc["labels"])
        return cls(labels, validate_table(doc["op"], len(labels), "op"),
                   provenance_from_json(doc.get("provenance")))


def provenance_to_json(prov: tuple) -> dict:
    family, *params = prov
    return {"family": family, "params": list(params)}


def provenance_from_json(doc) -> tuple:
    if not doc:
        return ()
    if not isinstance(doc, dict) or "family" not in doc:
        raise MalformedInput("provenance", "expected {family, params}")
    return (doc["family"], *_freeze(doc.get("params", [])))


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_jsonable)


def _jsonable(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"not serialisable: {type(obj).__name__}")


# ---------------------------------------------------------------- classification

KINDS = ("groupoid", "quasigroup", "semigroup", "monoid", "loop", "commutative-loop", "group", "abelian-group")


@dataclass(frozen=True)
class Classification:
    kind: str
    associative: bool
    commutative: bool
    identity: int | None
    latin_rows: bool
    latin_columns: bool
    inverses: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def quasigroup(self) -> bool:
        return self.latin_rows and self.latin_columns

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "associative": self.associative,
            "commutative": self.commutative,
            "identity": self.identity,
            "latin_rows": self.latin_rows,
            "latin_columns": self.latin_columns,
            "quasigroup": self.quasigroup,
            "inverses": self.inverses,
            "witnesses": {k: w.to_json() for k, w in sorted(self.witnesses.items())},
        }


def associativity_witness(op: Table, elements: Iterable[int] | None = None) -> Witness | None:
    els = list(range(len(op))) if elements is None else list(elements)
    for a in els:
        row_a = op[a]
        for b in els:
            ab = row_a[b]
            row_b = op[b]
            row_ab = op[ab]
            for c in els:
                if row_ab[c] != row_a[row_b[c]]:
                    return Witness("non-associative", (a, b, c))
    return None


def commutativity_witness(op: Table, elements: Iterable[int] | None = None) -> Witness | None:
    els = list(range(len(op))) if elements is None else list(elements)
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if op[a][b] != op[b][a]:
                return Witness("non-commutative", (a, b))
    return None


def identity_element(op: Table, elements: Iterable[int] | None = None) -> int | None:
    els = list(range(len(op))) if elements is None else list(elements)
    for e in els:
        if all(op[e][x] == x and op[x][e] == x for x in els):
            return e
    return None


def _repeat_witness(values: Sequence[int], line: int, kind: str) -> Witness | None:
    seen: dict[int, int] = {}
    for pos, v in enumerate(values):
        if v in seen:
            return Witness(kind, (line, seen[v], pos))
        seen[v] = pos
    return None


def classify(m: Magma) -> Classification:
    """Decide the standard structural flags of ``m`` by full scan."""
    op, n = m.op, m.n
    witnesses: dict[str, Witness] = {}

    assoc_w = associativity_witness(op)
    if assoc_w:
        witnesses["associative"] = assoc_w
    comm_w = commutativity_witness(op)
    if comm_w:
        witnesses["commutative"] = comm_w

    latin_rows = True
    for a in range(n):
        w = _repeat_witness(op[a], a, "row-repeat")
        if w:
            witnesses["latin_rows"] = w
            latin_rows = False
            break
    latin_cols = True
    for b in range(n):
        w = _repeat_witness([op[a][b] for a in range(n)], b, "column-repeat")
        if w:
            witnesses["latin_columns"] = w
            latin_cols = False
            break

    e = identity_element(op)
    inverses = False
    if e is None:
        witnesses["identity"] = Witness("no-identity", ())
    else:
        inverses = True
        for x in range(n):
            if not any(op[x][y] == e and op[y][x] == e for y in range(n)):
                witnesses["inverses"] = Witness("no-inverse", (x,))
                inverses = False
                break

    assoc, comm = assoc_w is None, comm_w is None
    quasi = latin_rows and latin_cols
    if assoc and e is not None and inverses:
        kind = "abelian-group" if comm else "group"
    elif quasi and e is not None:
        kind = "commutative-loop" if comm else "loop"
    elif assoc and e is not None:
        kind = "monoid"
    elif assoc:
        kind = "semigroup"
    elif quasi:
        kind = "quasigroup"
    else:
        kind = "groupoid"
    return Classification(kind, assoc, comm, e, latin_rows, latin_cols, inverses, witnesses)


def is_group_kind(kind: str) -> bool:
    return kind in ("group", "abelian-group")


def is_loop_kind(kind: str) -> bool:
    return kind in ("loop", "commutative-loop", "group", "abelian-group")


# ---------------------------------------------------------------- closure


def mask_of(subset: Iterable[int]) -> int:
    m = 0
    for x in subset:
        m |= 1 << x
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _extend(tables: Sequence[Table], elems: list[int], mask: int, done: int) -> int:
    """Close ``elems`` (mutated) under ``tables``; pairs among the first ``done`` are already handled."""
    i = done
    while i < len(elems):
        x = elems[i]
        for j in range(i + 1):
            y = elems[j]
            for t in tables:
                z = t[x][y]
                if not (mask >> z) & 1:
                    mask |= 1 << z
                    elems.append(z)
                z = t[y][x]
                if not (mask >> z) & 1:
                    mask |= 1 << z
                    elems.append(z)
        i += 1
    return mask


def close_under(tables: Sequence[Table], seed: Iterable[int]) -> tuple[int, ...]:
    elems: list[int] = []
    mask = 0
    for s in seed:
        if not (mask >> s) & 1:
            mask |= 1 << s
            elems.append(s)
    return members(_extend(tables, elems, mask, 0))


def closure(m: Magma, seed: Iterable[int]) -> tuple[int, ...]:
    """Smallest superset of ``seed`` closed under the operation, sorted."""
    seed = list(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    for s in seed:
        if not 0 <= s < m.n:
            raise ValueError(f"index {s} out of range")
    return close_under((m.op,), seed)


def is_closed(tables: Sequence[Table], subset: Iterable[int]) -> bool:
    s = list(subset)
    mask = mask_of(s)
    return all((mask >> t[a][b]) & 1 for t in tables for a in s for b in s)


@dataclass(frozen=True)
class SubsetFamily:
    subsets: tuple[tuple[int, ...], ...]
    complete: bool

    def __iter__(self):
        return iter(self.subsets)

    def __len__(self):
        return len(self.subsets)

    def __contains__(self, item):
        return tuple(sorted(item)) in self.subsets


def closed_subsets_of(tables: Sequence[Table], n: int, budget: int | None = None,
                      exhaustive: bool | None = None) -> SubsetFamily:
    """Nonempty subsets closed under every table in ``tables``.

    Exhaustive mode grows the lattice of closed sets one generator at a time,
    which reaches every closed set. Otherwise closures of generator sets of
    size at most three are returned and the family is flagged incomplete.
    """
    budget = default_budget() if budget is None else budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_CUTOFF
    visits = 0
    found: dict[int, tuple[int, ...]] = {}

    if exhaustive:
        stack: list[tuple[list[int], int]] = []
        for x in range(n):
            visits += 1
            if visits > budget:
                raise BudgetExceeded("closed-subset enumeration", budget)
            elems = [x]
            mask = _extend(tables, elems, 1 << x, 0)
            if mask not in found:
                found[mask] = ()
                stack.append((elems, mask))
        while stack:
            elems, mask = stack.pop()
            for x in range(n):
                if (mask >> x) & 1:
                    continue
                visits += 1
                if visits > budget:
                    raise BudgetExceeded("closed-subset enumeration", budget)
                grown = list(elems)
                grown.append(x)
                new_mask = _extend(tables, grown, mask | (1 << x), len(elems))
                if new_mask not in found:
                    found[new_mask] = ()
                    stack.append((grown, new_mask))
        complete = True
    else:
        total = sum(_choose(n, k) for k in (1, 2, 3))
        if total > budget:
            raise BudgetExceeded(f"{total} generator sets", budget)
        for k in (1, 2, 3):
            for gens in itertools.combinations(range(n), k):
                elems = list(gens)
                mask = _extend(tables, elems, mask_of(gens), 0)
                found.setdefault(mask, ())
        complete = False
    subsets = sorted(members(mk) for mk in found)
    return SubsetFamily(tuple(subsets), complete)


def _choose(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def closed_subsets(m: Magma, budget: int | None = None, exhaustive: bool | None = None) -> SubsetFamily:
    return closed_subsets_of((m.op,), m.n, budget, exhaustive)


def restrict_table(table: Table, subset: Sequence[int]) -> Table:
    pos = {x: i for i, x in enumerate(subset)}
    rows = []
    for a in subset:
        row = []
        for b in subset:
            z = table[a][b]
            if z not in pos:
                raise NotClosed((a, b), z)
            row.append(pos[z])
        rows.append(tuple(row))
    return tuple(rows)


def induced(m: Magma, subset: Iterable[int]) -> Magma:
    """Restriction of ``m`` to a closed subset, labels inherited."""
    sub = sorted(set(subset))
    if not sub:
        raise ValueError("subset must be nonempty")
    return Magma(tuple(m.labels[i] for i in sub), restrict_table(m.op, sub))
