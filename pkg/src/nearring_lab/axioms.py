"""Axiom systems, named identities and structural predicates, decided by full scan."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .construct import Algebra2
from .tables import Magma, NotClosed, Table, classify, is_closed, restrict_table


@dataclass(frozen=True)
class Verdict:
    id: str
    passed: bool
    witness: tuple[int, ...] | None = None
    applicable: bool = True
    conjuncts: tuple["Verdict", ...] = ()
    detail: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        doc = {"id": self.id, "pass": self.passed,
               "witness": list(self.witness) if self.witness is not None else None,
               "applicable": self.applicable}
        if self.conjuncts:
            doc["conjuncts"] = [c.to_json() for c in self.conjuncts]
        if self.detail:
            doc["detail"] = self.detail
        return doc

    def conjunct(self, cid: str) -> "Verdict":
        return next(c for c in self.conjuncts if c.id == cid)


def _ok(vid: str, **detail) -> Verdict:
    return Verdict(vid, True, None, True, (), detail)


def _fail(vid: str, witness: Sequence[int] | None, **detail) -> Verdict:
    return Verdict(vid, False, tuple(witness) if witness is not None else None, True, (), detail)


def _na(vid: str, reason: str) -> Verdict:
    return Verdict(vid, False, None, False, (), {"reason": reason})


def _all_of(vid: str, parts: Sequence[Verdict], **detail) -> Verdict:
    applicable = all(p.applicable for p in parts)
    failing = next((p for p in parts if not p.passed), None)
    return Verdict(vid, failing is None, failing.witness if failing else None, applicable, tuple(parts), detail)


# ---------------------------------------------------------------- conjuncts


def _structure_verdict(vid: str, table: Table, accept: Sequence[str]) -> Verdict:
    c = classify(Magma(tuple(str(i) for i in range(len(table))), table))
    if c.kind in accept:
        return _ok(vid, kind=c.kind)
    w = None
    for key in ("associative", "identity", "inverses", "latin_rows", "latin_columns", "commutative"):
        if key in c.witnesses:
            w = c.witnesses[key].elements
            break
    return _fail(vid, w, kind=c.kind)


def _assoc(vid: str, t: Table) -> Verdict:
    n = len(t)
    for a, b, c in product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return _fail(vid, (a, b, c))
    return _ok(vid)


def _right_distributive(alg: Algebra2) -> Verdict:
    A, M, n = alg.add, alg.mul, alg.n
    for a, b, c in product(range(n), repeat=3):
        if M[A[a][b]][c] != A[M[a][c]][M[b][c]]:
            return _fail("right-distributive", (a, b, c))
    return _ok("right-distributive")


def _left_distributive(alg: Algebra2) -> Verdict:
    A, M, n = alg.add, alg.mul, alg.n
    for a, b, c in product(range(n), repeat=3):
        if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
            return _fail("left-distributive", (a, b, c))
    return _ok("left-distributive")


def _commutative(vid: str, t: Table) -> Verdict:
    n = len(t)
    for a in range(n):
        for b in range(a + 1, n):
            if t[a][b] != t[b][a]:
                return _fail(vid, (a, b))
    return _ok(vid)


def _nonzero_group(alg: Algebra2) -> Verdict:
    vid = "nonzero-mul-group"
    if alg.zero is None:
        return _na(vid, "no additive identity")
    rest = [x for x in range(alg.n) if x != alg.zero]
    if not rest:
        return _fail(vid, (), reason="no nonzero elements")
    try:
        sub = restrict_table(alg.mul, rest)
    except NotClosed as exc:
        return _fail(vid, exc.witness.elements)
    v = _structure_verdict(vid, sub, ("group", "abelian-group"))
    if v.passed:
        return v
    w = tuple(rest[i] for i in v.witness) if v.witness else None
    return _fail(vid, w, **v.detail)


def _commutative_monoid(alg: Algebra2) -> Verdict:
    w = commutativity_fails(alg.add)
    if w:
        return _fail("add-commutative-monoid", w)
    return _structure_verdict("add-commutative-monoid", alg.add, ("monoid", "group", "abelian-group"))


def commutativity_fails(t: Table) -> tuple[int, int] | None:
    v = _commutative("c", t)
    return None if v.passed else v.witness


# ---------------------------------------------------------------- seminear pseudo ring axioms


def _snp_parts(alg: Algebra2) -> list[Verdict]:
    A, M, n = alg.add, alg.mul, alg.n
    parts = [_ok("snp-a-closure"), _ok("snp-f-closure")]
    diag = {A[p][p] for p in range(n)}
    e = None
    if len(diag) == 1:
        cand = diag.pop()
        if all(A[p][cand] == p for p in range(n)):
            e = cand
    if e is None:
        bad = next((p for p in range(n) if A[p][p] != A[0][0]), None)
        parts.append(_fail("snp-bc-self-difference", (bad,) if bad is not None else (0,)))
    else:
        parts.append(_ok("snp-bc-self-difference", identity=e))
    noncomm = next(((p, q) for p, q in product(range(n), repeat=2) if A[p][q] != A[q][p]), None)
    parts.append(_ok("snp-d", witness=noncomm) if noncomm else _fail("snp-d", None))
    nonassoc = next(((p, q, r) for p, q, r in product(range(n), repeat=3)
                     if A[A[p][q]][r] != A[p][A[q][r]]), None)
    parts.append(_ok("snp-e", witness=nonassoc) if nonassoc else _fail("snp-e", None))
    rest = [p for p in range(n) if p != e]
    mdiag = {M[p][p] for p in rest}
    e1 = mdiag.pop() if len(mdiag) == 1 else None
    if e1 is not None and all(M[p][e1] == p for p in range(n)):
        parts.append(_ok("snp-g-self-quotient", identity=e1))
    else:
        parts.append(_fail("snp-g-self-quotient", None))
    mnoncomm = next(((p, q) for p, q in product(range(n), repeat=2) if M[p][q] != M[q][p]), None)
    parts.append(_ok("snp-h", witness=mnoncomm) if mnoncomm else _fail("snp-h", None))
    mnonassoc = next(((p, q, r) for p, q, r in product(range(n), repeat=3)
                      if M[M[p][q]][r] != M[p][M[q][r]]), None)
    parts.append(_ok("snp-i", witness=mnonassoc) if mnonassoc else _fail("snp-i", None))
    rd = _right_distributive(alg)
    parts.append(Verdict("snp-j", rd.passed, rd.witness))
    return parts


SYSTEMS = (
    "right-near-ring", "left-near-ring", "seminear-ring", "near-field", "ring", "field",
    "semiring", "loop-near-ring", "na-near-ring", "na-seminear-ring", "snp-ring",
)


def check_system(alg: Algebra2, system: str) -> Verdict:
    """Decide an axiom system; every conjunct is reported with its own witness."""
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    if system == "snp-ring":
        return _all_of(system, _snp_parts(alg))
    group = lambda: _structure_verdict("add-group", alg.add, ("group", "abelian-group"))  # noqa: E731
    parts: list[Verdict] = []
    if system in ("right-near-ring", "left-near-ring", "near-field", "na-near-ring"):
        parts.append(group())
    elif system in ("seminear-ring", "na-seminear-ring"):
        parts.append(_structure_verdict("add-semigroup", alg.add,
                                        ("semigroup", "monoid", "group", "abelian-group")))
    elif system in ("ring", "field"):
        parts.append(_structure_verdict("add-abelian-group", alg.add, ("abelian-group",)))
    elif system == "semiring":
        parts.append(_commutative_monoid(alg))
    elif system == "loop-near-ring":
        parts.append(_structure_verdict("add-loop", alg.add,
                                        ("loop", "commutative-loop", "group", "abelian-group")))
    if system not in ("na-near-ring", "na-seminear-ring"):
        parts.append(_assoc("mul-associative", alg.mul))
    if system == "left-near-ring":
        parts.append(_left_distributive(alg))
    else:
        parts.append(_right_distributive(alg))
    if system in ("ring", "field", "semiring"):
        parts.append(_left_distributive(alg))
    if system == "field":
        parts.append(_commutative("mul-commutative", alg.mul))
    if system in ("near-field", "field"):
        parts.append(_nonzero_group(alg))
    return _all_of(system, parts)


# ---------------------------------------------------------------- identities

IDENTITIES = (
    "moufang", "moufang1", "moufang2", "moufang3", "bol", "bruck", "left-alt", "right-alt",
    "alternative", "flexible", "wip", "left-perm", "right-perm", "medial", "lsd", "rsd",
    "boolean", "p-near-ring", "semialt",
)

# Each equation maps an assignment to (left, right); products are left-associated unless bracketed.
_EQUATIONS = {
    "moufang1": (3, lambda t, x, y, z: (t[t[x][y]][t[z][x]], t[t[x][t[y][z]]][x])),
    "moufang2": (3, lambda t, x, y, z: (t[t[t[x][y]][z]][y], t[x][t[y][t[z][y]]])),
    "moufang3": (3, lambda t, x, y, z: (t[x][t[y][t[x][z]]], t[t[t[x][y]][x]][z])),
    "bol": (3, lambda t, x, y, z: (t[t[t[x][y]][z]][y], t[x][t[t[y][z]][y]])),
    "bruck-law": (3, lambda t, x, y, z: (t[t[x][t[y][x]]][z], t[x][t[y][t[x][z]]])),
    "left-alt": (2, lambda t, x, y: (t[t[x][x]][y], t[x][t[x][y]])),
    "right-alt": (2, lambda t, x, y: (t[t[x][y]][y], t[x][t[y][y]])),
    "flexible": (2, lambda t, x, y: (t[t[x][y]][x], t[x][t[y][x]])),
    "left-perm": (3, lambda t, a, b, c: (t[t[a][b]][c], t[t[b][a]][c])),
    "right-perm": (3, lambda t, a, b, c: (t[t[a][b]][c], t[t[a][c]][b])),
    "medial": (4, lambda t, a, b, c, d: (t[t[t[a][b]][c]][d], t[t[t[a][c]][b]][d])),
    "lsd": (3, lambda t, a, b, c: (t[t[a][b]][c], t[t[t[a][b]][a]][c])),
    "rsd": (3, lambda t, a, b, c: (t[t[a][b]][c], t[t[t[a][c]][b]][c])),
    "boolean": (1, lambda t, x: (t[x][x], x)),
}


def _scan(vid: str, t: Table, arity: int, eq) -> Verdict:
    n = len(t)
    for args in product(range(n), repeat=arity):
        lhs, rhs = eq(t, *args)
        if lhs != rhs:
            return _fail(vid, args)
    return _ok(vid)


def _mul_table(target: Magma | Algebra2) -> Table:
    return target.op if isinstance(target, Magma) else target.mul


def _inverse_map(t: Table, e: int) -> dict[int, int] | None:
    n = len(t)
    inv = {}
    for x in range(n):
        y = next((y for y in range(n) if t[x][y] == e and t[y][x] == e), None)
        if y is None:
            return None
        inv[x] = y
    return inv


def check_identity(target: Magma | Algebra2, identity: str, p: int | None = None) -> Verdict:
    """Scan a named identity over every assignment of the multiplication table."""
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}")
    t = _mul_table(target)
    n = len(t)
    if identity in _EQUATIONS:
        arity, eq = _EQUATIONS[identity]
        return _scan(identity, t, arity, eq)
    if identity == "moufang":
        forms = [check_identity(target, f"moufang{i}") for i in (1, 2, 3)]
        ok = any(f.passed for f in forms)
        return Verdict("moufang", ok, None if ok else forms[0].witness, True, tuple(forms))
    if identity == "alternative":
        return _all_of("alternative", [check_identity(target, "left-alt"), check_identity(target, "right-alt")])
    from .tables import identity_element

    if identity in ("wip", "bruck", "semialt"):
        e = identity_element(t)
        if e is None:
            return _na(identity, "multiplication has no identity element")
        if identity == "wip":
            for x, y, z in product(range(n), repeat=3):
                if t[t[x][y]][z] == e and t[x][t[y][z]] != e:
                    return _fail("wip", (x, y, z))
            return _ok("wip")
        if identity == "bruck":
            inv = _inverse_map(t, e)
            if inv is None:
                return _na("bruck", "some element lacks a two-sided inverse")
            law = check_identity_eq("bruck-law", t)
            if not law.passed:
                return _fail("bruck", law.witness, part="law")
            for x, y in product(range(n), repeat=2):
                if inv[t[x][y]] != t[inv[x]][inv[y]]:
                    return _fail("bruck", (x, y), part="inverse")
            return _ok("bruck")
        cls = classify(Magma(tuple(str(i) for i in range(n)), t))
        if not cls.quasigroup:
            return _na("semialt", "associator is only defined for loops")

        def associator(x, y, z):
            lhs, base = t[t[x][y]][z], t[x][t[y][z]]
            return next(w for w in range(n) if t[base][w] == lhs)

        for x, y, z in product(range(n), repeat=3):
            if associator(x, y, z) != associator(y, z, x):
                return _fail("semialt", (x, y, z))
        return _ok("semialt")
    # p-near-ring
    if not isinstance(target, Algebra2):
        return _na("p-near-ring", "needs an algebra with addition")
    if p is None or p < 2:
        raise ValueError("p-near-ring needs a prime p")
    if target.zero is None:
        return _na("p-near-ring", "no additive identity")
    for x in range(n):
        if target.power(x, p) != x:
            return _fail("p-near-ring", (x,), part="power")
        acc = x
        for _ in range(p - 1):
            acc = target.add[acc][x]
        if acc != target.zero:
            return _fail("p-near-ring", (x,), part="multiple")
    return _ok("p-near-ring", p=p)


def check_identity_eq(name: str, t: Table) -> Verdict:
    arity, eq = _EQUATIONS[name]
    return _scan(name, t, arity, eq)


# ---------------------------------------------------------------- predicates

PREDICATES = (
    "ifp", "strong-ifp", "left-bipotent", "s-a-in-Na", "regular", "equiprime",
    "weakly-divisible", "simple", "left-ore", "invariant-sub", "normal-sub",
)


def is_subnearring(alg: Algebra2, subset: Iterable[int]) -> Verdict:
    s = sorted(set(subset))
    if not s:
        return _fail("subnear-ring", ())
    for t in (alg.add, alg.mul):
        for a in s:
            for b in s:
                if t[a][b] not in s:
                    return _fail("subnear-ring", (a, b))
    if alg.zero is None or alg.zero not in s:
        return _fail("subnear-ring", (), reason="missing additive identity")
    for a in s:
        if alg.neg(a) is None or alg.neg(a) not in s:
            return _fail("subnear-ring", (a,), reason="missing additive inverse")
    return _ok("subnear-ring")


def _ifp_scan(alg: Algebra2, inside) -> Verdict:
    M, n = alg.mul, alg.n
    orders = {"left-first": None, "right-first": None}
    for a, b in product(range(n), repeat=2):
        if not inside(M[a][b]):
            continue
        for m in range(n):
            if orders["left-first"] is None and not inside(M[M[a][m]][b]):
                orders["left-first"] = (a, b, m)
            if orders["right-first"] is None and not inside(M[a][M[m][b]]):
                orders["right-first"] = (a, b, m)
    detail = {k: (v is None) for k, v in orders.items()}
    w = orders["left-first"] or orders["right-first"]
    return Verdict("ifp", w is None, w, True, (), detail)


def check_predicate(alg: Algebra2, predicate: str, subset: Iterable[int] | None = None,
                    element: int | None = None, others: Iterable[int] | None = None) -> Verdict:
    """Decide a structural predicate.

    ``subset`` supplies S for ``left-ore`` and M for ``invariant-sub`` and
    ``normal-sub``; ``element`` picks the element for ``invariant-sub``;
    ``others`` restricts T for ``normal-sub``.
    """
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    A, M, n = alg.add, alg.mul, alg.n
    z = alg.zero

    if predicate == "ifp":
        if z is None:
            return _na("ifp", "no additive identity")
        return _ifp_scan(alg, lambda x: x == z)

    if predicate == "strong-ifp":
        from .ideals import enumerate_ideals

        ideals = enumerate_ideals(alg, "ideal")
        for ideal in ideals:
            s = set(ideal)
            v = _ifp_scan(alg, lambda x: x in s)
            if not v.passed:
                return Verdict("strong-ifp", False, v.witness, True, (), {"ideal": list(ideal), **v.detail})
        return _ok("strong-ifp", ideals=len(ideals))

    if predicate == "left-bipotent":
        for a in range(n):
            aa = M[a][a]
            if {M[m][a] for m in range(n)} != {M[m][aa] for m in range(n)}:
                return _fail("left-bipotent", (a,))
        return _ok("left-bipotent")

    if predicate == "s-a-in-Na":
        for a in range(n):
            if all(M[m][a] != a for m in range(n)):
                return _fail("s-a-in-Na", (a,))
        return _ok("s-a-in-Na")

    if predicate == "regular":
        lf = next((a for a in range(n) if all(M[M[a][x]][a] != a for x in range(n))), None)
        rf = next((a for a in range(n) if all(M[a][M[x][a]] != a for x in range(n))), None)
        w = lf if lf is not None else rf
        return Verdict("regular", w is None, (w,) if w is not None else None, True, (),
                       {"left-first": lf is None, "right-first": rf is None})

    if predicate == "equiprime":
        if z is None:
            return _na("equiprime", "no additive identity")
        for a in range(n):
            if a == z:
                continue
            for x in range(n):
                for y in range(n):
                    if x != y and all(M[M[a][r]][x] == M[M[a][r]][y] for r in range(n)):
                        return _fail("equiprime", (a, x, y))
        return _ok("equiprime")

    if predicate == "weakly-divisible":
        for x, y in product(range(n), repeat=2):
            if not any(M[x][w] == y or M[y][w] == x for w in range(n)):
                return _fail("weakly-divisible", (x, y))
        return _ok("weakly-divisible")

    if predicate == "simple":
        from .ideals import enumerate_ideals

        for ideal in enumerate_ideals(alg, "ideal"):
            if 1 < len(ideal) < n:
                return _fail("simple", ideal)
        return _ok("simple")

    if subset is None:
        raise ValueError(f"{predicate} needs a subset argument")
    S = sorted(set(subset))
    Sset = set(S)

    if predicate == "left-ore":
        if not is_closed((M,), S):
            return _na("left-ore", "subset is not closed under multiplication")
        for s, m in product(S, range(n)):
            if not any(M[m][s1] == M[s][m1] for s1 in S for m1 in range(n)):
                return _fail("left-ore", (s, m))
        return _ok("left-ore")

    sub = is_subnearring(alg, S)
    if not sub.passed:
        return Verdict(predicate, False, sub.witness, True, (sub,), {"reason": "not a subnear-ring"})

    if predicate == "invariant-sub":
        if element is not None:
            if element in Sset:
                return _na("invariant-sub", "element must lie outside the subnear-ring")
            for m in S:
                if M[element][m] not in Sset or M[m][element] not in Sset:
                    return _fail("invariant-sub", (element, m))
            return _ok("invariant-sub", mode="element")
        for m in S:
            for x in range(n):
                if M[m][x] not in Sset or M[x][m] not in Sset:
                    return _fail("invariant-sub", (m, x))
        return _ok("invariant-sub", mode="two-sided")

    # normal-sub
    T = list(range(n)) if others is None else sorted(set(others))
    if others is None:
        for t in T:
            if {M[t][s] for s in S} != {M[s][t] for s in S}:
                return _fail("normal-sub", (t,))
        return _ok("normal-sub", mode="sets")
    for t in T:
        for s in S:
            if M[t][s] != M[s][t]:
                return _fail("normal-sub", (t, s))
    return _ok("normal-sub", mode="elementwise")
