"""Substructures of finite (semi)near-rings: ideals and their relatives,
generated ideals, radicals, normal sequences, Smarandache substructure
search and predicates relativised to a certifying substructure."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .axioms import IDENTITIES, Verdict, _all_of, _fail, _na, _ok, check_identity, check_system
from .construct import Algebra2
from .tables import (
    LabError,
    Magma,
    MalformedInput,
    NotApplicable,
    SubsetFamily,
    classify,
    close_under,
    closed_subsets_of,
    is_group_kind,
    is_loop_kind,
    restrict_table,
)

IDEAL_KINDS = (
    "subnearring", "n-subgroup", "left-ideal", "right-ideal", "ideal", "s-ideal",
    "modular-left-ideal", "quasi-ideal", "semigroup-ideal",
)


class NoCertificate(LabError):
    """No substructure of the requested kind exists, so the relative property fails vacuously."""


# ---------------------------------------------------------------- additive helpers


@lru_cache(maxsize=64)
def _add_classification(alg: Algebra2):
    return classify(alg.add_magma())


def _add_kind(alg: Algebra2) -> str:
    return _add_classification(alg).kind


def _require_group(alg: Algebra2) -> None:
    if not is_group_kind(_add_kind(alg)):
        raise NotApplicable("addition must form a group")


@lru_cache(maxsize=64)
def _right_negs(alg: Algebra2) -> tuple[int | None, ...]:
    return tuple(alg.right_neg(y) for y in range(alg.n))


def _minus(alg: Algebra2, x: int, y: int) -> int:
    """``x - y`` with ``-y`` the right inverse of ``y`` (two-sided when addition is a group)."""
    r = _right_negs(alg)[y]
    if r is None:
        raise NotApplicable(f"{alg.labels[y]} has no right additive inverse")
    return alg.add[x][r]


def _is_additive_sub(alg: Algebra2, sub: Sequence[int]) -> bool:
    """Closed subset containing zero whose induced addition is a loop (a group when add is)."""
    if alg.zero not in sub:
        return False
    try:
        t = restrict_table(alg.add, sub)
    except LabError:
        return False
    return is_loop_kind(classify(Magma(tuple(map(str, sub)), t)).kind)


def _is_normal(alg: Algebra2, sub: Sequence[int]) -> bool:
    A, n = alg.add, alg.n
    s = set(sub)
    if associative_add(alg):
        negs = _negations(alg)
        return all(A[A[g][i]][negs[g]] in s for g in range(n) for i in sub)
    # normal subloop: x+S = S+x, (x+y)+S = x+(y+S), S+(x+y) = (S+x)+y
    for x in range(n):
        if {A[x][i] for i in sub} != {A[i][x] for i in sub}:
            return False
        for y in range(n):
            xy = A[x][y]
            if {A[xy][i] for i in sub} != {A[x][A[y][i]] for i in sub}:
                return False
            if {A[i][xy] for i in sub} != {A[A[i][x]][y] for i in sub}:
                return False
    return True


def associative_add(alg: Algebra2) -> bool:
    return _add_classification(alg).associative


def additive_substructures(alg: Algebra2, budget: int | None = None,
                           exhaustive: bool | None = None) -> SubsetFamily:
    """Subgroups (subloops when addition is only a loop) of the additive structure."""
    kind = _add_kind(alg)
    if not is_loop_kind(kind):
        raise NotApplicable("addition must form a loop or a group")
    fam = closed_subsets_of((alg.add,), alg.n, budget, exhaustive)
    if is_group_kind(kind):
        return fam
    return SubsetFamily(tuple(s for s in fam if _is_additive_sub(alg, s)), fam.complete)


# ---------------------------------------------------------------- membership tests


def _right_condition(alg: Algebra2, s: set[int], sub: Sequence[int], right: Iterable[int]) -> bool:
    M = alg.mul
    return all(M[i][x] in s for i in sub for x in right)


def _negations(alg: Algebra2) -> tuple[int, ...]:
    negs = _right_negs(alg)
    if None in negs:
        y = negs.index(None)
        raise NotApplicable(f"{alg.labels[y]} has no right additive inverse")
    return negs


def _left_condition(alg: Algebra2, s: set[int], sub: Sequence[int], outer: Sequence[int]) -> bool:
    A, M = alg.add, alg.mul
    negs = _negations(alg)
    for a in outer:
        row = M[a]
        for b in outer:
            minus_ab = negs[row[b]]
            Ab = A[b]
            for i in sub:
                if A[row[Ab[i]]][minus_ab] not in s:
                    return False
    return True


def _subnormal(alg: Algebra2, sub: Sequence[int], groups: Sequence[Sequence[int]]) -> bool:
    """Normal in N, or normal in some normal subgroup H of N containing it."""
    if _is_normal(alg, sub):
        return True
    s = set(sub)
    for h in groups:
        hs = set(h)
        if s < hs and _is_normal(alg, h):
            inner = alg.induced(h)
            if _is_normal(inner, [h.index(x) for x in sub]):
                return True
    return False


def is_ideal(alg: Algebra2, subset: Iterable[int], kind: str = "ideal",
             relative_to: Iterable[int] | None = None,
             groups: Sequence[Sequence[int]] | None = None) -> bool:
    """Membership test for one ideal kind.

    ``relative_to`` is the set X for ``s-ideal``; ``groups`` lists the
    additive subgroups used to certify subnormality for ``quasi-ideal``.
    """
    if kind not in IDEAL_KINDS:
        raise ValueError(f"unknown ideal kind {kind!r}")
    sub = sorted(set(subset))
    s = set(sub)
    if not sub:
        return False
    if kind == "semigroup-ideal":
        M = alg.mul
        return all(M[a][x] in s and M[x][a] in s for a in sub for x in range(alg.n))
    if not _is_additive_sub(alg, sub):
        return False
    everything = range(alg.n)
    if kind == "subnearring":
        return _right_condition(alg, s, sub, sub)
    if kind == "n-subgroup":
        return all(alg.mul[x][i] in s for x in everything for i in sub)
    if kind == "quasi-ideal":
        if groups is None:
            groups = list(additive_substructures(alg, exhaustive=True))
        if not _subnormal(alg, sub, groups):
            return False
        ns = {_minus(alg, alg.mul[a][alg.add[b][i]], alg.mul[a][b])
              for a in everything for b in everything for i in sub}
        sn = {alg.mul[i][x] for i in sub for x in everything}
        return sn <= ns <= s
    if not _is_normal(alg, sub):
        return False
    if kind == "s-ideal":
        if relative_to is None:
            raise ValueError("s-ideal needs the relative subset X")
        X = sorted(set(relative_to))
        return _right_condition(alg, s, sub, X) and _left_condition(alg, s, sub, X)
    if kind == "right-ideal":
        return _right_condition(alg, s, sub, everything)
    if kind == "ideal" and not _right_condition(alg, s, sub, everything):
        return False
    if not _left_condition(alg, s, sub, list(everything)):
        return False
    return kind != "modular-left-ideal" or modular_unit(alg, sub) is not None


def modular_unit(alg: Algebra2, subset: Iterable[int]) -> int | None:
    """Some e with n - ne in the subset for all n, or None."""
    s = set(subset)
    for e in range(alg.n):
        if all(_minus(alg, x, alg.mul[x][e]) in s for x in range(alg.n)):
            return e
    return None


@dataclass(frozen=True)
class IdealList:
    ideals: tuple[tuple[int, ...], ...]
    complete: bool
    kind: str

    def __iter__(self):
        return iter(self.ideals)

    def __len__(self):
        return len(self.ideals)

    def __contains__(self, item):
        return tuple(sorted(item)) in self.ideals

    def proper_nontrivial(self, alg: Algebra2) -> list[tuple[int, ...]]:
        return [i for i in self.ideals if 1 < len(i) < alg.n]

    def to_json(self) -> dict:
        return {"kind": self.kind, "complete": self.complete, "ideals": [list(i) for i in self.ideals]}


def enumerate_ideals(alg: Algebra2, kind: str = "ideal", budget: int | None = None,
                     exhaustive: bool | None = None, relative_to: Iterable[int] | None = None) -> IdealList:
    """All substructures of ``kind``, sorted; additive subgroups first, then filtered."""
    if kind not in IDEAL_KINDS:
        raise ValueError(f"unknown ideal kind {kind!r}")
    if kind == "semigroup-ideal":
        fam = closed_subsets_of((alg.mul,), alg.n, budget, exhaustive)
        keep = tuple(s for s in fam if is_ideal(alg, s, kind))
        return IdealList(keep, fam.complete, kind)
    fam = additive_substructures(alg, budget, exhaustive)
    groups = list(fam) if kind == "quasi-ideal" else None
    if kind in ("left-ideal", "ideal", "modular-left-ideal", "quasi-ideal"):
        # surface missing inverses as not-applicable rather than silently dropping everything
        for x in range(alg.n):
            if alg.right_neg(x) is None:
                raise NotApplicable(f"{alg.labels[x]} has no right additive inverse")
    keep = tuple(s for s in fam if is_ideal(alg, s, kind, relative_to, groups))
    return IdealList(keep, fam.complete, kind)


def semigroup_ideals(m: Magma, budget: int | None = None, exhaustive: bool | None = None) -> IdealList:
    """Two-sided ideals of a one-operation structure."""
    fam = closed_subsets_of((m.op,), m.n, budget, exhaustive)
    keep = []
    for s in fam:
        ss = set(s)
        if all(m.op[a][x] in ss and m.op[x][a] in ss for a in s for x in range(m.n)):
            keep.append(s)
    return IdealList(tuple(keep), fam.complete, "semigroup-ideal")


# ---------------------------------------------------------------- generated ideals


def _generate(alg: Algebra2, seed: Iterable[int], right: bool, left: bool) -> tuple[int, ...]:
    _require_group(alg)
    A, M, n = alg.add, alg.mul, alg.n
    neg = [alg.neg(x) for x in range(n)]
    cur = set(seed) | {alg.zero}
    while True:
        cur = set(close_under((A,), cur))
        new = set()
        for i in cur:
            new.add(neg[i])
            for g in range(n):
                new.add(A[A[g][i]][neg[g]])
                if right:
                    new.add(M[i][g])
                if left:
                    row = M[g]
                    for b in range(n):
                        new.add(A[row[A[b][i]]][neg[row[b]]])
        if new <= cur:
            return tuple(sorted(cur))
        cur |= new


def generated_right_ideal(alg: Algebra2, seed: Iterable[int]) -> tuple[int, ...]:
    """Least right ideal containing ``seed``."""
    return _generate(alg, seed, right=True, left=False)


def generated_left_ideal(alg: Algebra2, seed: Iterable[int]) -> tuple[int, ...]:
    return _generate(alg, seed, right=False, left=True)


def generated_ideal(alg: Algebra2, seed: Iterable[int]) -> tuple[int, ...]:
    return _generate(alg, seed, right=True, left=True)


def ideal_sum(alg: Algebra2, ideals: Iterable[Iterable[int]]) -> tuple[int, ...]:
    """Subgroup of (N, +) generated by the union of the given ideals."""
    _require_group(alg)
    union = {alg.zero}
    for i in ideals:
        union |= set(i)
    neg = [alg.neg(x) for x in range(alg.n)]
    cur = set(close_under((alg.add,), union))
    while True:
        more = {neg[x] for x in cur} - cur
        if not more:
            return tuple(sorted(cur))
        cur = set(close_under((alg.add,), cur | more))


def annihilator(alg: Algebra2, x: Iterable[int], y: Iterable[int]) -> tuple[int, ...]:
    """(X : Y) = {n : nY is contained in X}."""
    xs, ys = set(x), list(y)
    return tuple(n for n in range(alg.n) if all(alg.mul[n][b] in xs for b in ys))


def product_set(alg: Algebra2, a: Iterable[int], b: Iterable[int]) -> set[int]:
    bl = list(b)
    return {alg.mul[x][y] for x in a for y in bl}


# ---------------------------------------------------------------- n-ideal near-rings


def n_ideal_check(alg: Algebra2, n: int) -> Verdict:
    """Every choice of n distinct proper nontrivial right ideals and n distinct
    outside elements X_k generates the same right ideal from X_k and the chosen ideals."""
    vid = f"{n}-ideal"
    if n < 1:
        raise ValueError("n must be positive")
    rights = enumerate_ideals(alg, "right-ideal").proper_nontrivial(alg)
    if len(rights) < n:
        return _na(vid, f"only {len(rights)} proper nontrivial right ideals")
    for chosen in combinations(rights, n):
        union = set().union(*map(set, chosen))
        outside = [x for x in range(alg.n) if x not in union]
        if n == 1 or len(outside) < n:
            continue
        seen: dict[tuple[int, ...], int] = {}
        for x in outside:
            g = generated_right_ideal(alg, union | {x})
            if seen and g not in seen:
                other = next(iter(seen.values()))
                return _fail(vid, (other, x), ideals=[list(c) for c in chosen])
            seen.setdefault(g, x)
    return _ok(vid, right_ideals=len(rights))


# ---------------------------------------------------------------- ideal properties

IDEAL_PROPERTIES = ("prime", "semiprime", "modular", "right-quasi-reflexive", "direct-summand",
                    "minimal", "maximal")


def classify_ideal(alg: Algebra2, ideal: Iterable[int], prop: str,
                   ideals: Sequence[Sequence[int]] | None = None) -> Verdict:
    """Decide a property of an ideal by quantifying over the complete ideal list."""
    if prop not in IDEAL_PROPERTIES:
        raise ValueError(f"unknown ideal property {prop!r}")
    P = tuple(sorted(set(ideal)))
    ps = set(P)
    if ideals is None:
        lst = enumerate_ideals(alg, "ideal")
        if not lst.complete:
            raise NotApplicable("ideal list is incomplete")
        ideals = list(lst)
    ideals = [tuple(i) for i in ideals]

    if prop == "prime":
        if len(P) == alg.n:
            return _fail(prop, None, reason="the whole carrier is excluded")
        for i, j in product(ideals, repeat=2):
            if product_set(alg, i, j) <= ps and not (set(i) <= ps or set(j) <= ps):
                return Verdict(prop, False, None, True, (), {"ideals": [list(i), list(j)]})
        return _ok(prop)
    if prop == "semiprime":
        for i in ideals:
            if product_set(alg, i, i) <= ps and not set(i) <= ps:
                return Verdict(prop, False, None, True, (), {"ideal": list(i)})
        return _ok(prop)
    if prop == "modular":
        e = modular_unit(alg, P)
        return _ok(prop, unit=e) if e is not None else _fail(prop, None)
    if prop == "right-quasi-reflexive":
        for a_id, b_id in product(ideals, repeat=2):
            if not product_set(alg, a_id, b_id) <= ps:
                continue
            for a, b, b2 in product(a_id, b_id, b_id):
                v = _minus(alg, alg.mul[b][alg.add[b2][a]], alg.mul[b][b2])
                if v not in ps:
                    return Verdict(prop, False, (a, b, b2), True, (), {"ideals": [list(a_id), list(b_id)]})
        return _ok(prop)
    if prop == "direct-summand":
        whole = set(range(alg.n))
        for j in ideals:
            if ps & set(j) == {alg.zero} and set(ideal_sum(alg, [P, j])) == whole:
                return _ok(prop, complement=list(j))
        return _fail(prop, None)
    zero = {alg.zero}
    if prop == "minimal":
        if ps == zero:
            return _fail(prop, None, reason="zero ideal")
        for j in ideals:
            if zero < set(j) < ps:
                return Verdict(prop, False, None, True, (), {"smaller": list(j)})
        return _ok(prop)
    if len(P) == alg.n:
        return _fail(prop, None, reason="the whole carrier is excluded")
    for j in ideals:
        if ps < set(j) and len(j) < alg.n:
            return Verdict(prop, False, None, True, (), {"larger": list(j)})
    return _ok(prop)


@dataclass(frozen=True)
class Radical:
    subset: tuple[int, ...]
    primes: tuple[tuple[int, ...], ...]
    empty_intersection: bool

    def to_json(self) -> dict:
        return {"subset": list(self.subset), "primes": [list(p) for p in self.primes],
                "empty_intersection": self.empty_intersection}


def prime_radical(alg: Algebra2, ideal: Iterable[int]) -> Radical:
    """Intersection of the prime ideals containing ``ideal``; the whole carrier when there are none."""
    lst = enumerate_ideals(alg, "ideal")
    if not lst.complete:
        raise NotApplicable("prime radical needs a complete ideal list")
    base = set(ideal)
    primes = tuple(p for p in lst if base <= set(p) and classify_ideal(alg, p, "prime", list(lst)).passed)
    if not primes:
        return Radical(tuple(range(alg.n)), (), True)
    inter = set(range(alg.n))
    for p in primes:
        inter &= set(p)
    return Radical(tuple(sorted(inter)), primes, False)


def verify_sequence(alg: Algebra2, chain: Sequence[Iterable[int]], invariant: bool = False) -> Verdict:
    """Normal sequence N = N_0 > N_1 > ... > N_k = {0}; invariant mode also asks N_i to be ideals of N."""
    sets = [tuple(sorted(set(c))) for c in chain]
    if len(sets) < 2 or sets[0] != tuple(range(alg.n)) or sets[-1] != (alg.zero,):
        raise MalformedInput("chain", "must start at the whole carrier and end at the zero ideal")
    for a, b in zip(sets, sets[1:]):
        if not set(b) < set(a):
            raise MalformedInput("chain", "must be strictly decreasing")
    vid = "invariant-sequence" if invariant else "normal-sequence"
    for k in range(1, len(sets)):
        outer, inner = sets[k - 1], sets[k]
        if not is_ideal(alg, inner, "subnearring"):
            return _fail(vid, inner, step=k, reason="not a subnear-ring")
        sub = alg.induced(outer)
        pos = {x: i for i, x in enumerate(outer)}
        if not is_ideal(sub, [pos[x] for x in inner], "ideal"):
            return _fail(vid, inner, step=k, reason="not an ideal of its predecessor")
        if invariant and not is_ideal(alg, inner, "ideal"):
            return _fail(vid, inner, step=k, reason="not an ideal of the whole near-ring")
    return _ok(vid, length=len(sets) - 1)


# ---------------------------------------------------------------- Smarandache substructures

GOALS = (
    "group-in-semigroup", "semigroup-in-groupoid", "subgroup-in-loop", "nearfield-in-nearring",
    "ring-in-nearring", "nearring-in-seminearring", "semiring-in-seminearring",
    "seminearring-in-nearring", "s-semigroups-both",
)

_ALGEBRA_GOALS = {
    "nearfield-in-nearring": ("near-field", "near-field"),
    "ring-in-nearring": ("ring", "ring"),
    "nearring-in-seminearring": ("right-near-ring", "near-ring"),
    "semiring-in-seminearring": ("semiring", "semiring"),
    "seminearring-in-nearring": ("seminear-ring", "seminear-ring"),
}

_MAGMA_GOALS = {
    "group-in-semigroup": (("group", "abelian-group"), "group"),
    "semigroup-in-groupoid": (("semigroup", "monoid", "group", "abelian-group"), "semigroup"),
    "subgroup-in-loop": (("group", "abelian-group"), "group"),
}


@dataclass(frozen=True)
class Certificate:
    """A subset together with the structure kind it was verified to carry."""

    subset: tuple[int, ...]
    kind: str
    witnesses: dict = field(default_factory=dict, compare=False)
    tables: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"subset": list(self.subset), "kind": self.kind, "witnesses": self.witnesses,
                "tables": self.tables}


@dataclass(frozen=True)
class CertificateList:
    certificates: tuple[Certificate, ...]
    complete: bool
    goal: str

    def __iter__(self):
        return iter(self.certificates)

    def __len__(self):
        return len(self.certificates)

    def subsets(self) -> list[tuple[int, ...]]:
        return [c.subset for c in self.certificates]

    def to_json(self) -> dict:
        return {"goal": self.goal, "complete": self.complete,
                "certificates": [c.to_json() for c in self.certificates]}


def _magma_certs(m: Magma, accept, kind: str, budget, exhaustive, tag: str | None = None):
    fam = closed_subsets_of((m.op,), m.n, budget, exhaustive)
    out = []
    for s in fam:
        if len(s) == m.n:
            continue
        t = restrict_table(m.op, s)
        c = classify(Magma(tuple(m.labels[i] for i in s), t))
        if c.kind in accept:
            out.append(Certificate(s, tag or kind, {"classified": c.kind, "identity": s[c.identity]
                                                    if c.identity is not None else None},
                                   {"labels": [m.labels[i] for i in s], "op": [list(r) for r in t]}))
    return out, fam.complete


def find_substructure(target: Magma | Algebra2, goal: str, budget: int | None = None,
                      exhaustive: bool | None = None) -> CertificateList:
    """Every proper closed subset whose induced structure passes the goal's check."""
    if goal not in GOALS:
        raise ValueError(f"unknown goal {goal!r}")
    if goal in _MAGMA_GOALS:
        m = target if isinstance(target, Magma) else target.mul_magma()
        accept, kind = _MAGMA_GOALS[goal]
        certs, complete = _magma_certs(m, accept, kind, budget, exhaustive)
        return CertificateList(tuple(certs), complete, goal)
    if not isinstance(target, Algebra2):
        raise ValueError(f"{goal} needs a two-operation structure")
    if goal == "s-semigroups-both":
        accept = ("group", "abelian-group")
        adds, c1 = _magma_certs(target.add_magma(), accept, "group", budget, exhaustive, "group-under-add")
        muls, c2 = _magma_certs(target.mul_magma(), accept, "group", budget, exhaustive, "group-under-mul")
        if not adds or not muls:
            return CertificateList((), c1 and c2, goal)
        certs = sorted(adds + muls, key=lambda c: (c.kind, c.subset))
        return CertificateList(tuple(certs), c1 and c2, goal)
    system, kind = _ALGEBRA_GOALS[goal]
    fam = closed_subsets_of((target.add, target.mul), target.n, budget, exhaustive)
    certs = []
    for s in fam:
        if len(s) == target.n:
            continue
        sub = target.induced(s)
        if system in ("near-field", "ring", "right-near-ring"):
            if not is_group_kind(classify(sub.add_magma()).kind):
                continue
        v = check_system(sub, system)
        if v.passed:
            certs.append(Certificate(s, kind, {"system": system}, sub.to_json()))
    return CertificateList(tuple(certs), fam.complete, goal)


# ---------------------------------------------------------------- relative (Smarandache) predicates

RELATIVE_PREDICATES = ("ifp", "strong-ifp", "p-near-ring", "boolean", "left-bipotent", "equiprime",
                       "s-a-in-Na") + tuple(i for i in IDENTITIES if i not in ("p-near-ring", "boolean"))


@dataclass(frozen=True)
class RelativeReport:
    predicate: str
    goal: str
    verdicts: tuple[tuple[tuple[int, ...], Verdict], ...]

    @property
    def passed(self) -> bool:
        return any(v.passed for _, v in self.verdicts)

    def to_json(self) -> dict:
        return {"predicate": self.predicate, "goal": self.goal, "pass": self.passed,
                "certificates": [{"subset": list(s), "verdict": v.to_json()} for s, v in self.verdicts]}


def _relative(alg: Algebra2, pred: str, P: Sequence[int], p: int | None) -> Verdict:
    A, M, n, z = alg.add, alg.mul, alg.n, alg.zero
    everything = range(n)
    if pred == "ifp":
        for a, b in product(everything, repeat=2):
            if M[a][b] == z:
                for m in P:
                    if M[M[a][m]][b] != z or M[a][M[m][b]] != z:
                        return _fail(pred, (a, b, m))
        return _ok(pred)
    if pred == "strong-ifp":
        parts = []
        for ideal in enumerate_ideals(alg, "s-ideal", relative_to=P):
            s = set(ideal)
            bad = next(((a, b, m) for a, b in product(everything, repeat=2) if M[a][b] in s
                        for m in P if M[M[a][m]][b] not in s or M[a][M[m][b]] not in s), None)
            parts.append(_ok("ideal", ideal=list(ideal)) if bad is None
                         else _fail("ideal", bad, ideal=list(ideal)))
        return _all_of(pred, parts)
    if pred in ("p-near-ring", "boolean"):
        if pred == "boolean":
            bad = next((x for x in P if M[x][x] != x), None)
            return _ok(pred) if bad is None else _fail(pred, (bad,))
        if p is None:
            raise ValueError("p-near-ring needs p")
        for x in P:
            acc = x
            for _ in range(p - 1):
                acc = A[acc][x]
            if alg.power(x, p) != x or acc != z:
                return _fail(pred, (x,))
        return _ok(pred, p=p)
    if pred == "left-bipotent":
        for a in everything:
            if {M[m][a] for m in P} != {M[m][M[a][a]] for m in P}:
                return _fail(pred, (a,))
        return _ok(pred)
    if pred == "s-a-in-Na":
        bad = next((a for a in everything if all(M[m][a] != a for m in P)), None)
        return _ok(pred) if bad is None else _fail(pred, (bad,))
    if pred == "equiprime":
        for a in P:
            if a == z:
                continue
            for x, y in product(everything, repeat=2):
                if x != y and all(M[M[a][r]][x] == M[M[a][r]][y] for r in everything):
                    return _fail(pred, (a, x, y))
        return _ok(pred)
    # identities: every variable ranges over the certificate
    sub = alg.induced(P)
    v = check_identity(sub, pred, p)
    w = tuple(P[i] for i in v.witness) if v.witness else v.witness
    return Verdict(pred, v.passed, w, v.applicable, v.conjuncts, v.detail)


def s_relative_check(alg: Algebra2, predicate: str, goal: str = "nearfield-in-nearring",
                     p: int | None = None, budget: int | None = None,
                     exhaustive: bool | None = None) -> RelativeReport:
    """Evaluate ``predicate`` with its quantifiers restricted to each certificate of ``goal``."""
    if predicate not in RELATIVE_PREDICATES:
        raise ValueError(f"unknown relative predicate {predicate!r}")
    certs = find_substructure(alg, goal, budget, exhaustive)
    if not certs.certificates:
        raise NoCertificate(f"no certificate for {goal}")
    return RelativeReport(predicate, goal,
                          tuple((c.subset, _relative(alg, predicate, c.subset, p)) for c in certs))
