"""Planar near-rings and the block designs and binary codes built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .construct import Algebra2
from .ideals import find_substructure
from .tables import LabError, Magma, classify, is_group_kind, restrict_table


class EquivalentPair(LabError):
    """The two right-hand elements are multiplicatively equivalent."""


class NotPlanar(LabError):
    pass


def _partition(alg: Algebra2, rows: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    classes: dict[tuple[int, ...], list[int]] = {}
    for a in range(alg.n):
        classes.setdefault(tuple(alg.mul[r][a] for r in rows), []).append(a)
    return tuple(sorted(tuple(c) for c in classes.values()))


def mul_equivalence(alg: Algebra2) -> tuple[tuple[int, ...], ...]:
    """Classes of a ~ b iff na = nb for every n, i.e. equal columns of the mul table."""
    return _partition(alg, range(alg.n))


def _class_of(partition) -> dict[int, int]:
    return {x: i for i, c in enumerate(partition) for x in c}


def solve_planar_equation(alg: Algebra2, a: int, b: int, c: int) -> tuple[int, ...]:
    """All x with xa = xb + c."""
    cls = _class_of(mul_equivalence(alg))
    if cls[a] == cls[b]:
        raise EquivalentPair(f"{alg.labels[a]} and {alg.labels[b]} are equivalent")
    M, A = alg.mul, alg.add
    return tuple(x for x in range(alg.n) if M[x][a] == A[M[x][b]][c])


@dataclass(frozen=True)
class PlanarReport:
    planar: bool
    classes: tuple[tuple[int, ...], ...]
    failing: tuple[int, int, int] | None = None
    solutions: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.planar

    def to_json(self) -> dict:
        return {"planar": self.planar, "classes": [list(c) for c in self.classes],
                "failing": list(self.failing) if self.failing else None,
                "solutions": list(self.solutions)}


def _planar_scan(alg: Algebra2, classes, xs: Sequence[int], cs: Sequence[int]) -> PlanarReport:
    if len(classes) < 3:
        return PlanarReport(False, classes)
    cls = _class_of(classes)
    M, A = alg.mul, alg.add
    for a, b in product(range(alg.n), repeat=2):
        if cls[a] == cls[b]:
            continue
        for c in cs:
            sols = tuple(x for x in xs if M[x][a] == A[M[x][b]][c])
            if len(sols) != 1:
                return PlanarReport(False, classes, (a, b, c), sols)
    return PlanarReport(True, classes)


def is_planar(alg: Algebra2) -> PlanarReport:
    """At least three equivalence classes and a unique solution for every xa = xb + c with a, b inequivalent."""
    everything = range(alg.n)
    return _planar_scan(alg, mul_equivalence(alg), everything, everything)


@dataclass(frozen=True)
class Design:
    points: tuple[str, ...]
    blocks: tuple[tuple[int, ...], ...]
    r: int | None
    k: int | None
    lam: int | None
    uniform_r: bool
    uniform_k: bool
    uniform_lambda: bool
    group_forming: tuple[int, ...] = ()
    pair_counts: dict = field(default_factory=dict, compare=False)

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def is_bibd(self) -> bool:
        return self.uniform_r and self.uniform_k and self.uniform_lambda

    @property
    def efficiency(self) -> Fraction | None:
        if not self.is_bibd or not self.r or not self.k:
            return None
        return Fraction(self.lam * self.v, self.r * self.k)

    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """v x b matrix with a 1 where the point lies in the block."""
        sets = [set(bl) for bl in self.blocks]
        return tuple(tuple(int(p in s) for s in sets) for p in range(self.v))

    def incidence_csv(self) -> str:
        return "".join(",".join(map(str, row)) + "\n" for row in self.incidence())

    def to_json(self) -> dict:
        e = self.efficiency
        return {"points": list(self.points), "blocks": [list(bl) for bl in self.blocks],
                "v": self.v, "b": self.b, "r": self.r, "k": self.k, "lambda": self.lam,
                "uniform_r": self.uniform_r, "uniform_k": self.uniform_k,
                "uniform_lambda": self.uniform_lambda, "bibd": self.is_bibd,
                "efficiency": None if e is None else f"{e.numerator}/{e.denominator}",
                "group_forming": list(self.group_forming)}


def design_from_blocks(points: Sequence[str], blocks, group_forming: Sequence[int] = ()) -> Design:
    """Deduplicate blocks and count replication, block size and pair coverage."""
    uniq = sorted({tuple(sorted(set(bl))) for bl in blocks})
    v = len(points)
    reps = [sum(p in bl for bl in uniq) for p in range(v)]
    sizes = [len(bl) for bl in uniq]
    pairs = {pq: 0 for pq in combinations(range(v), 2)}
    for bl in uniq:
        for pq in combinations(bl, 2):
            pairs[pq] += 1
    one = lambda xs: len(set(xs)) == 1  # noqa: E731
    ur, uk, ul = one(reps), one(sizes), one(pairs.values()) if pairs else True
    return Design(tuple(points), tuple(uniq), reps[0] if ur else None, sizes[0] if uk and sizes else None,
                  next(iter(pairs.values()), 0) if ul else None, ur, uk and bool(sizes), ul,
                  tuple(group_forming), {f"{p},{q}": c for (p, q), c in pairs.items()})


def _group_forming(alg: Algebra2, orbits: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    out = []
    for a, orb in orbits.items():
        try:
            t = restrict_table(alg.add, orb)
        except LabError:
            continue
        if is_group_kind(classify(Magma(tuple(map(str, orb)), t)).kind):
            out.append(a)
    return tuple(out)


def _translate_design(alg: Algebra2, multipliers: Sequence[int], right: Sequence[int]) -> Design:
    M, A = alg.mul, alg.add
    orbits = {a: tuple(sorted({M[a][n] for n in right})) for a in multipliers}
    blocks = [{A[x][b] for x in orb} for orb in orbits.values() for b in range(alg.n)]
    return design_from_blocks(alg.labels, blocks, _group_forming(alg, orbits))


def bibd_from_planar(alg: Algebra2) -> Design:
    """Blocks a*N + b for nonzero a and all b."""
    if not is_planar(alg):
        raise NotPlanar("the algebra is not planar")
    nonzero = [a for a in range(alg.n) if a != alg.zero]
    return _translate_design(alg, nonzero, range(alg.n))


@dataclass(frozen=True)
class Code:
    words: tuple[str, ...]
    min_distance: int | None

    def to_text(self) -> str:
        return "".join(w + "\n" for w in self.words)


def code_from_design(d: Design, axis: str = "rows") -> Code:
    """Rows or columns of the incidence matrix as a binary code with its minimum distance."""
    if axis not in ("rows", "columns"):
        raise ValueError("axis must be 'rows' or 'columns'")
    mat = d.incidence()
    vecs = mat if axis == "rows" else tuple(zip(*mat))
    words = tuple("".join(map(str, v)) for v in vecs)
    dists = [sum(x != y for x, y in zip(u, w)) for u, w in combinations(words, 2)]
    return Code(words, min(dists) if dists else None)


def s_planar_bibds(alg: Algebra2) -> list[tuple[object, Design]]:
    """One design per near-field certificate P on which the P-relative planarity conditions hold.

    Equivalence uses only multipliers from P, and the equation xa = xb + c is
    solved for x in P with c in P. Blocks are the translates a*P + b.
    """
    out = []
    for cert in find_substructure(alg, "nearfield-in-nearring"):
        P = cert.subset
        classes = _partition(alg, P)
        if not _planar_scan(alg, classes, P, P).planar:
            continue
        nonzero = [a for a in P if a != alg.zero]
        out.append((cert, _translate_design(alg, nonzero, P)))
    return out
