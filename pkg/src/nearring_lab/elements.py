"""Per-element classification: idempotents, zero divisors, units, nilpotents,
quasi-regular, distributive, normal and semi-idempotent elements, together
with their Smarandache variants."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .axioms import check_system
from .construct import Algebra2
from .ideals import Certificate, generated_left_ideal
from .tables import LabError, NotApplicable, classify, identity_element, induced, is_group_kind

ELEMENT_KINDS = (
    "idempotent", "s-idempotent", "zero-divisor", "s-zero-divisor", "unit", "s-unit",
    "nilpotent", "s-nilpotent", "distributive", "normal", "circle-quasi-regular",
    "lz-quasi-regular", "s-quasi-regular", "semi-idempotent",
)

_NEEDS_ZERO = {"zero-divisor", "s-zero-divisor", "nilpotent", "s-nilpotent", "s-idempotent",
               "circle-quasi-regular", "lz-quasi-regular", "s-quasi-regular", "semi-idempotent"}
_NEEDS_ONE = {"unit", "s-unit"}
_NEEDS_GROUP = {"circle-quasi-regular", "lz-quasi-regular", "s-quasi-regular", "semi-idempotent"}


class CertificateMismatch(LabError):
    """The certificate does not carry the structure the relative test needs."""


@dataclass(frozen=True)
class ElementReport:
    element: int
    kinds: frozenset[str]
    witnesses: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"element": self.element, "kinds": sorted(self.kinds),
                "witnesses": {k: list(v) for k, v in sorted(self.witnesses.items())}}


def mul_identity(alg: Algebra2) -> int | None:
    return identity_element(alg.mul)


def nilpotency_index(alg: Algebra2, x: int) -> int | None:
    """Least k with x^k = 0 (left-associated powers), or None once the powers cycle."""
    z = alg.zero
    seen = set()
    p, k = x, 1
    cap = alg.n * alg.n
    while k <= cap:
        if p == z:
            return k
        if p in seen:
            return None
        seen.add(p)
        p = alg.mul[p][x]
        k += 1
    return None


def _powers(alg: Algebra2, x: int, upto: int) -> list[int]:
    out, p = [], x
    for _ in range(upto):
        out.append(p)
        p = alg.mul[p][x]
    return out


def _circle(alg: Algebra2, x: int, y: int) -> int:
    """x o y = x + y - xy."""
    return alg.sub(alg.add[x][y], alg.mul[x][y])


# ---------------------------------------------------------------- single-element tests
# Each test returns a witness tuple when the element has the kind, else None.


def _idempotent(alg, x, ctx):
    return () if alg.mul[x][x] == x else None


def _s_idempotent(alg, x, ctx, pool=None):
    M, z, one = alg.mul, alg.zero, ctx["one"]
    if x == z or M[x][x] != x:
        return None
    excluded = {x, z} | ({one} if one is not None else set())
    for a in (range(alg.n) if pool is None else pool):
        if a in excluded or M[a][a] != x:
            continue
        g1 = M[x][a] == a or M[a][x] == a
        g2 = M[a][x] == x or M[x][a] == x
        if g1 != g2:
            return (a,)
    return None


def _zero_divisor(alg, x, ctx):
    M, z = alg.mul, alg.zero
    if x == z:
        return None
    for b in range(alg.n):
        if b != z and (M[x][b] == z or M[b][x] == z):
            return (b,)
    return None


def _s_zero_divisor(alg, a, ctx, pool=None):
    M, z = alg.mul, alg.zero
    if a == z:
        return None
    cands = list(range(alg.n) if pool is None else pool)
    for b in range(alg.n):
        if b == z or M[a][b] != z:
            continue
        banned = {a, b, z}
        xs = [x for x in cands if x not in banned and (M[a][x] == z or M[x][a] == z)]
        ys = [y for y in cands if y not in banned and (M[b][y] == z or M[y][b] == z)]
        for x, y in product(xs, ys):
            if x != y and (M[x][y] != z or M[y][x] != z):
                return (b, x, y)
    return None


def _unit(alg, x, ctx):
    one = ctx["one"]
    y = next((y for y in range(alg.n) if alg.mul[x][y] == one), None)
    return None if y is None else (y,)


def _s_unit(alg, x, ctx, pool=None):
    M, one = alg.mul, ctx["one"]
    if x == one:
        return None
    cands = list(range(alg.n) if pool is None else pool)
    for y in range(alg.n):
        if M[x][y] != one:
            continue
        banned = {x, y, one}
        for a, b in product(cands, repeat=2):
            if a in banned or b in banned or M[a][b] != one:
                continue
            if M[x][a] == y or M[a][x] == y or M[y][b] == x or M[b][y] == x:
                return (y, a, b)
    return None


def _nilpotent(alg, x, ctx):
    k = nilpotency_index(alg, x)
    return None if k is None else (k,)


def _s_nilpotent(alg, x, ctx, pool=None):
    M, z = alg.mul, alg.zero
    if x == z:
        return None
    k = nilpotency_index(alg, x)
    if k is None:
        return None
    powers = _powers(alg, x, k)
    for y in (range(alg.n) if pool is None else pool):
        if y in (z, x):
            continue
        if not any(M[p][y] == z or M[y][p] == z for p in powers):
            continue
        if any(p != z for p in _powers(alg, y, alg.n + 1)[1:]):
            return (y,)
    return None


def _distributive(alg, d, ctx):
    A, M, n = alg.add, alg.mul, alg.n
    for a, b in product(range(n), repeat=2):
        if M[d][A[a][b]] != A[M[d][a]][M[d][b]]:
            return None
    return ()


def _normal(alg, a, ctx):
    M, n = alg.mul, alg.n
    return () if {M[a][x] for x in range(n)} == {M[x][a] for x in range(n)} else None


def _circle_qr(alg, x, ctx):
    z = alg.zero
    r = next((y for y in range(alg.n) if _circle(alg, x, y) == z), None)
    l_ = next((y for y in range(alg.n) if _circle(alg, y, x) == z), None)
    return None if r is None or l_ is None else (r, l_)


def _lz_qr(alg, x, ctx):
    seed = {alg.sub(n, alg.mul[n][x]) for n in range(alg.n)}
    return () if x in generated_left_ideal(alg, seed) else None


def _s_qr(alg, x, ctx):
    z = alg.zero
    inv = [y for y in range(alg.n) if _circle(alg, x, y) == z]
    for y, w in product(inv, repeat=2):
        if y != w and _circle(alg, y, w) != z and _circle(alg, w, y) != z:
            return (y, w)
    return None


def _semi_idempotent(alg, a, ctx):
    d = alg.sub(alg.mul[a][a], a)
    return () if all(alg.mul[n][d] != d for n in range(alg.n)) else None


_TESTS = {
    "idempotent": _idempotent, "s-idempotent": _s_idempotent, "zero-divisor": _zero_divisor,
    "s-zero-divisor": _s_zero_divisor, "unit": _unit, "s-unit": _s_unit, "nilpotent": _nilpotent,
    "s-nilpotent": _s_nilpotent, "distributive": _distributive, "normal": _normal,
    "circle-quasi-regular": _circle_qr, "lz-quasi-regular": _lz_qr, "s-quasi-regular": _s_qr,
    "semi-idempotent": _semi_idempotent,
}


def _context(alg: Algebra2, kind: str) -> dict:
    if kind not in ELEMENT_KINDS:
        raise ValueError(f"unknown element kind {kind!r}")
    if kind in _NEEDS_ZERO and alg.zero is None:
        raise NotApplicable(f"{kind} needs an additive zero")
    one = mul_identity(alg)
    if kind in _NEEDS_ONE and one is None:
        raise NotApplicable(f"{kind} needs a multiplicative identity")
    if kind in _NEEDS_GROUP and not is_group_kind(classify(alg.add_magma()).kind):
        raise NotApplicable(f"{kind} needs additive inverses")
    return {"one": one}


def classify_elements(alg: Algebra2, kind: str) -> list[ElementReport]:
    """Every element of ``kind``, sorted by index, each with a replayable witness."""
    ctx = _context(alg, kind)
    test = _TESTS[kind]
    out = []
    for x in range(alg.n):
        w = test(alg, x, ctx)
        if w is not None:
            out.append(ElementReport(x, frozenset({kind}), {kind: w}))
    return out


def element_set(alg: Algebra2, kind: str) -> tuple[int, ...]:
    return tuple(r.element for r in classify_elements(alg, kind))


def element_report(alg: Algebra2, x: int, kinds: Iterable[str] = ELEMENT_KINDS) -> ElementReport:
    """All applicable kinds of a single element; kinds whose constants are missing are skipped."""
    found, wit = set(), {}
    for kind in kinds:
        try:
            ctx = _context(alg, kind)
        except NotApplicable:
            continue
        w = _TESTS[kind](alg, x, ctx)
        if w is not None:
            found.add(kind)
            wit[kind] = w
    return ElementReport(x, frozenset(found), wit)


@dataclass(frozen=True)
class QuasiRegular:
    right: dict
    left: dict

    @property
    def both(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.right) & set(self.left)))

    def to_json(self) -> dict:
        return {"right": {str(k): v for k, v in sorted(self.right.items())},
                "left": {str(k): v for k, v in sorted(self.left.items())},
                "both": list(self.both)}


def quasi_regular_set(alg: Algebra2, mode: str = "circle") -> QuasiRegular | tuple[int, ...]:
    """Circle mode maps each right (left) quasi-regular x to its quasi-inverses;
    lz mode returns the z lying in the left ideal generated by {n - nz}."""
    if mode not in ("circle", "lz"):
        raise ValueError(f"unknown mode {mode!r}")
    kind = "circle-quasi-regular" if mode == "circle" else "lz-quasi-regular"
    _context(alg, kind)
    if mode == "lz":
        return element_set(alg, "lz-quasi-regular")
    z = alg.zero
    right, left = {}, {}
    for x in range(alg.n):
        r = [y for y in range(alg.n) if _circle(alg, x, y) == z]
        l_ = [y for y in range(alg.n) if _circle(alg, y, x) == z]
        if r:
            right[x] = r
        if l_:
            left[x] = l_
    return QuasiRegular(right, left)


# ---------------------------------------------------------------- relative variants

_RELATIVE = {"s-idempotent": _s_idempotent, "s-zero-divisor": _s_zero_divisor,
             "s-unit": _s_unit, "s-nilpotent": _s_nilpotent}
_CERT_SYSTEMS = {"near-field": "near-field", "near-ring": "right-near-ring", "ring": "ring",
                 "seminear-ring": "seminear-ring", "semiring": "semiring"}


def _verify_certificate(alg: Algebra2, cert: Certificate) -> list[int]:
    sub = list(cert.subset)
    if not sub or any(not 0 <= x < alg.n for x in sub):
        raise CertificateMismatch("certificate indices out of range")
    if cert.kind in _CERT_SYSTEMS:
        try:
            ok = check_system(alg.induced(sub), _CERT_SYSTEMS[cert.kind]).passed
        except LabError:
            ok = False
    elif cert.kind in ("group", "group-under-mul"):
        try:
            ok = is_group_kind(classify(induced(alg.mul_magma(), sub)).kind)
        except LabError:
            ok = False
    else:
        raise CertificateMismatch(f"unsupported certificate kind {cert.kind!r}")
    if not ok:
        raise CertificateMismatch(f"subset does not form a {cert.kind}")
    return sub


def s_relative_elements(alg: Algebra2, kind: str, certificate: Certificate) -> tuple[int, ...]:
    """Smarandache elements whose auxiliary elements are drawn from the certificate subset."""
    if kind not in _RELATIVE:
        raise ValueError(f"{kind!r} has no relative variant")
    ctx = _context(alg, kind)
    pool = _verify_certificate(alg, certificate)
    test = _RELATIVE[kind]
    return tuple(x for x in range(alg.n) if test(alg, x, ctx, pool) is not None)


def distributive_set(alg: Algebra2) -> tuple[int, ...]:
    return element_set(alg, "distributive")


def normal_set(alg: Algebra2) -> tuple[int, ...]:
    return element_set(alg, "normal")


def replay(alg: Algebra2, kind: str, x: int, witness: Sequence[int]) -> bool:
    """Re-derive a reported witness from the tables alone."""
    M, z = alg.mul, alg.zero
    one = mul_identity(alg)
    if kind == "idempotent":
        return M[x][x] == x
    if kind == "zero-divisor":
        (b,) = witness
        return x != z and b != z and (M[x][b] == z or M[b][x] == z)
    if kind == "unit":
        (y,) = witness
        return M[x][y] == one
    if kind == "nilpotent":
        (k,) = witness
        return _powers(alg, x, k)[-1] == z
    if kind == "s-idempotent":
        (a,) = witness
        return M[a][a] == x and M[x][x] == x and a not in (x, z, one)
    if kind == "s-zero-divisor":
        b, u, v = witness
        return (M[x][b] == z and u != v and not {u, v} & {x, b, z}
                and (M[x][u] == z or M[u][x] == z) and (M[b][v] == z or M[v][b] == z)
                and (M[u][v] != z or M[v][u] != z))
    if kind == "s-unit":
        y, a, b = witness
        return M[x][y] == one and M[a][b] == one and not {a, b} & {x, y, one}
    if kind == "circle-quasi-regular":
        r, l_ = witness
        return _circle(alg, x, r) == z and _circle(alg, l_, x) == z
    return _TESTS[kind](alg, x, _context(alg, kind)) is not None
