"""Factories for the finite structure families: groupoids and loops over Z_n,
near-rings, seminear-rings, near matrices and polynomials, formal-sum
(semi)near-rings over an index magma, and mod-p envelopes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from .tables import (
    BudgetExceeded,
    Magma,
    MalformedInput,
    Table,
    close_under,
    default_budget,
    identity_element,
    provenance_from_json,
    provenance_to_json,
    restrict_table,
    validate_labels,
    validate_table,
)


@dataclass(frozen=True)
class Algebra2:
    """A carrier with two operation tables ``add`` and ``mul``."""

    labels: tuple[str, ...]
    add: Table
    mul: Table
    zero: int | None = None
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        labels = validate_labels(self.labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "add", validate_table(self.add, len(labels), "add"))
        object.__setattr__(self, "mul", validate_table(self.mul, len(labels), "mul"))
        e = identity_element(self.add)
        if self.zero is None:
            object.__setattr__(self, "zero", e)
        elif self.zero != e:
            raise MalformedInput("zero", f"{self.zero} is not the additive identity")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def add_magma(self) -> Magma:
        return Magma(self.labels, self.add)

    def mul_magma(self) -> Magma:
        return Magma(self.labels, self.mul)

    def neg(self, x: int) -> int | None:
        """Two-sided additive inverse of ``x`` if there is one."""
        z = self.zero
        if z is None:
            return None
        row = self.add[x]
        for y in range(self.n):
            if row[y] == z and self.add[y][x] == z:
                return y
        return None

    def right_neg(self, x: int) -> int | None:
        z = self.zero
        if z is None:
            return None
        for y in range(self.n):
            if self.add[x][y] == z:
                return y
        return None

    def sub(self, a: int, b: int) -> int:
        """``a - b`` as ``a + (-b)``; requires additive inverses."""
        nb = self.neg(b)
        if nb is None:
            from .tables import NotApplicable

            raise NotApplicable(f"element {self.labels[b]} has no additive inverse")
        return self.add[a][nb]

    def power(self, x: int, k: int) -> int:
        """Left-associated power ``(..((x x) x)..) x`` with ``k >= 1`` factors."""
        r = x
        for _ in range(k - 1):
            r = self.mul[r][x]
        return r

    def induced(self, subset: Iterable[int]) -> "Algebra2":
        sub = sorted(set(subset))
        return Algebra2(tuple(self.labels[i] for i in sub),
                        restrict_table(self.add, sub), restrict_table(self.mul, sub))

    @classmethod
    def from_functions(cls, labels: Sequence[str], add, mul, provenance: tuple = ()) -> "Algebra2":
        n = len(labels)
        r = range(n)
        return cls(tuple(labels), tuple(tuple(add(a, b) for b in r) for a in r),
                   tuple(tuple(mul(a, b) for b in r) for a in r), provenance=provenance)

    @classmethod
    def from_labelled_rows(cls, labels: Sequence[str], add_rows, mul_rows) -> "Algebra2":
        pos = {lab: i for i, lab in enumerate(labels)}
        conv = lambda rows: tuple(tuple(pos[x] for x in row) for row in rows)  # noqa: E731
        return cls(tuple(labels), conv(add_rows), conv(mul_rows))

    def to_json(self) -> dict:
        doc = {"labels": list(self.labels), "add": [list(r) for r in self.add],
               "mul": [list(r) for r in self.mul]}
        if self.provenance:
            doc["provenance"] = provenance_to_json(self.provenance)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Algebra2":
        if not isinstance(doc, dict):
            raise MalformedInput("", "expected a JSON object")
        for key in ("labels", "add", "mul"):
            if key not in doc:
                raise MalformedInput(key, "missing")
        labels = validate_labels(doc["labels"])
        n = len(labels)
        return cls(labels, validate_table(doc["add"], n, "add"), validate_table(doc["mul"], n, "mul"),
                   provenance=provenance_from_json(doc.get("provenance")))


@dataclass(frozen=True)
class ClassSpec:
    family: str
    params: tuple[int, ...]


def _num_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def _check_budget(size: int, budget: int | None, what: str) -> None:
    budget = default_budget() if budget is None else budget
    if size > budget:
        raise BudgetExceeded(f"{what} of size {size}", budget)


# ---------------------------------------------------------------- groupoids and loops


def zn_groupoid(n: int, t: int, u: int) -> Magma:
    """Z_n with a*b = t*a + u*b (mod n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not (1 <= t < n and 1 <= u < n):
        raise ValueError(f"t and u must lie in 1..{n - 1}")
    return Magma.from_function(_num_labels(n), lambda a, b: (t * a + u * b) % n, ("zn-groupoid", n, t, u))


def enumerate_zn_class(n: int, mode: str = "coprime") -> list[ClassSpec]:
    """Parameter pairs (t, u) for ``zn_groupoid``.

    ``coprime`` keeps t != u with gcd(t, u) = 1, ``gcd-d`` keeps every t != u,
    ``unrestricted`` keeps every pair.
    """
    if mode not in ("coprime", "gcd-d", "unrestricted"):
        raise ValueError(f"unknown mode {mode!r}")
    specs = []
    for t in range(1, n):
        for u in range(1, n):
            if mode != "unrestricted" and t == u:
                continue
            if mode == "coprime" and gcd(t, u) != 1:
                continue
            specs.append(ClassSpec("zn-groupoid", (n, t, u)))
    return specs


def ln_admissible(n: int, m: int) -> bool:
    return n > 3 and n % 2 == 1 and 1 < m < n and gcd(m, n) == 1 and gcd(m - 1, n) == 1


def enumerate_ln_class(n: int) -> list[int]:
    if n <= 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer greater than 3")
    return [m for m in range(2, n) if ln_admissible(n, m)]


def ln_loop(n: int, m: int) -> Magma:
    """The loop on {e, 1..n} with i*i = e and i*j = m*j - (m-1)*i (mod n), residue 0 written n."""
    if not ln_admissible(n, m):
        raise ValueError(f"(n, m) = ({n}, {m}) violates the loop parameter constraints")
    labels = ("e",) + tuple(str(i) for i in range(1, n + 1))

    def op(a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if a == b:
            return 0
        r = (m * b - (m - 1) * a) % n
        return n if r == 0 else r

    return Magma.from_function(labels, op, ("ln-loop", n, m))


def zn_additive(n: int) -> Magma:
    return Magma.from_function(_num_labels(n), lambda a, b: (a + b) % n, ("zn-add", n))


def zn_multiplicative(n: int) -> Magma:
    return Magma.from_function(_num_labels(n), lambda a, b: (a * b) % n, ("zn-mul", n))


# ---------------------------------------------------------------- near-rings over Z_n


def zn_nearring(n: int) -> Algebra2:
    """(Z_n, +, .) with a . b = a."""
    if n < 1:
        raise ValueError("n must be positive")
    return Algebra2.from_functions(_num_labels(n), lambda a, b: (a + b) % n, lambda a, b: a,
                                   ("zn-nearring", n))


def zn_seminearring(n: int) -> Algebra2:
    """(Z_n, x, .) with multiplication mod n as addition and a . b = a."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return Algebra2.from_functions(_num_labels(n), lambda a, b: (a * b) % n, lambda a, b: a,
                                   ("zn-seminearring", n))


def planar_nearring(p: int, k: int) -> Algebra2:
    """Near-ring on Z_p from the order-k subgroup Phi of the units.

    Nonzero b is written uniquely as phi_b * r with r the least element of its
    Phi-orbit; then a * b = a * phi_b and a * 0 = 0.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError("p must be prime")
    if k < 1 or (p - 1) % k:
        raise ValueError(f"k must divide {p - 1}")
    gen = next(g for g in range(1, p) if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)))
    h = pow(gen, (p - 1) // k, p)
    phi = sorted({pow(h, i, p) for i in range(k)})
    factor = {}
    for b in range(1, p):
        orbit = [(f * b) % p for f in phi]
        rep = min(orbit)
        factor[b] = next(f for f in phi if (f * rep) % p == b)

    def mul(a: int, b: int) -> int:
        return 0 if b == 0 else (a * factor[b]) % p

    return Algebra2.from_functions(_num_labels(p), lambda a, b: (a + b) % p, mul, ("planar-nearring", p, k))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _require_left_projection(base: Algebra2) -> None:
    if any(base.mul[a][b] != a for a in range(base.n) for b in range(base.n)):
        raise ValueError("base multiplication must satisfy a . b = a")


def matrix_product(base: Algebra2, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Entry (i, j) is the sum over l of a[i][l] . b[l][j] in ``base``."""
    k = len(a)
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = base.mul[a[i][0]][b[0][j]]
            for l in range(1, k):
                acc = base.add[acc][base.mul[a[i][l]][b[l][j]]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def near_matrix(base: Algebra2, k: int, budget: int | None = None) -> Algebra2:
    """k x k matrices over ``base``; every entry of row i of A.B is the sum of row i of A."""
    _require_left_projection(base)
    n = base.n
    size = n ** (k * k)
    _check_budget(size, budget, "near-matrix carrier")
    mats = list(itertools.product(range(n), repeat=k * k))
    code = {m: i for i, m in enumerate(mats)}
    shape = lambda m: tuple(m[i * k:(i + 1) * k] for i in range(k))  # noqa: E731

    def label(m):
        return "[" + "|".join(" ".join(base.labels[m[i * k + j]] for j in range(k)) for i in range(k)) + "]"

    add = tuple(tuple(code[tuple(base.add[x][y] for x, y in zip(a, b))] for b in mats) for a in mats)
    # with a left-projection base the product ignores B, so one column suffices
    probe = shape(mats[0])
    prod_rows = [(code[sum(matrix_product(base, shape(a), probe), ())],) * size for a in mats]
    return Algebra2(tuple(label(m) for m in mats), add, tuple(prod_rows),
                    provenance=("near-matrix", base.n, k))


def matrix_index(alg: Algebra2, rows: Sequence[Sequence[int]]) -> int:
    """Index of the matrix with integer entries ``rows`` in a ``near_matrix`` algebra."""
    return alg.labels.index("[" + "|".join(" ".join(str(x) for x in r) for r in rows) + "]")


def poly_label(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def poly_degree(coeffs: Sequence[int]) -> int | None:
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i]:
            return i
    return None


def near_poly(n: int, d: int, budget: int | None = None) -> Algebra2:
    """Polynomials of degree at most d over Z_n with p . q = p."""
    if n < 2 or d < 0:
        raise ValueError("need n >= 2 and d >= 0")
    size = n ** (d + 1)
    _check_budget(size, budget, "near-polynomial carrier")
    polys = [tuple(reversed(t)) for t in itertools.product(range(n), repeat=d + 1)]
    polys.sort(key=lambda c: sum(ci * n**i for i, ci in enumerate(c)))
    code = {p: i for i, p in enumerate(polys)}
    add = tuple(tuple(code[tuple((x + y) % n for x, y in zip(p, q))] for q in polys) for p in polys)
    mul = tuple((i,) * size for i in range(size))
    return Algebra2(tuple(poly_label(p) for p in polys), add, mul, provenance=("near-poly", n, d))


def poly_coefficients(alg: Algebra2, n: int, d: int, index: int) -> tuple[int, ...]:
    return tuple((index // n**i) % n for i in range(d + 1))


# ---------------------------------------------------------------- formal sums


class FormalSums:
    """Arithmetic on formal sums sum(alpha_g g) with coefficients in ``base``.

    Elements are coefficient tuples indexed by the index magma. The product
    expands over the supports of both factors: for each pair (i, j) of
    index elements carrying non-zero coefficients, taken in ascending order,
    ``base.mul(alpha_i, beta_j)`` is added onto the coefficient of ``i*j``.
    """

    def __init__(self, base: Algebra2, index: Magma):
        if base.zero is None:
            raise ValueError("base addition needs an identity to serve as the zero coefficient")
        self.base = base
        self.index = index
        self.b = base.n
        self.k = index.n
        self.size = self.b**self.k
        self._labels: list[str] | None = None

    # encoding: little-endian mixed radix over the index elements
    def encode(self, coeffs: Sequence[int]) -> int:
        return sum(c * self.b**i for i, c in enumerate(coeffs))

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.b)
            out.append(r)
        return tuple(out)

    @property
    def zero(self) -> tuple[int, ...]:
        return (self.base.zero,) * self.k

    def element(self, terms: Mapping[str, str] | Iterable[tuple[str, str]]) -> tuple[int, ...]:
        """Build a sum from (index label -> coefficient label) terms."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        c = list(self.zero)
        for g, a in items:
            gi = self.index.index(g)
            c[gi] = self.base.add[c[gi]][self.base.index(a)]
        return tuple(c)

    def monomial(self, g: str, coeff: str = "1") -> tuple[int, ...]:
        return self.element({g: coeff})

    def total(self, elements: Iterable[str] | None = None, coeff: str = "1") -> tuple[int, ...]:
        els = self.index.labels if elements is None else elements
        return self.element([(g, coeff) for g in els])

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        t = self.base.add
        return tuple(t[x][y] for x, y in zip(a, b))

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        z = self.base.zero
        bm, ba, op = self.base.mul, self.base.add, self.index.op
        res = [z] * self.k
        sb = [(j, y) for j, y in enumerate(b) if y != z]
        for i, x in enumerate(a):
            if x == z:
                continue
            row, mrow = op[i], bm[x]
            for j, y in sb:
                kk = row[j]
                res[kk] = ba[res[kk]][mrow[y]]
        return tuple(res)

    def coefficient_sum(self, a: Sequence[int]) -> int:
        acc = self.base.zero
        for x in a:
            acc = self.base.add[acc][x]
        return acc

    def label(self, a: Sequence[int], explicit: bool = False) -> str:
        z = self.base.zero
        parts = []
        for g, c in enumerate(a):
            if c == z:
                continue
            cl, gl = self.base.labels[c], self.index.labels[g]
            if explicit:
                parts.append(f"{cl}*{gl}")
            elif gl == "1":
                parts.append(cl)
            elif cl == "1":
                parts.append(gl)
            else:
                parts.append(cl + gl)
        return "+".join(parts) if parts else self.base.labels[z]

    def labels(self) -> list[str]:
        if self._labels is None:
            labs = [self.label(self.decode(c)) for c in range(self.size)]
            if len(set(labs)) != len(labs):
                labs = [self.label(self.decode(c), explicit=True) for c in range(self.size)]
            if len(set(labs)) != len(labs):
                labs = [repr(self.decode(c)) for c in range(self.size)]
            self._labels = labs
        return self._labels

    def label_of(self, a: Sequence[int]) -> str:
        return self.labels()[self.encode(a)]


def magma_nearring(base: Algebra2, index: Magma, budget: int | None = None) -> Algebra2:
    """The formal-sum algebra of ``index`` over ``base`` as explicit tables."""
    fs = FormalSums(base, index)
    _check_budget(fs.size, budget, "formal-sum carrier")
    els = [fs.decode(c) for c in range(fs.size)]
    enc = fs.encode
    add = tuple(tuple(enc(fs.add(a, b)) for b in els) for a in els)
    mul = tuple(tuple(enc(fs.mul(a, b)) for b in els) for a in els)
    return Algebra2(tuple(fs.labels()), add, mul,
                    provenance=("magma-nearring", base.provenance or (), index.provenance or ()))


def mod_p_envelope(base: Algebra2, index: Magma, budget: int | None = None) -> Magma:
    """Multiplicative closure of {1 + u : u has coefficient sum zero}.

    The unit ``1`` is the index identity with the coefficient labelled "1".
    """
    e = identity_element(index.op)
    if e is None:
        raise ValueError("index magma needs a two-sided identity")
    if "1" not in base.labels:
        raise ValueError("base needs an element labelled '1'")
    budget = default_budget() if budget is None else budget
    fs = FormalSums(base, index)
    _check_budget(fs.size, budget, "formal-sum carrier")
    one = list(fs.zero)
    one[e] = base.index("1")
    one = tuple(one)
    seeds = []
    for code in range(fs.size):
        u = fs.decode(code)
        if fs.coefficient_sum(u) == base.zero:
            seeds.append(fs.add(one, u))
    found = {s: None for s in seeds}
    order = list(found)
    i = 0
    while i < len(order):
        x = order[i]
        for j in range(i + 1):
            y = order[j]
            for z in (fs.mul(x, y), fs.mul(y, x)):
                if z not in found:
                    found[z] = None
                    order.append(z)
                    if len(order) > budget:
                        raise BudgetExceeded("envelope closure", budget)
        i += 1
    elements = sorted(order, key=fs.encode)
    pos = {x: i for i, x in enumerate(elements)}
    table = tuple(tuple(pos[fs.mul(x, y)] for y in elements) for x in elements)
    return Magma(tuple(fs.label_of(x) for x in elements), table, ("mod-p-envelope",))


def closure_in(alg: Algebra2, seed: Iterable[int]) -> tuple[int, ...]:
    """Closure of ``seed`` under both operations of ``alg``."""
    return close_under((alg.add, alg.mul), seed)


def snp_zp(p: int) -> Algebra2:
    """Z_p with p (+) q = p - q and p (.) q = p / q, where p (.) 0 = 0."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError("p must be prime")
    return Algebra2.from_functions(_num_labels(p), lambda a, b: (a - b) % p,
                                   lambda a, b: 0 if b == 0 else (a * pow(b, -1, p)) % p,
                                   ("snp-zp", p))
