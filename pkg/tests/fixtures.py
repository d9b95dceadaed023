"""Hand-written Cayley and transition tables used as golden inputs."""

from nearring_lab.construct import Algebra2, zn_additive
from nearring_lab.tables import Magma


def _rows(text: str) -> tuple[tuple[str, ...], list[list[str]]]:
    lines = [ln.split() for ln in text.strip().splitlines()]
    header = tuple(lines[0][1:])
    body = [ln[1:] for ln in lines[1:]]
    assert [ln[0] for ln in lines[1:]] == list(header)
    return header, body


def magma(text: str) -> Magma:
    labels, body = _rows(text)
    return Magma.from_labelled_rows(labels, body)


FIVE_ELEMENT_GROUPOID = magma("""
*  a b c d e
a  a c b d a
b  c d e a b
c  b b c b b
d  d e e d a
e  e a e a d
""")

Z5_GROUPOID_3_4 = magma("""
*  0 1 2 3 4
0  0 4 3 2 1
1  3 2 1 0 4
2  1 0 4 3 2
3  4 3 2 1 0
4  2 1 0 4 3
""")

SIX_ELEMENT_GROUPOID = magma("""
*  0 1 2 3 4 5
0  0 3 0 3 0 3
1  1 4 1 4 1 4
2  2 5 2 5 2 5
3  3 0 3 0 3 0
4  4 1 4 1 4 1
5  5 2 5 2 5 2
""")

NONCOMMUTATIVE_LOOP_6 = magma("""
*   e  a1 a2 a3 a4 a5
e   e  a1 a2 a3 a4 a5
a1  a1 e  a3 a5 a2 a4
a2  a2 a5 e  a4 a1 a3
a3  a3 a4 a1 e  a5 a2
a4  a4 a3 a5 a2 e  a1
a5  a5 a2 a4 a1 a3 e
""")

S_LOOP_8 = magma("""
*   e  a1 a2 a3 a4 a5 a6 a7
e   e  a1 a2 a3 a4 a5 a6 a7
a1  a1 e  a4 a7 a3 a6 a2 a5
a2  a2 a6 e  a5 a1 a4 a7 a3
a3  a3 a4 a7 e  a6 a2 a5 a1
a4  a4 a2 a5 a1 e  a7 a3 a6
a5  a5 a7 a3 a6 a2 e  a1 a4
a6  a6 a5 a1 a4 a7 a3 e  a2
a7  a7 a3 a6 a2 a5 a1 a4 e
""")

L5_3_PRINTED = magma("""
.  e 1 2 3 4 5
e  e 1 2 3 4 5
1  1 e 4 2 5 3
2  2 4 e 5 3 1
3  3 2 5 e 1 4
4  4 5 3 1 e 2
5  5 3 1 4 2 e
""")

# Loop with zero-divisor sum (even order)
LOOP_6_ZERO_DIVISOR = magma("""
.  1 a b c d e
1  1 a b c d e
a  a 1 e b c d
b  b c d a e 1
c  c d 1 e a b
d  d e c 1 b a
e  e b a d 1 c
""")

# Loop with idempotent sum (odd order); also the envelope example
LOOP_5 = magma("""
.  1 a b c d
1  1 a b c d
a  a 1 c d b
b  b d a 1 c
c  c b d a 1
d  d c 1 b a
""")

LOOP_5_ENVELOPE = (
    "1 a b c d 1+a+b 1+a+c 1+a+d 1+b+c 1+b+d 1+c+d a+b+c a+b+d a+c+d b+c+d 1+a+b+c+d"
).split()


def _mul_only(labels, rows, modulus):
    add = zn_additive(modulus).op
    mul = tuple(tuple(int(x) for x in r) for r in rows)
    return Algebra2(tuple(labels), add, mul)


BIPOTENT_N1 = _mul_only("0123", ["0000", "0301", "0202", "0103"], 4)
BIPOTENT_N2 = _mul_only("01234", ["00000", "00410", "00320", "00230", "00140"], 5)
BIPOTENT_N3 = _mul_only("0123456", ["0000000", "0124421", "0241142", "0365563", "0412214", "0536635",
                                    "0653356"], 7)

_LOOP_ADD_5 = magma("""
+  e a b c d
e  e a b c d
a  a b e d c
b  b c d a e
c  c d a e b
d  d e c b a
""")

LOOP_NEARRING_5 = Algebra2(_LOOP_ADD_5.labels, _LOOP_ADD_5.op,
                           tuple(tuple(x for _ in range(5)) for x in range(5)))

_S_ADD = magma("""
+  0 a b c
0  0 a b c
a  a 0 c b
b  b c 0 a
c  c b a 0
""")
_S_MUL = magma("""
.  0 a b c
0  0 0 0 0
a  0 a b c
b  0 b 0 0
c  0 c b c
""")
S_LOOP_NEARRING = Algebra2(_S_ADD.labels, _S_ADD.op, _S_MUL.op)

CYCLIC_2 = Magma(("1", "g"), ((0, 1), (1, 0)))
CYCLIC_3 = Magma(("1", "g", "g2"), ((0, 1, 2), (1, 2, 0), (2, 0, 1)))

PARITY_DELTA = ((0, 1), (1, 0))
PARITY_LAMBDA = ((0, 1), (0, 1))

DELTA_Z4_2_2 = ((0, 2, 0), (2, 0, 2), (0, 2, 0), (2, 0, 2))
DELTA_Z4_3_2 = ((0, 2, 0, 2, 0), (3, 1, 3, 1, 3), (2, 0, 2, 0, 2), (1, 3, 1, 3, 1))
LAMBDA_Z5_2_3 = ((0, 3, 1, 4, 2), (2, 0, 3, 1, 4), (4, 2, 0, 3, 1), (1, 4, 2, 0, 3))

EX_PLANAR_Z5 = Algebra2.from_functions(
    tuple("01234"), lambda a, b: (a + b) % 5,
    lambda n, b: 0 if b == 0 else (n if b in (1, 2) else (4 * n) % 5))
