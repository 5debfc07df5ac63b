"""Words in the modular group generators, matrices over Z/NZ, lifting and decomposition."""

from __future__ import annotations

import json
from math import gcd

from .cyclotomic import factorize, xgcd

__all__ = [
    "STWord",
    "ResidueMatrix",
    "parse_matrix",
    "format_matrix",
    "mat_mul",
    "mat_det",
    "word_matrix",
    "decompose",
    "lift",
    "idempotents",
    "local_generators",
    "enumerate_group",
    "random_matrix",
    "sl2_order",
    "unimodular_rows",
    "complete_row",
]


class STWord:
    """A word in the generators S = [[0,-1],[1,0]] and T = [[1,1],[0,1]].

    Stored as a tuple of (letter, exponent) tokens with letter 'S' or 'T'.
    Adjacent equal letters are merged and zero exponents dropped, so the
    empty word is the identity.
    """

    __slots__ = ("tokens",)

    def __init__(self, tokens=()):
        merged = []
        for letter, e in tokens:
            assert letter in ("S", "T")
            e = int(e)
            if e == 0:
                continue
            if merged and merged[-1][0] == letter:
                e += merged.pop()[1]
                if e == 0:
                    continue
            merged.append((letter, e))
        object.__setattr__(self, "tokens", tuple(merged))

    def __setattr__(self, name, value):
        raise AttributeError("STWord values are immutable")

    @staticmethod
    def T(e):
        """Return the word T^e."""
        return STWord([("T", e)])

    @staticmethod
    def S(e=1):
        """Return the word S^e."""
        return STWord([("S", e)])

    def __mul__(self, other):
        assert isinstance(other, STWord)
        return STWord(self.tokens + other.tokens)

    def inverse(self):
        """Return the inverse word."""
        return STWord([(letter, -e) for letter, e in reversed(self.tokens)])

    def __len__(self):
        return len(self.tokens)

    def __eq__(self, other):
        return isinstance(other, STWord) and self.tokens == other.tokens

    def __hash__(self):
        return hash(self.tokens)

    def __str__(self):
        if not self.tokens:
            return "1"
        parts = []
        for letter, e in self.tokens:
            if letter == "S" and e == 1:
                parts.append("S")
            else:
                parts.append(f"{letter}^{e}")
        return " ".join(parts)

    __repr__ = __str__


def parse_matrix(text):
    """Parse a matrix string like [[a,b],[c,d]] into a list of lists of ints."""
    m = json.loads(text)
    assert (
        isinstance(m, list)
        and len(m) == 2
        and all(isinstance(r, list) and len(r) == 2 for r in m)
    ), "expected [[a,b],[c,d]]"
    return [[int(x) for x in r] for r in m]


def format_matrix(m):
    """Format a 2x2 matrix as [[a,b],[c,d]]."""
    return f"[[{m[0][0]},{m[0][1]}],[{m[1][0]},{m[1][1]}]]"


def mat_mul(x, y):
    """Multiply two 2x2 integer matrices."""
    return [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]


def mat_det(m):
    """Return the determinant of a 2x2 matrix."""
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


_S_MAT = [[0, -1], [1, 0]]


def word_matrix(w):
    """Evaluate an STWord to a 2x2 integer matrix."""
    out = [[1, 0], [0, 1]]
    for letter, e in w.tokens:
        if letter == "T":
            out = mat_mul(out, [[1, e], [0, 1]])
        else:
            # S has order 4 in SL2(Z)
            for _ in range(e % 4):
                out = mat_mul(out, _S_MAT)
    return out


class ResidueMatrix:
    """A matrix in SL2(Z/NZ), stored with entries reduced to [0, N)."""

    __slots__ = ("N", "a", "b", "c", "d")

    def __init__(self, N, a, b, c, d):
        assert isinstance(N, int) and N >= 1
        a, b, c, d = a % N, b % N, c % N, d % N
        assert (a * d - b * c) % N == 1 % N, "determinant must be 1 mod N"
        for name, v in zip(("N", "a", "b", "c", "d"), (N, a, b, c, d)):
            object.__setattr__(self, name, v)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueMatrix values are immutable")

    @staticmethod
    def from_list(N, m):
        """Build from a list of lists [[a,b],[c,d]]."""
        return ResidueMatrix(N, m[0][0], m[0][1], m[1][0], m[1][1])

    def entries(self):
        """Return the entries as [[a,b],[c,d]]."""
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, other):
        assert isinstance(other, ResidueMatrix) and other.N == self.N
        return ResidueMatrix(
            self.N,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self):
        return ResidueMatrix(self.N, -self.a, -self.b, -self.c, -self.d)

    def inverse(self):
        """Return the inverse matrix."""
        return ResidueMatrix(self.N, self.d, -self.b, -self.c, self.a)

    def is_identity(self):
        """Return True for the identity matrix."""
        return (self.a, self.b, self.c, self.d) == (1 % self.N, 0, 0, 1 % self.N)

    def key(self):
        """Return a deterministic sort key."""
        return (self.a, self.b, self.c, self.d)

    def canonical_up_to_sign(self):
        """Return the lexicographically smaller of this matrix and its opposite."""
        other = -self
        return self if self.key() <= other.key() else other

    def __eq__(self, other):
        return (
            isinstance(other, ResidueMatrix)
            and (self.N, self.a, self.b, self.c, self.d)
            == (other.N, other.a, other.b, other.c, other.d)
        )

    def __hash__(self):
        return hash((self.N, self.a, self.b, self.c, self.d))

    def __str__(self):
        return format_matrix(self.entries())

    __repr__ = __str__


def decompose(m):
    """Write an SL2(Z) matrix as an STWord in S and T.

    Euclid on the bottom row: repeatedly strip T^q and S factors from the
    right until the bottom-left entry vanishes, then emit the remaining
    (+-)T^b prefix, with -1 rendered as S^2.
    """
    assert mat_det(m) == 1, "decompose needs determinant 1"
    m = [list(m[0]), list(m[1])]
    tail = []
    while m[1][0] != 0:
        c, d = m[1][0], m[1][1]
        # centered quotient keeps |d - qc| <= |c|/2, so the row shrinks geometrically
        q = d // c
        if 2 * abs(d - q * c) > abs(c):
            q += 1
        # m -> m * T^-q * S, recorded as tail word S^-1 T^q
        m = mat_mul(m, [[1, -q], [0, 1]])
        m = mat_mul(m, _S_MAT)
        tail.append(("T", q))
        tail.append(("S", -1))
    tokens = []
    if m[0][0] == 1:
        tokens.append(("T", m[0][1]))
    else:
        assert m[0][0] == -1
        tokens.append(("S", 2))
        tokens.append(("T", -m[0][1]))
    tokens.extend(reversed(tail))
    return STWord(tokens)


def lift(r, shift=0):
    """Lift a ResidueMatrix to an SL2(Z) matrix reducing to it mod N.

    shift = 0, 1, 2, ... selects successive lifts with different bottom rows,
    so independent lifts of the same residue matrix can be compared.
    """
    assert isinstance(r, ResidueMatrix)
    assert isinstance(shift, int) and shift >= 0
    N = r.N
    c = r.c if r.c != 0 else N
    d = r.d
    found = -1
    k = 0
    while True:
        if gcd(c, d + k * N) == 1:
            found += 1
            if found == shift:
                break
        k += 1
    d = d + k * N
    # complete (c, d) to an SL2(Z) matrix, then fix the top row mod N by CRT
    g, x, y = xgcd(d, -c)
    assert g == 1
    top = [x, y]
    t = 0
    modulus = 1
    for p, e in factorize(N).items():
        q = p**e
        if c % p != 0:
            s = (r.a - top[0]) * pow(c, -1, q) % q
        else:
            s = (r.b - top[1]) * pow(d, -1, q) % q
        g2, inv, _ = xgcd(modulus, q)
        t = (t + modulus * ((s - t) * inv % q)) % (modulus * q)
        modulus *= q
    out = [[top[0] + t * c, top[1] + t * d], [c, d]]
    assert mat_det(out) == 1
    assert all(
        (out[i][j] - r.entries()[i][j]) % N == 0 for i in range(2) for j in range(2)
    )
    return out


def idempotents(N):
    """Return {prime power q: c_q} with c_q = 1 mod q and 0 mod N/q, summing to 1 mod N."""
    assert isinstance(N, int) and N >= 2
    out = {}
    for p, e in factorize(N).items():
        q = p**e
        rest = N // q
        out[q] = rest * pow(rest, -1, q) % N
    assert sum(out.values()) % N == 1
    return out


def local_generators(N):
    """Return {prime power q: (T_word, S_word)} generating the mod-q factor of SL2(Z/NZ).

    T_q = T^c and S_q = T^m S T^m S T^m S^-1 with c the idempotent for q and
    m = 1 - c; S_q reduces to S mod q and to the identity mod N/q.
    """
    out = {}
    for q, c in idempotents(N).items():
        m = 1 - c
        t_word = STWord.T(c)
        s_word = STWord(
            [("T", m), ("S", 1), ("T", m), ("S", 1), ("T", m), ("S", -1)]
        )
        out[q] = (t_word, s_word)
    return out


def sl2_order(N):
    """Return |SL2(Z/NZ)|."""
    assert isinstance(N, int) and N >= 1
    out = N**3
    for p in factorize(N):
        out = out // (p * p) * (p * p - 1)
    return out


def complete_row(N, c, d):
    """Return (a, b) with a*d - b*c = 1 mod N, for a bottom row with gcd(c,d,N)=1."""
    # solve x*d - y*c = 1 per prime power, tracking (x, y) via CRT on each coordinate
    xs = []
    for p, e in factorize(N).items():
        q = p**e
        if d % p != 0:
            x, y = pow(d, -1, q), 0
        else:
            assert c % p != 0, "row is not unimodular"
            x, y = 0, -pow(c, -1, q) % q
        xs.append((q, x, y))
    a, b = 0, 0
    modulus = 1
    for q, x, y in xs:
        g2, inv, _ = xgcd(modulus, q)
        a = (a + modulus * ((x - a) * inv % q)) % (modulus * q)
        b = (b + modulus * ((y - b) * inv % q)) % (modulus * q)
        modulus *= q
    assert (a * d - b * c) % N == 1 % N
    return a % N, b % N


def unimodular_rows(N):
    """Yield all bottom rows (c, d) with gcd(c, d, N) = 1 in lexicographic order."""
    for c in range(N):
        for d in range(N):
            if gcd(gcd(c, d), N) == 1:
                yield c, d


def enumerate_group(N, bound=100):
    """Yield all of SL2(Z/NZ) as ResidueMatrix values, deterministically ordered."""
    assert N <= bound, f"enumeration bound exceeded: N = {N} > {bound}"
    for c, d in unimodular_rows(N):
        a0, b0 = complete_row(N, c, d)
        for t in range(N):
            yield ResidueMatrix(N, a0 + t * c, b0 + t * d, c, d)


def random_matrix(N, rng):
    """Return a uniformly random ResidueMatrix in SL2(Z/NZ) drawn from rng."""
    while True:
        c, d = rng.randrange(N), rng.randrange(N)
        if gcd(gcd(c, d), N) == 1:
            break
    a0, b0 = complete_row(N, c, d)
    t = rng.randrange(N)
    return ResidueMatrix(N, a0 + t * c, b0 + t * d, c, d)
