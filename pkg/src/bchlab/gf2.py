"""GF(2^m) arithmetic and binary polynomials modulo x^n - 1.

Field elements are integers whose binary digits are the coefficients over
GF(2) in the polynomial basis.  Words in the cyclic ring are plain ints as
well (bit j = coefficient of x^j), wrapped in :class:`CyclicWord` so the
ring length travels with the value.
"""

from __future__ import annotations

from .errors import LengthMismatchError, NotPrimitiveError, ZeroWordError

# Lexicographically smallest primitive polynomial per extension degree,
# re-validated at construction time.
DEFAULT_PRIMITIVE_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100000000101011,
    15: 0b1000000000000011,
    16: 0b10000000000101101,
}

MAX_M = 16


def poly_degree(p: int) -> int:
    """Degree of a GF(2) polynomial given as a bitmask; -1 for the zero poly."""
    return p.bit_length() - 1


def poly_mulmod_raw(a: int, b: int, mod: int, m: int) -> int:
    """Carry-less multiply of field elements reduced by `mod` of degree m."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & (1 << m):
            a ^= mod
    return acc


def clmul(a: int, b: int) -> int:
    """Carry-less (GF(2)) polynomial product of two bitmasks."""
    acc = 0
    while b:
        low = b & -b
        acc ^= a << (low.bit_length() - 1)
        b ^= low
    return acc


def poly_mod(a: int, b: int) -> int:
    """Remainder of GF(2) polynomial division a mod b."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = poly_degree(b)
    while a.bit_length() - 1 >= db and a:
        a ^= b << (a.bit_length() - 1 - db)
    return a

def poly_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of GF(2) polynomial division."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = poly_degree(b)
    q = 0
    while a.bit_length() - 1 >= db and a:
        shift = a.bit_length() - 1 - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def poly_gcd(a: int, b: int) -> int:
    """Greatest common divisor of two GF(2) polynomials (Euclid).

    The result is monic by construction (the only unit over GF(2) is 1).
    gcd(a, 0) = a.
    """
    while b:
        a, b = b, poly_mod(a, b)
    return a


class BinaryField:
    """GF(2^m) with log/antilog tables over a validated primitive polynomial.

    Immutable after construction; safe to share between workers.
    """

    def __init__(self, m: int, prim_poly: int | None = None):
        if not 2 <= m <= MAX_M:
            raise ValueError(f"extension degree m={m} out of range [2, {MAX_M}]")
        if prim_poly is None:
            prim_poly = DEFAULT_PRIMITIVE_POLYS[m]
        if poly_degree(prim_poly) != m:
            raise NotPrimitiveError(
                f"polynomial {prim_poly:#x} does not have degree {m}"
            )
        self.m = m
        self.prim_poly = prim_poly
        self.n = (1 << m) - 1

        # Build tables while checking that x has full multiplicative order.
        antilog = [0] * self.n
        log = [0] * (self.n + 1)
        x = 1
        for i in range(self.n):
            if x == 0 or (x == 1 and i > 0):
                raise NotPrimitiveError(
                    f"{prim_poly:#x} is not primitive: root order divides {i}"
                )
            antilog[i] = x
            log[x] = i
            x <<= 1
            if x & (1 << m):
                x ^= prim_poly
        if x != 1:
            raise NotPrimitiveError(f"{prim_poly:#x} is not primitive")
        # All n powers distinct and nonzero: the quotient ring is a field and
        # alpha generates its multiplicative group.
        self.antilog_table = antilog
        self.log_table = log

    def alpha_pow(self, i: int) -> int:
        """alpha^i, exponent taken mod 2^m - 1."""
        return self.antilog_table[i % self.n]

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of zero field element")
        return self.log_table[x]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog_table[(self.log_table[a] + self.log_table[b]) % self.n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.antilog_table[(self.n - self.log_table[a]) % self.n]

    def eval_poly(self, poly: int, x: int) -> int:
        """Evaluate a GF(2)-coefficient polynomial at a field element."""
        if x == 0:
            return poly & 1
        acc = 0
        lx = self.log_table[x]
        j = 0
        while poly:
            if poly & 1:
                acc ^= self.antilog_table[(lx * j) % self.n]
            poly >>= 1
            j += 1
        return acc

    def __repr__(self):
        return f"BinaryField(m={self.m}, prim_poly={self.prim_poly:#x})"

    def __eq__(self, other):
        return (
            isinstance(other, BinaryField)
            and self.m == other.m
            and self.prim_poly == other.prim_poly
        )

    def __hash__(self):
        return hash((self.m, self.prim_poly))


def field_new(m: int, prim_poly: int | None = None) -> BinaryField:
    """Construct GF(2^m); raises NotPrimitiveError for bad moduli."""
    return BinaryField(m, prim_poly)


def rotl(bits: int, s: int, n: int) -> int:
    """Rotate an n-bit word left by s (multiply by x^s mod x^n - 1)."""
    s %= n
    if s == 0:
        return bits
    mask = (1 << n) - 1
    return ((bits << s) | (bits >> (n - s))) & mask


def rotr(bits: int, s: int, n: int) -> int:
    return rotl(bits, n - (s % n), n)


class CyclicWord:
    """Binary polynomial modulo x^n - 1, stored as an int bitmask."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n <= 0:
            raise ValueError("ring length must be positive")
        self.n = n
        self.bits = bits & ((1 << n) - 1)

    @classmethod
    def from_support(cls, n: int, support) -> "CyclicWord":
        bits = 0
        for j in support:
            bits |= 1 << (j % n)
        return cls(n, bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [j for j in range(self.n) if (self.bits >> j) & 1]

    def shifted(self, s: int) -> "CyclicWord":
        """Multiply by x^s modulo x^n - 1."""
        return CyclicWord(self.n, rotl(self.bits, s, self.n))

    def __xor__(self, other: "CyclicWord") -> "CyclicWord":
        if self.n != other.n:
            raise LengthMismatchError("ring lengths differ")
        return CyclicWord(self.n, self.bits ^ other.bits)

    def __eq__(self, other):
        return (
            isinstance(other, CyclicWord)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.n, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"CyclicWord(n={self.n}, bits={self.bits:#x})"


def cyclic_mul(a: CyclicWord, b: CyclicWord) -> CyclicWord:
    """Product a*b mod x^n - 1.

    Computed as the XOR of cyclic shifts of the heavier operand over the
    support of the lighter one, so the cost scales with the small weight.
    """
    if a.n != b.n:
        raise LengthMismatchError(f"ring lengths differ: {a.n} != {b.n}")
    heavy, light = (a.bits, b.bits) if a.weight() >= b.weight() else (b.bits, a.bits)
    n = a.n
    acc = 0
    while light:
        low = light & -light
        acc ^= rotl(heavy, low.bit_length() - 1, n)
        light ^= low
    return CyclicWord(n, acc)


def canonical_rotation(w: CyclicWord) -> CyclicWord:
    """Deterministic orbit representative: the rotation with minimal value.

    The minimal rotation of a nonzero word always has bit 0 set (rotating a
    word with bit 0 clear one step right strictly decreases its value).
    """
    if w.bits == 0:
        raise ZeroWordError("zero word has no canonical rotation")
    best = w.bits
    cur = w.bits
    n = w.n
    mask = (1 << n) - 1
    for _ in range(n - 1):
        cur = ((cur << 1) | (cur >> (n - 1))) & mask
        if cur < best:
            best = cur
    return CyclicWord(n, best)
