"""Reed-Muller codes and their bridge to extended cyclic codes.

RM(r, m) is generated by evaluations of Boolean monomials of degree <= r
over all 2^m input tuples.  Selecting the cyclotomic cosets whose index has
binary weight strictly between 0 and m-r yields a code of length 2^m - 1
that, extended by an overall parity bit and permuted by the discrete-log
map, coincides with RM(r, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .codes import bch_from_cosets, cyclotomic_cosets
from .gf2 import BinaryField, CyclicWord, poly_gcd, poly_mod, rotl


def rm_dimension(r: int, m: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def rm_generator_rows(r: int, m: int) -> list[int]:
    """Monomial evaluation rows; coordinate i carries the binary digits of i."""
    n_ext = 1 << m
    rows = []
    for deg in range(r + 1):
        for combo in combinations(range(m), deg):
            row = 0
            for i in range(n_ext):
                val = 1
                for t in combo:
                    val &= (i >> t) & 1
                row |= val << i
            rows.append(row)
    return rows


def rm_coset_leaders(m: int, r: int) -> set[int]:
    """Leaders of the cosets whose index weight lies strictly in (0, m-r)."""
    if not 0 <= r < m:
        raise ValueError("need 0 <= r < m")
    n = (1 << m) - 1
    table = cyclotomic_cosets(n)
    return {
        lead for lead in table.leaders
        if 0 < lead.bit_count() < m - r
    }


@dataclass(frozen=True)
class Permutation:
    """Coordinate map i -> discrete log of the element with digit vector i."""

    field: BinaryField
    mapping: tuple

    def __call__(self, i: int) -> int:
        return self.mapping[i]


def rm_permutation(field: BinaryField) -> Permutation:
    # The element whose polynomial-basis coefficients are the binary digits
    # of i is the integer i itself; its discrete log is the target position.
    mapping = tuple(
        field.log_table[i] if i else None for i in range(field.n + 1)
    )
    return Permutation(field, mapping)


def extend_and_permute(c: CyclicWord, perm: Permutation) -> int:
    """Prepend the overall parity and permute into RM coordinate order.

    Returns a 2^m-bit mask: bit 0 is the parity of c, bit j (j >= 1) is the
    coefficient of c at position perm(j).
    """
    n = c.n
    if n != perm.field.n:
        raise ValueError("length mismatch with permutation field")
    out = c.weight() & 1
    for j in range(1, n + 1):
        out |= ((c.bits >> perm(j)) & 1) << j
    return out


def _rref(rows: list[int]) -> list[int]:
    """Reduced row echelon form over GF(2), scanning low bits first."""
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row & -row
            pos = lead.bit_length() - 1
            if pos in basis:
                row ^= basis[pos]
            else:
                basis[pos] = row
                break
    # back-substitute so each pivot appears in exactly one row
    for pos in sorted(basis, reverse=True):
        for other in basis:
            if other != pos and (basis[other] >> pos) & 1:
                basis[other] ^= basis[pos]
    return [basis[p] for p in sorted(basis)]


def rmstar_generator_rows(r: int, m: int, field: BinaryField) -> list[int]:
    """Monomial rows of the punctured RM code in alpha-power coordinate order."""
    n = field.n
    rows = []
    for deg in range(r + 1):
        for combo in combinations(range(m), deg):
            row = 0
            for i in range(n):
                coeffs = field.antilog_table[i]
                val = 1
                for t in combo:
                    val &= (coeffs >> t) & 1
                row |= val << i
            rows.append(row)
    return rows


def rmstar_generator_poly(r: int, m: int, field: BinaryField) -> int:
    """Generator polynomial of the punctured, permuted RM code."""
    x_n_1 = (1 << field.n) | 1
    g = x_n_1
    for row in rmstar_generator_rows(r, m, field):
        if row:
            g = poly_gcd(g, row)
    return g


def verify_rm_equivalence(m: int, r: int, prim_poly: int | None = None) -> bool:
    """Row space of the extended, permuted cyclic code equals RM(r, m)."""
    field = BinaryField(m, prim_poly)
    leaders = rm_coset_leaders(m, r)
    code = bch_from_cosets(field, leaders)
    if code.k != rm_dimension(r, m):
        return False
    perm = rm_permutation(field)
    lifted = [
        extend_and_permute(CyclicWord(code.n, row), perm)
        for row in code.generator_rows()
    ]
    return _rref(lifted) == _rref(rm_generator_rows(r, m))


def verify_rmstar_cyclic(m: int, r: int, prim_poly: int | None = None,
                         trials: int = 200, rng=None) -> bool:
    """Cyclic shifts of punctured-RM codewords stay inside the code.

    Membership is tested by divisibility by the code's generator polynomial.
    Exhausts the code when small, otherwise samples random combinations.
    """
    field = BinaryField(m, prim_poly)
    rows = rmstar_generator_rows(r, m, field)
    g = rmstar_generator_poly(r, m, field)
    n = field.n
    k = len(rows)

    def word_in_code(bits: int) -> bool:
        return poly_mod(bits, g) == 0

    def shifts_ok(bits: int) -> bool:
        return all(word_in_code(rotl(bits, s, n)) for s in range(n))

    if k <= 16:
        masks = range(1 << k)
    else:
        if rng is None:
            raise ValueError("need an rng to sample a large code")
        masks = (int(rng.integers(0, 1 << min(k, 62))) for _ in range(trials))
    for mask in masks:
        bits = 0
        mm = mask
        while mm:
            low = mm & -mm
            bits ^= rows[low.bit_length() - 1]
            mm ^= low
        if not shifts_ok(bits):
            return False
    return True


def verify_generator_roots(m: int, r: int, prim_poly: int | None = None) -> bool:
    """Root set of the punctured-RM generator matches the coset rule.

    The roots must be exactly the alpha^h with 1 <= wt(h) <= m-r-1, and the
    root count must equal 2^m - 1 - dim RM(r, m).
    """
    field = BinaryField(m, prim_poly)
    g = rmstar_generator_poly(r, m, field)
    n = field.n
    roots = {h for h in range(n) if field.eval_poly(g, field.antilog_table[h % n]) == 0}
    expected = {h for h in range(1, n) if 1 <= h.bit_count() <= m - r - 1}
    if roots != expected:
        return False
    return len(roots) == n - rm_dimension(r, m)


def root_count_identity(m: int, r: int) -> bool:
    """sum_{i=1}^{m-r-1} C(m,i) == 2^m - 1 - sum_{i<=r} C(m,i), exactly."""
    lhs = sum(comb(m, i) for i in range(1, m - r))
    return lhs == (1 << m) - 1 - rm_dimension(r, m)
