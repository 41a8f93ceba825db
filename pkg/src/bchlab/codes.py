"""Cyclotomic cosets, BCH code construction, and systematic encoding."""

from __future__ import annotations

import hashlib
import json

from .errors import BadLengthError, InvalidLeaderError
from .gf2 import (
    BinaryField,
    CyclicWord,
    clmul,
    poly_degree,
    poly_divmod,
    poly_mod,
)


class CosetTable:
    """Partition of {0, ..., n-1} into cyclotomic cosets mod n."""

    def __init__(self, n: int, cosets: dict[int, tuple[int, ...]]):
        self.n = n
        self.cosets = cosets
        self.leaders = tuple(sorted(cosets))

    def leader_of(self, i: int) -> int:
        i %= self.n
        members = {i}
        j = (i * 2) % self.n
        while j != i:
            members.add(j)
            j = (j * 2) % self.n
        return min(members)

    def __repr__(self):
        return f"CosetTable(n={self.n}, leaders={list(self.leaders)})"


def cyclotomic_cosets(n: int) -> CosetTable:
    """All cyclotomic cosets K_i = {i * 2^j mod n} with minimal-member leaders."""
    if n <= 0 or (n + 1) & n != 0:
        raise BadLengthError(f"n={n} is not of the form 2^m - 1")
    seen = [False] * n
    cosets: dict[int, tuple[int, ...]] = {}
    for i in range(n):
        if seen[i]:
            continue
        members = []
        j = i
        while not seen[j]:
            seen[j] = True
            members.append(j)
            j = (j * 2) % n
        cosets[i] = tuple(sorted(members))
    return CosetTable(n, cosets)


def designed_distance(exponents, n: int, wrap: bool = True) -> int:
    """BCH-bound distance: 1 + longest run of consecutive exponents in the set.

    With wrap=True runs are taken mod n (a run may cross n-1 -> 0), which is
    the form the bound actually supports for cyclic codes.  wrap=False scans
    0..n with both ends standing for the zero exponent and no wraparound,
    the convention reference parameter listings for these codes use.
    """
    members = set(j % n for j in exponents)
    if not members:
        return 1
    if len(members) == n:
        return n + 1
    best = 0
    if wrap:
        # Start scanning just after a gap; total work stays O(n).
        run = 0
        start = next(j for j in range(n) if j not in members)
        for off in range(1, n + 1):
            if (start + off) % n in members:
                run += 1
                if run > best:
                    best = run
            else:
                run = 0
    else:
        run = 0
        for j in range(n + 1):
            if j % n in members:
                run += 1
                if run > best:
                    best = run
            else:
                run = 0
    return best + 1


class BchCode:
    """Binary BCH code selected by a union of cyclotomic cosets.

    Attributes
    ----------
    field : BinaryField
    selected_leaders : tuple of chosen coset leaders
    exponents : frozenset, union of the chosen cosets (root exponents of g)
    g, h : generator and check polynomial bitmasks, g*h = x^n - 1
    n, k : length and dimension
    d_designed : BCH-bound distance from the exponent runs
    """

    def __init__(self, field: BinaryField, selected_leaders, cosets: CosetTable,
                 exponents: frozenset[int], g: int, h: int):
        self.field = field
        self.cosets = cosets
        self.selected_leaders = tuple(sorted(selected_leaders))
        self.exponents = exponents
        self.g = g
        self.h = h
        self.n = field.n
        self.k = self.n - poly_degree(g) if g else self.n
        self.d_designed = designed_distance(exponents, self.n)
        self.delta_true: int | None = None  # filled in by weight search

    def contains(self, word: CyclicWord) -> bool:
        return poly_mod(word.bits, self.g) == 0

    def generator_rows(self) -> list[int]:
        """Rows x^j * g(x), j = 0..k-1, as n-bit ints."""
        return [self.g << j for j in range(self.k)]

    def __repr__(self):
        return (
            f"BchCode(n={self.n}, k={self.k}, d={self.d_designed}, "
            f"leaders={list(self.selected_leaders)})"
        )


def minimal_polynomial(field: BinaryField, coset_members) -> int:
    """prod_{j in coset} (x - alpha^j); coefficients land in GF(2)."""
    poly = [1]  # coefficient list over the field, degree ascending
    for j in coset_members:
        root = field.alpha_pow(j)
        nxt = [0] * (len(poly) + 1)
        for deg, coef in enumerate(poly):
            if coef == 0:
                continue
            nxt[deg + 1] ^= coef
            nxt[deg] ^= field.mul(coef, root)
        poly = nxt
    bits = 0
    for deg, coef in enumerate(poly):
        if coef not in (0, 1):
            raise AssertionError("minimal polynomial has non-binary coefficient")
        bits |= coef << deg
    return bits


def bch_from_cosets(field: BinaryField, leaders) -> BchCode:
    """BCH code with generator g(x) = prod over the selected cosets."""
    table = cyclotomic_cosets(field.n)
    leaders = sorted(set(leaders))
    exps: set[int] = set()
    g = 1
    for lead in leaders:
        if lead not in table.cosets:
            raise InvalidLeaderError(f"{lead} is not a coset leader for n={field.n}")
        members = table.cosets[lead]
        exps.update(members)
        g = clmul(g, minimal_polynomial(field, members))
    x_n_1 = (1 << field.n) | 1  # x^n - 1 over GF(2)
    h, rem = poly_divmod(x_n_1, g)
    if rem != 0:
        raise AssertionError("generator does not divide x^n - 1")
    return BchCode(field, leaders, table, frozenset(exps), g, h)


def dual_code(code: BchCode) -> BchCode:
    """The check code generated by h, i.e. the annihilator of the code.

    Its codewords b satisfy c(x) b(x) = 0 mod (x^n - 1) for every codeword c.
    It is the BCH code on the complementary coset selection, so its weight
    data coincide with the classical dual's.
    """
    complement = [l for l in code.cosets.leaders if l not in code.selected_leaders]
    return bch_from_cosets(code.field, complement)


class SystematicBasis:
    """Generator matrix in the form (G_R | I_k) on positions n-k..n-1.

    Row ell - (n-k) of G_R holds the coefficients of rem(x^ell, g); the full
    row, a codeword, is that remainder plus x^ell.
    """

    def __init__(self, code: BchCode):
        n, k, g = code.n, code.k, code.g
        self.code = code
        self.n, self.k = n, k
        self.positions = tuple(range(n - k, n))
        self.gr_rows = [poly_mod(1 << ell, g) for ell in range(n - k, n)]
        self.rows = [r | (1 << ell) for r, ell in zip(self.gr_rows, self.positions)]

    def gr_entry(self, row: int, col: int) -> int:
        return (self.gr_rows[row] >> col) & 1


def systematic_basis(code: BchCode) -> SystematicBasis:
    return SystematicBasis(code)


def encode_systematic(code: BchCode, info) -> CyclicWord:
    """Codeword with the k info bits at positions n-k..n-1.

    `info` is an iterable of k bits or a k-bit int mask.
    """
    n, k = code.n, code.k
    if isinstance(info, int):
        mask = info & ((1 << k) - 1)
    else:
        bits = list(info)
        if len(bits) != k:
            raise ValueError(f"expected {k} info bits, got {len(bits)}")
        mask = 0
        for i, b in enumerate(bits):
            mask |= (b & 1) << i
    c_i = mask << (n - k)
    c_r = poly_mod(c_i, code.g)
    return CyclicWord(n, c_i | c_r)


def gf2_rank(rows, n_cols: int | None = None) -> int:
    """Rank over GF(2) of rows given as int bitmasks."""
    work = sorted((r for r in rows if r), reverse=True)
    rank = 0
    basis: list[int] = []
    for r in work:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
            rank += 1
    return rank


def is_information_set(code: BchCode, positions) -> bool:
    """True iff the selected k columns of the generator matrix have rank k."""
    positions = sorted(set(positions))
    if len(positions) != code.k:
        raise ValueError(f"expected {code.k} distinct positions")
    cols = []
    for row in code.generator_rows():
        packed = 0
        for i, p in enumerate(positions):
            packed |= ((row >> p) & 1) << i
        cols.append(packed)
    return gf2_rank(cols) == code.k


def coset_selections(table: CosetTable, k: int) -> list[tuple[int, ...]]:
    """All leader subsets whose coset union leaves dimension k."""
    target = table.n - k
    leaders = list(table.leaders)
    sizes = [len(table.cosets[l]) for l in leaders]
    out: list[tuple[int, ...]] = []

    def rec(idx: int, left: int, picked: tuple):
        if left == 0:
            out.append(picked)
            return
        if idx == len(leaders) or left < 0:
            return
        rec(idx + 1, left - sizes[idx], picked + (leaders[idx],))
        rec(idx + 1, left, picked)

    rec(0, target, ())
    return out


# ---------------------------------------------------------------------------
# Code-spec files: {"m": int, "prim_poly": int, "leaders": [int], "name": str}
# ---------------------------------------------------------------------------

def code_spec_dict(code: BchCode, name: str = "") -> dict:
    return {
        "m": code.field.m,
        "prim_poly": code.field.prim_poly,
        "leaders": list(code.selected_leaders),
        "name": name,
    }


def code_from_spec(spec: dict) -> BchCode:
    field = BinaryField(int(spec["m"]), int(spec["prim_poly"]))
    return bch_from_cosets(field, [int(x) for x in spec["leaders"]])


def load_code_spec(path) -> BchCode:
    with open(path) as fh:
        return code_from_spec(json.load(fh))


def save_code_spec(code: BchCode, path, name: str = "") -> None:
    with open(path, "w") as fh:
        json.dump(code_spec_dict(code, name), fh, indent=2)
        fh.write("\n")


def code_spec_hash(code: BchCode) -> str:
    """Stable identity of (prim_poly, leaders); keys caches and manifests."""
    blob = json.dumps(
        {
            "m": code.field.m,
            "prim_poly": code.field.prim_poly,
            "leaders": list(code.selected_leaders),
        },
        sort_keys=True,
    ).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
