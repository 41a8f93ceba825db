"""Hard-decision decoders driven by check-based reliability.

Three strategies over the same per-position violation counts: iteratively
flipping the least reliable positions (error reduction), re-encoding from
the most reliable positions (information set decoding with flip patterns),
and solving for the errors inside a fixed systematic window (redundancy
set decoding with cyclic shifts).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .codes import BchCode, SystematicBasis, encode_systematic, systematic_basis
from .gf2 import CyclicWord, poly_mod, rotl, rotr
from .reliability import ViolationCounts, ViolationTracker, count_violations
from .wsearch import CheckSet


@dataclass
class DecodeOutcome:
    best: CyclicWord | None
    list: list[CyclicWord] = field(default_factory=list)
    est_errors: int | None = None
    status: str = "success"
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "success"


@dataclass
class FlipPlan:
    """Ordered flip patterns over information-set ranks (bit i = rank i).

    Rank 0 is the most reliable selected position.  The zero pattern comes
    first so the plain re-encode is always in the candidate list.
    """

    k: int
    patterns: list[int]
    provenance: str = "by-weight"

    def __post_init__(self):
        if not self.patterns or self.patterns[0] != 0:
            raise ValueError("zero pattern must come first")
        if len(set(self.patterns)) != len(self.patterns):
            raise ValueError("flip patterns must be distinct")

    @property
    def size(self) -> int:
        return len(self.patterns)


def flip_plan_by_weight(k: int, max_w: int) -> FlipPlan:
    """All k-bit masks of weight <= max_w, by weight then lexicographically."""
    if not 0 <= max_w <= k:
        raise ValueError("max_w out of range")
    patterns = [0]
    for w in range(1, max_w + 1):
        for combo in combinations(range(k), w):
            mask = 0
            for i in combo:
                mask |= 1 << i
            patterns.append(mask)
    return FlipPlan(k, patterns, provenance=f"by-weight({max_w})")


def _reliability_order(counts, n: int) -> list[int]:
    # Most reliable (smallest count) first; ties by ascending position.
    return sorted(range(n), key=lambda j: (counts[j], j))


def _pivot_basis(rows: list[int], col_order: list[int], k: int):
    """Greedy pivot columns scanning col_order; returns (cols, reduced rows).

    The i-th returned row has a 1 at the i-th pivot column and 0 at every
    other pivot column, so re-encoding from pivot values is a plain XOR.
    """
    work = list(rows)
    used = [False] * len(work)
    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    for col in col_order:
        bit = 1 << col
        sel = -1
        for ri in range(len(work)):
            if not used[ri] and work[ri] & bit:
                sel = ri
                break
        if sel < 0:
            continue
        used[sel] = True
        prow = work[sel]
        for ri in range(len(work)):
            if ri != sel and work[ri] & bit:
                work[ri] ^= prow
        # Clear this column from earlier pivot rows as well.
        for pi in range(len(pivot_rows)):
            if pivot_rows[pi] & bit:
                pivot_rows[pi] ^= prow
        pivot_cols.append(col)
        pivot_rows.append(prow)
        if len(pivot_cols) == k:
            break
    return pivot_cols, pivot_rows


def decode_information_set(r: CyclicWord, counts: ViolationCounts,
                           code: BchCode, plan: FlipPlan,
                           rng=None) -> DecodeOutcome:
    """Re-encode from the most reliable positions under every flip pattern.

    Columns of the generator matrix are ranked by the violation counts and
    the greedy pivot columns become the information set; each pattern flips
    some of those positions before re-encoding.  Returns the candidate(s)
    at minimum Hamming distance from r; never fails.
    """
    n, k = code.n, code.k
    order = _reliability_order(counts.counts, n)
    pivot_cols, basis = _pivot_basis(code.generator_rows(), order, k)
    base = 0
    for i, col in enumerate(pivot_cols):
        if (r.bits >> col) & 1:
            base ^= basis[i]
    best_dist = n + 1
    best_cands: list[int] = []
    for pattern in plan.patterns:
        cand = base
        p = pattern
        while p:
            low = p & -p
            cand ^= basis[low.bit_length() - 1]
            p ^= low
        dist = (cand ^ r.bits).bit_count()
        if dist < best_dist:
            best_dist = dist
            best_cands = [cand]
        elif dist == best_dist:
            best_cands.append(cand)
    pick = 0 if rng is None else int(rng.integers(len(best_cands)))
    cands = [CyclicWord(n, c) for c in best_cands]
    return DecodeOutcome(
        best=cands[pick],
        list=cands,
        est_errors=best_dist,
        diagnostics={"patterns": plan.size, "info_set": pivot_cols},
    )


def decode_error_reduction(r: CyclicWord, checks: CheckSet, max_iter: int,
                           maxflip: int = 1, rng=None) -> DecodeOutcome:
    """Iteratively flip the positions with the highest violation count.

    Stops as soon as every check product vanishes; declares failure after
    max_iter iterations.  When more than maxflip positions tie at the
    maximum, a random subset of that size is flipped.
    """
    tracker = ViolationTracker(r, checks)
    iters = 0
    while iters < max_iter:
        if tracker.all_satisfied():
            break
        counts = tracker.counts().counts
        top = counts.max()
        hot = [j for j in range(len(counts)) if counts[j] == top]
        if len(hot) > maxflip:
            if rng is None:
                hot = hot[:maxflip]
            else:
                idx = rng.choice(len(hot), size=maxflip, replace=False)
                hot = [hot[int(i)] for i in idx]
        tracker.apply_flips(hot)
        iters += 1
    if not tracker.all_satisfied():
        return DecodeOutcome(best=None, status="failure",
                             diagnostics={"iterations": iters})
    word = tracker.word()
    return DecodeOutcome(
        best=word,
        list=[word],
        est_errors=(word.bits ^ r.bits).bit_count(),
        diagnostics={"iterations": iters},
    )


def evenly_spaced_shifts(n: int, count: int) -> list[int]:
    """count rotations spread evenly around the ring (pigeonhole coverage)."""
    if count < 1:
        raise ValueError("need at least one shift")
    return [(i * n) // count for i in range(count)]


def _sys_basis(code: BchCode) -> SystematicBasis:
    sb = code.__dict__.get("_sys_basis")
    if sb is None:
        sb = systematic_basis(code)
        code.__dict__["_sys_basis"] = sb
    return sb


def _solve_window(m_rows: list[int], width: int, mu: int):
    """Tagged GF(2) elimination; pivots scan columns in reliability order."""
    rows = [(m_rows[a], 1 << a) for a in range(mu)]
    pivots: list[int] = []
    for col in range(width):
        bit = 1 << col
        sel = -1
        for ri in range(len(pivots), mu):
            if rows[ri][0] & bit:
                sel = ri
                break
        if sel < 0:
            continue
        # move pivot row into position len(pivots)
        tgt = len(pivots)
        rows[sel], rows[tgt] = rows[tgt], rows[sel]
        pm, pt = rows[tgt]
        for ri in range(mu):
            if ri != tgt and rows[ri][0] & bit:
                rows[ri] = (rows[ri][0] ^ pm, rows[ri][1] ^ pt)
        pivots.append(col)
        if len(pivots) == mu:
            break
    tags = [rows[i][1] for i in range(len(pivots))]
    return pivots, tags


def decode_redundancy_set(r_bar: CyclicWord, code: BchCode, checks: CheckSet,
                          mu: int | None = None, shifts=(0,),
                          flip_budget: int = 0, rng=None) -> DecodeOutcome:
    """Solve for systematic-window errors from reliable redundancy values.

    Per shift s the received word is rotated, a codeword re-encoded from its
    systematic part is subtracted (zeroing positions n-k..n-1), and a
    mu x mu system ties the mu least reliable systematic positions to the mu
    most reliable redundancy positions.  Singular selections are repaired by
    advancing to the next reliable columns.  Candidates from all shifts and
    optional flips of the redundancy values compete by distance to r_bar.
    """
    n, k = code.n, code.k
    if mu is None:
        mu = (k + 1) // 2
    if not 1 <= mu <= min(k, n - k):
        raise ValueError(f"mu={mu} out of range [1, {min(k, n - k)}]")
    sb = _sys_basis(code)
    base_counts = count_violations(r_bar, checks).counts
    nk = n - k

    flip_masks = [0]
    if flip_budget > 0:
        for w in range(1, mu + 1):
            for combo in combinations(range(mu), w):
                m = 0
                for i in combo:
                    m |= 1 << i
                flip_masks.append(m)
                if len(flip_masks) > flip_budget:
                    break
            if len(flip_masks) > flip_budget:
                break
        flip_masks = flip_masks[: flip_budget + 1]

    seen: dict[int, int] = {}
    for s in shifts:
        rbs = rotl(r_bar.bits, s, n)
        info_mask = rbs >> nk
        cw = encode_systematic(code, info_mask).bits
        r0 = rbs ^ cw
        counts_s = [base_counts[(j - s) % n] for j in range(n)]
        # systematic indices by descending count, redundancy by ascending
        sys_idx = sorted(range(k), key=lambda a: (-counts_s[nk + a], a))
        red_idx = sorted(range(nk), key=lambda b: (counts_s[b], b))
        rows = []
        for a in sys_idx[:mu]:
            packed = 0
            gr = sb.gr_rows[a]
            for b, col in enumerate(red_idx):
                packed |= ((gr >> col) & 1) << b
            rows.append(packed)
        pivots, tags = _solve_window(rows, nk, mu)
        r_g = 0
        for i, p in enumerate(pivots):
            r_g |= ((r0 >> red_idx[p]) & 1) << i
        for fmask in flip_masks:
            vals = r_g ^ (fmask & ((1 << len(pivots)) - 1))
            eps = 0
            v = vals
            while v:
                low = v & -v
                eps ^= tags[low.bit_length() - 1]
                v ^= low
            e_sys = 0
            ee = eps
            while ee:
                low = ee & -ee
                e_sys |= 1 << sys_idx[low.bit_length() - 1]
                ee ^= low
            cand_shifted = cw ^ encode_systematic(code, e_sys).bits
            cand = rotr(cand_shifted, s, n)
            dist = (cand ^ r_bar.bits).bit_count()
            if cand not in seen or dist < seen[cand]:
                seen[cand] = dist
    if not seen:
        return DecodeOutcome(best=None, status="failure")
    best_dist = min(seen.values())
    cands = sorted(c for c, d in seen.items() if d == best_dist)
    pick = 0 if rng is None else int(rng.integers(len(cands)))
    words = [CyclicWord(n, c) for c in cands]
    return DecodeOutcome(
        best=words[pick],
        list=words,
        est_errors=best_dist,
        diagnostics={"shifts": list(shifts), "mu": mu},
    )


def decode_bounded_distance(r: CyclicWord, code: BchCode, t: int) -> DecodeOutcome:
    """Brute-force bounded-distance oracle: nearest codeword within radius t.

    Meet-in-the-middle over single-position remainders mod g; intended as a
    test baseline for moderate n and t, not as a production decoder.
    """
    n, g = code.n, code.g
    syndrome = poly_mod(r.bits, g)
    if syndrome == 0:
        return DecodeOutcome(best=r, list=[r], est_errors=0,
                             diagnostics={"t": t})
    rems = [poly_mod(1 << j, g) for j in range(n)]
    t1 = t // 2
    half: dict[int, int] = {0: 0}
    for w in range(1, t1 + 1):
        for combo in combinations(range(n), w):
            acc = 0
            mask = 0
            for j in combo:
                acc ^= rems[j]
                mask |= 1 << j
            half.setdefault(acc, mask)
    for w in range(0, t - t1 + 1):
        for combo in combinations(range(n), w):
            acc = syndrome
            mask = 0
            for j in combo:
                acc ^= rems[j]
                mask |= 1 << j
            other = half.get(acc)
            if other is not None:
                e = mask ^ other
                if e.bit_count() <= t:
                    c = CyclicWord(n, r.bits ^ e)
                    return DecodeOutcome(best=c, list=[c],
                                         est_errors=e.bit_count(),
                                         diagnostics={"t": t})
    return DecodeOutcome(best=None, status="failure", diagnostics={"t": t})
