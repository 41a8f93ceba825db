"""Per-position reliability from dual-code checks.

For a received word r and a check b, every coefficient of w = r*b mod
(x^n - 1) is the outcome of one shifted parity check.  Counting, for each
position j, how many of the shifted checks covering j came out violated
gives an integer unreliability score per position: positions carrying
errors collect systematically higher counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import LengthMismatchError, MixedWeightsError
from .gf2 import CyclicWord, cyclic_mul, rotl
from .wsearch import CheckSet


@dataclass(frozen=True)
class ViolationCounts:
    """Violated-check count per position; higher means less reliable."""

    counts: np.ndarray
    checkset_ref: str | None = None

    def __post_init__(self):
        self.counts.flags.writeable = False

    def __getitem__(self, j):
        return int(self.counts[j])

    def __len__(self):
        return len(self.counts)

    def rotated(self, s: int) -> "ViolationCounts":
        """Counts of the word rotated by s (covariance with rotation)."""
        return ViolationCounts(np.roll(self.counts, s), self.checkset_ref)


class _GatherEngine:
    """Precomputed index table turning check products into count vectors."""

    def __init__(self, checks: CheckSet):
        n = checks.n
        rows = []
        for ell, supp in enumerate(checks.supports()):
            base = ell * n
            for i in supp:
                rows.append([base + (j + i) % n for j in range(n)])
        self.n = n
        self.gather = np.asarray(rows, dtype=np.int64)
        self.nbytes = (n + 7) // 8

    def counts_from(self, w_list: list[int]) -> np.ndarray:
        flat = np.zeros(len(w_list) * self.n, dtype=np.uint8)
        nb, n = self.nbytes, self.n
        for ell, w in enumerate(w_list):
            bits = np.unpackbits(
                np.frombuffer(w.to_bytes(nb, "little"), dtype=np.uint8),
                bitorder="little",
            )[:n]
            flat[ell * n:(ell + 1) * n] = bits
        return flat[self.gather].sum(axis=0, dtype=np.int32)


def _engine_for(checks: CheckSet) -> _GatherEngine:
    eng = checks._engines.get("gather")
    if eng is None:
        eng = _GatherEngine(checks)
        checks._engines["gather"] = eng
    return eng


class ViolationTracker:
    """Incremental per-check product state for a working word.

    Holds w = word * b for every check b, so flipping positions costs one
    rotation XOR per (flip, check) instead of a full recomputation.
    """

    def __init__(self, word: CyclicWord, checks: CheckSet):
        if word.n != checks.n:
            raise LengthMismatchError("word and check lengths differ")
        self.checks = checks
        self.n = word.n
        self.word_bits = word.bits
        self._check_bits = [w.bits for w in checks.words]
        self.w_list = [cyclic_mul(word, b).bits for b in checks.words]

    def copy(self) -> "ViolationTracker":
        dup = object.__new__(ViolationTracker)
        dup.checks = self.checks
        dup.n = self.n
        dup.word_bits = self.word_bits
        dup._check_bits = self._check_bits
        dup.w_list = list(self.w_list)
        return dup

    def apply_flips(self, positions) -> None:
        n = self.n
        for j in positions:
            self.word_bits ^= 1 << (j % n)
            for ell, b in enumerate(self._check_bits):
                self.w_list[ell] ^= rotl(b, j, n)

    def all_satisfied(self) -> bool:
        return all(w == 0 for w in self.w_list)

    def counts(self) -> ViolationCounts:
        eng = _engine_for(self.checks)
        return ViolationCounts(eng.counts_from(self.w_list), self.checks.code_hash)

    def word(self) -> CyclicWord:
        return CyclicWord(self.n, self.word_bits)


def count_violations(r: CyclicWord, checks: CheckSet) -> ViolationCounts:
    """Violated-check counts for a received word.

    Invariant under which rotation of each check was supplied, and depends
    only on the error pattern, not the transmitted codeword.
    """
    return ViolationTracker(r, checks).counts()


def violations_after_flips(tracker: ViolationTracker, flips) -> ViolationCounts:
    """Counts after flipping the given positions, without mutating state."""
    scratch = tracker.copy()
    scratch.apply_flips(flips)
    return scratch.counts()


def flip_weight_changes(counts: ViolationCounts, checks: CheckSet) -> np.ndarray:
    """Total check-output weight change caused by flipping each position.

    Requires a uniform-weight check set; with L checks of weight d the value
    at position j is L*d - 2*counts[j].
    """
    d = checks.uniform_weight()
    if d is None:
        raise MixedWeightsError("flip weight change needs uniform check weights")
    return checks.size * d - 2 * np.asarray(counts.counts, dtype=np.int64)


@dataclass(frozen=True)
class ExpectedCheckStats:
    """Expected check statistics for weight-tau errors, in exact rationals.

    overlap_count is the number of weight-tau errors hitting a fixed
    check support an odd number of times; parity_tail is its final term.
    """

    n: int
    tau: int
    check_weight: int
    num_checks: int
    overlap_count: int
    parity_tail: int
    e_product_weight: Fraction
    e_count_error: Fraction
    e_count_correct: Fraction | None


def expected_check_stats(n: int, tau: int, check_weight: int,
                         num_checks: int) -> ExpectedCheckStats:
    """Expected product weight and per-position counts for random errors."""
    if not 1 <= tau <= n:
        raise ValueError("tau out of range")
    d = check_weight
    overlap = 0
    tail = 0
    for i in range(1, min(d, tau) + 1, 2):
        term = comb(d, i) * comb(n - d, tau - i)
        overlap += term
        tail = term
    e_omega = Fraction(n * overlap, comb(n, tau))
    e_err = e_omega * num_checks / tau
    e_cor = (
        e_omega * (d - 1) * num_checks / (n - tau) if tau < n else None
    )
    return ExpectedCheckStats(n, tau, d, num_checks, overlap, tail,
                              e_omega, e_err, e_cor)


def _random_error_bits(n: int, tau: int, rng) -> int:
    bits = 0
    for j in rng.choice(n, size=tau, replace=False):
        bits |= 1 << int(j)
    return bits


def separation_statistics(code, checks: CheckSet, tau: int, trials: int,
                          rng) -> tuple[float, float]:
    """Monte-Carlo separation of error and non-error count values.

    Returns the average fraction of error positions whose count exceeds
    every correct position's count, and the average fraction of correct
    positions whose count is below every error position's count.  Both are
    1.0 when the two populations separate completely.
    """
    n = code.n
    if tau == 0:
        return 1.0, 1.0
    err_sum = 0.0
    cor_sum = 0.0
    for _ in range(trials):
        ebits = _random_error_bits(n, tau, rng)
        counts = count_violations(CyclicWord(n, ebits), checks).counts
        mask = np.zeros(n, dtype=bool)
        for j in range(n):
            if (ebits >> j) & 1:
                mask[j] = True
        max_cor = counts[~mask].max()
        min_err = counts[mask].min()
        err_sum += float((counts[mask] > max_cor).sum()) / tau
        cor_sum += float((counts[~mask] < min_err).sum()) / (n - tau)
    return err_sum / trials, cor_sum / trials


def average_counts(code, checks: CheckSet, tau: int, trials: int,
                   rng) -> tuple[float, float]:
    """Simulated mean count at error and at correct positions."""
    n = code.n
    err_sum = 0.0
    cor_sum = 0.0
    for _ in range(trials):
        ebits = _random_error_bits(n, tau, rng)
        counts = count_violations(CyclicWord(n, ebits), checks).counts
        mask = np.zeros(n, dtype=bool)
        for j in range(n):
            if (ebits >> j) & 1:
                mask[j] = True
        err_sum += float(counts[mask].mean())
        cor_sum += float(counts[~mask].mean())
    return err_sum / trials, cor_sum / trials
