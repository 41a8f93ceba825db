"""Soft-decision list information set decoding with extrinsic check updates.

Channel reliabilities tanh(y/sigma^2) are optionally refined by every
rotation of the mined dual-code checks: each admitted check contributes
2*atanh(prod L / L_h) to its member positions, damped by alpha.  The
combined values rank positions for information set re-encoding; flip
patterns produce the candidate list and the squared-Euclidean metric picks
the winner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, log10

import numpy as np

from .codes import BchCode, code_spec_hash, encode_systematic
from .gf2 import CyclicWord
from .hard import DecodeOutcome, FlipPlan, _pivot_basis
from .wsearch import CheckSet

CLAMP_EPS = 1e-7


def awgn_sigma_sq(ebn0_db: float, rate: float) -> float:
    """Noise variance for BPSK at a given Eb/N0 (dB) and code rate."""
    esn0_db = ebn0_db - 10.0 * log10(1.0 / rate)
    return 1.0 / (2.0 * 10.0 ** (esn0_db / 10.0))


@dataclass(frozen=True)
class SoftReliability:
    """Combined reliability per position: sign = hard decision, magnitude = confidence."""

    values: np.ndarray

    def __post_init__(self):
        self.values.flags.writeable = False

    def hard_bits(self) -> int:
        """Bit mask of hard decisions (negative value -> bit 1)."""
        bits = 0
        for j, v in enumerate(self.values):
            if v < 0:
                bits |= 1 << j
        return bits

    def __len__(self):
        return len(self.values)


def channel_reliability(y, sigma_sq: float) -> SoftReliability:
    """Intrinsic reliabilities tanh(y / sigma^2), clamped inside (-1, 1)."""
    if sigma_sq <= 0:
        raise ValueError("sigma_sq must be positive")
    vals = np.tanh(np.asarray(y, dtype=np.float64) / sigma_sq)
    np.clip(vals, -1.0 + CLAMP_EPS, 1.0 - CLAMP_EPS, out=vals)
    return SoftReliability(vals)


class _RotationEngine:
    """Index matrices of all n rotations of every check, grouped by weight."""

    def __init__(self, checks: CheckSet):
        n = checks.n
        groups: dict[int, list[list[int]]] = {}
        for supp in checks.supports():
            rows = groups.setdefault(len(supp), [])
            for s in range(n):
                rows.append([(i + s) % n for i in supp])
        self.n = n
        self.groups = {
            d: np.asarray(rows, dtype=np.int64) for d, rows in groups.items()
        }


def _rotation_engine(checks: CheckSet) -> _RotationEngine:
    eng = checks._engines.get("rotations")
    if eng is None:
        eng = _RotationEngine(checks)
        checks._engines["rotations"] = eng
    return eng


def extrinsic_update(rel: SoftReliability, checks: CheckSet,
                     top_t: int | None, alpha: float):
    """Add damped extrinsic information from admitted check rotations.

    A rotation is admitted when at most one of its support positions falls
    outside the top_t most reliable positions (all rotations are admitted
    when top_t is None).  Returns the updated reliabilities and the number
    of admitted rotations.
    """
    vals = rel.values
    n = len(vals)
    sign = np.where(vals >= 0, 1.0, -1.0)
    guarded = sign * np.clip(np.abs(vals), CLAMP_EPS, 1.0 - CLAMP_EPS)
    if top_t is not None:
        order = sorted(range(n), key=lambda j: (-abs(vals[j]), j))
        outside = np.ones(n, dtype=bool)
        outside[order[:top_t]] = False
    eng = _rotation_engine(checks)
    phi = np.zeros(n, dtype=np.float64)
    admitted = 0
    for idx in eng.groups.values():
        if top_t is not None:
            keep = outside[idx].sum(axis=1) <= 1
            rows = idx[keep]
        else:
            rows = idx
        if rows.size == 0:
            continue
        v = guarded[rows]
        ratio = v.prod(axis=1)[:, None] / v
        np.clip(ratio, -1.0 + CLAMP_EPS, 1.0 - CLAMP_EPS, out=ratio)
        np.add.at(phi, rows.ravel(), 2.0 * np.arctanh(ratio).ravel())
        admitted += rows.shape[0]
    return SoftReliability(vals + alpha * phi), admitted


def _candidate_scores(cands: list[int], metric: np.ndarray, n: int) -> np.ndarray:
    # argmin sum_j (y_j - (-1)^c_j)^2 == argmin of sum of metric over support
    nbytes = (n + 7) // 8
    raw = b"".join(c.to_bytes(nbytes, "little") for c in cands)
    bits = np.unpackbits(
        np.frombuffer(raw, dtype=np.uint8).reshape(len(cands), nbytes),
        axis=1, bitorder="little",
    )[:, :n]
    return bits.astype(np.float64) @ metric


def decode_soft_information_set(y, code: BchCode, checks: CheckSet | None,
                                sigma_sq: float, alpha: float,
                                top_t: int | None, plan: FlipPlan,
                                metric: str = "channel") -> DecodeOutcome:
    """List ISD over soft reliabilities; alpha=0 reduces to channel-only ISD.

    metric="channel" scores candidates against the raw channel vector y;
    "combined" scores against the updated reliabilities instead.
    """
    y = np.asarray(y, dtype=np.float64)
    n, k = code.n, code.k
    rel = channel_reliability(y, sigma_sq)
    admitted = 0
    if alpha != 0.0:
        if checks is None:
            raise ValueError("alpha != 0 requires a check set")
        rel, admitted = extrinsic_update(rel, checks, top_t, alpha)
    vals = rel.values
    order = sorted(range(n), key=lambda j: (-abs(vals[j]), j))
    pivot_cols, basis = _pivot_basis(code.generator_rows(), order, k)
    hard = rel.hard_bits()
    base = 0
    for i, col in enumerate(pivot_cols):
        if (hard >> col) & 1:
            base ^= basis[i]
    cands = []
    for pattern in plan.patterns:
        c = base
        p = pattern
        while p:
            low = p & -p
            c ^= basis[low.bit_length() - 1]
            p ^= low
        cands.append(c)
    ref = y if metric == "channel" else vals
    scores = _candidate_scores(cands, ref, n)
    best_idx = int(np.argmin(scores))
    best_score = scores[best_idx]
    ties = [c for c, sc in zip(cands, scores) if sc == best_score]
    hard_y = sum(1 << j for j in range(n) if y[j] < 0)
    best = CyclicWord(n, cands[best_idx])
    return DecodeOutcome(
        best=best,
        list=[CyclicWord(n, c) for c in ties],
        est_errors=(cands[best_idx] ^ hard_y).bit_count(),
        diagnostics={"admitted": admitted, "score": float(best_score)},
    )


@dataclass
class ErrorRankStats:
    """Relative frequency of (error count, best-error rank) in the info set.

    Cell (tau, rank) counts trials where exactly tau information-set
    positions were wrong and the most reliable wrong one sat at the given
    reliability rank (0 = most reliable).
    """

    k: int
    trials: int
    cells: dict[tuple[int, int], float]
    context: dict = field(default_factory=dict)

    @property
    def total_mass(self) -> float:
        return sum(self.cells.values())

    def row_mass(self, tau: int) -> float:
        return sum(v for (t, _), v in self.cells.items() if t == tau)


def simulate_error_ranks(code: BchCode, checks: CheckSet | None,
                         ebn0_db: float, alpha: float, top_t: int | None,
                         trials: int, rng) -> ErrorRankStats:
    """Monte-Carlo estimate of information-set error positions at one SNR."""
    n, k = code.n, code.k
    sigma_sq = awgn_sigma_sq(ebn0_db, k / n)
    sigma = np.sqrt(sigma_sq)
    counts: dict[tuple[int, int], int] = {}
    gen_rows = code.generator_rows()
    for _ in range(trials):
        info = int(rng.integers(0, 1 << k, dtype=np.uint64)) if k <= 63 else None
        if info is None:
            info = 0
            for i in range(k):
                info |= int(rng.integers(0, 2)) << i
        cbits = encode_systematic(code, info).bits
        x = np.array([1.0 - 2.0 * ((cbits >> j) & 1) for j in range(n)])
        y = x + rng.normal(0.0, sigma, size=n)
        rel = channel_reliability(y, sigma_sq)
        if alpha != 0.0 and checks is not None:
            rel, _ = extrinsic_update(rel, checks, top_t, alpha)
        vals = rel.values
        order = sorted(range(n), key=lambda j: (-abs(vals[j]), j))
        pivot_cols, _ = _pivot_basis(gen_rows, order, k)
        hard = rel.hard_bits()
        wrong = [i for i, col in enumerate(pivot_cols)
                 if ((hard >> col) & 1) != ((cbits >> col) & 1)]
        if wrong:
            key = (len(wrong), min(wrong))
            counts[key] = counts.get(key, 0) + 1
    cells = {key: cnt / trials for key, cnt in counts.items()}
    return ErrorRankStats(
        k=k, trials=trials, cells=cells,
        context={
            "code": code_spec_hash(code),
            "ebn0_db": ebn0_db,
            "alpha": alpha,
            "top_t": top_t,
            "sigma_sq": sigma_sq,
        },
    )


def plan_flips(stats: ErrorRankStats, budget: int) -> tuple[FlipPlan, float]:
    """Greedy flip-pattern selection from an error-rank matrix.

    Families of patterns of weight w on the s_w least reliable ranks cover
    exactly the cells (w, rank >= k - s_w); the greedy loop grows whichever
    family buys the most mass per extra pattern until the budget (total list
    size including the zero pattern) is spent.  Returns the plan and the
    residual uncovered mass, which estimates the word error rate.
    """
    if budget < 1:
        raise ValueError("budget must allow at least the zero pattern")
    k = stats.k
    taus = sorted({t for (t, _) in stats.cells})
    mass = {t: [0.0] * k for t in taus}
    for (t, rank), v in stats.cells.items():
        mass[t][rank] += v
    depth = {t: 0 for t in taus}  # s_w per family
    spent = 0
    avail = budget - 1
    while True:
        best = None
        for t in taus:
            s = depth[t]
            nxt = None
            for s2 in range(s + 1, k + 1):
                if mass[t][k - s2] > 0.0:
                    nxt = s2
                    break
            if nxt is None:
                continue
            cost = comb(nxt, t) - comb(s, t)
            if spent + cost > avail:
                continue
            gain = mass[t][k - nxt]
            # cost 0 happens only for structurally empty cells (rank > k - t)
            ratio = gain / cost if cost else float("inf")
            if best is None or ratio > best[0] or (ratio == best[0] and t < best[1]):
                best = (ratio, t, nxt, cost)
        if best is None:
            break
        _, t, nxt, cost = best
        depth[t] = nxt
        spent += cost
    patterns = [0]
    for t in taus:
        s = depth[t]
        if s < t:
            continue
        for combo in combinations(range(k - s, k), t):
            m = 0
            for i in combo:
                m |= 1 << i
            patterns.append(m)
    covered = sum(
        mass[t][rank] for t in taus for rank in range(k - depth[t], k)
    )
    wer_est = stats.total_mass - covered
    return FlipPlan(k, patterns, provenance="planned"), wer_est
