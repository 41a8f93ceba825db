"""Channel models, Monte-Carlo campaigns, and the ML lower bound.

Hard campaigns sweep fixed error weights on a BSC; soft campaigns sweep
Eb/N0 on an AWGN/BPSK channel.  Per-trial randomness is derived by
counter-mode seed splitting, so results are bit-identical for a given
(config, seed) regardless of worker count or scheduling.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from hashlib import sha256
from math import comb

import numpy as np

from .codes import BchCode, code_spec_hash, encode_systematic
from .errors import ConfigError, InconsistentListError
from .gf2 import CyclicWord
from .hard import (
    DecodeOutcome,
    FlipPlan,
    decode_bounded_distance,
    decode_error_reduction,
    decode_information_set,
    decode_redundancy_set,
    evenly_spaced_shifts,
    flip_plan_by_weight,
)
from .reliability import count_violations
from .soft import awgn_sigma_sq, decode_soft_information_set
from .wsearch import CheckSet

CSV_HEADER = [
    "code", "decoder", "param_hash", "tau_or_snr", "trials",
    "failures", "p_fail", "ml_lb_mass", "seed",
]


@dataclass(frozen=True)
class ChannelConfig:
    """AWGN channel description; sigma_sq follows from Eb/N0 and the rate."""

    ebn0_db: float
    rate: float

    @property
    def sigma_sq(self) -> float:
        return awgn_sigma_sq(self.ebn0_db, self.rate)


def sample_error(n: int, tau: int, rng) -> CyclicWord:
    """Uniformly random word of weight exactly tau."""
    if not 0 <= tau <= n:
        raise ValueError("tau out of range")
    bits = 0
    if tau:
        for j in rng.choice(n, size=tau, replace=False):
            bits |= 1 << int(j)
    return CyclicWord(n, bits)


def wer_from_ptau(ptau: dict[int, float], n: int, p: float) -> float:
    """Word error rate on a BSC(p) from per-weight failure probabilities.

    Weights below the simulated range count as always decodable, weights
    above it as never decodable.
    """
    if not ptau:
        raise ValueError("empty p_tau table")
    lo, hi = min(ptau), max(ptau)
    total = 0.0
    for tau in range(1, n + 1):
        if tau < lo:
            pt = 0.0
        elif tau > hi:
            pt = 1.0
        else:
            pt = ptau.get(tau, 1.0)
        if pt:
            total += pt * comb(n, tau) * p**tau * (1.0 - p) ** (n - tau)
    return total


def ml_lb_update(true_c: CyclicWord, outcome: DecodeOutcome, tau: int,
                 received: CyclicWord | None = None) -> float:
    """Fractional error mass this trial contributes to the ML lower bound.

    A declared decoder failure counts as an ML success.  When the decoder's
    best distance ties the true error weight, the list rule applies: with
    list size s the mass is (s-1)/s if the transmitted word is listed, else
    s/(s+1).
    """
    if not outcome.ok:
        return 0.0
    est = outcome.est_errors
    if received is not None:
        for w in outcome.list:
            if (w.bits ^ received.bits).bit_count() != est:
                raise InconsistentListError("list member at a different distance")
    if est > tau:
        return 0.0
    if est < tau:
        return 1.0
    size = len(outcome.list)
    if any(w == true_c for w in outcome.list):
        return (size - 1) / size
    return size / (size + 1)


@dataclass
class HardDecoderConfig:
    decoder: str                 # "isd" | "erd" | "rsd" | "bdd"
    flip_weight: int = 2
    plan: FlipPlan | None = None
    max_iter: int = 50
    maxflip: int = 1
    mu: int | None = None
    shifts: int | list = 1
    rsd_flip_budget: int = 0
    bdd_radius: int | None = None

    def label(self) -> str:
        if self.decoder == "isd":
            return f"isd(w{self.flip_weight})"
        if self.decoder == "erd":
            return f"erd(maxflip{self.maxflip})"
        if self.decoder == "rsd":
            s = self.shifts if isinstance(self.shifts, int) else len(self.shifts)
            return f"rsd(mu{self.mu},s{s})"
        return f"bdd(t{self.bdd_radius})"


@dataclass
class SoftDecoderConfig:
    alpha: float = 0.0
    top_t: int | None = None
    flip_weight: int = 2
    plan: FlipPlan | None = None
    metric: str = "channel"

    def label(self) -> str:
        base = "isd-chan" if self.alpha == 0.0 else f"isd-dual(a{self.alpha},T{self.top_t})"
        return f"{base},w{self.flip_weight}" if self.plan is None else f"{base},plan{self.plan.size}"


@dataclass
class CampaignPoint:
    x: float                      # tau (hard) or Eb/N0 in dB (soft)
    trials: int
    failures: int
    ml_lb_mass: float
    diff_sqsum: float             # sum of (fail - ml)^2 per trial

    @property
    def p_fail(self) -> float:
        return self.failures / self.trials if self.trials else 0.0


@dataclass
class CampaignRecord:
    code_hash: str
    decoder: str
    kind: str                     # "hard-bsc" | "soft-awgn"
    params: dict
    seed: int
    points: list[CampaignPoint] = field(default_factory=list)
    wall_time_s: float = 0.0

    def param_hash(self) -> str:
        return sha256(
            json.dumps(self.params, sort_keys=True, default=str).encode()
        ).hexdigest()[:12]

    def ptau(self) -> dict[int, float]:
        return {int(pt.x): pt.p_fail for pt in self.points}

    def ml_ptau(self) -> dict[int, float]:
        return {int(pt.x): pt.ml_lb_mass / pt.trials for pt in self.points}


def write_campaign_csv(record: CampaignRecord, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        ph = record.param_hash()
        for pt in record.points:
            writer.writerow([
                record.code_hash, record.decoder, ph, repr(pt.x), pt.trials,
                pt.failures, repr(pt.p_fail), repr(pt.ml_lb_mass), record.seed,
            ])


def _random_info(k: int, rng) -> int:
    if k <= 62:
        return int(rng.integers(0, 1 << k, dtype=np.uint64))
    info = 0
    for i in range(k):
        info |= int(rng.integers(0, 2)) << i
    return info


def _trial_rng(seed: int, point: int, trial: int):
    return np.random.default_rng(np.random.SeedSequence([seed, point, trial]))


def _decode_hard(r: CyclicWord, code: BchCode, checks: CheckSet | None,
                 cfg: HardDecoderConfig, plan: FlipPlan | None,
                 shift_list, rng) -> DecodeOutcome:
    if cfg.decoder == "isd":
        counts = count_violations(r, checks)
        return decode_information_set(r, counts, code, plan, rng)
    if cfg.decoder == "erd":
        return decode_error_reduction(r, checks, cfg.max_iter, cfg.maxflip, rng)
    if cfg.decoder == "rsd":
        return decode_redundancy_set(r, code, checks, cfg.mu, shift_list,
                                     cfg.rsd_flip_budget, rng)
    if cfg.decoder == "bdd":
        t = cfg.bdd_radius
        if t is None:
            t = (code.d_designed - 1) // 2
        return decode_bounded_distance(r, code, t)
    raise ConfigError(f"unknown hard decoder {cfg.decoder!r}")


def _hard_point(args) -> CampaignPoint:
    (code, checks, cfg, plan, shift_list, tau, pidx, trials, seed,
     min_failures, max_trials) = args
    n, k = code.n, code.k
    failures = 0
    ml_mass = 0.0
    diff_sq = 0.0
    done = 0
    goal = trials
    while True:
        for i in range(done, goal):
            rng = _trial_rng(seed, pidx, i)
            c = encode_systematic(code, _random_info(k, rng))
            e = sample_error(n, tau, rng)
            r = c ^ e
            out = _decode_hard(r, code, checks, cfg, plan, shift_list, rng)
            fail = 0.0 if (out.ok and out.best == c) else 1.0
            ml = ml_lb_update(c, out, tau, received=r)
            failures += int(fail)
            ml_mass += ml
            diff_sq += (fail - ml) ** 2
        done = goal
        if (min_failures is None or failures >= min_failures
                or max_trials is None or done >= max_trials):
            break
        goal = min(max_trials, done + trials)
    return CampaignPoint(float(tau), done, failures, ml_mass, diff_sq)


def run_hard_campaign(code: BchCode, cfg: HardDecoderConfig, tau_range,
                      trials_per_tau: int, seed: int,
                      checks: CheckSet | None = None,
                      min_failures: int | None = None,
                      max_trials: int | None = None,
                      workers: int = 1) -> CampaignRecord:
    """p_tau sweep for one hard decoder; accumulates the ML lower bound."""
    if trials_per_tau < 1:
        raise ConfigError("trials_per_tau must be >= 1")
    taus = list(tau_range)
    if cfg.decoder in ("isd", "erd", "rsd") and checks is None:
        raise ConfigError(f"decoder {cfg.decoder!r} needs a check set")
    plan = cfg.plan
    if cfg.decoder == "isd" and plan is None:
        plan = flip_plan_by_weight(code.k, cfg.flip_weight)
    shift_list = cfg.shifts
    if isinstance(shift_list, int):
        shift_list = evenly_spaced_shifts(code.n, shift_list)
    t0 = time.perf_counter()
    jobs = [
        (code, checks, cfg, plan, shift_list, tau, pidx, trials_per_tau,
         seed, min_failures, max_trials)
        for pidx, tau in enumerate(taus)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            points = list(ex.map(_hard_point, jobs))
    else:
        points = [_hard_point(j) for j in jobs]
    return CampaignRecord(
        code_hash=code_spec_hash(code),
        decoder=cfg.label(),
        kind="hard-bsc",
        params={
            "decoder": cfg.decoder, "flip_weight": cfg.flip_weight,
            "max_iter": cfg.max_iter, "maxflip": cfg.maxflip, "mu": cfg.mu,
            "shifts": shift_list, "rsd_flip_budget": cfg.rsd_flip_budget,
            "bdd_radius": cfg.bdd_radius, "taus": taus,
            "trials": trials_per_tau, "min_failures": min_failures,
            "max_trials": max_trials,
        },
        seed=seed,
        points=points,
        wall_time_s=time.perf_counter() - t0,
    )


def _support_score(bits: int, ref: np.ndarray) -> float:
    total = 0.0
    while bits:
        low = bits & -bits
        total += ref[low.bit_length() - 1]
        bits ^= low
    return float(total)


def _soft_point(args) -> CampaignPoint:
    (code, checks, cfg, plan, ebn0, pidx, trials, seed,
     min_failures, max_trials) = args
    n, k = code.n, code.k
    sigma_sq = awgn_sigma_sq(ebn0, k / n)
    sigma = float(np.sqrt(sigma_sq))
    failures = 0
    ml_mass = 0.0
    diff_sq = 0.0
    done = 0
    goal = trials
    while True:
        for i in range(done, goal):
            rng = _trial_rng(seed, pidx, i)
            c = encode_systematic(code, _random_info(k, rng))
            x = np.empty(n)
            for j in range(n):
                x[j] = 1.0 - 2.0 * ((c.bits >> j) & 1)
            y = x + rng.normal(0.0, sigma, size=n)
            out = decode_soft_information_set(
                y, code, checks, sigma_sq, cfg.alpha, cfg.top_t, plan,
                metric=cfg.metric,
            )
            fail = 0.0 if out.best == c else 1.0
            best_score = _support_score(out.best.bits, y)
            true_score = _support_score(c.bits, y)
            if best_score < true_score:
                ml = 1.0
            elif best_score == true_score:
                size = len(out.list)
                in_list = any(w == c for w in out.list)
                ml = (size - 1) / size if in_list else size / (size + 1)
            else:
                ml = 0.0
            failures += int(fail)
            ml_mass += ml
            diff_sq += (fail - ml) ** 2
        done = goal
        if (min_failures is None or failures >= min_failures
                or max_trials is None or done >= max_trials):
            break
        goal = min(max_trials, done + trials)
    return CampaignPoint(float(ebn0), done, failures, ml_mass, diff_sq)


def run_soft_campaign(code: BchCode, checks: CheckSet | None,
                      cfg: SoftDecoderConfig, ebn0_list, trials: int,
                      seed: int, min_failures: int | None = None,
                      max_trials: int | None = None,
                      workers: int = 1) -> CampaignRecord:
    """WER sweep over Eb/N0 for soft list ISD; random codewords, fresh noise."""
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    if cfg.alpha != 0.0 and checks is None:
        raise ConfigError("alpha != 0 requires a check set")
    ebn0s = [float(x) for x in ebn0_list]
    plan = cfg.plan or flip_plan_by_weight(code.k, cfg.flip_weight)
    t0 = time.perf_counter()
    jobs = [
        (code, checks, cfg, plan, ebn0, pidx, trials, seed,
         min_failures, max_trials)
        for pidx, ebn0 in enumerate(ebn0s)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            points = list(ex.map(_soft_point, jobs))
    else:
        points = [_soft_point(j) for j in jobs]
    return CampaignRecord(
        code_hash=code_spec_hash(code),
        decoder=cfg.label(),
        kind="soft-awgn",
        params={
            "alpha": cfg.alpha, "top_t": cfg.top_t,
            "flip_weight": cfg.flip_weight,
            "plan_size": plan.size, "metric": cfg.metric,
            "ebn0": ebn0s, "trials": trials,
            "min_failures": min_failures, "max_trials": max_trials,
        },
        seed=seed,
        points=points,
        wall_time_s=time.perf_counter() - t0,
    )
