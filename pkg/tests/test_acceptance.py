"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s`.  Statistical criteria use
fixed seeds and the stated trial counts and tolerances.
"""

import json
import os
from math import comb

import numpy as np
import pytest

from bchlab.codes import (
    bch_from_cosets,
    coset_selections,
    cyclotomic_cosets,
    designed_distance,
    dual_code,
    encode_systematic,
    systematic_basis,
)
from bchlab.gf2 import BinaryField, CyclicWord, cyclic_mul, rotl
from bchlab.hard import (
    decode_redundancy_set,
    flip_plan_by_weight,
)
from bchlab.harness import (
    HardDecoderConfig,
    run_hard_campaign,
    wer_from_ptau,
)
from bchlab.reliability import count_violations, expected_check_stats
from bchlab.rm import (
    rm_permutation,
    root_count_identity,
    verify_generator_roots,
    verify_rm_equivalence,
)
from bchlab.soft import (
    awgn_sigma_sq,
    channel_reliability,
    decode_soft_information_set,
    extrinsic_update,
    plan_flips,
    simulate_error_ranks,
)
from bchlab.wsearch import (
    build_check_set,
    check_polynomial_set,
    load_check_cache,
    min_weight_search,
)

REF_63_31 = [
    ("C1", [5, 9, 11, 13, 21, 23, 27], 12, 10, 5, 8, 6),
    ("C2", [1, 3, 5, 9, 13, 21, 27], 12, 12, 35, 7, 10),
    ("C3", [1, 5, 7, 9, 13, 21, 27], 12, 12, 44, 7, 8),
    ("C4", [11, 13, 15, 21, 23, 31], 9, 12, 52, 7, 12),
]

# name, leaders, delta, delta_perp, L_at_min, w_add, L_add, L, d, d_perp
REF_63_22 = [
    ("C1", [3, 5, 7, 9, 11, 13, 15, 21], 16, 6, 1, 8, 19, 20, 11, 4),
    ("C2", [1, 3, 5, 7, 9, 13, 21, 23], 15, 6, 1, 8, 25, 26, 11, 6),
    ("C3", [1, 5, 7, 15, 21, 23, 27, 31], 15, 8, 30, None, 0, 30, 11, 4),
    ("C4", [1, 3, 5, 7, 9, 11, 13, 21], 15, 8, 155, None, 0, 155, 15, 8),
]


@pytest.fixture(scope="module")
def f6():
    return BinaryField(6)


@pytest.fixture(scope="module")
def code_c1(f6):
    return bch_from_cosets(f6, [5, 9, 11, 13, 21, 23, 27])


@pytest.fixture(scope="module")
def checks_c1(code_c1):
    return build_check_set(code_c1)


@pytest.fixture(scope="module")
def code_24(f6):
    return bch_from_cosets(f6, [1, 3, 5, 7, 9, 11, 13])


@pytest.fixture(scope="module")
def checks_24(code_24):
    return build_check_set(code_24)


def _sign_test_p(n_plus: int, n_minus: int) -> float:
    """One-sided exact binomial tail P(X >= n_plus | n_plus+n_minus, 1/2)."""
    n = n_plus + n_minus
    if n == 0:
        return 1.0
    return sum(comb(n, k) for k in range(n_plus, n + 1)) / 2**n


def test_criterion_1_table_reproduction(f6):
    problems = []
    for name, leaders, delta, dperp, L, d, d_perp in REF_63_31:
        code = bch_from_cosets(f6, leaders)
        dual = dual_code(code)
        got = {
            "k": code.k,
            "d": designed_distance(code.exponents, 63, wrap=False),
            "d_perp": designed_distance(dual.exponents, 63, wrap=False),
        }
        rep = min_weight_search(code)
        cs = build_check_set(code)
        got.update(delta=rep.min_weight, delta_perp=cs.delta_perp, L=cs.size)
        want = {"k": 31, "d": d, "d_perp": d_perp, "delta": delta,
                "delta_perp": dperp, "L": L}
        assert rep.exhaustive and cs.exhaustive
        if got != want:
            problems.append(f"63-31/{name}: got {got} want {want}")

    for (name, leaders, delta, dperp, l_min, w_add, l_add, L,
         d, d_perp) in REF_63_22:
        code = bch_from_cosets(f6, leaders)
        dual = dual_code(code)
        rep = min_weight_search(code)
        cs = build_check_set(code, min_count=L)
        assert rep.exhaustive and cs.exhaustive
        got = {
            "k": code.k,
            "d": designed_distance(code.exponents, 63, wrap=False),
            "d_perp": designed_distance(dual.exponents, 63, wrap=False),
            "delta": rep.min_weight,
            "delta_perp": cs.delta_perp,
            "L_min": cs.counts_by_weight[cs.delta_perp]["used"],
            "L": cs.size,
        }
        want = {"k": 22, "d": d, "d_perp": d_perp, "delta": delta,
                "delta_perp": dperp, "L_min": l_min, "L": L}
        if w_add is not None:
            got["w_add"] = max(cs.counts_by_weight)
            got["L_add"] = cs.counts_by_weight[max(cs.counts_by_weight)]["used"]
            want["w_add"] = w_add
            want["L_add"] = l_add
        if got != want:
            problems.append(f"63-22/{name}: got {got} want {want}")

    assert not problems, "; ".join(problems)
    print("ACCEPTANCE 1: PASS - reference parameter tables reproduced exactly")


def test_criterion_2_worked_example_golden():
    field = BinaryField(4, 0b10011)
    code = bch_from_cosets(field, [1, 3])
    assert code.g == 0b111010001
    assert code.h == 0b11010001

    b = CyclicWord.from_support(15, [11, 3, 2, 0])
    assert rotl(b.bits, 4, 15) == code.h  # same orbit as the check polynomial

    c = CyclicWord.from_support(15, [14, 12, 11, 10, 9, 6, 4, 3, 1])
    e = CyclicWord.from_support(15, [14, 2, 0])
    rbar = c ^ e
    assert sorted(rbar.support()) == [0, 1, 2, 3, 4, 6, 9, 10, 11, 12]

    cw = encode_systematic(code, rbar.bits >> 8)
    assert sorted(cw.support()) == [1, 4, 5, 7, 9, 10, 11, 12]
    r = rbar ^ cw
    assert sorted(r.support()) == [0, 2, 3, 5, 6, 7]

    w = cyclic_mul(r, b)
    assert sorted(w.support()) == [0, 1, 2, 3, 4, 5, 10, 11, 13, 14]

    from bchlab.wsearch import CheckSet
    checks = CheckSet(words=[b], weights=[4], delta_perp=4, exhaustive=True)
    counts = count_violations(rbar, checks).counts
    assert list(counts) == [4, 3, 4, 3, 2, 2, 1, 2, 3, 2, 2, 3, 2, 3, 4]

    sys_order = sorted(range(7), key=lambda a: (-counts[8 + a], a))
    red_order = sorted(range(8), key=lambda j: (counts[j], j))
    assert sys_order == [6, 0, 3, 5, 1, 2, 4]
    assert red_order == [6, 4, 5, 7, 1, 3, 0, 2]

    sb = systematic_basis(code)
    d_mat = [[sb.gr_entry(a, col) for col in red_order[:3]]
             for a in sys_order[:3]]
    assert d_mat == [[1, 0, 1], [1, 1, 0], [0, 1, 0]]

    d_inv = [[0, 1, 1], [0, 0, 1], [1, 1, 1]]
    for i in range(3):
        for j in range(3):
            acc = 0
            for t in range(3):
                acc ^= d_mat[i][t] & d_inv[t][j]
            assert acc == (1 if i == j else 0)

    r_g = [(r.bits >> col) & 1 for col in red_order[:3]]
    assert r_g == [1, 0, 1]
    eps = [0, 0, 0]
    for j in range(3):
        eps[j] = (r_g[0] & d_inv[0][j]) ^ (r_g[1] & d_inv[1][j]) \
            ^ (r_g[2] & d_inv[2][j])
    assert eps == [1, 0, 0]
    e_sys = [0] * 7
    for i, bit in enumerate(eps):
        e_sys[sys_order[i]] = bit
    assert e_sys == [0, 0, 0, 0, 0, 0, 1]

    out = decode_redundancy_set(rbar, code, checks, mu=3, shifts=[0])
    assert out.best == c
    print("ACCEPTANCE 2: PASS - worked decoding chain matches exactly")


def test_criterion_3_permutation_equivalence():
    field3 = BinaryField(3, 0b1011)
    assert rm_permutation(field3)(5) == 6
    assert verify_rm_equivalence(3, 1)
    assert verify_rm_equivalence(6, 2)
    for m in range(2, 11):
        for r in range(m):
            assert root_count_identity(m, r)
    assert verify_generator_roots(3, 1)
    assert verify_generator_roots(6, 2)
    print("ACCEPTANCE 3: PASS - permutation and equivalence checks exact")


def test_criterion_4_combinatorial_counts():
    assert flip_plan_by_weight(31, 2).size == 497
    assert flip_plan_by_weight(22, 2).size == 254
    assert flip_plan_by_weight(64, 2).size == 2081
    assert flip_plan_by_weight(92, 2).size == 4279
    assert len(coset_selections(cyclotomic_cosets(63), 31)) == 252
    assert len(coset_selections(cyclotomic_cosets(63), 22)) == 168
    assert len(coset_selections(cyclotomic_cosets(127), 64)) == 48620
    print("ACCEPTANCE 4: PASS - flip-plan and selection counts exact")


def test_criterion_5_separation(code_24, checks_24):
    assert checks_24.delta_perp == 8 and checks_24.size == 35
    trials = 2000
    for tau in range(1, 7):
        rng = np.random.default_rng(500 + tau)
        good = 0
        for _ in range(trials):
            pos = rng.choice(63, size=tau, replace=False)
            e = CyclicWord.from_support(63, [int(p) for p in pos])
            counts = count_violations(e, checks_24).counts
            mask = np.zeros(63, dtype=bool)
            mask[[int(p) for p in pos]] = True
            # the error set must be selectable as the tau largest values
            # (count equality at the boundary keeps that selection possible)
            good += counts[mask].min() >= counts[~mask].max()
        rate = good / trials
        assert rate >= 0.999, f"tau={tau}: separation rate {rate}"

    st1 = expected_check_stats(63, 1, 8, 35)
    assert st1.e_count_error == 8 * 35

    for tau in range(1, 9):
        st = expected_check_stats(63, tau, 8, 35)
        rng = np.random.default_rng(700 + tau)
        acc = 0.0
        for _ in range(trials):
            pos = rng.choice(63, size=tau, replace=False)
            e = CyclicWord.from_support(63, [int(p) for p in pos])
            counts = count_violations(e, checks_24).counts
            mask = np.zeros(63, dtype=bool)
            mask[[int(p) for p in pos]] = True
            acc += counts[~mask].mean()
        avg_c = acc / trials
        expect = float(st.e_count_correct)
        assert abs(avg_c - expect) / expect <= 0.10, \
            f"tau={tau}: AVG {avg_c:.2f} vs E {expect:.2f}"
    print("ACCEPTANCE 5: PASS - count separation and expected values hold")


def test_criterion_6_isd_matches_ml(code_c1, checks_c1):
    trials = 2000
    rec = run_hard_campaign(
        code_c1, HardDecoderConfig("isd", flip_weight=2), range(1, 15),
        trials, seed=601, checks=checks_c1, workers=4,
    )
    bad = []
    for pt in rec.points:
        n_ = pt.trials
        diff = (pt.failures - pt.ml_lb_mass) / n_
        var = max(pt.diff_sqsum / n_ - diff**2, 0.0)
        se = (var / n_) ** 0.5
        ok = abs(diff) <= 2 * se
        print(f"  tau={int(pt.x):2d}: p_fail {pt.p_fail:.4f} "
              f"ml {pt.ml_lb_mass / n_:.4f} diff {diff:+.4f} 2se {2 * se:.4f} "
              f"{'ok' if ok else 'EXCEEDS'}")
        if not ok:
            bad.append(int(pt.x))

    wer_isd = wer_from_ptau(rec.ptau(), 63, 1e-2)
    # bounded-distance decoding at radius 5 fails exactly when tau > 5
    bdd_ptau = {t: (0.0 if t <= 5 else 1.0) for t in range(1, 15)}
    wer_bdd = wer_from_ptau(bdd_ptau, 63, 1e-2)
    margin_ok = wer_isd < wer_bdd / 2
    print(f"  WER_ISD(1e-2) {wer_isd:.3e} vs BDD(d=11) {wer_bdd:.3e} "
          f"margin {'ok' if margin_ok else 'FAIL'}")
    assert margin_ok

    verdict = "PASS" if not bad else f"FAIL at tau={bad}"
    print(f"ACCEPTANCE 6: {verdict} - per-tau ISD vs ML-LB equality")
    assert not bad, (
        f"failure rate exceeds the ML lower bound by more than 2 standard "
        f"errors at tau={bad}: at these weights the decoder often returns a "
        f"codeword farther than the true error weight, which the bound "
        f"books as an ML success; equality holds through the weights that "
        f"dominate the plotted WER range (tau<=6) and saturates from "
        f"tau=11 up (see decisions ledger)"
    )


def test_criterion_7_rsd_behavior(code_24, checks_24):
    trials = 2000
    wers, mls = {}, {}
    for nshift in (1, 4):
        rec = run_hard_campaign(
            code_24, HardDecoderConfig("rsd", mu=17, shifts=nshift),
            range(1, 13), trials, seed=701, checks=checks_24, workers=4,
        )
        wers[nshift] = wer_from_ptau(rec.ptau(), 63, 3e-2)
        mls[nshift] = wer_from_ptau(rec.ml_ptau(), 63, 3e-2)
        print(f"  shifts={nshift}: WER(3e-2) {wers[nshift]:.4e} "
              f"ML-LB {mls[nshift]:.4e}")
    assert wers[4] <= wers[1], "WER must not increase with more shifts"
    assert wers[4] <= 2 * mls[4], (
        f"4-shift WER {wers[4]:.3e} exceeds twice its ML-LB {mls[4]:.3e}"
    )
    print("ACCEPTANCE 7: PASS - RSD improves with shifts and sits within "
          "2x of its ML bound")


def test_criterion_8_soft_ordering(code_c1, checks_c1):
    trials = 20000
    plan = flip_plan_by_weight(31, 2)
    sigma_sq = awgn_sigma_sq(3.0, 31 / 63)
    sigma = float(np.sqrt(sigma_sq))
    isdh_checks = check_polynomial_set(code_c1)

    configs = {
        "chan": (None, 0.0, None),
        "dual-0.05": (checks_c1, 0.05, 50),
        "dual-0.07": (checks_c1, 0.07, 50),
        "dual-0.1": (checks_c1, 0.1, 50),
        "isd-h": (isdh_checks, 0.2, None),
    }
    fails = {k: np.zeros(trials, dtype=bool) for k in configs}
    for i in range(trials):
        trng = np.random.default_rng(np.random.SeedSequence([801, i]))
        c = encode_systematic(code_c1, int(trng.integers(0, 1 << 31)))
        x = np.array([1.0 - 2.0 * ((c.bits >> j) & 1) for j in range(63)])
        y = x + trng.normal(0.0, sigma, size=63)
        for key, (cs, alpha, top_t) in configs.items():
            out = decode_soft_information_set(
                y, code_c1, cs, sigma_sq, alpha, top_t, plan
            )
            fails[key][i] = out.best != c

    base = fails["chan"]
    results = {}
    for key in configs:
        if key == "chan":
            continue
        f = fails[key]
        n_plus = int((base & ~f).sum())
        n_minus = int((~base & f).sum())
        p = _sign_test_p(n_plus, n_minus)
        results[key] = (f.sum(), n_plus, n_minus, p)
        print(f"  {key}: WER {f.mean():.5f} (chan {base.mean():.5f}) "
              f"fixes {n_plus} breaks {n_minus} sign-p {p:.4f}")

    isdh_wer, _, _, isdh_p = results["isd-h"]
    assert isdh_p >= 0.05, "single-check update must not significantly help"
    print("  ISD-H shows no significant improvement: ok")

    dual_ok = any(
        wer < base.sum() and p < 0.05
        for key, (wer, _, _, p) in results.items() if key.startswith("dual")
    )
    verdict = "PASS" if dual_ok else "FAIL"
    print(f"ACCEPTANCE 8: {verdict} - dual-check update vs channel-only at 3 dB")
    assert dual_ok, (
        "no alpha in {0.05, 0.07, 0.1} with T=50 beats channel-only ISD "
        "significantly at 3 dB on this rate-1/2 length-63 code: failures "
        "there are dominated by a shared minimum-distance floor that no "
        "candidate-list reordering can cross (the update does win at 2 dB, "
        "and with alpha=0.03 at 3 dB; see decisions ledger)"
    )


def test_criterion_9_flip_planning(code_c1):
    stats = simulate_error_ranks(code_c1, None, 3.0, 0.0, None, 10000,
                                 np.random.default_rng(901))
    plan, wer_est = plan_flips(stats, 101)
    assert plan.size <= 101

    sigma_sq = awgn_sigma_sq(3.0, 31 / 63)
    sigma = float(np.sqrt(sigma_sq))
    trials = 10000
    failures = 0
    for i in range(trials):
        trng = np.random.default_rng(np.random.SeedSequence([902, i]))
        c = encode_systematic(code_c1, int(trng.integers(0, 1 << 31)))
        x = np.array([1.0 - 2.0 * ((c.bits >> j) & 1) for j in range(63)])
        y = x + trng.normal(0.0, sigma, size=63)
        out = decode_soft_information_set(y, code_c1, None, sigma_sq,
                                          0.0, None, plan)
        failures += out.best != c
    wer_sim = failures / trials
    rel = abs(wer_sim - wer_est) / wer_sim
    print(f"  planned {plan.size} patterns: WER_est {wer_est:.4f} "
          f"simulated {wer_sim:.4f} rel-err {rel:.1%}")
    assert rel <= 0.25
    print("ACCEPTANCE 9: PASS - plan estimate predicts fresh simulation")


def test_criterion_10_desk_scale_substitute():
    print("ACCEPTANCE 10: full n=127 campaigns, exhaustive mining of the "
          "1590-check set, the 1e5-pattern near-ML run, and wall-clock "
          "comparisons are out of desk-scale scope by design.")
    f7 = BinaryField(7)
    code = bch_from_cosets(f7, [1, 3, 5, 7, 9, 11, 13, 15, 19])
    cache_path = os.environ.get("BCHLAB_C3_CHECKS")
    if not cache_path or not os.path.exists(cache_path):
        pytest.skip(
            "n=127 check cache not supplied (set BCHLAB_C3_CHECKS to a "
            "mined cache of the 1590 weight-22 checks to run the "
            "T-filter reduction substitute)"
        )
    checks = load_check_cache(cache_path, code)
    assert checks.size == 1590
    sigma_sq = awgn_sigma_sq(2.0, 64 / 127)
    sigma = float(np.sqrt(sigma_sq))
    rng = np.random.default_rng(1001)
    admitted = []
    for i in range(200):
        c = encode_systematic(code, int(rng.integers(0, 1 << 63)))
        x = np.array([1.0 - 2.0 * ((c.bits >> j) & 1) for j in range(127)])
        y = x + rng.normal(0.0, sigma, size=127)
        rel = channel_reliability(y, sigma_sq)
        _, adm = extrinsic_update(rel, checks, 100, 0.07)
        admitted.append(adm)
    mean_adm = float(np.mean(admitted))
    print(f"  admitted checks at T=100: {mean_adm:.0f} of {127 * 1590}")
    assert abs(mean_adm - 5089) / 5089 <= 0.20
