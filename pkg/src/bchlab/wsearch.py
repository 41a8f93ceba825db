"""Low-weight codeword search, orbit bookkeeping, and check-set mining.

The search exploits cyclicity: any k consecutive positions of a cyclic code
form an information set, and a weight-w codeword always has some rotation
with at most floor(w*k/n) ones inside that window.  Enumerating systematic
messages level by level (weight b = 1, 2, ...) therefore covers every
codeword of weight w once floor(w*k/n) <= b, which yields an exhaustiveness
certificate: after finishing level b, all codewords of weight up to
((b+1)*n - 1) // k have been seen.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from math import comb

from .codes import BchCode, code_spec_hash, dual_code, systematic_basis
from .errors import (
    InsufficientChecksError,
    NotDualCodewordError,
    ZeroWordError,
)
from .gf2 import CyclicWord, canonical_rotation, poly_gcd, poly_mod

DEFAULT_SEARCH_BUDGET = 5_000_000


def cyclic_orbit_reps(words) -> list[CyclicWord]:
    """One canonical representative per rotation orbit, bit 0 set.

    Deterministic output order: by (weight, representative value).
    """
    reps = {}
    for w in words:
        if not w:
            raise ZeroWordError("zero word in orbit input")
        rep = canonical_rotation(w)
        reps[(rep.n, rep.bits)] = rep
    return sorted(reps.values(), key=lambda r: (r.weight(), r.bits))


@dataclass
class WeightSearchReport:
    min_weight: int
    witnesses: list[CyclicWord]
    exhaustive: bool
    effort: int


class _WindowSearch:
    """Level-by-level enumeration over the systematic window of a code."""

    def __init__(self, code: BchCode):
        self.code = code
        self.n = code.n
        self.k = code.k
        self.rows = systematic_basis(code).rows

    def certified_weight(self, level: int) -> int:
        # Largest w with floor(w*k/n) <= level.
        return ((level + 1) * self.n - 1) // self.k

    def run(self, *, collect_limit: int | None, stop, budget: int):
        """Enumerate message levels until `stop(best, cert)` or budget runs out.

        collect_limit=None tracks the running best weight (minimum search);
        a fixed value collects everything at or below it (mining).
        Returns (hits, best, completed_level, effort, exhausted).
        """
        rows, k = self.rows, self.k
        best = min((r.bit_count() for r in rows), default=self.n + 1)
        dynamic = collect_limit is None
        limit = best if dynamic else collect_limit
        hits: list[int] = []
        effort = 0
        level = 0
        exhausted = False
        while True:
            if stop(best, self.certified_weight(level)) or level == k:
                break
            nxt = level + 1
            cost = comb(k, nxt)
            if effort + cost > budget:
                exhausted = True
                break
            self._run_level(nxt, limit, hits)
            effort += cost
            if dynamic:
                new_best = min((h.bit_count() for h in hits), default=best)
                if new_best < best:
                    best = new_best
                    limit = best
                    hits = [h for h in hits if h.bit_count() <= limit]
            level = nxt
        if not dynamic:
            best = min((h.bit_count() for h in hits), default=best)
        return hits, best, level, effort, exhausted

    def _run_level(self, b: int, limit: int, hits: list[int]):
        rows, k = self.rows, self.k

        def rec(start: int, depth: int, acc: int):
            if depth == b - 1:
                for j in range(start, k):
                    w = acc ^ rows[j]
                    if w.bit_count() <= limit:
                        hits.append(w)
            else:
                stop_at = k - (b - depth - 1)
                for j in range(start, stop_at):
                    rec(j + 1, depth + 1, acc ^ rows[j])

        rec(0, 0, 0)


def min_weight_search(code: BchCode, budget: int = DEFAULT_SEARCH_BUDGET) -> WeightSearchReport:
    """Minimum-weight codeword search with an exhaustiveness certificate.

    When the report says exhaustive, min_weight is the code's true minimum
    distance and the witnesses list all minimal-weight orbits.  On budget
    exhaustion the best upper bound found so far is returned instead.
    """
    if code.k == 0:
        return WeightSearchReport(code.n + 1, [], True, 0)
    search = _WindowSearch(code)
    hits, best, level, effort, exhausted = search.run(
        collect_limit=None, stop=lambda b_, cert: b_ <= cert, budget=budget
    )
    witnesses = cyclic_orbit_reps(
        CyclicWord(code.n, h) for h in hits if h.bit_count() == best
    )
    return WeightSearchReport(best, witnesses, not exhausted, effort)


def enumerate_words_up_to(code: BchCode, max_weight: int,
                          budget: int = DEFAULT_SEARCH_BUDGET):
    """All codeword orbits of weight <= max_weight (dict weight -> reps).

    Second return value tells whether coverage up to max_weight is certified.
    """
    if code.k == 0:
        return {}, True, 0
    search = _WindowSearch(code)
    hits, _, level, effort, exhausted = search.run(
        collect_limit=max_weight,
        stop=lambda b_, cert: cert >= max_weight,
        budget=budget,
    )
    by_weight: dict[int, list[CyclicWord]] = {}
    for rep in cyclic_orbit_reps(CyclicWord(code.n, h) for h in hits if h):
        by_weight.setdefault(rep.weight(), []).append(rep)
    certified = not exhausted and search.certified_weight(level) >= max_weight
    return by_weight, certified, effort


@dataclass
class SubcodeClassification:
    kind: str               # "proper" or "subcode"
    enlarged_check: int     # gcd(b, x^n - 1); equals h for proper dual words

    @property
    def is_proper(self) -> bool:
        return self.kind == "proper"


def classify_subcode(b: CyclicWord, code: BchCode) -> SubcodeClassification:
    """Decide whether a dual codeword checks the code itself or only a supercode.

    The enlarged check polynomial h_l = gcd(b, x^n - 1) equals h exactly when
    the information polynomial of b shares no irreducible factor with g.
    """
    if poly_mod(b.bits, code.h) != 0:
        raise NotDualCodewordError("h does not divide the word")
    x_n_1 = (1 << code.n) | 1
    h_l = poly_gcd(b.bits, x_n_1)
    kind = "proper" if h_l == code.h else "subcode"
    return SubcodeClassification(kind, h_l)


@dataclass
class CheckSet:
    """Cyclically distinct dual codewords used as parity checks.

    Every word is canonically rotated (constant coefficient 1).  weights[i]
    is the weight of words[i]; delta_perp the smallest weight present.
    counts_by_weight maps weight -> {"total", "proper", "used"} for the mined
    weight classes.
    """

    words: list[CyclicWord]
    weights: list[int]
    delta_perp: int
    exhaustive: bool
    code_hash: str | None = None
    counts_by_weight: dict = field(default_factory=dict)

    def __post_init__(self):
        self._engines = {}

    @property
    def n(self) -> int:
        return self.words[0].n

    @property
    def size(self) -> int:
        return len(self.words)

    def uniform_weight(self) -> int | None:
        ws = set(self.weights)
        return ws.pop() if len(ws) == 1 else None

    def supports(self) -> list[list[int]]:
        return [w.support() for w in self.words]

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_engines"] = {}
        return state


def build_check_set(code: BchCode, min_count: int = 1,
                    max_weight: int | None = None,
                    budget: int = DEFAULT_SEARCH_BUDGET) -> CheckSet:
    """Mine the decoding checks of a code.

    Collects every cyclically distinct minimal-weight dual codeword.  If that
    leaves fewer than min_count checks, whole next-weight classes are added,
    preferring words that are not confined to a subcode; words that only
    check a supercode are appended (in canonical order) only when the proper
    ones still fall short.
    """
    dual = dual_code(code)
    report = min_weight_search(dual, budget=budget)
    delta_perp = report.min_weight
    if max_weight is None:
        max_weight = delta_perp + 2 if min_count > len(report.witnesses) else delta_perp

    words = list(report.witnesses)
    weights = [delta_perp] * len(words)
    counts = {
        delta_perp: {
            "total": len(words),
            "proper": sum(
                1 for w in words if classify_subcode(w, code).is_proper
            ),
            "used": len(words),
        }
    }
    exhaustive = report.exhaustive

    w = delta_perp + 1
    while len(words) < min_count:
        if w > max_weight:
            raise InsufficientChecksError(
                f"only {len(words)} checks of weight <= {max_weight}, "
                f"need {min_count}"
            )
        by_weight, certified, _ = enumerate_words_up_to(dual, w, budget=budget)
        cls = by_weight.get(w, [])
        proper = [x for x in cls if classify_subcode(x, code).is_proper]
        rest = [x for x in cls if not classify_subcode(x, code).is_proper]
        used = list(proper)
        if len(words) + len(used) < min_count:
            used.extend(rest[: min_count - len(words) - len(used)])
        if used:
            words.extend(used)
            weights.extend([w] * len(used))
            counts[w] = {"total": len(cls), "proper": len(proper), "used": len(used)}
        exhaustive = exhaustive and certified
        w += 1

    return CheckSet(
        words=words,
        weights=weights,
        delta_perp=delta_perp,
        exhaustive=exhaustive,
        code_hash=code_spec_hash(code),
        counts_by_weight=counts,
    )


def check_polynomial_set(code: BchCode) -> CheckSet:
    """Single-check set holding only the check polynomial's orbit.

    Its n rotations are the checks some baselines restrict themselves to.
    """
    rep = canonical_rotation(CyclicWord(code.n, code.h))
    return CheckSet(
        words=[rep],
        weights=[rep.weight()],
        delta_perp=rep.weight(),
        exhaustive=True,
        code_hash=code_spec_hash(code),
    )


# ---------------------------------------------------------------------------
# Check cache files
# ---------------------------------------------------------------------------

def cache_dir() -> str:
    return os.environ.get("BCHLAB_CACHE_DIR", os.path.join(".", ".bchlab_cache"))


def cache_path_for(code: BchCode) -> str:
    return os.path.join(cache_dir(), f"checks-{code_spec_hash(code)}.json")


def save_check_cache(checks: CheckSet, path) -> None:
    payload = {
        "code": checks.code_hash,
        "delta_perp": checks.delta_perp,
        "checks": checks.supports(),
        "weights": list(checks.weights),
        "exhaustive": checks.exhaustive,
    }
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_check_cache(path, code: BchCode | None = None) -> CheckSet:
    """Load a cached check set; verifies divisibility when a code is given."""
    with open(path) as fh:
        payload = json.load(fh)
    if code is not None and payload.get("code") not in (None, code_spec_hash(code)):
        raise ValueError("check cache belongs to a different code")
    n = code.n if code is not None else max(max(s) for s in payload["checks"]) + 1
    words = [CyclicWord.from_support(n, s) for s in payload["checks"]]
    if code is not None:
        for w in words:
            if poly_mod(w.bits, code.h) != 0:
                raise NotDualCodewordError("cached check is not a dual codeword")
    return CheckSet(
        words=words,
        weights=list(payload["weights"]),
        delta_perp=payload["delta_perp"],
        exhaustive=bool(payload["exhaustive"]),
        code_hash=payload.get("code"),
    )


def mine_or_load_checks(code: BchCode, min_count: int = 1,
                        max_weight: int | None = None,
                        budget: int = DEFAULT_SEARCH_BUDGET,
                        cache: bool = True) -> CheckSet:
    """Load the cached check set for a code, mining and caching on a miss."""
    path = cache_path_for(code)
    if cache and os.path.exists(path):
        cs = load_check_cache(path, code)
        if cs.size >= min_count:
            return cs
    cs = build_check_set(code, min_count=min_count, max_weight=max_weight,
                         budget=budget)
    if cache:
        save_check_cache(cs, path)
    return cs
