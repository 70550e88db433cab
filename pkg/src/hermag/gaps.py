"""Weierstrass gap sets at degree-3 places: closed form and oracle.

The closed form is {u(q+1) - v : 0 <= v <= q, 0 < 3u <= v}; its maximal
consecutive runs are (u-1)q+u .. u(q-2) for 0 < 3u <= q.  The oracle
declares m a gap exactly when dim L(mP) = dim L((m-1)P), computed from
vanishing-condition systems with no reference to the formula.  On any
mismatch both sets are reported rather than silently preferring one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import Hermitian, Place3
from .errors import GuardError, PreconditionError
from .ff import split_prime_power
from .rrspace import dim_L_mP


@dataclass(frozen=True)
class GapSet:
    q: int
    gaps: tuple[int, ...]
    runs: tuple[tuple[int, int, int | None], ...]  # (start, end, u)

    def to_jsonable(self) -> dict:
        return {"q": self.q, "gaps": list(self.gaps),
                "runs": [{"start": s, "end": e, "u": u} for s, e, u in self.runs]}


def _runs_from_gaps(q: int, gaps: tuple[int, ...]) -> tuple[tuple[int, int, int | None], ...]:
    runs = []
    i = 0
    while i < len(gaps):
        j = i
        while j + 1 < len(gaps) and gaps[j + 1] == gaps[j] + 1:
            j += 1
        start, end = gaps[i], gaps[j]
        # label with u when the run matches (u-1)q+u .. u(q-2)
        u = (start + q) // (q + 1) if (start + q) % (q + 1) == 0 else None
        if u is not None and end != u * (q - 2):
            u = None
        runs.append((start, end, u))
        i = j + 1
    return tuple(runs)


def gap_set_formula(q: int) -> GapSet:
    """The closed-form gap set; q any prime power >= 2."""
    split_prime_power(q)
    gaps = sorted({u * (q + 1) - v
                   for v in range(q + 1)
                   for u in range(1, v // 3 + 1)})
    return GapSet(q, tuple(gaps), _runs_from_gaps(q, tuple(gaps)))


def gap_set_oracle(curve: Hermitian, place: Place3 | None = None) -> GapSet:
    """Gap set from dimension jumps of L(mP); cost guard q <= 9.

    Gaps can only occur while deg(mP) = 3m <= 2g-1, so scanning m up to
    ceil((2g-1)/3) + 1 is exhaustive.
    """
    q = curve.q
    if q > 9:
        raise GuardError("gap oracle is guarded to q <= 9")
    if place is None:
        place = curve.find_degree3_place()
    g = curve.genus
    m_max = -(-(2 * g - 1) // 3) + 1
    gaps = []
    prev = 1  # dim L(0) = 1
    for m in range(1, m_max + 1):
        cur = dim_L_mP(curve, place, m)
        if cur == prev:
            gaps.append(m)
        elif not 1 <= cur - prev <= 3:
            raise PreconditionError(
                f"dim L({m}P) jumped by {cur - prev}")  # pragma: no cover
        prev = cur
    gaps_t = tuple(gaps)
    return GapSet(q, gaps_t, _runs_from_gaps(q, gaps_t))


def mm_gap_run_for_m(q: int, m: int) -> tuple[int, int, int | None] | None:
    """The maximal run k..k+t with m = 2k + t - 1, if any (largest t wins)."""
    gs = gap_set_formula(q)
    best = None
    for start, end, u in gs.runs:
        t = end - start
        if 2 * start + t - 1 == m and (best is None or t > best[1]):
            best = (start, t, u)
    return best
