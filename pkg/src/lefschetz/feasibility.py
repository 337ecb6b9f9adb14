"""Feasibility of fiber-count vectors and minimal-fiber-count bounds.

A count vector (n, s_1, ..., s_{floor(g/2)}) for a hyperelliptic
fibration on a simply-connected 4-manifold must pass, in this frozen
order:

    1. total        n + s < max_total_fibers
    2. n-lower      n >= 4g
    3. congruence   the hyperelliptic twist-count congruence
    4. sigma-int    the hyperelliptic signature is an integer
    5. sigma-bound  sigma <= n - s - 4g
    6. chi-h        chi_h = (e + sigma)/4 is an integer >= 1

The first failing constraint is recorded, so rejection diagnostics are
reproducible.  Rows failing only the chi-h stage ("pre-chi survivors")
are reported distinctly from admitted rows, because the two stages play
different roles in the bound arguments.

For nonhyperelliptic profiles the signature is not determined by the
counts, so only the sigma-free constraints (total, n >= 4g) would be
meaningful; the operations below therefore require a hyperelliptic
profile and the nonhyperelliptic lower bounds in ``min_fiber_bounds``
use n >= 4g directly.

Enumeration is embarrassingly parallel over n in principle; this
implementation is single-threaded and emits rows in lexicographic order
on (n, s_1, s_2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .invariants import (
    FiberCounts,
    euler_characteristic,
    hyperelliptic_signature,
    min_nonseparating_bound,
    signature_bound_check,
    twist_count_congruence,
)

ADMITTED = "admitted"
REJECT_TOTAL = "total"
REJECT_N_LOWER = "n-lower-bound"
REJECT_CONGRUENCE = "congruence"
REJECT_SIGMA_INTEGRAL = "sigma-integrality"
REJECT_SIGMA_BOUND = "sigma-bound"
REJECT_CHI_H = "chi-h"

CONSTRAINT_ORDER = (
    REJECT_TOTAL,
    REJECT_N_LOWER,
    REJECT_CONGRUENCE,
    REJECT_SIGMA_INTEGRAL,
    REJECT_SIGMA_BOUND,
    REJECT_CHI_H,
)


@dataclass(frozen=True)
class ConstraintProfile:
    """What to enumerate: genus, strict fiber bound, structural flags."""

    genus: int
    max_total_fibers: int
    hyperelliptic: bool = True
    simply_connected: bool = True

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise ValueError(f"genus must be >= 1, got {self.genus}")
        if self.max_total_fibers < 1:
            raise ValueError("max_total_fibers must be >= 1")


@dataclass(frozen=True)
class FeasibilityRow:
    """One evaluated count vector with its exact invariants and verdict."""

    counts: FiberCounts
    sigma: Fraction
    sigma_integral: bool
    chi_h: Fraction
    verdict: str

    @property
    def admitted(self) -> bool:
        return self.verdict == ADMITTED

    @property
    def pre_chi_survivor(self) -> bool:
        return self.verdict in (ADMITTED, REJECT_CHI_H)


def _require_hyperelliptic(p: ConstraintProfile) -> None:
    if not p.hyperelliptic:
        raise ValueError(
            "profile is not hyperelliptic: sigma cannot be derived from "
            "counts alone, so only the sigma-free constraints (total, "
            "n >= 4g) would apply"
        )


def check_counts(c: FiberCounts, p: ConstraintProfile) -> FeasibilityRow:
    """Evaluate the constraint chain; verdict carries the first failure."""
    _require_hyperelliptic(p)
    if c.genus != p.genus:
        raise ValueError(f"counts are genus {c.genus}, profile genus {p.genus}")
    sigma, integral = hyperelliptic_signature(c)
    e = euler_characteristic(c)
    chi_h = Fraction(e + sigma, 4)

    verdict = ADMITTED
    if c.total >= p.max_total_fibers:
        verdict = REJECT_TOTAL
    elif c.n < min_nonseparating_bound(c.genus):
        verdict = REJECT_N_LOWER
    elif not twist_count_congruence(c):
        verdict = REJECT_CONGRUENCE
    elif not integral:
        verdict = REJECT_SIGMA_INTEGRAL
    elif not signature_bound_check(c, int(sigma), b1=0):
        verdict = REJECT_SIGMA_BOUND
    elif chi_h.denominator != 1 or chi_h < 1:
        verdict = REJECT_CHI_H
    return FeasibilityRow(
        counts=c, sigma=sigma, sigma_integral=integral, chi_h=chi_h,
        verdict=verdict,
    )


def enumerate_feasible(p: ConstraintProfile) -> tuple[FeasibilityRow, ...]:
    """Evaluate every nontrivial count vector with total < the bound.

    Rows come back in lexicographic order on (n, s_1, s_2, ...) and
    include rejected ones; filter on ``admitted`` or ``pre_chi_survivor``
    as needed.
    """
    _require_hyperelliptic(p)
    bound = p.max_total_fibers
    width = p.genus // 2
    rows = []
    for n in range(bound):
        remaining = bound - 1 - n
        for s in product(range(remaining + 1), repeat=width):
            if sum(s) > remaining or n + sum(s) < 1:
                continue
            rows.append(check_counts(FiberCounts(p.genus, n, s), p))
    return tuple(rows)


# -- minimal numbers of singular fibers -------------------------------------


@dataclass(frozen=True)
class Witness:
    """A known fibration realizing a fiber count."""

    name: str
    fibers: int
    hyperelliptic: bool


@dataclass(frozen=True)
class BoundsReport:
    """Bounds on the minimal singular-fiber counts N_g (all fibrations)
    and M_g (hyperelliptic ones), on simply-connected total spaces.

    Upper bounds are None when no witness is recorded.  ``notes`` carry
    the assembly reasoning, including the open 4g+6 target for g >= 5.
    """

    genus: int
    n_lower: int
    n_upper: int | None
    m_lower: int
    m_upper: int | None
    witnesses: tuple[Witness, ...]
    notes: tuple[str, ...]

    @property
    def n_exact(self) -> int | None:
        return self.n_lower if self.n_lower == self.n_upper else None

    @property
    def m_exact(self) -> int | None:
        return self.m_lower if self.m_lower == self.m_upper else None


def _hyperelliptic_floor(g: int, witness_fibers: int) -> int:
    """Least conceivable hyperelliptic fiber count below a witness count.

    Runs the enumerator strictly below the witness count; if nothing is
    admitted the witness is optimal, otherwise the smallest admitted
    total is the floor.
    """
    rows = enumerate_feasible(ConstraintProfile(g, witness_fibers, hyperelliptic=True))
    admitted = [r.counts.total for r in rows if r.admitted]
    return min(admitted) if admitted else witness_fibers


def min_fiber_bounds(g: int) -> BoundsReport:
    """Assemble the known bounds on N_g and M_g.

    g = 1, 2: every fibration of that genus is hyperelliptic, so
    N_g = M_g; the enumerator gives the floor and the recorded witness
    (the 12-fiber elliptic fibration on E(1), the Baykur-Korkmaz
    genus-2 fibration with 14 fibers) matches it.

    g = 3, 4: N_g is bounded below by n >= 4g and above by the best
    catalog witness (W with 18 fibers, W1 with 23); M_g comes from the
    enumerator floor and the hyperelliptic witness (W again, W2 with 24
    fibers).

    g >= 5: only the generic bounds N_g >= 4g, M_g >= 4g + 1 are known;
    whether M_g = 4g + 6 (as for g = 2, 3) is an open question, flagged
    in the notes, not a result.
    """
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if g == 1:
        witness = Witness("elliptic surface E(1)", 12, True)
        floor = _hyperelliptic_floor(1, 12)
        return BoundsReport(
            genus=1, n_lower=floor, n_upper=12, m_lower=floor, m_upper=12,
            witnesses=(witness,),
            notes=(
                "every genus-1 fibration is hyperelliptic, so N_1 = M_1",
                "no admissible count vector exists below 12 fibers",
            ),
        )
    if g == 2:
        witness = Witness("Baykur-Korkmaz genus-2 fibration", 14, True)
        floor = _hyperelliptic_floor(2, 14)
        return BoundsReport(
            genus=2, n_lower=floor, n_upper=14, m_lower=floor, m_upper=14,
            witnesses=(witness,),
            notes=(
                "every genus-2 fibration is hyperelliptic, so N_2 = M_2",
                "below 14 fibers only (n,s) = (8,1) and (10,0) pass the "
                "sigma constraints and both have chi_h = 0",
            ),
        )
    if g in (3, 4):
        from .catalog import get_entry  # deferred: catalog builds on this package

        if g == 3:
            w = get_entry("W")
            hyp_witness = Witness("W (genus-3 hyperelliptic)", len(w.factorization.letters), True)
            best = hyp_witness
            extra_notes = (
                "below 18 fibers only (n,s) = (16,1) passes the sigma "
                "constraints and it has chi_h = 0",
            )
        else:
            w1 = get_entry("W1")
            w2 = get_entry("W2")
            best = Witness("W1 (genus-4, nonhyperelliptic)", len(w1.factorization.letters), False)
            hyp_witness = Witness("W2 (genus-4 hyperelliptic)", len(w2.factorization.letters), True)
            extra_notes = (
                "below 24 fibers the admitted counts are (16,0,5), (16,4,2) "
                "and (18,2,3), with totals 21, 22 and 23",
            )
        m_lower = _hyperelliptic_floor(g, hyp_witness.fibers)
        return BoundsReport(
            genus=g,
            n_lower=min_nonseparating_bound(g),
            n_upper=best.fibers,
            m_lower=m_lower,
            m_upper=hyp_witness.fibers,
            witnesses=(best, hyp_witness) if best != hyp_witness else (hyp_witness,),
            notes=("N lower bound from n >= 4g",) + extra_notes,
        )
    return BoundsReport(
        genus=g,
        n_lower=min_nonseparating_bound(g),
        n_upper=None,
        m_lower=4 * g + 1,
        m_upper=None,
        witnesses=(),
        notes=(
            "N lower bound from n >= 4g; M lower bound from the "
            "twist-count congruence ruling out (4g, 0)",
            f"open question (not a result): is M_{g} = {4 * g + 6}, "
            "as it is for g = 2 and 3?",
        ),
    )
