"""Numeric invariants of a fibration from its fiber-count data.

Everything here is exact: integers and ``fractions.Fraction`` only, no
floating point, tolerance zero.  All functions are stateless and pure.

For a genus-g fibration over the 2-sphere with n nonseparating and s_h
type-h separating vanishing cycles (s = sum s_h):

    e = 4 - 4g + n + s
    chi_h = (e + sigma) / 4
    b2+ = (e - 2 + sigma) / 2,  b2- = (e - 2 - sigma) / 2   (when b1 = 0)

The hyperelliptic signature is the closed form

    sigma = -((g+1)/(2g+1)) n + sum_h (4h(g-h)/(2g+1) - 1) s_h ,

equivalently (-(g+1) n + sum_h (4h(g-h) - (2g+1)) s_h) / (2g+1).
Note: a misprinted genus-3 specialization, (4n - s)/5, circulates; the
correct genus-3 value of the closed form is (-4n + s1)/7 and that is
what this module computes.

The ledger route covers signatures assembled additively from relator
blocks with known contributions: a separating-curve relator counts -1,
the even-genus Matsumoto relator counts -4, and named blocks carry a
user-supplied integer.  Removed (cancelled) blocks enter with negative
multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# Ledger entry kinds.
LEDGER_MATSUMOTO_EVEN = "mats"
LEDGER_SEPARATING = "sep"
LEDGER_BLOCK = "block"

_FIXED_CONTRIBUTIONS = {LEDGER_MATSUMOTO_EVEN: -4, LEDGER_SEPARATING: -1}


@dataclass(frozen=True)
class FiberCounts:
    """(n, s_1, ..., s_{floor(g/2)}) for a genus-g fibration.

    All counts are nonnegative, the total is at least 1 (the fibration is
    nontrivial), and ``s`` has exactly floor(g/2) entries (empty for
    g = 1).
    """

    genus: int
    n: int
    s: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise ValueError(f"genus must be >= 1, got {self.genus}")
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if len(self.s) != self.genus // 2:
            raise ValueError(
                f"genus {self.genus} needs {self.genus // 2} separating "
                f"counts, got {len(self.s)}"
            )
        if self.n < 0 or any(x < 0 for x in self.s):
            raise ValueError("fiber counts must be nonnegative")
        if self.total < 1:
            raise ValueError("a nontrivial fibration needs at least one fiber")

    @classmethod
    def of(cls, genus: int, n: int, *s: int) -> "FiberCounts":
        """Build counts, padding the separating vector with zeros."""
        padded = tuple(s) + (0,) * (genus // 2 - len(s))
        return cls(genus, n, padded)

    @property
    def s_total(self) -> int:
        return sum(self.s)

    @property
    def total(self) -> int:
        return self.n + self.s_total


def euler_characteristic(c: FiberCounts) -> int:
    """e = 4 - 4g + n + s."""
    return 4 - 4 * c.genus + c.total


def hyperelliptic_signature(c: FiberCounts) -> tuple[Fraction, bool]:
    """Exact hyperelliptic signature and whether it is an integer."""
    g = c.genus
    q = 2 * g + 1
    value = Fraction(-(g + 1) * c.n, q)
    for h, count in enumerate(c.s, start=1):
        value += Fraction(4 * h * (g - h) - q, q) * count
    return value, value.denominator == 1


@dataclass(frozen=True)
class LedgerEntry:
    """One relator block: kind, multiplicity, optional value and label."""

    kind: str
    multiplicity: int = 1
    value: int | None = None
    label: str | None = None

    def __post_init__(self) -> None:
        if self.kind in _FIXED_CONTRIBUTIONS:
            if self.value is not None:
                raise ValueError(f"{self.kind} entries carry a fixed contribution")
        elif self.kind == LEDGER_BLOCK:
            if self.value is None:
                raise ValueError("block entries need an integer contribution")
        else:
            raise ValueError(f"unknown ledger kind {self.kind!r}")

    @property
    def contribution(self) -> int:
        if self.kind == LEDGER_BLOCK:
            return self.value
        return _FIXED_CONTRIBUTIONS[self.kind]


def endo_nagami_total(entries: tuple[LedgerEntry, ...] | list[LedgerEntry]) -> int:
    """Signed sum of block contributions: sum multiplicity * contribution."""
    return sum(e.multiplicity * e.contribution for e in entries)


@dataclass(frozen=True)
class InvariantReport:
    """(e, sigma, chi_h, Betti data) under the b1 = 0 assumption.

    When the Betti arithmetic does not return nonnegative integers the
    report is marked infeasible (b2plus and b2minus are None); that is
    data, not an error, since the feasibility filter consumes it.
    """

    e: int
    sigma: int
    chi_h: Fraction
    b2plus: int | None
    b2minus: int | None
    candidate: str | None

    @property
    def feasible(self) -> bool:
        return self.b2plus is not None


def chi_and_betti(e: int, sigma: int) -> InvariantReport:
    """chi_h = (e+sigma)/4 and (b2+, b2-) assuming simple connectivity.

    The candidate label CP^2 # k CP^2bar is attached when b2+ = 1, with
    k = b2-.
    """
    chi_h = Fraction(e + sigma, 4)
    twice_plus = e - 2 + sigma
    twice_minus = e - 2 - sigma
    if twice_plus % 2 == 0 and twice_plus >= 0 and twice_minus >= 0:
        b2plus = twice_plus // 2
        b2minus = twice_minus // 2
        candidate = f"CP^2 # {b2minus} CP^2bar" if b2plus == 1 else None
    else:
        b2plus = b2minus = candidate = None
    return InvariantReport(
        e=e, sigma=sigma, chi_h=chi_h, b2plus=b2plus, b2minus=b2minus,
        candidate=candidate,
    )


def twist_count_congruence(c: FiberCounts) -> bool:
    """n + sum_h 2h(4h+2) s_h = 0 mod 4(2g+1) (g odd) or 2(2g+1) (g even).

    A necessary condition on hyperelliptic fibrations, coming from the
    abelianized hyperelliptic mapping class group.
    """
    g = c.genus
    weighted = c.n + sum(
        2 * h * (4 * h + 2) * count for h, count in enumerate(c.s, start=1)
    )
    modulus = (4 if g % 2 == 1 else 2) * (2 * g + 1)
    return weighted % modulus == 0


def signature_bound_check(c: FiberCounts, sigma: int, b1: int = 0) -> bool:
    """sigma <= n - s - 2(2g - b1); with b1 = 0 the simply-connected bound."""
    return sigma <= c.n - c.s_total - 2 * (2 * c.genus - b1)


def min_nonseparating_bound(g: int) -> int:
    """Least possible n for a fibration on a simply-connected 4-manifold: 4g."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    return 4 * g
