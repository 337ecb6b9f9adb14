"""Dehn-twist word calculus on the integral symplectic representation.

A factorization stores its twist letters left to right exactly as the
word is written.  Composition is functional (the rightmost letter acts
first), so the matrix of a word t_c1 t_c2 ... t_cm is the product
M(c1) M(c2) ... M(cm) with the leftmost factor outermost.

The homological action of a positive twist about a curve with class a is
the transvection  x |-> x + <x, a> a ;  a negative twist uses -<x, a>.
Separating and boundary-parallel curves act trivially (their class is
zero after capping), so everything verified here is a necessary
condition only: a matrix identity never certifies a relator, but a
non-identity matrix refutes one.

Hurwitz moves operate on homology data only (kind plus class); the
underlying isotopy class is not tracked.  Curves created by a move are
named ``<old>@h<counter>`` with the smallest unused counter, so move
sequences are reproducible.

All operations are pure functions over immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .invariants import FiberCounts, twist_count_congruence
from .surface import (
    BOUNDARY,
    NONSEP,
    SEP,
    CurveClass,
    HomologyClass,
    SurfaceSpec,
    homology_of_word,
    pairing_matrix,
)

Matrix = tuple[tuple[int, ...], ...]

# Target of a factorization: () means the identity, otherwise a tuple of
# (boundary index, twist exponent) pairs for t_delta_i powers.
Target = tuple[tuple[int, int], ...]
IDENTITY_TARGET: Target = ()


class MissingHomology(ValueError):
    """A nonseparating letter has no homology class assigned."""

    def __init__(self, curve_name: str):
        super().__init__(f"curve {curve_name!r} has no homology class assigned")
        self.curve_name = curve_name


@dataclass(frozen=True)
class TwistLetter:
    """One Dehn-twist letter: a curve name and a sign (+1 or -1)."""

    curve: str
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"twist sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class Factorization:
    """An ordered Dehn-twist word over a table of declared curves."""

    spec: SurfaceSpec
    curves: tuple[CurveClass, ...]
    letters: tuple[TwistLetter, ...]
    target: Target = IDENTITY_TARGET

    def __post_init__(self) -> None:
        index: dict[str, CurveClass] = {}
        for curve in self.curves:
            if curve.name in index:
                raise ValueError(f"duplicate curve name {curve.name!r}")
            index[curve.name] = curve
            self._validate_curve(curve)
        for letter in self.letters:
            if letter.curve not in index:
                raise ValueError(
                    f"letter references undeclared curve {letter.curve!r}"
                )
        seen: set[int] = set()
        for boundary_index, _exponent in self.target:
            if not 1 <= boundary_index <= self.spec.boundary_count:
                raise ValueError(
                    f"target boundary index {boundary_index} out of range "
                    f"1..{self.spec.boundary_count}"
                )
            if boundary_index in seen:
                raise ValueError(
                    f"target boundary index {boundary_index} repeated"
                )
            seen.add(boundary_index)
        object.__setattr__(self, "_index", index)

    def _validate_curve(self, curve: CurveClass) -> None:
        g = self.spec.genus
        if curve.kind == SEP and curve.h > g // 2:
            raise ValueError(
                f"curve {curve.name!r}: separating type {curve.h} exceeds "
                f"floor(g/2) = {g // 2}"
            )
        if curve.kind == BOUNDARY and curve.boundary_index > self.spec.boundary_count:
            raise ValueError(
                f"curve {curve.name!r}: boundary index {curve.boundary_index} "
                f"out of range 1..{self.spec.boundary_count}"
            )
        if curve.homology is not None and len(curve.homology.coords) != 2 * g:
            raise ValueError(
                f"curve {curve.name!r}: homology rank "
                f"{len(curve.homology.coords)} does not match 2g = {2 * g}"
            )
        if curve.word is not None:
            abelianized = homology_of_word(curve.word, self.spec.capped())
            if curve.homology is not None and curve.homology != abelianized:
                raise ValueError(
                    f"curve {curve.name!r}: declared homology disagrees with "
                    "the abelianization of its word"
                )

    def curve(self, name: str) -> CurveClass:
        return self._index[name]

    @property
    def is_identity_target(self) -> bool:
        return not self.target

    def curve_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def all_positive(self) -> bool:
        return all(letter.sign == 1 for letter in self.letters)


def effective_class(curve: CurveClass, spec: SurfaceSpec) -> HomologyClass:
    """Homology class a twist letter acts by.

    Separating and boundary-parallel curves are null-homologous after
    capping, so they get the zero class even when none is stored.
    Nonseparating curves without a stored class raise MissingHomology.
    """
    if curve.homology is not None:
        return curve.homology
    if curve.kind in (SEP, BOUNDARY):
        return HomologyClass.zero(spec.genus)
    raise MissingHomology(curve.name)


# -- integer matrix helpers ------------------------------------------------


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def mat_transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_inverse_symplectic(m: Matrix, j: Matrix) -> Matrix:
    # For symplectic M, M^-1 = J^-1 M^T J and J^-1 = -J.
    neg_j = tuple(tuple(-x for x in row) for row in j)
    return mat_mul(neg_j, mat_mul(mat_transpose(m), j))


def is_symplectic(m: Matrix, genus: int) -> bool:
    j = pairing_matrix(genus)
    return mat_mul(mat_transpose(m), mat_mul(j, m)) == j


# -- twist action ----------------------------------------------------------


def twist_matrix(a: HomologyClass, sign: int = 1) -> Matrix:
    """Transvection matrix of t_a^sign:  x |-> x + sign <x, a> a.

    The class must be zero (separating: identity matrix) or primitive.
    """
    if sign not in (1, -1):
        raise ValueError(f"twist sign must be +1 or -1, got {sign}")
    if not a.is_zero() and not a.is_primitive():
        raise ValueError("twist class must be zero or primitive (gcd 1)")
    n = len(a.coords)
    g = n // 2
    # <x, a> = (Ja)^T x, so M = I + sign * a (Ja)^T as an outer product.
    ja = [0] * n
    for i in range(g):
        ja[2 * i] = a.coords[2 * i + 1]
        ja[2 * i + 1] = -a.coords[2 * i]
    return tuple(
        tuple(
            (1 if i == j else 0) + sign * a.coords[i] * ja[j] for j in range(n)
        )
        for i in range(n)
    )


def letter_matrix(f: Factorization, letter: TwistLetter) -> Matrix:
    return twist_matrix(effective_class(f.curve(letter.curve), f.spec), letter.sign)


def factorization_matrix(f: Factorization) -> Matrix:
    """Product of the letter transvections in composition order.

    Boundary targets play no role here: boundary twists are homologically
    trivial after capping, so the product is compared against the
    identity regardless of target.
    """
    result = identity_matrix(f.spec.homology_rank)
    for letter in f.letters:
        result = mat_mul(result, letter_matrix(f, letter))
    return result


# -- verification ----------------------------------------------------------

NECESSITY_NOTE = (
    "matrix identity is a necessary condition only: failure refutes the "
    "relator, success does not certify it"
)


@dataclass(frozen=True)
class VerificationReport:
    matrix_ok: bool
    congruence_ok: bool | None
    counts: FiberCounts
    letter_kinds: tuple[tuple[str, str], ...]
    all_positive: bool
    note: str = NECESSITY_NOTE


def letter_counts(f: Factorization) -> FiberCounts:
    """Tally letter kinds into fiber counts (boundary letters cap away)."""
    g = f.spec.genus
    n = 0
    s = [0] * (g // 2)
    for letter in f.letters:
        curve = f.curve(letter.curve)
        if curve.kind == NONSEP:
            n += 1
        elif curve.kind == SEP:
            s[curve.h - 1] += 1
    return FiberCounts(g, n, tuple(s))


def verify_homological_relator(
    f: Factorization, hyperelliptic: bool = False
) -> VerificationReport:
    """Check the word against the identity in the homology representation.

    Boundary targets are capped first, so the check always compares the
    letter product with the identity.  When ``hyperelliptic`` is set the
    twist-count congruence is evaluated as a second necessary condition.
    """
    capped = cap_boundary(f)
    counts = letter_counts(capped)
    matrix_ok = factorization_matrix(capped) == identity_matrix(
        capped.spec.homology_rank
    )
    congruence_ok = twist_count_congruence(counts) if hyperelliptic else None
    kinds = tuple(
        (letter.curve, f.curve(letter.curve).kind_label()) for letter in f.letters
    )
    return VerificationReport(
        matrix_ok=matrix_ok,
        congruence_ok=congruence_ok,
        counts=counts,
        letter_kinds=kinds,
        all_positive=f.all_positive(),
    )


# -- word moves ------------------------------------------------------------


_DERIVED_NAME = re.compile(r"(.+)@h[0-9]+\Z")


def _fresh_name(base: str, taken: set[str]) -> str:
    k = 1
    while f"{base}@h{k}" in taken:
        k += 1
    return f"{base}@h{k}"


def _moved_curve_name(
    f: Factorization, old: CurveClass, new_class: HomologyClass
) -> tuple[str, tuple[CurveClass, ...]]:
    """Pick the curve recording the conjugated letter; extend table if needed.

    Reuse the old curve when its class is untouched (disjoint twists
    commute), or the curve the old one was derived from when the move
    undoes the derivation; otherwise mint ``<old>@h<counter>``.  Any
    pi_1 word is dropped from minted curves, since conjugating a word
    would need twist data we do not track.
    """
    old_class = effective_class(old, f.spec)
    if new_class == old_class:
        return old.name, f.curves
    m = _DERIVED_NAME.match(old.name)
    if m is not None and m.group(1) in f.curve_names():
        parent = f.curve(m.group(1))
        if parent.kind == old.kind and effective_class(parent, f.spec) == new_class:
            return parent.name, f.curves
    minted = CurveClass(
        name=_fresh_name(old.name, set(f.curve_names())),
        kind=old.kind,
        h=old.h,
        boundary_index=old.boundary_index,
        homology=new_class,
        word=None,
    )
    return minted.name, f.curves + (minted,)


def _prune_orphan_derived(curves: tuple[CurveClass, ...], letters) -> tuple[CurveClass, ...]:
    # Machine-minted @h curves vanish again once nothing references them,
    # so a move followed by its inverse restores the factorization exactly.
    used = {letter.curve for letter in letters}
    return tuple(
        c for c in curves if c.name in used or not _DERIVED_NAME.match(c.name)
    )


def hurwitz_move(f: Factorization, i: int, direction: str = "right") -> Factorization:
    """Elementary Hurwitz move at 1-based position i (letters i, i+1).

    right:  (t_a, t_b) -> (t_b, t_{b^-1(a)})
    left:   (t_a, t_b) -> (t_{a(b)}, t_a)      (the inverse move)

    The conjugated letter keeps its sign and kind; its class is the
    matrix-vector image under the conjugating twist.  The product matrix
    and the multiset of letter kinds are unchanged.
    """
    if direction not in ("right", "left"):
        raise ValueError(f"direction must be 'right' or 'left', got {direction!r}")
    if not 1 <= i < len(f.letters):
        raise ValueError(
            f"position {i} out of range 1..{len(f.letters) - 1} for a "
            f"{len(f.letters)}-letter factorization"
        )
    first = f.letters[i - 1]
    second = f.letters[i]
    curve_a = f.curve(first.curve)
    curve_b = f.curve(second.curve)
    class_a = effective_class(curve_a, f.spec)
    class_b = effective_class(curve_b, f.spec)

    if direction == "right":
        # Conjugate the first curve by the inverse of the second letter.
        conj = twist_matrix(class_b, -second.sign)
        name, curves = _moved_curve_name(
            f, curve_a, HomologyClass(mat_vec(conj, class_a.coords))
        )
        new_pair = (TwistLetter(curve_b.name, second.sign), TwistLetter(name, first.sign))
    else:
        # Conjugate the second curve by the first letter.
        conj = twist_matrix(class_a, first.sign)
        name, curves = _moved_curve_name(
            f, curve_b, HomologyClass(mat_vec(conj, class_b.coords))
        )
        new_pair = (TwistLetter(name, second.sign), TwistLetter(curve_a.name, first.sign))

    letters = f.letters[: i - 1] + new_pair + f.letters[i + 1 :]
    curves = _prune_orphan_derived(curves, letters)
    return replace(f, curves=curves, letters=letters)


def conjugate_factorization(f: Factorization, m: Matrix) -> Factorization:
    """Map every stored curve class by a symplectic matrix m.

    Curve names and kinds are preserved; classes become m times the old
    class.  The factorization matrix conjugates: matrix(result) equals
    m matrix(f) m^-1.
    """
    if not is_symplectic(m, f.spec.genus):
        raise ValueError("conjugating matrix is not symplectic (M^T J M != J)")

    def mapped(c: CurveClass) -> CurveClass:
        if c.homology is None:
            return c
        image = HomologyClass(mat_vec(m, c.homology.coords))
        if image == c.homology:
            return c
        # a genuinely moved curve cannot keep its pi_1 word
        return replace(c, homology=image, word=None)

    return replace(f, curves=tuple(mapped(c) for c in f.curves))


def cancel_adjacent_inverses(f: Factorization) -> Factorization:
    """Remove adjacent t_c t_c^-1 and t_c^-1 t_c pairs until none remain."""
    out: list[TwistLetter] = []
    for letter in f.letters:
        if out and out[-1].curve == letter.curve and out[-1].sign == -letter.sign:
            out.pop()
        else:
            out.append(letter)
    return replace(f, letters=tuple(out))


def cap_boundary(f: Factorization) -> Factorization:
    """Cap off all boundary components.

    Boundary-parallel letters disappear, boundary-parallel curves leave
    the table, and the target becomes the identity.
    """
    if f.spec.boundary_count == 0 and f.is_identity_target:
        return f
    curves = tuple(c for c in f.curves if c.kind != BOUNDARY)
    kept = {c.name for c in curves}
    letters = tuple(letter for letter in f.letters if letter.curve in kept)
    return Factorization(
        spec=f.spec.capped(), curves=curves, letters=letters, target=IDENTITY_TARGET
    )
