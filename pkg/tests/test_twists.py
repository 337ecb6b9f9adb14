import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lefschetz.invariants import FiberCounts
from lefschetz.surface import (
    NONSEP,
    SEP,
    CurveClass,
    HomologyClass,
    SurfaceSpec,
    pairing_matrix,
)
from lefschetz.twists import (
    Factorization,
    MissingHomology,
    TwistLetter,
    cancel_adjacent_inverses,
    cap_boundary,
    conjugate_factorization,
    factorization_matrix,
    hurwitz_move,
    identity_matrix,
    is_symplectic,
    letter_counts,
    mat_mul,
    mat_vec,
    twist_matrix,
    verify_homological_relator,
)

A1 = HomologyClass.basis(1, "a1")
B1 = HomologyClass.basis(1, "b1")


def torus_factorization(names):
    curves = (
        CurveClass("ta", NONSEP, homology=A1),
        CurveClass("tb", NONSEP, homology=B1),
    )
    return Factorization(
        SurfaceSpec(1), curves, tuple(TwistLetter(n) for n in names)
    )


# -- independent arithmetic oracle for the torus relator ---------------------
# Hand-written 2x2 matrices for t_a1 and t_b1, multiplied locally; the
# expected values below are frozen from this computation.


def mul2(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


ORACLE_A = ((1, -1), (0, 1))  # b1 -> b1 - a1, a1 fixed
ORACLE_B = ((1, 0), (1, 1))  # a1 -> a1 + b1, b1 fixed


def oracle_power(p, k):
    out = ((1, 0), (0, 1))
    for _ in range(k):
        out = mul2(out, p)
    return out


def test_twist_matrix_matches_hand_matrices():
    assert twist_matrix(A1, 1) == ORACLE_A
    assert twist_matrix(B1, 1) == ORACLE_B


def test_torus_product_has_order_six():
    p = mul2(ORACLE_A, ORACLE_B)
    assert oracle_power(p, 6) == ((1, 0), (0, 1))
    for k in range(1, 6):
        assert oracle_power(p, k) != ((1, 0), (0, 1))


def test_twist_matrix_zero_class_is_identity():
    assert twist_matrix(HomologyClass.zero(2)) == identity_matrix(4)


def test_twist_matrix_example_g1():
    # image of b1 under t_a1 is b1 - a1
    assert mat_vec(twist_matrix(A1, 1), B1.coords) == (-1, 1)


def test_twist_matrix_rejects_imprimitive():
    with pytest.raises(ValueError):
        twist_matrix(HomologyClass((2, 0)))


def test_twist_inverse_pairs_cancel():
    m = twist_matrix(HomologyClass((3, 5)), 1)
    m_inv = twist_matrix(HomologyClass((3, 5)), -1)
    assert mat_mul(m, m_inv) == identity_matrix(2)


def primitive_classes(genus):
    dim = 2 * genus

    def normalize(v):
        g = math.gcd(*v)
        return tuple(x // g for x in v)

    return (
        st.lists(st.integers(-6, 6), min_size=dim, max_size=dim)
        .filter(lambda v: any(v))
        .map(normalize)
        .map(HomologyClass)
    )


@given(primitive_classes(3), st.sampled_from([1, -1]))
@settings(max_examples=200, deadline=None)
def test_twist_matrices_are_symplectic(cls, sign):
    m = twist_matrix(cls, sign)
    assert is_symplectic(m, 3)
    assert mat_mul(m, twist_matrix(cls, -sign)) == identity_matrix(6)


# -- factorization_matrix -----------------------------------------------------


def test_empty_factorization_is_identity():
    f = torus_factorization(())
    assert factorization_matrix(f) == identity_matrix(2)


def test_torus_relator_six_copies():
    f = torus_factorization(("ta", "tb") * 6)
    assert factorization_matrix(f) == identity_matrix(2)


def test_single_positive_twist_not_identity():
    f = torus_factorization(("ta",))
    assert factorization_matrix(f) != identity_matrix(2)


def test_composition_order_is_left_product():
    f = torus_factorization(("ta", "tb"))
    assert factorization_matrix(f) == mul2(ORACLE_A, ORACLE_B)


def test_missing_homology_error_names_curve():
    curves = (CurveClass("mystery", NONSEP),)
    f = Factorization(SurfaceSpec(1), curves, (TwistLetter("mystery"),))
    with pytest.raises(MissingHomology, match="mystery"):
        factorization_matrix(f)


def test_separating_letters_act_trivially():
    curves = (CurveClass("d", SEP, h=1),)
    f = Factorization(SurfaceSpec(2), curves, (TwistLetter("d"),))
    assert factorization_matrix(f) == identity_matrix(4)


# -- verify_homological_relator -----------------------------------------------


def test_verify_torus_relator():
    report = verify_homological_relator(torus_factorization(("ta", "tb") * 6))
    assert report.matrix_ok
    assert report.congruence_ok is None
    assert report.counts == FiberCounts(1, 12)
    assert report.all_positive


def test_verify_torus_fifth_power_fails():
    report = verify_homological_relator(torus_factorization(("ta", "tb") * 5))
    assert not report.matrix_ok


def test_verify_braid_word_on_genus_two():
    # t_a t_b t_a t_b^-1 t_a^-1 t_b^-1 with <a, b> = 1
    a = HomologyClass.basis(2, "a1")
    b = HomologyClass.basis(2, "b1")
    curves = (
        CurveClass("a", NONSEP, homology=a),
        CurveClass("b", NONSEP, homology=b),
    )
    letters = (
        TwistLetter("a", 1), TwistLetter("b", 1), TwistLetter("a", 1),
        TwistLetter("b", -1), TwistLetter("a", -1), TwistLetter("b", -1),
    )
    f = Factorization(SurfaceSpec(2), curves, letters)
    report = verify_homological_relator(f)
    assert report.matrix_ok
    assert not report.all_positive


def test_verify_caps_boundary_targets():
    curves = (
        CurveClass("ta", NONSEP, homology=A1),
        CurveClass("tb", NONSEP, homology=B1),
    )
    f = Factorization(
        SurfaceSpec(1, 1),
        curves,
        tuple(TwistLetter(n) for n in ("ta", "tb") * 6),
        target=((1, 1),),
    )
    # capping ignores the boundary target and checks the letter product
    assert verify_homological_relator(f).matrix_ok


def test_verify_hyperelliptic_congruence_flag():
    f = torus_factorization(("ta", "tb") * 6)
    assert verify_homological_relator(f, hyperelliptic=True).congruence_ok
    f5 = torus_factorization(("ta", "tb") * 5)
    assert not verify_homological_relator(f5, hyperelliptic=True).congruence_ok


# -- hurwitz_move ---------------------------------------------------------------


def test_hurwitz_right_move_conjugates():
    f = torus_factorization(("ta", "tb"))
    moved = hurwitz_move(f, 1, "right")
    assert [l.curve for l in moved.letters] == ["tb", "ta@h1"]
    # frozen from the matrix-vector oracle: twist(b1, -1) a1 = a1 - b1
    assert moved.curve("ta@h1").homology == HomologyClass((1, -1))
    assert factorization_matrix(moved) == factorization_matrix(f)


def test_hurwitz_disjoint_swap_keeps_classes():
    a1 = HomologyClass.basis(2, "a1")
    a2 = HomologyClass.basis(2, "a2")
    curves = (
        CurveClass("u", NONSEP, homology=a1),
        CurveClass("v", NONSEP, homology=a2),
    )
    f = Factorization(SurfaceSpec(2), curves, (TwistLetter("u"), TwistLetter("v")))
    moved = hurwitz_move(f, 1, "right")
    assert [l.curve for l in moved.letters] == ["v", "u"]
    assert moved.curves == f.curves


def test_hurwitz_right_then_left_restores():
    f = torus_factorization(("ta", "tb", "ta", "tb"))
    for i in (1, 2, 3):
        assert hurwitz_move(hurwitz_move(f, i, "right"), i, "left") == f
        assert hurwitz_move(hurwitz_move(f, i, "left"), i, "right") == f


def test_hurwitz_kind_multiset_preserved():
    a1 = HomologyClass.basis(2, "a1")
    curves = (
        CurveClass("u", NONSEP, homology=a1),
        CurveClass("d", SEP, h=1),
    )
    f = Factorization(SurfaceSpec(2), curves, (TwistLetter("u"), TwistLetter("d")))
    moved = hurwitz_move(f, 1, "right")
    assert letter_counts(moved) == letter_counts(f)
    assert factorization_matrix(moved) == factorization_matrix(f)


def test_hurwitz_position_out_of_range():
    f = torus_factorization(("ta", "tb"))
    with pytest.raises(ValueError):
        hurwitz_move(f, 0)
    with pytest.raises(ValueError):
        hurwitz_move(f, 2)


def random_genus_le4_factorization(rng):
    genus = rng.randint(1, 4)
    dim = 2 * genus
    curves = []
    for k in range(6):
        while True:
            coords = [rng.randint(-3, 3) for _ in range(dim)]
            if any(coords):
                g = math.gcd(*coords)
                coords = [c // g for c in coords]
                break
        curves.append(
            CurveClass(f"c{k}", NONSEP, homology=HomologyClass(tuple(coords)))
        )
    if genus >= 2:
        curves.append(CurveClass("sep", SEP, h=genus // 2))
    names = [c.name for c in curves]
    letters = tuple(
        TwistLetter(rng.choice(names), rng.choice((1, 1, 1, -1))) for _ in range(10)
    )
    return Factorization(SurfaceSpec(genus), tuple(curves), letters)


def test_thousand_random_hurwitz_moves_preserve_product():
    rng = random.Random(20240811)
    moves = 0
    while moves < 1000:
        f = random_genus_le4_factorization(rng)
        before = factorization_matrix(f)
        for _ in range(rng.randint(1, 8)):
            i = rng.randint(1, len(f.letters) - 1)
            f = hurwitz_move(f, i, rng.choice(("right", "left")))
            moves += 1
        assert factorization_matrix(f) == before


# -- conjugate_factorization ----------------------------------------------------


def test_conjugate_by_identity():
    f = torus_factorization(("ta", "tb"))
    assert conjugate_factorization(f, identity_matrix(2)) == f


def test_conjugate_example_g1():
    # frozen from the matrix-vector oracle: twist(b1, +1) a1 = a1 + b1
    f = torus_factorization(("ta",))
    m = twist_matrix(B1, 1)
    conj = conjugate_factorization(f, m)
    assert conj.curve("ta").homology == HomologyClass((1, 1))


def test_conjugate_matrix_conjugates():
    f = torus_factorization(("ta", "tb", "ta"))
    m = twist_matrix(HomologyClass((1, 2)), 1)
    conj = conjugate_factorization(f, m)
    j = pairing_matrix(1)
    m_inv = mat_mul(
        tuple(tuple(-x for x in row) for row in j),
        mat_mul(tuple(zip(*m)), j),
    )
    assert factorization_matrix(conj) == mat_mul(
        m, mat_mul(factorization_matrix(f), m_inv)
    )


def test_conjugate_relator_stays_relator():
    f = torus_factorization(("ta", "tb") * 6)
    m = twist_matrix(HomologyClass((2, 1)), -1)
    assert factorization_matrix(conjugate_factorization(f, m)) == identity_matrix(2)


def test_conjugate_then_inverse_restores_classes():
    f = torus_factorization(("ta", "tb"))
    m = twist_matrix(HomologyClass((1, 3)), 1)
    m_inv = twist_matrix(HomologyClass((1, 3)), -1)
    back = conjugate_factorization(conjugate_factorization(f, m), m_inv)
    assert [c.homology for c in back.curves] == [c.homology for c in f.curves]


def test_conjugate_identity_keeps_words():
    from lefschetz.words import parse_word

    curves = (
        CurveClass(
            "u", NONSEP, homology=A1, word=parse_word("a1")
        ),
    )
    f = Factorization(SurfaceSpec(1), curves, (TwistLetter("u"),))
    assert conjugate_factorization(f, identity_matrix(2)) == f
    # a genuinely moved curve drops its word but keeps kind and name
    moved = conjugate_factorization(f, twist_matrix(B1, 1))
    assert moved.curve("u").word is None
    assert moved.curve("u").homology == HomologyClass((1, 1))


def test_conjugate_rejects_non_symplectic():
    f = torus_factorization(("ta",))
    with pytest.raises(ValueError):
        conjugate_factorization(f, ((1, 0), (0, 2)))


# -- cancel_adjacent_inverses ----------------------------------------------------


def test_cancel_single_pair():
    f = torus_factorization(())
    f = Factorization(
        f.spec, f.curves, (TwistLetter("ta", 1), TwistLetter("ta", -1))
    )
    assert cancel_adjacent_inverses(f).letters == ()


def test_cancel_interior_pair():
    curves = (
        CurveClass("ta", NONSEP, homology=A1),
        CurveClass("tb", NONSEP, homology=B1),
        CurveClass("tc", NONSEP, homology=HomologyClass((1, 1))),
    )
    letters = (
        TwistLetter("ta"), TwistLetter("tc"), TwistLetter("tc", -1), TwistLetter("tb")
    )
    f = Factorization(SurfaceSpec(1), curves, letters)
    out = cancel_adjacent_inverses(f)
    assert [l.curve for l in out.letters] == ["ta", "tb"]
    assert factorization_matrix(out) == factorization_matrix(f)


def test_cancel_cascade_and_noop():
    curves = (CurveClass("ta", NONSEP, homology=A1),
              CurveClass("tb", NONSEP, homology=B1))
    letters = (
        TwistLetter("ta"), TwistLetter("tb"), TwistLetter("tb", -1),
        TwistLetter("ta", -1),
    )
    f = Factorization(SurfaceSpec(1), curves, letters)
    assert cancel_adjacent_inverses(f).letters == ()
    g = torus_factorization(("ta", "tb", "ta"))
    assert cancel_adjacent_inverses(g) == g


# -- cap_boundary -----------------------------------------------------------------


def test_cap_boundary_strips_targets_and_boundary_curves():
    from lefschetz.surface import BOUNDARY

    curves = (
        CurveClass("ta", NONSEP, homology=A1),
        CurveClass("delta", BOUNDARY, boundary_index=1),
    )
    f = Factorization(
        SurfaceSpec(1, 2),
        curves,
        (TwistLetter("ta"), TwistLetter("delta")),
        target=((1, 1), (2, 2)),
    )
    capped = cap_boundary(f)
    assert capped.spec == SurfaceSpec(1, 0)
    assert capped.is_identity_target
    assert [l.curve for l in capped.letters] == ["ta"]


def test_factorization_validation():
    with pytest.raises(ValueError, match="undeclared"):
        Factorization(SurfaceSpec(1), (), (TwistLetter("zz"),))
    with pytest.raises(ValueError, match="duplicate"):
        Factorization(
            SurfaceSpec(1),
            (CurveClass("c", NONSEP), CurveClass("c", NONSEP)),
            (),
        )
    with pytest.raises(ValueError, match="out of range"):
        Factorization(SurfaceSpec(1, 1), (), (), target=((2, 1),))
