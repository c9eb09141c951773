import numpy as np
import pytest

from equiline.finfield import (
    ClassifierMismatch,
    Hyperplane,
    HyperplaneType,
    QuadForm2,
    RadicalDimension,
    character_value,
    classify_hyperplane,
    coords_to_int,
    dot2,
    enumerate_hyperplanes,
    int_to_coords,
    nonsingular_vectors,
    radical,
    singular_count,
    standard_form,
    transvection,
    transvection_on_functional,
    vectors_lex,
)

# Census of hyperplane types for the standard odd-dimensional form:
# minus 2^(m-1)(2^m - 1), plus 2^(m-1)(2^m + 1), degenerate 2^(2m) - 1.
CENSUS = {
    1: (1, 3, 3),
    2: (6, 10, 15),
    3: (28, 36, 63),
    4: (120, 136, 255),
}


def test_packing_round_trip():
    for x in range(64):
        assert coords_to_int(int_to_coords(x, 6)) == x
    assert coords_to_int((1, 0, 1)) == 5
    assert int_to_coords(5, 3) == (1, 0, 1)
    assert list(vectors_lex(2)) == [0, 2, 1, 3]  # coordinate 0 is the major bit


def test_dot2_bilinearity():
    rng = np.random.default_rng(0)
    for _ in range(100):
        x, y, z = rng.integers(0, 1 << 8, size=3)
        assert dot2(x, y) == dot2(y, x)
        assert dot2(x ^ y, z) == dot2(x, z) ^ dot2(y, z)


def test_quadform_validation():
    with pytest.raises(ValueError):
        QuadForm2(2, (1,))  # wrong row count
    with pytest.raises(ValueError):
        QuadForm2(2, (1, 1))  # lower-triangular coefficient
    with pytest.raises(ValueError):
        QuadForm2(2, (4, 2))  # coefficient outside dim


def test_standard_form_polarization():
    for m in (1, 2, 3):
        q = standard_form(m)
        assert q.dim == 2 * m + 1
        assert q.evaluate(0) == 0
        assert q.evaluate(1) == 1  # value on the radical generator
        assert radical(q) == 1
        rng = np.random.default_rng(m)
        for _ in range(50):
            x, y = rng.integers(0, 1 << q.dim, size=2)
            b = q.bilinear(int(x), int(y))
            assert b == q.bilinear(int(y), int(x))
            assert q.bilinear(int(x), int(x)) == 0  # alternating
            assert dot2(q.bilinear_mask(int(y)), int(x)) == b
        # the radical pairs trivially with everything
        assert all(q.bilinear(1, x) == 0 for x in range(1 << q.dim))


def test_radical_rejects_even_dimension_forms():
    # x0 x1 on F_2^2 is nondegenerate: radical has dimension 0, not 1.
    with pytest.raises(RadicalDimension):
        radical(QuadForm2(2, (2, 0)))


@pytest.mark.parametrize("m", sorted(CENSUS))
def test_hyperplane_census(m):
    q = standard_form(m)
    minus, plus, degen = CENSUS[m]
    assert len(enumerate_hyperplanes(q, HyperplaneType.MINUS)) == minus
    assert len(enumerate_hyperplanes(q, HyperplaneType.PLUS)) == plus
    assert len(enumerate_hyperplanes(q, HyperplaneType.DEGENERATE)) == degen
    assert minus + plus + degen == (1 << q.dim) - 1
    assert minus == 2 ** (m - 1) * (2**m - 1)
    assert plus == 2 ** (m - 1) * (2**m + 1)


def test_classification_matches_singular_counts():
    q = standard_form(2)
    m = 2
    for phi in range(1, 1 << q.dim):
        tag = classify_hyperplane(q, phi)
        s = singular_count(q, phi)
        if tag is HyperplaneType.PLUS:
            assert s == 2 ** (2 * m - 1) + 2 ** (m - 1) - 1
        elif tag is HyperplaneType.MINUS:
            assert s == 2 ** (2 * m - 1) - 2 ** (m - 1) - 1
        else:
            # degenerate = functional kills the radical generator
            assert dot2(phi, 1) == 0
    with pytest.raises(ValueError):
        classify_hyperplane(q, 0)


def test_classify_rejects_malformed_form():
    # Totally singular form: every count collapses, no type fits.
    q = QuadForm2(3, (0, 0, 0))
    with pytest.raises((ClassifierMismatch, RadicalDimension)):
        classify_hyperplane(q, 1)


def test_hyperplane_character():
    h = Hyperplane(functional=0b101, dim=3, type_tag=HyperplaneType.PLUS)
    assert h.contains(0b010)
    assert not h.contains(0b001)
    assert character_value(h, 0b010) == 1
    assert character_value(h, 0b001) == -1
    # character is multiplicative along addition of vectors
    for e in range(8):
        for f in range(8):
            assert h.character(e ^ f) == h.character(e) * h.character(f)


def test_enumeration_order_is_lex():
    q = standard_form(2)
    hyps = enumerate_hyperplanes(q, HyperplaneType.MINUS)
    funcs = [h.functional for h in hyps]
    lex = [phi for phi in vectors_lex(q.dim) if phi]
    positions = [lex.index(f) for f in funcs]
    assert positions == sorted(positions)


@pytest.mark.parametrize("m", (1, 2))
def test_transvection_is_an_isometry_and_involution(m):
    q = standard_form(m)
    for u in nonsingular_vectors(q):
        for x in range(1 << q.dim):
            y = transvection(q, u, x)
            assert q.evaluate(y) == q.evaluate(x)
            assert transvection(q, u, y) == x
        # linearity
        for x in range(1 << q.dim):
            for z in (3, 5):
                assert transvection(q, u, x ^ z) == transvection(q, u, x) ^ transvection(
                    q, u, z
                )


def test_transvection_rejects_singular_direction():
    q = standard_form(1)
    with pytest.raises(ValueError):
        transvection(q, 2, 1)  # Q(e_1) = 0
    with pytest.raises(ValueError):
        transvection_on_functional(q, 2, 1)


def test_functional_pullback_matches_point_action():
    # phi'(x) = phi(t(x)) for the pullback phi' of phi along the transvection t.
    for m in (1, 2):
        q = standard_form(m)
        for u in nonsingular_vectors(q):
            for phi in range(1, 1 << q.dim):
                phi2 = transvection_on_functional(q, u, phi)
                for x in range(1 << q.dim):
                    assert dot2(phi2, x) == dot2(phi, transvection(q, u, x))


def test_functional_pullback_preserves_type():
    q = standard_form(2)
    for u in nonsingular_vectors(q):
        for tag in (HyperplaneType.MINUS, HyperplaneType.PLUS):
            for h in enumerate_hyperplanes(q, tag):
                img = transvection_on_functional(q, u, h.functional)
                assert classify_hyperplane(q, img) is tag


def test_nonsingular_vector_counts():
    # Q = 1 on exactly half the space for the standard form.
    for m in (1, 2, 3):
        q = standard_form(m)
        assert len(nonsingular_vectors(q)) == 1 << (2 * m)
