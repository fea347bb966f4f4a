from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from localcharge.bundles import (ExtensionClassError, TransitionMatrix, bundle, diag,
                                 elementary_transform, elementary_transform_gauge,
                                 ext_param_count, ext_slots, iso_on_punctured, is_instanton,
                                 moduli_dim, restricted_splitting_type, splitting_type,
                                 transition_matrix, validate_extension_class)
from localcharge.laurent import LaurentPoly, ParseError, canonical_string, parse_laurent

import oracles

Z = LaurentPoly.z
ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


# parsing and printing


@pytest.mark.parametrize("text,terms", [
    ("z*u", {(1, 1): 1}),
    ("u*z", {(1, 1): 1}),
    ("zu", {(1, 1): 1}),
    ("2*z^-1*u - 3/2*z*u^2", {(1, -1): 2, (2, 1): Fraction(-3, 2)}),
    ("-u + u", {}),
    ("0", {}),
    ("z^2 u^3 + 1/3", {(3, 2): 1, (0, 0): Fraction(1, 3)}),
])
def test_parse(text, terms):
    assert parse_laurent(text) == LaurentPoly(terms)


@pytest.mark.parametrize("text", ["", "z*z", "u^", "1/0*z", "z +", "3 4", "x", "z^1.5", "+-z"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_laurent(text)


def test_canonical_string_sorts_and_shows_coefficients():
    p = parse_laurent("z^2*u - 3/2*z*u^2 + z^-1*u + 2")
    assert canonical_string(p) == "2 + 1*z^-1*u + 1*z^2*u - 3/2*z*u^2"
    assert canonical_string(ZERO) == "0"


@given(st.dictionaries(st.tuples(st.integers(-3, 4), st.integers(-5, 6)),
                       st.fractions(min_value=-20, max_value=20, max_denominator=9),
                       max_size=6))
def test_canonical_string_round_trips(terms):
    p = LaurentPoly(terms)
    assert parse_laurent(canonical_string(p)) == p
    assert parse_laurent(str(p)) == p


# extension classes


def test_validation_examples():
    assert bundle(2, 2, "z*u").p == LaurentPoly.monomial(1, 1)
    for k in (1, 2, 5):
        for j in (0, 1, 7):
            assert bundle(k, j, 0).is_split
    with pytest.raises(ExtensionClassError, match=r"\(r=1, s=3\)"):
        bundle(3, 3, "u*z^3")
    with pytest.raises(ExtensionClassError, match=r"\(r=1, s=5\)"):
        bundle(3, 3, "z^5*u")
    with pytest.raises(ValueError):
        bundle(0, 1)


def test_parameter_count_examples():
    assert ext_param_count(1, 1) == 0
    assert ext_param_count(2, 2) == 1 and ext_slots(2, 2) == [(1, 1)]
    assert ext_param_count(3, 3) == 2 and ext_slots(3, 3) == [(1, 1), (1, 2)]


@pytest.mark.parametrize("k", range(1, 6))
def test_parameter_count_matches_bruteforce(k):
    for j in range(0, 11):
        brute = oracles.ext_index_set_bruteforce(k, j)
        accepted = []
        for r in range(-3, 25):
            for s in range(-30, 30):
                try:
                    validate_extension_class(k, j, LaurentPoly.monomial(r, s))
                except ExtensionClassError:
                    continue
                accepted.append((r, s))
        assert sorted(accepted) == sorted(brute) == ext_slots(k, j)
        assert ext_param_count(k, j) == len(brute)


@st.composite
def bundles(draw, kmax=4, jmax=8):
    k = draw(st.integers(1, kmax))
    j = draw(st.integers(0, jmax))
    slots = ext_slots(k, j)
    chosen = draw(st.lists(st.sampled_from(slots), unique=True)) if slots else []
    coeffs = draw(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4)
                           .filter(bool), min_size=len(chosen), max_size=len(chosen)))
    return bundle(k, j, LaurentPoly(dict(zip(chosen, coeffs))))


@given(st.integers(1, 5), st.integers(0, 8), st.integers(-4, 8), st.integers(-10, 10))
def test_validation_is_the_index_set_test(k, j, r, s):
    ok = oracles.kr_ok(k, j, r, s) and 1 <= r and k * r <= 2 * j - 2
    try:
        validate_extension_class(k, j, LaurentPoly.monomial(r, s, 3))
        accepted = True
    except ExtensionClassError:
        accepted = False
    assert accepted == ok


# transition matrices and splitting type


def test_transition_matrix_examples():
    assert transition_matrix(bundle(3, 0)) == diag(ONE, ONE)
    T = transition_matrix(bundle(2, 2, "z*u"))
    assert (T.a, T.b, T.c, T.d) == (Z(2), LaurentPoly.monomial(1, 1), ZERO, Z(-2))
    assert transition_matrix(bundle(3, 3)) == diag(Z(3), Z(-3))


@given(bundles())
def test_determinant_is_one(b):
    assert transition_matrix(b).det() == ONE


def test_splitting_type_examples():
    assert splitting_type(diag(Z(4), Z(-4))) == 4
    assert splitting_type(TransitionMatrix.of([[Z(2), Z(1)], [ZERO, Z(-2)]])) == 1
    assert splitting_type(diag(ONE, ONE)) == 0


def test_off_diagonal_term_lowers_splitting_by_explicit_change_of_frame():
    # [[z^2, z], [0, z^-2]] = A(1/z) diag(z, 1/z) B(z) with A, B invertible
    # polynomial matrices in 1/z and z respectively
    T = TransitionMatrix.of([[Z(2), Z(1)], [ZERO, Z(-2)]])
    A = TransitionMatrix.of([[ONE, ZERO], [Z(-3), ONE]])
    B = TransitionMatrix.of([[Z(1), ONE], [-ONE, ZERO]])
    assert A @ diag(Z(1), Z(-1)) @ B == T


@given(bundles())
def test_restriction_to_the_curve_recovers_j(b):
    assert splitting_type(transition_matrix(b).restrict_u0()) == b.j


@given(bundles(kmax=4, jmax=6))
def test_elementary_transform_raises_splitting_by_k(b):
    e = elementary_transform(b)
    assert e.k == b.k and e.j == b.j + b.k
    assert restricted_splitting_type(e) == b.j + b.k
    assert e.splitting_class == b.splitting_class
    assert iso_on_punctured(b, e)
    left, right = elementary_transform_gauge(b)
    assert left @ transition_matrix(b) @ right == transition_matrix(e)
    assert left.det() == ONE and right.det() == ONE


def test_elementary_transform_examples():
    assert restricted_splitting_type(elementary_transform(bundle(2, 0))) == 2
    e = elementary_transform(bundle(3, 3, "z*u"))
    assert restricted_splitting_type(e) == 6 and e.j % 3 == 0
    ee = elementary_transform(elementary_transform(bundle(3, 2)))
    assert restricted_splitting_type(ee) == 8


def test_isomorphism_off_the_curve():
    assert iso_on_punctured(bundle(3, 2), bundle(3, 5))
    assert not iso_on_punctured(bundle(3, 1), bundle(3, 2))
    b = bundle(3, 3, "z*u")
    assert iso_on_punctured(b, b)
    with pytest.raises(ValueError):
        iso_on_punctured(bundle(2, 1), bundle(3, 1))


@given(bundles(kmax=5, jmax=10))
def test_instanton_iff_class_zero(b):
    assert is_instanton(b) == (b.splitting_class.residue == 0)


def test_instanton_examples():
    assert is_instanton(bundle(3, 3))
    assert not is_instanton(bundle(3, 2))
    assert all(is_instanton(bundle(k, 0)) for k in range(1, 6))


def test_moduli_dimension():
    assert moduli_dim(3, 3) == 1
    assert moduli_dim(2, 4) == 4
    with pytest.warns(RuntimeWarning, match="empty stratum"):
        assert moduli_dim(1, 1) == -1
    with pytest.raises(ValueError, match="split and rigid"):
        moduli_dim(4, 2)
