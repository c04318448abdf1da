import warnings

import pytest
from sympy import primefactors

from rankbound import (
    CurveError,
    CurveLiteralParser,
    ParseError,
    ReductionType,
    SingularModel,
    WeierstrassCurve,
    check_bad_primes,
    classify_reduction,
    curve_from_ainvs,
    is_good_prime,
    p_minimal_model,
    parse_curve_literal,
    twist_scaled,
    valuation,
)
from rankbound.curves.literal import CurveLiteralLexer

from .oracles import SAMPLE_CURVES, brute_trace, nonsingular_trace

E20 = (1, 0, 0, -431092980766333677958362095891166, 5156283555366643659035652799871176909391533088196)


def _identities_hold(curve: WeierstrassCurve) -> bool:
    b2, b4, b6, b8 = curve.b2, curve.b4, curve.b6, curve.b8
    return (
        1728 * curve.disc == curve.c4 ** 3 - curve.c6 ** 2
        and curve.c4 == b2 ** 2 - 24 * b4
        and curve.c6 == -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
        and 4 * b8 == b2 * b6 - b4 ** 2
    )


@pytest.mark.parametrize("ainvs", [*SAMPLE_CURVES.values(), E20])
def test_invariant_identities(ainvs):
    assert _identities_hold(curve_from_ainvs(*ainvs))


def test_known_invariants():
    curve = curve_from_ainvs(0, -1, 1, -10, -20)
    assert (curve.c4, curve.c6, curve.disc) == (496, 20008, -161051)
    assert curve.disc == -(11 ** 5)

    curve = curve_from_ainvs(0, 0, 0, 0, 1)
    assert curve.c4 == 0
    assert curve.disc == -432


def test_singular_model():
    with pytest.raises(SingularModel):
        curve_from_ainvs(0, 0, 0, 0, 0)

    # y^2 = x^3 has a cusp, y^2 = x^3 + x^2 a node
    with pytest.raises(CurveError):
        curve_from_ainvs(0, 1, 0, 0, 0)


def test_curves_are_values():
    a = curve_from_ainvs(0, -1, 1, -10, -20)
    b = parse_curve_literal("[0, -1, 1, -10, -20]")
    assert a == b and hash(a) == hash(b)
    assert a.literal == "[0,-1,1,-10,-20]"
    assert str(a) == a.literal


@pytest.mark.parametrize(
    ["n", "p", "expected"],
    [
        (-161051, 11, 5),
        (432, 2, 4),
        (432, 3, 3),
        (7, 2, 0),
    ],
)
def test_valuation(n, p, expected):
    assert valuation(n, p) == expected


def test_valuation_of_zero():
    assert valuation(0, 5) == float("inf")


def test_p_minimal_model_keeps_minimal_input():
    curve = curve_from_ainvs(0, -1, 1, -10, -20)
    assert p_minimal_model(curve, 11) is curve
    assert p_minimal_model(curve, 7) is curve


@pytest.mark.parametrize("name", ["11a1", "37a1", "389a1", "5077a1"])
@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_p_minimal_model_undoes_scaling(name, p):
    curve = curve_from_ainvs(*SAMPLE_CURVES[name])
    scaled = twist_scaled(curve, p)
    assert (scaled.c4, scaled.c6, scaled.disc) == (p ** 4 * curve.c4, p ** 6 * curve.c6, p ** 12 * curve.disc)

    minimal = p_minimal_model(scaled, p)
    assert (minimal.c4, minimal.c6, minimal.disc) == (curve.c4, curve.c6, curve.disc)


def test_p_minimal_model_recovers_ainvs():
    curve = curve_from_ainvs(0, -1, 1, -10, -20)
    assert p_minimal_model(twist_scaled(curve, 11), 11).ainvs == curve.ainvs


@pytest.mark.parametrize("p", [2, 3])
def test_p_minimal_model_small_primes(p):
    curve = curve_from_ainvs(0, -1, 1, -10, -20)
    minimal = p_minimal_model(twist_scaled(curve, p), p)
    assert minimal.disc == curve.disc
    assert _identities_hold(minimal)


def test_twist_scaled_rejects_zero():
    with pytest.raises(ValueError):
        twist_scaled(curve_from_ainvs(0, -1, 1, -10, -20), 0)


@pytest.mark.parametrize(
    ["ainvs", "p", "kind", "ap"],
    [
        ((0, -1, 1, -10, -20), 11, ReductionType.MultiplicativeSplit, 1),
        ((0, 0, 1, -1, 0), 37, ReductionType.MultiplicativeNonsplit, -1),
        ((0, -1, 1, -10, -20), 7, ReductionType.Good, -2),
        ((0, 0, 0, 0, 1), 3, ReductionType.Additive, 0),
    ],
)
def test_classify_reduction(ainvs, p, kind, ap):
    local = classify_reduction(curve_from_ainvs(*ainvs), p)
    assert (local.p, local.type, local.ap) == (p, kind, ap)


@pytest.mark.parametrize(["ainvs", "p"], [((0, -1, 1, -10, -20), 11), ((0, 0, 1, -1, 0), 37), ((0, 0, 1, -7, 6), 5077)])
def test_classify_reduction_is_warning_free(ainvs, p):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert classify_reduction(curve_from_ainvs(*ainvs), p).type.is_bad


@pytest.mark.parametrize("name", list(SAMPLE_CURVES))
def test_bad_primes_match_nonsingular_count(name):
    ainvs = SAMPLE_CURVES[name]
    curve = curve_from_ainvs(*ainvs)

    for p in (p for p in primefactors(curve.disc) if p < 1000):
        local = classify_reduction(curve, p)
        assert local.type.is_bad
        assert local.ap in (-1, 0, 1)
        assert local.ap == nonsingular_trace(p_minimal_model(curve, p).ainvs, p)


@pytest.mark.parametrize("name", list(SAMPLE_CURVES))
@pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 17, 19, 23, 29, 31])
def test_good_primes_match_point_count(name, p):
    curve = curve_from_ainvs(*SAMPLE_CURVES[name])
    if curve.disc % p == 0:
        pytest.skip("bad prime")

    local = classify_reduction(curve, p)
    assert local.type is ReductionType.Good
    assert local.ap == brute_trace(curve.ainvs, p)
    assert local.ap ** 2 <= 4 * p


@pytest.mark.parametrize("u", [2, 3, 5, 7])
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_classification_is_model_independent(u, p):
    curve = curve_from_ainvs(0, -1, 1, -10, -20)
    scaled = twist_scaled(curve, u)
    assert classify_reduction(scaled, p) == classify_reduction(curve, p)


def test_non_minimal_prime_is_good():
    curve = curve_from_ainvs(0, -1, 1, -10, -20)
    scaled = twist_scaled(curve, 5)
    assert scaled.disc % 5 == 0
    assert is_good_prime(scaled, 5)
    assert not is_good_prime(curve, 11)


def test_check_bad_primes():
    curve = curve_from_ainvs(1, 0, 1, 4, -6)
    check_bad_primes(curve, [2, 7])

    with pytest.raises(CurveError):
        check_bad_primes(curve, [2])
    with pytest.raises(CurveError):
        check_bad_primes(curve, [2, 5, 7])
    with pytest.raises(CurveError):
        check_bad_primes(curve, [1, 2, 7])


@pytest.mark.parametrize(
    ["text", "ainvs"],
    [
        ("[0,-1,1,-10,-20]", (0, -1, 1, -10, -20)),
        ("  [ 0 , -1 ,1,-10, -20 ]  ", (0, -1, 1, -10, -20)),
        ("[+1,0,0,-431092980766333677958362095891166,5156283555366643659035652799871176909391533088196]", E20),
    ],
)
def test_parse_curve_literal(text, ainvs):
    assert parse_curve_literal(text).ainvs == ainvs


@pytest.mark.parametrize(
    ["text", "offset"],
    [
        ("[0,-1,1,-10]", 11),
        ("[0,-1,1,-10,-20,3]", 17),
        ("[0,-1,1,-10,-20", 15),
        ("[0,-1,1,x,-20]", 8),
        ("[0,-1,1,-10,-20] 5", 17),
        ("(0,-1,1,-10,-20)", 0),
    ],
)
def test_parse_curve_literal_errors(text, offset):
    with pytest.raises(ParseError) as e:
        parse_curve_literal(text)
    assert e.value.offset == offset


def test_lexer_push_back():
    lexer = CurveLiteralLexer("[12, -3]")
    first = lexer.peek_token()
    assert first.text == "["
    assert lexer.get_token() is first
    assert [token.text for token in lexer] == ["12", ",", "-3", "]"]
    assert not lexer.get_token()


def test_table_row_grammar():
    row = CurveLiteralParser("11 a 1 [0,-1,1,-10,-20] 0 5").table_row()
    assert row == (11, "a", 1, (0, -1, 1, -10, -20), 0, 5)
