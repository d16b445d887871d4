import random

import pytest

from drinfeld_census import FieldCtxFactory
from drinfeld_census.apoly import (
    APoly,
    enumerate_monic,
    evaluate,
    factor,
    gcd,
    is_irreducible,
    lcm,
    monic_irreducibles,
    square_divisors,
)
from drinfeld_census.errors import (
    DivisionByZeroError,
    PolynomialParseError,
    ZeroPolynomialError,
)


@pytest.fixture
def f3(field_ctx_factory: FieldCtxFactory):
    return field_ctx_factory.create_ctx(3).base


def _random_poly(rng: random.Random, field, max_degree: int) -> APoly:
    return APoly(field, tuple(rng.randrange(field.order) for _ in range(max_degree + 1)))


def test_parse_and_format(f3):
    """Test the text format in both directions."""
    # act
    poly = APoly.parse("T^3-T", f3)

    # assert
    assert poly.coeffs == (0, 2, 0, 1)
    assert poly.format() == "0+2*T+0*T^2+1*T^3"
    assert APoly.parse(poly.format(), f3) == poly
    assert APoly.parse("2+0*T+1*T^2", f3).coeffs == (2, 0, 1)
    assert APoly.zero(f3).format() == "0"


@pytest.mark.parametrize("text", ["", "T^", "2**T", "T+*", "x"])
def test_parse_rejects_malformed_text(f3, text):
    """Test that malformed polynomial text raises PolynomialParseError."""
    # act & assert
    with pytest.raises(PolynomialParseError):
        APoly.parse(text, f3)


def test_parse_over_f9_uses_element_codes(field_ctx_factory: FieldCtxFactory):
    """Test that integer coefficients over F_9 are element codes in [0, 9)."""
    # arrange
    f9 = field_ctx_factory.create_ctx(9).base

    # act & assert
    assert APoly.parse("5*T+7", f9).coeffs == (7, 5)
    with pytest.raises(PolynomialParseError):
        APoly.parse("9*T", f9)


def test_gcd_and_division(f3):
    """Test gcd(T^2-1, T-1) = T-1 and divmod(T^3, T) = (T^2, 0)."""
    # arrange
    t = APoly.t(f3)
    one = APoly.one(f3)

    # act
    g = gcd(t * t - one, t - one)
    quot, rem = divmod(t**3, t)

    # assert
    assert g == t - one
    assert quot == t * t
    assert rem.is_zero()
    assert gcd(APoly.zero(f3), APoly.zero(f3)).is_zero()


def test_division_by_zero_raises(f3):
    """Test that dividing by the zero polynomial raises DivisionByZeroError."""
    # act & assert
    with pytest.raises(DivisionByZeroError):
        divmod(APoly.t(f3), APoly.zero(f3))


def test_euclidean_contract_on_random_pairs(f3):
    """Test a = q*b + r with deg r < deg b and gcd dividing both, for random pairs."""
    # arrange
    rng = random.Random(7)

    for _ in range(300):
        a = _random_poly(rng, f3, 5)
        b = _random_poly(rng, f3, 3)
        if b.is_zero():
            continue

        # act
        quot, rem = divmod(a, b)
        g = gcd(a, b)

        # assert
        assert quot * b + rem == a
        assert rem.degree < b.degree
        assert g.divides(a) and g.divides(b)
        if not a.is_zero():
            assert (g * lcm(a, b)).monic() == (a * b).monic()


def test_irreducibility(f3):
    """Test irreducibility of T, T^2+1 and T^2-1 over F_3."""
    # arrange
    t = APoly.t(f3)
    one = APoly.one(f3)

    # act & assert
    assert is_irreducible(t)
    assert is_irreducible(t * t + one)
    assert not is_irreducible(t * t - one)
    with pytest.raises(ZeroPolynomialError):
        is_irreducible(APoly.zero(f3))


def test_enumerate_monic(f3):
    """Test monic enumeration and the number of irreducible quadratics."""
    # act & assert
    assert enumerate_monic(f3, 0) == [APoly.one(f3)]
    assert [p.format() for p in enumerate_monic(f3, 1)] == ["0+1*T", "1+1*T", "2+1*T"]
    assert len(enumerate_monic(f3, 3)) == 27
    assert len(monic_irreducibles(f3, 2)) == 3


def test_factor_recovers_the_polynomial(f3):
    """Test that the unit times the prime powers gives back the input."""
    # arrange
    rng = random.Random(11)

    for _ in range(100):
        a = _random_poly(rng, f3, 6)
        if a.is_zero():
            continue

        # act
        unit, factors = factor(a)

        # assert
        product = APoly.constant(f3, unit)
        for prime, exponent in factors:
            assert is_irreducible(prime) and prime.is_monic()
            product = product * prime**exponent
        assert product == a


def test_square_divisors(f3):
    """Test the monic l with l^2 | D."""
    # arrange
    t = APoly.t(f3)

    # act & assert
    assert square_divisors(t**3 - t) == [APoly.one(f3)]
    assert square_divisors(t**3) == [APoly.one(f3), t]
    assert square_divisors(t**4) == [APoly.one(f3), t, t * t]
    with pytest.raises(ZeroPolynomialError):
        square_divisors(APoly.zero(f3))


def test_evaluation(field_ctx_factory: FieldCtxFactory, f3):
    """Test evaluation at field elements and composition with polynomials."""
    # arrange
    ctx = field_ctx_factory.create_ctx(3, 2)
    t = APoly.t(f3)
    one = APoly.one(f3)

    # act & assert
    assert evaluate(t - one, ctx.base.element(1)).is_zero()
    assert evaluate(t * t + one, t) == t * t + one
    assert (t * t + one)(ctx.elem(3)).is_zero()


def test_evaluation_is_multiplicative(field_ctx_factory: FieldCtxFactory, f3):
    """Test eval(a*b, x) = eval(a, x) * eval(b, x) for random a, b and x in F_9."""
    # arrange
    ctx = field_ctx_factory.create_ctx(3, 2)
    rng = random.Random(3)

    for _ in range(200):
        a = _random_poly(rng, f3, 3)
        b = _random_poly(rng, f3, 3)
        x = ctx.elem(rng.randrange(ctx.order))

        # act & assert
        assert evaluate(a * b, x) == evaluate(a, x) * evaluate(b, x)


def test_monic_of_zero_raises(f3):
    """Test that normalising the zero polynomial raises."""
    # act & assert
    with pytest.raises(ZeroPolynomialError):
        APoly.zero(f3).monic()
