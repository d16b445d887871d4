import pytest

from drinfeld_census import FieldCtxFactory
from drinfeld_census.errors import (
    CapExceededError,
    ContextMismatchError,
    DivisionByZeroError,
    NonPrimeError,
)
from drinfeld_census.fields import make_ctx, min_poly_coeffs, prime_power_decomposition


def test_prime_field_tower_is_trivial(field_ctx_factory: FieldCtxFactory):
    """Test that (3, 1, 1) builds F_3 with the degree-1 modulus T."""
    # act
    ctx = field_ctx_factory.create_ctx(3, 1)

    # assert
    assert ctx.order == 3
    assert ctx.ext_modulus == (0, 1)
    assert [x.code for x in ctx.elements()] == [0, 1, 2]


def test_f9_uses_least_irreducible_quadratic(field_ctx_factory: FieldCtxFactory):
    """Test that F_9 over F_3 is built with T^2 + 1."""
    # act
    ctx = field_ctx_factory.create_ctx(3, 2)

    # assert
    assert ctx.ext_modulus == (1, 0, 1)
    elements = ctx.elements()
    assert len(elements) == 9
    assert len({x.code for x in elements}) == 9
    assert elements[0].code == 0
    assert elements[1].code == 1


def test_non_prime_characteristic_is_rejected():
    """Test that p = 4 raises NonPrimeError."""
    # act & assert
    with pytest.raises(NonPrimeError):
        make_ctx(4, 1, 1)


def test_cap_guards_large_fields():
    """Test that q^n above the cap raises and that cap=None disables the guard."""
    # act & assert
    with pytest.raises(CapExceededError):
        make_ctx(3, 1, 9, cap=4096)
    assert make_ctx(3, 1, 3, cap=None).order == 27


def test_prime_power_decomposition():
    """Test splitting q into (p, s)."""
    # act & assert
    assert prime_power_decomposition(9) == (3, 2)
    assert prime_power_decomposition(7) == (7, 1)
    with pytest.raises(NonPrimeError):
        prime_power_decomposition(12)


def test_prime_field_arithmetic(field_ctx_factory: FieldCtxFactory):
    """Test 1 + 2 = 0 and inverses in F_3."""
    # arrange
    ctx = field_ctx_factory.create_ctx(3, 1)
    one, two = ctx.elem(1), ctx.elem(2)

    # act & assert
    assert (one + two).code == 0
    assert (two * two.inverse()).code == 1
    assert (-one).code == 2


def test_unit_group_of_f9_has_order_eight(field_ctx_factory: FieldCtxFactory):
    """Test that x^8 = 1 and x * x^-1 = 1 for every unit of F_9."""
    # arrange
    ctx = field_ctx_factory.create_ctx(3, 2)

    # act & assert
    for x in ctx.elements()[1:]:
        assert (x**8).code == 1
        assert (x * x.inverse()).code == 1


def test_inverse_of_zero_raises(field_ctx_factory: FieldCtxFactory):
    """Test that inverting zero raises DivisionByZeroError."""
    # arrange
    ctx = field_ctx_factory.create_ctx(3, 2)

    # act & assert
    with pytest.raises(DivisionByZeroError):
        ctx.elem(0).inverse()


def test_elements_of_different_contexts_do_not_mix(field_ctx_factory: FieldCtxFactory):
    """Test that arithmetic across towers raises ContextMismatchError."""
    # arrange
    a = field_ctx_factory.create_ctx(3, 2).elem(1)
    b = field_ctx_factory.create_ctx(5, 1).elem(1)

    # act & assert
    with pytest.raises(ContextMismatchError):
        _ = a + b


def test_f9_distributivity_is_exhaustive(field_ctx_factory: FieldCtxFactory):
    """Test x * (y + z) = x*y + x*z over all triples of F_9."""
    # arrange
    elements = field_ctx_factory.create_ctx(3, 2).elements()

    # act & assert
    for x in elements:
        for y in elements:
            for z in elements:
                assert x * (y + z) == x * y + x * z


def test_frobenius_fixes_base_field_and_has_order_n(field_ctx_factory: FieldCtxFactory):
    """Test that x^q fixes F_q, is additive and returns to x after n steps."""
    # arrange
    ctx = field_ctx_factory.create_ctx(3, 2)
    elements = ctx.elements()

    # act & assert
    for code in range(3):
        assert ctx.frobenius_q(ctx.elem(code)).code == code
    for x in elements:
        assert ctx.frobenius_q(ctx.frobenius_q(x)) == x
        assert ctx.frobenius_q(x) == x**3
        for y in elements:
            assert ctx.frobenius_q(x + y) == ctx.frobenius_q(x) + ctx.frobenius_q(y)


def test_tower_over_f9(field_ctx_factory: FieldCtxFactory):
    """Test the tower F_3 < F_9 < F_81 embeds F_9 by code."""
    # arrange
    ctx = field_ctx_factory.create_ctx(9, 2)

    # act & assert
    assert (ctx.p, ctx.s, ctx.n, ctx.q) == (3, 2, 2, 9)
    assert ctx.order == 81
    for code in range(9):
        assert ctx.frobenius_code(code) == code
    for x in ctx.elements():
        assert ctx.frobenius_code(x.code, 2) == x.code


def test_minimal_polynomials(field_ctx_factory: FieldCtxFactory):
    """Test minimal polynomials of 0, 1 and of every element of F_27."""
    # arrange
    ctx = field_ctx_factory.create_ctx(3, 3)

    # act & assert
    assert min_poly_coeffs(ctx, ctx.elem(0)) == (0, 1)
    assert min_poly_coeffs(ctx, ctx.elem(1)) == (2, 1)
    for x in ctx.elements():
        degree = len(min_poly_coeffs(ctx, x)) - 1
        assert ctx.n % degree == 0


def test_contexts_are_cached():
    """Test that equal parameters return the same tower object."""
    # act & assert
    assert make_ctx(5, 1, 2) is make_ctx(5, 1, 2)


@pytest.mark.parametrize("q, n", [(9, 1), (4, 2), (3, 3)])
def test_table_arithmetic_agrees_with_galois(field_ctx_factory: FieldCtxFactory, q: int, n: int):
    """Test that codes are galois integer codes: sums and products of F_q match GF(q)."""
    # arrange
    ctx = field_ctx_factory.create_ctx(q, n)
    base = ctx.base
    gf = base.gf

    # act & assert
    assert gf.order == q
    for a in range(q):
        for b in range(q):
            assert base.add(a, b) == int(gf(a) + gf(b))
            assert base.mul(a, b) == int(gf(a) * gf(b))


def test_l_is_a_relative_extension_without_a_galois_class(field_ctx_factory: FieldCtxFactory):
    """Test that F_81 over F_9 refuses a galois view while F_9 over F_3 has one."""
    # arrange
    ctx = field_ctx_factory.create_ctx(9, 2)

    # act & assert
    assert ctx.base.gf.order == 9
    with pytest.raises(ContextMismatchError):
        _ = ctx.ext.gf


def test_minimal_polynomial_of_a_generator_of_f81_over_f9(field_ctx_factory: FieldCtxFactory):
    """Test that a primitive element of L has a degree-2 irreducible minimal polynomial over F_9."""
    # arrange
    ctx = field_ctx_factory.create_ctx(9, 2)
    generator = ctx.elem(ctx.ext.primitive)

    # act
    coeffs = min_poly_coeffs(ctx, generator)

    # assert
    assert len(coeffs) == 3
    assert coeffs[-1] == 1
    assert ctx.base.poly(coeffs).is_irreducible()
