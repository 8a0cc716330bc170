import random
import unittest
from fractions import Fraction

import pytest

from malcev.algebra import (
    IDENTITIES,
    Algebra,
    check_identity,
    is_alternative,
    is_anticommutative,
    is_associative,
    is_lie,
    is_malcev,
    jacobian,
    minus_algebra,
    multiply,
)
from malcev.exceptions import AlgebraMismatchError, FieldError, MalcevException
from malcev.fields import FieldSpec
from malcev.search import random_anticommutative_algebra
from malcev.tests import MALCEV_CORPUS, load_table


class TestExampleAlgebra(unittest.TestCase):
    def setUp(self):
        self.a = load_table('example_malcev4')
        self.e1, self.e2, self.e3, self.e4 = self.a.basis()

    def test_products(self):
        a = self.a
        self.assertEqual(multiply(a, self.e1, self.e2), self.e1)
        self.assertEqual(multiply(a, self.e2, self.e1), -self.e1)
        self.assertEqual(multiply(a, self.e1, self.e3), -self.e4)
        self.assertEqual(multiply(a, self.e4, self.e2), -self.e4)
        self.assertTrue(multiply(a, self.e4, self.e4).is_zero())
        self.assertEqual(a.structure_constant(2, 0, 3), 1)

    def test_jacobian(self):
        value = jacobian(self.a, self.e1, self.e2, self.e3)
        self.assertEqual(value, self.e4 * -3)
        self.assertEqual(str(value), '-3*e4')

    def test_anticommutative_and_malcev(self):
        self.assertTrue(is_anticommutative(self.a))
        self.assertTrue(is_malcev(self.a))

    def test_not_lie_with_witness(self):
        witness = is_lie(self.a)
        self.assertFalse(witness)
        self.assertEqual(witness.identity, 'lie')
        self.assertEqual(witness.indices, (0, 1, 2))
        self.assertEqual(witness.lhs, self.e4 * -3)

    def test_lie_over_f3(self):
        self.assertTrue(is_lie(load_table('example_malcev4_f3')))

    def test_foreign_element_rejected(self):
        other = load_table('heisenberg')
        with self.assertRaises(AlgebraMismatchError):
            multiply(self.a, self.e1, other.basis_element(0))

    def test_element_arithmetic(self):
        x = self.e1 + self.e3 * Fraction(1, 2) - self.e4
        self.assertEqual(str(x), 'e1 + 1/2*e3 - e4')
        self.assertEqual(x.support(), [0, 2, 3])
        self.assertEqual(str(self.a.zero()), '0')
        self.assertEqual(2 * self.e2, self.e2 + self.e2)


@pytest.mark.parametrize("name", MALCEV_CORPUS)
@pytest.mark.parametrize("which", sorted(IDENTITIES))
def test_identities_hold_on_malcev_corpus(name, which):
    assert check_identity(load_table(name), which)


@pytest.mark.parametrize("name", ['heisenberg', 'filiform4', 'sl2', 'example_malcev4_f3'])
def test_lie_corpus(name):
    assert is_lie(load_table(name))


def test_unknown_identity():
    with pytest.raises(MalcevException):
        check_identity(load_table('heisenberg'), 'id9')


def test_matrix_units():
    a = load_table('gl2_units')
    witness = is_anticommutative(a)
    assert not witness
    assert witness.indices == (0, 0)
    assert is_associative(a)
    assert is_alternative(a)
    assert not check_identity(a, 'id4')
    gl2 = minus_algebra(a)
    assert gl2.name == 'gl2_units-minus'
    assert is_lie(gl2)
    assert is_malcev(gl2)


def test_octonions():
    a = load_table('octonions')
    assert is_alternative(a)
    assert not is_associative(a)
    minus = minus_algebra(a)
    assert is_anticommutative(minus)
    assert is_malcev(minus)
    witness = is_lie(minus)
    assert not witness
    assert not jacobian(minus, *(minus.basis_element(i) for i in witness.indices)).is_zero()


def test_non_malcev_witnesses_are_reproducible():
    rng = random.Random(11)
    field = FieldSpec.rationals()
    failures = 0
    for _ in range(200):
        a = random_anticommutative_algebra(rng, field, 4, density=0.8)
        witness = is_malcev(a)
        if witness:
            continue
        x, y, z, t = (a.basis_element(i) for i in witness.indices)
        sides, _, _ = IDENTITIES['id4']
        lhs, rhs = sides(a, x, y, z, t)
        assert lhs == witness.lhs
        assert rhs == witness.rhs
        assert lhs != rhs
        failures += 1
        if failures == 5:
            break
    assert failures == 5


class TestConstruction(unittest.TestCase):
    def test_from_products_normalizes_mod_p(self):
        a = Algebra.from_products(FieldSpec(5), 2, {(0, 1): [0, 7], (1, 0): {1: -7}})
        self.assertEqual(a.table[0][1], (0, 2))
        self.assertEqual(a.table[1][0], (0, 3))
        self.assertTrue(is_anticommutative(a))

    def test_bad_coefficient_for_field(self):
        with self.assertRaises(FieldError):
            Algebra.from_products(FieldSpec(3), 2, {(0, 1): [0, Fraction(1, 3)]})

    def test_name_does_not_affect_equality(self):
        field = FieldSpec.rationals()
        self.assertEqual(Algebra.zero_algebra(field, 2, name='x'), Algebra.zero_algebra(field, 2, name='y'))

    def test_bad_shapes(self):
        field = FieldSpec.rationals()
        with self.assertRaises(MalcevException):
            Algebra.from_products(field, 2, {(0, 2): [1, 0]})
        with self.assertRaises(MalcevException):
            Algebra.from_products(field, 2, {(0, 1): [1, 0, 0]})
        with self.assertRaises(MalcevException):
            Algebra.zero_algebra(field, 2, labels=['x', 'x'])


def _random_element(rng, a):
    return a.element([a.field.random_element(rng) for _ in range(a.dim)])


@pytest.mark.parametrize("name", MALCEV_CORPUS)
def test_multiply_is_bilinear_and_jacobian_alternating(name):
    a = load_table(name)
    rng = random.Random(37)
    for _ in range(50):
        x, y, z, t = (_random_element(rng, a) for _ in range(4))
        c = a.field.random_element(rng)
        assert multiply(a, x + y * c, z) == multiply(a, x, z) + multiply(a, y, z) * c
        assert multiply(a, z, x + y * c) == multiply(a, z, x) + multiply(a, z, y) * c
        assert jacobian(a, x + t * c, y, z) == jacobian(a, x, y, z) + jacobian(a, t, y, z) * c
        assert jacobian(a, x, y, z) == -jacobian(a, y, x, z)
        assert jacobian(a, x, y, z) == -jacobian(a, x, z, y)
        assert jacobian(a, x, y, z) == jacobian(a, y, z, x)
        assert jacobian(a, x, x, z).is_zero()
        assert jacobian(a, x, y, y).is_zero()
