import random
import unittest

import pytest

from malcev.exceptions import MalcevException, NotAnIdealError, NotMalcevError
from malcev.models import ChainKind, JkNilResult
from malcev.nilpotence import (
    assoc_powers,
    bk_chain,
    check_bn_lemma,
    check_inclusion_chain,
    check_laqt_lemma,
    check_strong_multiplicativity,
    d_suffix,
    jk_nil_index,
    left_powers,
    nilpotence_bound,
    nilpotence_report,
    right_powers,
    strong_powers,
)
from malcev.subspace import full_space, is_ideal, span, zero_space
from malcev.tables import parse_table
from malcev.tests import load_table


def _ideal(a, labels):
    if labels == 'full':
        return full_space(a)
    return span(a, [a.basis_element(a.label_index(label)) for label in labels])


# (table, ideal) pairs of Malcev algebras with a right nilpotent ideal
NILPOTENT_CORPUS = [
    ('heisenberg', 'full'),
    ('heisenberg', ['e3']),
    ('filiform4', 'full'),
    ('filiform4', ['e3', 'e4']),
    ('example_malcev4', ['e4']),
    ('example_malcev4_f3', ['e4']),
]


class TestHeisenberg(unittest.TestCase):
    def setUp(self):
        self.a = load_table('heisenberg')
        self.full = full_space(self.a)
        self.center = span(self.a, [self.a.basis_element(2)])

    def test_right_powers(self):
        chain = right_powers(self.full)
        self.assertEqual(chain.kind, ChainKind.RIGHT_POWERS)
        self.assertEqual(chain.terms, (self.full, self.center, zero_space(self.a)))
        self.assertEqual(chain.nil_index, 3)
        self.assertFalse(chain.stabilized)
        self.assertTrue(chain.term(7).is_zero())

    def test_left_assoc_strong(self):
        self.assertEqual(left_powers(self.full).nil_index, 3)
        self.assertEqual(assoc_powers(self.full).nil_index, 3)
        strong = strong_powers(self.full)
        self.assertEqual(strong.nil_index, 3)
        self.assertEqual(strong.term(2), self.center)

    def test_bk_chain(self):
        chain = bk_chain(self.full)
        self.assertEqual(chain.start, 0)
        self.assertEqual(chain.term(0), self.full)
        self.assertEqual(chain.term(2), self.center)
        self.assertEqual(chain.nil_index, 3)

    def test_d_suffix(self):
        self.assertEqual(d_suffix(self.center, 0), self.center)
        self.assertTrue(d_suffix(self.center, 1).is_zero())
        with self.assertRaises(MalcevException):
            d_suffix(self.center, -1)

    def test_report(self):
        report = nilpotence_report(self.a, self.full)
        self.assertEqual(
            (report.right_index, report.left_index, report.assoc_index, report.strong_index), (3, 3, 3, 3)
        )
        self.assertEqual(report.jk_nil_index, 1)
        self.assertEqual(report.bound_4n2, 31)
        self.assertTrue(report.bound_satisfied)
        self.assertEqual(report.as_dict()['bound_4n2'], 31)


class TestExampleAlgebra(unittest.TestCase):
    def setUp(self):
        self.a = load_table('example_malcev4')
        self.full = full_space(self.a)
        self.square = _ideal(self.a, ['e1', 'e3', 'e4'])
        self.e4 = _ideal(self.a, ['e4'])

    def test_right_powers_stabilize(self):
        chain = right_powers(self.full)
        self.assertTrue(chain.stabilized)
        self.assertIsNone(chain.nil_index)
        self.assertEqual(chain.term(2), self.square)
        self.assertEqual(chain.term(3), self.square)
        self.assertEqual(chain.term(40), self.square)

    def test_split_chains_stabilize(self):
        for chain in (assoc_powers(self.full), strong_powers(self.full)):
            self.assertTrue(chain.stabilized)
            self.assertIsNone(chain.nil_index)
            self.assertEqual(chain.term(9), self.square)

    def test_jk_nil_never(self):
        self.assertEqual(jk_nil_index(self.full), JkNilResult(None, True))

    def test_jk_nil_over_f3(self):
        a = load_table('example_malcev4_f3')
        self.assertEqual(jk_nil_index(full_space(a)), JkNilResult(1, True))

    def test_ideal_e4(self):
        self.assertEqual(d_suffix(self.e4, 1), self.e4)
        self.assertEqual(right_powers(self.e4).nil_index, 2)
        self.assertEqual(jk_nil_index(self.e4).index, 1)
        self.assertTrue(bk_chain(self.e4).term(2).is_zero())

    def test_report_without_right_nilpotence(self):
        report = nilpotence_report(self.a, self.full)
        self.assertIsNone(report.right_index)
        self.assertIsNone(report.strong_index)
        self.assertIsNone(report.bound_4n2)
        self.assertIsNone(report.bound_satisfied)
        self.assertIsNone(report.jk_nil_index)
        self.assertTrue(report.jk_nil_definitive)

    def test_not_an_ideal(self):
        line = _ideal(self.a, ['e1'])
        self.assertFalse(is_ideal(line))
        for operation in (strong_powers, bk_chain, jk_nil_index):
            with self.assertRaises(NotAnIdealError):
                operation(line)
        with self.assertRaises(NotAnIdealError):
            nilpotence_report(self.a, line)

    def test_laqt_needs_a_jk_nil_ideal(self):
        with self.assertRaises(MalcevException):
            check_laqt_lemma(self.full, 2)


def test_report_requires_malcev():
    a = load_table('gl2_units')
    with pytest.raises(NotMalcevError):
        nilpotence_report(a, full_space(a))


def test_filiform_report():
    a = load_table('filiform4')
    report = nilpotence_report(a, full_space(a))
    assert report.right_index == 4
    assert report.strong_index == 4
    assert report.bound_4n2 == 57
    assert report.bound_satisfied
    assert report.jk_bound == 57


def test_zero_ideal():
    a = load_table('sl2')
    zero = zero_space(a)
    for build in (right_powers, left_powers, assoc_powers, strong_powers):
        chain = build(zero)
        assert chain.nil_index == 1
        assert chain.terms == (zero,)
    report = nilpotence_report(a, zero)
    assert report.right_index == report.strong_index == 1
    assert report.bound_4n2 == 3
    assert report.bound_satisfied


def test_incomplete_chain_has_no_later_terms():
    a = load_table('filiform4')
    chain = right_powers(full_space(a), 2)
    assert not chain.complete
    with pytest.raises(IndexError):
        chain.term(3)


@pytest.mark.parametrize("n,expected", [(1, 3), (2, 13), (3, 31), (4, 57)])
def test_nilpotence_bound(n, expected):
    assert nilpotence_bound(n) == expected


@pytest.mark.parametrize("name,labels", NILPOTENT_CORPUS)
def test_filtration_properties(name, labels):
    a = load_table(name)
    B = _ideal(a, labels)
    report = nilpotence_report(a, B)
    n = report.right_index
    assert n is not None
    assert report.strong_index is not None
    assert report.right_index <= report.assoc_index <= report.strong_index <= nilpotence_bound(n)

    right = right_powers(B, 8)
    left = left_powers(B, 8)
    assert right.terms == left.terms
    strong = strong_powers(B, 8)
    assert check_inclusion_chain(right, assoc_powers(B, 8), strong)
    assert check_strong_multiplicativity(strong)
    for k, term in strong:
        assert is_ideal(term)
        if k > 1:
            assert term.is_subspace_of(strong.term(k - 1))

    chain = bk_chain(B)
    for k, term in chain:
        assert is_ideal(term)
        if k > 0:
            assert term.is_subspace_of(chain.term(k - 1))


@pytest.mark.parametrize("name,labels", NILPOTENT_CORPUS + [('example_malcev4', 'full'), ('sl2', 'full')])
def test_bn_lemma(name, labels):
    a = load_table(name)
    B = _ideal(a, labels)
    rng = random.Random(5)
    for n in range(1, 4):
        assert check_bn_lemma(B, n, trials=15, rng=rng)


@pytest.mark.parametrize("name,labels", NILPOTENT_CORPUS)
def test_laqt_lemma(name, labels):
    a = load_table(name)
    B = _ideal(a, labels)
    k = jk_nil_index(B).index
    rng = random.Random(3)
    for ell in (k, k + 1):
        assert check_laqt_lemma(B, ell, trials=10, rng=rng)


@pytest.mark.parametrize("name", ['heisenberg', 'filiform4', 'sl2', 'example_malcev4_f3'])
def test_lie_algebras_are_j1_nil(name):
    a = load_table(name)
    assert jk_nil_index(full_space(a)) == JkNilResult(1, True)


class TestAssocPowersOfASubspace(unittest.TestCase):
    """``x x = y``, ``y y = z``: ``B = span{x}`` is not closed under the product."""

    def setUp(self):
        self.a = parse_table("dim 3\nbasis x y z\nx x = y\ny y = z\n")
        self.B = _ideal(self.a, ['x'])

    def test_zero_term_is_not_the_end(self):
        chain = assoc_powers(self.B, 12)
        self.assertTrue(chain.term(3).is_zero())
        # (xx)(xx) survives the zero cube
        self.assertEqual(chain.term(4), _ideal(self.a, ['z']))
        self.assertEqual(chain.nil_index, 5)
        self.assertTrue(chain.term(30).is_zero())

    def test_no_extrapolation_under_a_short_cap(self):
        chain = assoc_powers(self.B, 3)
        self.assertIsNone(chain.nil_index)
        self.assertFalse(chain.complete)
        with self.assertRaises(IndexError):
            chain.term(4)

    def test_subalgebras_still_stop_at_the_first_zero(self):
        yz = _ideal(self.a, ['y', 'z'])
        chain = assoc_powers(yz, 12)
        self.assertEqual(chain.terms, (yz, _ideal(self.a, ['z']), zero_space(self.a)))
        self.assertEqual(chain.nil_index, 3)
