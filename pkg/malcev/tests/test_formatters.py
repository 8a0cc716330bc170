import json
import unittest
from fractions import Fraction

import pytest

from malcev.checks import malcev_checks
from malcev.exceptions import MalcevException
from malcev.formatters import JsonFormatter, TextFormatter, render
from malcev.subspace import full_space, span
from malcev.tests import load_table


@pytest.mark.parametrize(
    "test_input,expected",
    [
        (None, 'none'),
        ('span{e3}', 'span{e3}'),
        (True, 'yes'),
        (False, 'no'),
        (12, '12'),
        (Fraction(-3, 2), '-3/2'),
        ([1, None, 'x'], '1, none, x'),
    ],
)
def test_translate_text(test_input, expected):
    assert TextFormatter.translate(test_input) == expected


@pytest.mark.parametrize(
    "test_input,expected",
    [
        (None, None),
        (True, True),
        (3, 3),
        (Fraction(1, 3), '1/3'),
        ((1, Fraction(1, 2)), [1, '1/2']),
    ],
)
def test_translate_json(test_input, expected):
    assert JsonFormatter.translate(test_input) == expected


class TestRender(unittest.TestCase):
    def setUp(self):
        a = load_table('heisenberg')
        self.record = {
            'algebra': a.name,
            'right index': 3,
            'square': span(a, [a.basis_element(2)]),
            'full': full_space(a),
            'definitive': True,
        }

    def test_text(self):
        self.assertEqual(
            render(self.record),
            "ALGEBRA: heisenberg\n"
            "RIGHT INDEX: 3\n"
            "SQUARE: span{e3}\n"
            "FULL: span{e1, e2, e3}\n"
            "DEFINITIVE: yes\n",
        )

    def test_multiline_values_are_indented(self):
        self.assertEqual(
            TextFormatter.format_line('table', 'dim 1\nfield Q\n'), "TABLE:\n  dim 1\n  field Q"
        )

    def test_json(self):
        document = json.loads(render(self.record, 'json'))
        self.assertEqual(document['right_index'], 3)
        self.assertEqual(document['square'], 'span{e3}')
        self.assertIs(document['definitive'], True)

    def test_unknown_format(self):
        with self.assertRaises(MalcevException):
            render(self.record, 'xml')


class TestChecks(unittest.TestCase):
    def test_registered_names(self):
        self.assertEqual(
            malcev_checks.names(),
            ['alternative', 'anticomm', 'associative', 'id1', 'id2', 'id3', 'id4', 'id5', 'lie', 'malcev'],
        )

    def test_run(self):
        a = load_table('example_malcev4')
        self.assertTrue(malcev_checks.run('malcev', a))
        self.assertTrue(malcev_checks.run('id5', a))
        self.assertFalse(malcev_checks.run('lie', a))

    def test_unknown(self):
        with self.assertRaisesRegex(MalcevException, "known: alternative"):
            malcev_checks.find_check('jordan')
