"""Reading and writing multiplication table files.

A table file looks like::

    # the 4-dimensional example
    dim 4
    field Q
    anticommutative
    e1 e2 = e1
    e3 e1 = e4
    e3 e2 = e3
    e2 e4 = e4

Unlisted products are zero; ``anticommutative`` fills ``e_j e_i = -(e_i e_j)``
for every listed product whose mirror is not listed.
"""
import re
from fractions import Fraction

from malcev.algebra import Algebra, default_labels
from malcev.exceptions import FieldError, TableParseError
from malcev.fields import FieldSpec, parse_field
from malcev.log import logger

_TERM = re.compile(
    r'\s*(?P<sign>[+-])?\s*(?:(?P<coefficient>\d+(?:/\d+)?)\s*\*\s*)?(?P<label>[A-Za-z_][A-Za-z0-9_]*)\s*'
)
_ZERO = re.compile(r'\s*0\s*$')
_LABEL = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def parse_combination(text, labels, line=1, offset=0):
    """Parse ``c1*l1 + c2*l2 - ...`` (or ``0``) into ``{index: Fraction}``.

    ``offset`` is the column of ``text`` within its line, for error positions.
    """
    if _ZERO.match(text):
        return {}
    coefficients = {}
    position = 0
    first = True
    while position < len(text):
        if not text[position:].strip():
            break
        match = _TERM.match(text, position)
        if not match or (not first and not match.group('sign')):
            raise TableParseError(f"malformed linear combination '{text.strip()}'", line, offset + position + 1)
        label = match.group('label')
        if label not in labels:
            raise TableParseError(f"unknown label '{label}'", line, offset + match.start('label') + 1)
        coefficient = match.group('coefficient') or '1'
        denominator = coefficient.partition('/')[2]
        if denominator and int(denominator) == 0:
            raise TableParseError(
                f"zero denominator in coefficient '{coefficient}'", line, offset + match.start('coefficient') + 1
            )
        value = Fraction(coefficient)
        if match.group('sign') == '-':
            value = -value
        index = labels.index(label)
        coefficients[index] = coefficients.get(index, Fraction(0)) + value
        position = match.end()
        first = False
    if first:
        raise TableParseError("empty linear combination", line, offset + 1)
    return coefficients


def _strip_comment(raw):
    return raw.split('#', 1)[0].rstrip()


def parse_table(text, name=None):
    """Parse table file text into an Algebra.

    Raises
    ------
    TableParseError
        With the line and column of the first syntax error, unknown label or
        duplicate product, or for an unsupported field.
    """
    dim = None
    field = FieldSpec.rationals()
    labels = None
    anticommutative = False
    products = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        column = len(line) - len(line.lstrip()) + 1
        words = line.split()
        keyword = words[0]
        if keyword == 'dim':
            if dim is not None:
                raise TableParseError("duplicate 'dim' header", number, column)
            if len(words) != 2 or not words[1].isdecimal() or int(words[1]) < 1:
                raise TableParseError("expected 'dim <positive integer>'", number, column)
            dim = int(words[1])
        elif keyword == 'field':
            if len(words) != 2:
                raise TableParseError("expected 'field Q' or 'field F<p>'", number, column)
            try:
                field = parse_field(words[1])
            except FieldError as error:
                raise TableParseError(str(error), number, line.index(words[1]) + 1) from None
        elif keyword == 'anticommutative':
            if len(words) != 1:
                raise TableParseError("'anticommutative' takes no arguments", number, column)
            anticommutative = True
        elif keyword == 'basis':
            if dim is None:
                raise TableParseError("'basis' must follow 'dim'", number, column)
            if labels is not None:
                raise TableParseError("duplicate 'basis' header", number, column)
            labels = tuple(words[1:])
            if len(labels) != dim:
                raise TableParseError(f"expected {dim} basis labels, got {len(labels)}", number, column)
            if len(set(labels)) != dim or not all(_LABEL.match(label) for label in labels):
                raise TableParseError("basis labels must be distinct identifiers", number, column)
        else:
            if dim is None:
                raise TableParseError("products must follow the 'dim' header", number, column)
            if labels is None:
                labels = default_labels(dim)
            _parse_product(line, number, labels, products)
    if dim is None:
        raise TableParseError("missing 'dim' header", 1)
    labels = labels or default_labels(dim)
    if anticommutative:
        for (i, j), coefficients in list(products.items()):
            if (j, i) not in products:
                products[(j, i)] = {k: -value for k, value in coefficients.items()}
    try:
        algebra = Algebra.from_products(field, dim, products, labels=labels, name=name)
    except FieldError as error:
        raise TableParseError(str(error), 1) from None
    logger.debug(f"parsed {algebra.describe()} with {len(products)} nonzero products")
    return algebra


def _parse_product(line, number, labels, products):
    left, equals, right = line.partition('=')
    if not equals:
        raise TableParseError("expected '<label> <label> = <combination>'", number, 1)
    factors = left.split()
    if len(factors) != 2:
        raise TableParseError("a product line names exactly two basis labels", number, 1)
    indices = []
    for factor in factors:
        if factor not in labels:
            raise TableParseError(f"unknown label '{factor}'", number, line.index(factor) + 1)
        indices.append(labels.index(factor))
    key = tuple(indices)
    if key in products:
        raise TableParseError(f"duplicate product '{factors[0]} {factors[1]}'", number, 1)
    products[key] = parse_combination(right, labels, number, len(left) + 1)


def format_combination(field, labels, values):
    parts = []
    for label, value in zip(labels, values):
        if not value:
            continue
        text = field.format_value(value)
        negative = text.startswith('-')
        text = text.lstrip('-')
        term = label if text == '1' else f'{text}*{label}'
        if not parts:
            parts.append(f'-{term}' if negative else term)
        else:
            parts.append(f'- {term}' if negative else f'+ {term}')
    return ' '.join(parts) if parts else '0'


def format_table(a):
    """Table file text listing every nonzero product, so it parses back to ``a``."""
    lines = []
    if a.name:
        lines.append(f'# {a.name}')
    lines.append(f'dim {a.dim}')
    lines.append(f'field {a.field}')
    if a.labels != default_labels(a.dim):
        lines.append('basis ' + ' '.join(a.labels))
    for i in range(a.dim):
        for j in range(a.dim):
            if any(a.table[i][j]):
                combination = format_combination(a.field, a.labels, a.table[i][j])
                lines.append(f'{a.labels[i]} {a.labels[j]} = {combination}')
    return '\n'.join(lines) + '\n'
