"""Free-magma product terms, their linear combinations and exact evaluation."""
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from malcev.exceptions import EvaluationError, FieldError, MalcevException, TermParseError, TermShapeError
from malcev.models import ProductShape, TermStats

_IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')


class MagmaTerm:
    """Base class of the product trees ``Leaf``, ``Node`` and ``JNode``."""

    def sort_key(self):
        """Total order by length, then the preorder symbols, then the tree shape."""
        return (self.length, self.leaves, self.shape)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __mul__(self, other):
        if not isinstance(other, MagmaTerm):
            return NotImplemented
        return Node(self, other)

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True, eq=True)
class Leaf(MagmaTerm):
    symbol: str

    length = 1
    has_jacobian = False
    is_right_product = True
    is_left_product = True
    is_normal_product = True

    @property
    def leaves(self):
        return (self.symbol,)

    @property
    def shape(self):
        return 'x'


@dataclass(frozen=True, eq=True)
class Node(MagmaTerm):
    left: MagmaTerm
    right: MagmaTerm

    @cached_property
    def length(self):
        return self.left.length + self.right.length

    @cached_property
    def leaves(self):
        return self.left.leaves + self.right.leaves

    @cached_property
    def shape(self):
        return f'({self.left.shape}{self.right.shape})'

    @cached_property
    def has_jacobian(self):
        return self.left.has_jacobian or self.right.has_jacobian

    @cached_property
    def is_right_product(self):
        return isinstance(self.right, Leaf) and self.left.is_right_product

    @cached_property
    def is_left_product(self):
        return isinstance(self.left, Leaf) and self.right.is_left_product

    @cached_property
    def is_normal_product(self):
        return self.right.is_right_product and self.left.is_normal_product


@dataclass(frozen=True, eq=True)
class JNode(MagmaTerm):
    """Symbolic ``J(first, second, third)``."""

    first: MagmaTerm
    second: MagmaTerm
    third: MagmaTerm

    has_jacobian = True
    is_right_product = False
    is_left_product = False
    is_normal_product = False

    @property
    def args(self):
        return (self.first, self.second, self.third)

    @cached_property
    def length(self):
        return sum(arg.length for arg in self.args)

    @cached_property
    def leaves(self):
        return self.first.leaves + self.second.leaves + self.third.leaves

    @cached_property
    def shape(self):
        return 'J(' + ','.join(arg.shape for arg in self.args) + ')'


def _as_fraction(coefficient):
    try:
        return Fraction(coefficient)
    except (TypeError, ValueError):
        raise MalcevException(f"term coefficients must be rational, got {coefficient!r}") from None


@dataclass(frozen=True)
class TermCombo:
    """A rational linear combination of terms, merged and sorted by ``MagmaTerm.sort_key``."""

    items: tuple = ()

    @classmethod
    def build(cls, pairs):
        merged = {}
        for coefficient, term in pairs:
            merged[term] = merged.get(term, Fraction(0)) + _as_fraction(coefficient)
        items = sorted(((c, t) for t, c in merged.items() if c), key=lambda item: item[1].sort_key())
        return cls(tuple(items))

    @classmethod
    def single(cls, term, coefficient=1):
        return cls.build([(coefficient, term)])

    @classmethod
    def zero(cls):
        return cls(())

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __bool__(self):
        return bool(self.items)

    def __add__(self, other):
        return TermCombo.build(self.items + other.items)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coefficient):
        coefficient = _as_fraction(coefficient)
        return TermCombo.build((coefficient * c, t) for c, t in self.items)

    def terms(self):
        return [term for _, term in self.items]

    def coefficient(self, term):
        return next((c for c, t in self.items if t == term), Fraction(0))

    def products(self):
        """The part of the combination free of Jacobian factors."""
        return TermCombo(tuple((c, t) for c, t in self.items if not t.has_jacobian))

    def jacobians(self):
        return TermCombo(tuple((c, t) for c, t in self.items if t.has_jacobian))

    def __str__(self):
        return format_combo(self)


def combine(*combos):
    return TermCombo.build(item for combo in combos for item in combo.items)


@dataclass(frozen=True)
class MarkedAlphabet:
    """Symbols with a subset marked as lying in the ideal ``B``."""

    symbols: frozenset
    marked: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'symbols', frozenset(self.symbols))
        object.__setattr__(self, 'marked', frozenset(self.marked))
        if not self.marked <= self.symbols:
            unknown = ', '.join(sorted(self.marked - self.symbols))
            raise MalcevException(f"marked symbols not in the alphabet: {unknown}")

    @classmethod
    def of(cls, symbols, marked=()):
        return cls(frozenset(symbols), frozenset(marked))

    def weight(self, term):
        return sum(1 for symbol in term.leaves if symbol in self.marked)


def classify(t):
    """Most specific product shape: right, then normal, then left product.

    Raises
    ------
    TermShapeError
        If the term contains a Jacobian.
    """
    if t.has_jacobian:
        raise TermShapeError("cannot classify a term containing J(...)")
    if t.is_right_product:
        return ProductShape.RIGHT_PRODUCT
    if t.is_normal_product:
        return ProductShape.NORMAL_PRODUCT
    if t.is_left_product:
        return ProductShape.LEFT_PRODUCT
    return ProductShape.GENERAL


def term_stats(t, marks=None):
    marks = marks or MarkedAlphabet.of(t.leaves)
    return TermStats(t.length, marks.weight(t))


def right_product(symbols):
    """``((s1 s2) s3) ... sm`` from the symbols in written order."""
    symbols = list(symbols)
    if not symbols:
        raise MalcevException("a product needs at least one factor")
    term = Leaf(symbols[0])
    for symbol in symbols[1:]:
        term = Node(term, Leaf(symbol))
    return term


def left_product(symbols):
    """``s1 (s2 (... (s_{m-1} s_m)))`` from the symbols in written order."""
    symbols = list(symbols)
    if not symbols:
        raise MalcevException("a product needs at least one factor")
    term = Leaf(symbols[-1])
    for symbol in reversed(symbols[:-1]):
        term = Node(Leaf(symbol), term)
    return term


def random_term(rng, symbols, leaves):
    """A random product tree with ``leaves`` factors drawn from ``symbols``."""
    if leaves < 1:
        raise MalcevException("a term needs at least one leaf")
    if leaves == 1:
        return Leaf(rng.choice(symbols))
    split = rng.randint(1, leaves - 1)
    return Node(random_term(rng, symbols, split), random_term(rng, symbols, leaves - split))


def _coerce_coefficient(field, coefficient):
    try:
        return field.normalize(coefficient)
    except FieldError as error:
        raise EvaluationError(str(error)) from None


def evaluate(c, assignment, a):
    """Evaluate a term or combination in ``a`` with ``symbol -> Element`` bindings.

    Raises
    ------
    EvaluationError
        On an unassigned symbol or a coefficient that is not defined in the field.
    """
    values = {}
    for symbol, element in assignment.items():
        a._check(element)
        values[symbol] = element.values
    cache = {}
    reduce = a.field.reduce

    def value_of(term):
        if term in cache:
            return cache[term]
        if isinstance(term, Leaf):
            try:
                result = values[term.symbol]
            except KeyError:
                raise EvaluationError(f"no value assigned to '{term.symbol}'") from None
        elif isinstance(term, Node):
            result = a.multiply_values(value_of(term.left), value_of(term.right))
        else:
            x, y, z = (value_of(arg) for arg in term.args)
            mul = a.multiply_values
            parts = (mul(mul(x, y), z), mul(mul(y, z), x), mul(mul(z, x), y))
            result = [reduce(p + q + r) for p, q, r in zip(*parts)]
        cache[term] = result
        return result

    if isinstance(c, MagmaTerm):
        return a.element(value_of(c))
    total = [0] * a.dim
    for coefficient, term in c:
        factor = _coerce_coefficient(a.field, coefficient)
        total = [reduce(s + factor * v) for s, v in zip(total, value_of(term))]
    return a.element(total)


class _TermParser:
    """Recursive descent over ``expr := primary ('*' primary)*``."""

    def __init__(self, text):
        self.text = text
        self.position = 0

    def skip_space(self):
        while self.position < len(self.text) and self.text[self.position].isspace():
            self.position += 1

    def peek(self):
        self.skip_space()
        return self.text[self.position] if self.position < len(self.text) else ''

    def expect(self, char):
        if self.peek() != char:
            found = self.peek() or 'end of input'
            raise TermParseError(f"expected '{char}', found '{found}'", self.position)
        self.position += 1

    def parse(self):
        term = self.expression()
        if self.peek():
            raise TermParseError(f"unexpected '{self.peek()}'", self.position)
        return term

    def expression(self):
        term = self.primary()
        while self.peek() == '*':
            self.position += 1
            term = Node(term, self.primary())
        return term

    def primary(self):
        char = self.peek()
        if char == '(':
            self.position += 1
            term = self.expression()
            self.expect(')')
            return term
        match = _IDENTIFIER.match(self.text, self.position)
        if not match:
            raise TermParseError(f"expected a symbol or '(', found '{char or 'end of input'}'", self.position)
        self.position = match.end()
        if match.group() == 'J' and self.peek() == '(':
            self.position += 1
            first = self.expression()
            self.expect(',')
            second = self.expression()
            self.expect(',')
            third = self.expression()
            self.expect(')')
            return JNode(first, second, third)
        return Leaf(match.group())


def parse_term(text):
    """Parse ``((a*b)*c)*(d*e)`` style expressions; ``J(x,y,z)`` is a Jacobian."""
    return _TermParser(text).parse()


def _wrapped(term):
    text = format_term(term)
    return f'({text})' if isinstance(term, Node) else text


def format_term(t):
    if isinstance(t, Leaf):
        return t.symbol
    if isinstance(t, Node):
        return f'{_wrapped(t.left)}*{_wrapped(t.right)}'
    return 'J(' + ','.join(format_term(arg) for arg in t.args) + ')'


def format_combo(c):
    parts = []
    for coefficient, term in c:
        magnitude = abs(coefficient)
        text = _wrapped(term) if magnitude != 1 else format_term(term)
        if magnitude != 1:
            text = f'{magnitude}*{text}'
        if not parts:
            parts.append(f'-{text}' if coefficient < 0 else text)
        else:
            parts.append(f'- {text}' if coefficient < 0 else f'+ {text}')
    return ' '.join(parts) if parts else '0'
