"""Exact scalar arithmetic over the rationals and odd prime fields."""
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import sympy

from malcev.exceptions import FieldError

_FIELD_TOKEN = re.compile(r'^(?:Q|F(\d+))$')


class FieldKind(Enum):
    RATIONALS = 'rationals'
    PRIME_FIELD = 'prime_field'


@dataclass(frozen=True)
class FieldSpec:
    """A supported coefficient field: Q, or F_p with p an odd prime.

    ``characteristic`` is 0 for Q. Characteristic 2 is rejected.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if p < 0 or not sympy.isprime(p):
            raise FieldError(f"F{p} is not a prime field")

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @property
    def kind(self):
        return FieldKind.RATIONALS if self.characteristic == 0 else FieldKind.PRIME_FIELD

    @property
    def is_rational(self):
        return self.characteristic == 0

    def __str__(self):
        return 'Q' if self.is_rational else f'F{self.characteristic}'

    # Raw values are Fractions for Q and ints in [0, p) for F_p. The hot loops
    # of the algebra and subspace modules work on raw values directly.
    def normalize(self, value):
        if isinstance(value, Scalar):
            self.check(value)
            return value.value
        if self.is_rational:
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"coefficient {value} is not defined in {self}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inverse(self, value):
        if value == 0:
            raise FieldError("zero inverse")
        if self.is_rational:
            return 1 / Fraction(value)
        return pow(value, -1, self.characteristic)

    def reduce(self, value):
        """Bring an intermediate raw value (sum of products) back to canonical form."""
        if self.is_rational:
            return value
        return value % self.characteristic

    def check(self, scalar):
        if scalar.field != self:
            raise FieldError("field mismatch")

    def coerce(self, value):
        """Map an int, Fraction or Scalar of this field to a Scalar of this field."""
        return Scalar(self, self.normalize(value))

    def zero(self):
        return Scalar(self, 0)

    def one(self):
        return Scalar(self, 1)

    def random_element(self, rng, bound=3):
        if self.is_rational:
            return self.coerce(rng.randint(-bound, bound))
        return self.coerce(rng.randrange(self.characteristic))

    def format_value(self, value):
        if self.is_rational:
            value = Fraction(value)
            if value.denominator == 1:
                return str(value.numerator)
            return f'{value.numerator}/{value.denominator}'
        return str(value)


def parse_field(token):
    """Parse ``Q`` or ``F<p>`` into a FieldSpec."""
    match = _FIELD_TOKEN.match(token.strip())
    if not match:
        raise FieldError(f"unsupported field '{token}', expected Q or F<odd prime>")
    if match.group(1) is None:
        return FieldSpec.rationals()
    return FieldSpec.prime(int(match.group(1)))


@dataclass(frozen=True, eq=False)
class Scalar:
    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, 'value', self.field.normalize(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            self.field.check(other)
            return other.value
        return self.field.normalize(other)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.normalize(other)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.characteristic, self.value))

    def __add__(self, other):
        return Scalar(self.field, self.field.reduce(self.value + self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.reduce(self.value - self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.reduce(self._other(other) - self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.reduce(self.value * self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.reduce(self.value * self.field.inverse(self._other(other))))

    def __neg__(self):
        return Scalar(self.field, self.field.reduce(-self.value))

    def __bool__(self):
        return self.value != 0

    def inverse(self):
        return Scalar(self.field, self.field.inverse(self.value))

    def __str__(self):
        return self.field.format_value(self.value)

    def __repr__(self):
        return f'Scalar({self} in {self.field})'


def _add(a, b):
    return a + b


def _sub(a, b):
    return a - b


def _mul(a, b):
    return a * b


def _neg(a, b):
    return -a


def _inv(a, b):
    return a.inverse()


def _eq(a, b):
    return a == b


_SCALAR_OPERATIONS = {
    'add': _add,
    'sub': _sub,
    'mul': _mul,
    'neg': _neg,
    'inv': _inv,
    'eq': _eq,
}


def scalar_arith(op, a, b=None):
    """Apply one field operation to canonical scalars.

    Parameters
    ----------
    op : str
        One of ``add``, ``sub``, ``mul``, ``neg``, ``inv`` or ``eq``.
    a : Scalar
    b : Scalar, optional
        Second operand, required for the binary operations.

    Returns
    -------
    Scalar or bool

    Raises
    ------
    FieldError
        On ``zero inverse`` and on ``field mismatch``.
    """
    try:
        operation = _SCALAR_OPERATIONS[op]
    except KeyError:
        raise FieldError(f"unknown scalar operation '{op}'") from None
    if op not in ('neg', 'inv'):
        if not isinstance(b, Scalar):
            raise FieldError(f"operation '{op}' needs two scalars")
        if a.field != b.field:
            raise FieldError("field mismatch")
    return operation(a, b)
