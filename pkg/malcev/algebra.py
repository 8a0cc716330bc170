"""Finite-dimensional algebras given by structure constants, and the identity checkers."""
import itertools
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from fractions import Fraction
from functools import cached_property

from malcev.exceptions import AlgebraMismatchError, MalcevException
from malcev.fields import FieldSpec, Scalar
from malcev.log import logger
from malcev.models import IdentityWitness


@dataclass(frozen=True)
class Algebra:
    """An algebra with basis ``labels`` and products ``e_i e_j = sum_k table[i][j][k] e_k``.

    Table entries are canonical raw field values (see ``FieldSpec.normalize``).
    ``name`` is informational and does not take part in equality.
    """

    field: FieldSpec
    dim: int
    table: tuple
    labels: tuple
    name: str = dataclass_field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise MalcevException("an algebra needs dimension at least 1")
        if len(self.labels) != self.dim:
            raise MalcevException(f"expected {self.dim} basis labels, got {len(self.labels)}")
        if len(set(self.labels)) != self.dim:
            raise MalcevException("basis labels must be distinct")
        if len(self.table) != self.dim or any(len(row) != self.dim for row in self.table):
            raise MalcevException("multiplication table does not match the dimension")

    @classmethod
    def from_products(cls, field, dim, products, labels=None, name=None):
        """Build an algebra from the nonzero products.

        Parameters
        ----------
        field : FieldSpec
        dim : int
        products : dict
            Maps a pair ``(i, j)`` of 0-based indices to the coordinates of
            ``e_i e_j``, either a length-``dim`` sequence or a ``{k: coefficient}`` dict.
            Missing pairs are zero.
        labels : sequence of str, optional
            Basis names, ``e1 ... en`` by default.
        name : str, optional
        """
        table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coords in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise MalcevException(f"product index ({i}, {j}) out of range")
            if isinstance(coords, dict):
                vector = [0] * dim
                for k, value in coords.items():
                    vector[k] = value
            else:
                vector = list(coords)
            if len(vector) != dim:
                raise MalcevException(f"product e{i + 1}e{j + 1} has {len(vector)} coordinates, expected {dim}")
            table[i][j] = vector
        labels = tuple(labels) if labels is not None else default_labels(dim)
        frozen = tuple(
            tuple(tuple(field.normalize(value) for value in vector) for vector in row) for row in table
        )
        return cls(field, dim, frozen, labels, name)

    @classmethod
    def zero_algebra(cls, field, dim, labels=None, name=None):
        return cls.from_products(field, dim, {}, labels=labels, name=name)

    @cached_property
    def _hash(self):
        return hash((self.field, self.dim, self.table, self.labels))

    def __hash__(self):
        return self._hash

    @cached_property
    def _sparse_rows(self):
        # _sparse_rows[i][j] lists the nonzero (k, c_ij^k)
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(vector) if c) for vector in row) for row in self.table
        )

    @cached_property
    def _basis(self):
        return tuple(
            self.element([1 if k == i else 0 for k in range(self.dim)]) for i in range(self.dim)
        )

    def element(self, values):
        values = tuple(values)
        if len(values) != self.dim:
            raise AlgebraMismatchError(f"expected {self.dim} coordinates, got {len(values)}")
        return Element(self, tuple(Scalar(self.field, value) for value in values))

    def zero(self):
        return self.element([0] * self.dim)

    def basis_element(self, i):
        return self._basis[i]

    def basis(self):
        return list(self._basis)

    def label_index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise MalcevException(f"unknown basis label '{label}'") from None

    def structure_constant(self, i, j, k):
        return Scalar(self.field, self.table[i][j][k])

    def is_zero_algebra(self):
        return not any(entries for row in self._sparse_rows for entries in row)

    def describe(self):
        return self.name or f'{self.dim}-dimensional algebra over {self.field}'

    def _check(self, *elements):
        for element in elements:
            if element.algebra is not self and element.algebra != self:
                raise AlgebraMismatchError("element does not belong to this algebra")

    def multiply_values(self, xs, ys):
        """Product of two raw coordinate vectors, as a list of canonical raw values."""
        out = [0] * self.dim
        ys_nonzero = [(j, y) for j, y in enumerate(ys) if y]
        for i, x in enumerate(xs):
            if not x:
                continue
            row = self._sparse_rows[i]
            for j, y in ys_nonzero:
                entries = row[j]
                if entries:
                    weight = x * y
                    for k, c in entries:
                        out[k] += weight * c
        return [self.field.reduce(value) for value in out]

    def multiply(self, x, y):
        self._check(x, y)
        return self.element(self.multiply_values(x.values, y.values))

    def jacobian(self, x, y, z):
        mul = self.multiply
        return mul(mul(x, y), z) + mul(mul(y, z), x) + mul(mul(z, x), y)


def default_labels(dim):
    return tuple(f'e{i + 1}' for i in range(dim))


@dataclass(frozen=True)
class Element:
    algebra: Algebra
    coords: tuple

    @property
    def values(self):
        return tuple(c.value for c in self.coords)

    @property
    def field(self):
        return self.algebra.field

    def _combine(self, other, sign):
        if not isinstance(other, Element):
            return NotImplemented
        self.algebra._check(other)
        reduce = self.field.reduce
        return self.algebra.element(
            [reduce(a + sign * b) for a, b in zip(self.values, other.values)]
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.algebra.element([self.field.reduce(-v) for v in self.values])

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        if isinstance(scalar, Scalar):
            self.field.check(scalar)
            factor = scalar.value
        elif isinstance(scalar, (int, Fraction)):
            factor = self.field.normalize(scalar)
        else:
            return NotImplemented
        return self.algebra.element([self.field.reduce(factor * v) for v in self.values])

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.values)

    def support(self):
        return [i for i, v in enumerate(self.values) if v]

    def __str__(self):
        parts = []
        for i, coefficient in enumerate(self.coords):
            if not coefficient:
                continue
            text = str(coefficient)
            negative = text.startswith('-')
            text = text.lstrip('-')
            term = self.algebra.labels[i] if text == '1' else f'{text}*{self.algebra.labels[i]}'
            if not parts:
                parts.append(f'-{term}' if negative else term)
            else:
                parts.append(f'- {term}' if negative else f'+ {term}')
        return ' '.join(parts) if parts else '0'


def _same_algebra(a, *elements):
    for element in elements:
        if element.algebra is not a and element.algebra != a:
            raise AlgebraMismatchError("element does not belong to the algebra")


def multiply(a, x, y):
    """Bilinear product ``x y`` in ``a``.

    Raises
    ------
    AlgebraMismatchError
        If ``x`` or ``y`` belongs to another algebra.
    """
    _same_algebra(a, x, y)
    return a.multiply(x, y)


def jacobian(a, x, y, z):
    """``J(x, y, z) = (xy)z + (yz)x + (zx)y``."""
    _same_algebra(a, x, y, z)
    return a.jacobian(x, y, z)


def is_anticommutative(a):
    """True iff ``c_ii = 0`` and ``c_ij = -c_ji`` for all basis indices."""
    reduce = a.field.reduce
    for i in range(a.dim):
        if any(a.table[i][i]):
            e = a.basis_element(i)
            return IdentityWitness.failed('anticomm', (i, i), a.multiply(e, e), a.zero())
        for j in range(i + 1, a.dim):
            if any(reduce(u + v) for u, v in zip(a.table[i][j], a.table[j][i])):
                x, y = a.basis_element(i), a.basis_element(j)
                return IdentityWitness.failed('anticomm', (i, j), a.multiply(x, y), -a.multiply(y, x))
    return IdentityWitness.passed('anticomm')


def _identity_1(a, x, y, z, t):
    mul = a.multiply
    return a.jacobian(x, y, mul(x, z)), mul(a.jacobian(x, y, z), x)


def _identity_2(a, x, y, z, t):
    mul = a.multiply
    return a.jacobian(x, mul(x, y), z), mul(a.jacobian(x, y, z), x)


def _identity_3(a, x, y, z, t):
    mul = a.multiply
    xy = mul(x, y)
    lhs = mul(xy, mul(x, z))
    rhs = mul(mul(xy, z), x) + mul(mul(mul(y, z), x), x) + mul(mul(mul(z, x), x), y)
    return lhs, rhs


def _identity_4(a, x, y, z, t):
    mul = a.multiply
    lhs = mul(mul(x, z), mul(y, t))
    rhs = (
        mul(mul(mul(x, y), z), t)
        + mul(mul(mul(y, z), t), x)
        + mul(mul(mul(z, t), x), y)
        + mul(mul(mul(t, x), y), z)
    )
    return lhs, rhs


def _identity_5(a, x, y, z, t):
    # twice J(x,y,z)t: without the factor the identity already fails on example_malcev4.tbl
    mul = a.multiply
    lhs = mul(a.jacobian(x, y, z), t) * 2
    rhs = a.jacobian(t, x, mul(z, y)) + a.jacobian(t, y, mul(x, z)) + a.jacobian(t, z, mul(y, x))
    return lhs, rhs


# name -> (sides, quadratic in x, needs anticommutativity)
IDENTITIES = {
    'id1': (_identity_1, True, True),
    'id2': (_identity_2, True, True),
    'id3': (_identity_3, True, True),
    'id4': (_identity_4, False, True),
    'id5': (_identity_5, False, False),
}


def _substitutions(a, quadratic):
    n = a.dim
    if quadratic:
        # x = e_i + e_j over i <= j pins down a quadratic form in x at char != 2
        for i, j, k, l in itertools.product(range(n), repeat=4):
            if i > j:
                continue
            x = a.basis_element(i) + a.basis_element(j)
            yield (i, j, k, l), (x, a.basis_element(k), a.basis_element(l), a.zero())
    else:
        for indices in itertools.product(range(n), repeat=4):
            yield indices, tuple(a.basis_element(i) for i in indices)


def check_identity(a, which):
    """Check one of the defining identities on basis substitutions.

    ``id4`` and ``id5`` are multilinear and are checked on all basis
    quadruples; ``id1`` to ``id3`` are quadratic in ``x`` and are checked
    on ``x = e_i + e_j`` (i <= j), ``y = e_k``, ``z = e_l``. The first four
    also require ``x^2 = 0``; when that fails the anticommutativity witness
    is returned.
    """
    try:
        sides, quadratic, needs_anticommutative = IDENTITIES[which]
    except KeyError:
        raise MalcevException(f"unknown identity '{which}'") from None
    if needs_anticommutative:
        anticommutative = is_anticommutative(a)
        if not anticommutative:
            return anticommutative
    for indices, (x, y, z, t) in _substitutions(a, quadratic):
        lhs, rhs = sides(a, x, y, z, t)
        if lhs != rhs:
            logger.debug(f"{which} fails at {indices} in {a.describe()}")
            return IdentityWitness.failed(which, indices, lhs, rhs)
    return IdentityWitness.passed(which)


def is_malcev(a):
    """Malcev test through the multilinear identity ``(xz)(yt) = ((xy)z)t + ((yz)t)x + ((zt)x)y + ((tx)y)z``."""
    return check_identity(a, 'id4')


def is_lie(a):
    anticommutative = is_anticommutative(a)
    if not anticommutative:
        return anticommutative
    for i, j, k in itertools.combinations(range(a.dim), 3):
        value = a.jacobian(a.basis_element(i), a.basis_element(j), a.basis_element(k))
        if not value.is_zero():
            return IdentityWitness.failed('lie', (i, j, k), value, a.zero())
    return IdentityWitness.passed('lie')


def _associator(a, x, y, z):
    return a.multiply(a.multiply(x, y), z) - a.multiply(x, a.multiply(y, z))


def is_associative(a):
    for indices in itertools.product(range(a.dim), repeat=3):
        x, y, z = (a.basis_element(i) for i in indices)
        lhs, rhs = a.multiply(a.multiply(x, y), z), a.multiply(x, a.multiply(y, z))
        if lhs != rhs:
            return IdentityWitness.failed('associative', indices, lhs, rhs)
    return IdentityWitness.passed('associative')


def is_alternative(a):
    """The associator is alternating: checked in its linearized form on basis triples."""
    for indices in itertools.product(range(a.dim), repeat=3):
        x, y, z = (a.basis_element(i) for i in indices)
        base = _associator(a, x, y, z)
        for swapped in (_associator(a, y, x, z), _associator(a, x, z, y)):
            if base != -swapped:
                return IdentityWitness.failed('alternative', indices, base, -swapped)
    return IdentityWitness.passed('alternative')


def minus_algebra(a):
    """The algebra ``A^-`` on the same space with product ``[x, y] = xy - yx``."""
    reduce = a.field.reduce
    table = tuple(
        tuple(
            tuple(reduce(u - v) for u, v in zip(a.table[i][j], a.table[j][i])) for j in range(a.dim)
        )
        for i in range(a.dim)
    )
    name = f'{a.name}-minus' if a.name else None
    return Algebra(a.field, a.dim, table, a.labels, name)
