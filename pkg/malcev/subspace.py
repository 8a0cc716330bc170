"""Canonical subspaces of an algebra and the products, sums and closures used by the filtrations."""
from dataclasses import dataclass

from malcev.exceptions import AlgebraMismatchError
from malcev.log import logger


def row_reduce(field, rows):
    """Reduced row echelon form of ``rows`` (raw field values), zero rows dropped.

    Pivots are normalized to 1 and pivot columns strictly increase, so the
    result only depends on the row space.
    """
    matrix = [list(row) for row in rows if any(row)]
    if not matrix:
        return []
    width = len(matrix[0])
    reduce = field.reduce
    pivot_row = 0
    for column in range(width):
        if pivot_row == len(matrix):
            break
        found = next((r for r in range(pivot_row, len(matrix)) if matrix[r][column]), None)
        if found is None:
            continue
        matrix[pivot_row], matrix[found] = matrix[found], matrix[pivot_row]
        inverse = field.inverse(matrix[pivot_row][column])
        pivot = [reduce(value * inverse) for value in matrix[pivot_row]]
        matrix[pivot_row] = pivot
        for r in range(len(matrix)):
            if r != pivot_row and matrix[r][column]:
                factor = matrix[r][column]
                matrix[r] = [reduce(a - factor * b) for a, b in zip(matrix[r], pivot)]
        pivot_row += 1
    return [tuple(field.normalize(value) for value in row) for row in matrix[:pivot_row]]


@dataclass(frozen=True)
class Subspace:
    """A subspace stored by its reduced row echelon basis.

    Two subspaces are equal iff their basis matrices are identical.
    """

    algebra: object
    rows: tuple

    @property
    def basis(self):
        return [self.algebra.element(row) for row in self.rows]

    @property
    def dim(self):
        return len(self.rows)

    @property
    def pivots(self):
        return [next(i for i, value in enumerate(row) if value) for row in self.rows]

    def is_zero(self):
        return not self.rows

    def is_full(self):
        return len(self.rows) == self.algebra.dim

    def reduce_values(self, values):
        """Remainder of a raw vector after elimination against the basis."""
        reduce = self.algebra.field.reduce
        remainder = list(values)
        for row, pivot in zip(self.rows, self.pivots):
            factor = remainder[pivot]
            if factor:
                remainder = [reduce(a - factor * b) for a, b in zip(remainder, row)]
        return remainder

    def contains(self, x):
        _check_algebra(self.algebra, x.algebra)
        return not any(self.reduce_values(x.values))

    def __contains__(self, x):
        return self.contains(x)

    def is_subspace_of(self, other):
        _check_algebra(self.algebra, other.algebra)
        return all(not any(other.reduce_values(row)) for row in self.rows)

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __add__(self, other):
        return subspace_sum(self, other)

    def __str__(self):
        if not self.rows:
            return '{0}'
        return 'span{' + ', '.join(str(element) for element in self.basis) + '}'


def _check_algebra(a, b):
    if a is not b and a != b:
        raise AlgebraMismatchError("subspaces belong to different algebras")


def _from_rows(algebra, rows):
    return Subspace(algebra, tuple(row_reduce(algebra.field, rows)))


def span(a, vectors):
    """Canonical span of ``vectors`` (Elements of ``a``); the empty list spans ``{0}``."""
    rows = []
    for vector in vectors:
        _check_algebra(a, vector.algebra)
        rows.append(vector.values)
    return _from_rows(a, rows)


def zero_space(a):
    return Subspace(a, ())


def full_space(a):
    return _from_rows(a, [e.values for e in a.basis()])


def contains(S, x):
    return S.contains(x)


def is_subspace_of(U, V):
    return U.is_subspace_of(V)


def congruent_mod(x, y, S):
    """``x`` and ``y`` are equal modulo ``S`` when ``x - y`` lies in ``S``."""
    return S.contains(x - y)


def subspace_sum(U, V):
    _check_algebra(U.algebra, V.algebra)
    if not V.rows:
        return U
    if not U.rows:
        return V
    return _from_rows(U.algebra, U.rows + V.rows)


def subspace_product(U, V):
    """Span of ``u v`` over basis vectors ``u`` of ``U`` and ``v`` of ``V``."""
    _check_algebra(U.algebra, V.algebra)
    a = U.algebra
    products = [a.multiply_values(u, v) for u in U.rows for v in V.rows]
    return _from_rows(a, products)


def jacobian_span(U, V, W):
    """Span of ``J(u, v, w)`` over basis triples of ``U``, ``V`` and ``W``."""
    _check_algebra(U.algebra, V.algebra)
    _check_algebra(U.algebra, W.algebra)
    a = U.algebra
    mul = a.multiply_values
    reduce = a.field.reduce
    values = []
    for u in U.rows:
        for v in V.rows:
            uv = mul(u, v)
            for w in W.rows:
                parts = (mul(uv, w), mul(mul(v, w), u), mul(mul(w, u), v))
                values.append([reduce(p + q + r) for p, q, r in zip(*parts)])
    return _from_rows(a, values)


def _right_and_left_products(S):
    a = S.algebra
    rows = []
    for row in S.rows:
        for e in a.basis():
            rows.append(a.multiply_values(row, e.values))
            rows.append(a.multiply_values(e.values, row))
    return rows


def is_ideal(S):
    """True iff ``S A`` and ``A S`` are both contained in ``S``."""
    return all(not any(S.reduce_values(values)) for values in _right_and_left_products(S))


def ideal_closure(S):
    """Smallest ideal containing ``S``: iterate ``S <- S + SA + AS`` until stable."""
    current = S
    while True:
        grown = _from_rows(S.algebra, list(current.rows) + _right_and_left_products(current))
        if grown == current:
            return current
        logger.debug(f"ideal closure grew from dimension {current.dim} to {grown.dim}")
        current = grown
