"""Brute-force spans of products, used to cross-check the filtration recursions.

Every product tree shape with at most ``max_length`` leaves is filled with
basis vectors of ``B`` (weight 1) or of ``A`` (weight 0) and evaluated. The
values are bucketed by ``(length, weight)`` and only spanned at the end, so
no filtration term is ever reused to build a longer product.
"""
import itertools
from functools import lru_cache

from malcev.log import logger
from malcev.subspace import Subspace, full_space, ideal_closure, row_reduce, subspace_product, subspace_sum, zero_space
from malcev.terms import Leaf, Node, evaluate

DEFAULT_MAX_LENGTH = 6
# past this many distinct values a shape keeps a basis of their span
MAX_VALUES = 64


@lru_cache(maxsize=None)
def tree_shapes(leaves):
    """Every product tree with ``leaves`` factors; there are Catalan(leaves - 1) of them.

    All leaves carry the placeholder symbol ``x``.
    """
    if leaves == 1:
        return (Leaf('x'),)
    return tuple(
        Node(left, right)
        for split in range(1, leaves)
        for left in tree_shapes(split)
        for right in tree_shapes(leaves - split)
    )


def numbered(shape, counter=None):
    """The shape with its leaves renamed ``x1, x2, ...`` in written order."""
    counter = counter or itertools.count(1)
    if isinstance(shape, Leaf):
        return Leaf(f'x{next(counter)}')
    left = numbered(shape.left, counter)
    return Node(left, numbered(shape.right, counter))


def filled_products(B, shape, pattern):
    """Values of ``shape`` for every filling of its leaves by basis vectors.

    Leaf ``i`` runs over the basis of ``B`` when ``pattern[i]`` is true and
    over the basis of ``A`` otherwise.
    """
    a = B.algebra
    term = numbered(shape)
    choices = [B.basis if marked else a.basis() for marked in pattern]
    for chosen in itertools.product(*choices):
        assignment = {f'x{i}': element for i, element in enumerate(chosen, start=1)}
        yield evaluate(term, assignment, a)


def exhaustive_products(B, max_length, with_algebra=True):
    """Buckets of :func:`enumerate_products` by evaluating every single filling.

    The number of fillings grows like ``dim ** max_length``; keep it small.
    """
    a = B.algebra
    collected = {}
    for length in range(1, max_length + 1):
        for pattern in itertools.product((True, False) if with_algebra else (True,), repeat=length):
            rows = collected.setdefault((length, sum(pattern)), [])
            for shape in tree_shapes(length):
                rows.extend(value.values for value in filled_products(B, shape, pattern))
    return {key: tuple(row_reduce(a.field, rows)) for key, rows in collected.items()}


class ProductEnumerator:
    """Values of every product tree filled with basis vectors of ``B`` and ``A``.

    ``values(shape, weight)`` holds the distinct nonzero values, up to scalar
    multiples, of ``shape`` with exactly ``weight`` leaves taken from ``B``.
    Products are multilinear, so dropping scalar multiples loses no span.
    """

    def __init__(self, B, with_algebra=True):
        self.algebra = B.algebra
        self.field = B.algebra.field
        self._leaves = {1: self._distinct(B.rows), 0: frozenset()}
        if with_algebra:
            self._leaves[0] = self._distinct(full_space(self.algebra).rows)
        self._values = {}

    def _projective(self, row):
        field = self.field
        inverse = field.inverse(next(value for value in row if value))
        return tuple(field.normalize(field.reduce(value * inverse)) for value in row)

    def _distinct(self, rows):
        found = frozenset(self._projective(row) for row in rows if any(row))
        if len(found) > MAX_VALUES:
            found = frozenset(row_reduce(self.field, found))
        return found

    def values(self, shape, weight):
        if weight < 0 or weight > shape.length:
            return frozenset()
        if isinstance(shape, Leaf):
            return self._leaves.get(weight, frozenset())
        key = (shape, weight)
        if key not in self._values:
            multiply = self.algebra.multiply_values
            products = []
            for left_weight in range(weight + 1):
                lefts = self.values(shape.left, left_weight)
                rights = self.values(shape.right, weight - left_weight)
                products.extend(multiply(u, v) for u in lefts for v in rights)
            self._values[key] = self._distinct(products)
        return self._values[key]

    def span(self, shapes, weights):
        rows = set()
        for shape in shapes:
            for weight in weights:
                rows.update(self.values(shape, weight))
        return Subspace(self.algebra, tuple(row_reduce(self.field, rows)))


def enumerate_products(B, max_length=DEFAULT_MAX_LENGTH, with_algebra=True):
    """Bucket every product of at most ``max_length`` basis factors by ``(length, weight)``.

    With ``with_algebra`` false only factors from ``B`` are used, so every
    bucket has ``weight == length``.

    Returns
    -------
    dict
        ``(length, weight) -> tuple`` of reduced rows spanning the bucket.
    """
    enumerator = ProductEnumerator(B, with_algebra)
    buckets = {}
    for length in range(1, max_length + 1):
        shapes = tree_shapes(length)
        for weight in range(0 if with_algebra else length, length + 1):
            buckets[(length, weight)] = enumerator.span(shapes, [weight]).rows
        logger.debug(f"enumerated {len(shapes)} product shapes of length {length}")
    return buckets


def _all_b_spans(B, max_length, keep):
    enumerator = ProductEnumerator(B, with_algebra=False)
    return [enumerator.span([s for s in tree_shapes(m) if keep(s)], [m]) for m in range(1, max_length + 1)]


def brute_right_powers(B, max_length=DEFAULT_MAX_LENGTH):
    """Spans of the right products ``((b_1 b_2) ...) b_m`` for ``m = 1 .. max_length``."""
    return _all_b_spans(B, max_length, lambda shape: shape.is_right_product)


def brute_left_powers(B, max_length=DEFAULT_MAX_LENGTH):
    """Spans of the left products ``b_1 (... (b_{m-1} b_m))`` for ``m = 1 .. max_length``."""
    return _all_b_spans(B, max_length, lambda shape: shape.is_left_product)


def brute_assoc_powers(B, max_length=DEFAULT_MAX_LENGTH):
    """Spans of all parenthesized products of ``m`` elements of ``B``, ``m = 1 .. max_length``."""
    return _all_b_spans(B, max_length, lambda shape: True)


def truncated_strong_powers(B, max_length=DEFAULT_MAX_LENGTH):
    """Spans of products of length at most ``max_length`` with at least ``n`` factors in ``B``.

    These are only lower approximations of ``B^<n>``: longer products are cut off.
    """
    enumerator = ProductEnumerator(B)
    shapes = [shape for length in range(1, max_length + 1) for shape in tree_shapes(length)]
    return [enumerator.span(shapes, range(n, max_length + 1)) for n in range(1, max_length + 1)]


def enumerated_strong_powers(B, max_length=DEFAULT_MAX_LENGTH):
    """Ideal closures of :func:`truncated_strong_powers`.

    Every product of weight at least ``n`` has a subtree of weight at least
    ``n`` whose two halves both weigh less, and the rest of the tree only
    multiplies that subtree by elements of ``A``. For ``n <= 2`` the halves
    are single elements of ``B``, and when ``B`` is the whole algebra the
    subtree has at most ``2n - 2`` leaves. In those cases the closure is all
    of ``B^<n>``.
    """
    return [ideal_closure(term) for term in truncated_strong_powers(B, max_length)]


def brute_strong_powers(B, max_weight=DEFAULT_MAX_LENGTH):
    """``B^<n>`` for ``n = 1 .. max_weight`` by saturation over products of any length.

    ``D(w)`` collects products with at least ``w`` factors in ``B``. Starting
    from the single factors, ``D(w) <- D(w) + sum_{w1 + w2 = w} D(w1) D(w2)``
    is repeated until nothing grows, with ``D(0) = A``.
    """
    a = B.algebra
    spaces = [full_space(a), B] + [zero_space(a)] * (max_weight - 1)
    rounds = 0
    while True:
        rounds += 1
        grown = list(spaces)
        for w in range(max_weight + 1):
            for w1 in range(w + 1):
                grown[w] = subspace_sum(grown[w], subspace_product(spaces[w1], spaces[w - w1]))
        if grown == spaces:
            break
        spaces = grown
    logger.debug(f"strong power saturation settled after {rounds} rounds")
    return spaces[1:]
