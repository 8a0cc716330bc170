"""Rewriting products into right products and normal products.

``psom_expand`` only uses anticommutativity and the definition of the
Jacobian. ``to_right_normed`` additionally moves a right factor across a
Jacobian with ``2 J(x,y,z)t = J(t,x,zy) + J(t,y,xz) + J(t,z,yx)``, and
``to_normal_products`` uses ``(xz)(yt) = ((xy)z)t + ((yz)t)x + ((zt)x)y + ((tx)y)z``;
both identities hold in every Malcev algebra of characteristic other than
2 and 3.
"""
from fractions import Fraction
from functools import lru_cache

from malcev.exceptions import RewriteError, TermShapeError
from malcev.log import logger
from malcev.terms import JNode, Leaf, Node, TermCombo, combine, right_product

# Upper bound on the same-length products tied together in one linear system.
MAX_SYSTEM_SIZE = 400


def psom_expand(Q0, P0):
    """Expand ``Q0 P0`` for a right product ``P0 = ((a_m a_{m-1}) ...) a_1``.

    With ``Q_i = a_i Q_{i-1}`` and ``P_i`` the right product ``a_m ... a_{i+1}``::

        Q0 P0 = sum_{i=1}^{m-1} (Q_{i-1} P_i) a_i + Q_{m-1} a_m - sum_{i=1}^{m-1} J(Q_{i-1}, P_i, a_i)

    Raises
    ------
    TermShapeError
        If ``P0`` is not a right product of length at least 2 or a Jacobian
        occurs in either factor.
    """
    if Q0.has_jacobian or P0.has_jacobian:
        raise TermShapeError("psom expansion takes products without J(...)")
    if not P0.is_right_product:
        raise TermShapeError(f"'{P0}' is not a right product")
    m = P0.length
    if m < 2:
        raise TermShapeError("the right factor needs length at least 2")
    symbols = P0.leaves  # a_m, ..., a_1

    def a(i):
        return Leaf(symbols[m - i])

    def p(i):
        return right_product(symbols[: m - i])

    pairs = []
    q = Q0
    for i in range(1, m):
        pairs.append((1, Node(Node(q, p(i)), a(i))))
        pairs.append((-1, JNode(q, p(i), a(i))))
        q = Node(a(i), q)
    pairs.append((1, Node(q, a(m))))
    return TermCombo.build(pairs)


def _canonical_jacobian(first, second, third):
    """``J`` is alternating: sort the arguments and track the sign; repeated arguments vanish."""
    args = [first, second, third]
    sign = 1
    for i in range(len(args)):
        for j in range(len(args) - 1 - i):
            if args[j + 1].sort_key() < args[j].sort_key():
                args[j], args[j + 1] = args[j + 1], args[j]
                sign = -sign
    if args[0] == args[1] or args[1] == args[2]:
        return None
    return sign, JNode(*args)


def _jacobian_pairs(coefficient, first, second, third):
    canonical = _canonical_jacobian(first, second, third)
    if canonical is None:
        return []
    sign, term = canonical
    return [(sign * coefficient, term)]


def _jacobian_times(j, t, coefficient=1):
    """``J(x, y, z) t`` as a sum of Jacobians."""
    x, y, z = j.args
    coefficient = Fraction(coefficient) / 2
    pairs = []
    pairs += _jacobian_pairs(coefficient, t, x, Node(z, y))
    pairs += _jacobian_pairs(coefficient, t, y, Node(x, z))
    pairs += _jacobian_pairs(coefficient, t, z, Node(y, x))
    return pairs


def _times_leaf(combo, leaf):
    pairs = []
    for coefficient, term in combo:
        if isinstance(term, JNode):
            pairs += _jacobian_times(term, leaf, coefficient)
        else:
            pairs.append((coefficient, Node(term, leaf)))
    return TermCombo.build(pairs)


@lru_cache(maxsize=None)
def _right_normed(t):
    if isinstance(t, Leaf):
        return TermCombo.single(t)
    left, right = t.left, t.right
    if isinstance(right, Leaf):
        return _times_leaf(_right_normed(left), right)
    if right.is_right_product:
        expansion = psom_expand(left, right)
        parts = [expansion.jacobians()]
        for coefficient, term in expansion.products():
            # every product of the expansion is (X) a_i with X shorter than t
            parts.append(_times_leaf(_right_normed(term.left), term.right).scale(coefficient))
        return _canonical(combine(*parts))
    parts = []
    for coefficient, term in _right_normed(right):
        if isinstance(term, JNode):
            # L J = -J L
            parts.append(TermCombo.build(_jacobian_times(term, left, -coefficient)))
        else:
            parts.append(_right_normed(Node(left, term)).scale(coefficient))
    return combine(*parts)


def _canonical(combo):
    pairs = []
    for coefficient, term in combo:
        if isinstance(term, JNode):
            pairs += _jacobian_pairs(coefficient, *term.args)
        else:
            pairs.append((coefficient, term))
    return TermCombo.build(pairs)


def to_right_normed(t):
    """Write ``t`` as right products of the same length plus Jacobian terms.

    Every product in the result is a right product with the length and the
    leaves of ``t`` (up to order); every other term is a ``J(...)`` whose
    arguments hold all the leaves of ``t`` between them. Dropping the
    Jacobians leaves ``t`` modulo ``J(A, A, A)``.

    Raises
    ------
    TermShapeError
        If ``t`` contains a Jacobian.
    """
    if t.has_jacobian:
        raise TermShapeError("to_right_normed takes products without J(...)")
    return _right_normed(t)


def _four_term(x, z, y, t):
    """``(xz)(yt)`` for right products ``x``, ``y`` and leaves ``z``, ``t``."""
    return TermCombo.build(
        [
            (1, Node(Node(Node(x, y), z), t)),
            (1, Node(Node(Node(y, z), t), x)),
            (1, Node(Node(Node(z, t), x), y)),
            (1, Node(Node(Node(t, x), y), z)),
        ]
    )


def _is_composite_right(term):
    return isinstance(term, Node) and term.is_right_product


def _is_hard(n, m):
    return n != m and not n.is_right_product and not m.is_right_product


@lru_cache(maxsize=None)
def _multiply_normal(n, m):
    """``n m`` as normal products, for normal products ``n`` and ``m``."""
    if n == m:
        return TermCombo.zero()
    if _is_composite_right(n) and _is_composite_right(m):
        return _four_term(n.left, n.right, m.left, m.right)
    if m.is_right_product:
        return TermCombo.single(Node(n, m))
    if n.is_right_product:
        return TermCombo.single(Node(m, n), -1)
    return _solve_same_length(n, m)


def _products_of(combo, factor):
    """Multiply every normal product of ``combo`` on the right by ``factor``."""
    return combine(*(_multiply_normal(term, factor).scale(c) for c, term in combo))


def _oriented(n, m):
    if m.sort_key() < n.sort_key():
        return (m, n), -1
    return (n, m), 1


def _expand_step(n, m):
    """Apply the four-term identity once to ``n m`` with ``n = n1 s`` and ``m = m1 u``.

    Returns the part already in normal form and the same-length products of
    two non-right normal products it still refers to.
    """
    n1, s = n.left, n.right
    m1, u = m.left, m.right
    known = []
    pending = []

    def product(left_combo, factor, coefficient=1):
        for c, term in left_combo:
            if _is_hard(term, factor):
                pending.append((coefficient * c, term, factor))
            else:
                known.append(_multiply_normal(term, factor).scale(coefficient * c))

    # ((n1 m1) s) u
    known.append(_products_of(_products_of(_multiply_normal(n1, m1), s), u))
    # ((m1 s) u) n1
    product(TermCombo.single(Node(Node(m1, s), u)), n1)
    # ((s u) n1) m1
    product(_products_of(_multiply_normal(s, u), n1), m1)
    # ((u n1) m1) s
    known.append(_products_of(_products_of(_multiply_normal(u, n1), m1), s))
    return combine(*known), pending


def _solve_same_length(n, m):
    """Resolve ``n m`` when neither factor is a right product.

    The four-term identity relates ``n m`` to other products of two
    non-right normal products of the same length; all of them are collected
    and the resulting linear system is solved exactly.
    """
    start, start_sign = _oriented(n, m)
    unknowns = [start]
    index = {start: 0}
    equations = []
    position = 0
    while position < len(unknowns):
        left, right = unknowns[position]
        known, pending = _expand_step(left, right)
        row = {position: Fraction(1)}
        for coefficient, x, y in pending:
            key, sign = _oriented(x, y)
            if key not in index:
                if len(unknowns) >= MAX_SYSTEM_SIZE:
                    raise RewriteError(f"too many products tied to '{Node(n, m)}'")
                index[key] = len(unknowns)
                unknowns.append(key)
            column = index[key]
            row[column] = row.get(column, Fraction(0)) - sign * coefficient
        equations.append((row, dict((term, c) for c, term in known)))
        position += 1
    logger.debug(f"solving {len(unknowns)} same-length products for '{Node(n, m)}'")
    solution = _gaussian_solve(equations, len(unknowns))
    return solution[0].scale(start_sign)


def _gaussian_solve(equations, size):
    """Solve ``sum_j row[j] U_j = rhs`` over Q with combination-valued right-hand sides."""
    rows = [dict(row) for row, _ in equations]
    rhs = [dict(values) for _, values in equations]

    def subtract(target, source, factor):
        for key, value in source.items():
            updated = target.get(key, Fraction(0)) - factor * value
            if updated:
                target[key] = updated
            else:
                target.pop(key, None)

    for column in range(size):
        pivot = next((r for r in range(column, size) if rows[r].get(column)), None)
        if pivot is None:
            raise RewriteError("the same-length products do not determine a unique normal form")
        rows[column], rows[pivot] = rows[pivot], rows[column]
        rhs[column], rhs[pivot] = rhs[pivot], rhs[column]
        inverse = 1 / rows[column][column]
        rows[column] = {k: v * inverse for k, v in rows[column].items()}
        rhs[column] = {k: v * inverse for k, v in rhs[column].items()}
        for r in range(size):
            factor = rows[r].get(column) if r != column else None
            if factor:
                subtract(rows[r], rows[column], factor)
                subtract(rhs[r], rhs[column], factor)
    return [TermCombo.build((c, term) for term, c in values.items()) for values in rhs]


@lru_cache(maxsize=None)
def _normal(t):
    if isinstance(t, Leaf):
        return TermCombo.single(t)
    parts = []
    for c, left in _normal(t.left):
        for d, right in _normal(t.right):
            parts.append(_multiply_normal(left, right).scale(c * d))
    return combine(*parts)


def to_normal_products(t):
    """Write ``t`` as normal products with the length and weight of ``t``.

    A product of two right products ``(x z)(y t)`` becomes four right
    products; other products are reduced factor by factor.

    Raises
    ------
    TermShapeError
        If ``t`` contains a Jacobian.
    RewriteError
        If products of two non-right normal products cannot be resolved.
    """
    if t.has_jacobian:
        raise TermShapeError("to_normal_products takes products without J(...)")
    return _normal(t)
