"""Nilpotence filtrations of an ideal, the J_k-nil test and the nilpotence report."""
import random
from dataclasses import dataclass
from typing import Optional

from malcev.algebra import is_malcev
from malcev.config import config
from malcev.exceptions import InvariantViolation, MalcevException, NotAnIdealError, NotMalcevError
from malcev.log import logger
from malcev.models import ChainKind, JkNilResult
from malcev.subspace import (
    full_space,
    ideal_closure,
    is_ideal,
    jacobian_span,
    subspace_product,
    subspace_sum,
    zero_space,
)


@dataclass(frozen=True)
class FiltrationChain:
    """Computed terms of a filtration, ``terms[0]`` being the term of index ``start``.

    ``stabilized`` means the computed tail is a proven fixpoint, so every
    later term equals the last one. ``nil_index`` is the least index from
    which every term is ``{0}``.
    """

    kind: ChainKind
    start: int
    terms: tuple
    stabilized: bool
    nil_index: Optional[int]

    @property
    def last_index(self):
        return self.start + len(self.terms) - 1

    @property
    def complete(self):
        """Whether every term of the filtration is known."""
        return self.stabilized or self.nil_index is not None

    def term(self, n):
        if n < self.start:
            raise IndexError(f"{self.kind.value} chain starts at index {self.start}")
        if n <= self.last_index:
            return self.terms[n - self.start]
        if self.nil_index is not None:
            return zero_space(self.terms[-1].algebra)
        if self.stabilized:
            return self.terms[-1]
        raise IndexError(f"{self.kind.value} chain was only computed up to index {self.last_index}")

    def __iter__(self):
        return iter(enumerate(self.terms, start=self.start))


def _cap(B, max_n):
    return config.max_chain_for(B.algebra.dim, max_n)


def _require_ideal(B):
    if not is_ideal(B):
        raise NotAnIdealError()


def _single_step_chain(kind, B, max_n, step):
    """Chains where term n+1 only depends on term n; equal neighbours are a fixpoint."""
    max_n = _cap(B, max_n)
    terms = [B]
    nil_index = 1 if B.is_zero() else None
    stabilized = False
    while nil_index is None and not stabilized and len(terms) < max_n:
        following = step(terms[-1])
        terms.append(following)
        if following.is_zero():
            nil_index = len(terms)
        elif following == terms[-2]:
            stabilized = True
        logger.debug(f"{kind.value} power {len(terms)}: dimension {following.dim}")
    return FiltrationChain(kind, 1, tuple(terms), stabilized, nil_index)


def right_powers(B, max_n=None):
    """``B^1 = B``, ``B^(n+1) = B^n B``: spans of right products of ``n`` factors of ``B``."""
    return _single_step_chain(ChainKind.RIGHT_POWERS, B, max_n, lambda term: subspace_product(term, B))


def left_powers(B, max_n=None):
    """``1B = B``, ``(n+1)B = B nB``: spans of left products of ``n`` factors of ``B``."""
    return _single_step_chain(ChainKind.LEFT_POWERS, B, max_n, lambda term: subspace_product(B, term))


def _split_chain(kind, B, max_n, close, descending):
    """Chains with ``T_n = close(sum_{i=1}^{n-1} T_i T_{n-i})``.

    A run of equal terms ``T_r = ... = T_m`` with ``m >= 2r`` forces every
    later term to be equal as well: each split of ``m + 1`` has a side whose
    index lies in ``[r + 1, m]`` and can be shifted down by one. Unless the
    chain is known to descend, a single ``{0}`` term proves nothing and only
    such a run of zeros ends it.
    """
    max_n = _cap(B, max_n)
    terms = [close(B)]
    nil_index = 1 if terms[0].is_zero() else None
    stabilized = False
    run_start = 1
    while nil_index is None and not stabilized and len(terms) < max_n:
        n = len(terms) + 1
        total = zero_space(B.algebra)
        for i in range(1, n):
            total = subspace_sum(total, subspace_product(terms[i - 1], terms[n - i - 1]))
        following = close(total)
        terms.append(following)
        if following != terms[-2]:
            run_start = n
        if following.is_zero() and (descending or n >= 2 * run_start):
            nil_index = run_start
        elif following == terms[-2] and n >= 2 * run_start:
            stabilized = True
        logger.debug(f"{kind.value} power {n}: dimension {following.dim}")
    return FiltrationChain(kind, 1, tuple(terms), stabilized, nil_index)


def assoc_powers(B, max_n=None):
    """``B^{n}``: span of all products of ``n`` elements of ``B``, associated in any way.

    The chain only descends when ``B`` is closed under the product; otherwise
    a ``{0}`` term may be followed by nonzero ones.
    """
    descending = subspace_product(B, B).is_subspace_of(B)
    return _split_chain(ChainKind.ASSOC_POWERS, B, max_n, lambda space: space, descending)


def strong_powers(B, max_n=None):
    """``B^<n>``: sums of products of elements of ``A`` with at least ``n`` factors in ``B``.

    Computed as ``B^<n> = closure(sum_{i=1}^{n-1} B^<i> B^<n-i>)``, where the
    ideal closure absorbs the products with one side already of weight ``n``.

    Raises
    ------
    NotAnIdealError
        If ``B`` is not an ideal.
    """
    _require_ideal(B)
    return _split_chain(ChainKind.STRONG_POWERS, B, max_n, ideal_closure, True)


def bk_chain(B, max_k=None):
    """``B_0 = A``, ``B_1 = B`` and ``B_k = B^k + J(B, A, A)`` for ``k >= 2``.

    Every term must be an ideal and the chain must descend; anything else
    raises InvariantViolation.
    """
    _require_ideal(B)
    a = B.algebra
    max_k = _cap(B, max_k)
    full = full_space(a)
    jacobians = jacobian_span(B, full, full)
    powers = right_powers(B, max_k)
    terms = [full, B]
    nil_index = 1 if B.is_zero() else None
    stabilized = False
    k = 1
    while nil_index is None and not stabilized and k < max_k:
        k += 1
        term = subspace_sum(powers.term(k), jacobians)
        if not is_ideal(term):
            raise InvariantViolation(f"B_{k} is not an ideal")
        if not term.is_subspace_of(terms[-1]):
            raise InvariantViolation(f"B_{k} is not contained in B_{k - 1}")
        terms.append(term)
        if term.is_zero():
            nil_index = k
        elif term == terms[-2] and powers.complete and k > powers.last_index:
            stabilized = True
    return FiltrationChain(ChainKind.BK_CHAIN, 0, tuple(terms), stabilized, nil_index)


def d_suffix(D, k):
    """``D_(A,k) = D A ... A``: ``k`` successive right multiplications by ``A``."""
    if k < 0:
        raise MalcevException("the number of factors must be nonnegative")
    full = full_space(D.algebra)
    result = D
    for _ in range(k):
        if result.is_zero():
            break
        result = subspace_product(result, full)
    return result


def jk_nil_index(B, max_k=None):
    """Least ``k >= 1`` with ``J(B, A, A)_(A,k) = {0}``.

    Returns
    -------
    JkNilResult
        ``index`` is None when no such ``k`` was found; ``definitive`` tells
        a proven "never" (the suffix chain reached a nonzero fixpoint) from
        an exhausted cap.
    """
    _require_ideal(B)
    a = B.algebra
    max_k = _cap(B, max_k)
    full = full_space(a)
    current = jacobian_span(B, full, full)
    for k in range(1, max_k + 1):
        following = subspace_product(current, full)
        if following.is_zero():
            return JkNilResult(k, True)
        if following == current:
            logger.debug(f"J(B,A,A) suffix chain is stuck at dimension {current.dim}")
            return JkNilResult(None, True)
        current = following
    logger.warning(f"J_k-nil test inconclusive after {max_k} factors")
    return JkNilResult(None, False)


@dataclass(frozen=True)
class NilpotenceReport:
    algebra: str
    ideal: object
    right_index: Optional[int]
    left_index: Optional[int]
    assoc_index: Optional[int]
    strong_index: Optional[int]
    jk_nil_index: Optional[int]
    jk_nil_definitive: bool
    bound_4n2: Optional[int]
    bound_satisfied: Optional[bool]
    # 4k^2 - 2k + 1 with k = max(J_k-nil index, right index), the bound the
    # general J_k-nil argument gives for an ideal that is not the whole algebra
    jk_bound: Optional[int] = None

    def as_dict(self):
        return {
            'algebra': self.algebra,
            'ideal': self.ideal,
            'right_index': self.right_index,
            'left_index': self.left_index,
            'assoc_index': self.assoc_index,
            'strong_index': self.strong_index,
            'jk_nil_index': self.jk_nil_index,
            'jk_nil_definitive': self.jk_nil_definitive,
            'bound_4n2': self.bound_4n2,
            'bound_satisfied': self.bound_satisfied,
            'jk_bound': self.jk_bound,
        }


def nilpotence_bound(n):
    return 4 * n * n - 2 * n + 1


def check_inclusion_chain(right, assoc, strong):
    """``B^k ⊆ B^{k} ⊆ B^<k>`` for every index computed in all three chains."""
    last = min(right.last_index, assoc.last_index, strong.last_index)
    for k in range(1, last + 1):
        if not right.term(k).is_subspace_of(assoc.term(k)):
            return False
        if not assoc.term(k).is_subspace_of(strong.term(k)):
            return False
    return True


def check_strong_multiplicativity(chain):
    """``B^<i> B^<j> ⊆ B^<i+j>`` for all computed ``i + j``."""
    for i in range(chain.start, chain.last_index + 1):
        for j in range(chain.start, chain.last_index + 1 - i + chain.start):
            try:
                target = chain.term(i + j)
            except IndexError:
                continue
            if not subspace_product(chain.term(i), chain.term(j)).is_subspace_of(target):
                return False
    return True


def nilpotence_report(a, B, max_n=None):
    """Indices of the four filtrations of ``B``, the J_k-nil index and the ``4n^2 - 2n + 1`` bound.

    When ``B^n = {0}`` the plain and strong filtrations are pursued up to the
    bound itself, so a bound failure is never an artefact of the cap.

    Raises
    ------
    NotMalcevError
        If ``a`` fails the Malcev identity.
    NotAnIdealError
        If ``B`` is not an ideal of ``a``.
    InvariantViolation
        If the computed filtrations contradict the inclusions they must obey.
    """
    if B.algebra is not a and B.algebra != a:
        raise MalcevException("the ideal belongs to another algebra")
    if not is_malcev(a):
        raise NotMalcevError()
    _require_ideal(B)
    cap = _cap(B, max_n)

    right = right_powers(B, cap)
    left = left_powers(B, cap)
    right_index = right.nil_index
    long_cap = max(cap, nilpotence_bound(right_index)) if right_index is not None else cap
    assoc = assoc_powers(B, long_cap)
    strong = strong_powers(B, long_cap)
    jk = jk_nil_index(B, cap)
    logger.info(
        f"{a.describe()}: right={right_index} left={left.nil_index} "
        f"assoc={assoc.nil_index} strong={strong.nil_index} jk={jk.index}"
    )

    if not check_inclusion_chain(right, assoc, strong):
        raise InvariantViolation("B^k ⊆ B^{k} ⊆ B^<k> fails")
    if right_index is not None and (jk.index is not None or B.is_full()):
        if assoc.nil_index is None or strong.nil_index is None:
            raise InvariantViolation("right nilpotent ideal is not strongly nilpotent")
    if right_index is not None and strong.nil_index is not None and right_index > strong.nil_index:
        raise InvariantViolation("right index exceeds strong index")

    bound = nilpotence_bound(right_index) if right_index is not None else None
    satisfied = None
    if bound is not None:
        satisfied = strong.nil_index is not None and strong.nil_index <= bound
        if not satisfied:
            logger.warning(f"strong index {strong.nil_index} is not within the bound {bound}")
    jk_bound = None
    if jk.index is not None and right_index is not None:
        jk_bound = nilpotence_bound(max(jk.index, right_index))

    return NilpotenceReport(
        algebra=a.describe(),
        ideal=B,
        right_index=right_index,
        left_index=left.nil_index,
        assoc_index=assoc.nil_index,
        strong_index=strong.nil_index,
        jk_nil_index=jk.index,
        jk_nil_definitive=jk.definitive,
        bound_4n2=bound,
        bound_satisfied=satisfied,
        jk_bound=jk_bound,
    )


def _random_element_of(space, rng):
    a = space.algebra
    field = a.field
    value = a.zero()
    for basis_vector in space.basis:
        value = value + basis_vector * field.random_element(rng)
    return value


def _random_right_product(B, weight, extra, rng):
    """Evaluate a right product with ``weight`` factors drawn from ``B`` and ``extra`` from ``A``."""
    a = B.algebra
    full = full_space(a)
    kinds = [True] * weight + [False] * extra
    rng.shuffle(kinds)
    factors = [_random_element_of(B if in_b else full, rng) for in_b in kinds]
    value = factors[0]
    for factor in factors[1:]:
        value = a.multiply(value, factor)
    return value


def check_bn_lemma(B, n, trials=50, rng=None, max_extra=3):
    """Right products of weight at least ``n`` relative to ``B`` lie in ``B_n``."""
    rng = rng or random.Random(0)
    target = bk_chain(B, max(n, 1) + 1).term(n) if n >= 1 else full_space(B.algebra)
    for _ in range(trials):
        value = _random_right_product(B, n, rng.randint(0, max_extra), rng)
        if not target.contains(value):
            logger.warning(f"right product of weight {n} escapes B_{n}: {value}")
            return False
    return True


def check_laqt_lemma(B, ell, trials=50, rng=None, max_extra=2):
    """For a J_k-nil ideal and ``ell >= k``, right products of weight ``>= 2 ell`` lie in ``(B^ell)_(A,k)``."""
    rng = rng or random.Random(0)
    k = jk_nil_index(B).index
    if k is None:
        raise MalcevException("the ideal is not J_k-nil")
    if ell < k:
        raise MalcevException(f"ell must be at least the J_k-nil index {k}")
    target = d_suffix(right_powers(B, ell + 1).term(ell), k)
    for _ in range(trials):
        value = _random_right_product(B, 2 * ell, rng.randint(0, max_extra), rng)
        if not target.contains(value):
            logger.warning(f"right product of weight {2 * ell} escapes (B^{ell})_(A,{k}): {value}")
            return False
    return True
