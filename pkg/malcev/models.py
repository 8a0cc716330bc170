from collections import namedtuple
from enum import Enum


class IdentityWitness(
    namedtuple(
        'IdentityWitness',
        [
            'verdict',
            'identity',  # name of the checked identity
            'indices',  # 0-based basis indices of the failing substitution, or None
            'lhs',  # Element, evaluated left side of the failing instance
            'rhs',  # Element, evaluated right side of the failing instance
        ],
    )
):
    __slots__ = ()

    def __bool__(self):
        return bool(self.verdict)

    @classmethod
    def passed(cls, identity):
        return cls(True, identity, None, None, None)

    @classmethod
    def failed(cls, identity, indices, lhs, rhs):
        return cls(False, identity, tuple(indices), lhs, rhs)


TermStats = namedtuple('TermStats', ['length', 'weight'])

JkNilResult = namedtuple(
    'JkNilResult',
    [
        'index',  # least k with J(B,A,A)_(A,k) = {0}, or None
        'definitive',  # False when the cap ran out before a verdict
    ],
)

SearchHit = namedtuple('SearchHit', ['trial', 'algebra', 'is_lie'])


class ChainKind(Enum):
    RIGHT_POWERS = 'right'
    LEFT_POWERS = 'left'
    ASSOC_POWERS = 'assoc'
    STRONG_POWERS = 'strong'
    BK_CHAIN = 'bk'


class ProductShape(Enum):
    RIGHT_PRODUCT = 'right-product'
    LEFT_PRODUCT = 'left-product'
    NORMAL_PRODUCT = 'normal-product'
    GENERAL = 'general'
