import os

from malcev.algebra import minus_algebra
from malcev.iorw import load_algebra

# every bundled Malcev algebra, with the commutator algebras of the two non-anticommutative tables
MALCEV_CORPUS = [
    'example_malcev4',
    'example_malcev4_f3',
    'heisenberg',
    'filiform4',
    'sl2',
    'gl2_units-minus',
    'octonions-minus',
]


def get_table_path(*args):
    return os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data', *args)


def load_table(name):
    if name.endswith('-minus'):
        return minus_algebra(load_table(name[: -len('-minus')]))
    return load_algebra(get_table_path(f'{name}.tbl'))
