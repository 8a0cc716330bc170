"""Seeded random search for Malcev algebras among sparse anticommutative tables."""
import random

from malcev.algebra import Algebra, is_lie, is_malcev
from malcev.exceptions import MalcevException
from malcev.log import logger
from malcev.models import SearchHit

DEFAULT_DENSITY = 0.3


def random_anticommutative_algebra(rng, field, dim, density=DEFAULT_DENSITY, name=None):
    """Each product ``e_i e_j`` (i < j) is nonzero with probability ``density``, with one or two terms."""
    products = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            if rng.random() >= density:
                continue
            coefficients = {}
            for k in rng.sample(range(dim), rng.randint(1, min(2, dim))):
                value = field.random_element(rng).value
                if value:
                    coefficients[k] = value
            if coefficients:
                products[(i, j)] = coefficients
                products[(j, i)] = {k: -value for k, value in coefficients.items()}
    return Algebra.from_products(field, dim, products, name=name)


def search_malcev(dim, field, trials, seed, density=DEFAULT_DENSITY, progress=False):
    """Random anticommutative tables that pass the Malcev test, deduplicated, in trial order.

    The output only depends on the arguments.
    """
    if dim < 1 or trials < 0:
        raise MalcevException("search needs a positive dimension and a nonnegative number of trials")
    rng = random.Random(seed)
    seen = set()
    hits = []
    trial_range = range(trials)
    if progress:
        from tqdm import tqdm

        trial_range = tqdm(trial_range, desc="Searching", unit="table", dynamic_ncols=True)

    rejected = 0
    for trial in trial_range:
        a = random_anticommutative_algebra(rng, field, dim, density, name=f'search-{seed}-{trial}')
        if a.is_zero_algebra() or a in seen:
            continue
        seen.add(a)
        if not is_malcev(a):
            rejected += 1
            continue
        hits.append(SearchHit(trial, a, bool(is_lie(a))))
    logger.info(f"{len(hits)} Malcev tables found in {trials} trials, {rejected} rejected")
    return hits
