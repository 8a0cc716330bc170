import functools
import platform
import random
import sys
import warnings

import click

from malcev.algebra import minus_algebra
from malcev.checks import malcev_checks
from malcev.config import config
from malcev.exceptions import IdealClosureWarning, MalcevException, TermShapeError
from malcev.fields import parse_field
from malcev.formatters import render
from malcev.iorw import load_algebra, read_yaml_file, write_algebra
from malcev.log import logger
from malcev.models import ChainKind
from malcev.nilpotence import (
    assoc_powers,
    bk_chain,
    check_bn_lemma,
    check_laqt_lemma,
    check_strong_multiplicativity,
    jk_nil_index,
    left_powers,
    nilpotence_report,
    right_powers,
    strong_powers,
)
from malcev.rewriting import psom_expand, to_normal_products, to_right_normed
from malcev.search import DEFAULT_DENSITY, search_malcev
from malcev.subspace import full_space, ideal_closure, is_ideal, jacobian_span, span, zero_space
from malcev.tables import format_table, parse_combination
from malcev.terms import MarkedAlphabet, Node, evaluate, format_combo, format_term, parse_term
from malcev.version import version

CHAIN_BUILDERS = {
    ChainKind.RIGHT_POWERS.value: right_powers,
    ChainKind.LEFT_POWERS.value: left_powers,
    ChainKind.ASSOC_POWERS.value: assoc_powers,
    ChainKind.STRONG_POWERS.value: strong_powers,
    ChainKind.BK_CHAIN.value: bk_chain,
}

EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2


def print_malcev_version(ctx, param, value):
    if not value:
        return
    print(f"{version} from {__file__} ({platform.python_version()})")
    ctx.exit()


def reports_errors(command):
    """Turn library errors into a message on stderr and exit code 2."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except MalcevException as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


def emit(ctx, record):
    click.echo(render(record, ctx.obj['output_format']), nl=False)


def _element(a, text):
    coefficients = parse_combination(text, a.labels)
    return a.element([coefficients.get(i, 0) for i in range(a.dim)])


def parse_ideal(a, text):
    """``full``, ``zero`` or ``span:<combination>,<combination>,...``; non-ideals are closed."""
    if text == 'full':
        return full_space(a)
    if text == 'zero':
        return zero_space(a)
    if not text.startswith('span:'):
        raise MalcevException(f"cannot read ideal '{text}', expected full, zero or span:<combinations>")
    vectors = [_element(a, part) for part in text[len('span:') :].split(',') if part.strip()]
    subspace = span(a, vectors)
    if not is_ideal(subspace):
        closed = ideal_closure(subspace)
        message = f"{subspace} is not an ideal, using its ideal closure {closed}"
        warnings.warn(message, IdealClosureWarning)
        logger.warning(message)
        return closed
    return subspace


def parse_assignment(a, text, symbols):
    """Bindings ``a=e1,b=e2+e3``; a symbol that is also a basis label defaults to that basis element."""
    assignment = {label: a.basis_element(i) for i, label in enumerate(a.labels)}
    for binding in (text or '').split(','):
        if not binding.strip():
            continue
        symbol, equals, value = binding.partition('=')
        if not equals or not symbol.strip():
            raise MalcevException(f"cannot read assignment '{binding}', expected <symbol>=<combination>")
        assignment[symbol.strip()] = _element(a, value)
    missing = sorted(set(symbols) - set(assignment))
    if missing:
        raise MalcevException(f"no value assigned to {', '.join(missing)}")
    return assignment


ideal_option = click.option(
    '--ideal',
    default='full',
    show_default=True,
    help="The ideal B: full, zero or span:<combination>,... (closed to an ideal if needed).",
)


@click.group(context_settings=dict(help_option_names=['-h', '--help']))
@click.pass_context
@click.option(
    '--log-level',
    type=click.Choice(['NOTSET', 'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']),
    default='INFO',
    help='Set log level',
)
@click.option('--json', 'as_json', is_flag=True, default=False, help='Emit reports as JSON.')
@click.option('--settings-file', default=None, help='Path to a YAML file with max_chain, json_indent, search_trials.')
@click.option('--max-chain', type=int, default=None, help='Cap on the number of filtration terms computed.')
@click.option(
    '--version',
    is_flag=True,
    callback=print_malcev_version,
    expose_value=False,
    is_eager=True,
    help='Flag for displaying the version.',
)
@reports_errors
def malcev(click_ctx, log_level, as_json, settings_file, max_chain):
    """Exact computations in Malcev algebras given by multiplication tables.

    TABLE arguments are table file paths, `-` for stdin, or `bundled:<name>`
    for the corpus shipped with the package. A missing local file falls back
    to the bundled table of the same name.
    """
    # Reduce default log level when the report is machine readable
    if as_json and log_level == 'INFO':
        log_level = 'ERROR'
    logger.setLevel(level=log_level)

    config.reset()
    if settings_file:
        config.update(read_yaml_file(settings_file))
    if max_chain is not None:
        config.update({'max_chain': max_chain})
    click_ctx.obj = {'output_format': 'json' if as_json else 'text'}


@malcev.command()
@click.pass_context
@click.argument('name', type=click.Choice(malcev_checks.names()))
@click.argument('table')
@reports_errors
def check(ctx, name, table):
    """Run the identity check NAME on TABLE; exit code 1 when it fails."""
    a = load_algebra(table)
    witness = malcev_checks.run(name, a)
    record = {'algebra': a.describe(), name: bool(witness)}
    if not witness:
        record['failed'] = witness.identity
        record['witness'] = [a.labels[i] for i in witness.indices]
        record['lhs'] = witness.lhs
        record['rhs'] = witness.rhs
    emit(ctx, record)
    if not witness:
        sys.exit(EXIT_FAILED_CHECK)


@malcev.command('jacobian-span')
@click.pass_context
@click.argument('table')
@ideal_option
@reports_errors
def jacobian_span_command(ctx, table, ideal):
    """Print J(B, A, A), which is J(A, A, A) for the default ideal."""
    a = load_algebra(table)
    B = parse_ideal(a, ideal)
    full = full_space(a)
    J = jacobian_span(B, full, full)
    emit(ctx, {'algebra': a.describe(), 'ideal': B, 'jacobian span': J, 'dim': J.dim})


@malcev.command()
@click.pass_context
@click.argument('kind', type=click.Choice(list(CHAIN_BUILDERS)))
@click.argument('table')
@ideal_option
@reports_errors
def powers(ctx, kind, table, ideal):
    """Print the filtration KIND of the ideal B."""
    a = load_algebra(table)
    B = parse_ideal(a, ideal)
    chain = CHAIN_BUILDERS[kind](B, config.max_chain_for(a.dim))
    record = {'algebra': a.describe(), 'ideal': B, 'chain': kind}
    for index, term in chain:
        record[f'term {index}'] = term
    record['stabilized'] = chain.stabilized
    record['nil index'] = chain.nil_index
    if not chain.complete:
        logger.warning(f"{kind} chain reached the cap of {len(chain.terms)} terms without stabilizing")
    emit(ctx, record)


@malcev.group()
def report():
    """Reports combining several computations."""


@report.command()
@click.pass_context
@click.argument('table')
@ideal_option
@click.option('--lemmas', is_flag=True, default=False, help='Also run the randomized lemma checks.')
@click.option('--seed', type=int, default=0, show_default=True, help='Seed of the lemma checks.')
@click.option('--trials', type=int, default=25, show_default=True, help='Random products per lemma check.')
@reports_errors
def nilpotence(ctx, table, ideal, lemmas, seed, trials):
    """Nilpotency indices of B and the 4n^2 - 2n + 1 bound."""
    a = load_algebra(table)
    B = parse_ideal(a, ideal)
    result = nilpotence_report(a, B, config.max_chain_for(a.dim))
    record = result.as_dict()
    failed = result.bound_satisfied is False
    if lemmas:
        rng = random.Random(seed)
        top = min(result.right_index or 3, 4)
        record['lemma bn'] = all(check_bn_lemma(B, n, trials, rng) for n in range(1, top + 1))
        if result.jk_nil_index is not None:
            k = result.jk_nil_index
            record['lemma laqt'] = check_laqt_lemma(B, k, trials, rng)
        else:
            record['lemma laqt'] = None
        strong = strong_powers(B, config.max_chain_for(a.dim))
        record['strong multiplicativity'] = check_strong_multiplicativity(strong)
        failed = failed or not all(record[key] is not False for key in ('lemma bn', 'lemma laqt', 'strong multiplicativity'))
    emit(ctx, record)
    if failed:
        sys.exit(EXIT_FAILED_CHECK)


@malcev.command('jk-nil')
@click.pass_context
@click.argument('table')
@ideal_option
@reports_errors
def jk_nil(ctx, table, ideal):
    """Least k with J(B, A, A) A ... A (k factors) = {0}."""
    a = load_algebra(table)
    B = parse_ideal(a, ideal)
    result = jk_nil_index(B, config.max_chain_for(a.dim))
    emit(ctx, {'algebra': a.describe(), 'ideal': B, 'jk nil index': result.index, 'definitive': result.definitive})


@malcev.command()
@click.pass_context
@click.argument('mode', type=click.Choice(['right-normed', 'normal', 'psom']))
@click.argument('term')
@click.option('--marks', default='', help='Comma separated symbols counted by the weight.')
@reports_errors
def rewrite(ctx, mode, term, marks):
    """Rewrite TERM into right products (plus J terms), normal products, or by the psom expansion."""
    t = parse_term(term)
    alphabet = MarkedAlphabet.of(t.leaves, [m.strip() for m in marks.split(',') if m.strip()])
    if mode == 'right-normed':
        combo = to_right_normed(t)
    elif mode == 'normal':
        combo = to_normal_products(t)
    else:
        if not isinstance(t, Node):
            raise TermShapeError("psom expects a product Q0*P0")
        combo = psom_expand(t.left, t.right)
    emit(
        ctx,
        {
            'term': format_term(t),
            'mode': mode,
            'length': t.length,
            'weight': alphabet.weight(t),
            'terms': len(combo),
            'result': format_combo(combo),
        },
    )


@malcev.command('eval')
@click.pass_context
@click.argument('table')
@click.argument('term')
@click.option('--assign', default='', help='Bindings like a=e1,b=e2+e3; basis labels stand for themselves.')
@reports_errors
def eval_command(ctx, table, term, assign):
    """Evaluate TERM in the algebra of TABLE."""
    a = load_algebra(table)
    t = parse_term(term)
    assignment = parse_assignment(a, assign, t.leaves)
    emit(ctx, {'algebra': a.describe(), 'term': format_term(t), 'value': evaluate(t, assignment, a)})


@malcev.command('search-malcev')
@click.pass_context
@click.option('--dim', type=int, required=True, help='Dimension of the random tables.')
@click.option('--field', 'field_token', default='Q', show_default=True, help='Q or F<p>.')
@click.option('--trials', type=int, default=None, help='Number of random tables (default from settings).')
@click.option('--seed', type=int, default=0, show_default=True, help='Random seed.')
@click.option('--density', type=float, default=DEFAULT_DENSITY, show_default=True, help='Chance of a nonzero product.')
@click.option('--progress/--no-progress', default=False, help='Show a progress bar on stderr.')
@reports_errors
def search_malcev_command(ctx, dim, field_token, trials, seed, density, progress):
    """Random anticommutative tables passing the Malcev test, printed as table files."""
    field = parse_field(field_token)
    trials = config.search_trials if trials is None else trials
    hits = search_malcev(dim, field, trials, seed, density=density, progress=progress)
    record = {'dim': dim, 'field': str(field), 'trials': trials, 'seed': seed, 'hits': len(hits)}
    for number, hit in enumerate(hits, start=1):
        record[f'hit {number}'] = format_table(hit.algebra)
        record[f'hit {number} lie'] = hit.is_lie
    emit(ctx, record)


@malcev.command()
@click.argument('table')
@click.option('--output', default='-', show_default=True, help='Where to write the table of the minus algebra.')
@reports_errors
def minus(table, output):
    """Write the table of A^- with the product xy - yx."""
    a = load_algebra(table)
    write_algebra(minus_algebra(a), output)
    if output != '-':
        logger.info(f"minus algebra of {a.describe()} written to {output}")
