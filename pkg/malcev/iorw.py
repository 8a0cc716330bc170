import os
import sys

import yaml

from malcev.config import config
from malcev.exceptions import MalcevException
from malcev.log import logger
from malcev.tables import format_table, parse_table

BUNDLED_SCHEME = 'bundled:'
TABLE_EXTENSION = '.tbl'


class MalcevIO:
    '''
    The holder which houses any io system registered with the system.
    This object is used in a singleton manner to save and load particular
    named Handler objects for reference externally.
    '''

    def __init__(self):
        self.reset()

    def read(self, path):
        return self.get_handler(path).read(path)

    def write(self, buf, path):
        return self.get_handler(path).write(buf, path)

    def pretty_path(self, path):
        return self.get_handler(path).pretty_path(path)

    def reset(self):
        self._handlers = []

    def register(self, scheme, handler):
        # Keep these ordered as LIFO
        self._handlers.insert(0, (scheme, handler))

    def get_handler(self, path):
        '''Get I/O Handler based on a table path

        Parameters
        ----------
        path : str

        Raises
        ------
        MalcevException: If a valid I/O handler could not be found for the input path

        Returns
        -------
        I/O Handler
        '''
        local_handler = None
        for scheme, handler in self._handlers:
            if scheme == 'local':
                local_handler = handler
                continue

            if scheme == '-' and path == '-':
                return handler

            if scheme != '-' and path.startswith(scheme):
                return handler

        if local_handler is None:
            raise MalcevException(f"Could not find a registered schema handler for: {path}")

        return local_handler


def bundled_path(name):
    """Path of a corpus table shipped with the package; the extension is optional."""
    if not name.endswith(TABLE_EXTENSION):
        name = name + TABLE_EXTENSION
    return os.path.join(config.DATA_DIR, name)


def bundled_tables():
    return sorted(fn[: -len(TABLE_EXTENSION)] for fn in os.listdir(config.DATA_DIR) if fn.endswith(TABLE_EXTENSION))


class LocalHandler:
    def read(self, path):
        try:
            with open(path, encoding="utf-8") as f:
                return f.read()
        except OSError as e:
            # fall back to a bundled table with that name
            fallback = bundled_path(os.path.basename(path))
            if os.path.exists(fallback):
                logger.debug(f"{path} not found, reading bundled table {fallback}")
                with open(fallback, encoding="utf-8") as f:
                    return f.read()
            raise MalcevException(f"cannot read '{path}': {e.strerror}") from e
        except UnicodeDecodeError as e:
            raise MalcevException(f"cannot read '{path}': not valid UTF-8 (byte {e.start})") from e

    def write(self, buf, path):
        dirname = os.path.dirname(path)
        if dirname and not os.path.exists(dirname):
            os.makedirs(dirname)
        with open(path, 'w', encoding="utf-8") as f:
            f.write(buf)

    def pretty_path(self, path):
        return path


class BundledHandler:
    '''Handler for the corpus tables shipped in the package data directory'''

    def read(self, path):
        name = path[len(BUNDLED_SCHEME) :]
        try:
            with open(bundled_path(name), encoding="utf-8") as f:
                return f.read()
        except OSError:
            known = ', '.join(bundled_tables())
            raise MalcevException(f"no bundled table '{name}' (known: {known})") from None

    def write(self, buf, path):
        raise MalcevException('write is not supported by BundledHandler')

    def pretty_path(self, path):
        return bundled_path(path[len(BUNDLED_SCHEME) :])


class StreamHandler:
    '''Handler for Stdin/Stdout streams'''

    def read(self, path):
        try:
            return sys.stdin.read()
        except UnicodeDecodeError as e:
            raise MalcevException(f"cannot read <stdin>: not valid UTF-8 (byte {e.start})") from e

    def write(self, buf, path):
        return sys.stdout.write(buf)

    def pretty_path(self, path):
        return '<stdin>'


class NoDatesSafeLoader(yaml.SafeLoader):
    yaml_implicit_resolvers = {
        k: [r for r in v if r[0] != 'tag:yaml.org,2002:timestamp']
        for k, v in yaml.SafeLoader.yaml_implicit_resolvers.items()
    }


# Instantiate a MalcevIO instance and register Handlers.
malcev_io = MalcevIO()
malcev_io.register("local", LocalHandler())
malcev_io.register(BUNDLED_SCHEME, BundledHandler())
malcev_io.register("-", StreamHandler())


def read_yaml_file(path):
    """Reads a YAML file from the location specified at 'path'."""
    settings = yaml.load(malcev_io.read(path), Loader=NoDatesSafeLoader)
    if settings is not None and not isinstance(settings, dict):
        raise MalcevException(f"settings file '{path}' must hold a mapping")
    return settings or {}


def _table_name(path):
    if path == '-':
        return 'stdin'
    base = os.path.basename(path[len(BUNDLED_SCHEME) :] if path.startswith(BUNDLED_SCHEME) else path)
    return base[: -len(TABLE_EXTENSION)] if base.endswith(TABLE_EXTENSION) else base


def load_algebra(path):
    """Read and parse a table file; the algebra is named after the file."""
    algebra = parse_table(malcev_io.read(path), name=_table_name(path))
    logger.debug(f"loaded {algebra.describe()} from {malcev_io.pretty_path(path)}")
    return algebra


def write_algebra(a, path):
    malcev_io.write(format_table(a), path)
