import os

from malcev.exceptions import ConfigError

MAX_CHAIN_ENV = 'MALCEV_MAX_CHAIN'


class Config:
    BASE_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '../'))
    DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
    SETTINGS_KEYS = ('max_chain', 'json_indent', 'search_trials')

    def __init__(self):
        self.reset()

    def reset(self):
        self.max_chain = None
        self.json_indent = 2
        self.search_trials = 1000

    def update(self, settings):
        """Apply a mapping of settings, typically loaded from a YAML settings file."""
        for key, value in (settings or {}).items():
            if key not in self.SETTINGS_KEYS:
                raise ConfigError(f"unknown setting '{key}'")
            setattr(self, key, _positive_int(key, value))

    def max_chain_for(self, dim, override=None):
        """Cap on filtration length: explicit value, settings file, environment, then dim + 1."""
        if override is not None:
            return _positive_int('max_chain', override)
        if self.max_chain is not None:
            return self.max_chain
        env_value = os.environ.get(MAX_CHAIN_ENV)
        if env_value:
            return _positive_int(MAX_CHAIN_ENV, env_value)
        return dim + 1


def _positive_int(name, value):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a positive integer, got {value!r}") from None
    if number < 1:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")
    return number


config = Config()
