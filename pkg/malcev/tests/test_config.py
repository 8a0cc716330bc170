import pytest

from malcev.config import MAX_CHAIN_ENV, Config, config
from malcev.exceptions import ConfigError


@pytest.fixture
def fresh_config():
    settings = Config()
    yield settings
    config.reset()


def test_defaults(fresh_config, monkeypatch):
    monkeypatch.delenv(MAX_CHAIN_ENV, raising=False)
    assert fresh_config.json_indent == 2
    assert fresh_config.max_chain_for(4) == 5


def test_precedence(fresh_config, monkeypatch):
    monkeypatch.setenv(MAX_CHAIN_ENV, '9')
    assert fresh_config.max_chain_for(4) == 9
    fresh_config.update({'max_chain': 7})
    assert fresh_config.max_chain_for(4) == 7
    assert fresh_config.max_chain_for(4, override='3') == 3


@pytest.mark.parametrize(
    "settings",
    [{'max_chain': 0}, {'max_chain': 'many'}, {'json_indent': None}, {'colour': 1}],
)
def test_bad_settings(fresh_config, settings):
    with pytest.raises(ConfigError):
        fresh_config.update(settings)


def test_bad_environment(fresh_config, monkeypatch):
    monkeypatch.setenv(MAX_CHAIN_ENV, '-1')
    with pytest.raises(ConfigError, match=MAX_CHAIN_ENV):
        fresh_config.max_chain_for(4)


def test_reset(fresh_config):
    fresh_config.update({'json_indent': 4, 'search_trials': 10})
    fresh_config.reset()
    assert fresh_config.json_indent == 2
    assert fresh_config.search_trials == 1000
    assert fresh_config.max_chain is None
