# -*- coding: utf-8 -*-
import pytest
from mock.mock import patch

from mfaregex.config import config


def pytest_addoption(parser):
    parser.addoption('--run-slow', action='store_true', default=False, help='Run the full size acceptance checks')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--run-slow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --run-slow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def default_config():
    # Never let a settings file of a previous test leak into the next one
    with patch.multiple('mfaregex.config.config', settings_file=None, _settings=None):
        yield config


@pytest.fixture
def valid_config():
    with patch.multiple('mfaregex.config.config', settings_file='./tests/settings/valid_settings.yml',
                        _settings=None):
        yield config


@pytest.fixture
def small_budget():
    with patch.multiple('mfaregex.config.config', settings_file=None, _settings={'budget': 50}):
        yield config
