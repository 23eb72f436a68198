import os
import re

import yaml

from mfaregex.constants import (DEFAULT_AVD_CAP, DEFAULT_BUDGET, DEFAULT_ENUMERATION_BUDGET,
                                DEFAULT_SAVD_CAP)
from mfaregex.exceptions import InvalidSettings

DEFAULT_SETTINGS = {
    'budget': DEFAULT_BUDGET,
    'avd_cap': DEFAULT_AVD_CAP,
    'savd_cap': DEFAULT_SAVD_CAP,
    'enumeration_budget': DEFAULT_ENUMERATION_BUDGET,
    'parallel': False,
}

ENV_TAG = '!ENV'
ENV_PATTERN = re.compile(r'.*?\${(\w+)}.*?')


class EnvLoader(yaml.SafeLoader):
    """A YAML loader that expands ``${VAR}`` placeholders of ``!ENV`` tagged values."""


def constructor_env_variables(loader, node):
    """
    Extract the environment variables from the node's value.

    :param yaml.Loader loader: The yaml loader
    :param node: The current node in the yaml
    :return: The value with every known environment variable substituted
    :rtype: str
    """
    value = loader.construct_scalar(node)
    match = ENV_PATTERN.findall(value)
    if match:
        full_value = value
        for g in match:
            full_value = full_value.replace('${{{g}}}'.format(g=g), os.environ.get(g, g))
        return full_value
    return value


EnvLoader.add_implicit_resolver(ENV_TAG, ENV_PATTERN, None)
EnvLoader.add_constructor(ENV_TAG, constructor_env_variables)


class Config(object):
    """A class that wraps access to the optional YAML settings file."""

    def __init__(self):
        self._settings = None
        self.settings_file = None

    @property
    def settings(self):
        """
        Return the settings loaded from the given YAML file, or an empty dict without a file.

        :return: The parsed YAML settings.
        :rtype: dict
        """
        if self._settings is None:
            self._settings = load_settings(self.settings_file) if self.settings_file is not None else {}
        return self._settings

    def get(self, key, override=None):
        """
        Return a numeric or boolean setting.

        :param str key: One of the keys of ``DEFAULT_SETTINGS``
        :param override: A value that wins over the settings file, e.g. a command line flag
        :raises InvalidSettings: If the configured value cannot be converted
        """
        if override is not None:
            return override
        default = DEFAULT_SETTINGS[key]
        value = self.settings.get(key, default)
        if isinstance(default, bool):
            if isinstance(value, str):
                return value.strip().lower() in ('1', 'true', 'yes', 'on')
            return bool(value)
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise InvalidSettings('Setting "{}" must be an integer, got {!r}'.format(key, value)) from exc

    def reset(self, settings_file=None):
        """Point the configuration at another settings file and drop the cached values."""
        self.settings_file = settings_file
        self._settings = None


def load_settings(settings_file):
    """
    Load a YAML settings file.

    :param str settings_file: Path of the file
    :raises InvalidSettings: If the document is not a mapping
    :rtype: dict
    """
    with open(settings_file) as f:
        settings = yaml.load(f, Loader=EnvLoader)
    if settings is None:
        return {}
    if not isinstance(settings, dict):
        raise InvalidSettings('The settings file "{}" must contain a mapping'.format(settings_file))
    return settings


config = Config()
