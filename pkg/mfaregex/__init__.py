# -*- coding: utf-8 -*-

from __future__ import absolute_import

from .version import __version__  # noqa
