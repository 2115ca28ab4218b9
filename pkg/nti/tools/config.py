# -*- coding: utf-8 -*-
"""Run configuration files.

A run configuration is an INI file with a single ``[run]`` section of
``key = value`` settings, read with :mod:`configparser`. Dashes in keys read
as underscores and ``#`` starts a comment.
"""

import io
import configparser
from collections import OrderedDict

from nti.tools.exceptions import ConfigError

__docformat__ = 'restructuredtext'

SECTION = 'run'


def parse_value(text):
    """Convert `text` to an int, float, bool or None where it reads as one."""
    low = text.lower()
    if low in ('true', 'false'):
        return low == 'true'
    if low == 'none':
        return None
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return u"%s" % (value,)


def _make_parser():
    parser = configparser.ConfigParser(delimiters=('=',),
                                       comment_prefixes=('#',),
                                       inline_comment_prefixes=('#',),
                                       interpolation=None)
    parser.optionxform = lambda key: key.strip().replace(u'-', u'_')
    return parser


def _error_line(exc):
    errors = getattr(exc, 'errors', None)
    if errors:
        return errors[0][0]
    return getattr(exc, 'lineno', None)


def read_config(path):
    """Read the ``[run]`` section of `path` as an OrderedDict of settings.

    Malformed lines, duplicate keys and sections other than ``[run]`` raise
    :class:`ConfigError` naming the file and, when known, the line.
    """
    parser = _make_parser()
    try:
        with io.open(path, encoding='utf-8') as fp:
            parser.read_file(fp, source=path)
    except configparser.Error as exc:
        lineno = _error_line(exc)
        where = path if lineno is None else "%s:%d" % (path, lineno)
        raise ConfigError("%s: malformed configuration (%s)"
                          % (where, exc.__class__.__name__))
    others = [s for s in parser.sections() if s != SECTION]
    if others:
        raise ConfigError("%s: unknown section [%s]; settings go in [%s]"
                          % (path, others[0], SECTION))
    if not parser.has_section(SECTION):
        raise ConfigError("%s: no [%s] section" % (path, SECTION))
    return OrderedDict((key, parse_value(value))
                       for key, value in parser.items(SECTION))


def write_config(path, values, header=None):
    """Write `values` to the ``[run]`` section of `path` in the given order."""
    parser = _make_parser()
    parser[SECTION] = OrderedDict((key, format_value(value))
                                  for key, value in values.items())
    with io.open(path, 'w', encoding='utf-8') as fp:
        if header:
            fp.write(u"# %s\n" % header)
        parser.write(fp)


def merge(*layers):
    """Merge dictionaries left to right; `None` never overrides a value."""
    out = OrderedDict()
    for layer in layers:
        for key, value in layer.items():
            if value is not None or key not in out:
                out[key] = value
    return out
