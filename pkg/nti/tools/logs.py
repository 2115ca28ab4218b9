"""Logging utilities.

Library modules log to ``nti.<subpackage>`` loggers obtained with
:func:`get_logger` and stay silent until an application calls
:func:`config_logger`, usually on the ``nti`` root logger.
"""

import sys
import logging

__docformat__ = 'restructuredtext'


def config_logger(name, format='%(message)s', datefmt=None,
                  stream=sys.stdout, level=logging.INFO,
                  filename=None, filemode='w', filelevel=None,
                  propagate=False):
    """Attach fresh handlers to logger `name` and return it.

    Handlers left over from an earlier call are removed first, so drivers
    and tests may reconfigure the same logger repeatedly.

    :parameters:
        :name:      logger name, e.g. ``'nti'`` or ``'nti.trainer'``

    :keywords:
        :format:    record format (default: ``%(message)s``)
        :datefmt:   date/time format of ``%(asctime)s``
        :stream:    stream of the StreamHandler; `None` disables it
                    (default: `sys.stdout`)
        :level:     logger and stream level (default: ``INFO``)
        :filename:  also log to this file (default: `None`)
        :filemode:  ``'w'`` or ``'a'``
        :filelevel: level of the file handler (default: `level`)
        :propagate: pass records on to the parent logger (default: `False`)
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = propagate
    for hdlr in list(logger.handlers):
        logger.removeHandler(hdlr)

    formatter = logging.Formatter(format, datefmt)
    handlers = []
    if filename:
        hdlr = logging.FileHandler(filename, filemode)
        hdlr.setLevel(level if filelevel is None else filelevel)
        handlers.append(hdlr)
    if stream:
        hdlr = logging.StreamHandler(stream)
        hdlr.setLevel(level)
        handlers.append(hdlr)
    if not handlers:
        handlers.append(logging.NullHandler())

    for hdlr in handlers:
        hdlr.setFormatter(formatter)
        logger.addHandler(hdlr)
    return logger


def get_logger(name):
    """Return the library logger `name` with a NullHandler installed."""
    logger = logging.getLogger(name)
    if not logger.handlers:
        logger.addHandler(logging.NullHandler())
    return logger
