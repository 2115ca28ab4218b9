# -*- coding: utf-8 -*-
"""Example records of the three tasks."""

from collections import namedtuple

__docformat__ = 'restructuredtext'

NLI_LABELS = ('entailment', 'neutral', 'contradiction')

SentencePair = namedtuple('SentencePair', ['premise', 'hypothesis', 'label'])
SentencePair.__doc__ = """Premise and hypothesis token tuples with a label
from `NLI_LABELS`."""

QAPair = namedtuple('QAPair', ['question', 'answer', 'relevance', 'qid'])
QAPair.__doc__ = """Question and candidate answer token tuples, relevance in
{0, 1} and the id of the question group."""

LabeledSentence = namedtuple('LabeledSentence', ['tokens', 'label', 'spans'])
LabeledSentence.__doc__ = """Token tuple with an integer label and a tuple of
labeled phrase spans ``(start, end, label)`` (end exclusive)."""


def nli_label_index(label):
    """Index of an inference label in `NLI_LABELS`."""
    return NLI_LABELS.index(label)


def sentence(tokens, label, spans=()):
    """Build a :class:`LabeledSentence` with tuple fields."""
    return LabeledSentence(tuple(tokens), int(label), tuple(spans))
