# -*- coding: utf-8 -*-
"""Readers and writers of the inference, answer selection and sentiment
corpora.

All corpora arrive tokenized; tokens are whitespace-separated.
"""

import io
from collections import OrderedDict

from nltk import Tree

from nti.data.records import NLI_LABELS, SentencePair, QAPair, \
    LabeledSentence, sentence
from nti.tools.exceptions import DataFormatError
from nti.tools.logs import get_logger

__docformat__ = 'restructuredtext'

SNLI_NO_CONSENSUS = '-'
SNLI_PLAIN_FIELDS = ('label', 'premise', 'hypothesis')
SNLI_HEADER = 'gold_label'
WIKIQA_HEADER = 'QuestionID'
SST_MODES = ('binary', 'fine')


def _lines(path):
    with io.open(path, encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.rstrip(u'\r\n')
            if line.strip():
                yield lineno, line


def _strip_parse(parse):
    return tuple(t for t in parse.split() if t not in (u'(', u')'))


def load_snli(path, **kwargs):
    """Read premise/hypothesis pairs.

    Two layouts are recognized: the official release, whose header row
    starts with ``gold_label`` and whose tokens are taken from the binary
    parse columns, and a plain layout of three tab-separated fields.
    Records labeled ``-`` carry no consensus label and are dropped.

    :keywords:
        :fields:      order of the plain layout fields
                      (default: ``('label', 'premise', 'hypothesis')``)
        :logger_name: name of the logger (default: 'nti.data')
    """
    fields = tuple(kwargs.get('fields', SNLI_PLAIN_FIELDS))
    if sorted(fields) != sorted(SNLI_PLAIN_FIELDS):
        raise ValueError("fields must order %s, got %s"
                         % (", ".join(SNLI_PLAIN_FIELDS), fields))
    log = get_logger(kwargs.get('logger_name', 'nti.data'))
    pairs = []
    columns = None
    dropped = 0
    for lineno, line in _lines(path):
        cols = line.split(u'\t')
        if columns is None and cols[0] == SNLI_HEADER:
            columns = dict((name, i) for i, name in enumerate(cols))
            for name in ('sentence1_binary_parse', 'sentence2_binary_parse'):
                if name not in columns:
                    raise DataFormatError("header lacks %s" % name,
                                          path, lineno)
            continue
        if columns is not None:
            if len(cols) < len(columns):
                raise DataFormatError("expected %d fields, got %d"
                                      % (len(columns), len(cols)),
                                      path, lineno)
            label = cols[columns[SNLI_HEADER]]
            premise = _strip_parse(cols[columns['sentence1_binary_parse']])
            hypothesis = _strip_parse(cols[columns['sentence2_binary_parse']])
        else:
            if len(cols) != 3:
                raise DataFormatError("expected 3 tab-separated fields, got %d"
                                      % len(cols), path, lineno)
            record = dict(zip(fields, cols))
            label = record['label']
            premise = tuple(record['premise'].split())
            hypothesis = tuple(record['hypothesis'].split())
        if label == SNLI_NO_CONSENSUS:
            dropped += 1
            continue
        if label not in NLI_LABELS:
            raise DataFormatError("unknown label %r" % label, path, lineno)
        pairs.append(SentencePair(premise, hypothesis, label))
    log.info("%d pairs read from %s, %d without consensus dropped",
             len(pairs), path, dropped)
    return pairs


def write_snli(pairs, path):
    """Write `pairs` in the plain three-field layout."""
    with io.open(path, 'w', encoding='utf-8') as fp:
        for p in pairs:
            fp.write(u"%s\t%s\t%s\n" % (p.label, u" ".join(p.premise),
                                        u" ".join(p.hypothesis)))


def load_wikiqa(path, **kwargs):
    """Read question/candidate pairs in file order.

    The official release (header row starting with ``QuestionID``) keeps its
    question ids. In the plain layout ``question<TAB>answer<TAB>label`` the
    question text defines the group and ids ``q0, q1, ...`` are assigned in
    order of first appearance.

    :keywords:
        :exclude_all_negative: drop questions without a relevant candidate
                               (default: `False`)
        :logger_name:          name of the logger (default: 'nti.data')
    """
    log = get_logger(kwargs.get('logger_name', 'nti.data'))
    pairs = []
    columns = None
    qids = {}
    for lineno, line in _lines(path):
        cols = line.split(u'\t')
        if columns is None and cols[0] == WIKIQA_HEADER:
            columns = dict((name, i) for i, name in enumerate(cols))
            for name in ('Question', 'Sentence', 'Label'):
                if name not in columns:
                    raise DataFormatError("header lacks %s" % name,
                                          path, lineno)
            continue
        if columns is not None:
            if len(cols) < len(columns):
                raise DataFormatError("expected %d fields, got %d"
                                      % (len(columns), len(cols)),
                                      path, lineno)
            qid = cols[columns[WIKIQA_HEADER]]
            question = cols[columns['Question']]
            answer = cols[columns['Sentence']]
            label = cols[columns['Label']]
        else:
            if len(cols) != 3:
                raise DataFormatError("expected 3 tab-separated fields, got %d"
                                      % len(cols), path, lineno)
            question, answer, label = cols
            qid = qids.setdefault(question, u"q%d" % len(qids))
        if label not in (u'0', u'1'):
            raise DataFormatError("relevance must be 0 or 1, got %r" % label,
                                  path, lineno)
        pairs.append(QAPair(tuple(question.split()), tuple(answer.split()),
                            int(label), qid))
    if kwargs.get('exclude_all_negative', False):
        keep = set(g[0].qid for g in group_by_question(pairs)
                   if any(p.relevance for p in g))
        pairs = [p for p in pairs if p.qid in keep]
    log.info("%d question/answer pairs read from %s", len(pairs), path)
    return pairs


def group_by_question(pairs):
    """Split `pairs` into per-question lists, in order of first appearance."""
    groups = OrderedDict()
    for p in pairs:
        groups.setdefault(p.qid, []).append(p)
    return list(groups.values())


def write_wikiqa(pairs, path):
    """Write `pairs` in the plain three-field layout."""
    with io.open(path, 'w', encoding='utf-8') as fp:
        for p in pairs:
            fp.write(u"%s\t%s\t%d\n" % (u" ".join(p.question),
                                        u" ".join(p.answer), p.relevance))


def _collect_spans(tree, start, out):
    """Append the labeled spans of `tree` in post-order; return its end."""
    if not isinstance(tree, Tree):
        return start + 1
    end = start
    for child in tree:
        end = _collect_spans(child, end, out)
    out.append((start, end, int(tree.label())))
    return end


def parse_sst_tree(text):
    """Parse one labeled treebank line into a fine-grained sentence."""
    tree = Tree.fromstring(text)
    if not isinstance(tree, Tree) or not tree.leaves():
        raise ValueError("empty tree")
    spans = []
    _collect_spans(tree, 0, spans)
    for _, _, label in spans:
        if not 0 <= label <= 4:
            raise ValueError("sentiment label %d out of range" % label)
    return sentence(tree.leaves(), int(tree.label()), spans)


def binarize_label(label):
    """Map 0, 1 to 0 (negative) and 3, 4 to 1 (positive); 2 to None."""
    if label == 2:
        return None
    return 0 if label < 2 else 1


def load_sst(path, mode='fine', **kwargs):
    """Read sentiment treebank sentences with their phrase spans.

    The sentence label is the root label and the spans are those of every
    subtree, the whole sentence included. In binary mode neutral sentences
    and neutral phrases are dropped and labels become 0 (negative) or
    1 (positive).

    :keywords:
        :logger_name: name of the logger (default: 'nti.data')
    """
    if mode not in SST_MODES:
        raise ValueError("mode must be one of %s, got %r"
                         % (", ".join(SST_MODES), mode))
    log = get_logger(kwargs.get('logger_name', 'nti.data'))
    sentences = []
    for lineno, line in _lines(path):
        try:
            s = parse_sst_tree(line)
        except ValueError as exc:
            raise DataFormatError(str(exc), path, lineno)
        if mode == 'binary':
            label = binarize_label(s.label)
            if label is None:
                continue
            spans = [(a, b, binarize_label(l)) for a, b, l in s.spans
                     if l != 2]
            s = sentence(s.tokens, label, spans)
        sentences.append(s)
    log.info("%d %s sentences read from %s", len(sentences), mode, path)
    return sentences


def expand_phrases(sentences):
    """One training example per distinct labeled span of every sentence."""
    out = []
    for s in sentences:
        seen = set()
        for start, end, label in s.spans:
            if (start, end, label) in seen:
                continue
            seen.add((start, end, label))
            out.append(LabeledSentence(s.tokens[start:end], label, ()))
    return out


def format_sst_tree(s):
    """Render a fine-grained sentence back to its treebank line."""
    stack = []
    for start, end, label in s.spans:
        children = []
        while stack and stack[-1][0] >= start:
            children.append(stack.pop())
        children.reverse()
        pieces = []
        pos = start
        for c_start, c_end, text in children:
            pieces.extend(s.tokens[pos:c_start])
            pieces.append(text)
            pos = c_end
        pieces.extend(s.tokens[pos:end])
        stack.append((start, end, u"(%d %s)" % (label, u" ".join(pieces))))
    if len(stack) != 1:
        raise ValueError("spans do not form a single tree")
    return stack[0][2]


def write_sst(sentences, path):
    with io.open(path, 'w', encoding='utf-8') as fp:
        for s in sentences:
            fp.write(format_sst_tree(s) + u"\n")
