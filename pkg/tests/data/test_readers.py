# -*- coding: utf-8 -*-
import io
import os

import pytest

from nti.data.readers import load_snli, write_snli, load_wikiqa, \
    write_wikiqa, group_by_question, parse_sst_tree, load_sst, write_sst, \
    expand_phrases, format_sst_tree, binarize_label
from nti.data.records import SentencePair, nli_label_index
from nti.tools.exceptions import DataFormatError

this_path = os.path.dirname(os.path.realpath(__file__))


def fixture(name):
    return os.path.join(this_path, 'fixtures', name)


def write(tmpdir, name, text):
    path = str(tmpdir.join(name))
    with io.open(path, 'w', encoding='utf-8') as fp:
        fp.write(text)
    return path


def test_snli_plain_layout():
    pairs = load_snli(fixture('snli_sample.txt'))
    assert len(pairs) == 50
    assert pairs[0] == SentencePair(
        (u'a', u'man', u'runs', u'in', u'the', u'park'),
        (u'the', u'dog', u'runs'), u'entailment')
    assert [nli_label_index(p.label) for p in pairs[:4]] == [0, 1, 2, 0]


def test_snli_official_layout():
    pairs = load_snli(fixture('snli_official.txt'))
    # 49 records, 7 of them without a consensus label.
    assert len(pairs) == 42
    assert pairs[0].premise == (u'A', u'person', u'on', u'a', u'horse')
    assert pairs[1].label == u'contradiction'
    assert pairs[1].hypothesis == (u'A', u'cat', u'sleeps')
    assert pairs[2] == SentencePair(
        (u'A', u'dog', u'reads', u'near', u'the', u'road'),
        (u'A', u'dog', u'reads'), u'entailment')
    assert pairs[-1] == SentencePair(
        (u'A', u'man', u'waits', u'near', u'the', u'road'),
        (u'A', u'man', u'waits'), u'entailment')
    labels = [p.label for p in pairs]
    assert [labels.count(l) for l in (u'entailment', u'neutral',
                                      u'contradiction')] == [14, 14, 14]


def test_snli_field_order(tmpdir):
    path = write(tmpdir, 'p.txt', u"a b\tc\tneutral\n")
    pairs = load_snli(path, fields=('premise', 'hypothesis', 'label'))
    assert pairs == [SentencePair((u'a', u'b'), (u'c',), u'neutral')]
    with pytest.raises(ValueError):
        load_snli(path, fields=('premise', 'label'))


def test_snli_errors_carry_line_numbers(tmpdir):
    path = write(tmpdir, 'bad.txt', u"neutral\ta\tb\n\nmaybe\ta\tb\n")
    with pytest.raises(DataFormatError) as exc:
        load_snli(path)
    assert exc.value.lineno == 3
    assert str(exc.value).startswith(path + ":3:")
    path = write(tmpdir, 'short.txt', u"neutral\ta b\n")
    with pytest.raises(DataFormatError):
        load_snli(path)


def test_snli_write_and_read(tmpdir):
    pairs = load_snli(fixture('snli_sample.txt'))
    path = str(tmpdir.join('copy.txt'))
    write_snli(pairs, path)
    assert load_snli(path) == pairs


WIKIQA_SIZES = [2, 1, 2, 5, 4, 6, 3, 5, 7, 4, 3, 7]
WIKIQA_RELEVANT = [1, 0, 1, 2, 0, 1, 2, 0, 1, 3, 0, 1]


def test_wikiqa_official_layout():
    pairs = load_wikiqa(fixture('wikiqa_official.tsv'))
    assert len(pairs) == 49
    groups = group_by_question(pairs)
    assert [len(g) for g in groups] == WIKIQA_SIZES
    assert [g[0].qid for g in groups] == [u'Q%d' % i for i in range(1, 13)]
    assert [sum(p.relevance for p in g) for g in groups] == WIKIQA_RELEVANT
    assert pairs[1].relevance == 1
    assert [p.relevance for p in groups[9]] == [1, 1, 0, 1]
    assert groups[3][2].answer[:4] == (u'A', u'barometer', u'is', u'an')
    kept = load_wikiqa(fixture('wikiqa_official.tsv'),
                       exclude_all_negative=True)
    assert len(kept) == 36
    assert sorted(set(p.qid for p in kept)) == sorted(
        u'Q%d' % i for i in range(1, 13) if i not in (2, 5, 8, 11))


def test_wikiqa_plain_layout(tmpdir):
    pairs = load_wikiqa(fixture('wikiqa_official.tsv'))
    path = str(tmpdir.join('qa.txt'))
    write_wikiqa(pairs, path)
    plain = load_wikiqa(path)
    assert [p.qid for p in plain] == [u'q%d' % i for i, n in
                                      enumerate(WIKIQA_SIZES)
                                      for _ in range(n)]
    assert [p.answer for p in plain] == [p.answer for p in pairs]
    assert [p.relevance for p in plain] == [p.relevance for p in pairs]


def test_wikiqa_bad_relevance(tmpdir):
    path = write(tmpdir, 'qa.txt', u"what ?\tthis .\t2\n")
    with pytest.raises(DataFormatError) as exc:
        load_wikiqa(path)
    assert exc.value.lineno == 1


def test_sst_tree_example():
    s = parse_sst_tree(u"(3 (2 good) (2 movie))")
    assert s.tokens == (u'good', u'movie')
    assert s.label == 3
    assert s.spans == ((0, 1, 2), (1, 2, 2), (0, 2, 3))


def test_sst_fine_and_binary():
    fine = load_sst(fixture('sst_sample.txt'))
    assert len(fine) == 50
    expected = [3, 1, 2, 4] + [i % 5 for i in range(4, 50)]
    assert [s.label for s in fine] == expected
    assert fine[5].tokens == (u'the', u'awful', u'story')
    assert fine[5].spans == ((0, 1, 2), (1, 2, 0), (2, 3, 2), (1, 3, 0),
                             (0, 3, 0))
    binary = load_sst(fixture('sst_sample.txt'), mode='binary')
    # Ten sentences have a neutral root.
    assert len(binary) == 40
    assert [s.label for s in binary[:3]] == [1, 0, 1]
    assert binary[0].spans == ((0, 2, 1),)
    assert binary[3].tokens == (u'great', u'script')
    assert binary[3].spans == ((0, 1, 1), (0, 2, 1))
    assert all(l in (0, 1) for s in binary for _, _, l in s.spans)
    with pytest.raises(ValueError):
        load_sst(fixture('sst_sample.txt'), mode='ternary')


def test_sst_phrase_nodes():
    fine = load_sst(fixture('sst_sample.txt'))
    assert len(expand_phrases(fine)) == 200
    assert len(expand_phrases(load_sst(fixture('sst_sample.txt'),
                                       mode='binary'))) == 100
    phrases = expand_phrases(fine[5:6])
    assert [(p.tokens, p.label) for p in phrases] == [
        ((u'the',), 2), ((u'awful',), 0), ((u'story',), 2),
        ((u'awful', u'story'), 0), ((u'the', u'awful', u'story'), 0)]


@pytest.mark.parametrize("label,expected", [(0, 0), (1, 0), (2, None),
                                            (3, 1), (4, 1)])
def test_binarize_label(label, expected):
    assert binarize_label(label) == expected


def test_sst_errors(tmpdir):
    path = write(tmpdir, 'bad.txt', u"(3 (2 good) (2 movie))\n(7 (2 a))\n")
    with pytest.raises(DataFormatError) as exc:
        load_sst(path)
    assert exc.value.lineno == 2
    path = write(tmpdir, 'worse.txt', u"(3 (2 good)\n")
    with pytest.raises(DataFormatError):
        load_sst(path)


def test_phrase_expansion():
    s = parse_sst_tree(u"(1 (2 the) (1 (1 dull) (2 plot)))")
    phrases = expand_phrases([s])
    assert [(p.tokens, p.label) for p in phrases] == [
        ((u'the',), 2), ((u'dull',), 1), ((u'plot',), 2),
        ((u'dull', u'plot'), 1), ((u'the', u'dull', u'plot'), 1)]


def test_sst_write_and_read(tmpdir):
    fine = load_sst(fixture('sst_sample.txt'))
    assert format_sst_tree(fine[0]) == u"(3 (2 good) (2 movie))"
    path = str(tmpdir.join('copy.txt'))
    write_sst(fine, path)
    assert load_sst(path) == fine
