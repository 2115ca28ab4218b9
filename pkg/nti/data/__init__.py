"""Datasets, vocabularies and fixed embeddings."""

from nti.data.records import NLI_LABELS, SentencePair, QAPair, \
    LabeledSentence, nli_label_index
from nti.data.vocab import Vocabulary
from nti.data.embeddings import EmbeddingTable, load_embeddings, \
    random_embeddings
from nti.data.readers import load_snli, load_wikiqa, load_sst, \
    group_by_question, expand_phrases, write_snli, write_wikiqa, write_sst, \
    format_sst_tree
from nti.data.synthetic import synthetic_task, synthetic_pairs

__all__ = ['NLI_LABELS', 'SentencePair', 'QAPair', 'LabeledSentence',
           'nli_label_index', 'Vocabulary', 'EmbeddingTable',
           'load_embeddings', 'random_embeddings', 'load_snli', 'load_wikiqa',
           'load_sst', 'group_by_question', 'expand_phrases', 'write_snli',
           'write_wikiqa', 'write_sst', 'format_sst_tree', 'synthetic_task',
           'synthetic_pairs']
