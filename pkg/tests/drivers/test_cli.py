# -*- coding: utf-8 -*-
import csv
import io
import os

import pytest

from nti.drivers.nti_cli import main, RunConfig, OUTPUT_DIR_ENV, \
    CHECKPOINT_FILE, METRICS_FILE, FROZEN_CONFIG_FILE
from nti.model.checkpoint import load_checkpoint
from nti.tools.config import read_config
from nti.tools.exceptions import ConfigError

this_path = os.path.dirname(os.path.realpath(__file__))
SNLI = os.path.join(this_path, os.pardir, 'data', 'fixtures',
                    'snli_sample.txt')

SMALL = ['--k', '4', '--mlp-hidden', '6', '--epochs', '2', '--batch-size',
         '4', '--n-examples', '16', '--n-dev', '8', '--max-len', '4']


def train(out, task='synthetic-parity', *extra):
    argv = ['-q', 'train', '--task', task, '--output-dir', out] + SMALL + \
        list(extra)
    assert main(argv) == 0
    return os.path.join(out, CHECKPOINT_FILE)


@pytest.fixture(scope='module')
def parity_run(tmpdir_factory):
    out = str(tmpdir_factory.mktemp('parity'))
    return train(out)


@pytest.fixture(scope='module')
def pairs_run(tmpdir_factory):
    out = str(tmpdir_factory.mktemp('pairs'))
    return train(out, 'synthetic-pairs', '--variant', 'nti-slstm-nbn-global')


def test_train_writes_run_files(parity_run):
    out = os.path.dirname(parity_run)
    frozen = read_config(os.path.join(out, FROZEN_CONFIG_FILE))
    assert frozen['task'] == 'synthetic-parity'
    assert frozen['variant'] == 'nti-slstm'
    assert frozen['k'] == 4 and frozen['embedding_dim'] == 4
    meta, _ = load_checkpoint(parity_run)
    assert meta['run']['epochs'] == 2
    assert 0 <= meta['epoch'] <= 2
    with io.open(os.path.join(out, METRICS_FILE), encoding='utf-8') as fp:
        epochs = set(line.split(u'\t')[0] for line in fp)
    assert epochs == set([u'0', u'1', u'2'])


def test_training_is_reproducible(tmpdir):
    paths = [train(str(tmpdir.mkdir(name))) for name in ('a', 'b')]
    data = []
    for path in paths:
        with io.open(path, 'rb') as fp:
            data.append(fp.read())
    assert data[0] == data[1]


def test_output_dir_from_environment(tmpdir, monkeypatch):
    out = tmpdir.mkdir('env')
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(out))
    argv = ['-q', 'train', '--task', 'synthetic-length-bucket'] + SMALL
    assert main(argv) == 0
    assert out.join(CHECKPOINT_FILE).check()


def test_eval(parity_run, capsys):
    assert main(['-q', 'eval', '--checkpoint', parity_run]) == 0
    split, metric, value = capsys.readouterr().out.strip().split('\t')
    assert (split, metric) == ('dev', 'accuracy')
    assert 0.0 <= float(value) <= 1.0


def test_pad_sweep(parity_run, capsys):
    assert main(['-q', 'pad-sweep', '--checkpoint', parity_run,
                 '--split', 'train']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'padding\tsize\taccuracy'
    assert lines[-1].startswith('spread\t16\t')
    pads = [int(l.split('\t')[0]) for l in lines[1:-1]]
    assert pads == sorted(pads) and set(pads) <= set([0, 1])


def test_neighbors(parity_run, tmpdir, capsys):
    corpus = tmpdir.join('corpus.txt')
    corpus.write(u"x y\nz z z\n\nx\ny x z x\n")
    assert main(['-q', 'neighbors', '--checkpoint', parity_run, '--query',
                 'x y', '--corpus', str(corpus), '--top', '3']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    rank, sim, text = lines[0].split('\t')
    assert rank == '1' and text == 'x y'
    assert abs(float(sim) - 1.0) < 1e-6


def test_attend(pairs_run, tmpdir):
    path = str(tmpdir.join('map.csv'))
    assert main(['-q', 'attend', '--checkpoint', pairs_run, '--premise',
                 'a b c', '--hypothesis', 'a b', '--output', path]) == 0
    with io.open(path, encoding='utf-8', newline='') as fp:
        rows = list(csv.reader(fp))
    assert len(rows[0]) == 8 and rows[0][0] == u''
    assert len(rows) == 4
    assert [r[0] for r in rows[1:]] == [u'a', u'b', u'a b']
    for row in rows[1:]:
        assert abs(sum(float(w) for w in row[1:]) - 1.0) < 1e-9


def test_attend_needs_global_pair_model(parity_run, capsys):
    assert main(['-q', 'attend', '--checkpoint', parity_run, '--premise',
                 'x', '--hypothesis', 'y', '--output', 'unused.csv']) == 1
    assert capsys.readouterr().err.startswith("nti: error: ConfigError: ")


def test_file_task_with_config(tmpdir, capsys):
    cfg = tmpdir.join('run.cfg')
    cfg.write(u"[run]\ntask = snli\ndata = %s\nk = 4\nmlp-hidden = 6\n"
              u"epochs = 1\nbatch_size = 25\n" % SNLI)
    out = str(tmpdir.mkdir('out'))
    assert main(['-q', 'train', '--config', str(cfg), '--output-dir',
                 out]) == 0
    ckpt = os.path.join(out, CHECKPOINT_FILE)
    assert main(['-q', 'eval', '--checkpoint', ckpt, '--split', 'train']) \
        == 0
    assert capsys.readouterr().out.startswith('train\taccuracy\t')
    assert main(['-q', 'eval', '--checkpoint', ckpt]) == 1
    assert 'ConfigError' in capsys.readouterr().err


def test_usage_errors(tmpdir, capsys):
    with pytest.raises(SystemExit) as exc:
        main(['train', '--task', 'snli'])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(['train', '--task', 'imagenet'])
    assert exc.value.code == 2
    capsys.readouterr()
    missing = str(tmpdir.join('absent.ckpt'))
    assert main(['-q', 'eval', '--checkpoint', missing]) == 1
    assert capsys.readouterr().err.startswith(
        "nti: error: CheckpointError: ")
    assert main(['-q', 'train', '--task', 'snli', '--data', missing]) == 1
    assert capsys.readouterr().err.startswith("nti: error: ")


def test_run_config_layers(tmpdir):
    cfg = tmpdir.join('run.cfg')
    cfg.write(u"[run]\ntask = snli\nk = 8\nepochs = 3\n")
    flags = {'data': SNLI, 'k': 16}
    run = RunConfig.resolve(flags, str(cfg))
    assert run.k == 16 and run.epochs == 3
    assert run.learning_rate == 1e-3 and run.variant == 'nti-slstm'
    assert run.embedding_dim == 16
    cfg.write(u"[run]\ntask = snli\nwidth = 8\n")
    with pytest.raises(ConfigError):
        RunConfig.resolve(flags, str(cfg))
    with pytest.raises(ConfigError):
        RunConfig.resolve({'task': 'wikiqa', 'data': SNLI,
                           'variant': 'tree-match-global'})


def test_answer_selection_eval(tmpdir, capsys):
    wikiqa = os.path.join(this_path, os.pardir, 'data', 'fixtures',
                          'wikiqa_official.tsv')
    out = str(tmpdir.mkdir('qa'))
    assert main(['-q', 'train', '--task', 'wikiqa', '--data', wikiqa,
                 '--output-dir', out, '--k', '4', '--mlp-hidden', '4',
                 '--epochs', '1']) == 0
    ckpt = os.path.join(out, CHECKPOINT_FILE)
    assert load_checkpoint(ckpt)[0]['model']['nonleaf_mode'] == 'anf'
    assert main(['-q', 'eval', '--checkpoint', ckpt, '--split', 'train']) \
        == 0
    lines = [l.split('\t') for l in capsys.readouterr().out.splitlines()]
    assert [l[:2] for l in lines] == [['train', 'map'], ['train', 'mrr']]
    assert all(0.0 < float(l[2]) <= 1.0 for l in lines)
