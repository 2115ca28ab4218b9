import io
import logging

from nti.tools.logs import config_logger, get_logger


def test_config_logger_stream_and_file(tmpdir):
    path = str(tmpdir.join('run.log'))
    stream = io.StringIO()
    log = config_logger('nti.test_logs', '%(levelname)s %(message)s',
                        stream=stream, filename=path,
                        filelevel=logging.WARNING)
    log.info(u"epoch %d", 1)
    log.warning(u"diverged")
    for hdlr in log.handlers:
        hdlr.flush()
    assert stream.getvalue() == u"INFO epoch 1\nWARNING diverged\n"
    with io.open(path, encoding='utf-8') as fp:
        assert fp.read() == u"WARNING diverged\n"


def test_reconfiguring_replaces_handlers():
    for _ in range(3):
        log = config_logger('nti.test_logs_again', stream=io.StringIO())
    assert len(log.handlers) == 1
    log = config_logger('nti.test_logs_again', stream=None)
    assert len(log.handlers) == 1
    assert isinstance(log.handlers[0], logging.NullHandler)


def test_get_logger_is_silent_by_default():
    log = get_logger('nti.test_logs_library')
    assert any(isinstance(h, logging.NullHandler) for h in log.handlers)
    assert get_logger('nti.test_logs_library') is log
    assert len(log.handlers) == 1
