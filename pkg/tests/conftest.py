import contextlib

import pytest

_RESULTS = []


class _Recorder:
    @contextlib.contextmanager
    def __call__(self, number, text):
        try:
            yield
        except BaseException:
            _RESULTS.append(("FAIL", number, text))
            print(f"[FAIL] criterion {number}: {text}")
            raise
        _RESULTS.append(("PASS", number, text))
        print(f"[PASS] criterion {number}: {text}")


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for status, number, text in sorted(_RESULTS, key=lambda r: r[1]):
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")
