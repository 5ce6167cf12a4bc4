import pytest

from qstnet import _kernels_py

try:
    from qstnet import _kernels as _kernels_cy
except ImportError:  # extension not built
    _kernels_cy = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels_cy is not None:
    BACKENDS.append(pytest.param(_kernels_cy, id="cython"))

_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
