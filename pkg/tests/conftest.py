import numpy as np
import pytest

from helpers import _ckernels
from qbohr import _backend, _pykernels

BACKENDS = ["python"] + (["cython"] if _ckernels is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available kernel implementation."""
    mod = _ckernels if request.param == "cython" else _pykernels
    for name in ("star_convolve", "horner", "real_inverse"):
        monkeypatch.setattr(_backend, name, getattr(mod, name))
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance lines recorded by ``test_acceptance``."""
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
