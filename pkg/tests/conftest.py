import numpy as np
import pytest

from smfdsn import filterbank, thresholding
from smfdsn.wavelets import WaveletFamily

FAMILIES = [WaveletFamily.morlet(), WaveletFamily.gammatone(), WaveletFamily.paul()]
FAMILY_IDS = [f.kind for f in FAMILIES]


@pytest.fixture(scope="session")
def small_banks():
    return [filterbank.build(f, 64, 3, 2) for f in FAMILIES]


@pytest.fixture(scope="session")
def small_oracles(small_banks):
    return [thresholding.DenseOracle.from_bank(fb) for fb in small_banks]


@pytest.fixture(scope="session")
def small_kernels(small_banks):
    return [thresholding.gram_kernels(fb, trunc_eta=0.0) for fb in small_banks]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion at the end of the run
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or report.when != "call" and report.outcome != "failed":
        return
    name = report.nodeid.split("::")[-1]
    prev = _acceptance.get(name)
    if prev is None or report.outcome == "failed":
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[1][1:]) if n.split("_")[1][1:].isdigit() else 99):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
