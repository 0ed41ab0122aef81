import numpy as np
import pytest

from rolecomm import DirectedGraph

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when not in ("setup", "call"):
        return
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "setup" and not report.skipped:
        return
    num, text = crit
    if report.skipped:
        reason = report.longrepr[2] if isinstance(report.longrepr, tuple) else str(report.longrepr)
        _CRITERIA[num] = ("SKIP", text, reason)
    else:
        _CRITERIA[num] = ("PASS" if report.passed else "FAIL", text, "")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, text, reason = _CRITERIA[num]
        line = f"[{status}] criterion {num:>2}: {text}"
        if reason:
            line += f"  ({reason})"
        terminalreporter.write_line(line)


def random_digraph(rng, n, density, self_loops=False):
    a = rng.random((n, n)) < density
    if not self_loops:
        np.fill_diagonal(a, False)
    edges = np.argwhere(a)
    return DirectedGraph.from_edges(n, edges)


def random_symmetric(rng, n):
    z = rng.random((n, n))
    z = np.triu(z, 1)
    return z + z.T


def random_connected_weights(rng, n, p=0.5, low=0.1, high=1.0):
    """Symmetric positive weights on a random connected graph (spanning path + extras)."""
    while True:
        mask = np.triu(rng.random((n, n)) < p, 1)
        perm = rng.permutation(n)
        for a, b in zip(perm[:-1], perm[1:]):
            mask[min(a, b), max(a, b)] = True
        w = np.where(mask, rng.uniform(low, high, (n, n)), 0.0)
        w = w + w.T
        if (w.sum(axis=1) > 0).all():
            return w


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
