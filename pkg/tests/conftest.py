import numpy as np
import pytest

from noncoh import qstate
from noncoh.nobasis import make_basis

ACCEPTANCE_LINES = []


def random_bases(rng, n, min_overlap=0.0):
    """Haar-random pairs of kets, skipping near-degenerate (and too-orthogonal) pairs."""
    out = []
    while len(out) < n:
        a, b = qstate.haar_pure_qubit(rng, 2)
        ov = abs(np.vdot(a, b))
        if ov > 1 - 1e-6 or ov < max(min_overlap, 1e-6):
            continue
        out.append(make_basis(a, b))
    return out


@pytest.fixture
def rng():
    return qstate.make_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
