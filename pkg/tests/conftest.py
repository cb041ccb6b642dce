from functools import lru_cache

import pytest

from hewettalg.hewett import build_dprime, verify_embedding
from hewettalg.involution import InvolutedAlgebra

CONFIGS = [(3, 1, 1), (3, 1, 2), (5, 1, 1), (5, 1, 2), (7, 1, 1)]

# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@lru_cache(maxsize=None)
def dprime(p, m, alpha):
    return build_dprime(p, m, alpha)


@lru_cache(maxsize=None)
def involuted(p, m, alpha):
    return InvolutedAlgebra(dprime(p, m, alpha))


@lru_cache(maxsize=None)
def embedding(p, m, alpha):
    return verify_embedding(p, m, alpha)


@pytest.fixture(params=CONFIGS, ids=lambda c: "p{}m{}a{}".format(*c))
def config(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
