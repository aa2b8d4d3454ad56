from __future__ import annotations

import os
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skewroos.code import generator_from_set  # noqa: E402
from skewroos.fields import conway_polynomial  # noqa: E402
from skewroos.tower import build_tower  # noqa: E402

REPO = Path(__file__).resolve().parent.parent
SPECS = REPO / "specs"

# GF(2^6) and GF(2^12) moduli used by the [12, 6] worked example
MOD_F64 = (1, 1, 0, 1, 1, 0, 1)
MOD_E4096 = (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1)
N12_SET = (2, 3, 4, 8, 9, 10)
N14_SET = (2, 3, 4, 5, 6, 9, 10, 11, 12, 13)


def seed() -> int:
    return int(os.environ.get("SKEWROOS_SEED", "20241019"))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(seed())


def n12_tower():
    return build_tower(2, 6, 2, MOD_F64, MOD_E4096, 65)


def n12_alpha_tower():
    tw = n12_tower()
    return tw.with_alpha(tw.E.exp(5))


def n14_tower():
    return build_tower(2, 7, 2, conway_polynomial(2, 7), conway_polynomial(2, 14))


@pytest.fixture(scope="session")
def tower12():
    return n12_alpha_tower()


@pytest.fixture(scope="session")
def code12():
    return generator_from_set(n12_alpha_tower(), None, N12_SET, auto_close=False)


@pytest.fixture(scope="session")
def code14():
    tw = n14_tower()
    return generator_from_set(tw, tw.E.exp(7), N14_SET, auto_close=False)


# ------------------------------------------------------- acceptance report

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda c: int(c[1:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
