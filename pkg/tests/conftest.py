from __future__ import annotations

import functools
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from cascade_kit.cascade import compute_cascade  # noqa: E402
from cascade_kit.chevalley import build_chevalley  # noqa: E402
from cascade_kit.rootsys import build_root_system  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def system(name: str):
    """(root system, Chevalley table, cascade) for a type, built once per session."""
    rs = build_root_system(name)
    return rs, build_chevalley(rs), compute_cascade(rs)


@pytest.fixture
def sys_of():
    return system


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
