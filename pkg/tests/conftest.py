from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

from gowers_lab import kernels


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    lines = request.config.acceptance_lines

    @contextmanager
    def run(num: int, title: str, budget_s: float):
        info: dict = {}
        t0 = time.perf_counter()
        status = "FAIL"
        try:
            yield info
            status = "PASS"
        finally:
            dt = time.perf_counter() - t0
            detail = "; ".join(f"{k}={v}" for k, v in info.items())
            line = f"criterion {num:2d} {status}  {title}  [{dt:.1f}s, budget {budget_s:g}s]"
            if detail:
                line += f"  {detail}"
            lines[num] = line
            print(line)
    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(lines):
            terminalreporter.write_line(lines[num])
