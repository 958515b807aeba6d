"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import time
from contextlib import contextmanager

LINES: list = []


@contextmanager
def criterion(number: int, title: str, budget: float):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < budget, f"runtime {elapsed:.1f}s over budget {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title} ({elapsed:.2f}s)"
        LINES.append(line)
        print(line)
