"""Acceptance gate: each primary criterion at tolerance zero, within its time budget."""
from __future__ import annotations

import time

import pytest

from symqcs.suites import BUDGETS, TITLES, run_suite

RESULTS: dict[int, str] = {}


@pytest.mark.parametrize("n", sorted(BUDGETS))
def test_criterion(n):
    t0 = time.perf_counter()
    rep = run_suite(n, seed=0)
    elapsed = time.perf_counter() - t0
    within = elapsed <= BUDGETS[n]
    verdict = "PASS" if rep["ok"] and within else "FAIL"
    RESULTS[n] = f"criterion {n}: {verdict} ({TITLES[n]}; {elapsed:.1f}s of {BUDGETS[n]}s)"
    print("\n" + RESULTS[n])
    failed = [c["check"] for c in rep["checks"] if c["status"] != "verified"]
    assert rep["ok"], f"violated checks: {failed}"
    assert within, f"took {elapsed:.1f}s, budget {BUDGETS[n]}s"
