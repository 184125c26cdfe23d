"""Acceptance gate: one test per criterion, one printed line each.

Criteria 6 and 11 contain clauses that cannot hold together with the
half-integral convention everything else requires (see the clause details
and the README); those clauses are strict xfails, everything else must pass.
"""

import subprocess
import sys

import pytest

from siegel3 import acceptance

SEED = 42


@pytest.fixture(scope="module")
def results():
    out = {}
    for fn in acceptance.ALL_CRITERIA:
        r = fn(SEED)
        out[r.cid] = r
        print("criterion %2d [%s] (%.1fs): %s" % (
            r.cid, "PASS" if r.passed else "FAIL", r.runtime, r.title))
    return out


def _assert_criterion(results, cid, skip_known_defects=True):
    r = results[cid]
    failures = []
    for c in r.clauses:
        known = (cid, c["clause"]) in acceptance.KNOWN_DEFECT_CLAUSES
        if skip_known_defects and known:
            continue
        if not c["ok"]:
            failures.append("%s: %s" % (c["clause"], c["detail"]))
    assert not failures, "\n".join(failures)


@pytest.mark.parametrize("cid", [1, 2, 3, 4, 5, 7, 8, 9, 10, 12, 13])
def test_criterion_clean(results, cid):
    _assert_criterion(results, cid)


def test_criterion_6_sound_clauses(results):
    _assert_criterion(results, 6)


@pytest.mark.xfail(
    strict=True,
    reason="the half-integral cone has classes of det 1/2 and 3/4, so the "
    "class list at det <= 1 cannot be {identity}; the stated expectation "
    "only holds for integer off-diagonals, which contradicts criterion 3",
)
def test_criterion_6_class_list_as_stated(results):
    clause = [c for c in results[6].clauses
              if (6, c["clause"]) in acceptance.KNOWN_DEFECT_CLAUSES]
    assert all(c["ok"] for c in clause), clause[0]["detail"]


def test_criterion_11_sound_clauses(results):
    _assert_criterion(results, 11)


@pytest.mark.xfail(
    strict=True,
    reason="same root cause as criterion 6: det <= 1 spans three classes, "
    "so the single-class identities cannot hold as stated",
)
def test_criterion_11_single_class_as_stated(results):
    clauses = [c for c in results[11].clauses
               if (11, c["clause"]) in acceptance.KNOWN_DEFECT_CLAUSES]
    assert all(c["ok"] for c in clauses), clauses[0]["detail"]


def _selftest_bytes(threads):
    proc = subprocess.run(
        [sys.executable, "-m", "siegel3.cli", "selftest", "--seed", str(SEED),
         "--threads", str(threads)],
        capture_output=True, timeout=1200,
    )
    # exit 2 is expected: the two known-defect clauses report as failures
    assert proc.returncode in (0, 2), proc.stderr.decode()
    return proc.stdout


def test_criterion_14_determinism_across_thread_counts():
    out1 = _selftest_bytes(1)
    out8 = _selftest_bytes(8)
    assert out1 == out8
    assert b'"known_defect_clauses"' in out1
