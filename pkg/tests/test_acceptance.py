"""Acceptance criteria, one test each, at full size.

Each test prints a single PASS/FAIL line (also collected into the pytest
terminal summary).  Run directly with ``python tests/test_acceptance.py``
for the lines alone.
"""

import pytest

from clmatch import battery

CRITERIA = [
    (1, "catalytic contract sweep", battery.check_contract_sweep),
    (2, "compression path exercised", battery.check_compression_path),
    (3, "backend equivalence", battery.check_backend_equivalence),
    (4, "clique isolation", battery.check_clique_isolation),
    (5, "sym-dif augmenting path", battery.check_symdif),
    (6, "isolation equivalence", battery.check_isolation_equivalence),
    (7, "weight recovery", battery.check_weight_recovery),
    (8, "lossy dichotomy", battery.check_lossy_dichotomy),
    (9, "fallback coverage", battery.check_fallback),
    (10, "extension", battery.check_extension),
]


def _run(number, fn):
    chk = fn(1.0)
    return chk, f"criterion {number:2d} {chk.line()}"


@pytest.mark.parametrize("number, label, fn", CRITERIA, ids=[f"{n:02d}-{label.replace(' ', '-')}" for n, label, _ in CRITERIA])
def test_criterion(number, label, fn, acceptance_log):
    chk, line = _run(number, fn)
    print(line)
    acceptance_log.append(line)
    assert chk.passed, line


if __name__ == "__main__":
    failed = 0
    for number, _, fn in CRITERIA:
        chk, line = _run(number, fn)
        print(line, flush=True)
        failed += not chk.passed
    raise SystemExit(1 if failed else 0)
