"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion.  Every comparison is exact rational equality.
"""
import pytest

from liedual.verify import SUITES

# criterion -> (suite, time budget in seconds)
CRITERIA = [
    (1, "CYBE for x⊗x^n − x^n⊗x", "cybe", 1),
    (2, "two-dimensional subalgebra grid", "lemma", 2),
    (3, "Witt-family closed form equals pairing oracle", "witt-table", 30),
    (4, "XY-family closed form equals pairing oracle, A_ij − A_ji", "xy-table", 60),
    (5, "Jacobi and antisymmetry of the XY dual bracket", "jacobi", 60),
    (6, "dual cobracket against the bracket", "cobracket", 5),
    (7, "compatibility and co-Jacobi for both r families", "axioms", 30),
    (8, "restricted-dual membership and decomposition", "membership", 1),
    (9, "sign mutations are caught", "mutation", 60),
]


@pytest.mark.parametrize("number,title,suite,budget", CRITERIA,
                         ids=[f"criterion-{c[0]}-{c[2]}" for c in CRITERIA])
def test_criterion(number, title, suite, budget):
    res = SUITES[suite]()
    within = res.seconds < budget
    status = "PASS" if res.passed else "FAIL"
    print(f"\n[{status}] criterion {number}: {title}: {res.checks} checks, "
          f"{len(res.failures)} failures, {res.seconds:.2f}s (budget {budget}s"
          f"{'' if within else ', EXCEEDED'})")
    assert res.passed, res.failures[:5]
