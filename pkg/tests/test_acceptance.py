"""End-to-end acceptance suite: one test per criterion, one printed pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines; the same
checks back ``boolsd reproduce-paper``.
"""

import pytest

from boolsd import acceptance


@pytest.fixture(scope="module")
def dichotomy_rows():
    # shared by criteria 3 and 7 so each catalog law is analysed once
    return acceptance._dichotomy_rows()


def report(result):
    print()
    print(result.line())
    for d in result.details:
        print("    " + d)
    assert result.passed, "\n".join(result.details)


def test_criterion_1_normal_threshold():
    report(acceptance.check_normal_threshold())


def test_criterion_2_shifted_normal_scan():
    report(acceptance.check_normal_scan())


def test_criterion_3_parametric_dichotomies(dichotomy_rows):
    report(acceptance.check_dichotomies(dichotomy_rows))


def test_criterion_4_closed_forms_against_recovery():
    report(acceptance.check_oracles())


def test_criterion_5_algebraic_identities():
    report(acceptance.check_identities())


def test_criterion_6_bijection_suite():
    report(acceptance.check_bijection())


def test_criterion_7_regularity_census(dichotomy_rows):
    report(acceptance.check_census(dichotomy_rows))


def test_criterion_8_normal_internals():
    report(acceptance.check_normal_internals())
