import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from multiquandle.constructions import (  # noqa: E402
    alexander_family,
    automorphism_multiquandle,
    conjugation_multirack,
    conjugation_power_multiquandle,
    coset_multiquandle,
    dihedral_quandle,
    trivial_quandle,
)
from multiquandle.groups import standard_group, subgroup_generated, transposition  # noqa: E402
from multiquandle.multirack import multirack_from_tables  # noqa: E402

ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def S3():
    return standard_group("symmetric", 3)


@pytest.fixture(scope="session")
def t12(S3):
    return transposition(3, 0, 1)


@pytest.fixture(scope="session")
def H12(S3, t12):
    return subgroup_generated(S3, [t12])


@pytest.fixture(scope="session")
def R3():
    return dihedral_quandle(3)


@pytest.fixture(scope="session")
def R5():
    return dihedral_quandle(5)


def flip_rack():
    return multirack_from_tables(2, ["f"], [[[1, 1], [0, 0]]])


def small_fixtures():
    """Structures with at most two operations used across the morphism tests."""
    S3 = standard_group("symmetric", 3)
    H = subgroup_generated(S3, [transposition(3, 0, 1)])
    return {
        "T1": trivial_quandle(1),
        "T2": trivial_quandle(2),
        "T3": trivial_quandle(3),
        "flip": flip_rack(),
        "R3": dihedral_quandle(3),
        "R4": dihedral_quandle(4),
        "R5": dihedral_quandle(5),
        "A5_2": automorphism_multiquandle(alexander_family(5, [2])),
        "A5_23": automorphism_multiquandle(alexander_family(5, [2, 3])),
        "Q_S3": coset_multiquandle(S3, H),
        "conj_S3": conjugation_power_multiquandle(S3, [1]),
        "crack_Z2": conjugation_multirack(standard_group("cyclic", 2)),
    }


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        status, text = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {text}")
