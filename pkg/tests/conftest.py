from fractions import Fraction

import pytest

from toricslope.diagram import LatticePolygon, NewtonDiagram, build_diagram

P2_TRIANGLE = ((0, 0), (1, 0), (0, 1))
HIRZEBRUCH = ((0, 0), (2, 0), (1, 1), (0, 1))

# weight order used throughout: (q00, q10, q20, q01, q11)
HIRZ_POINTS = ((0, 0), (1, 0), (2, 0), (0, 1), (1, 1))
HIRZ_CASE1_SAMPLES = (
    (Fraction(1), Fraction(1, 4), Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(2, 5), Fraction(0), Fraction(4, 5), Fraction(1, 10)),
    (Fraction(2), Fraction(3, 4), Fraction(0), Fraction(7, 4), Fraction(1, 4)),
)
HIRZ_SINGLE_FACE = (Fraction(1), Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(0))


def p2_diagram(q) -> NewtonDiagram:
    """Diagram {(0,0,1), (1,0,0), (0,1,q)}."""
    return NewtonDiagram.from_triples([(0, 0, 1), (1, 0, 0), (0, 1, Fraction(q))])


def hirz_diagram(weights) -> NewtonDiagram:
    return build_diagram(LatticePolygon(HIRZEBRUCH), dict(zip(HIRZ_POINTS, weights)))


def hirz_case1_mu(weights) -> Fraction:
    q00, q10, _, q01, q11 = weights
    return (-2 * (q00 + q10) + 18 * (q01 + q11)) / 45


@pytest.fixture
def p2_half():
    return p2_diagram(Fraction(1, 2))


@pytest.fixture
def hirz_single():
    return hirz_diagram(HIRZ_SINGLE_FACE)


@pytest.fixture
def hirz_case1():
    return hirz_diagram(HIRZ_CASE1_SAMPLES[0])


# (number, title, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:2d}: {title} | {detail}")
