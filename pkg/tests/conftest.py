from fractions import Fraction as F

import pytest

from shadowable import gallery


def small_corpus():
    """Seeded random systems plus the small gallery members (all n <= 9)."""
    systems = []
    for seed in range(12):
        n = 2 + seed % 7
        kind = "euclidean_square" if seed % 2 == 0 else "random_tree"
        systems.append(gallery.random_system(n, seed, kind))
    systems += [
        gallery.circle_rotation(6, 0),
        gallery.circle_rotation(6, 1),
        gallery.circle_rotation(5, 2),
        gallery.circle_rotation(8, 3),
        gallery.odometer(2),
        gallery.odometer(3),
        gallery.cat_map(2),
        gallery.cat_map(3),
        gallery.identity_on(gallery.cantor_plus_interval(1, 3), "cantor(1,3)"),
    ]
    return systems


def isometric_gallery():
    return [
        gallery.circle_rotation(6, 0),
        gallery.circle_rotation(6, 1),
        gallery.circle_rotation(7, 3),
        gallery.circle_rotation(8, 2),
        gallery.odometer(2),
        gallery.odometer(3),
        gallery.identity_on(gallery.cantor_plus_interval(1, 3), "cantor(1,3)"),
    ]


CORPUS = small_corpus()


@pytest.fixture(params=CORPUS, ids=lambda s: s.name)
def corpus_system(request):
    return request.param


@pytest.fixture
def circle4():
    return gallery.circle_rotation(4, 0)


@pytest.fixture
def odo2():
    return gallery.odometer(2)


def q(text):
    return F(text)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
