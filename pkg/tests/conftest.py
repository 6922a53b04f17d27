import itertools

import pytest

from effectalg import model
from effectalg.model import Element, Fragment, IndexSet

# Acceptance lines collected by tests/test_acceptance.py, echoed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def search_witnesses(x: Element, y: Element, pool) -> list[Element]:
    """Brute-force oracle for the order: every w in ``pool`` with x ⊕ w = y."""
    return [w for w in pool if model.oplus(x, w) == y]


def enlarged(fragment: Fragment) -> list[Element]:
    """Search pool big enough to hold any witness between fragment elements."""
    return Fragment(2 * fragment.n_max, fragment.k_max).carrier()


def oracle_leq(x, y, pool) -> bool:
    return bool(search_witnesses(x, y, pool))


def naive_violations(inst) -> set[tuple[str, tuple[str, ...]]]:
    """Independent slow re-scan of EA1-EA4 and SEA1-SEA5 (witness tuples only)."""
    C = list(inst.carrier)
    op, sp, r = inst.oplus, inst.circ, inst.render
    one, zero = inst.one, inst.zero
    found = set()

    def add(axiom, *xs):
        found.add((axiom, tuple(r(x) for x in xs)))

    for x, y in itertools.product(C, C):
        if op(x, y) != op(y, x):
            add("EA1", x, y)
    for x, y, z in itertools.product(C, C, C):
        yz, xy = op(y, z), op(x, y)
        lhs = op(x, yz) if yz is not None else None
        rhs = op(xy, z) if xy is not None else None
        if lhs is not None and lhs != rhs:
            add("EA2", x, y, z)
        if rhs is not None and lhs != rhs:
            add("EA2", x, y, z)
    for x in C:
        if sum(1 for y in C if op(x, y) == one) != 1:
            add("EA3", x)
        if op(x, one) is not None and x != zero:
            add("EA4", x)
    if any(ax.startswith("EA") for ax, _ in found):
        return found
    comp = {x: next(y for y in C if op(x, y) == one) for x in C}
    for x, y, z in itertools.product(C, C, C):
        yz = op(y, z)
        if yz is not None:
            u, v = sp(x, y), sp(x, z)
            if op(u, v) is None or sp(x, yz) != op(u, v):
                add("SEA1", x, y, z)
    for x in C:
        if sp(one, x) != x:
            add("SEA2", x)
    for x, y in itertools.product(C, C):
        if sp(x, y) == zero and sp(x, y) != sp(y, x):
            add("SEA3", x, y)
        if sp(x, y) == sp(y, x):
            if sp(x, comp[y]) != sp(comp[y], x):
                add("SEA4", x, y)
            for z in C:
                if sp(x, sp(y, z)) != sp(sp(x, y), z):
                    add("SEA4", x, y, z)
    for w, x, y in itertools.product(C, C, C):
        if sp(w, x) == sp(x, w) and sp(w, y) == sp(y, w):
            xy = sp(x, y)
            bad = sp(w, xy) != sp(xy, w)
            s = op(x, y)
            if s is not None and sp(w, s) != sp(s, w):
                bad = True
            if bad:
                add("SEA5", w, x, y)
    return found


@pytest.fixture(scope="session")
def frag32():
    return Fragment(3, 2)


@pytest.fixture(scope="session")
def frag43():
    return Fragment(4, 3)


def S(*members):
    return IndexSet(members)
