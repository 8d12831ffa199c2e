import pytest
import sympy

from rees_uniform.uniform import reduction_data
from rees_uniform.verifier import default_grid

GRID = default_grid()


def to_sympy(p, syms):
    out = sympy.Integer(0)
    for m, c in p.terms:
        out += sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(syms, m)])
    return sympy.expand(out)


def sympy_symbols(ring):
    return sympy.symbols(" ".join(ring.names))


def sympy_gen_order(ring, syms):
    """Symbols listed from the largest variable down, as sympy's lex expects."""
    return [syms[i] for i in ring.order.precedence]


@pytest.fixture
def p373():
    return reduction_data(3, 7, 3)


@pytest.fixture
def p252():
    return reduction_data(2, 5, 2)


@pytest.fixture
def p492():
    return reduction_data(4, 9, 2)


# Acceptance criteria record their verdicts here; printed at the end of the run.
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
