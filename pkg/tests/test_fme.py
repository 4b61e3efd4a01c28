"""Exact linear equalities and Fourier-Motzkin feasibility."""

from fractions import Fraction

from tropmat.fme import LinSys, fm_feasible

F = Fraction


def test_linsys_basic():
    sys = LinSys()
    assert sys.add_equation({"a": F(1), "b": F(1)}, F(3))
    assert sys.add_equation({"a": F(1), "b": F(-1)}, F(1))
    values = sys.evaluate({})
    assert values["a"] == 2 and values["b"] == 1


def test_linsys_inconsistency():
    sys = LinSys()
    assert sys.add_equation({"a": F(1)}, F(1))
    assert not sys.add_equation({"a": F(2)}, F(3))


def test_linsys_redundant():
    sys = LinSys()
    assert sys.add_equation({"a": F(1), "b": F(1)}, F(2))
    assert sys.add_equation({"a": F(2), "b": F(2)}, F(4))  # same hyperplane
    reduced, c = sys.reduce({"a": F(1), "b": F(1)}, F(0))
    assert not reduced and c == 2


def test_linsys_copy_isolated():
    sys = LinSys()
    sys.add_equation({"a": F(1)}, F(1))
    clone = sys.copy()
    clone.add_equation({"b": F(1)}, F(5))
    assert "b" not in sys.pivots


def test_fm_feasible_box():
    # 0 <= x <= 1, 0 <= y <= 1, x + y >= 3/2
    constraints = [
        ({"x": F(1)}, F(0)),
        ({"x": F(-1)}, F(-1)),
        ({"y": F(1)}, F(0)),
        ({"y": F(-1)}, F(-1)),
        ({"x": F(1), "y": F(1)}, F(3, 2)),
    ]
    witness = fm_feasible(constraints)
    assert witness is not None
    assert 0 <= witness["x"] <= 1 and 0 <= witness["y"] <= 1
    assert witness["x"] + witness["y"] >= F(3, 2)


def test_fm_infeasible():
    constraints = [
        ({"x": F(1)}, F(1)),
        ({"x": F(-1)}, F(0)),  # x <= 0 but x >= 1
    ]
    assert fm_feasible(constraints) is None


def test_fm_trivial_contradiction():
    assert fm_feasible([({}, F(1))]) is None
    assert fm_feasible([({}, F(-1))]) == {}


def test_fm_witness_satisfies_everything():
    import random

    rng = random.Random(6)
    for _ in range(50):
        nvars = rng.randrange(1, 5)
        names = [f"v{i}" for i in range(nvars)]
        constraints = []
        for _ in range(rng.randrange(1, 8)):
            expr = {
                v: F(rng.randrange(-3, 4)) for v in names if rng.random() < 0.7
            }
            constraints.append((expr, F(rng.randrange(-5, 6))))
        witness = fm_feasible(constraints)
        if witness is None:
            continue
        for expr, b in constraints:
            total = sum(c * witness.get(v, F(0)) for v, c in expr.items())
            assert total >= b
