"""Partial operators: slice reduction and separable oracles."""

import numpy as np
import pytest

from genfrac.funcspec import parse_expression
from genfrac.ops1d import OperatorRequest, aop, bop, kop
from genfrac.ops2d import PartialRequest, partial_aop, partial_bop, partial_kop
from genfrac.pset import standard_left
from genfrac.specfun import rl_family

TWO_INV_GAMMA_HALF = 1.1283791670955125739
G2_OVER_G25 = 0.75225277806367504926
HALF_POW_ORACLE = 0.79788456080286535588

LEFT = standard_left(0.0, 1.0)
RL = rl_family()


def preq(kind, alpha, axis):
    return PartialRequest(axis=axis, base=OperatorRequest(kind, alpha, LEFT, RL))


def test_partial_kop_separable():
    f = parse_expression("t1*t2")
    for c in (0.2, 0.9):
        v = partial_kop(preq("K", 0.5, 1), f, 1.0, c)
        assert v == pytest.approx(c * G2_OVER_G25, rel=1e-10)


def test_partial_kop_constant_along_axis():
    f = parse_expression("t2")
    v = partial_kop(preq("K", 0.5, 1), f, 1.0, 0.5)
    assert v == pytest.approx(0.5 * TWO_INV_GAMMA_HALF, rel=1e-10)


def test_partial_kop_zero():
    f = parse_expression("0*t1*t2")
    assert partial_kop(preq("K", 0.5, 1), f, 0.5, 0.5) == 0.0


def test_partial_aop_frozen_axis():
    f = parse_expression("t2")
    for c in (0.3, 0.8):
        v = partial_aop(preq("A", 0.5, 1), f, 0.5, c)
        assert v == pytest.approx(c * HALF_POW_ORACLE, rel=1e-6)


def test_partial_aop_axis_two():
    # f = t1 is constant along axis 2, so the axis-2 derivative-type
    # operator sees a constant slice of height t1
    f = parse_expression("t1")
    v = partial_aop(preq("A", 0.5, 2), f, 0.4, 0.5)
    assert v == pytest.approx(0.4 * HALF_POW_ORACLE, rel=1e-6)


def test_partial_bop_product():
    f = parse_expression("t1*t2")
    for c in (0.25, 1.0):
        v = partial_bop(preq("B", 0.5, 1), f, 1.0, c)
        assert v == pytest.approx(c * TWO_INV_GAMMA_HALF, rel=1e-10)


def test_partial_bop_constant_along_axis():
    f = parse_expression("t2^2")
    assert partial_bop(preq("B", 0.5, 1), f, 0.6, 0.9) == pytest.approx(0.0, abs=1e-12)


def test_slice_identity_random_points():
    # the partial operators must equal the 1D operators applied to the
    # frozen slice, at matched accuracy
    rng = np.random.default_rng(123)
    f = parse_expression("sin(t1)*t2 + t1^2*t2^2")
    for _ in range(10):
        t1 = float(rng.uniform(0.05, 0.95))
        t2 = float(rng.uniform(0.05, 0.95))
        for kind, pop, op, tol in (
            ("K", partial_kop, kop, 1e-12),
            ("A", partial_aop, aop, 1e-5),
            ("B", partial_bop, bop, 1e-10),
        ):
            for axis in (1, 2):
                frozen = t2 if axis == 1 else t1
                active = t1 if axis == 1 else t2
                direct = op(
                    OperatorRequest(kind, 0.5, LEFT, RL),
                    f.slice_along(axis, frozen),
                    active,
                )
                viapartial = pop(preq(kind, 0.5, axis), f, t1, t2)
                assert viapartial == pytest.approx(direct, rel=tol, abs=1e-13)


def test_point_outside_rectangle():
    f = parse_expression("t1*t2")
    with pytest.raises(ValueError, match="outside"):
        partial_kop(preq("K", 0.5, 1), f, 1.5, 0.5)
    with pytest.raises(ValueError, match="outside"):
        partial_kop(preq("K", 0.5, 2), f, 0.5, -0.1)


def test_active_axis_boundary_refused_for_derivative():
    f = parse_expression("t1*t2")
    with pytest.raises(ValueError):
        partial_aop(preq("A", 0.5, 1), f, 0.0, 0.5)
    # inactive coordinate at the boundary is fine
    partial_aop(preq("A", 0.5, 1), f, 0.5, 0.0)


def test_axis_validation():
    with pytest.raises(ValueError):
        PartialRequest(axis=3, base=OperatorRequest("K", 0.5, LEFT, RL))


def test_arity_validation():
    f1 = parse_expression("t", arity=1)
    with pytest.raises(ValueError, match="two-variable"):
        partial_kop(preq("K", 0.5, 1), f1, 0.5, 0.5)


def test_partial_bop_derivative_unavailable():
    from genfrac.funcspec import FuncSpec

    f = FuncSpec.from_callable(lambda x, y: x * y, arity=2, label="xy")
    with pytest.raises(ValueError, match="derivative"):
        partial_bop(preq("B", 0.5, 1), f, 0.5, 0.5)
