import numpy as np
import pytest

from plotkinlab import softops
from plotkinlab.harness.opcount import JOIN_ADD_FORMULAS, measure_join_add
from plotkinlab.softops import OpCounter, null_counter


def _join_ref(a, b):
    s = np.where(a < 0, -1.0, 1.0) * np.where(b < 0, -1.0, 1.0)
    return s * np.minimum(np.abs(a), np.abs(b))


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32])
def test_cost_table_per_length(n):
    meas = measure_join_add(n)
    for op, per_n in JOIN_ADD_FORMULAS.items():
        assert meas[op] == tuple(f * n for f in per_n), op


def test_cost_table_values():
    # (signs, comparisons, additions) per coordinate.
    assert JOIN_ADD_FORMULAS == {
        "join-two": (1, 1, 0),
        "join-four": (3, 3, 0),
        "add-two": (1, 0, 1),
        "add-four": (3, 0, 3),
        "join-add": (2, 2, 1),
        "add-join": (1, 1, 2),
    }


def test_join_sign_and_magnitude():
    a = np.array([1.0, -2.0, 0.0, -0.5])
    b = np.array([-3.0, -1.0, 4.0, 0.0])
    out = softops.join(a, b, null_counter())
    assert out.tolist() == [-1.0, 1.0, 0.0, 0.0]
    assert not np.any(out[2:] < 0)  # a zero input decides as +1


def test_composites_against_reference():
    g = np.random.default_rng(1)
    y = g.standard_normal(32)
    x1, x2, x3 = np.where(g.random((3, 8)) < 0.5, -1.0, 1.0)
    b = softops.split_blocks(y)
    c = null_counter()
    assert np.allclose(softops.join_add(b, x3, c), _join_ref(b.y0, b.y1) + _join_ref(b.y2, b.y3 * x3))
    assert np.allclose(softops.add_join(b, x2, x3, c), _join_ref(b.y0 + b.y2 * x2, b.y1 + b.y3 * x2 * x3))
    assert np.allclose(softops.add_four(b, x1, x2, x3, c), b.y0 + b.y1 * x1 + b.y2 * x2 + b.y3 * x1 * x2 * x3)
    assert np.allclose(softops.add_two(b.y0, b.y1, x1, c), b.y0 + b.y1 * x1)
    four = _join_ref(_join_ref(_join_ref(b.y0, b.y1), b.y2), b.y3)
    assert np.allclose(softops.join_many(list(b), c), four)


def test_noiseless_join_uncovers_hidden_product():
    g = np.random.default_rng(2)
    x0, x1, x2, x3 = np.where(g.random((4, 8)) < 0.5, -1.0, 1.0)
    y = np.concatenate([x0, x0 * x1, x0 * x2, x0 * x1 * x2 * x3])
    b = softops.split_blocks(y)
    c = null_counter()
    assert np.array_equal(np.sign(softops.join(b.y0, b.y1, c)), x1)
    assert np.array_equal(np.sign(softops.join_many(list(b), c)), x3)
    assert np.array_equal(softops.join_add(b, x3, c), 2 * x1)


def test_counter_sections_and_scaling():
    c = OpCounter()
    with c.section("outer"):
        softops.join(np.ones(4), np.ones(4), c)
        with c.scaled(3):
            softops.add_two(np.ones(4), np.ones(4), np.ones(4), c)
    softops.correlation(np.ones(4), np.ones(4), c)
    assert c.totals() == (4 + 12 + 4, 4, 12 + 3)
    assert c.ac_ops() == 19
    bd = c.breakdown((), 1)
    assert bd[("outer",)] == [16, 4, 12]
    assert c.breakdown(("outer",), 1)[("add-two",)] == [12, 0, 12]
    c.reset()
    assert c.totals() == (0, 0, 0)


def test_length_checks():
    c = null_counter()
    with pytest.raises(ValueError):
        softops.join(np.ones(3), np.ones(4), c)
    with pytest.raises(ValueError):
        softops.split_blocks(np.ones(6))
    with pytest.raises(ValueError):
        softops.add_blocks([np.ones(2)], c)
