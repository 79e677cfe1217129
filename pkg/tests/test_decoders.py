import numpy as np
import pytest

from plotkinlab.bincode import CodeError, parity_code, repetition_code, rm_code
from plotkinlab.constructions import get_code
from plotkinlab.decoders import (
    MIXED,
    SIX_V,
    DecoderStrategy,
    VariantDecoder,
    VariantSpec,
    combo_decode,
    correlation_list,
    correlation_ml,
    decode_multi,
    decode_recursive,
    decode_variant,
    dp_list_decode,
    list_decode_concat,
    list_decode_r25,
    merge_order,
    parity_ml,
    repetition_ml,
    simplex_ml_double,
    simplex_ml_plotkin,
    strategy_preset,
)
from plotkinlab.decoders.variants import V4_PAIRS, PAIRS
from plotkinlab.softops import OpCounter

from . import oracles

ALL_SPECS = (
    [VariantSpec("V4", p) for p in V4_PAIRS]
    + list(SIX_V)
    + [VariantSpec("V0", p) for p in PAIRS]
    + [VariantSpec("COMBO", (0, 1), 1, (2, 3)), VariantSpec("COMBO", (0, 2), 2, (1, 3)), VariantSpec("DPLIST", None, 4)]
)


def noisy(code, sigma, seed, count):
    g = np.random.default_rng(seed)
    info = g.integers(0, 2, (count, code.k), dtype=np.uint8)
    x = 1.0 - 2.0 * code.encode_batch(info)
    return x, x + sigma * g.standard_normal(x.shape)


def is_member(code, x):
    return bool(code.contains_modulated(np.asarray(x)[None])[0])


@pytest.mark.parametrize("n", [3, 4, 6, 8])
def test_parity_ml_is_ml(n):
    words = oracles.parity_words(n)
    g = np.random.default_rng(n)
    for _ in range(200):
        y = g.standard_normal(n)
        _, best = oracles.ml_decode(words, y[None])
        out = parity_ml(y)
        assert out.correlation == pytest.approx(best[0])
        assert np.prod(out.codeword) == 1


def test_parity_example():
    # one negative sample: flip the least reliable position
    out = parity_ml(np.array([0.9, -0.2, 0.1, 1.3]))
    assert out.codeword.tolist() == [1, -1, -1, 1]


def test_repetition_ml():
    out = repetition_ml(np.array([0.5, -2.0, 0.7, 0.1]))
    assert out.codeword.tolist() == [-1, -1, -1, -1]
    assert out.correlation == pytest.approx(0.7)


@pytest.mark.parametrize("r,m", [(1, 3), (2, 4), (1, 4)])
def test_correlation_ml_and_list(r, m):
    code = rm_code(r, m)
    words = oracles.span(oracles.rm_generator(r, m))
    _, y = noisy(code, 0.9, 11, 50)
    _, best = oracles.ml_decode(words, y)
    for yi, b in zip(y, best):
        assert correlation_ml(code, yi).correlation == pytest.approx(b)
        lst = correlation_list(code, yi, 5)
        corr = [o.correlation for o in lst]
        assert corr == sorted(corr, reverse=True) and corr[0] == pytest.approx(b)
        X = 1.0 - 2.0 * words.astype(float)
        top5 = np.sort(X @ yi)[::-1][:5]
        assert np.allclose(corr, top5)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_simplex_decoders_equal_brute_force_ml(m):
    code = rm_code(1, m)
    words = oracles.span(oracles.rm_generator(1, m))
    _, y = noisy(code, 1.0, m, 300)
    _, best = oracles.ml_decode(words, y)
    for yi, b in zip(y, best):
        c1 = simplex_ml_plotkin(yi, rm_code(1, m - 1))
        c2 = simplex_ml_double(yi, rm_code(1, m - 2))
        assert c1.correlation == pytest.approx(b)
        assert c2.correlation == pytest.approx(b)
        assert is_member(code, c1.codeword) and is_member(code, c2.codeword)


def test_simplex_comparison_counts():
    y = np.random.default_rng(0).standard_normal(16)
    c1, c2 = OpCounter(), OpCounter()
    simplex_ml_plotkin(y, rm_code(1, 3), c1)
    simplex_ml_double(y, rm_code(1, 2), c2)
    assert c1.ac_ops() > 0 and c2.ac_ops() > 0


@pytest.mark.parametrize("label", ["R(2,5)", "R(2,4)", "R(3,6)", "C_A", "C_C", "C_E", "FamilyI(nu=3,l=0)"])
@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.id)
def test_noiseless_variants_recover_codeword(label, spec):
    code = get_code(label)
    from plotkinlab.decoders.variants import check_prerequisites

    try:
        check_prerequisites(code.double, spec)
    except CodeError:
        pytest.skip("component nesting does not allow this variant")
    x, _ = noisy(code, 0.0, 5, 4)
    for xi in x:
        outs = decode_variant(code.double, xi, spec)
        best = max(outs, key=lambda o: (not o.failed, o.correlation))
        assert not best.failed
        assert np.array_equal(best.codeword, xi)


def test_variant_outputs_are_codewords_and_below_ml():
    code = rm_code(2, 5)
    words = code.codewords
    _, y = noisy(code, 0.8, 21, 60)
    _, best = oracles.ml_decode(words, y)
    for yi, b in zip(y, best):
        for spec in ALL_SPECS:
            for o in decode_variant(code.double, yi, spec):
                if not o.failed:
                    assert is_member(code, o.codeword)
                    assert o.correlation <= b + 1e-9


def test_decode_multi_picks_best_candidate():
    code = rm_code(2, 5)
    _, y = noisy(code, 0.8, 4, 20)
    for yi in y:
        single = [max(o.correlation for o in decode_variant(code.double, yi, s) if not o.failed) for s in SIX_V]
        out = decode_multi(code.double, yi, SIX_V)
        assert out.correlation == pytest.approx(max(single))
        assert out.variant_id in {s.id for s in SIX_V}


def test_decode_multi_charges_selection():
    code = rm_code(2, 5)
    y = np.ones(32)
    c_one, c_all = OpCounter(), OpCounter()
    decode_multi(code.double, y, SIX_V[:1], ctr=c_one)
    decode_multi(code.double, y, SIX_V, ctr=c_all)
    assert c_all.breakdown((), 1)[("select",)][1] == 5


def test_dplist_returns_distinct_codewords():
    code = rm_code(2, 5)
    # At high noise no combination of the block lists may pass the checks,
    # so the list can be empty; it never holds a non-codeword.
    for sigma, need in ((0.3, 1), (0.9, 0)):
        _, y = noisy(code, sigma, 8, 10)
        for yi in y:
            outs = dp_list_decode(code.double, yi, 4)
            keys = {tuple(o.codeword) for o in outs}
            assert len(keys) == len(outs) >= need
            assert all(is_member(code, o.codeword) for o in outs)


def test_combo_and_recursive_and_lists():
    code = rm_code(2, 5)
    x, y = noisy(code, 0.3, 9, 5)
    for xi, yi in zip(x, y):
        assert np.array_equal(combo_decode(code.double, yi).codeword, xi)
        assert np.array_equal(decode_recursive(code, yi).codeword, xi)
        lst = list_decode_r25(yi, 8)
        assert np.array_equal(lst[0].codeword, xi)
        assert all(is_member(code, o.codeword) for o in lst)
    y2 = np.concatenate([y[0], y[1]])
    lst = list_decode_concat(y2, 4)
    assert np.array_equal(lst[0].codeword, np.concatenate([x[0], x[1]]))
    corr = [o.correlation for o in lst]
    assert corr == sorted(corr, reverse=True)


def test_merge_order_zigzag():
    order = merge_order(3, 3, 6)
    assert order[0] == (0, 0)
    assert len(set(order)) == 6
    assert set(order[1:3]) == {(0, 1), (1, 0)}


def test_prerequisites_enforced():
    dp = get_code("C_D").double  # C1 is not inside C0
    assert not dp.relations["C1<=C0"]
    with pytest.raises(CodeError):
        decode_variant(dp, np.ones(64), VariantSpec("V0", (0, 1)))
    with pytest.raises(CodeError):
        VariantDecoder(get_code("C_D"), [VariantSpec("DPLIST", None, 2)], DecoderStrategy())


def test_spec_validation():
    with pytest.raises(ValueError):
        VariantSpec("V4", (2, 3))
    with pytest.raises(ValueError):
        VariantSpec("COMBO", (0, 1), 1, (0, 2))
    with pytest.raises(ValueError):
        VariantSpec("V", (0, 1), 0)
    assert [s.id for s in MIXED][-2:] == ["v4(0,2)xL2", "v4(0,1)xL2"]


@pytest.mark.parametrize("name", ["auto", "r37-sim", "r37-cost"])
def test_strategies_decode_r37_noiseless(name):
    code = rm_code(3, 7)
    x, _ = noisy(code, 0.0, 1, 3)
    dec = strategy_preset(name).decoder(code)
    xh, ok = dec.decode(x, OpCounter())
    assert ok.all() and np.array_equal(xh, x)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        strategy_preset("fastest")


def test_parity_helper_codes():
    assert parity_code(4).k == 3 and repetition_code(4).k == 1


@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("L", [1, 3, 8, 64])
def test_simplex_lists_are_exact_top_l(m, L):
    from plotkinlab.decoders import DoubleSimplexDecoder, PlotkinRepetitionDecoder

    code = rm_code(1, m)
    words = oracles.span(oracles.rm_generator(1, m))
    _, y = noisy(code, 1.0, 40 + m, 50)
    ref = np.sort(y @ (1.0 - 2.0 * words.T), axis=1)[:, ::-1][:, :L]
    for dec in (PlotkinRepetitionDecoder(code), DoubleSimplexDecoder(code)):
        X, C, _ = dec.list_decode(y, L, OpCounter())
        assert np.allclose(C, ref)
        assert np.allclose(np.einsum("rlk,rk->rl", X, y), C)
        assert code.contains_modulated(X.reshape(-1, code.n)).all()
