"""Values derived from independent computations (enumeration, exhaustive ML,
concentration bounds) and frozen here."""

from itertools import product

import numpy as np
import pytest
from scipy.stats import ks_2samp

from plotkinlab import softops
from plotkinlab.bincode import double_plotkin, repetition_code, rm_code
from plotkinlab.channel import awgn, bsc, sigma_from_config, trial_rng
from plotkinlab.constructions import build_codes64
from plotkinlab.bincode import exact_min_distance, sample_weight_floor
from plotkinlab.decoders import (
    CorrelationDecoder,
    DecoderStrategy,
    DoubleSimplexDecoder,
    PlotkinRepetitionDecoder,
    RepetitionDecoder,
)
from plotkinlab.decoders.variants import VariantContext, dp_list_candidates
from plotkinlab.gfbch import GaloisField, bch_code, bch_generator
from plotkinlab.harness.simulate import draw_trials, paired_gap, paired_outcomes, resolve_decoder
from plotkinlab.softops import OpCounter, null_counter

from . import oracles

N_RANDOM = 10_000


def random_y(n, seed, count=N_RANDOM):
    return trial_rng(seed, 0).standard_normal((count, n))


def achieved(x, y):
    return np.einsum("ij,ij->i", x, y)


def test_r13_enumeration():
    words = rm_code(1, 3).codewords
    assert len({tuple(w) for w in words}) == 16
    assert set(words.sum(axis=1).tolist()) == {0, 4, 8}


def test_code_b_components_and_floor():
    dp = build_codes64("B")
    assert [exact_min_distance(c) for c in dp.comps] == [4, 4, 4, 8]
    assert sample_weight_floor(dp.composite, 50_000, seed=1) >= 8


def test_bch_generator_degrees():
    f = GaloisField(4)
    assert bch_generator(f, 5).bit_length() - 1 == 8
    assert exact_min_distance(bch_code(4, 5)) == 5
    # designed distance 2 uses the same coset as 3: the Hamming code
    assert bch_code(4, 2) == bch_code(4, 3)
    assert exact_min_distance(bch_code(4, 2)) == 3


def test_sigma_at_zero_db_half_rate():
    assert sigma_from_config(0.0, 0.5) ** 2 == pytest.approx(1.0, abs=1e-4)


def test_awgn_moments():
    x = np.ones(1_000_000)
    z = awgn(x, 0.7943, trial_rng(1, 0)) - x
    assert abs(z.mean()) <= 0.004
    assert z.var() == pytest.approx(0.631, abs=0.003)


def test_bsc_rate_tight():
    out = bsc(np.zeros(1_000_000, dtype=np.uint8), 0.1, trial_rng(2, 0))
    assert abs(out.mean() - 0.1) <= 0.001


def test_scaling_by_known_word_relabels_noise():
    g = trial_rng(3, 0)
    n = 100_000
    x = np.ones(n)
    x1 = np.where(g.random(n) < 0.5, -1.0, 1.0)
    a = softops.scale_by_codeword(awgn(x * x1, 0.8, g), x1, null_counter())
    b = awgn(x, 0.8, g)
    assert ks_2samp(a, b).pvalue > 0.01


def test_correlation_via_add_four_matches_direct():
    g = trial_rng(4, 0)
    for _ in range(200):
        x0, x1, x2, x3 = np.where(g.random((4, 8)) < 0.5, -1.0, 1.0)
        x = np.concatenate([x0, x0 * x1, x0 * x2, x0 * x1 * x2 * x3])
        y = x + g.standard_normal(32)
        w = softops.add_four(softops.split_blocks(y), x1, x2, x3, null_counter())
        via = softops.correlation_via_add_four(x0, w, null_counter())
        assert via == pytest.approx(float(x @ y), abs=1e-7)


def test_ml_and_simplex_on_r13_random_y():
    code = rm_code(1, 3)
    y = random_y(8, 5)
    _, best = oracles.ml_decode(oracles.span(oracles.rm_generator(1, 3)), y)
    ctr = OpCounter()
    xml, _ = CorrelationDecoder(code).decode(y, ctr)
    X, C, _ = CorrelationDecoder(code).list_decode(y, 4, ctr)
    xs1, _ = PlotkinRepetitionDecoder(code).decode(y, ctr)
    xs2, _ = DoubleSimplexDecoder(code).decode(y, ctr)
    assert np.allclose(achieved(xml, y), best)
    assert np.allclose(C[:, 0], best)
    assert np.allclose(achieved(xs1, y), best)
    assert np.allclose(achieved(xs2, y), achieved(xs1, y))


def test_repetition_equals_correlation_ml():
    code = repetition_code(8)
    y = random_y(8, 6)
    xr, _ = RepetitionDecoder(code).decode(y, OpCounter())
    xc, _ = CorrelationDecoder(code).decode(y, OpCounter())
    assert np.allclose(achieved(xr, y), achieved(xc, y))


@pytest.mark.parametrize("L", [4, 16])
def test_dplist_survivors_equal_filtered_enumeration(L):
    # length-8 blocks, composite k = 4 + 4 + 1 + 1
    c0, c3 = rm_code(1, 3), rm_code(0, 3)
    dp = double_plotkin(c0, c0, c3, c3)
    ctx = VariantContext(dp, DecoderStrategy())
    y = random_y(32, 7, 30)
    cand = dp_list_candidates(ctx, y, L, OpCounter())
    allw = 1.0 - 2.0 * dp.composite.codewords
    block_lists = [
        [CorrelationDecoder(c0).list_decode(y[:, 8 * b : 8 * b + 8], L, OpCounter())[0] for b in range(4)]
    ][0]
    for r in range(len(y)):
        got = {tuple(x) for x, ok in zip(cand.x[r], cand.ok[r]) if ok}
        lists = [{tuple(v) for v in block_lists[b][r]} for b in range(4)]
        want = {tuple(w) for w in allw if all(tuple(w[8 * b : 8 * b + 8]) in lists[b] for b in range(4))}
        assert got == want
    if L == 16:
        assert cand.ok.sum(axis=1).min() == 1 << dp.composite.k


def _decisions(code_label, spec, ebn0, trials, seed):
    rd = resolve_decoder(code_label, spec)
    info, z = draw_trials(rd.code, seed, 0, trials)
    x = 1.0 - 2.0 * rd.code.encode_batch(info)
    y = x + sigma_from_config(ebn0, rd.code.k / rd.code.n) * z
    xh, _ = rd.decoder.decode(y, OpCounter())
    return xh


def test_combo_changes_some_decisions():
    a = _decisions("R(2,5)", "v(0,1);v(2,3)", 2.0, N_RANDOM, 1)
    b = _decisions("R(2,5)", "v(0,1);v(2,3);combo(0,1|2,3)", 2.0, N_RANDOM, 1)
    assert np.any(np.any(a != b, axis=1))


def test_v01_high_snr():
    out = paired_outcomes("R(2,5)", ["v(0,1)"], 8.0, N_RANDOM, seed=1)["v(0,1)"]
    assert out.mean() < 1e-3


@pytest.mark.parametrize("spec", ["v(0,1)", "v(0,1)xL8"])
def test_l_bound_below_variant(spec):
    plain = paired_outcomes("R(2,5)", [spec], 2.0, N_RANDOM, seed=2)[spec]
    genie = paired_outcomes("R(2,5)", [spec], 2.0, N_RANDOM, seed=2, genie=(spec,))[spec]
    gap, se = paired_gap(plain, genie)
    assert gap >= -3 * se
