import numpy as np
import pytest

from plotkinlab.bincode import CodeError, dual_code, exact_min_distance, is_subcode, rm_code
from plotkinlab.constructions import (
    CATALOG,
    build_codes64,
    catalog_entry,
    check_chain,
    get_code,
    get_double,
    half_rate_family_I,
    half_rate_family_II,
    hidden_membership,
)
from plotkinlab.harness.audit import audit_constructions

from . import oracles

CODES64 = ["A", "B", "C", "D", "E"]

# Component (n, k, d) of each length-64 code, read off its definition.
COMPONENTS64 = {
    "A": [(16, 15, 2), (16, 11, 4), (16, 5, 8), (16, 1, 16)],
    "B": [(16, 11, 4), (16, 8, 4), (16, 8, 4), (16, 5, 8)],
    "C": [(16, 11, 4), (16, 11, 4), (16, 5, 8), (16, 5, 8)],
    "D": [(16, 13, 2), (16, 7, 6), (16, 7, 6), (16, 5, 8)],
    "E": [(16, 15, 2), (16, 7, 6), (16, 5, 8), (16, 5, 8)],
}


@pytest.mark.parametrize("which", CODES64)
def test_length64_parameters(which):
    dp = build_codes64(which)
    assert dp.composite.params[:2] == (64, 32)
    for comp, (n, k, d) in zip(dp.comps, COMPONENTS64[which]):
        assert (comp.n, comp.k) == (n, k)
        assert exact_min_distance(comp) == oracles.min_distance(comp.codewords) == d
    # lower bound min(4 d0, 2 d1, 2 d2, d3) is 8 and a weight-8 word exists
    d = [c.d_declared for c in dp.comps]
    assert min(4 * d[0], 2 * d[1], 2 * d[2], d[3]) == 8
    assert dp.composite.d_declared == 8


@pytest.mark.parametrize("which", CODES64)
def test_length64_low_weight_word_exists(which):
    dp = build_codes64(which)
    z = np.zeros(16, dtype=np.uint8)

    def shapes(i, u):
        return [
            np.concatenate([u, u, u, u]),
            np.concatenate([z, u, z, u]),
            np.concatenate([z, z, u, u]),
            np.concatenate([z, z, z, u]),
        ][i]

    found = []
    for i, comp in enumerate(dp.comps):
        ws = comp.codewords
        for u in ws[ws.sum(axis=1) == comp.d_declared][:3]:
            w = shapes(i, u)
            if w.sum() == 8:
                found.append(w)
    assert found
    assert dp.composite.contains_batch(np.array(found)).all()


def test_b_realizations_agree_on_parameters():
    a, b = build_codes64("B"), build_codes64("B", "subcode")
    assert a.comps[1].params == b.comps[1].params == (16, 8, 4)
    with pytest.raises(CodeError):
        build_codes64("B", "other")
    with pytest.raises(CodeError):
        build_codes64("Z")


def test_subcode_middle_is_double_plotkin_of_short_codes():
    mid = build_codes64("B", "subcode").comps[1]
    c422 = oracles.span([[1, 1, 0, 0], [0, 0, 1, 1]])
    expect = oracles.double_plotkin_words(
        rm_code(1, 2).codewords, c422, c422, rm_code(0, 2).codewords
    )
    assert {tuple(w) for w in mid.codewords} == {tuple(w) for w in expect}


def test_code_d_breaks_c1_in_c0():
    chain = check_chain(build_codes64("D"))
    assert chain["C3<=C2"] and chain["C2<=C1"] and not chain["C1<=C0"]


@pytest.mark.parametrize("which", ["A", "B", "C", "E"])
def test_full_chain_codes(which):
    chain = check_chain(build_codes64(which))
    assert chain["C3<=C2"] and chain["C2<=C1"] and chain["C1<=C0"]


@pytest.mark.parametrize("nu,ell", [(3, 0), (4, 0), (4, 1)])
def test_family_I(nu, ell):
    dp = half_rate_family_I(nu, ell)
    assert dp.composite.k * 2 == dp.composite.n
    c0, c1, c2, c3 = dp.comps
    assert dual_code(c0) == c3 and dual_code(c1) == c2
    assert check_chain(dp)["C0,C3 dual"]


def test_family_I_nu3_is_code_a():
    assert half_rate_family_I(3, 0).composite == build_codes64("A").composite


@pytest.mark.parametrize("nu,ell", [(3, 0), (3, 1), (4, 0), (4, 1), (4, 2)])
def test_family_II(nu, ell):
    dp = half_rate_family_II(nu, ell)
    c0, c1, c2, c3 = dp.comps
    assert dp.composite.k * 2 == dp.composite.n
    assert dual_code(c0) == c3
    assert c1 == c2 and is_subcode(c3, c2)


def test_family_range_checks():
    with pytest.raises(CodeError):
        half_rate_family_I(2, 0)
    with pytest.raises(CodeError):
        half_rate_family_I(4, 2)
    with pytest.raises(CodeError):
        half_rate_family_II(3, 2)


@pytest.mark.parametrize("label", [l for l in CATALOG if not l.startswith("R(")])
def test_catalog_parameters_and_hidden_words(label):
    e = CATALOG[label]
    code = get_code(label)
    assert (code.n, code.k, code.d_declared) == e.expected
    for claim, ok in hidden_membership(code.double, 200, 1).items():
        assert ok, claim


def test_catalog_lookup_aliases():
    assert catalog_entry("RM(2,5)").label == "R(2,5)"
    assert get_code("C_I") == get_code("FamilyI(nu=4,l=1)")
    assert get_double("C_IIa").comps[0] == rm_code(4, 6)
    assert get_double("C_IIb").comps[3] == rm_code(2, 6)
    with pytest.raises((CodeError, KeyError)):
        catalog_entry("C_Z")


def test_audit_passes():
    checks = audit_constructions(samples=200)
    bad = [c.line() for c in checks if not c.ok]
    assert not bad, bad
    assert len(checks) > 300
