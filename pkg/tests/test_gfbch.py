import pytest

from plotkinlab.bincode import CodeError, exact_min_distance, is_subcode, weight_distribution
from plotkinlab.gfbch import GaloisField, bch_code, bch_generator, extended_bch, poly_mod, poly_mul

from . import oracles


def test_field_tables():
    f = GaloisField(4)
    assert sorted(f.exp[: f.order]) == list(range(1, 16))
    for a in range(1, 16):
        inv = f.exp[(f.order - f.log[a]) % f.order]
        assert f.mul(a, inv) == 1
    with pytest.raises(ValueError):
        GaloisField(4, 0b11111)  # x^4+x^3+x^2+x+1 has order 5


def test_cosets_and_minimal_polynomials():
    f = GaloisField(4)
    assert f.cyclotomic_coset(1) == [1, 2, 4, 8]
    assert f.cyclotomic_coset(5) == [5, 10]
    assert f.minimal_polynomial(1) == 0b10011
    assert f.minimal_polynomial(5) == 0b111
    assert f.minimal_polynomial(3) == 0b11111


def test_poly_arith():
    assert poly_mul(0b11, 0b11) == 0b101
    assert poly_mod(0b101, 0b11) == 0


@pytest.mark.parametrize("designed,k,d", [(3, 11, 3), (5, 7, 5), (7, 5, 7)])
def test_bch_15(designed, k, d):
    code = bch_code(4, designed)
    assert code.k == k
    g = bch_generator(GaloisField(4), designed)
    assert poly_mod((1 << 15) | 1, g) == 0  # g divides x^15 + 1
    assert exact_min_distance(code) == d


@pytest.mark.parametrize("designed,k,d", [(3, 11, 4), (5, 7, 6), (7, 5, 8)])
def test_extended_bch_16(designed, k, d):
    code = extended_bch(4, designed)
    assert (code.n, code.k) == (16, k)
    words = code.codewords
    assert all(w.sum() % 2 == 0 for w in words)
    assert oracles.min_distance(words) == d


def test_extended_bch_nesting():
    c3, c5, c7 = (extended_bch(4, t) for t in (3, 5, 7))
    assert is_subcode(c7, c5) and is_subcode(c5, c3)


def test_ebch_16_5_8_is_first_order_rm_weights():
    assert weight_distribution(extended_bch(4, 7)) == weight_distribution(oracles_rm14())


def oracles_rm14():
    from plotkinlab.bincode import LinearCode

    bits = oracles.rm_generator(1, 4)
    return LinearCode([sum(b << i for i, b in enumerate(r)) for r in bits], 16)


def test_designed_distance_range():
    with pytest.raises(CodeError):
        bch_code(4, 16)
