"""Named codes: the Reed-Muller table, five half-rate codes of length 64 and
two families of half-rate double-Plotkin codes built from RM components.

Every entry is addressable by a label (``R(3,7)``, ``C_A``, ``FamilyI(nu=4,l=1)``,
``C_IIa`` ...), which is also the ``--code`` vocabulary of the CLI.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .bincode import (
    CodeError,
    DoublePlotkinCode,
    LinearCode,
    direct_sum,
    double_plotkin,
    dual_code,
    is_subcode,
    parity_code,
    rm_code,
    verify_min_distance,
)
from .gfbch import extended_bch


@lru_cache(maxsize=None)
def ebch16(designed: int) -> LinearCode:
    """Extended BCH code of length 16 with distance verified by enumeration."""
    code = extended_bch(4, designed)
    code.d_declared = verify_min_distance(code)
    return code


@lru_cache(maxsize=None)
def _code_844_subcode() -> LinearCode:
    """(16,8,4) as a double-Plotkin code of length-4 components, with the (4,2,2)
    subcode {0000, 1100, 0011, 1111} of (4,3,2) in the middle."""
    c422 = LinearCode.from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]], 2, "(4,2,2)")
    dp = double_plotkin(rm_code(1, 2), c422, c422, rm_code(0, 2), label="(16,8,4)/subcode")
    return dp.composite


@lru_cache(maxsize=None)
def _code_844_concat() -> LinearCode:
    return direct_sum(rm_code(1, 3), rm_code(1, 3), label="|R(1,3)|R(1,3)|")


@lru_cache(maxsize=None)
def build_codes64(which: str, b_realization: str = "concat") -> DoublePlotkinCode:
    """One of the five (64,32,8) codes C_A .. C_E as a double-Plotkin code."""
    which = which.upper()
    if which == "A":
        comps = (rm_code(3, 4), rm_code(2, 4), rm_code(1, 4), rm_code(0, 4))
    elif which == "B":
        if b_realization == "concat":
            mid = _code_844_concat()
        elif b_realization == "subcode":
            mid = _code_844_subcode()
        else:
            raise CodeError(f"unknown C_B realization {b_realization!r}")
        comps = (rm_code(2, 4), mid, mid, rm_code(1, 4))
    elif which == "C":
        comps = (rm_code(2, 4), rm_code(2, 4), rm_code(1, 4), rm_code(1, 4))
    elif which == "D":
        c0 = direct_sum(parity_code(6), parity_code(5), parity_code(5), label="|(6,5,2)|(5,4,2)|(5,4,2)|")
        comps = (c0, ebch16(5), ebch16(5), ebch16(7))
    elif which == "E":
        comps = (parity_code(16), ebch16(5), ebch16(7), ebch16(7))
    else:
        raise CodeError(f"unknown length-64 code {which!r}")
    label = f"C_{which}" + ("/subcode" if which == "B" and b_realization == "subcode" else "")
    return double_plotkin(*comps, label=label)


def _check_nu(nu: int, ell: int, top: int):
    if nu < 3:
        raise CodeError("nu must be at least 3")
    if not 0 <= ell <= top:
        raise CodeError(f"l must lie in 0..{top}")


@lru_cache(maxsize=None)
def half_rate_family_I(nu: int, ell: int) -> DoublePlotkinCode:
    """C0, C3 dual RM codes and C1, C2 dual RM codes of length 2^(2nu-2).

    C0 = R(2nu-l-3, 2nu-2) is the dual of C3 = R(l, 2nu-2); this is the index
    that makes the pair dual and reproduces C_A (nu=3) and C_I (nu=4, l=1).
    """
    _check_nu(nu, ell, nu - 3)
    m = 2 * nu - 2
    comps = (rm_code(2 * nu - ell - 3, m), rm_code(2 * nu - ell - 4, m), rm_code(ell + 1, m), rm_code(ell, m))
    return double_plotkin(*comps, label=f"FamilyI(nu={nu},l={ell})")


@lru_cache(maxsize=None)
def half_rate_family_II(nu: int, ell: int) -> DoublePlotkinCode:
    """C0 = R(nu-1+l, 2nu-2), C3 its dual, C1 = C2 = |R(nu-2,2nu-3)|R(nu-2,2nu-3)|."""
    _check_nu(nu, ell, nu - 2)
    m = 2 * nu - 2
    half = rm_code(nu - 2, m - 1)
    mid = direct_sum(half, half, label=f"|{half.label}|{half.label}|")
    comps = (rm_code(nu - 1 + ell, m), mid, mid, rm_code(nu - 2 - ell, m))
    return double_plotkin(*comps, label=f"FamilyII(nu={nu},l={ell})")


# --- catalog ------------------------------------------------------------------


@dataclass(frozen=True)
class CodeCatalogEntry:
    label: str
    kind: str  # "rm", "codes64", "familyI", "familyII"
    params: tuple
    expected: tuple  # (n, k, d)
    strategy: str = "auto"
    note: str = ""

    def build(self) -> LinearCode:
        return get_code(self.label)


def _rm_entry(r, m):
    k = sum(comb(m, i) for i in range(r + 1))
    return CodeCatalogEntry(f"R({r},{m})", "rm", (r, m), (1 << m, k, 1 << (m - r)))


def _family_d(comps):
    d0, d1, d2, d3 = comps
    return min(d3, 2 * d2, 2 * d1, 4 * d0)


def _build_catalog() -> dict[str, CodeCatalogEntry]:
    cat: dict[str, CodeCatalogEntry] = {}
    for m in range(1, 8):
        for r in range(m + 1):
            e = _rm_entry(r, m)
            cat[e.label] = e
    for w in "ABCDE":
        cat[f"C_{w}"] = CodeCatalogEntry(f"C_{w}", "codes64", (w, "concat"), (64, 32, 8))
    cat["C_B/subcode"] = CodeCatalogEntry("C_B/subcode", "codes64", ("B", "subcode"), (64, 32, 8))
    for nu in (3, 4):
        m = 2 * nu - 2
        n, k = 1 << (2 * nu), 1 << (2 * nu - 1)
        for ell in range(nu - 2):
            ds = (1 << (ell + 1), 1 << (ell + 2), 1 << (m - ell - 1), 1 << (m - ell))
            lab = f"FamilyI(nu={nu},l={ell})"
            cat[lab] = CodeCatalogEntry(lab, "familyI", (nu, ell), (n, k, _family_d(ds)))
        for ell in range(nu - 1):
            d_half = 1 << (nu - 1)
            ds = (1 << (nu - 1 - ell), d_half, d_half, 1 << (nu + ell))
            lab = f"FamilyII(nu={nu},l={ell})"
            cat[lab] = CodeCatalogEntry(lab, "familyII", (nu, ell), (n, k, _family_d(ds)))
    # Named instances of the length-256 family codes.
    cat["C_I"] = CodeCatalogEntry("C_I", "familyI", (4, 1), (256, 128, 16), note="FamilyI(nu=4,l=1)")
    cat["C_IIa"] = CodeCatalogEntry("C_IIa", "familyII", (4, 1), (256, 128, 16), note="C0=R(4,6), C3=R(1,6)")
    cat["C_IIb"] = CodeCatalogEntry("C_IIb", "familyII", (4, 0), (256, 128, 16), note="C0=R(3,6), C3=R(2,6)")
    return cat


CATALOG: dict[str, CodeCatalogEntry] = _build_catalog()

_RM_RE = re.compile(r"^R[M]?\((\d+),(\d+)\)$")


def _canonical(label: str) -> str:
    s = label.replace(" ", "").replace("ν", "nu").replace("ℓ", "l")
    m = _RM_RE.match(s)
    if m:
        return f"R({int(m.group(1))},{int(m.group(2))})"
    return s


def catalog_entry(label: str) -> CodeCatalogEntry:
    key = _canonical(label)
    if key not in CATALOG:
        raise CodeError(f"unknown code {label!r}; see `plotkinlab codes`")
    return CATALOG[key]


@lru_cache(maxsize=None)
def get_code(label: str) -> LinearCode:
    """Build a catalog code.  Double-Plotkin entries carry their view in ``.double``."""
    e = catalog_entry(label)
    if e.kind == "rm":
        return rm_code(*e.params)
    if e.kind == "codes64":
        dp = build_codes64(*e.params)
    elif e.kind == "familyI":
        dp = half_rate_family_I(*e.params)
    else:
        dp = half_rate_family_II(*e.params)
    if e.label != dp.composite.label:
        # named alias: give it its own label but share the structure
        alias = LinearCode(dp.composite.rows, dp.composite.n, dp.composite.d_declared, e.label)
        double_plotkin(*dp.comps, composite=alias)
        return alias
    return dp.composite


def get_double(label: str) -> DoublePlotkinCode:
    code = get_code(label)
    if code.double is None:
        raise CodeError(f"{label} has no double-Plotkin view")
    return code.double


# --- hidden code words -----------------------------------------------------


def hidden_membership(dp: DoublePlotkinCode, samples: int = 1000, seed: int = 0) -> dict[str, bool]:
    """Check the block sums of random codewords against the component codes.

    Returns one flag per applicable claim; a claim is applicable when the
    subcode relations it depends on hold for ``dp``.
    """
    rng = np.random.default_rng(seed)
    code = dp.composite
    info = rng.integers(0, 2, size=(samples, code.k), dtype=np.uint8)
    words = code.encode_batch(info)
    n = dp.n
    a = [words[:, i * n : (i + 1) * n] for i in range(4)]
    c0, c1, c2, c3 = dp.comps
    rel = dp.relations
    out = {"a0+a1+a2+a3 in C3": bool(c3.contains_batch(a[0] ^ a[1] ^ a[2] ^ a[3]).all())}
    out["a0+a2 in C2"] = bool(c2.contains_batch(a[0] ^ a[2]).all())
    out["a0+a1 in C1"] = bool(c1.contains_batch(a[0] ^ a[1]).all())
    if rel["C3<=C2"]:
        out["a1+a3 in C2"] = bool(c2.contains_batch(a[1] ^ a[3]).all())
    if rel["C3<=C2"] and rel["C2<=C1"]:
        for i, j in ((0, 3), (1, 2), (2, 3)):
            out[f"a{i}+a{j} in C1"] = bool(c1.contains_batch(a[i] ^ a[j]).all())
    if rel["C3<=C2"] and rel["C2<=C1"] and rel["C1<=C0"]:
        for i in range(4):
            out[f"a{i} in C0"] = bool(c0.contains_batch(a[i]).all())
    return out


def check_chain(dp: DoublePlotkinCode) -> dict[str, bool]:
    """Subcode chain relations of the components, as computed by ``is_subcode``."""
    c0, c1, c2, c3 = dp.comps
    return {
        "C3<=C2": is_subcode(c3, c2),
        "C2<=C1": is_subcode(c2, c1),
        "C1<=C0": is_subcode(c1, c0),
        "C0,C3 dual": dual_code(c0) == c3 if c0.k + c3.k == c0.n else False,
    }
