"""Construction audit: parameters, distances, hidden code words, nesting."""

from __future__ import annotations

from dataclasses import dataclass

from ..bincode import CodeError, exact_min_distance, is_subcode, sample_weight_floor
from ..constructions import CATALOG, get_code, hidden_membership
from ..gfbch import extended_bch

# Largest dimension (of a code or of its dual) that is enumerated.
AUDIT_ENUM = 22


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}  {self.detail}".rstrip()


def _distance_check(code, where: str) -> Check:
    try:
        d = exact_min_distance(code, AUDIT_ENUM)
    except CodeError as e:
        return Check(f"d {where}", False, str(e))
    ok = code.d_declared is None or d == code.d_declared
    return Check(f"d {where}", ok, f"{code.label}: exact {d}, declared {code.d_declared}")


def audit_entry(label: str, samples: int = 1000, seed: int = 0, floor_samples: int = 0) -> list[Check]:
    e = CATALOG[label]
    code = get_code(label)
    n, k, d = e.expected
    checks = [Check(f"{label} (n,k)", (code.n, code.k) == (n, k), f"built {(code.n, code.k)}, expected {(n, k)}")]
    checks.append(Check(f"{label} d formula", code.d_declared == d, f"{code.d_declared} vs {d}"))
    if min(code.k, code.n - code.k) <= 20:
        checks.append(_distance_check(code, label))
    elif floor_samples:
        fl = sample_weight_floor(code, floor_samples, seed)
        checks.append(Check(f"{label} sampled weight floor", fl >= d, f"floor {fl} >= {d}"))
    dp = code.double
    if e.kind != "rm" and dp is not None:
        for i, c in enumerate(dp.comps):
            checks.append(_distance_check(c, f"{label}/C{i}"))
        for claim, ok in hidden_membership(dp, samples, seed).items():
            checks.append(Check(f"{label} {claim}", ok))
    return checks


def audit_ebch_nesting() -> list[Check]:
    c3, c5, c7 = (extended_bch(4, t) for t in (3, 5, 7))
    return [
        Check("eBCH parameters", [c.k for c in (c3, c5, c7)] == [11, 7, 5], f"{c3.label} {c5.label} {c7.label}"),
        Check("eBCH (16,5,8) < (16,7,6)", is_subcode(c7, c5)),
        Check("eBCH (16,7,6) < (16,11,4)", is_subcode(c5, c3)),
    ]


def audit_constructions(samples: int = 1000, seed: int = 0, floor_samples: int = 0) -> list[Check]:
    out = []
    for label in CATALOG:
        out += audit_entry(label, samples, seed, floor_samples)
    return out + audit_ebch_nesting()
