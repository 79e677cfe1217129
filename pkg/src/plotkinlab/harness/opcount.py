"""Operation-count reports: the join/add cost table and per-decoder breakdowns."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import softops
from ..channel import trial_rng
from ..softops import OpCounter
from .simulate import resolve_decoder

# Cost per block length n: (signs, comparisons, additions), as multiples of n.
JOIN_ADD_FORMULAS = {
    "join-two": (1, 1, 0),
    "join-four": (3, 3, 0),
    "add-two": (1, 0, 1),
    "add-four": (3, 0, 3),
    "join-add": (2, 2, 1),
    "add-join": (1, 1, 2),
}

LAYER_KINDS = ("join-two", "join-four", "join-many", "join-add", "add-join", "add-two", "add-four", "derive")


def measure_join_add(n: int, seed: int = 0) -> dict[str, tuple[int, int, int]]:
    """Run each composite once on random length-n blocks and read its counter."""
    g = trial_rng(seed, n)
    b = softops.Blocks4(*g.standard_normal((4, n)))
    x = np.where(g.random((3, n)) < 0.5, -1.0, 1.0)
    calls = {
        "join-two": lambda c: softops.join(b.y0, b.y1, c),
        "join-four": lambda c: softops.join_many(list(b), c),
        "add-two": lambda c: softops.add_two(b.y0, b.y1, x[0], c),
        "add-four": lambda c: softops.add_four(b, x[0], x[1], x[2], c),
        "join-add": lambda c: softops.join_add(b, x[2], c),
        "add-join": lambda c: softops.add_join(b, x[1], x[2], c),
    }
    out = {}
    for name, f in calls.items():
        c = OpCounter()
        f(c)
        out[name] = c.totals()
    return out


@dataclass
class OpReport:
    code: str
    decoder: str
    rows: list  # (path, signs, comparisons, additions)
    signs: int
    comparisons: int
    additions: int
    layer: int | None = None
    components: dict | None = None
    final_correlation: int | None = None

    @property
    def ac_ops(self) -> int:
        return self.comparisons + self.additions

    @property
    def total_c0_as_c1(self) -> int | None:
        """Layer plus C3, C2 and C1, with C0 charged at the C1 cost and the
        final correlation left out (the accounting used for the R(3,7) total)."""
        if self.layer is None or not self.components:
            return None
        c = self.components
        return self.layer + c.get("C3", 0) + c.get("C2", 0) + 2 * c.get("C1", 0)

    def lines(self) -> list[str]:
        out = [f"{'path':<40} {'signs':>8} {'comp':>8} {'add':>8} {'ac':>8}"]
        for path, s, cmp_, a in self.rows:
            out.append(f"{path:<40} {s:>8} {cmp_:>8} {a:>8} {cmp_ + a:>8}")
        out.append(f"{'total':<40} {self.signs:>8} {self.comparisons:>8} {self.additions:>8} {self.ac_ops:>8}")
        if self.layer is not None:
            out.append(f"join/add layer: {self.layer}")
            comps = ", ".join(f"{k}={v}" for k, v in sorted(self.components.items()))
            out.append(f"components: {comps}; final correlation: {self.final_correlation}")
            out.append(f"total with C0 charged as C1, no final correlation: {self.total_c0_as_c1}")
        return out


def report_opcounts(code_label: str, spec: str, strategy: str = "auto", depth: int = 2, seed: int = 0) -> OpReport:
    """Decode one random word and break the counter down by path."""
    rd = resolve_decoder(code_label, spec, strategy)
    y = 1.0 + 0.5 * trial_rng(seed, 0).standard_normal((1, rd.code.n))
    ctr = OpCounter()
    rd.decoder.decode(y, ctr)
    rows = [("/".join(k), *v) for k, v in sorted(ctr.breakdown((), depth).items())]
    rep = OpReport(code_label, rd.name, rows, *ctr.totals())
    if len(rd.specs) == 1:
        sid = rd.specs[0].id
        parts = ctr.breakdown((sid,), 1)
        rep.layer = sum(v[1] + v[2] for k, v in parts.items() if k[0] in LAYER_KINDS)
        rep.components = {k[0]: v[1] + v[2] for k, v in parts.items() if k[0] in ("C0", "C1", "C2", "C3")}
        corr = parts.get(("correlation",))
        rep.final_correlation = corr[1] + corr[2] if corr else 0
    return rep
