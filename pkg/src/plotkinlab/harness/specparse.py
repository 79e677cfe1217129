"""Mini-language for decoder specifications.

::

    spec  := term (";" term)*
    term  := fam "(" i "," j ")" [xL] | "dplist" [xL]
           | "combo" "(" i "," j "|" i "," j ")" [xL]
           | fam "(*)" [xL] | "mixed"
    fam   := "v4" | "v" | "v0"
    xL    := "xL" int

``fam(*)`` expands to every pair of the family and ``mixed`` to the six
``v`` variants plus ``v4(0,2)xL2`` and ``v4(0,1)xL2``.  Pairs are unordered.
V4 pairs that name the same hidden word as a canonical pair are rewritten
with a warning.  The whole-decoder names ``ml`` and ``auto`` are handled by
:func:`plotkinlab.harness.simulate.resolve_decoder`, not here.
"""

from __future__ import annotations

import re
import warnings

from ..decoders.variants import MIXED, PAIRS, V4_EQUIVALENT, V4_PAIRS, VariantSpec


class SpecError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<int>\d+)|(?P<sym>[();,|*]))")
_FAMILIES = {"v4": "V4", "v": "V", "v0": "V0"}


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.end() == self.pos:
            return None, None
        kind = m.lastgroup
        return kind, m.group(kind)

    def take(self, kind=None, value=None):
        self._skip()
        start = self.pos
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.end() == self.pos:
            what = "end of input" if self.pos >= len(self.text) else repr(self.text[self.pos])
            raise SpecError(f"unexpected {what}", start, self.text)
        k, v = m.lastgroup, m.group(m.lastgroup)
        if (kind and k != kind) or (value is not None and v != value):
            raise SpecError(f"expected {value or kind}, found {v!r}", start, self.text)
        self.pos = m.end()
        return v, start

    def at_end(self):
        self._skip()
        return self.pos >= len(self.text)


def _list_size(lx: _Lexer) -> int:
    kind, v = lx.peek()
    if kind == "name" and v.lower().startswith("xl"):
        tok, start = lx.take("name")
        digits = tok[2:]
        if not digits:
            digits, _ = lx.take("int")
        if not digits.isdigit() or int(digits) < 1:
            raise SpecError("list size must be a positive integer", start, lx.text)
        return int(digits)
    return 1


def _pair(lx: _Lexer):
    i, p = lx.take("int")
    lx.take("sym", ",")
    j, _ = lx.take("int")
    a, b = int(i), int(j)
    if not (0 <= a <= 3 and 0 <= b <= 3) or a == b:
        raise SpecError(f"invalid pair ({a},{b})", p, lx.text)
    return tuple(sorted((a, b))), p


def _term(lx: _Lexer) -> list[VariantSpec]:
    name, start = lx.take("name")
    low = name.lower()
    glued = re.fullmatch(r"(dplist)xl(\d+)", low)
    if glued:  # "dplistxL4" lexes as one name
        if int(glued.group(2)) < 1:
            raise SpecError("list size must be a positive integer", start, lx.text)
        return [VariantSpec("DPLIST", None, int(glued.group(2)))]
    if low == "mixed":
        return list(MIXED)
    if low == "dplist":
        return [VariantSpec("DPLIST", None, _list_size(lx))]
    if low == "combo":
        lx.take("sym", "(")
        p1, _ = _pair(lx)
        lx.take("sym", "|")
        p2, pos = _pair(lx)
        lx.take("sym", ")")
        if set(p1) | set(p2) != {0, 1, 2, 3}:
            raise SpecError("combo pairs must cover all four blocks", pos, lx.text)
        return [VariantSpec("COMBO", p1, _list_size(lx), p2)]
    if low not in _FAMILIES:
        raise SpecError(f"unknown variant family {name!r}", start, lx.text)
    fam = _FAMILIES[low]
    lx.take("sym", "(")
    kind, v = lx.peek()
    if kind == "sym" and v == "*":
        lx.take("sym", "*")
        lx.take("sym", ")")
        L = _list_size(lx)
        return [VariantSpec(fam, p, L) for p in (V4_PAIRS if fam == "V4" else PAIRS)]
    pair, pos = _pair(lx)
    lx.take("sym", ")")
    if fam == "V4" and pair not in V4_PAIRS:
        canon = V4_EQUIVALENT[pair]
        warnings.warn(f"v4({pair[0]},{pair[1]}) uncovers the same word as v4({canon[0]},{canon[1]}); using the latter", stacklevel=4)
        pair = canon
    return [VariantSpec(fam, pair, _list_size(lx))]


def parse_decoder_spec(s: str) -> list[VariantSpec]:
    if s is None or not s.strip():
        raise SpecError("empty decoder specification", 0, s or "")
    lx = _Lexer(s)
    out: list[VariantSpec] = []
    seen: dict[VariantSpec, int] = {}
    while True:
        start = lx.pos
        for spec in _term(lx):
            if spec in seen:
                raise SpecError(f"duplicate variant {spec.id}", start, s)
            seen[spec] = start
            out.append(spec)
        if lx.at_end():
            return out
        lx.take("sym", ";")


def format_decoder_spec(specs) -> str:
    return ";".join(s.id for s in specs)
