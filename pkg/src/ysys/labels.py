"""Arc labels (a, m)_s.

The first generation of the punctured construction carries three extra
indices, written 1bar, 2bar and 0.  Internally they are stored as integers
(-2, -1, 0) so that labels sort naturally; ``m_name`` gives the printable form.
"""
from __future__ import annotations

from typing import NamedTuple

BAR1 = -2
BAR2 = -1

_M_NAMES = {BAR1: "bar1", BAR2: "bar2"}
_M_PARSE = {"bar1": BAR1, "bar2": BAR2, "1bar": BAR1, "2bar": BAR2}


class Label(NamedTuple):
    a: int
    m: int
    s: int = 0  # copy index; 0 for the first generation

    def __str__(self) -> str:
        base = f"({self.a},{m_name(self.m)})"
        return f"{base}_{self.s}" if self.a >= 2 else base

    @property
    def family(self) -> tuple[int, int]:
        return (self.a, self.m)


def m_name(m: int) -> str:
    return _M_NAMES.get(m, str(m))


def parse_m(text: str | int) -> int:
    if isinstance(text, int):
        return text
    return _M_PARSE[text] if text in _M_PARSE else int(text)


def family_str(a: int, m: int) -> str:
    return f"({a},{m_name(m)})"


def label_to_json(lab: Label) -> dict:
    return {"a": lab.a, "m": m_name(lab.m), "s": lab.s if lab.a >= 2 else None}


def label_from_json(d: dict) -> Label:
    return Label(int(d["a"]), parse_m(d["m"]), int(d["s"]) if d.get("s") is not None else 0)
