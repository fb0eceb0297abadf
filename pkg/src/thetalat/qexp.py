"""Truncated degree-n Fourier expansions: coefficients indexed by canonical
half-integral class keys inside a diagonal box t_ii <= box."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import BoxUnderflow
from .forms import HalfIntMat, parse_key

FORMAT_VERSION = 1


@dataclass(frozen=True)
class QExpansion:
    degree: int
    box: int
    label: str
    coeffs: dict = field(default_factory=dict)  # canonical key -> int

    def coefficient(self, key: str) -> int:
        if key not in self.coeffs:
            raise BoxUnderflow(f"{self.label}: no coefficient for {key}")
        return self.coeffs[key]

    def classes(self):
        return sorted(self.coeffs)

    def map_values(self, fn, label=None):
        return QExpansion(
            self.degree, self.box, label or self.label,
            {k: fn(k, v) for k, v in self.coeffs.items()},
        )


def qexp_congruent(a: QExpansion, b: QExpansion, modulus: int):
    """Keys where a and b disagree mod `modulus`, over their common box.

    Degrees must match; the comparison box is the smaller of the two and a
    BoxUnderflow is raised if either side is missing a class inside it.
    """
    if a.degree != b.degree:
        raise BoxUnderflow(f"degree mismatch {a.degree} vs {b.degree}")
    box = min(a.box, b.box)
    keys = {k for k in a.coeffs if _in_box(k, box)}
    keys |= {k for k in b.coeffs if _in_box(k, box)}
    bad = []
    for k in sorted(keys):
        va = a.coefficient(k)
        vb = b.coefficient(k)
        if (va - vb) % modulus:
            bad.append(k)
    return bad


def _in_box(key: str, box: int) -> bool:
    t = parse_key(key)
    return max(t.diag) <= box


def to_text(q: QExpansion) -> str:
    lines = [f"degree={q.degree};box={q.box};label={q.label};format={FORMAT_VERSION}"]
    for k in sorted(q.coeffs):
        lines.append(f"{k};{q.coeffs[k]}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> QExpansion:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = dict(kv.split("=", 1) for kv in lines[0].split(";"))
    if int(head.get("format", -1)) != FORMAT_VERSION:
        raise ValueError(f"unsupported q-expansion format {head.get('format')!r}")
    coeffs = {}
    for ln in lines[1:]:
        key, val = ln.rsplit(";", 1)
        parse_key(key)  # validates
        coeffs[key] = int(val)
    return QExpansion(int(head["degree"]), int(head["box"]), head["label"], coeffs)


def save(q: QExpansion, path: str):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(to_text(q))
    os.replace(tmp, path)


def load(path: str) -> QExpansion:
    with open(path) as fh:
        return from_text(fh.read())
