"""Line-oriented text format for complexes.

A document looks like::

    ring F2[U,V]
    gen x0 1 1
    gen y-1 0 2
    d x0 y-1 0 1
    iota y-1 y1 0 0

``ring`` is ``F2[U,V]`` or ``F2[U]``. ``gen NAME GR_W GR_Z`` (or
``gen NAME GR`` over F2[U]) lists generators in order. ``d SRC TGT U V``
(or ``d SRC TGT U``) says that ``U^u V^v TGT`` appears in ``d SRC``;
``iota`` lines give the involution the same way (over F2[U,V] the
exponents of ``iota_K`` are read with the skew convention). A document
without ``iota`` lines and with ``involution none`` is a bare complex.
Blank lines and lines starting with ``#`` are ignored. Output is
canonical: generators in stored order, terms sorted by source then target.
"""

from __future__ import annotations

import numpy as np

from .chain import FreeUComplex, FreeUVComplex, _matrix_from_terms, _terms_of
from .involutive import IotaComplex, IotaKComplex
from .ring import InvalidInputError

__all__ = ["DocumentError", "RING_TAGS", "serialize", "deserialize", "load", "save"]

RING_TAGS = ("F2[U,V]", "F2[U]")


class DocumentError(InvalidInputError):
    pass


def serialize(x) -> str:
    """Canonical text for a complex, an IotaComplex or an IotaKComplex."""
    if isinstance(x, IotaKComplex):
        c, iota, shift, skew = x.complex, x.iota_k, (0, 0), True
    elif isinstance(x, IotaComplex):
        c, iota, shift, skew = x.complex, x.iota, 0, False
    elif isinstance(x, (FreeUVComplex, FreeUComplex)):
        c, iota = x, None
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    uv = isinstance(c, FreeUVComplex)
    lines = [f"ring {c.ring_tag}"]
    if iota is None:
        lines.append("involution none")
    for k, name in enumerate(c.names):
        if uv:
            lines.append(f"gen {name} {int(c.gr_w[k])} {int(c.gr_z[k])}")
        else:
            lines.append(f"gen {name} {int(c.gr[k])}")
    dshift = (-1, -1) if uv else -1
    for t in _terms_of(c, c.d, dshift, False):
        lines.append("d " + " ".join(str(v) for v in t))
    if iota is not None:
        for t in _terms_of(c, iota, shift, skew):
            lines.append("iota " + " ".join(str(v) for v in t))
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DocumentError(f"line {lineno}: {what} must be an integer, got {tok!r}") from None


def deserialize(text: str):
    """Parse a document; errors name the line and the offending entry."""
    ring = None
    bare = False
    gens: list[tuple] = []
    terms: dict[str, list[tuple[int, tuple]]] = {"d": [], "iota": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        kw = tok[0]
        if kw == "ring":
            if len(tok) != 2 or tok[1] not in RING_TAGS:
                raise DocumentError(f"line {lineno}: unknown ring tag {' '.join(tok[1:])!r}")
            if ring is not None:
                raise DocumentError(f"line {lineno}: ring given twice")
            ring = tok[1]
            continue
        if ring is None:
            raise DocumentError(f"line {lineno}: the first entry must be the ring tag")
        width = 2 if ring == "F2[U,V]" else 1
        if kw == "involution":
            if tok[1:] != ["none"]:
                raise DocumentError(f"line {lineno}: expected 'involution none'")
            bare = True
        elif kw == "gen":
            if len(tok) != 2 + width:
                raise DocumentError(f"line {lineno}: generator entry needs a name and {width} grading(s)")
            gens.append((tok[1], *(_int(t, lineno, f"grading of {tok[1]}") for t in tok[2:])))
        elif kw in terms:
            if len(tok) != 3 + width:
                raise DocumentError(f"line {lineno}: {kw} entry needs source, target and {width} exponent(s)")
            expo = tuple(_int(t, lineno, f"exponent in {kw} {tok[1]} -> {tok[2]}") for t in tok[3:])
            if any(e < 0 for e in expo):
                raise DocumentError(f"line {lineno}: negative exponent in {kw} {tok[1]} -> {tok[2]}")
            terms[kw].append((lineno, (tok[1], tok[2], *expo)))
        else:
            raise DocumentError(f"line {lineno}: unknown entry {kw!r}")
    if ring is None:
        raise DocumentError("missing ring tag")
    if bare and terms["iota"]:
        raise DocumentError("document declares no involution but has iota entries")
    uv = ring == "F2[U,V]"
    try:
        if uv:
            c = FreeUVComplex([g[0] for g in gens], [g[1] for g in gens], [g[2] for g in gens])
        else:
            c = FreeUComplex([g[0] for g in gens], [g[1] for g in gens])
    except InvalidInputError as e:
        raise DocumentError(str(e)) from None

    def build(kind, shift, skew, what):
        mat = np.zeros((c.n, c.n), dtype=np.uint8)
        seen: dict[tuple, int] = {}
        for lineno, term in terms[kind]:
            key = term[:2]
            if key in seen:
                raise DocumentError(f"line {lineno}: duplicate {kind} term {term[0]} -> {term[1]} (first on line {seen[key]})")
            seen[key] = lineno
            try:
                mat ^= _matrix_from_terms(c, [term], shift, skew, what)
            except InvalidInputError as e:
                raise DocumentError(f"line {lineno}: {e}") from None
        return mat

    d = build("d", (-1, -1) if uv else -1, False, "differential")
    try:
        c = FreeUVComplex(c.names, c.gr_w, c.gr_z, d) if uv else FreeUComplex(c.names, c.gr, d)
    except InvalidInputError as e:
        raise DocumentError(str(e)) from None
    if bare:
        return c
    iota = build("iota", (0, 0) if uv else 0, uv, "involution")
    return IotaKComplex(c, iota) if uv else IotaComplex(c, iota)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return deserialize(fh.read())


def save(x, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(x))
