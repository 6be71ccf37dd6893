"""Certificate data types and the line-oriented certificate file format."""
from __future__ import annotations

import dataclasses
from typing import Union

from .graph_core import GraphFormatError, NegativeWitness, parse_witness

HEADER = "tricert 1"


@dataclasses.dataclass(frozen=True)
class BgPath:
    step: int
    vertices: tuple
    provenance: tuple = ()  # ("chain", id) or ("caterpillar", id, part)


@dataclasses.dataclass
class ConstructionCertificate:
    """The K_2^3-subdivision plus the ordered BG-paths that build the graph from it."""

    n: int
    m: int
    s3: list  # three vertex sequences: C0, C1, C2
    paths: list  # BgPath, in construction order

    def sequences(self) -> list:
        return [list(p.vertices) for p in self.paths]


def _seq(vs) -> str:
    return " ".join(str(v + 1) for v in vs)


def format_certificate(cert: ConstructionCertificate) -> str:
    lines = [f"{HEADER} positive", f"g {cert.n} {cert.m}"]
    for chain in cert.s3:
        lines.append(f"s3 {len(chain) - 1} : {_seq(chain)}")
    for i, p in enumerate(cert.paths):
        lines.append(f"path {i} : {_seq(p.vertices)}")
    return "\n".join(lines) + "\n"


def format_negative(w: NegativeWitness) -> str:
    return f"{HEADER} negative\n{w}\n"


def _parse_seq(line: str, lineno: int, tag: str):
    head, sep, tail = line.partition(":")
    tokens = head.split()
    if not sep or len(tokens) != 2 or tokens[0] != tag:
        raise GraphFormatError(f"expected '{tag} <k> : v0 ... vk'", lineno)
    try:
        k = int(tokens[1])
        vs = tuple(int(t) - 1 for t in tail.split())
    except ValueError:
        raise GraphFormatError("non-integer token", lineno) from None
    return k, vs


def parse_certificate(text) -> Union[ConstructionCertificate, NegativeWitness]:
    if isinstance(text, bytes):
        text = text.decode()
    rows = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not rows:
        raise GraphFormatError("empty certificate")
    lineno, first = rows[0]
    if first == f"{HEADER} negative":
        if len(rows) != 2:
            raise GraphFormatError("negative certificate needs exactly one witness line", lineno)
        try:
            return parse_witness(rows[1][1])
        except ValueError as exc:
            raise GraphFormatError(str(exc), rows[1][0]) from None
    if first != f"{HEADER} positive":
        raise GraphFormatError(f"unknown certificate header {first!r}", lineno)
    if len(rows) < 5:
        raise GraphFormatError("positive certificate needs a 'g' line and three 's3' lines")
    lineno, gline = rows[1]
    tokens = gline.split()
    if len(tokens) != 3 or tokens[0] != "g":
        raise GraphFormatError("expected 'g <n> <m>'", lineno)
    try:
        n, m = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise GraphFormatError("non-integer size", lineno) from None
    s3 = []
    for lineno, line in rows[2:5]:
        k, vs = _parse_seq(line, lineno, "s3")
        if k != len(vs) - 1:
            raise GraphFormatError("s3 length does not match its vertex count", lineno)
        s3.append(list(vs))
    paths = []
    for lineno, line in rows[5:]:
        k, vs = _parse_seq(line, lineno, "path")
        paths.append(BgPath(k, vs))
    return ConstructionCertificate(n, m, s3, paths)
