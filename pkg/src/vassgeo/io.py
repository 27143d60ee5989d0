"""Text formats for VASS documents, runs and certificates.

All formats are line oriented; ``#`` starts a comment.  Transition and
index lists in run and certificate files are 0-based.
"""

from __future__ import annotations

import re
from typing import Iterator, Mapping

from .certify import SeqEnabledCertificate, ThickCertificate, ThinCertificate
from .core import Configuration, Run, Transition, Vass
from .errors import DocumentDimensionMismatch, DuplicateConfigName, ParseError, UnknownState
from .geom import Beam

ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            yield no, toks


def _ints(toks: list[str], line: int, nonneg: bool = False) -> tuple[int, ...]:
    out = []
    for t in toks:
        try:
            x = int(t, 10)
        except ValueError:
            raise ParseError(f"expected an integer, got {t!r}", line) from None
        if nonneg and x < 0:
            raise ParseError(f"expected a nonnegative integer, got {t}", line)
        out.append(x)
    return tuple(out)


def _ident(tok: str, line: int) -> str:
    if not ID_RE.match(tok):
        raise ParseError(f"invalid identifier {tok!r}", line)
    return tok


# ---------------------------------------------------------------------------
# VASS documents


def parse_vass(text: str) -> tuple[Vass, dict[str, Configuration]]:
    items = list(_lines(text))
    if not items:
        raise ParseError("empty document", 1)
    no, toks = items[0]
    if toks[0] != "vass" or len(toks) != 2 or not toks[1].startswith("dim="):
        raise ParseError("document must start with 'vass dim=<d>'", no)
    dim = _ints([toks[1][4:]], no, nonneg=True)[0]
    states: list[str] = []
    declared: set[str] = set()
    for no, toks in items[1:]:
        if toks[0] in ("state", "states"):
            if toks[0] == "state" and len(toks) != 2:
                raise ParseError("'state' takes exactly one id", no)
            for t in toks[1:]:
                if _ident(t, no) in declared:
                    raise ParseError(f"state {t!r} declared twice", no)
                declared.add(t)
                states.append(t)
    trans: list[Transition] = []
    configs: dict[str, Configuration] = {}
    for no, toks in items[1:]:
        head = toks[0]
        if head in ("state", "states"):
            continue
        if head == "vass":
            raise ParseError("repeated 'vass' header", no)
        if head == "trans":
            if len(toks) < 3:
                raise ParseError("'trans' needs a source and a target", no)
            src, dst = _ident(toks[1], no), _ident(toks[2], no)
            for s in (src, dst):
                if s not in declared:
                    raise UnknownState(f"unknown state {s!r}", no)
            eff = _ints(toks[3:], no)
            if len(eff) != dim:
                raise DocumentDimensionMismatch(f"effect has {len(eff)} entries, dimension is {dim}", no)
            trans.append(Transition(src, eff, dst))
        elif head == "config":
            if len(toks) < 3:
                raise ParseError("'config' needs a name and a state", no)
            name, st = _ident(toks[1], no), _ident(toks[2], no)
            if name in configs:
                raise DuplicateConfigName(f"configuration {name!r} defined twice", no)
            if st not in declared:
                raise UnknownState(f"unknown state {st!r}", no)
            vec = _ints(toks[3:], no, nonneg=True)
            if len(vec) != dim:
                raise DocumentDimensionMismatch(f"configuration has {len(vec)} entries, dimension is {dim}", no)
            configs[name] = Configuration(st, vec)
        else:
            raise ParseError(f"unknown directive {head!r}", no)
    return Vass(dim, tuple(states), tuple(trans)), configs


def _join(*parts) -> str:
    return " ".join(str(p) for p in parts)


def serialize_vass(G: Vass, configs: Mapping[str, Configuration] | None = None, header: str = "") -> str:
    out = []
    for line in header.splitlines():
        out.append(f"# {line}".rstrip())
    out.append(f"vass dim={G.dim}")
    if G.states:
        out.append(_join("states", *G.states))
    for t in G.transitions:
        out.append(_join("trans", t.src, t.dst, *t.effect))
    for name, c in (configs or {}).items():
        out.append(_join("config", name, c.state, *c.counters))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# runs


def parse_run(text: str, G: Vass) -> Run:
    start = None
    word: list[int] = []
    for no, toks in _lines(text):
        if toks[0] == "start":
            if start is not None:
                raise ParseError("repeated 'start'", no)
            if len(toks) < 2:
                raise ParseError("'start' needs a state", no)
            st = _ident(toks[1], no)
            if st not in G.index:
                raise UnknownState(f"unknown state {st!r}", no)
            vec = _ints(toks[2:], no, nonneg=True)
            if len(vec) != G.dim:
                raise DocumentDimensionMismatch(f"start has {len(vec)} entries, dimension is {G.dim}", no)
            start = Configuration(st, vec)
        elif toks[0] == "word":
            idx = _ints(toks[1:], no, nonneg=True)
            for i in idx:
                if i >= len(G.transitions):
                    raise ParseError(f"transition index {i} out of range", no)
            word.extend(idx)
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", no)
    if start is None:
        raise ParseError("run file has no 'start' line")
    return Run(G, start, tuple(word))


def serialize_run(run: Run) -> str:
    return f"{_join('start', run.start.state, *run.start.counters)}\n{_join('word', *run.word)}\n"


# ---------------------------------------------------------------------------
# certificates


def parse_thin(text: str) -> ThinCertificate:
    A = None
    beams = []
    for no, toks in _lines(text):
        if toks[0] == "A":
            if len(toks) != 2:
                raise ParseError("'A' takes one integer", no)
            A = _ints(toks[1:], no, nonneg=True)[0]
        elif toks[0] == "beam":
            vals = _ints(toks[1:], no, nonneg=True)
            if not vals:
                raise ParseError("'beam' needs a width", no)
            beams.append(Beam(vals[1:], vals[0]))
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", no)
    if A is None:
        raise ParseError("certificate has no 'A' line")
    return ThinCertificate(A, tuple(beams))


def serialize_thin(cert: ThinCertificate) -> str:
    lines = [f"A {cert.A}"] + [_join("beam", b.width, *b.direction) for b in cert.beams]
    return "\n".join(lines) + "\n"


def parse_thick(text: str) -> ThickCertificate:
    A = None
    top_split = None
    parts: dict[str, dict] = {}
    section = None
    for no, toks in _lines(text):
        head = toks[0]
        if head == "A" and section is None:
            if len(toks) != 2:
                raise ParseError("'A' takes one integer", no)
            A = _ints(toks[1:], no, nonneg=True)[0]
        elif head in ("forward", "backward"):
            if len(toks) != 1 or head in parts:
                raise ParseError(f"bad or repeated section {head!r}", no)
            section = head
            parts[section] = {"line": no}
        elif head == "split":
            vals = _ints(toks[1:], no, nonneg=True)
            if section is None:
                if len(vals) != 1:
                    raise ParseError("top-level 'split' takes one index", no)
                top_split = vals[0]
            else:
                if len(vals) != 4:
                    raise ParseError("section 'split' takes four indices", no)
                parts[section]["split"] = vals
        elif re.fullmatch(r"cycle[1-4]", head) and section is not None:
            parts[section][head] = _ints(toks[1:], no, nonneg=True)
        else:
            raise ParseError(f"unexpected {head!r}", no)
    if A is None or top_split is None:
        raise ParseError("certificate needs 'A' and a top-level 'split'")
    subs = []
    for name in ("forward", "backward"):
        if name not in parts:
            raise ParseError(f"missing section {name!r}")
        p = parts[name]
        missing = [k for k in ("split", "cycle1", "cycle2", "cycle3", "cycle4") if k not in p]
        if missing:
            raise ParseError(f"section {name!r} lacks {', '.join(missing)}", p["line"])
        subs.append(SeqEnabledCertificate(p["split"], [p[f"cycle{j}"] for j in range(1, 5)], A))
    return ThickCertificate(top_split, subs[0], subs[1], A)


def serialize_thick(cert: ThickCertificate) -> str:
    out = [f"A {cert.A}", f"split {cert.split}"]
    for name, sub in (("forward", cert.forward), ("backward", cert.backward)):
        out.append(name)
        out.append(_join("split", *sub.split))
        for j, c in enumerate(sub.cycles, 1):
            out.append(_join(f"cycle{j}", *c))
    return "\n".join(out) + "\n"
