"""Command-line front end: spec files, validation, extension, classification
and the acceptance self-test.

Exit codes: 0 pass, 1 a verified mathematical failure, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from . import linalg
from .algcore import FinAlgebra, FinHopf, validate_algebra, validate_hopf
from .families import (
    InvalidDatum,
    OmegaSquareNotCentral,
    RankOneDatum,
    WNotCentral,
    cyclic_group_algebra,
    nichols,
    nichols_partial_action,
    rank_one,
    sweedler,
    sweedler_partial_action,
    target_algebra,
)
from .hopfore import HopfOreDatum, PanovViolation, TruncatedOre
from .paction import (
    DimensionMismatch,
    PartialActionMap,
    PreconditionFailed,
    check_cod_volta,
    extend_formula,
    host_vector,
    verify_axioms,
)
from .scalar import FieldElement, conductor, conductor_limit, parse_scalar, render_scalar, simplify

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class SpecError(ValueError):
    """A spec file parses but does not describe a usable object."""


# -- the spec file -----------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """Sparse entries ``i j k -> scalar`` in file order."""

    entries: tuple = ()

    def dense(self, shape: tuple[int, ...]) -> np.ndarray:
        out = linalg.zeros(shape)
        for idx, c in self.entries:
            if len(idx) != len(shape) or any(not 0 <= i < n for i, n in zip(idx, shape)):
                raise SpecError(f"entry {idx} does not fit shape {shape}")
            out[idx] = c
        return linalg.normalize(out)

    @classmethod
    def from_array(cls, a: np.ndarray) -> "Block":
        entries = []
        for idx in np.ndindex(*a.shape):
            c = simplify(a[idx])
            if c:
                entries.append((tuple(int(i) for i in idx), c))
        return cls(tuple(entries))


@dataclass(frozen=True)
class Section:
    kind: str
    name: str
    fields: tuple = ()
    line: int = field(default=0, compare=False)

    def get(self, key: str, default=None):
        for k, v in self.fields:
            if k == key:
                return v
        return default

    def text(self, key: str, default: str | None = None) -> str | None:
        v = self.get(key, default)
        if isinstance(v, Block):
            raise SpecError(f"{self.kind} {self.name}: {key} must be a single line")
        return v

    def block(self, key: str) -> Block | None:
        v = self.get(key)
        if v is not None and not isinstance(v, Block):
            raise SpecError(f"{self.kind} {self.name}: {key} must be an indented block")
        return v


@dataclass(frozen=True)
class SpecFile:
    conductor: int | None = None
    sections: tuple = ()

    def find(self, kind: str, name: str | None = None) -> Section:
        for s in self.sections:
            if s.kind == kind and (name is None or s.name == name):
                return s
        raise SpecError(f"no {kind} section" + (f" named {name}" if name else ""))

    def all(self, kind: str) -> list[Section]:
        return [s for s in self.sections if s.kind == kind]


SECTION_KINDS = ("algebra", "hopf", "ore", "action", "grid")
_HEADER = re.compile(r"^(algebra|hopf|ore|action|grid)(?:\s+([A-Za-z0-9_.-]+))?\s*:\s*$")
_FIELD = re.compile(r"^([A-Za-z][A-Za-z0-9_-]*)\s*:\s*(.*)$")
_ENTRY = re.compile(r"^((?:-?\d+\s+)*-?\d+)\s*->\s*(.+)$")


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def parse_spec(text: str) -> SpecFile:
    cond: int | None = None
    sections: list[Section] = []
    current: dict | None = None
    block_key: str | None = None

    def close() -> None:
        if current is not None:
            sections.append(Section(current["kind"], current["name"], tuple(current["fields"]), current["line"]))

    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip(" "))
        body = line.strip()
        if "\t" in line[:indent + 1]:
            raise ParseError(no, "tabs are not allowed for indentation")
        if indent == 0:
            block_key = None
            m = _HEADER.match(body)
            if m:
                close()
                kind, name = m.group(1), m.group(2) or ""
                if kind != "grid" and not name:
                    raise ParseError(no, f"{kind} section needs a name")
                current = {"kind": kind, "name": name, "fields": [], "line": no}
                continue
            m = _FIELD.match(body)
            if m and m.group(1) == "conductor":
                if current is not None or sections:
                    raise ParseError(no, "conductor must come before all sections")
                try:
                    cond = int(m.group(2))
                except ValueError:
                    raise ParseError(no, "conductor must be a positive integer") from None
                if cond < 1:
                    raise ParseError(no, "conductor must be a positive integer")
                if cond > conductor_limit():
                    raise ParseError(no, f"conductor {cond} exceeds the limit {conductor_limit()}")
                continue
            raise ParseError(no, f"expected a section header, got {body!r}")
        if current is None:
            raise ParseError(no, "indented line outside a section")
        if block_key is not None and indent >= 4:
            m = _ENTRY.match(body)
            if not m:
                raise ParseError(no, f"expected 'i j ... -> scalar', got {body!r}")
            idx = tuple(int(t) for t in m.group(1).split())
            c = _scalar(m.group(2), no, cond)
            current["fields"][-1] = (block_key, Block(current["fields"][-1][1].entries + ((idx, c),)))
            continue
        m = _FIELD.match(body)
        if not m or indent != 2:
            raise ParseError(no, f"expected '  key: value', got {body!r}")
        key, value = m.group(1), m.group(2).strip()
        if any(k == key for k, _ in current["fields"]):
            raise ParseError(no, f"duplicate key {key!r}")
        if value:
            current["fields"].append((key, value))
            block_key = None
        else:
            current["fields"].append((key, Block()))
            block_key = key
    close()
    return SpecFile(cond, tuple(sections))


def _scalar(text: str, line: int, cond: int | None) -> FieldElement:
    try:
        c = parse_scalar(text)
    except Exception as e:
        raise ParseError(line, f"bad scalar {text.strip()!r}: {e}") from None
    if cond is not None and cond % conductor(c) and conductor(c) > 1:
        raise ParseError(line, f"scalar {text.strip()!r} lies outside the declared conductor {cond}")
    return c


def render_spec(spec: SpecFile) -> str:
    lines = []
    if spec.conductor is not None:
        lines.append(f"conductor: {spec.conductor}")
    for s in spec.sections:
        if lines:
            lines.append("")
        lines.append(f"{s.kind} {s.name}:" if s.name else f"{s.kind}:")
        for key, value in s.fields:
            if isinstance(value, Block):
                lines.append(f"  {key}:")
                for idx, c in value.entries:
                    lines.append("    " + " ".join(str(i) for i in idx) + " -> " + render_scalar(c))
            else:
                lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"


def load_spec(path: str) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def split_scalars(text: str) -> list[str]:
    """Whitespace or comma separated scalars; commas inside brackets are kept."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if depth == 0 and (ch.isspace() or ch == ","):
            if cur:
                out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        out.append(cur)
    return out


def parse_vector(text: str) -> list[FieldElement]:
    try:
        return [parse_scalar(t) for t in split_scalars(text)]
    except Exception as e:
        raise SpecError(f"bad vector {text!r}: {e}") from None


def render_vector(v: Sequence[FieldElement]) -> str:
    return " ".join(render_scalar(c) for c in v)


# -- building objects from sections ----------------------------------------------------------


_FAMILY = re.compile(r"^([a-z]+)\s*(?:\((.*)\))?$")


def _family_args(text: str) -> tuple[str, list[str]]:
    m = _FAMILY.match(text.strip())
    if not m:
        raise SpecError(f"bad family {text!r}")
    args = [a.strip() for a in m.group(2).split(",")] if m.group(2) else []
    return m.group(1), args


def _q_arg(text: str) -> FieldElement:
    m = re.match(r"^q(\d+)(?:\^(-?\d+))?$", text)
    if m:
        return parse_scalar(f"zeta{m.group(1)}" + (f"^{m.group(2)}" if m.group(2) else ""))
    return parse_scalar(text)


RANK_ONE_FAMILIES = {"taft": 0, "radford": 1}


def rank_one_family(text: str) -> tuple[RankOneDatum, str]:
    """taft(n,d,qN) and radford(n,d,qN) over C_n with chi(g) = q, and sweedler."""
    name, args = _family_args(text)
    if name == "sweedler" and not args:
        return RankOneDatum.cyclic(2, -1, 0), "sweedler"
    if name not in RANK_ONE_FAMILIES:
        raise SpecError(f"unknown family {name!r}; choose sweedler, taft(n,d,q) or radford(n,d,q)")
    if len(args) != 3:
        raise SpecError(f"{name} takes three arguments (n, d, q)")
    try:
        n, d, q = int(args[0]), int(args[1]), _q_arg(args[2])
    except ValueError as e:
        raise SpecError(f"bad arguments for {name}: {e}") from None
    datum = RankOneDatum.cyclic(n, q, RANK_ONE_FAMILIES[name])
    if datum.d != d:
        raise InvalidDatum(f"q has order {datum.d}, not {d}")
    return datum, f"{name}({n},{d},{args[2]})"


def hopf_family(text: str) -> FinHopf:
    name, args = _family_args(text)
    try:
        if name == "sweedler" and not args:
            return sweedler()
        if name == "nichols" and len(args) == 1:
            return nichols(int(args[0]))
        if name == "cyclic" and len(args) == 1:
            return cyclic_group_algebra(int(args[0]))
    except ValueError as e:
        raise SpecError(str(e)) from None
    if name in RANK_ONE_FAMILIES:
        return rank_one(rank_one_family(text)[0])
    raise SpecError(f"unknown Hopf family {text!r}")


def build_algebra(s: Section) -> FinAlgebra:
    fam = s.text("family")
    if fam is not None:
        try:
            return target_algebra(fam)
        except ValueError as e:
            raise SpecError(str(e)) from None
    labels = (s.text("labels") or "").split()
    if not labels:
        raise SpecError(f"algebra {s.name}: labels or family required")
    n = len(labels)
    mult = s.block("mult") or Block()
    unit = parse_vector(s.text("unit") or "")
    if len(unit) != n:
        raise SpecError(f"algebra {s.name}: unit needs {n} entries")
    return FinAlgebra(labels, mult.dense((n, n, n)), unit)


def build_hopf(s: Section) -> FinHopf:
    fam = s.text("family")
    if fam is not None:
        return hopf_family(fam)
    alg = build_algebra(s)
    n = alg.dim
    cop_t = (s.block("coproduct") or Block()).dense((n, n, n))
    cop = [[(cop_t[i, j, k], j, k) for j in range(n) for k in range(n) if cop_t[i, j, k]] for i in range(n)]
    counit = parse_vector(s.text("counit") or "")
    if len(counit) != n:
        raise SpecError(f"hopf {s.name}: counit needs {n} entries")
    anti = (s.block("antipode") or Block()).dense((n, n))
    return FinHopf(alg, cop, counit, anti)


def _index(H, label: str) -> int:
    try:
        return H.index(label)
    except ValueError:
        raise SpecError(f"no basis element {label!r}") from None


def build_ore(spec: SpecFile, s: Section) -> HopfOreDatum:
    base = build_hopf(spec.find("hopf", s.text("base")))
    n = base.dim
    sigma = (s.block("sigma") or Block()).dense((n, n))
    delta_b = s.block("delta")
    delta = delta_b.dense((n, n)) if delta_b is not None else None
    g = _index(base, s.text("g") or "g")
    return HopfOreDatum.create(base, sigma, g, delta, var=s.text("var") or "x")


def build_action(spec: SpecFile, s: Section) -> PartialActionMap:
    R = build_algebra(spec.find("algebra", s.text("target")))
    hname, oname = s.text("hopf"), s.text("ore")
    if (hname is None) == (oname is None):
        raise SpecError(f"action {s.name}: give exactly one of hopf or ore")
    if hname is not None:
        H = build_hopf(spec.find("hopf", hname))
    else:
        datum = build_ore(spec, spec.find("ore", oname))
        cap = s.text("cap")
        H = TruncatedOre(datum, int(cap) if cap is not None else datum.default_cap())
    fam = s.text("family")
    if fam == "sweedler":
        pa = sweedler_partial_action(R, parse_vector(s.text("omega") or ""))
        if pa.hopf.basis_labels != H.basis_labels:
            raise SpecError(f"action {s.name}: the Sweedler family needs the Sweedler host")
        return PartialActionMap(H, R, pa.matrices)
    if fam == "nichols":
        ws = [parse_vector(part) for part in (s.text("w") or "").split(";") if part.strip()]
        return nichols_partial_action(len(ws) + 1, R, ws, H=H)
    if fam is not None:
        raise SpecError(f"action {s.name}: unknown family {fam!r}")
    mats = (s.block("matrices") or Block()).dense((H.dim, R.dim, R.dim))
    return PartialActionMap(H, R, mats)


# -- rendering objects as sections ------------------------------------------------------------


def algebra_section(name: str, A: FinAlgebra) -> Section:
    return Section("algebra", name, (
        ("labels", " ".join(A.basis_labels)),
        ("unit", render_vector(linalg.tolist(A.unit))),
        ("mult", Block.from_array(A.mult)),
    ))


def hopf_section(name: str, H: FinHopf) -> Section:
    return Section("hopf", name, (
        ("labels", " ".join(H.basis_labels)),
        ("unit", render_vector(linalg.tolist(H.unit))),
        ("mult", Block.from_array(H.mult)),
        ("coproduct", Block.from_array(H.coproduct_tensor())),
        ("counit", render_vector(linalg.tolist(H.counit))),
        ("antipode", Block.from_array(H.antipode)),
    ))


def action_section(name: str, pa: PartialActionMap, hopf: str, target: str) -> Section:
    return Section("action", name, (
        ("hopf", hopf),
        ("target", target),
        ("matrices", Block.from_array(pa.matrices)),
    ))


# -- commands ---------------------------------------------------------------------------------


def cmd_validate(path: str, out: IO[str]) -> int:
    spec = load_spec(path)
    ok = True
    for s in spec.sections:
        if s.kind == "algebra":
            rep = validate_algebra(build_algebra(s))
            ok &= _report(out, f"algebra {s.name}", rep.ok, rep.failed_axioms(), rep.witness)
        elif s.kind == "hopf":
            rep = validate_hopf(build_hopf(s))
            ok &= _report(out, f"hopf {s.name}", rep.ok, rep.failed_axioms(), rep.witness)
        elif s.kind == "ore":
            try:
                datum = build_ore(spec, s)
                out.write(f"ore {s.name}: pass (chi = {render_vector(datum.chi)})\n")
            except PanovViolation as e:
                ok = False
                out.write(f"ore {s.name}: FAIL {e.identity} witness {e.index}\n")
        elif s.kind == "action":
            try:
                pa = build_action(spec, s)
            except (OmegaSquareNotCentral, WNotCentral) as e:
                ok = False
                out.write(f"action {s.name}: FAIL {e}\n")
                continue
            symmetric = (s.text("symmetric") or "false").lower() == "true"
            rep = verify_axioms(pa, symmetric=symmetric)
            out.write(f"action {s.name}:\n")
            for line in rep.render().splitlines():
                out.write("  " + line + "\n")
            ok &= rep.ok
    out.write(f"result: {'pass' if ok else 'FAIL'}\n")
    return EXIT_PASS if ok else EXIT_FAIL


def _report(out: IO[str], title: str, ok: bool, failed, witness) -> bool:
    if ok:
        out.write(f"{title}: pass\n")
    else:
        out.write(f"{title}: FAIL {', '.join(failed)} witness {witness}\n")
    return ok


def cmd_extend(
    path: str,
    out: IO[str],
    w: str | None = None,
    cap: int | None = None,
    symmetric: bool = False,
    degree_bound: int | None = None,
    action: str | None = None,
    ore: str | None = None,
) -> int:
    spec = load_spec(path)
    o = spec.find("ore", ore)
    datum = build_ore(spec, o)
    if action is not None:
        a = spec.find("action", action)
    else:
        cands = [s for s in spec.all("action") if s.text("hopf") == o.text("base")]
        if not cands:
            raise SpecError(f"no action on the base {o.text('base')} of ore {o.name}")
        a = cands[0]
    pa_A = build_action(spec, a)
    wtext = w if w is not None else a.text("w")
    if wtext is None:
        raise SpecError("give --w or a 'w:' line in the action section")
    wv = parse_vector(wtext)
    if len(wv) != pa_A.target.dim:
        raise SpecError(f"w needs {pa_A.target.dim} entries")
    cap = datum.default_cap() if cap is None else cap
    out.write(f"extension of action {a.name} along ore {o.name}\n")
    out.write(f"w: {render_vector(wv)}\n")
    out.write(f"cap: {cap}\n")
    ext = extend_formula(pa_A, datum, wv, cap=cap)
    out.write("preconditions: g.1 = 0 pass, delta = 0 pass\n")
    ok = True
    if cap == 0:
        out.write("cap 0: degree zero only, the extension is the base action\n")
    else:
        cv = check_cod_volta(pa_A, datum, wv, symmetric=symmetric, degree_bound=degree_bound)
        out.write(cv.render() + "\n")
    rep = verify_axioms(ext, symmetric=symmetric)
    out.write("axioms of the extension:\n")
    for line in rep.render().splitlines():
        out.write("  " + line + "\n")
    ok = rep.ok
    out.write(f"result: {'pass' if ok else 'FAIL'}\n")
    return EXIT_PASS if ok else EXIT_FAIL


def load_target(text: str) -> tuple[FinAlgebra, str]:
    if os.path.exists(text):
        spec = load_spec(text)
        s = spec.find("algebra")
        return build_algebra(s), s.name
    try:
        return target_algebra(text), text
    except ValueError as e:
        raise SpecError(str(e)) from None


def cmd_classify(family: str, target: str, pool: str | None, out: IO[str], out_path: str | None = None) -> int:
    from .oracle import SearchGrid, classify_rank_one

    datum, fam = rank_one_family(family)
    R, rname = load_target(target)
    grid = SearchGrid.create(R, parse_vector(pool) if pool else [0, 1, -1])
    cert = classify_rank_one(datum, R, grid, fam, rname)
    text = cert.render()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.write(f"certificate written to {out_path}\n")
    else:
        out.write(text)
    out.write(f"result: {'match' if cert.match else 'MISMATCH'}\n")
    return EXIT_PASS if cert.match else EXIT_FAIL


def cmd_selftest(out: IO[str], filter_text: str | None = None, fresh: bool = False) -> int:
    from .acceptance import run_all, select

    try:
        select(filter_text)
    except ValueError as e:
        raise SpecError(str(e)) from None
    results = run_all(filter_text, fresh=fresh)
    for r in results:
        out.write(r.line() + "\n")
        if not r.passed:
            for d in r.details:
                out.write("    " + d + "\n")
    failed = [r.number for r in results if not r.passed]
    if failed:
        out.write("failed criteria: " + ", ".join(str(n) for n in failed) + "\n")
        return EXIT_FAIL
    out.write(f"all {len(results)} criteria pass\n")
    return EXIT_PASS


def cmd_family(name: str, out: IO[str]) -> int:
    H = hopf_family(name)
    out.write(render_spec(SpecFile(None, (hopf_section("H", H),))))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfact", description="Exact checks for partial actions of Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", help="validate every section of a spec file")
    v.add_argument("path")
    e = sub.add_parser("extend", help="extend a base action along an Ore datum")
    e.add_argument("path")
    e.add_argument("--w", help="x . 1 as scalars separated by spaces or commas")
    e.add_argument("--cap", type=int)
    e.add_argument("--symmetric", action="store_true")
    e.add_argument("--degree-bound", type=int)
    e.add_argument("--action")
    e.add_argument("--ore")
    c = sub.add_parser("classify", help="classification certificate for a rank-one family")
    c.add_argument("--family", required=True, help="sweedler, taft(n,d,qN) or radford(n,d,qN)")
    c.add_argument("--target", required=True, help="spec file with an algebra section, or k1 k2 k3 ut2 m2")
    c.add_argument("--pool", help="coefficient pool, default 0,1,-1")
    c.add_argument("--out", help="write the certificate here")
    s = sub.add_parser("selftest", help="run the acceptance criteria")
    s.add_argument("--filter", help="comma-separated groups or criterion numbers")
    s.add_argument("--fresh", action="store_true", help="ignore results cached in this process")
    f = sub.add_parser("family", help="print a named Hopf algebra as a spec file")
    f.add_argument("name")
    return p


def main(argv: Sequence[str] | None = None, out: IO[str] | None = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        if args.command == "validate":
            return cmd_validate(args.path, out)
        if args.command == "extend":
            return cmd_extend(args.path, out, args.w, args.cap, args.symmetric, args.degree_bound, args.action, args.ore)
        if args.command == "classify":
            return cmd_classify(args.family, args.target, args.pool, out, args.out)
        if args.command == "selftest":
            return cmd_selftest(out, args.filter, args.fresh)
        if args.command == "family":
            return cmd_family(args.name, out)
    except (OSError, ParseError, SpecError, InvalidDatum, PreconditionFailed, DimensionMismatch) as e:
        out.write(f"error: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        out.write(f"error: {e}\n")
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
