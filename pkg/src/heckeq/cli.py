"""Command-line front end: job files, the pipeline, and report rendering.

Group file format (``#`` starts a comment)::

    degree: 4
    generators: (1 2); (1 2 3 4)
    subgroup klein: (1 2); (3 4)
    intermediate klein: d4              # overgroup for relative complements
    representatives klein: (); (2 3); (1 3)(2 4)
    label W: () = 3; (1 2) = 1          # name a rational character by its values
    printed klein: q2 q2 = 4 q1 + 2 q2  # claimed products to annotate

Machine output is a ``schema: 1`` line followed by sorted-key JSON.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .chartab import (
    CharacterTable,
    apply_labels,
    central_idempotent,
    dixon_compute,
    galois_orbits,
    ingest_table,
)
from .errors import CycleSyntaxError, HeckeqError, InputError, TheoremViolation
from .groupalg import averaging_idempotent
from .hecke import (
    CONVENTION_NOTES,
    CONVENTIONS,
    PrintedConstant,
    annotate_printed,
    build_hecke,
    general_equation,
    hecke_character_values,
    hecke_idempotent,
    induced_decomposition,
    orthogonality_sum,
    prym_equations,
    special_equations,
)
from .homology import (
    isotypical_dims,
    load_module,
    permutation_module,
    regular_module,
    verify_complement,
    verify_equation_system,
)
from .permgrp import (
    PermGroup,
    common_transversal,
    double_cosets,
    generate,
    is_two_sided_transversal,
    parse_cycles,
    parse_generator_list,
)

SCHEMA = 1
STAGES = ("doublecosets", "hecke", "chartab", "equations", "verify")
COMMAND_STAGES = {
    "analyze": STAGES,
    "doublecosets": ("doublecosets",),
    "hecke": ("hecke",),
    "chartab": ("chartab",),
    "equations": ("equations",),
    "verify": ("verify",),
}

BUNDLED_JOBS = {
    "s4-klein": ("s4.group", "klein", "s4.table"),
    "s4-s3": ("s4.group", "s3", "s4.table"),
    "g80-p5": ("g80.group", "p5", "g80.table"),
    "g80-z23": ("g80.group", "z23", "g80.table"),
}

NOTES = {
    "homology": "all subvarieties are modelled by rational homology: kernels are exact null spaces "
    "and isogenies are direct sums; dimensions are homology dimensions",
    "orthogonality": "orthogonality sums use the weight 1/[H : H cap xHx^-1]; the reciprocal weight "
    "|H|/|H cap xHx^-1| is reported alongside as 'display'",
    "schur": "Schur indices default to 1; a wrong value changes only the reported multiplicities "
    "and Hecke dimensions, never idempotents or equations",
    "normalization": "structure constants use q_i = (1/|H|) * sum over H x_i H",
    "prym": "on A_H the transversal sum acts as [K:H] p_K, so the fixed part solves sum g_j(z) = [K:H] z",
}


# ---------------------------------------------------------------------------
# job files


@dataclass
class GroupFile:
    degree: int
    generators: list
    subgroups: dict = field(default_factory=dict)  # name -> list of Permutation
    intermediates: dict = field(default_factory=dict)  # name -> list of names
    representatives: dict = field(default_factory=dict)  # name -> list of Permutation
    labels: dict = field(default_factory=dict)  # label -> list of (Permutation, Fraction)
    printed: dict = field(default_factory=dict)  # name -> list of PrintedConstant
    source: str = ""


_PRODUCT = re.compile(r"^\s*q(\d+)\s*q(\d+)\s*=\s*(.+)$")
_TERM = re.compile(r"^\s*(?:(-?\d+(?:/\d+)?)\s*\*?\s*)?q(\d+)\s*$")


def _parse_printed(text: str, line: int) -> list[PrintedConstant]:
    out = []
    for part in text.split(";"):
        if not part.strip():
            continue
        m = _PRODUCT.match(part)
        if not m:
            raise InputError(f"line {line}: cannot read product {part.strip()!r}")
        terms = []
        rhs = m.group(3).replace("-", "+-")
        for t in rhs.split("+"):
            if not t.strip():
                continue
            tm = _TERM.match(t)
            if not tm:
                raise InputError(f"line {line}: cannot read term {t.strip()!r}")
            c = Fraction(tm.group(1)) if tm.group(1) not in (None, "-") else Fraction(1)
            terms.append((int(tm.group(2)), c))
        out.append(PrintedConstant(int(m.group(1)), int(m.group(2)), tuple(terms)))
    return out


def parse_group_file(text: str, source: str = "<group>") -> GroupFile:
    degree = None
    gens = None
    gf = GroupFile(0, [], source=source)
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise InputError(f"{source}:{lineno}: expected 'key: value', got {raw.strip()!r}")
        words = head.split()
        key = words[0].lower()
        if key == "degree":
            try:
                degree = int(rest)
            except ValueError:
                raise InputError(f"{source}:{lineno}: degree must be an integer") from None
            continue
        if degree is None:
            raise InputError(f"{source}:{lineno}: 'degree:' must come first")
        if key == "generators":
            gens = parse_generator_list(rest, degree, lineno)
            continue
        if len(words) != 2:
            raise InputError(f"{source}:{lineno}: {key!r} needs exactly one name")
        name = words[1]
        if key == "subgroup":
            gf.subgroups[name] = parse_generator_list(rest, degree, lineno)
        elif key == "intermediate":
            gf.intermediates.setdefault(name, []).extend(rest.split())
            pending.append((lineno, name))
        elif key == "representatives":
            gf.representatives[name] = parse_generator_list(rest, degree, lineno)
        elif key == "label":
            sig = []
            for part in rest.split(";"):
                if not part.strip():
                    continue
                lhs, eq, rhs = part.rpartition("=")
                if not eq:
                    raise InputError(f"{source}:{lineno}: label entry {part.strip()!r} needs '='")
                try:
                    val = Fraction(rhs.strip())
                except ValueError:
                    raise InputError(f"{source}:{lineno}: label value {rhs.strip()!r} is not rational") from None
                sig.append((parse_cycles(lhs.strip(), degree, lineno), val))
            gf.labels[name] = sig
        elif key == "printed":
            gf.printed.setdefault(name, []).extend(_parse_printed(rest, lineno))
        else:
            raise InputError(f"{source}:{lineno}: unknown key {key!r}")
    if degree is None:
        raise InputError(f"{source}: missing 'degree:' line")
    gf.degree = degree
    gf.generators = gens or []
    for lineno, name in pending:
        for other in gf.intermediates[name]:
            if other not in gf.subgroups and other != "G":
                raise InputError(f"{source}:{lineno}: intermediate subgroup {other!r} is not declared")
    return gf


def _data_path(name: str) -> Path:
    return Path(str(resources.files("heckeq") / "data" / name))


# ---------------------------------------------------------------------------
# job spec and report


@dataclass
class JobSpec:
    group_file: str
    subgroup: str  # a name from the group file, a generator list, or a file
    table: str = "compute"
    module: str = "regular"
    schur: dict = field(default_factory=dict)
    outputs: tuple = STAGES
    name: str = ""

    @classmethod
    def bundled(cls, job: str, **overrides) -> "JobSpec":
        if job not in BUNDLED_JOBS:
            raise InputError(f"unknown bundled job {job!r}; choose from {', '.join(BUNDLED_JOBS)}")
        g, h, t = BUNDLED_JOBS[job]
        spec = cls(str(_data_path(g)), h, str(_data_path(t)), name=job)
        for k, v in overrides.items():
            setattr(spec, k, v)
        return spec


@dataclass
class Report:
    job: str
    group_order: int
    subgroup_order: int
    stages: list
    sections: dict
    notes: list
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


class StageError(HeckeqError):
    """A library error tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, exc: HeckeqError):
        self.stage = stage
        self.cause = exc
        self.exit_code = exc.exit_code
        super().__init__(f"[{stage}] {exc}")


def _frac(x) -> str:
    return str(Fraction(x))


def _load_subgroup(spec: JobSpec, gf: GroupFile, G: PermGroup) -> tuple[str, PermGroup]:
    text = spec.subgroup
    if text in gf.subgroups:
        return text, G.subgroup(gf.subgroups[text])
    p = Path(text)
    if "(" not in text and p.is_file():
        body = " ".join(
            line.split("#", 1)[0].split(":", 1)[-1] for line in p.read_text().splitlines() if line.split("#", 1)[0].strip()
        )
        return p.stem, G.subgroup(parse_generator_list(body, G.degree))
    if "(" in text:
        return "custom", G.subgroup(parse_generator_list(text, G.degree))
    raise InputError(f"subgroup {text!r} is neither a declared name, a file, nor a generator list")


def _stage(name):
    def wrap(fn):
        def inner(*a, **k):
            try:
                return fn(*a, **k)
            except StageError:
                raise
            except HeckeqError as exc:
                raise StageError(name, exc) from exc
        return inner
    return wrap


@_stage("input")
def _prepare(spec: JobSpec):
    path = Path(spec.group_file)
    if not path.is_file():
        raise InputError(f"group file {spec.group_file!r} does not exist")
    gf = parse_group_file(path.read_text(), str(path))
    G = generate(gf.generators, degree=gf.degree)
    hname, H = _load_subgroup(spec, gf, G)
    return gf, G, hname, H


@_stage("chartab")
def _characters(spec: JobSpec, gf: GroupFile, G: PermGroup):
    if spec.table == "compute":
        table = dixon_compute(G)
    else:
        if not Path(spec.table).is_file():
            raise InputError(f"table file {spec.table!r} does not exist")
        table = ingest_table(Path(spec.table), G)
    rcs = galois_orbits(table)
    rcs = apply_labels(rcs, gf.labels, spec.schur)
    return table, rcs


def run(spec: JobSpec) -> Report:
    gf, G, hname, H = _prepare(spec)
    report = Report(
        job=spec.name or f"{Path(spec.group_file).stem}-{hname}",
        group_order=G.order,
        subgroup_order=H.order,
        stages=[s for s in STAGES if s in spec.outputs],
        sections={},
        notes=[],
        violations=[],
    )
    unknown = [s for s in spec.outputs if s not in STAGES]
    if unknown:
        raise StageError("input", InputError(f"unknown output {unknown[0]!r}"))
    if not report.stages:
        return report

    hd = _stage("hecke")(build_hecke)(G, H, gf.representatives.get(hname))
    need_chars = any(s in report.stages for s in ("chartab", "equations", "verify"))
    table = rcs = dec = None
    if need_chars:
        table, rcs = _characters(spec, gf, G)
        dec = _stage("equations")(induced_decomposition)(hd, rcs)

    if "doublecosets" in report.stages:
        report.sections["doublecosets"] = _stage("doublecosets")(_doublecosets_section)(G, H, hd)
    if "hecke" in report.stages:
        report.sections["hecke"] = _stage("hecke")(_hecke_section)(hd, gf.printed.get(hname, []))
        report.notes.append(NOTES["normalization"])
    if "chartab" in report.stages:
        report.sections["chartab"] = _chartab_section(table, rcs)
        report.notes.append(NOTES["schur"])
    overgroups = _overgroups(gf, hname, G)
    if "equations" in report.stages:
        report.sections["equations"] = _stage("equations")(_equations_section)(hd, dec, overgroups)
        report.notes.append(NOTES["orthogonality"])
        report.notes.append(NOTES["prym"])
    if "verify" in report.stages:
        section, violations = _stage("verify")(_verify_section)(spec, hd, dec, overgroups)
        report.sections["verify"] = section
        report.violations.extend(violations)
        report.notes.append(NOTES["homology"])
    return report


def _overgroups(gf: GroupFile, hname: str, G: PermGroup) -> list[tuple[str, PermGroup]]:
    out = [("G", G)]
    for name in gf.intermediates.get(hname, []):
        if name != "G":
            out.append((name, G.subgroup(gf.subgroups[name])))
    return out


def _doublecosets_section(G, H, hd) -> dict:
    dc = hd.dc
    tv = common_transversal(G, H, dc)
    return {
        "count": len(dc.cosets),
        "representatives": [str(x) for x in dc.representatives],
        "sizes": list(dc.sizes),
        "intersection_orders": list(dc.intersection_orders),
        "transversal": [[str(g) for g in part] for part in tv.per_coset],
        "transversal_two_sided": is_two_sided_transversal(G, H, dc, tv),
    }


def _hecke_section(hd, printed) -> dict:
    s = hd.s
    products = []
    for i in range(s):
        for j in range(s):
            c = hd.structure_constants[i][j]
            products.append({"left": i + 1, "right": j + 1, "coefficients": [_frac(x) for x in c]})
    out = {
        "dimension": s,
        "commutative": hd.is_commutative(),
        "masses": [_frac(m) for m in hd.masses()],
        "products": products,
        "conventions": dict(CONVENTION_NOTES),
    }
    if printed:
        out["printed"] = [
            {"claim": str(p), "reproduced_by": list(hits) or ["none"]}
            for p, hits in annotate_printed(hd, printed)
        ]
    return out


def _chartab_section(table: CharacterTable, rcs) -> dict:
    from .arith import format_cyclotomic

    return {
        "classes": [{"representative": str(r), "size": n} for r, n in zip(table.representatives, table.class_sizes)],
        "rows": [[format_cyclotomic(v) for v in row] for row in table.rows],
        "rational": [
            {
                "label": rc.label,
                "rows": list(rc.orbit),
                "field_degree": rc.field_degree,
                "degree": rc.degree_complex,
                "schur_index": rc.schur_index,
                "schur_source": rc.schur_source,
                "traces": [_frac(v) for v in rc.trace_values],
            }
            for rc in rcs
        ],
    }


def _equations_section(hd, dec, overgroups) -> dict:
    present = dec.present
    constituents = []
    for e in dec.entries:
        constituents.append({
            "label": e.character.label,
            "fixed_dim": e.fixed_dim,
            "multiplicity": _frac(e.multiplicity),
            "hecke_dim": e.hecke_dim,
            "present": e.present,
        })
    systems = []
    for e in present:
        rc = e.character
        vals = [v.to_rational() for v in hecke_character_values(hd, rc)]
        item = {
            "label": rc.label,
            "hecke_values": [_frac(v) for v in vals],
        }
        gen = general_equation(hd, rc)
        item["general"] = {"scale": gen.scale, "q_coefficients": list(gen.q_coefficients), "lines": gen.lines()}
        if e.fixed_dim == 1 and rc.field_degree == 1:
            sp = special_equations(hd, rc)
            item["special"] = {
                "relations": [[r.index, r.coefficient] for r in sp.relations],
                "lines": sp.lines(),
                "compact": sp.compact(),
            }
            w = hd.dc.intersection_orders
            item["proof_identity"] = _frac(rc.degree_complex * sum(k * v * v for k, v in zip(w, vals)))
        systems.append(item)
    orth = []
    for a in present:
        for b in present:
            for chi_u in a.character.characters:
                for chi_v in b.character.characters:
                    orth.append({
                        "u": f"{a.character.label}[{chi_u.row}]",
                        "v": f"{b.character.label}[{chi_v.row}]",
                        "proof": _frac(orthogonality_sum(hd, chi_u, chi_v, "proof")),
                        "display": _frac(orthogonality_sum(hd, chi_u, chi_v, "display")),
                    })
    pryms = []
    for name, K in overgroups:
        if not hd.subgroup.is_subgroup_of(K):
            continue
        dcK = double_cosets(K, hd.subgroup)
        tv = common_transversal(K, hd.subgroup, dcK)
        fixed, comp = prym_equations(K, hd.subgroup, tv, hd.group, dcK)
        pryms.append({
            "overgroup": name,
            "index": K.order // hd.subgroup.order,
            "fixed": fixed.lines(),
            "complement": comp.lines(),
        })
    return {
        "constituents": constituents,
        "algebra_dimension": dec.algebra_dimension(),
        "systems": systems,
        "orthogonality": orth,
        "prym": pryms,
    }


def _modules(spec: JobSpec, hd):
    G = hd.group
    if spec.module == "regular":
        return [("regular", regular_module(G))]
    if spec.module == "coset":
        return [("coset", permutation_module(G, hd.subgroup))]
    if spec.module == "both":
        return [("regular", regular_module(G)), ("coset", permutation_module(G, hd.subgroup))]
    p = Path(spec.module)
    if not p.is_file():
        raise InputError(f"module {spec.module!r} is not regular, coset, both or an existing file")
    return [(p.name, load_module(p, G))]


def _verify_section(spec, hd, dec, overgroups) -> tuple[dict, list]:
    out = {}
    violations = []

    def record(rep, key_list):
        key_list.append({
            "subject": rep.subject,
            "passed": rep.passed,
            "clauses": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.clauses],
            "dims": {k: v for k, v in rep.dims},
        })
        if not rep.passed:
            violations.append(rep.subject)

    for mname, M in _modules(spec, hd):
        entries = []
        dims, rep = isotypical_dims(hd, dec, M)
        record(rep, entries)
        record(verify_complement(hd.unit, M, subject="A_H and its complement"), entries)
        for e in dec.present:
            rc = e.character
            f = hecke_idempotent(hd, rc)
            record(verify_complement(f, M, hd.unit, subject=f"{rc.label} inside A_H"), entries)
            record(verify_equation_system(general_equation(hd, rc), hd, M), entries)
            if e.fixed_dim == 1 and rc.field_degree == 1:
                record(verify_equation_system(special_equations(hd, rc), hd, M), entries)
        for name, K in overgroups:
            if not hd.subgroup.is_subgroup_of(K):
                continue
            dcK = double_cosets(K, hd.subgroup)
            tv = common_transversal(K, hd.subgroup, dcK)
            for es in prym_equations(K, hd.subgroup, tv, hd.group, dcK):
                r = verify_equation_system(es, hd, M)
                r = type(r)(f"{r.subject} over {name}", r.clauses, r.dims)
                record(r, entries)
        coincidences = _coincidences(hd, dec, overgroups, M)
        out[mname] = {
            "dimension": M.dimension,
            "isotypical_dims": [[l, d] for l, d in dims],
            "checks": entries,
            "complement_matches": coincidences,
        }
    return out, violations


def _coincidences(hd, dec, overgroups, M) -> list:
    """Which isotypical pieces coincide with a relative complement Im(p_H - p_K)."""
    from .homology import image_component

    found = []
    G = hd.group
    images = {}
    for e in dec.present:
        images[e.character.label] = image_component(hecke_idempotent(hd, e.character), M).space
    for name, K in overgroups:
        if not hd.subgroup.is_subgroup_of(K) or K.order == hd.subgroup.order:
            continue
        comp = image_component(hd.unit - averaging_idempotent(K, G), M).space
        for label, sp in images.items():
            if sp == comp:
                found.append({"character": label, "overgroup": name})
    return found


# ---------------------------------------------------------------------------
# emission


def emit(report: Report, fmt: str = "human") -> str:
    if fmt == "machine":
        return f"schema: {SCHEMA}\n" + json.dumps(asdict(report), sort_keys=True, indent=1) + "\n"
    if fmt != "human":
        raise InputError(f"unknown format {fmt!r}")
    return _render_human(report)


def parse_machine(text: str) -> Report:
    head, _, body = text.partition("\n")
    if head.strip() != f"schema: {SCHEMA}":
        raise InputError(f"unsupported machine header {head.strip()!r}")
    data = json.loads(body)
    return Report(**data)


def _render_human(r: Report) -> str:
    out = [f"job {r.job}: |G| = {r.group_order}, |H| = {r.subgroup_order}"]
    sec = r.sections
    if "doublecosets" in sec:
        d = sec["doublecosets"]
        out.append("")
        out.append(f"double cosets ({d['count']}):")
        for i, (x, n, k) in enumerate(zip(d["representatives"], d["sizes"], d["intersection_orders"]), 1):
            out.append(f"  H_{i} = H {x} H  size {n}  |H cap xHx^-1| = {k}")
        out.append(f"  two-sided transversal: {'; '.join(' '.join(p) for p in d['transversal'])}")
    if "hecke" in sec:
        h = sec["hecke"]
        out.append("")
        out.append(f"Hecke algebra: dimension {h['dimension']}, {'commutative' if h['commutative'] else 'noncommutative'}")
        for p in h["products"]:
            if p["left"] == 1 or p["right"] < p["left"]:
                continue
            terms = [f"{c}q_{k}" if c != "1" else f"q_{k}" for k, c in enumerate(p["coefficients"], 1) if c != "0"]
            rhs = " + ".join(terms).replace("+ -", "- ") or "0"
            out.append(f"  q_{p['left']}q_{p['right']} = {rhs}")
        if "printed" in h:
            out.append("  printed constants, by the convention that reproduces them:")
            for p in h["printed"]:
                out.append(f"    {p['claim']}: {', '.join(p['reproduced_by'])}")
            for name in CONVENTIONS:
                out.append(f"    {name}: {h['conventions'][name]}")
    if "chartab" in sec:
        c = sec["chartab"]
        out.append("")
        out.append("classes: " + ", ".join(f"{x['representative']}[{x['size']}]" for x in c["classes"]))
        for i, row in enumerate(c["rows"]):
            out.append(f"  chi_{i}: " + ", ".join(row))
        for rc in c["rational"]:
            out.append(
                f"  {rc['label']}: rows {rc['rows']}, [K:Q] = {rc['field_degree']}, "
                f"Schur index {rc['schur_index']} ({rc['schur_source']}), traces {', '.join(rc['traces'])}"
            )
    if "equations" in sec:
        e = sec["equations"]
        out.append("")
        out.append("induced representation:")
        for c in e["constituents"]:
            if c["present"]:
                out.append(f"  {c['label']}: dim V^H = {c['fixed_dim']}, a = {c['multiplicity']}, Hecke dim {c['hecke_dim']}")
        for s in e["systems"]:
            out.append("")
            out.append(f"{s['label']}: chi(q_i) = ({', '.join(s['hecke_values'])})")
            if "special" in s:
                for line in s["special"]["lines"]:
                    out.append(f"  {line}")
                out.append(f"  {{z in A_H | {s['special']['compact']}}}_0")
            for line in s["general"]["lines"]:
                out.append(f"  {line}")
        bad = [o for o in e["orthogonality"] if (o["u"] == o["v"]) != (o["proof"] != "0")]
        out.append("")
        out.append(f"orthogonality: {len(e['orthogonality'])} pairs, {len(bad)} unexpected")
        for o in e["orthogonality"]:
            if o["u"] == o["v"]:
                out.append(f"  {o['u']}: {o['proof']} (display weight gives {o['display']})")
        for p in e["prym"]:
            out.append(f"complement relative to {p['overgroup']} (index {p['index']}):")
            out.append(f"  fixed: {p['fixed'][0]}")
            out.append(f"  complement: {p['complement'][0]}")
    if "verify" in sec:
        for mname, v in sec["verify"].items():
            out.append("")
            out.append(f"homology on {mname} module (dimension {v['dimension']}):")
            out.append("  isotypical dims: " + ", ".join(f"{l} {d}" for l, d in v["isotypical_dims"]))
            for c in v["checks"]:
                out.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['subject']}")
            for m in v["complement_matches"]:
                out.append(f"  image of f for {m['character']} equals Im(p_H - p_{m['overgroup']})")
    if r.notes:
        out.append("")
        out.append("notes:")
        out.extend(f"  - {n}" for n in r.notes)
    if r.violations:
        out.append("")
        out.append("THEOREM VIOLATIONS: " + "; ".join(r.violations))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heckeq", description="Hecke algebra equations for isotypical components.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for cmd in COMMAND_STAGES:
        sp = sub.add_parser(cmd)
        sp.add_argument("--job", choices=sorted(BUNDLED_JOBS), help="bundled example job")
        sp.add_argument("--group", help="group file")
        sp.add_argument("--subgroup", help="subgroup name, file, or generator list")
        sp.add_argument("--table", help="character table file or 'compute'")
        sp.add_argument("--module", default="regular", help="regular, coset, both, or a module file")
        sp.add_argument("--schur", action="append", default=[], metavar="NAME=INT")
        sp.add_argument("--format", choices=("human", "machine"), default="human")
        sp.add_argument("--out", help="write the report here instead of stdout")
    sub.add_parser("jobs", help="list bundled jobs")
    return p


def _parse_schur(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        name, eq, val = item.partition("=")
        try:
            if not eq:
                raise ValueError
            out[name.strip()] = int(val)
        except ValueError:
            raise InputError(f"--schur expects NAME=INT, got {item!r}") from None
    return out


def spec_from_args(args) -> JobSpec:
    schur = _parse_schur(args.schur)
    outputs = COMMAND_STAGES[args.command]
    if args.job:
        spec = JobSpec.bundled(args.job)
        if args.group:
            raise InputError("--job and --group are exclusive")
        if args.subgroup:
            spec.subgroup = args.subgroup
    else:
        if not args.group or not args.subgroup:
            raise InputError("give --job, or both --group and --subgroup")
        spec = JobSpec(args.group, args.subgroup)
    if args.table:
        spec.table = args.table
    spec.module = args.module
    spec.schur = schur
    spec.outputs = outputs
    return spec


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "jobs":
        for name, (g, h, t) in BUNDLED_JOBS.items():
            print(f"{name}: group {g}, subgroup {h}, table {t}")
        return 0
    try:
        spec = spec_from_args(args)
        report = run(spec)
        text = emit(report, args.format)
    except HeckeqError as exc:
        stage = getattr(exc, "stage", "input")
        cause = getattr(exc, "cause", exc)
        print(f"error [{stage}]: {cause}", file=sys.stderr)
        if isinstance(cause, CycleSyntaxError) and cause.column is not None:
            print(f"  {cause.text}", file=sys.stderr)
            print(f"  {' ' * (cause.column - 1)}^", file=sys.stderr)
        return exc.exit_code
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not report.ok:
        print(f"theorem violation: {'; '.join(report.violations)}", file=sys.stderr)
        return TheoremViolation.exit_code
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
