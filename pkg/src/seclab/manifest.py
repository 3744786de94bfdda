"""A line-oriented manifest format for describing and running instances.

A manifest declares groups, homomorphisms, extensions, coefficient systems,
local families, and local sections, then queues jobs against them.  Parsing
is strict — every error carries its line number — and serialization is
canonical, so a generated manifest is byte-stable and round-trips.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cohomology import Cocycle, GammaGroup, h1
from .errors import ManifestSyntaxError, UnknownName, ValidationError
from .extensions import Extension, enumerate_sections, make_extension, pushout
from .groups import (
    FiniteGroup,
    GroupHom,
    automorphism_group,
    compose,
    generating_set,
    group_from_permutations,
    group_from_table,
    hom_from_generator_images,
    image,
    subgroup_generated,
    union_of_conjugates,
)
from .localglobal import (
    LocalFamily,
    LocalSections,
    check_density,
    decide_a,
    decide_a_doubleprime,
    decide_a_prime,
    decide_b,
    decide_c,
    diagonal_fibre,
    standard_corpus,
    tower_limit_sections,
    verify_equivalences,
)

__all__ = [
    "Job",
    "ManifestProgram",
    "ManifestBuilder",
    "parse_manifest",
    "run_program",
    "generate_corpus",
]

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.:/-]*$")
_CYCLES = re.compile(r"\(([^()]*)\)")

_DECIDE_VARIANTS = ("a", "a'", "a''", "b", "c")
_JOB_OPTIONS = {
    "sections": (),
    "h1": (),
    "pushout": ("gens",),
    "decide": (),
    "density": (),
    "fibre": ("coeff", "alpha"),
    "jordan": ("gens",),
    "verify": (),
    "tower": ("exts", "maps"),
}


@dataclass(frozen=True)
class Job:
    """One queued command: what to run, against which named object."""

    line: int
    command: str
    variant: Optional[str]
    target: str
    options: Tuple[Tuple[str, str], ...]

    def option(self, key: str) -> Optional[str]:
        for k, v in self.options:
            if k == key:
                return v
        return None


@dataclass
class ManifestProgram:
    """Everything a manifest declared, resolved into live objects."""

    groups: Dict[str, FiniteGroup] = field(default_factory=dict)
    auts: Dict[str, Tuple[GroupHom, ...]] = field(default_factory=dict)
    homs: Dict[str, GroupHom] = field(default_factory=dict)
    extensions: Dict[str, Extension] = field(default_factory=dict)
    coeffs: Dict[str, GammaGroup] = field(default_factory=dict)
    families: Dict[str, LocalFamily] = field(default_factory=dict)
    local_sections: Dict[str, LocalSections] = field(default_factory=dict)
    jobs: List[Job] = field(default_factory=list)

    def _all_names(self):
        for table in (
            self.groups,
            self.homs,
            self.extensions,
            self.coeffs,
            self.families,
            self.local_sections,
        ):
            yield from table


# ---------------------------------------------------------------------------
# parsing


def _fail(line_no: int, message: str) -> ManifestSyntaxError:
    return ManifestSyntaxError(f"line {line_no}: {message}")


def _check_name(line_no: int, name: str, program: ManifestProgram) -> str:
    if not _NAME.match(name):
        raise _fail(line_no, f"bad name {name!r}")
    if name in set(program._all_names()):
        raise _fail(line_no, f"duplicate name {name!r}")
    return name


def _lookup(table: Dict[str, object], name: str, line_no: int, kind: str):
    if name not in table:
        raise UnknownName(f"line {line_no}: no {kind} named {name!r}")
    return table[name]


def _parse_perm_token(token: str, degree: int, line_no: int) -> Tuple[int, ...]:
    if not _CYCLES.findall(token) and token != "()":
        raise _fail(line_no, f"expected cycle notation, got {token!r}")
    img = list(range(degree))
    touched = set()
    for body in _CYCLES.findall(token):
        if not body.strip():
            continue
        try:
            points = [int(p) for p in body.split(",")]
        except ValueError:
            raise _fail(line_no, f"bad cycle {body!r}") from None
        for p in points:
            if not 0 <= p < degree:
                raise _fail(line_no, f"cycle point {p} outside 0..{degree - 1}")
            if p in touched:
                raise _fail(line_no, f"point {p} repeated across cycles")
            touched.add(p)
        for a, b in zip(points, points[1:] + points[:1]):
            img[a] = b
    return tuple(img)


def _parse_json_tail(tokens: Sequence[str], line_no: int, what: str):
    blob = " ".join(tokens)
    try:
        return json.loads(blob)
    except json.JSONDecodeError:
        raise _fail(line_no, f"bad JSON for {what}: {blob!r}") from None


def _rewrap(line_no: int, err: ValidationError) -> ValidationError:
    return type(err)(f"line {line_no}: {err}")


def _parse_group(tokens: List[str], line_no: int, program: ManifestProgram) -> None:
    if len(tokens) < 3:
        raise _fail(line_no, "group needs a name and a form")
    name = _check_name(line_no, tokens[1], program)
    form = tokens[2]
    if form == "table":
        rows = _parse_json_tail(tokens[3:], line_no, "table")
        program.groups[name] = group_from_table(rows, label=name)
    elif form == "perm":
        if len(tokens) < 5:
            raise _fail(line_no, "perm needs a degree and generators")
        try:
            degree = int(tokens[3])
        except ValueError:
            raise _fail(line_no, f"bad degree {tokens[3]!r}") from None
        gens = [_parse_perm_token(t, degree, line_no) for t in tokens[4:]]
        program.groups[name] = group_from_permutations(degree, gens, label=name)[0]
    elif form == "aut":
        if len(tokens) != 4:
            raise _fail(line_no, "aut needs exactly one source group")
        src = _lookup(program.groups, tokens[3], line_no, "group")
        aut, auts = automorphism_group(src)
        program.groups[name] = aut
        program.auts[name] = auts
    else:
        raise _fail(line_no, f"unknown group form {form!r}")


def _parse_hom(tokens: List[str], line_no: int, program: ManifestProgram) -> None:
    if len(tokens) < 4:
        raise _fail(line_no, "hom needs a name, source, target, and images")
    name = _check_name(line_no, tokens[1], program)
    src = _lookup(program.groups, tokens[2], line_no, "group")
    tgt = _lookup(program.groups, tokens[3], line_no, "group")
    images = _parse_json_tail(tokens[4:] or ["[]"], line_no, "generator images")
    if not isinstance(images, list) or not all(isinstance(i, int) for i in images):
        raise _fail(line_no, "generator images must be a list of integers")
    program.homs[name] = hom_from_generator_images(src, tgt, tuple(images))


def _parse_extension(tokens: List[str], line_no: int, program: ManifestProgram) -> None:
    if len(tokens) != 7:
        raise _fail(line_no, "extension needs name, A, E, G, iota, pi")
    name = _check_name(line_no, tokens[1], program)
    a = _lookup(program.groups, tokens[2], line_no, "group")
    e = _lookup(program.groups, tokens[3], line_no, "group")
    g = _lookup(program.groups, tokens[4], line_no, "group")
    iota = _lookup(program.homs, tokens[5], line_no, "hom")
    pi = _lookup(program.homs, tokens[6], line_no, "hom")
    if iota.source != a or iota.target != e:
        raise _fail(line_no, f"{tokens[5]} does not map {tokens[2]} into {tokens[3]}")
    if pi.source != e or pi.target != g:
        raise _fail(line_no, f"{tokens[6]} does not map {tokens[3]} onto {tokens[4]}")
    program.extensions[name] = make_extension(iota, pi)


def _parse_coeff(tokens: List[str], line_no: int, program: ManifestProgram) -> None:
    if len(tokens) != 4:
        raise _fail(line_no, "coeff needs a name, a module group, and an action hom")
    name = _check_name(line_no, tokens[1], program)
    m = _lookup(program.groups, tokens[2], line_no, "group")
    act = _lookup(program.homs, tokens[3], line_no, "hom")
    candidates = [
        n
        for n, g in program.groups.items()
        if g == act.target
        and n in program.auts
        and program.auts[n]
        and program.auts[n][0].source == m
    ]
    if not candidates:
        raise _fail(
            line_no,
            f"{tokens[3]} must land in the aut-declared group of {tokens[2]}",
        )
    auts = program.auts[candidates[0]]
    rows = tuple(auts[act.map[g]].map for g in act.source.elements)
    program.coeffs[name] = GammaGroup(act.source, m, rows)


def _parse_block(
    lines: Sequence[Tuple[int, List[str]]],
    start: int,
    inner_keyword: str,
) -> Tuple[List[Tuple[int, List[str]]], int]:
    line_no, tokens = lines[start]
    if tokens[-1] != "{":
        raise _fail(line_no, "block must open with '{' at end of line")
    body = []
    i = start + 1
    while i < len(lines):
        inner_no, inner = lines[i]
        if inner == ["}"]:
            return body, i
        if inner[0] != inner_keyword:
            raise _fail(inner_no, f"expected {inner_keyword!r} or '}}', got {inner[0]!r}")
        body.append((inner_no, inner))
        i += 1
    raise _fail(line_no, "unterminated block")


def parse_manifest(text: str) -> ManifestProgram:
    """Parse manifest text into resolved objects and queued jobs."""
    program = ManifestProgram()
    lines: List[Tuple[int, List[str]]] = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((i, stripped.split()))
    idx = 0
    while idx < len(lines):
        line_no, tokens = lines[idx]
        keyword = tokens[0]
        try:
            if keyword == "group":
                _parse_group(tokens, line_no, program)
            elif keyword == "hom":
                _parse_hom(tokens, line_no, program)
            elif keyword == "extension":
                _parse_extension(tokens, line_no, program)
            elif keyword == "coeff":
                _parse_coeff(tokens, line_no, program)
            elif keyword == "family":
                if len(tokens) != 4 or tokens[3] != "{":
                    raise _fail(line_no, "family needs a name, a base group, and '{'")
                name = _check_name(line_no, tokens[1], program)
                gamma = _lookup(program.groups, tokens[2], line_no, "group")
                body, idx = _parse_block(lines, idx, "local")
                thetas = []
                for inner_no, inner in body:
                    if len(inner) != 3:
                        raise _fail(inner_no, "local needs a group and a hom")
                    src = _lookup(program.groups, inner[1], inner_no, "group")
                    theta = _lookup(program.homs, inner[2], inner_no, "hom")
                    if theta.source != src:
                        raise _fail(inner_no, f"{inner[2]} does not start from {inner[1]}")
                    thetas.append(theta)
                program.families[name] = LocalFamily(gamma, tuple(thetas))
            elif keyword == "sections":
                if len(tokens) != 4 or tokens[3] != "{":
                    raise _fail(line_no, "sections needs a name, an extension, and '{'")
                name = _check_name(line_no, tokens[1], program)
                ext = _lookup(program.extensions, tokens[2], line_no, "extension")
                body, idx = _parse_block(lines, idx, "s")
                secs = []
                for inner_no, inner in body:
                    if len(inner) != 2:
                        raise _fail(inner_no, "s needs exactly one hom name")
                    secs.append(_lookup(program.homs, inner[1], inner_no, "hom"))
                thetas = tuple(compose(ext.pi, s) for s in secs)
                fam = LocalFamily(ext.Gamma, thetas)
                program.local_sections[name] = LocalSections(ext, fam, tuple(secs))
            elif keyword == "job":
                program.jobs.append(_parse_job(tokens, line_no))
            else:
                raise _fail(line_no, f"unknown keyword {keyword!r}")
        except ValidationError as err:
            if str(err).startswith("line "):
                raise
            raise _rewrap(line_no, err) from err
        idx += 1
    return program


def _parse_job(tokens: List[str], line_no: int) -> Job:
    if len(tokens) < 3:
        raise _fail(line_no, "job needs a command and a target")
    command = tokens[1]
    if command not in _JOB_OPTIONS:
        raise _fail(line_no, f"unknown job command {command!r}")
    variant = None
    rest = tokens[2:]
    if command == "decide":
        if len(rest) < 2:
            raise _fail(line_no, "decide needs a variant and a target")
        variant = rest[0]
        if variant not in _DECIDE_VARIANTS:
            raise _fail(line_no, f"unknown decide variant {variant!r}")
        rest = rest[1:]
    target = rest[0]
    options = []
    for tok in rest[1:]:
        if "=" not in tok:
            raise _fail(line_no, f"expected key=value, got {tok!r}")
        key, value = tok.split("=", 1)
        if key not in _JOB_OPTIONS[command]:
            raise _fail(line_no, f"job {command!r} takes no option {key!r}")
        options.append((key, value))
    return Job(line_no, command, variant, target, tuple(options))


# ---------------------------------------------------------------------------
# running


def _int_list(value: str, line_no: int, what: str) -> List[int]:
    if not value:
        return []
    try:
        return [int(v) for v in value.split(",")]
    except ValueError:
        raise _fail(line_no, f"bad {what} list {value!r}") from None


def _run_job(job: Job, program: ManifestProgram) -> Dict[str, object]:
    if job.command == "sections":
        ext = _lookup(program.extensions, job.target, job.line, "extension")
        report = enumerate_sections(ext)
        return {
            "sections": report.count,
            "classes_mod_kernel": [list(c) for c in report.classes_mod_A],
            "classes_mod_middle": [list(c) for c in report.classes_mod_E],
        }
    if job.command == "h1":
        coeff = _lookup(program.coeffs, job.target, job.line, "coeff")
        classes = h1(coeff)
        return {
            "cocycles": len(classes.cocycles),
            "classes": classes.class_count,
            "representatives": [list(r.values) for r in classes.representatives],
        }
    if job.command == "pushout":
        ext = _lookup(program.extensions, job.target, job.line, "extension")
        gens = _int_list(job.option("gens") or "", job.line, "generator")
        sub = subgroup_generated(ext.A, gens)
        smaller, _ = pushout(ext, sub)
        return {
            "kernel_order": smaller.A.order,
            "middle_order": smaller.E.order,
            "base_order": smaller.Gamma.order,
            "splits": bool(enumerate_sections(smaller).sections),
        }
    if job.command == "decide":
        ls = _lookup(program.local_sections, job.target, job.line, "sections")
        if job.variant == "a":
            check = decide_a(ls, standard_corpus(ls))
        elif job.variant == "a'":
            check = decide_a_prime(ls)
        elif job.variant == "a''":
            check = decide_a_doubleprime(ls)
        else:
            witness = decide_b(ls) if job.variant == "b" else decide_c(ls)
            return {
                "variant": job.variant,
                "holds": witness is not None,
                "witness": list(witness.map) if witness else None,
            }
        result: Dict[str, object] = {
            "variant": job.variant,
            "holds": check.holds,
            "classes_checked": check.classes_checked,
        }
        if not check.holds:
            result["failing_provenance"] = check.failing_entry.provenance
            result["failing_module_order"] = check.failing_entry.coeff.M.order
            result["failing_class"] = list(check.failing_class.values)
        return result
    if job.command == "density":
        if job.target in program.families:
            fam = program.families[job.target]
        elif job.target in program.local_sections:
            fam = program.local_sections[job.target].family
        else:
            raise UnknownName(f"line {job.line}: no family or sections named {job.target!r}")
        return {"dense": check_density(fam)}
    if job.command == "fibre":
        fam = _lookup(program.families, job.target, job.line, "family")
        coeff = _lookup(program.coeffs, job.option("coeff") or "", job.line, "coeff")
        values = _int_list(job.option("alpha") or "", job.line, "cocycle value")
        alpha = Cocycle(coeff, tuple(values))
        fib = diagonal_fibre(alpha, fam)
        return {"size": len(fib), "classes": [list(b.values) for b in fib]}
    if job.command == "jordan":
        grp = _lookup(program.groups, job.target, job.line, "group")
        gens = _int_list(job.option("gens") or "", job.line, "generator")
        cover = union_of_conjugates(grp, subgroup_generated(grp, gens))
        return {
            "subgroup_order": len(subgroup_generated(grp, gens).elements),
            "union_size": len(cover.union),
            "bound": cover.bound,
            "covers": cover.covers,
        }
    if job.command == "verify":
        ls = _lookup(program.local_sections, job.target, job.line, "sections")
        rep = verify_equivalences(ls)
        return {
            "a": rep.a.holds,
            "a_prime": rep.a_prime.holds,
            "a_doubleprime": rep.a_doubleprime.holds,
            "b": rep.holds_b,
            "c": rep.holds_c,
            "density": rep.density,
            "split": rep.split,
            "implications": [[name, ok] for name, ok in rep.implications],
            "all_implications_hold": rep.all_implications_hold,
        }
    if job.command == "tower":
        ls = _lookup(program.local_sections, job.target, job.line, "sections")
        ext_names = (job.option("exts") or "").split(",") if job.option("exts") else []
        map_names = (job.option("maps") or "").split(",") if job.option("maps") else []
        levels = [
            _lookup(program.extensions, n, job.line, "extension") for n in ext_names
        ]
        maps = [_lookup(program.homs, n, job.line, "hom") for n in map_names]
        res = tower_limit_sections(levels, maps, ls)
        return {
            "level_sizes": list(res.level_sizes),
            "empty_levels": list(res.empty_levels),
            "chain": [list(u.map) for u in res.chain] if res.chain else None,
        }
    raise _fail(job.line, f"unknown job command {job.command!r}")


def run_program(
    program: ManifestProgram, timing: bool = True
) -> Tuple[List[Dict[str, object]], int]:
    """Run every queued job in order.

    Returns per-job result dictionaries and the process exit code: 0 when
    clean, 2 when a verify job saw an implication fail.
    """
    results = []
    exit_code = 0
    for job in program.jobs:
        started = time.perf_counter()
        try:
            outcome = _run_job(job, program)
        except ValidationError as err:
            if str(err).startswith("line "):
                raise
            raise _rewrap(job.line, err) from err
        elapsed = time.perf_counter() - started
        header: Dict[str, object] = {
            "job": job.command,
            "target": job.target,
            "line": job.line,
        }
        if job.variant is not None:
            header["variant"] = job.variant
        header.update(outcome)
        if timing:
            header["elapsed"] = round(elapsed, 6)
        results.append(header)
        if job.command == "verify" and not outcome["all_implications_hold"]:
            exit_code = 2
    return results, exit_code


# ---------------------------------------------------------------------------
# building and generating


class ManifestBuilder:
    """Accumulates declarations with canonical names and emits manifest text.

    Equal objects are declared once and reuse their first name, so builder
    output is deterministic for a deterministic call sequence.
    """

    def __init__(self) -> None:
        self._lines: List[str] = []
        self._groups: Dict[FiniteGroup, str] = {}
        self._auts: Dict[FiniteGroup, str] = {}
        self._homs: Dict[GroupHom, str] = {}
        self._extensions: Dict[Extension, str] = {}
        self._coeffs: Dict[GammaGroup, str] = {}
        self._families: Dict[LocalFamily, str] = {}
        self._sections: Dict[LocalSections, str] = {}
        self._used: set = set()

    def comment(self, text: str) -> None:
        self._lines.append(f"# {text}")

    def has_group(self, g: FiniteGroup) -> bool:
        return g in self._groups

    def _name(self, hint: Optional[str], prefix: str) -> str:
        base = re.sub(r"[^A-Za-z0-9_.:/-]", "", hint or "")
        if not base or not _NAME.match(base):
            base = prefix
        name, n = base, 1
        while name in self._used:
            name = f"{base}_{n}"
            n += 1
        self._used.add(name)
        return name

    def add_group(self, g: FiniteGroup) -> str:
        if g in self._groups:
            return self._groups[g]
        name = self._name(g.label, "g")
        blob = json.dumps([list(row) for row in g.table], separators=(",", ":"))
        self._lines.append(f"group {name} table {blob}")
        self._groups[g] = name
        return name

    def add_aut_group(self, m: FiniteGroup) -> str:
        if m in self._auts:
            return self._auts[m]
        m_name = self.add_group(m)
        name = self._name(f"Aut_{m_name}", "aut")
        self._lines.append(f"group {name} aut {m_name}")
        self._auts[m] = name
        return name

    def add_hom(self, h: GroupHom, hint: Optional[str] = None) -> str:
        if h in self._homs:
            return self._homs[h]
        src = self.add_group(h.source)
        tgt = self.add_group(h.target)
        images = [h.map[x] for x in generating_set(h.source)]
        name = self._name(hint, "f")
        blob = json.dumps(images, separators=(",", ":"))
        self._lines.append(f"hom {name} {src} {tgt} {blob}")
        self._homs[h] = name
        return name

    def _add_aut_valued_hom(self, m: FiniteGroup, coeff: GammaGroup) -> str:
        aut, auts = automorphism_group(m)
        aut_name = self.add_aut_group(m)
        index = {a.map: i for i, a in enumerate(auts)}
        act = GroupHom(
            coeff.gamma, aut, tuple(index[row] for row in coeff.action)
        )
        if act in self._homs:
            return self._homs[act]
        src = self.add_group(coeff.gamma)
        images = [act.map[x] for x in generating_set(coeff.gamma)]
        name = self._name(None, "act")
        blob = json.dumps(images, separators=(",", ":"))
        self._lines.append(f"hom {name} {src} {aut_name} {blob}")
        self._homs[act] = name
        return name

    def add_extension(self, ext: Extension, hint: Optional[str] = None) -> str:
        if ext in self._extensions:
            return self._extensions[ext]
        a = self.add_group(ext.A)
        e = self.add_group(ext.E)
        g = self.add_group(ext.Gamma)
        iota = self.add_hom(ext.iota)
        pi = self.add_hom(ext.pi)
        name = self._name(hint, "ext")
        self._lines.append(f"extension {name} {a} {e} {g} {iota} {pi}")
        self._extensions[ext] = name
        return name

    def add_coeff(self, coeff: GammaGroup, hint: Optional[str] = None) -> str:
        if coeff in self._coeffs:
            return self._coeffs[coeff]
        m = self.add_group(coeff.M)
        act = self._add_aut_valued_hom(coeff.M, coeff)
        name = self._name(hint, "w")
        self._lines.append(f"coeff {name} {m} {act}")
        self._coeffs[coeff] = name
        return name

    def add_family(self, fam: LocalFamily, hint: Optional[str] = None) -> str:
        if fam in self._families:
            return self._families[fam]
        gamma = self.add_group(fam.gamma)
        parts = [
            (self.add_group(theta.source), self.add_hom(theta))
            for theta in fam.thetas
        ]
        name = self._name(hint, "fam")
        self._lines.append(f"family {name} {gamma} {{")
        for src, theta in parts:
            self._lines.append(f"  local {src} {theta}")
        self._lines.append("}")
        self._families[fam] = name
        return name

    def add_sections(self, ls: LocalSections, hint: Optional[str] = None) -> str:
        if ls in self._sections:
            return self._sections[ls]
        ext = self.add_extension(ls.ext)
        parts = [self.add_hom(s) for s in ls.sections]
        name = self._name(hint, "ls")
        self._lines.append(f"sections {name} {ext} {{")
        for s in parts:
            self._lines.append(f"  s {s}")
        self._lines.append("}")
        self._sections[ls] = name
        return name

    def add_job(
        self,
        command: str,
        target: str,
        variant: Optional[str] = None,
        **options: str,
    ) -> None:
        parts = ["job", command]
        if variant is not None:
            parts.append(variant)
        parts.append(target)
        for key in sorted(options):
            parts.append(f"{key}={options[key]}")
        self._lines.append(" ".join(parts))

    def text(self) -> str:
        return "\n".join(self._lines) + "\n"


def generate_corpus(max_order: int = 12, seed: int = 0) -> str:
    """Emit a deterministic manifest exercising every job type.

    Identical arguments give byte-identical text: all content is drawn from
    the preset catalog and seeded generators.
    """
    from .catalog import (
        preset_groups,
        seeded_instances,
        seeded_transport_pairs,
    )
    from .cohomology import constant_coefficients
    from .groups import cyclic_group, direct_product, identity_hom

    b = ManifestBuilder()
    b.comment(f"generated corpus: max order {max_order}, seed {seed}")

    b.comment("covering estimates for every preset group")
    for g in preset_groups(max_order):
        if g.order == 1 or b.has_group(g):
            continue
        name = b.add_group(g)
        b.add_job("jordan", name, gens=str(g.elements[1]))

    b.comment("seeded local-section instances")
    instances = seeded_instances(seed, 6, min(max_order, 12))
    for i, ls in enumerate(instances):
        name = b.add_sections(ls, f"inst{i}")
        b.add_job("sections", b.add_extension(ls.ext))
        b.add_job("decide", name, "a'")
        b.add_job("decide", name, "b")
        b.add_job("decide", name, "c")
        b.add_job("density", name)
    for i, ls in enumerate(instances[:2]):
        b.add_job("verify", b.add_sections(ls))

    b.comment("dense families for transport checks")
    for fam, _sub in seeded_transport_pairs(seed, 3, min(max_order, 12)):
        b.add_job("density", b.add_family(fam))

    if max_order >= 6:
        b.comment("cohomology of the smallest nonabelian base")
        s3 = next(g for g in preset_groups(max_order) if g.label == "S3")
        for m in (cyclic_group(2), cyclic_group(3)):
            coeff = constant_coefficients(s3, m)
            cname = b.add_coeff(coeff)
            b.add_job("h1", cname)
        coeff2 = constant_coefficients(s3, cyclic_group(2))
        reps = h1(coeff2).representatives
        fam = _class_family(s3, b)
        alpha = reps[-1]
        b.add_job(
            "fibre",
            fam,
            alpha=",".join(str(v) for v in alpha.values),
            coeff=b.add_coeff(coeff2),
        )

    if max_order >= 9:
        b.comment("a tower whose top level is empty")
        c3 = cyclic_group(3)
        e2 = direct_product(c3, c3)
        pi = GroupHom(e2, c3, tuple(x // 3 for x in e2.elements))
        ext = make_extension(GroupHom(c3, e2, (0, 1, 2)), pi)
        fam = LocalFamily(c3, (identity_hom(c3), identity_hom(c3)))
        ls = LocalSections(
            ext, fam, (GroupHom(c3, e2, (0, 3, 6)), GroupHom(c3, e2, (0, 4, 8)))
        )
        from .localglobal import pushout_tower
        from .groups import full_subgroup

        levels, maps = pushout_tower(ext, [full_subgroup(c3)])
        ls_name = b.add_sections(ls, "flat")
        ext_names = ",".join(b.add_extension(lv) for lv in levels)
        map_names = ",".join(b.add_hom(q) for q in maps)
        b.add_job("tower", ls_name, exts=ext_names, maps=map_names)
        b.add_job("pushout", b.add_extension(ext), gens="1")

    return b.text()


def _class_family(gamma: FiniteGroup, b: ManifestBuilder) -> str:
    from .groups import conjugacy_classes, subgroup_as_group, subgroup_generated

    thetas = []
    for cls in conjugacy_classes(gamma):
        sub = subgroup_generated(gamma, [cls[0]])
        g_i, inc = subgroup_as_group(sub)
        thetas.append(GroupHom(g_i, gamma, inc.map))
    return b.add_family(LocalFamily(gamma, tuple(thetas)))
