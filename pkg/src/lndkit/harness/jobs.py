"""Job documents: a line-oriented format describing a ring, a subalgebra,
derivations, and a list of tasks to run.

Format (one record per line, ``#`` comments and blank lines ignored)::

    job <identifier>
    ring coeff: t, u            # optional
    ring main: X, Y
    base: full                  # or semicolon-separated polynomials
    algebra: full               # or semicolon-separated polynomials
    derivation D: X: t, Y: 1 - t^2*X
    derivation E gens: 0, 1     # images aligned with the algebra generators
    seed: 7                     # optional
    note: free-form text        # optional, repeatable
    task find_slice derivation=D bound=3
      coordw gen=2 power=1 expr="X^2*U0_"     # sub-record of some tasks
      expect slice="Y + 1/2*t*X^2" type=poly provenance=derived oracle="..."

Polynomial values never contain commas or semicolons, so those separate
list items.  ``expect`` records attach expected outcomes (with provenance
tags) to the preceding task; they are ignored by ``run_job`` and consumed
by the corpus comparator.  Parse errors carry line numbers.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field

from ..context import VarContext
from ..derivation import Derivation
from ..errors import JobParseError, PolyParseError
from ..parse import parse_polynomial
from ..polynomial import Polynomial
from ..subalgebra import Subalgebra

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*\Z")

PROVENANCE_TAGS = ("trivial", "derived", "external")


@dataclass(frozen=True)
class Expectation:
    key: str
    value: str
    kind: str  # poly | int | text
    provenance: str
    oracle: str | None
    line: int


@dataclass(frozen=True)
class CoordWitnessSpec:
    generator_index: int  # 1-based, into the algebra generators
    power: int
    expression: str
    line: int


@dataclass
class TaskSpec:
    name: str
    params: dict[str, str]
    expectations: list[Expectation] = field(default_factory=list)
    coord_witnesses: list[CoordWitnessSpec] = field(default_factory=list)
    line: int = 0


@dataclass
class JobSpec:
    name: str
    context: VarContext
    base_full: bool
    algebra_full: bool
    subalgebra: Subalgebra
    derivations: dict[str, Derivation]
    generator_derivations: dict[str, tuple[Polynomial, ...]]
    tasks: list[TaskSpec]
    seed: int = 0
    output: str | None = None
    notes: list[str] = field(default_factory=list)
    tags: tuple[str, ...] = ()

    def to_text(self) -> str:
        """Canonical serialization; parsing it back yields an equal JobSpec."""
        lines = [f"job {self.name}"]
        if self.context.coeff_vars:
            lines.append("ring coeff: " + ", ".join(self.context.coeff_vars))
        lines.append("ring main: " + ", ".join(self.context.main_vars))
        if self.base_full:
            lines.append("base: full")
        else:
            lines.append("base: " + "; ".join(str(g) for g in self.subalgebra.base_generators))
        if self.algebra_full:
            lines.append("algebra: full")
        else:
            lines.append(
                "algebra: " + "; ".join(str(g) for g in self.subalgebra.algebra_generators)
            )
        for name in self.derivations:
            d = self.derivations[name]
            images = ", ".join(f"{v}: {d.images[v]}" for v in self.context.main_vars)
            lines.append(f"derivation {name}: {images}")
        for name, images in self.generator_derivations.items():
            lines.append(f"derivation {name} gens: " + ", ".join(str(p) for p in images))
        lines.append(f"seed: {self.seed}")
        if self.tags:
            lines.append("tags: " + ", ".join(self.tags))
        if self.output:
            lines.append(f"output: {self.output}")
        for note in self.notes:
            lines.append(f"note: {note}")
        for task in self.tasks:
            chunks = [f"task {task.name}"]
            for k, v in task.params.items():
                chunks.append(f'{k}="{v}"' if _needs_quoting(v) else f"{k}={v}")
            lines.append(" ".join(chunks))
            for cw in task.coord_witnesses:
                lines.append(f'  coordw gen={cw.generator_index} power={cw.power} expr="{cw.expression}"')
            for e in task.expectations:
                parts = [f'  expect {e.key}="{e.value}"' if _needs_quoting(e.value) else f"  expect {e.key}={e.value}"]
                if e.kind != "text":
                    parts.append(f"type={e.kind}")
                parts.append(f"provenance={e.provenance}")
                if e.oracle:
                    parts.append(f'oracle="{e.oracle}"')
                lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"

    def same_content(self, other: "JobSpec") -> bool:
        return self.to_text() == other.to_text()


def _needs_quoting(value: str) -> bool:
    return any(ch in value for ch in " \t'\"")


def _split_kv(tokens: list[str], line_no: int) -> dict[str, str]:
    out: dict[str, str] = {}
    for tok in tokens:
        if "=" not in tok:
            raise JobParseError(f"expected key=value, got {tok!r}", line_no)
        key, value = tok.split("=", 1)
        if not key:
            raise JobParseError(f"empty key in {tok!r}", line_no)
        if key in out:
            raise JobParseError(f"duplicate key {key!r}", line_no)
        out[key] = value
    return out


def parse_job(text: str) -> JobSpec:
    """Parse and validate a job document; diagnostics carry line numbers."""
    name: str | None = None
    coeff_vars: tuple[str, ...] = ()
    main_vars: tuple[str, ...] | None = None
    base_decl: tuple[int, str] | None = None
    algebra_decl: tuple[int, str] | None = None
    derivation_decls: list[tuple[int, str, str, bool]] = []  # line, name, body, by_gens
    tasks: list[TaskSpec] = []
    seed = 0
    output: str | None = None
    notes: list[str] = []
    tags: tuple[str, ...] = ()

    def fail(msg: str, line_no: int):
        raise JobParseError(msg, line_no)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "job":
            if name is not None:
                fail("duplicate job line", line_no)
            if not _NAME_RE.match(rest):
                fail(f"invalid job identifier {rest!r}", line_no)
            name = rest
        elif head == "ring":
            kind, _, names = rest.partition(":")
            names_t = tuple(n.strip() for n in names.split(",") if n.strip())
            if kind.strip() == "coeff":
                coeff_vars = names_t
            elif kind.strip() == "main":
                main_vars = names_t
            else:
                fail(f"unknown ring block {kind.strip()!r}", line_no)
        elif head == "base:":
            base_decl = (line_no, rest)
        elif head == "algebra:":
            algebra_decl = (line_no, rest)
        elif head == "base" and rest.startswith(":"):
            base_decl = (line_no, rest[1:].strip())
        elif head == "algebra" and rest.startswith(":"):
            algebra_decl = (line_no, rest[1:].strip())
        elif head == "derivation":
            dname, sep, body = rest.partition(":")
            dname = dname.strip()
            by_gens = False
            if dname.endswith(" gens"):
                dname = dname[:-5].strip()
                by_gens = True
            if not sep:
                fail("derivation line needs a ':'", line_no)
            if not _NAME_RE.match(dname):
                fail(f"invalid derivation name {dname!r}", line_no)
            derivation_decls.append((line_no, dname, body.strip(), by_gens))
        elif head == "seed:":
            try:
                seed = int(rest)
            except ValueError:
                fail(f"seed must be an integer, got {rest!r}", line_no)
        elif head == "output:":
            output = rest
        elif head == "note:":
            notes.append(rest)
        elif head == "tags:":
            tags = tuple(t.strip() for t in rest.split(",") if t.strip())
        elif head == "task":
            try:
                tokens = shlex.split(rest)
            except ValueError as exc:
                fail(f"bad task line: {exc}", line_no)
            if not tokens:
                fail("task line needs an operation name", line_no)
            tasks.append(TaskSpec(tokens[0], _split_kv(tokens[1:], line_no), line=line_no))
        elif head == "coordw":
            if not tasks:
                fail("coordw record before any task", line_no)
            kv = _split_kv(shlex.split(rest), line_no)
            try:
                gen = int(kv.pop("gen"))
                power = int(kv.pop("power"))
                expr = kv.pop("expr")
            except KeyError as exc:
                fail(f"coordw record missing {exc.args[0]}", line_no)
            if kv:
                fail(f"unknown coordw keys {sorted(kv)}", line_no)
            tasks[-1].coord_witnesses.append(CoordWitnessSpec(gen, power, expr, line_no))
        elif head == "expect":
            if not tasks:
                fail("expect record before any task", line_no)
            kv = _split_kv(shlex.split(rest), line_no)
            kind = kv.pop("type", "text")
            provenance = kv.pop("provenance", None)
            oracle = kv.pop("oracle", None)
            if provenance is None:
                fail("expect record needs a provenance tag", line_no)
            if provenance not in PROVENANCE_TAGS:
                fail(f"unknown provenance {provenance!r}", line_no)
            if kind not in ("poly", "int", "text"):
                fail(f"unknown expect type {kind!r}", line_no)
            if len(kv) != 1:
                fail("expect record needs exactly one key=value comparison", line_no)
            ((key, value),) = kv.items()
            tasks[-1].expectations.append(
                Expectation(key, value, kind, provenance, oracle, line_no)
            )
        else:
            fail(f"unknown record {head!r}", line_no)

    if name is None:
        raise JobParseError("missing job line", 1)
    if main_vars is None or not main_vars:
        raise JobParseError("missing ring main declaration", 1)
    try:
        context = VarContext(coeff_vars, main_vars)
    except ValueError as exc:
        raise JobParseError(str(exc), 1) from None

    def parse_poly(text_: str, line_no: int) -> Polynomial:
        try:
            return parse_polynomial(text_, context)
        except PolyParseError as exc:
            raise JobParseError(f"in polynomial {text_!r}: {exc}", line_no) from None

    base_line, base_text = base_decl if base_decl else (1, "full")
    algebra_line, algebra_text = algebra_decl if algebra_decl else (1, "full")
    base_full = base_text == "full"
    algebra_full = algebra_text == "full"
    if base_full and algebra_full:
        subalgebra = Subalgebra.full(context)
    else:
        if base_full:
            base_gens = tuple(Polynomial.variable(context, n) for n in context.coeff_vars)
        else:
            base_gens = tuple(
                parse_poly(p.strip(), base_line) for p in base_text.split(";") if p.strip()
            )
        if algebra_full:
            algebra_gens = tuple(Polynomial.variable(context, n) for n in context.main_vars)
        else:
            algebra_gens = tuple(
                parse_poly(p.strip(), algebra_line) for p in algebra_text.split(";") if p.strip()
            )
        try:
            subalgebra = Subalgebra(context, base_gens, algebra_gens)
        except ValueError as exc:
            raise JobParseError(str(exc), base_line) from None

    derivations: dict[str, Derivation] = {}
    generator_derivations: dict[str, tuple[Polynomial, ...]] = {}
    for line_no, dname, body, by_gens in derivation_decls:
        if dname in derivations or dname in generator_derivations:
            raise JobParseError(f"duplicate derivation {dname!r}", line_no)
        if by_gens:
            images = tuple(
                parse_poly(p.strip(), line_no) for p in body.split(",") if p.strip()
            )
            if len(images) != len(subalgebra.algebra_generators):
                raise JobParseError(
                    f"derivation {dname!r} needs one image per algebra generator "
                    f"({len(subalgebra.algebra_generators)} expected, {len(images)} given)",
                    line_no,
                )
            generator_derivations[dname] = images
        else:
            images: dict[str, Polynomial] = {}
            for chunk in body.split(","):
                chunk = chunk.strip()
                if not chunk:
                    continue
                var, sep, expr = chunk.partition(":")
                var = var.strip()
                if not sep:
                    raise JobParseError(f"derivation image needs 'var: poly', got {chunk!r}", line_no)
                if var not in context.main_vars:
                    raise JobParseError(f"unknown variable {var!r}", line_no)
                if var in images:
                    raise JobParseError(f"duplicate image for {var!r}", line_no)
                images[var] = parse_poly(expr.strip(), line_no)
            missing = set(context.main_vars) - set(images)
            if missing:
                raise JobParseError(
                    f"derivation {dname!r} missing images for {sorted(missing)}", line_no
                )
            derivations[dname] = Derivation(context, images)

    spec = JobSpec(
        name=name,
        context=context,
        base_full=base_full,
        algebra_full=algebra_full,
        subalgebra=subalgebra,
        derivations=derivations,
        generator_derivations=generator_derivations,
        tasks=tasks,
        seed=seed,
        output=output,
        notes=notes,
        tags=tags,
    )
    _validate_references(spec)
    return spec


def _validate_references(spec: JobSpec) -> None:
    known = set(spec.derivations) | set(spec.generator_derivations)
    for i, task in enumerate(spec.tasks, start=1):
        for key in ("derivation", "d", "d1"):
            ref = task.params.get(key)
            if ref is not None and ref not in known:
                raise JobParseError(
                    f"task {i} ({task.name}) references unknown derivation {ref!r}", task.line
                )
        refs = task.params.get("derivations")
        if refs is not None:
            for ref in (r.strip() for r in refs.split(";")):
                if ref and ref not in known:
                    raise JobParseError(
                        f"task {i} ({task.name}) references unknown derivation {ref!r}",
                        task.line,
                    )
        if "from" in task.params:
            try:
                target = int(task.params["from"])
            except ValueError:
                raise JobParseError(f"task {i}: from= must be a task index", task.line) from None
            if not (1 <= target < i + 1) or target > len(spec.tasks):
                raise JobParseError(f"task {i}: from={target} is not an earlier task", task.line)
            if target >= i:
                raise JobParseError(f"task {i}: from={target} is not an earlier task", task.line)
