"""Sq1 as a derivation of bidegree (0)[1] on presented algebras.

Generator values default to the standard table: Milnor symbols die, tau goes
to the model's designated {-1} class, mu goes to mu^2, and the subtle classes
follow Sq1(u_{2i}) = u_{2i+1} + u_1*u_{2i} and Sq1(u_{2i+1}) = u_1*u_{2i+1},
reading the odd-index class as the v generator when that is the one present.
Generators without a default (v, c, d, module mu_i) stay unknown; sq1_check
solves the descent constraints for them per graded piece and reports the
solution space instead of inventing a value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bigraded import (
    MILNOR,
    MODULE_GEN,
    TAU,
    AlgebraPresentation,
    Bidegree,
    Element,
    standard_monomials,
)
from .errors import (
    BidegreeMismatch,
    ExceedsBound,
    MissingRhoDesignation,
    UnknownDerivationValue,
)
from .gf2 import solve

SQ1_SHIFT = Bidegree(0, 1)


@dataclass(eq=False)
class Derivation:
    pres: AlgebraPresentation
    values: dict[str, Element]
    unknown: tuple[str, ...]
    verified_box: tuple[int, int] | None = None

    def value(self, name: str) -> Element:
        if name in self.unknown:
            raise UnknownDerivationValue(
                f"Sq1({name}) has no assigned value; run sq1_check to solve"
            )
        return self.values[name]

    def with_values(self, extra: dict[str, Element]) -> "Derivation":
        vals = dict(self.values)
        vals.update(extra)
        missing = tuple(u for u in self.unknown if u not in extra)
        return Derivation(self.pres, vals, missing)


def _default_value(pres: AlgebraPresentation, gen, model) -> Element | None:
    name = gen.name
    if gen.origin == MILNOR:
        return pres.zero()
    if gen.origin == TAU:
        if model is None or model.minus_one_string is None:
            raise MissingRhoDesignation(
                "model does not name a {-1} class; Sq1 on tau is undefined"
            )
        return pres.el(model.minus_one_string)
    if gen.origin == MODULE_GEN:
        return None
    if name == "mu":
        return pres.gen("mu") * pres.gen("mu")
    if name.startswith("u") and name[1:].isdigit():
        i = int(name[1:])
        u1 = pres.gen("u1")
        if i % 2 == 1:
            return u1 * pres.gen(name)
        succ = pres.zero()
        if f"u{i + 1}" in pres.index:
            succ = pres.gen(f"u{i + 1}")
        elif f"v{i + 1}" in pres.index:
            succ = pres.gen(f"v{i + 1}")
        return succ + u1 * pres.gen(name)
    return None


def sq1_define(pres: AlgebraPresentation, values: dict | None = None) -> Derivation:
    """Derivation with default values, optionally overridden per generator.

    Generators with neither default nor override are recorded as unknown.
    """
    resolved: dict[str, Element] = {}
    unknown: list[str] = []
    overrides = values or {}
    for gen in pres.gens:
        if gen.name in overrides:
            raw = overrides[gen.name]
            val = raw if isinstance(raw, Element) else pres.el(raw)
        else:
            val = _default_value(pres, gen, pres.model)
        if val is None:
            unknown.append(gen.name)
            continue
        if not val.is_zero() and val.bidegree() != gen.bidegree + SQ1_SHIFT:
            raise BidegreeMismatch(
                f"Sq1({gen.name}) must sit in {gen.bidegree + SQ1_SHIFT}, "
                f"got {val.bidegree()}"
            )
        resolved[gen.name] = val
    return Derivation(pres, resolved, tuple(unknown))


def load_derivation_descriptor(path: str, pres: AlgebraPresentation) -> Derivation:
    """Derivation from a JSON descriptor {"values": {gen: element-string}};
    generators absent from the file keep their defaults (or stay unknown)."""
    with open(path, "r", encoding="utf-8") as fh:
        desc = json.load(fh)
    return sq1_define(pres, desc.get("values", {}))


def sq1_apply(der: Derivation, el: Element) -> Element:
    """Leibniz expansion followed by normal form."""
    pres = der.pres
    if el.pres is not pres:
        raise UnknownDerivationValue("element belongs to another presentation")
    b = el.bidegree()
    if b is not None and b.total + 1 > pres.truncation_bound:
        raise ExceedsBound("Sq1 image exceeds the truncation bound")
    total = pres.zero()
    for mono in el.monomials:
        for idx, e in enumerate(mono):
            if e % 2 == 0:
                continue
            val = der.value(pres.names[idx])
            if val.is_zero():
                continue
            rest = list(mono)
            rest[idx] -= 1
            partial = Element(pres, frozenset([tuple(rest)]))
            total = total + partial * val
    return total


def _partial(pres: AlgebraPresentation, poly, idx: int):
    """Formal partial derivative: monomials with odd exponent, divided."""
    out = set()
    for mono in poly:
        if mono[idx] % 2 == 1:
            rest = list(mono)
            rest[idx] -= 1
            out ^= {tuple(rest)}
    return frozenset(out)


@dataclass(frozen=True)
class SqReport:
    label: str
    wmax: int
    dmax: int
    descends: bool
    offending_relation: str | None
    square_zero: bool
    square_zero_offender: str | None
    unknowns: tuple[tuple[str, int | None, str | None], ...]  # name, dim, value

    @property
    def ok(self) -> bool:
        return self.descends and self.square_zero

    def to_json_obj(self) -> dict:
        return {
            "descends": self.descends,
            "square_zero": self.square_zero,
            "box": [self.wmax, self.dmax],
            "offending_relation": self.offending_relation,
            "square_zero_offender": self.square_zero_offender,
            "unknowns": [
                {"generator": n, "solution_dim": dim, "value": val}
                for n, dim, val in self.unknowns
            ],
        }

    def render_text(self) -> str:
        lines = [f"Sq1 check {self.label} on box ({self.wmax},{self.dmax})"]
        for name, dim, val in self.unknowns:
            if dim is None:
                lines.append(f"  Sq1({name}): no admissible value")
            else:
                lines.append(
                    f"  Sq1({name}) = {val}  (solution space dimension {dim})"
                )
        lines.append(f"descends to quotient: {self.descends}")
        if self.offending_relation:
            lines.append(f"offending relation: {self.offending_relation}")
        lines.append(f"Sq1 o Sq1 = 0 on box: {self.square_zero}")
        if self.square_zero_offender:
            lines.append(f"square-zero offender: {self.square_zero_offender}")
        return "\n".join(lines)


def sq1_solve(der: Derivation) -> tuple[Derivation, tuple[tuple[str, int | None, str | None], ...]]:
    """Solve the descent constraints for unknown generator values.

    Sets up, per relation r, nf(Sq1_known(r) + sum_g partial_g(r) * X_g) = 0
    as one GF(2) linear system over the coordinates of all unknown values,
    and returns the solved derivation plus (name, solution dim, value) rows.
    """
    pres = der.pres
    if not der.unknown:
        return der, ()

    columns: list[int] = []
    col_meta: list[tuple[str, object]] = []  # (gen name, basis monomial)
    var_basis: dict[str, list] = {}
    for name in der.unknown:
        gen = pres.gens[pres.index[name]]
        cell = gen.bidegree + SQ1_SHIFT
        basis = standard_monomials(pres, cell.w, cell.d, True)
        var_basis[name] = basis
        for b in basis:
            col_meta.append((name, b))

    row_offset = 0
    col_bits = [0] * len(col_meta)
    target_bits = 0
    for rel in pres.relations:
        rel_el = Element(pres, rel)
        rb = rel_el.bidegree()
        if rb is None:
            continue
        cell_basis = standard_monomials(pres, rb.w, rb.d + 1, True)
        cell_index = {m: i for i, m in enumerate(cell_basis)}

        known = pres.zero()
        for idx, gname in enumerate(pres.names):
            part = _partial(pres, rel, idx)
            if not part:
                continue
            if gname in der.unknown:
                continue
            val = der.values[gname]
            if val.is_zero():
                continue
            known = known + pres.element_from_monomials(part) * val
        for m in known.monomials:
            target_bits |= 1 << (row_offset + cell_index[m])

        col = 0
        for ci, (gname, bmono) in enumerate(col_meta):
            idx = pres.index[gname]
            part = _partial(pres, rel, idx)
            if not part:
                continue
            contrib = pres.element_from_monomials(part) * Element(
                pres, frozenset([bmono])
            )
            bits = 0
            for m in contrib.monomials:
                bits |= 1 << (row_offset + cell_index[m])
            col_bits[ci] ^= bits
        row_offset += len(cell_basis)

    particular, kernel = solve(col_bits, target_bits)
    rows: list[tuple[str, int | None, str | None]] = []
    if particular is None:
        for name in der.unknown:
            rows.append((name, None, None))
        return der, tuple(rows)

    solved: dict[str, Element] = {}
    offset = 0
    for name in der.unknown:
        basis = var_basis[name]
        monos = {
            basis[i]
            for i in range(len(basis))
            if particular >> (offset + i) & 1
        }
        solved[name] = pres.element_from_monomials(monos)
        offset += len(basis)
    # per-generator slice of the global solution space dimension
    for name in der.unknown:
        rows.append((name, len(kernel), str(solved[name])))
    return der.with_values(solved), tuple(rows)


def sq1_check(der: Derivation, wmax: int, dmax: int) -> tuple[SqReport, Derivation]:
    """Solve unknowns, then verify descent and square-zero on the box."""
    pres = der.pres
    if wmax + dmax + 2 > pres.truncation_bound:
        raise ExceedsBound("Sq1 check box needs bound >= wmax + dmax + 2")
    solved, unknown_rows = sq1_solve(der)
    label = pres.block_id or "presentation"

    descends = True
    offender = None
    if solved.unknown:
        descends = False
        offender = "unsolvable constraints for " + ", ".join(solved.unknown)
    else:
        for rel in pres.relations:
            img = sq1_apply(solved, Element(pres, rel))
            if not img.is_zero():
                descends = False
                offender = str(Element(pres, rel))
                break

    square = True
    sq_offender = None
    if descends:
        for gen in pres.gens:
            out = sq1_apply(solved, sq1_apply(solved, pres.gen(gen.name)))
            if not out.is_zero():
                square = False
                sq_offender = gen.name
                break
        if square:
            for w in range(wmax + 1):
                for d in range(dmax + 1):
                    for m in standard_monomials(pres, w, d, pres.has_unit):
                        el = Element(pres, frozenset([m]))
                        out = sq1_apply(solved, sq1_apply(solved, el))
                        if not out.is_zero():
                            square = False
                            sq_offender = str(el)
                            break
                    if not square:
                        break
                if not square:
                    break
    else:
        square = False

    report = SqReport(
        label, wmax, dmax, descends, offender, square, sq_offender, unknown_rows
    )
    solved.verified_box = (wmax, dmax)
    return report, solved
