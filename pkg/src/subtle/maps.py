"""Homomorphisms between presented algebras: definition, verification,
kernel identification, and class specialization.

Verification is per graded piece inside an explicit box: well-definedness
reduces every source relation's image to 0, and injectivity/surjectivity come
from GF(2) ranks of the induced maps between standard-monomial bases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bigraded import (
    AlgebraPresentation,
    Element,
    IdealGens,
    poincare_table,
    quotient,
    standard_monomials,
)
from .errors import (
    BidegreeMismatch,
    ExceedsBound,
    SubtleError,
    UnknownGenerator,
)
from .gf2 import RowSpace
from .milnor import FieldModel
from .rings import (
    block_presentation,
    build_BOhtilde,
    build_BUn,
    build_xalpha_with_us,
    _ann_strings,
    _require_alpha,
)


@dataclass(eq=False)
class Homomorphism:
    source: AlgebraPresentation
    target: AlgebraPresentation
    images: dict[str, Element]
    label: str = "hom"
    verified_box: tuple[int, int] | None = None
    well_defined: bool | None = None
    surjective_on_box: bool | None = None
    injective_on_box: bool | None = None
    _powers: dict = field(default_factory=dict, repr=False)

    def image_of(self, name: str) -> Element:
        return self.images[name]

    def apply(self, el: Element) -> Element:
        """Image of an element: substitute generator images, then reduce."""
        if el.pres is not self.source:
            raise SubtleError("element does not belong to the source")
        total = self.target.zero()
        for mono in el.monomials:
            term = self.target.one()
            for idx, e in enumerate(mono):
                if not e:
                    continue
                term = term * self._power(idx, e)
            total = total + term
        return total

    def _power(self, idx: int, e: int) -> Element:
        key = (idx, e)
        if key not in self._powers:
            name = self.source.names[idx]
            base = self.images[name]
            acc = self.target.one()
            for _ in range(e):
                acc = acc * base
            self._powers[key] = acc
        return self._powers[key]


def hom_define(
    source: AlgebraPresentation,
    target: AlgebraPresentation,
    images: dict,
    label: str = "hom",
) -> Homomorphism:
    """Unverified homomorphism; every source generator needs an image of the
    same bidegree (zero images are allowed in any bidegree)."""
    resolved: dict[str, Element] = {}
    for name in images:
        if name not in source.index:
            raise UnknownGenerator(f"source has no generator {name!r}")
    for gen in source.gens:
        if gen.name not in images:
            raise UnknownGenerator(f"no image assigned for generator {gen.name!r}")
        img = images[gen.name]
        el = target.el(img) if not isinstance(img, Element) else img
        if el.pres is not target:
            el = target.el(el)
        if not el.is_zero():
            b = el.bidegree()
            if b != gen.bidegree:
                raise BidegreeMismatch(
                    f"{gen.name} at {gen.bidegree} mapped to {el} at {b}"
                )
        resolved[gen.name] = el
    return Homomorphism(source, target, resolved, label)


def hom_compose(g: Homomorphism, f: Homomorphism, label: str | None = None) -> Homomorphism:
    """g after f; images computed by substitution then normal form."""
    if f.target is not g.source:
        raise SubtleError("homomorphisms are not composable")
    images = {name: g.apply(img) for name, img in f.images.items()}
    return hom_define(
        f.source, g.target, images, label or f"{g.label}.{f.label}"
    )


def identity_hom(pres: AlgebraPresentation) -> Homomorphism:
    return hom_define(pres, pres, {g.name: pres.gen(g.name) for g in pres.gens}, "id")


@dataclass(frozen=True)
class HomReport:
    label: str
    wmax: int
    dmax: int
    well_defined: bool
    offending_relation: str | None
    per_bidegree: tuple[tuple[int, int, int, int, int], ...]  # w,d,rank,src,tgt
    surjective_on_box: bool
    injective_on_box: bool

    def to_json_obj(self) -> dict:
        return {
            "well_defined": self.well_defined,
            "surjective_on_box": self.surjective_on_box,
            "injective_on_box": self.injective_on_box,
            "box": [self.wmax, self.dmax],
            "offending_relation": self.offending_relation,
            "per_bidegree": [list(row) for row in self.per_bidegree],
        }

    def render_text(self) -> str:
        lines = [
            f"map {self.label} on box ({self.wmax},{self.dmax})",
            f"well_defined: {self.well_defined}",
        ]
        if self.offending_relation:
            lines.append(f"offending relation: {self.offending_relation}")
        lines.append(f"surjective_on_box: {self.surjective_on_box}")
        lines.append(f"injective_on_box: {self.injective_on_box}")
        lines.append("w d rank src tgt")
        for w, d, r, s, t in self.per_bidegree:
            lines.append(f"{w} {d} {r} {s} {t}")
        return "\n".join(lines)

    @property
    def ok(self) -> bool:
        return self.well_defined


def hom_verify(h: Homomorphism, wmax: int, dmax: int) -> HomReport:
    """Check well-definedness and per-bidegree ranks inside the box."""
    if wmax + dmax > h.source.truncation_bound or wmax + dmax > h.target.truncation_bound:
        raise ExceedsBound("verification box exceeds a presentation bound")
    well = True
    offender = None
    for rel in h.source.relations:
        img = h.apply(Element(h.source, rel))
        if not img.is_zero():
            well = False
            offender = str(Element(h.source, rel))
            break

    rows = []
    surj = True
    inj = True
    if well:
        for w in range(wmax + 1):
            for d in range(dmax + 1):
                src_basis = standard_monomials(h.source, w, d, h.source.has_unit)
                tgt_basis = standard_monomials(h.target, w, d, h.target.has_unit)
                t_index = {m: i for i, m in enumerate(tgt_basis)}
                space = RowSpace()
                for m in src_basis:
                    img = h.apply(Element(h.source, frozenset([m])))
                    vec = 0
                    for mm in img.monomials:
                        vec |= 1 << t_index[mm]
                    space.add(vec)
                rank = space.rank
                rows.append((w, d, rank, len(src_basis), len(tgt_basis)))
                if rank != len(tgt_basis):
                    surj = False
                if rank != len(src_basis):
                    inj = False
    else:
        surj = inj = False

    report = HomReport(
        h.label, wmax, dmax, well, offender, tuple(rows), surj, inj
    )
    h.verified_box = (wmax, dmax)
    h.well_defined = well
    h.surjective_on_box = surj
    h.injective_on_box = inj
    return report


# ----- the named comparison maps ------------------------------------------------


def comp_map(model: FieldModel, n: int, bound: int = 16) -> Homomorphism:
    """Comparison map from the orthogonal-side ring to the unitary-side ring:
    u_{2i} -> c_i, u_{4l+1} -> 0, u_{2j+1} -> d_j for odd j, and the top v
    class to d_n for odd n."""
    if n < 1:
        raise SubtleError("comparison map needs n >= 1")
    src = build_BOhtilde(model, n, bound)
    tgt = build_BUn(model, n, bound)
    images: dict[str, Element] = {}
    for gen in src.gens:
        name = gen.name
        if name == "tau" or name in model.generators:
            images[name] = tgt.gen(name)
        elif name.startswith("u"):
            k = int(name[1:])
            if k % 2 == 0:
                images[name] = tgt.gen(f"c{k // 2}")
            else:
                l = (k - 1) // 2
                images[name] = tgt.gen(f"d{l}") if l % 2 == 1 else tgt.zero()
        elif name.startswith("v"):
            images[name] = tgt.gen(f"d{n}")
    return hom_define(src, tgt, images, f"comp:{n}")


def comp_kernel_ideal(model: FieldModel, n: int, bound: int = 16) -> IdealGens:
    """The stated kernel ideal of the comparison map, with the top odd class
    name substituted for n odd."""
    src = build_BOhtilde(model, n, bound)
    alpha = _require_alpha(model)
    anns = _ann_strings(model, bound)
    top_v = f"v{2 * n + 1}"

    def uname(k: int) -> str:
        return top_v if (n % 2 == 1 and k == 2 * n + 1) else f"u{k}"

    jmax = (n - 1) // 2
    gens: list[str] = []
    for j in range(jmax + 1):
        gens.append(uname(4 * j + 1))
    for j in range(jmax + 1):
        gens.append(f"tau*{uname(4 * j + 3)} + ({alpha})*u{4 * j + 2}")
        gens += [f"({a})*{uname(4 * j + 3)}" for a in anns]
    for i in range(jmax + 1):
        for j in range(i + 1, jmax + 1):
            gens.append(
                f"{uname(4 * i + 3)}*u{4 * j + 2} + {uname(4 * j + 3)}*u{4 * i + 2}"
            )
    # the pair generators may outgrow the requested bound; widen to fit
    needed = bound
    for g in gens:
        b = src.poly_bidegree(src.raw_to_poly(g))
        if b is not None:
            needed = max(needed, b.total)
    src = src.extend_bound(needed)
    elements = tuple(src.el(g) for g in gens)
    return IdealGens(src, elements, bound)


@dataclass(frozen=True)
class KernelReport:
    label: str
    wmax: int
    dmax: int
    generators_vanish: bool
    nonvanishing_generator: str | None
    tables_match: bool
    first_mismatch: tuple[int, int, int, int] | None  # w, d, quotient, rank

    @property
    def ok(self) -> bool:
        return self.generators_vanish and self.tables_match

    def to_json_obj(self) -> dict:
        return {
            "kernel_matches": self.ok,
            "box": [self.wmax, self.dmax],
            "generators_vanish": self.generators_vanish,
            "nonvanishing_generator": self.nonvanishing_generator,
            "tables_match": self.tables_match,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
        }

    def render_text(self) -> str:
        lines = [
            f"kernel check {self.label} on box ({self.wmax},{self.dmax})",
            f"ideal generators vanish: {self.generators_vanish}",
        ]
        if self.nonvanishing_generator:
            lines.append(f"nonvanishing generator: {self.nonvanishing_generator}")
        lines.append(f"quotient table equals image ranks: {self.tables_match}")
        if self.first_mismatch:
            w, d, q, r = self.first_mismatch
            lines.append(f"first mismatch at ({w})[{d}]: quotient {q}, image rank {r}")
        lines.append("MATCH" if self.ok else "MISMATCH")
        return "\n".join(lines)


def kernel_match(
    h: Homomorphism, ideal: IdealGens, wmax: int, dmax: int
) -> KernelReport:
    """Certify kernel = (ideal) on the box: the generators must map to 0 and
    the quotient table must equal the per-bidegree image ranks."""
    if ideal.pres is not h.source:
        # same generator names, possibly different certification bounds
        bound = max(h.source.truncation_bound, ideal.pres.truncation_bound)
        src = h.source.extend_bound(bound)
        h = Homomorphism(src, h.target, dict(h.images), h.label)
        ideal = IdealGens(
            src,
            tuple(src.el(g.as_named()) for g in ideal.gens),
            ideal.degree_bound,
        )
    report = hom_verify(h, wmax, dmax)
    if not report.well_defined:
        return KernelReport(
            h.label, wmax, dmax, False, report.offending_relation, False, None
        )
    vanish = True
    bad = None
    for g in ideal.gens:
        if not h.apply(g).is_zero():
            vanish = False
            bad = str(g)
            break
    ranks = {(w, d): r for w, d, r, _, _ in report.per_bidegree}
    q = quotient(h.source, ideal)
    qtable = poincare_table(q, wmax, dmax)
    match = True
    mismatch = None
    for w in range(wmax + 1):
        for d in range(dmax + 1):
            if qtable.entry(w, d) != ranks[(w, d)]:
                match = False
                mismatch = (w, d, qtable.entry(w, d), ranks[(w, d)])
                break
        if not match:
            break
    return KernelReport(h.label, wmax, dmax, vanish, bad, match, mismatch)


def twist_iso(model: FieldModel, n: int, bound: int = 16) -> Homomorphism:
    """Self-map of the mu-extended free u-algebra on u_1..u_2n that fixes
    even classes and sends u_{2i-1} to u_{2i-1} + mu*u_{2i-2} (u_0 = 1)."""
    if n < 1:
        raise SubtleError("twist needs n >= 1")
    pres = build_xalpha_with_us(model, 2 * n, bound)
    images: dict[str, Element] = {}
    for gen in pres.gens:
        name = gen.name
        if name.startswith("u"):
            k = int(name[1:])
            if k % 2 == 0:
                images[name] = pres.gen(name)
            else:
                low = pres.one() if k == 1 else pres.gen(f"u{k - 1}")
                images[name] = pres.gen(name) + pres.gen("mu") * low
        else:
            images[name] = pres.gen(name)
    return hom_define(pres, pres, images, f"pq:{n}")


# ----- class specialization (relations among characteristic classes) -----------


@dataclass(frozen=True)
class SpecializeReport:
    label: str
    well_defined: bool
    relation_images: tuple[tuple[str, str, bool], ...]  # relation, image, vanishes
    split_checked: tuple[str, ...]
    split_compatible: bool | None

    @property
    def first_failing(self) -> str | None:
        for rel, _, zero in self.relation_images:
            if not zero:
                return rel
        return None

    def to_json_obj(self) -> dict:
        return {
            "well_defined": self.well_defined,
            "relations": [
                {"relation": r, "image": i, "vanishes": z}
                for r, i, z in self.relation_images
            ],
            "split_criterion": {
                "checked_classes": list(self.split_checked),
                "split_compatible": self.split_compatible,
            },
        }

    def render_text(self) -> str:
        lines = [f"specialization {self.label}"]
        for r, i, z in self.relation_images:
            status = "0" if z else f"{i}  [NONZERO]"
            lines.append(f"  {r} -> {status}")
        lines.append(f"well_defined: {self.well_defined}")
        if self.split_checked:
            verdict = "split-compatible" if self.split_compatible else "not split-compatible"
            lines.append(
                f"splitting criterion on {{{', '.join(self.split_checked)}}}: {verdict}"
            )
        return "\n".join(lines)


def specialize_classes(
    ring: AlgebraPresentation,
    assignments: dict,
    target: AlgebraPresentation,
    label: str = "specialize",
) -> tuple[Homomorphism, SpecializeReport]:
    """Evaluate the universal relations of ``ring`` at concrete class values.

    Coefficient generators map to their same-named counterparts; every class
    generator needs an entry in ``assignments``.  The report lists each
    relation's image (all must vanish for a well-defined specialization) and
    whether every assigned c_{2^r} vanishes (the splitting criterion).
    """
    images: dict[str, Element] = {}
    for gen in ring.gens:
        if gen.name in assignments:
            raw = assignments[gen.name]
            images[gen.name] = raw if isinstance(raw, Element) else target.el(raw)
        elif gen.name in target.index:
            images[gen.name] = target.gen(gen.name)
        else:
            raise UnknownGenerator(f"no assignment for class {gen.name!r}")
    for name, el in images.items():
        gen = ring.gens[ring.index[name]]
        if not el.is_zero() and el.bidegree() != gen.bidegree:
            raise BidegreeMismatch(
                f"{name} at {gen.bidegree} assigned value of bidegree {el.bidegree()}"
            )
    h = Homomorphism(ring, target, images, label)
    rel_rows = []
    well = True
    for rel in ring.relations:
        rel_el = Element(ring, rel)
        img = h.apply(rel_el)
        zero = img.is_zero()
        well = well and zero
        rel_rows.append((str(rel_el), str(img), zero))
    h.well_defined = well

    powers_of_two = [
        name
        for name in ring.names
        if name.startswith("c")
        and name[1:].isdigit()
        and int(name[1:]) & (int(name[1:]) - 1) == 0
    ]
    split: bool | None
    if powers_of_two:
        split = all(images[name].is_zero() for name in powers_of_two)
    else:
        split = None
    return h, SpecializeReport(
        label, well, tuple(rel_rows), tuple(powers_of_two), split
    )


def load_map_descriptor(path: str, model: FieldModel, bound: int = 16) -> Homomorphism:
    """Build a homomorphism from a JSON descriptor
    {"source": blockId, "target": blockId, "images": {gen: element-string}}.
    Generators absent from "images" map to their same-named target generators.
    """
    with open(path, "r", encoding="utf-8") as fh:
        desc = json.load(fh)
    src = block_presentation(model, desc["source"], bound)
    tgt = block_presentation(model, desc["target"], bound)
    images: dict[str, Element] = {}
    given = desc.get("images", {})
    for gen in src.gens:
        if gen.name in given:
            images[gen.name] = tgt.el(given[gen.name])
        elif gen.name in tgt.index:
            images[gen.name] = tgt.gen(gen.name)
        else:
            raise UnknownGenerator(
                f"descriptor misses image for {gen.name!r} and target has no such generator"
            )
    label = f"{desc['source']}->{desc['target']}"
    return hom_define(src, tgt, images, label)
