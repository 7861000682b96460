"""Engine for bigraded-commutative finitely presented algebras over GF(2).

Everything is graded by a pair (weight w, cohomological degree d), printed
"(w)[d]".  Coefficients are GF(2), so graded commutativity is plain
commutativity and elements are just sets of monomials; addition is symmetric
difference.

Normal forms come from a degree-truncated Buchberger completion: all
statements are certified only for total degree w + d up to the presentation's
``truncation_bound``.  H-module presentations (``is_module``) share the same
machinery with two twists: a monomial may contain at most one
module-generator factor, and relation multipliers are restricted to
module-free monomials, which is exactly Groebner reduction in a free module
over the coefficient ring.

Monomial order: cohomological degree, then weight, then lexicographic with
later generators dominating.  Builders list generators Milnor first, then
tau, then class generators, so e.g. tau*d1 + alpha*c1 is d1-leading.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import parse as parse_mod
from .errors import (
    BoundTooSmall,
    EmptyGeneratorNameClash,
    ExceedsBound,
    InvalidModuleProduct,
    NonHomogeneousRelation,
    ShapeMismatch,
    UnknownGenerator,
    ZeroDivisorOfEverything,
)
from .gf2 import kernel_of_map

Monomial = tuple[int, ...]
Poly = frozenset  # frozenset[Monomial]

MILNOR = "milnor"
TAU = "tau"
CLASS = "class"
MODULE_GEN = "module_generator"


@dataclass(frozen=True)
class Bidegree:
    w: int
    d: int

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.w + other.w, self.d + other.d)

    def __sub__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.w - other.w, self.d - other.d)

    @property
    def total(self) -> int:
        return self.w + self.d

    def __str__(self) -> str:
        return f"({self.w})[{self.d}]"


@dataclass(frozen=True)
class GenSpec:
    name: str
    bidegree: Bidegree
    origin: str = CLASS

    def __str__(self) -> str:
        return f"{self.name}{self.bidegree}"


class AlgebraPresentation:
    """Finitely presented bigraded algebra (or H-module) with a truncated
    Groebner basis.  Immutable after construction; identity-based equality.
    """

    def __init__(
        self,
        gens: Sequence[GenSpec],
        relations: Sequence[Poly],
        groebner: Sequence[Poly],
        truncation_bound: int,
        is_module: bool = False,
        has_unit: bool = True,
    ):
        self.gens = tuple(gens)
        self.relations = tuple(relations)
        self.groebner = tuple(groebner)
        self.truncation_bound = truncation_bound
        self.is_module = is_module
        self.has_unit = has_unit
        self.names = tuple(g.name for g in self.gens)
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        self.gen_w = tuple(g.bidegree.w for g in self.gens)
        self.gen_d = tuple(g.bidegree.d for g in self.gens)
        self.module_idx = tuple(
            i for i, g in enumerate(self.gens) if g.origin == MODULE_GEN
        )
        self._gb_lms = tuple(self.lead_monomial(g) for g in self.groebner)
        # attached by builders for convenience (not part of identity)
        self.model = None
        self.block_id: str | None = None

    # ----- monomial helpers -------------------------------------------------

    def mono_bidegree(self, m: Monomial) -> Bidegree:
        w = sum(e * gw for e, gw in zip(m, self.gen_w))
        d = sum(e * gd for e, gd in zip(m, self.gen_d))
        return Bidegree(w, d)

    def mono_key(self, m: Monomial):
        b = self.mono_bidegree(m)
        return (b.d, b.w, tuple(reversed(m)))

    def module_count(self, m: Monomial) -> int:
        return sum(m[i] for i in self.module_idx)

    def mono_valid(self, m: Monomial) -> bool:
        return self.module_count(m) <= 1 if self.is_module else True

    def lead_monomial(self, p: Poly) -> Monomial:
        return max(p, key=self.mono_key)

    def poly_bidegree(self, p: Poly) -> Bidegree | None:
        """Common bidegree of all monomials, or None if mixed/zero."""
        degs = {self.mono_bidegree(m) for m in p}
        if len(degs) == 1:
            return degs.pop()
        return None

    # ----- reduction --------------------------------------------------------

    def _find_reducer(self, m: Monomial) -> tuple[Monomial, Poly] | None:
        for lm, g in zip(self._gb_lms, self.groebner):
            t = _mono_div(m, lm)
            if t is not None and (not self.is_module or self.module_count(t) == 0):
                return t, g
        return None

    def reduce_poly(self, p: Iterable[Monomial]) -> Poly:
        return _reduce_full(set(p), self.groebner, self._gb_lms, self)

    # ----- element construction ---------------------------------------------

    def zero(self) -> "Element":
        return Element(self, frozenset())

    def one(self) -> "Element":
        return Element(self, frozenset([(0,) * len(self.gens)]))

    def gen(self, name: str) -> "Element":
        if name not in self.index:
            raise UnknownGenerator(f"no generator named {name!r}")
        m = [0] * len(self.gens)
        m[self.index[name]] = 1
        return self.element_from_monomials([tuple(m)])

    def element_from_monomials(self, monomials: Iterable[Monomial]) -> "Element":
        return Element(self, self.reduce_poly(monomials))

    def raw_to_poly(self, raw) -> Poly:
        """Translate a parsed/raw element into an unreduced monomial set."""
        if isinstance(raw, Element):
            if raw.pres is not self:
                return self.raw_to_poly(raw.as_named())
            return raw.monomials
        if isinstance(raw, str):
            raw = parse_mod.parse_poly(raw)
        acc: set[Monomial] = set()
        for named in raw:
            m = [0] * len(self.gens)
            for name, e in named:
                if name not in self.index:
                    raise UnknownGenerator(f"no generator named {name!r}")
                m[self.index[name]] += e
            t = tuple(m)
            acc ^= {t}
        return frozenset(acc)

    def el(self, raw) -> "Element":
        """Normal form of a raw element (string, parsed poly, or Element)."""
        poly = self.raw_to_poly(raw)
        for m in poly:
            b = self.mono_bidegree(m)
            if b.total > self.truncation_bound:
                raise ExceedsBound(
                    f"monomial of total degree {b.total} exceeds bound "
                    f"{self.truncation_bound}"
                )
            if self.is_module and not self.mono_valid(m):
                raise InvalidModuleProduct(
                    "monomial with more than one module-generator factor"
                )
        return self.element_from_monomials(poly)

    # ----- extension ---------------------------------------------------------

    def extend_bound(self, bound: int) -> "AlgebraPresentation":
        """Return a presentation certified up to the larger bound."""
        if bound <= self.truncation_bound:
            return self
        p = presentation_new(
            self.gens,
            list(self.relations),
            bound,
            is_module=self.is_module,
            has_unit=self.has_unit,
        )
        p.model = self.model
        p.block_id = self.block_id
        return p

@dataclass(frozen=True, eq=False)
class Element:
    """Element of a presentation, stored in normal form."""

    pres: AlgebraPresentation
    monomials: Poly

    def is_zero(self) -> bool:
        return not self.monomials

    def bidegree(self) -> Bidegree | None:
        return self.pres.poly_bidegree(self.monomials)

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.pres, self.monomials ^ other.monomials)

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        pres = self.pres
        if pres.is_module:
            a_mod = any(pres.module_count(m) for m in self.monomials)
            b_mod = any(pres.module_count(m) for m in other.monomials)
            if a_mod and b_mod:
                raise InvalidModuleProduct(
                    "cannot multiply two module elements"
                )
        acc: set[Monomial] = set()
        for ma in self.monomials:
            for mb in other.monomials:
                acc ^= {_mono_mul(ma, mb)}
        return pres.element_from_monomials(acc)

    def __pow__(self, n: int) -> "Element":
        result = self.pres.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.pres is other.pres
            and self.monomials == other.monomials
        )

    def __hash__(self) -> int:
        return hash((id(self.pres), self.monomials))

    def _check(self, other: "Element") -> None:
        if self.pres is not other.pres:
            raise ValueError("elements belong to different presentations")

    def as_named(self) -> frozenset:
        """Re-encode monomials by generator name, for cross-presentation moves."""
        out = set()
        for m in self.monomials:
            out.add(
                tuple(
                    sorted(
                        (name, e)
                        for name, e in zip(self.pres.names, m)
                        if e
                    )
                )
            )
        return frozenset(out)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        monos = sorted(self.monomials, key=self.pres.mono_key, reverse=True)
        parts = []
        for m in monos:
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.pres.names, m)
                if e
            ]
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)


@dataclass(frozen=True)
class IdealGens:
    """Reduced generating set of a homogeneous ideal, certified up to a bound."""

    pres: AlgebraPresentation
    gens: tuple[Element, ...]
    degree_bound: int

    def polys(self) -> list[Poly]:
        return [g.monomials for g in self.gens]

    def __str__(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


# ----- monomial arithmetic ----------------------------------------------------


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mul_mono_poly(t: Monomial, p: Poly) -> set[Monomial]:
    return {_mono_mul(t, m) for m in p}


def _reduce_full(work: set, basis, lms, pres: AlgebraPresentation) -> Poly:
    """Full normal form: reduce every reducible monomial, largest first."""
    done: set[Monomial] = set()
    while work:
        m = max(work, key=pres.mono_key)
        work.discard(m)
        red = None
        for lm, g in zip(lms, basis):
            t = _mono_div(m, lm)
            if t is not None and (not pres.is_module or pres.module_count(t) == 0):
                red = (t, g)
                break
        if red is None:
            done.add(m)
        else:
            t, g = red
            prod = _mul_mono_poly(t, g)
            prod.discard(m)  # m cancels against t*lm(g)
            work ^= prod
    return frozenset(done)


# ----- Buchberger -------------------------------------------------------------


def _buchberger(
    pres: AlgebraPresentation, polys: list[Poly], bound: int
) -> list[Poly]:
    """Truncated Buchberger completion; returns the reduced basis."""

    def reduce_against(p: set, basis: list[Poly], lms: list[Monomial]) -> Poly:
        done: set[Monomial] = set()
        while p:
            m = max(p, key=pres.mono_key)
            p.discard(m)
            hit = None
            for lm, g in zip(lms, basis):
                t = _mono_div(m, lm)
                if t is not None and (
                    not pres.is_module or pres.module_count(t) == 0
                ):
                    hit = (t, g)
                    break
            if hit is None:
                done.add(m)
            else:
                t, g = hit
                prod = _mul_mono_poly(t, g)
                prod.discard(m)
                p ^= prod
        return frozenset(done)

    basis: list[Poly] = []
    lms: list[Monomial] = []
    nonzero = [p for p in polys if p]
    for p in sorted(nonzero, key=lambda q: pres.mono_key(pres.lead_monomial(q))):
        r = reduce_against(set(p), basis, lms)
        if r:
            basis.append(r)
            lms.append(pres.lead_monomial(r))

    heap: list[tuple] = []
    for j in range(len(basis)):
        for i in range(j):
            key = pres.mono_key(_mono_lcm(lms[i], lms[j]))
            heapq.heappush(heap, (key, i, j))
    while heap:
        # normal strategy: smallest lcm first, deterministic
        _, i, j = heapq.heappop(heap)
        lmi, lmj = lms[i], lms[j]
        lcm = _mono_lcm(lmi, lmj)
        if pres.is_module and pres.module_count(lcm) > 1:
            continue
        ti = _mono_div(lcm, lmi)
        tj = _mono_div(lcm, lmj)
        if pres.is_module and (
            pres.module_count(ti) or pres.module_count(tj)
        ):
            continue  # leading monomials sit in different module components
        b = pres.mono_bidegree(lcm)
        if b.total > bound:
            continue
        if (not pres.is_module or pres.module_count(lcm) == 0) and all(
            x == 0 or y == 0 for x, y in zip(lmi, lmj)
        ):
            continue  # coprime criterion (polynomial components only)
        s = set(_mul_mono_poly(ti, basis[i])) ^ _mul_mono_poly(tj, basis[j])
        r = reduce_against(s, basis, lms)
        if r:
            new_lm = pres.lead_monomial(r)
            for k in range(len(basis)):
                key = pres.mono_key(_mono_lcm(lms[k], new_lm))
                heapq.heappush(heap, (key, k, len(basis)))
            basis.append(r)
            lms.append(new_lm)

    # inter-reduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = [b for k, b in enumerate(basis) if k != i and b]
            other_lms = [pres.lead_monomial(b) for b in others]
            if not basis[i]:
                continue
            r = reduce_against(set(basis[i]), others, other_lms)
            if r != basis[i]:
                basis[i] = r
                changed = True
        basis = [b for b in basis if b]
    basis.sort(key=lambda p: pres.mono_key(pres.lead_monomial(p)))
    return basis


# ----- public operations -------------------------------------------------------


def presentation_new(
    gens: Sequence[GenSpec],
    rels: Sequence,
    bound: int,
    is_module: bool = False,
    has_unit: bool = True,
) -> AlgebraPresentation:
    """Build a presentation and compute its truncated Groebner basis.

    ``rels`` entries may be element strings, parsed raw polys, monomial sets
    over these generators, or Elements of a presentation with the same
    generator names.
    """
    seen = set()
    for g in gens:
        if not g.name:
            raise EmptyGeneratorNameClash("empty generator name")
        if g.name in seen:
            raise EmptyGeneratorNameClash(f"duplicate generator name {g.name!r}")
        seen.add(g.name)
        if g.origin == MILNOR and g.bidegree.w != g.bidegree.d:
            raise NonHomogeneousRelation(
                f"milnor generator {g.name} must have w = d"
            )

    shell = AlgebraPresentation(gens, (), (), bound, is_module, has_unit)
    rel_polys: list[Poly] = []
    for r in rels:
        poly = _as_internal_poly(shell, r)
        if not poly:
            continue
        b = shell.poly_bidegree(poly)
        if b is None:
            raise NonHomogeneousRelation(
                f"relation {poly_str(shell, poly)!r} mixes bidegrees"
            )
        if b.total > bound:
            raise BoundTooSmall(
                f"relation of total degree {b.total} exceeds bound {bound}"
            )
        rel_polys.append(poly)

    # module presentations: the coefficient-ring relations act on every
    # module component, so multiply each module-free relation into each
    # module generator before completion
    work = list(rel_polys)
    if is_module:
        for poly in rel_polys:
            if any(shell.module_count(m) for m in poly):
                continue
            for idx in shell.module_idx:
                unit = [0] * len(gens)
                unit[idx] = 1
                shifted = frozenset(_mono_mul(tuple(unit), m) for m in poly)
                if shell.poly_bidegree(shifted).total <= bound:
                    work.append(shifted)

    gb = _buchberger(shell, work, bound)
    return AlgebraPresentation(
        gens, rel_polys, gb, bound, is_module, has_unit
    )


def _as_internal_poly(pres: AlgebraPresentation, raw) -> Poly:
    """Coerce strings, parsed polys, Elements or exponent-vector sets."""
    if isinstance(raw, frozenset):
        first = next(iter(raw), None)
        if (
            first is not None
            and len(first) == len(pres.gens)
            and all(isinstance(x, int) for x in first)
        ):
            return raw  # already exponent vectors over these generators
    return pres.raw_to_poly(raw)


def poly_str(pres: AlgebraPresentation, poly: Poly) -> str:
    return str(Element(pres, frozenset(poly)))


def normal_form(pres: AlgebraPresentation, raw) -> Element:
    """Unique reduced representative of a raw element."""
    return pres.el(raw)


def groebner(pres: AlgebraPresentation, bound: int | None = None):
    """Reduced truncated basis; extending the bound returns a new presentation.

    Returns (presentation, list of basis Elements).
    """
    p = pres if bound is None else pres.extend_bound(bound)
    return p, [Element(p, g) for g in p.groebner]


@dataclass(frozen=True)
class PoincareTable:
    """Bigraded GF(2)-dimension counts over a finite box."""

    wmax: int
    dmax: int
    counts: tuple[tuple[int, ...], ...]  # counts[w][d]
    class_gens: tuple[Bidegree, ...] | None = None
    clipped: bool = False

    def entry(self, w: int, d: int) -> int:
        if 0 <= w <= self.wmax and 0 <= d <= self.dmax:
            return self.counts[w][d]
        return 0

    def cells(self):
        for w in range(self.wmax + 1):
            for d in range(self.dmax + 1):
                yield w, d, self.counts[w][d]

    def __add__(self, other: "PoincareTable") -> "PoincareTable":
        if (self.wmax, self.dmax) != (other.wmax, other.dmax):
            raise ShapeMismatch("tables cover different boxes")
        counts = tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.counts, other.counts)
        )
        return PoincareTable(
            self.wmax, self.dmax, counts, None, self.clipped or other.clipped
        )

    def shift(self, i: int, j: int) -> "PoincareTable":
        """Tate twist (i)[j]: entry (w, d) becomes old entry (w-i, d-j)."""
        clipped = self.clipped or i < 0 or j < 0
        counts = tuple(
            tuple(self.entry(w - i, d - j) for d in range(self.dmax + 1))
            for w in range(self.wmax + 1)
        )
        return PoincareTable(self.wmax, self.dmax, counts, None, clipped)

    def same_entries(self, other: "PoincareTable") -> bool:
        return (self.wmax, self.dmax) == (other.wmax, other.dmax) and all(
            a == b
            for ra, rb in zip(self.counts, other.counts)
            for a, b in zip(ra, rb)
        )

    def to_json_obj(self) -> dict:
        entries = [
            [w, d, self.counts[w][d]]
            for w in range(self.wmax + 1)
            for d in range(self.dmax + 1)
        ]
        return {"box": [self.wmax, self.dmax], "entries": entries}

    def render_text(self) -> str:
        width = max(
            len(f"d={self.dmax}"),
            max((len(str(c)) for _, _, c in self.cells()), default=1),
        ) + 2
        label = max(len(f"w={self.wmax}"), 4)
        lines = []
        header = " " * label + "".join(
            f"d={d}".rjust(width) for d in range(self.dmax + 1)
        )
        lines.append(header)
        for w in range(self.wmax + 1):
            row = f"w={w}".ljust(label) + "".join(
                str(self.counts[w][d]).rjust(width) for d in range(self.dmax + 1)
            )
            lines.append(row)
        return "\n".join(lines)


def _monomials_of_bidegree(
    pres: AlgebraPresentation, w: int, d: int, include_unit_component: bool = True
) -> list[Monomial]:
    """All valid monomials of bidegree exactly (w)[d]."""
    n = len(pres.gens)
    out: list[Monomial] = []
    mono = [0] * n

    def rec(i: int, rw: int, rd: int, mods: int):
        if i == n:
            if rw == 0 and rd == 0:
                if mods or include_unit_component or not pres.is_module:
                    out.append(tuple(mono))
            return
        gw, gd = pres.gen_w[i], pres.gen_d[i]
        is_mod = i in pres.module_idx
        caps = []
        if gw > 0:
            caps.append(rw // gw)
        if gd > 0:
            caps.append(rd // gd)
        cap = min(caps) if caps else 0
        if is_mod and pres.is_module:
            cap = min(cap, 0 if mods else 1)
        for e in range(cap + 1):
            mono[i] = e
            rec(i + 1, rw - e * gw, rd - e * gd, mods + (e if is_mod else 0))
        mono[i] = 0

    rec(0, w, d, 0)
    return out


def standard_monomials(
    pres: AlgebraPresentation, w: int, d: int, include_unit_component: bool = True
) -> list[Monomial]:
    """Monomial basis of the (w)[d] piece: monomials no leading term divides."""
    out = []
    for m in _monomials_of_bidegree(pres, w, d, include_unit_component):
        if pres._find_reducer(m) is None:
            out.append(m)
    out.sort(key=pres.mono_key)
    return out


def poincare_table(
    pres: AlgebraPresentation, wmax: int, dmax: int
) -> PoincareTable:
    """Standard-monomial counts over the box, truncation permitting."""
    if wmax + dmax > pres.truncation_bound:
        raise ExceedsBound(
            f"box ({wmax},{dmax}) needs bound >= {wmax + dmax}, "
            f"presentation certifies {pres.truncation_bound}"
        )
    counts = tuple(
        tuple(
            len(standard_monomials(pres, w, d, pres.has_unit))
            for d in range(dmax + 1)
        )
        for w in range(wmax + 1)
    )
    return PoincareTable(wmax, dmax, counts)


def quotient(pres: AlgebraPresentation, ideal: IdealGens | Sequence) -> AlgebraPresentation:
    """Presentation of pres / (ideal), same generators."""
    extra = ideal.polys() if isinstance(ideal, IdealGens) else [
        _as_internal_poly(pres, g) for g in ideal
    ]
    q = presentation_new(
        pres.gens,
        list(pres.relations) + list(extra),
        pres.truncation_bound,
        is_module=pres.is_module,
        has_unit=pres.has_unit,
    )
    q.model = pres.model
    return q


def colon_ideal(
    pres: AlgebraPresentation,
    ideal: IdealGens | Sequence | None,
    f,
    bound: int,
) -> IdealGens:
    """Generators of {x : x*f in (ideal)}, certified per graded piece.

    Computed by per-bidegree kernels of multiplication by f, then reduced to
    a generating set by a quotient-membership sweep in increasing degree.
    """
    if bound > pres.truncation_bound:
        raise ExceedsBound("colon bound exceeds presentation bound")
    f_el = pres.el(f)
    if f_el.is_zero():
        raise ZeroDivisorOfEverything("divisor reduces to 0")
    fb = f_el.bidegree()
    if fb is None:
        raise NonHomogeneousRelation("colon divisor must be homogeneous")

    base_gens: list[Element] = []
    if ideal is not None:
        gens = ideal.gens if isinstance(ideal, IdealGens) else [
            pres.el(g) for g in ideal
        ]
        base_gens = [g for g in gens if not pres.el(g).is_zero()]

    q = quotient(pres, [g.monomials for g in base_gens]) if base_gens else pres

    candidates: list[Element] = []
    for total in range(0, bound - fb.total + 1):
        for w in range(0, total + 1):
            d = total - w
            basis = standard_monomials(q, w, d, q.has_unit)
            if not basis:
                continue
            target = standard_monomials(q, w + fb.w, d + fb.d, q.has_unit)
            t_index = {m: i for i, m in enumerate(target)}
            images = []
            for m in basis:
                prod = q.reduce_poly(_mul_mono_poly(m, f_el.monomials))
                vec = 0
                for mm in prod:
                    vec |= 1 << t_index[mm]
                images.append(vec)
            for combo in kernel_of_map(images):
                monos = {basis[i] for i in range(len(basis)) if combo >> i & 1}
                candidates.append(pres.element_from_monomials(monos))

    chosen: list[Element] = list(base_gens)
    current = quotient(pres, [g.monomials for g in chosen]) if chosen else pres
    for cand in candidates:
        if cand.is_zero():
            continue
        if current.reduce_poly(cand.monomials):
            chosen.append(cand)
            current = quotient(pres, [g.monomials for g in chosen])
    # drop generators made redundant by later ones
    reduced: list[Element] = []
    for i, g in enumerate(chosen):
        rest = [h.monomials for j, h in enumerate(chosen) if j != i]
        test = quotient(pres, rest) if rest else pres
        if test.reduce_poly(g.monomials):
            reduced.append(g)
    return IdealGens(pres, tuple(reduced), bound)


def table_tensor(free: PoincareTable, module: PoincareTable) -> PoincareTable:
    """Tensor over H of a free H-algebra table with a module table.

    ``free`` must carry class-generator bidegrees; the result convolves the
    module table against the class-monomial counting function.
    """
    if free.class_gens is None:
        raise ShapeMismatch("free factor lacks generator metadata")
    wmax = min(free.wmax, module.wmax)
    dmax = min(free.dmax, module.dmax)
    cls_counts = [[0] * (dmax + 1) for _ in range(wmax + 1)]
    cls_counts[0][0] = 1
    for b in free.class_gens:
        # unbounded powers of each generator, folded one generator at a time
        nxt = [[0] * (dmax + 1) for _ in range(wmax + 1)]
        for w in range(wmax + 1):
            for d in range(dmax + 1):
                if not cls_counts[w][d]:
                    continue
                k = 0
                while w + k * b.w <= wmax and d + k * b.d <= dmax:
                    nxt[w + k * b.w][d + k * b.d] += cls_counts[w][d]
                    k += 1
                    if b.w == 0 and b.d == 0:
                        break
        cls_counts = nxt
    counts = tuple(
        tuple(
            sum(
                cls_counts[a][b] * module.entry(w - a, d - b)
                for a in range(w + 1)
                for b in range(d + 1)
            )
            for d in range(dmax + 1)
        )
        for w in range(wmax + 1)
    )
    return PoincareTable(wmax, dmax, counts)
