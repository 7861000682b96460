"""Groebner-free cross-check of graded dimensions.

For one bidegree cell, the dimension of a presented algebra is the number of
monomials of that bidegree minus the rank of all relation multiples landing
there, computed by dense GF(2) row reduction on raw polynomial products.  No
normal forms, no basis completion: this is the independent side of the
engine/oracle pair, kept deliberately naive.
"""

from __future__ import annotations

from .bigraded import (
    AlgebraPresentation,
    PoincareTable,
    _mono_mul,
    _monomials_of_bidegree,
)
from .gf2 import RowSpace


def oracle_entry(pres: AlgebraPresentation, w: int, d: int) -> int:
    """Dimension of the (w)[d] piece by exhaustive row reduction."""
    basis = _monomials_of_bidegree(pres, w, d, pres.has_unit)
    if not basis:
        return 0
    index = {m: i for i, m in enumerate(basis)}
    space = RowSpace()
    for rel in pres.relations:
        rb = pres.poly_bidegree(rel)
        tw, td = w - rb.w, d - rb.d
        if tw < 0 or td < 0:
            continue
        rel_has_module = any(pres.module_count(m) for m in rel)
        for t in _monomials_of_bidegree(pres, tw, td, True):
            if rel_has_module and pres.module_count(t):
                continue  # module relations only take coefficient-ring multiples
            row = 0
            ok = True
            for m in rel:
                prod = _mono_mul(t, m)
                if prod not in index:
                    ok = False
                    break
                row ^= 1 << index[prod]
            if ok:
                space.add(row)
    return len(basis) - space.rank


def oracle_table(pres: AlgebraPresentation, wmax: int, dmax: int) -> PoincareTable:
    counts = tuple(
        tuple(oracle_entry(pres, w, d) for d in range(dmax + 1))
        for w in range(wmax + 1)
    )
    return PoincareTable(wmax, dmax, counts)
