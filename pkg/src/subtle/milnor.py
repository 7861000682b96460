"""Finitely presented models of the mod-2 Milnor K-theory ring of a base field.

A model is a finitely presented GF(2)-algebra on degree-1 symbol generators
together with a designated nonzero degree-1 class ``alpha`` (the symbol of the
element cut out by the quadratic extension).  Degree-n classes sit in
bidegree (n)[n].

Built-in models:

* ``real``                one generator ``rho``, no relations, alpha = rho
* ``finite_field``        one generator ``s``, relation s^2 = 0, alpha = s
* ``quadratically_closed`` no generators; carries no valid alpha, so every
  alpha-consuming operation rejects it
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .bigraded import (
    MILNOR,
    AlgebraPresentation,
    Bidegree,
    Element,
    GenSpec,
    IdealGens,
    colon_ideal,
    presentation_new,
    quotient,
    standard_monomials,
)
from .errors import AlphaIsSquare, SubtleError, ZeroElement

KMElement = Element

BUILTIN_MODELS = {
    "real": {
        "builtin": "real",
        "generators": ["rho"],
        "relations": [],
        "alpha": "rho",
        "minus_one": "rho",
    },
    "finite_field": {
        "builtin": "finite_field",
        "generators": ["s"],
        "relations": ["s^2"],
        "alpha": "s",
    },
    "quadratically_closed": {
        "builtin": "quadratically_closed",
        "generators": [],
        "relations": [],
        "alpha": None,
    },
}


@dataclass(eq=False)
class FieldModel:
    """Immutable Milnor K-theory mod 2 model with a designated symbol."""

    tag: str
    generators: tuple[str, ...]
    relation_strings: tuple[str, ...]
    alpha_string: str | None
    minus_one_string: str | None
    presentation: AlgebraPresentation
    degree_bound: int
    _ann_cache: dict = field(default_factory=dict, repr=False)

    @property
    def alpha(self) -> KMElement:
        if self.alpha_string is None:
            raise AlphaIsSquare(
                f"model {self.tag!r} has no designated nonzero degree-1 class"
            )
        return self.presentation.el(self.alpha_string)

    @property
    def has_alpha(self) -> bool:
        return self.alpha_string is not None

    @property
    def minus_one(self) -> KMElement | None:
        if self.minus_one_string is None:
            return None
        return self.presentation.el(self.minus_one_string)

    def dimensions(self, max_degree: int) -> list[int]:
        """GF(2)-dimension of each graded piece up to max_degree."""
        return [
            len(standard_monomials(self.presentation, n, n))
            for n in range(max_degree + 1)
        ]

    def annihilator(self, degree_bound: int | None = None) -> IdealGens:
        """Ann({alpha}), cached per bound."""
        bound = degree_bound if degree_bound is not None else self.degree_bound
        if bound not in self._ann_cache:
            self._ann_cache[bound] = km_annihilator(self, self.alpha, bound)
        return self._ann_cache[bound]

    def __str__(self) -> str:
        rels = ", ".join(self.relation_strings) if self.relation_strings else "none"
        return (
            f"model {self.tag}: generators [{', '.join(self.generators)}], "
            f"relations [{rels}], alpha = {self.alpha_string}"
        )


def build_field_model(spec, degree_bound: int = 16) -> FieldModel:
    """Validate a model descriptor (builtin name, dict, or JSON path).

    Rejects models whose alpha reduces to 0; the quadratically closed
    builtin is the one descriptor allowed to omit alpha.
    """
    descriptor = _resolve_descriptor(spec)
    generators = list(descriptor.get("generators", []))
    relations = list(descriptor.get("relations", []))
    alpha = descriptor.get("alpha")
    minus_one = descriptor.get("minus_one")
    tag = descriptor.get("builtin") or descriptor.get("name") or "custom"

    gens = [GenSpec(name, Bidegree(1, 1), MILNOR) for name in generators]
    pres = presentation_new(gens, relations, 2 * degree_bound)

    if alpha is None:
        if tag != "quadratically_closed":
            raise AlphaIsSquare("descriptor must designate alpha")
    else:
        alpha_el = pres.el(alpha)
        if alpha_el.is_zero():
            raise AlphaIsSquare(f"alpha = {alpha!r} reduces to 0 in the model")
        if alpha_el.bidegree() != Bidegree(1, 1):
            raise AlphaIsSquare(f"alpha = {alpha!r} is not homogeneous of degree 1")
    if minus_one is not None:
        pres.el(minus_one)  # validates

    model = FieldModel(
        tag=tag,
        generators=tuple(generators),
        relation_strings=tuple(relations),
        alpha_string=alpha,
        minus_one_string=minus_one,
        presentation=pres,
        degree_bound=degree_bound,
    )
    pres.model = model
    return model


def _resolve_descriptor(spec) -> dict:
    if isinstance(spec, dict):
        return dict(spec)
    if isinstance(spec, FieldModel):
        raise SubtleError("already a FieldModel")
    name = str(spec)
    if name in BUILTIN_MODELS:
        return dict(BUILTIN_MODELS[name])
    path = Path(name)
    if path.is_file():
        with open(path, "r", encoding="utf-8") as fh:
            descriptor = json.load(fh)
        builtin = descriptor.get("builtin")
        if builtin:
            base = dict(BUILTIN_MODELS[builtin])
            base.update({k: v for k, v in descriptor.items() if v is not None})
            return base
        return descriptor
    raise SubtleError(f"unknown model {name!r} (not builtin, not a file)")


def km_normal_form(model: FieldModel, raw) -> KMElement:
    """Reduced representative of an element of the model."""
    return model.presentation.el(raw)


def km_annihilator(model: FieldModel, f=None, degree_bound: int = 8) -> IdealGens:
    """Reduced generators of {x : x*f = 0}, certified in degrees <= bound.

    Computed as the colon ideal (0 : f) by per-degree linear solves in the
    shared engine.
    """
    if f is None:
        f = model.alpha  # raises when the model carries no alpha
    pres = model.presentation.extend_bound(2 * degree_bound)
    f_el = pres.el(f)
    if f_el.is_zero():
        raise ZeroElement("annihilator of 0 is the whole ring")
    return colon_ideal(pres, None, f_el, 2 * degree_bound)


def km_quotient_dimensions(model: FieldModel, ideal: IdealGens, max_degree: int) -> list[int]:
    """Dimensions of (model ring)/(ideal) per degree; used for Ann bookkeeping."""
    q = quotient(model.presentation, ideal)
    return [len(standard_monomials(q, n, n)) for n in range(max_degree + 1)]
