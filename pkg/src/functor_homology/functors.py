"""Symbolic additive functors and natural transformations.

Four right-exact shapes are available: tensoring with a fixed module,
base change along a ring map (coinvariants arise from the augmentation
map of a group algebra), composites, and the componentwise lift of a
functor to diagram categories.
"""

from __future__ import annotations

from . import tensorops
from .complexes import Complex, complex_apply
from .diagrams import DiagMor, Diagram
from .errors import RingMismatchError, ShapeError
from .fincat import FinCat
from .modules import ModMor, ModuleObj
from .rings import RingMap

TENSOR = "tensor"
BASE_CHANGE = "base_change"
COMPOSE = "compose"
EXPONENT = "exponent"


class FunctorSpec:
    """An additive functor between the implemented module categories.

    Tensor and base change are right-exact by construction; composites of
    right-exact functors are right-exact; the exponent lifts a functor to
    C^I -> D^I componentwise.
    """

    def __init__(self, kind, module=None, ring_map=None, outer=None, inner=None,
                 index=None, label=None, side="right"):
        self.kind = kind
        self.module = module
        self.ring_map = ring_map
        self.outer = outer
        self.inner = inner
        self.index = index
        self.side = side
        if kind == TENSOR:
            if not module.ring.is_commutative():
                raise RingMismatchError("tensor functor needs a commutative base")
            self.source_ring = module.ring
            self.target_ring = module.ring
            if label:
                self.label = label
            elif side == "right":
                self.label = f"(-) (x) {module.describe()}"
            else:
                self.label = f"{module.describe()} (x) (-)"
        elif kind == BASE_CHANGE:
            self.source_ring = ring_map.source
            self.target_ring = ring_map.target
            self.label = label or (f"base change {ring_map.source.label} -> "
                                   f"{ring_map.target.label}")
        elif kind == COMPOSE:
            if inner.target_ring != outer.source_ring:
                raise RingMismatchError("composite functors do not match up")
            self.source_ring = inner.source_ring
            self.target_ring = outer.target_ring
            self.label = label or f"({outer.label}) . ({inner.label})"
        elif kind == EXPONENT:
            self.source_ring = inner.source_ring
            self.target_ring = inner.target_ring
            self.label = label or f"({inner.label})^I"
        else:
            raise ShapeError(f"unknown functor kind {kind!r}")

    def __repr__(self):
        return f"FunctorSpec({self.label})"


def tensor_with(M: ModuleObj, label=None, side="right") -> FunctorSpec:
    """side='right': X -> X (x) M;  side='left': X -> M (x) X."""
    return FunctorSpec(TENSOR, module=M, label=label, side=side)


def base_change(rm: RingMap, label=None) -> FunctorSpec:
    return FunctorSpec(BASE_CHANGE, ring_map=rm, label=label)


def compose(outer: FunctorSpec, inner: FunctorSpec, label=None) -> FunctorSpec:
    return FunctorSpec(COMPOSE, outer=outer, inner=inner, label=label)


def exponent(inner: FunctorSpec, index: FinCat, label=None) -> FunctorSpec:
    return FunctorSpec(EXPONENT, inner=inner, index=index, label=label)


def apply_to_object(F: FunctorSpec, X):
    if F.kind == EXPONENT:
        if not isinstance(X, Diagram):
            raise ShapeError("exponent functor applies to diagrams")
        return exponent_apply(F.inner, X)
    if not isinstance(X, ModuleObj):
        raise ShapeError(f"{F.label} applies to modules")
    if X.ring != F.source_ring:
        raise RingMismatchError(f"{F.label} is not applicable over {X.ring.label}")
    if F.kind == TENSOR:
        if F.side == "right":
            return tensorops.tensor_obj(X, F.module)
        return tensorops.tensor_obj(F.module, X)
    if F.kind == BASE_CHANGE:
        return tensorops.base_change_obj(F.ring_map, X)
    return apply_to_object(F.outer, apply_to_object(F.inner, X))


def apply_to_morphism(F: FunctorSpec, f):
    if F.kind == EXPONENT:
        if not isinstance(f, DiagMor):
            raise ShapeError("exponent functor applies to diagram morphisms")
        return exponent_apply(F.inner, f)
    if not isinstance(f, ModMor):
        raise ShapeError(f"{F.label} applies to module morphisms")
    if f.ring != F.source_ring:
        raise RingMismatchError(f"{F.label} is not applicable over {f.ring.label}")
    if F.kind == TENSOR:
        ident = ModMor(F.module, F.module, _identity_matrix(F.module), check=False)
        if F.side == "right":
            return tensorops.tensor_mor(f, ident)
        return tensorops.tensor_mor(ident, f)
    if F.kind == BASE_CHANGE:
        return tensorops.base_change_mor(F.ring_map, f)
    return apply_to_morphism(F.outer, apply_to_morphism(F.inner, f))


def _identity_matrix(M: ModuleObj):
    from .fplinalg import FpMatrix
    from .intlinalg import IntMatrix

    if M.ring.is_integers:
        return IntMatrix.identity(M.gens)
    return FpMatrix.identity(M.ring.p, M.dim)


def apply_any(F: FunctorSpec, x):
    if isinstance(x, (ModuleObj, Diagram)):
        return apply_to_object(F, x)
    return apply_to_morphism(F, x)


def apply_to_complex(F: FunctorSpec, c: Complex, check=True) -> Complex:
    """Objectwise and mapwise application; d.d = 0 survives by additivity."""
    return complex_apply(c, lambda x: apply_any(F, x), check=check)


def exponent_apply(F: FunctorSpec, x):
    """The exponent functor F^I on diagrams and diagram morphisms."""
    if isinstance(x, Diagram):
        idx = x.index
        comps = {o: apply_to_object(F, x.components[o]) for o in idx.objects}
        maps = {m: apply_to_morphism(F, x.maps[m]) for m in idx.mor_names}
        return Diagram(idx, comps, maps)
    if isinstance(x, DiagMor):
        src = exponent_apply(F, x.source)
        tgt = exponent_apply(F, x.target)
        comps = {o: apply_to_morphism(F, x.comps[o]) for o in x.index.objects}
        return DiagMor(src, tgt, comps)
    raise ShapeError("exponent_apply expects a diagram or diagram morphism")


class NatSpec:
    """Natural transformation between functor specs.

    The implemented shape: a module map M -> M' inducing
    (-) (x) M -> (-) (x) M'.
    """

    def __init__(self, g: ModMor, label=None):
        self.g = g
        self.source_spec = tensor_with(g.source)
        self.target_spec = tensor_with(g.target)
        self.label = label or f"(-) (x) [{g.source.describe()} -> {g.target.describe()}]"

    def at(self, A: ModuleObj) -> ModMor:
        """Component of the transformation at the object A."""
        ident = ModMor(A, A, _identity_matrix(A), check=False)
        return tensorops.tensor_mor(ident, self.g)

    def __repr__(self):
        return f"NatSpec({self.label})"


def exponent_nat(eta: NatSpec, d: Diagram) -> DiagMor:
    """The exponent of a natural transformation, evaluated at a diagram."""
    src = exponent_apply(eta.source_spec, d)
    tgt = exponent_apply(eta.target_spec, d)
    comps = {o: eta.at(d.components[o]) for o in d.index.objects}
    return DiagMor(src, tgt, comps)
