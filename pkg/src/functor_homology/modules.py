"""Finitely presented modules and their morphisms, over the two base rings.

Integer case: a module is Z^gens modulo the row span of a relation matrix.
F_p-algebra case: a module is a finite-dimensional vector space with one
action matrix per algebra basis element (no relations needed).

Morphisms are matrices on generators, validated at construction: they must
map relations into relations (integers) or commute with every action
matrix (algebras).  All values are immutable after construction and every
operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fplinalg, intlinalg
from .errors import ExactnessError, MorphismError, RingMismatchError, ShapeError
from .fplinalg import FpMatrix, fp_from_columns
from .intlinalg import IntMatrix, from_columns, hstack
from .rings import Ring, ZZ


class ModuleObj:
    """A finitely presented module over a `Ring`."""

    def __init__(self, ring: Ring, gens=None, rels=None, dim=None, actions=None,
                 free_rank=None, check=True):
        self.ring = ring
        if ring.is_integers:
            self.gens = gens
            self.rels = tuple(tuple(r) for r in (rels or ()))
            for r in self.rels:
                if len(r) != gens:
                    raise ShapeError("relation length must equal generator count")
            self.dim = None
            self.actions = None
        else:
            self.dim = dim
            self.gens = dim
            self.rels = None
            self.actions = tuple(actions)
            if len(self.actions) != ring.dim:
                raise ShapeError("need one action matrix per algebra basis element")
            for m in self.actions:
                if m.rows != dim or m.cols != dim or m.p != ring.p:
                    raise ShapeError("action matrix has wrong shape")
            if check:
                self._check_actions()
        self.free_rank = free_rank
        self._cache = {}

    def _check_actions(self):
        ring = self.ring
        if self.dim == 0:
            return
        unit_action = FpMatrix.zeros(ring.p, self.dim, self.dim)
        for a, coeff in enumerate(ring.unit):
            if coeff:
                unit_action = unit_action.add(self.actions[a].scale(coeff))
        if unit_action != FpMatrix.identity(ring.p, self.dim):
            raise MorphismError("unit of the algebra must act as the identity")
        for a in range(ring.dim):
            for b in range(ring.dim):
                lhs = self.actions[a].mul(self.actions[b])
                rhs = FpMatrix.zeros(ring.p, self.dim, self.dim)
                for e, coeff in enumerate(ring.mult[a][b]):
                    if coeff:
                        rhs = rhs.add(self.actions[e].scale(coeff))
                if lhs != rhs:
                    raise MorphismError(
                        f"actions violate the structure constants at {(a, b)}")

    # -- presentation data (integer case) --------------------------------

    def _rel_cols(self) -> IntMatrix:
        if "rel_cols" not in self._cache:
            self._cache["rel_cols"] = from_columns([list(r) for r in self.rels], self.gens)
        return self._cache["rel_cols"]

    def _pres_snf(self):
        if "pres_snf" not in self._cache:
            self._cache["pres_snf"] = intlinalg.snf(self._rel_cols())
        return self._cache["pres_snf"]

    def _uinv(self) -> IntMatrix:
        if "uinv" not in self._cache:
            self._cache["uinv"] = intlinalg.inverse_unimodular(self._pres_snf().U)
        return self._cache["uinv"]

    def in_relations(self, vec) -> bool:
        """Is this generator-coordinate vector zero in the module?"""
        if self.ring.is_integers:
            res = self._pres_snf()
            u = res.U.mul_vec(list(vec))
            diag = res.diagonal()
            r = res.rank
            for i in range(self.gens):
                d = diag[i] if i < len(diag) else 0
                if i < r:
                    if u[i] % d:
                        return False
                elif u[i]:
                    return False
            return True
        return all(x % self.ring.p == 0 for x in vec)

    def reduce(self, vec):
        """Canonical representative of a coordinate vector."""
        if self.ring.is_integers:
            res = self._pres_snf()
            u = res.U.mul_vec(list(vec))
            diag = res.diagonal()
            r = res.rank
            for i in range(r):
                u[i] %= diag[i]
            return tuple(self._uinv().mul_vec(u))
        return tuple(x % self.ring.p for x in vec)

    def invariant_factors(self):
        """(torsion factors > 1, free rank) for integer modules."""
        assert self.ring.is_integers
        res = self._pres_snf()
        diag = res.diagonal()
        torsion = [d for d in diag if d > 1]
        free = self.gens - res.rank
        return torsion, free

    def is_zero(self) -> bool:
        if self.ring.is_integers:
            if self.gens == 0:
                return True
            torsion, free = self.invariant_factors()
            return not torsion and free == 0
        return self.dim == 0

    def describe(self) -> str:
        if self.ring.is_integers:
            torsion, free = self.invariant_factors()
            parts = [f"Z/{d}" for d in torsion]
            if free == 1:
                parts.append("Z")
            elif free > 1:
                parts.append(f"Z^{free}")
            return " ⊕ ".join(parts) if parts else "0"
        if self.dim == 0:
            return "0"
        return f"dim {self.dim} over {self.ring.label}"

    def fp_dimension(self) -> int:
        """Underlying F_p dimension (algebra case only)."""
        assert not self.ring.is_integers
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, ModuleObj) or self.ring != other.ring:
            return False
        if self.ring.is_integers:
            return self.gens == other.gens and self.rels == other.rels
        return self.dim == other.dim and self.actions == other.actions

    def __repr__(self):
        return f"ModuleObj({self.describe()})"


def z_module(rels, gens) -> ModuleObj:
    return ModuleObj(ZZ, gens=gens, rels=rels)


def cyclic(n) -> ModuleObj:
    """Z/n (n = 0 gives Z)."""
    return ModuleObj(ZZ, gens=1, rels=[[n]] if n else [])


def free_module(ring: Ring, rank: int) -> ModuleObj:
    if ring.is_integers:
        return ModuleObj(ring, gens=rank, rels=(), free_rank=rank)
    n = rank * ring.dim
    actions = []
    for a in range(ring.dim):
        lam = ring.left_mult_matrix(ring._e(a))
        data = [[0] * n for _ in range(n)]
        for blk in range(rank):
            for i in range(ring.dim):
                for j in range(ring.dim):
                    data[blk * ring.dim + i][blk * ring.dim + j] = lam.data[i][j]
        actions.append(FpMatrix(ring.p, n, n, data))
    return ModuleObj(ring, dim=n, actions=actions, free_rank=rank, check=False)


def free_generator_columns(P: ModuleObj):
    """Coordinate columns of the module generators of a free module."""
    assert P.free_rank is not None, "module is not marked free"
    if P.ring.is_integers:
        return [[1 if i == j else 0 for i in range(P.gens)] for j in range(P.free_rank)]
    ring = P.ring
    cols = []
    for j in range(P.free_rank):
        v = [0] * P.dim
        for a, coeff in enumerate(ring.unit):
            v[j * ring.dim + a] = coeff
        cols.append(v)
    return cols


def trivial_module(ring: Ring) -> ModuleObj:
    """One-dimensional module where every basis element acts as 1.

    Valid for group algebras (and any algebra whose basis maps to 1 under
    an augmentation); construction-time checks reject anything else.
    """
    one = FpMatrix(ring.p, 1, 1, [[1]])
    return ModuleObj(ring, dim=1, actions=[one] * ring.dim)


def ring_as_module(ring: Ring) -> ModuleObj:
    return free_module(ring, 1)


class Element:
    """An element of a module, stored as generator coordinates."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: ModuleObj, coords):
        if len(coords) != parent.gens:
            raise ShapeError("coordinate length must equal generator count")
        self.parent = parent
        self.coords = tuple(coords)

    def normal_form(self):
        return self.parent.reduce(self.coords)

    def is_zero(self):
        return self.parent.in_relations(self.coords)

    def __eq__(self, other):
        return (isinstance(other, Element) and self.parent == other.parent
                and self.normal_form() == other.normal_form())

    def __add__(self, other):
        assert self.parent == other.parent
        return Element(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        assert self.parent == other.parent
        return Element(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def scale(self, c):
        return Element(self.parent, [c * a for a in self.coords])

    def __repr__(self):
        return f"Element({list(self.coords)} in {self.parent.describe()})"


class ModMor:
    """Morphism of modules, given by its matrix on generators."""

    def __init__(self, source: ModuleObj, target: ModuleObj, matrix, check=True):
        if source.ring != target.ring:
            raise RingMismatchError("morphism endpoints over different rings")
        self.source = source
        self.target = target
        self.ring = source.ring
        if self.ring.is_integers:
            if not isinstance(matrix, IntMatrix):
                matrix = IntMatrix.from_rows(matrix) if matrix else IntMatrix.zeros(0, 0)
            if matrix.rows != target.gens or matrix.cols != source.gens:
                raise ShapeError(
                    f"matrix must be {target.gens}x{source.gens}, got "
                    f"{matrix.rows}x{matrix.cols}")
        else:
            if not isinstance(matrix, FpMatrix):
                matrix = FpMatrix.from_rows(self.ring.p, matrix)
            if matrix.rows != target.dim or matrix.cols != source.dim:
                raise ShapeError("matrix has wrong shape")
        self.matrix = matrix
        self._cache = {}
        if check:
            self._check()

    def _check(self):
        if self.ring.is_integers:
            for rel in self.source.rels:
                img = self.matrix.mul_vec(list(rel))
                if not self.target.in_relations(img):
                    raise MorphismError(
                        f"relation {list(rel)} is not sent into target relations")
        else:
            for a in range(self.ring.dim):
                lhs = self.matrix.mul(self.source.actions[a])
                rhs = self.target.actions[a].mul(self.matrix)
                if lhs != rhs:
                    raise MorphismError(f"map does not commute with action {a}")

    def then(self, other: "ModMor") -> "ModMor":
        """self followed by other (i.e. other compose self)."""
        if self.target != other.source:
            raise ShapeError("morphisms are not composable")
        return ModMor(self.source, other.target, other.matrix.mul(self.matrix),
                      check=False)

    def __add__(self, other):
        if self.source != other.source or self.target != other.target:
            raise ShapeError("morphism sum needs equal endpoints")
        if self.ring.is_integers:
            data = [[x + y for x, y in zip(r, s)]
                    for r, s in zip(self.matrix.data, other.matrix.data)]
            m = IntMatrix(self.matrix.rows, self.matrix.cols, data)
        else:
            m = self.matrix.add(other.matrix)
        return ModMor(self.source, self.target, m, check=False)

    def __neg__(self):
        if self.ring.is_integers:
            m = IntMatrix(self.matrix.rows, self.matrix.cols,
                          [[-x for x in r] for r in self.matrix.data])
        else:
            m = self.matrix.scale(self.ring.p - 1)
        return ModMor(self.source, self.target, m, check=False)

    def __sub__(self, other):
        return self + (-other)

    def apply(self, elt: Element) -> Element:
        assert elt.parent == self.source
        return Element(self.target, self.matrix.mul_vec(list(elt.coords)))

    def is_zero(self) -> bool:
        cols = self.matrix.cols
        return all(self.target.in_relations(self.matrix.col(j)) for j in range(cols))

    def __eq__(self, other):
        if not isinstance(other, ModMor):
            return False
        if self.source != other.source or self.target != other.target:
            return False
        return (self - other).is_zero()

    def __repr__(self):
        return f"ModMor({self.source.describe()} -> {self.target.describe()})"


def identity_mor(A: ModuleObj) -> ModMor:
    if A.ring.is_integers:
        return ModMor(A, A, IntMatrix.identity(A.gens), check=False)
    return ModMor(A, A, FpMatrix.identity(A.ring.p, A.dim), check=False)


def zero_mor(A: ModuleObj, B: ModuleObj) -> ModMor:
    if A.ring.is_integers:
        return ModMor(A, B, IntMatrix.zeros(B.gens, A.gens), check=False)
    return ModMor(A, B, FpMatrix.zeros(A.ring.p, B.dim, A.dim), check=False)


# -- simplification (integer presentations) ------------------------------


def simplify(M: ModuleObj):
    """Invariant-factor presentation plus the two canonical isomorphisms.

    Returns (M', to_simple: M -> M', from_simple: M' -> M) with
    to_simple . from_simple the identity matrix on M'.
    """
    assert M.ring.is_integers
    res = M._pres_snf()
    diag = res.diagonal()
    r = res.rank
    keep = [i for i in range(r) if diag[i] > 1] + list(range(r, M.gens))
    rels = []
    for idx, i in enumerate(keep):
        if i < r:
            row = [0] * len(keep)
            row[idx] = diag[i]
            rels.append(row)
    simple = ModuleObj(ZZ, gens=len(keep), rels=rels)
    uinv = M._uinv()
    from_cols = [uinv.col(i) for i in keep]
    from_mat = from_columns(from_cols, M.gens)
    to_rows = [res.U.data[i] for i in keep]
    to_mat = IntMatrix(len(keep), M.gens, to_rows)
    to_simple = ModMor(M, simple, to_mat, check=False)
    from_simple = ModMor(simple, M, from_mat, check=False)
    return simple, to_simple, from_simple


# -- kernels, cokernels, images ------------------------------------------


def kernel(f: ModMor):
    """(K, mono) with f . mono = 0, universal among such."""
    src, tgt = f.source, f.target
    if f.ring.is_integers:
        comb = hstack([f.matrix, tgt._rel_cols()])
        basis = intlinalg.kernel_basis(comb)
        k_cols = [v[: src.gens] for v in basis]
        k_mat = from_columns(k_cols, src.gens)
        comb2 = hstack([k_mat, src._rel_cols()])
        syz = intlinalg.kernel_basis(comb2)
        rel_rows = [v[: len(k_cols)] for v in syz]
        raw = ModuleObj(ZZ, gens=len(k_cols), rels=rel_rows)
        simple, _, from_simple = simplify(raw)
        mono = ModMor(simple, src, k_mat.mul(from_simple.matrix), check=False)
        return simple, mono
    basis = fplinalg.kernel_basis(f.matrix)
    w = fp_from_columns(f.ring.p, basis, src.dim)
    actions = []
    for a in range(f.ring.dim):
        rhs = src.actions[a].mul(w)
        x = fplinalg.solve_matrix(w, rhs)
        assert x is not None, "kernel subspace must be action-invariant"
        actions.append(x)
    ker = ModuleObj(f.ring, dim=len(basis), actions=actions)
    return ker, ModMor(ker, src, w)


def cokernel(f: ModMor):
    """(Q, epi) with epi . f = 0, couniversal among such."""
    tgt = f.target
    if f.ring.is_integers:
        rels = list(tgt.rels) + [tuple(f.matrix.col(j)) for j in range(f.matrix.cols)]
        raw = ModuleObj(ZZ, gens=tgt.gens, rels=rels)
        simple, to_simple, _ = simplify(raw)
        epi = ModMor(tgt, simple, to_simple.matrix, check=False)
        return simple, epi
    p = f.ring.p
    n = tgt.dim
    pivot_cols = fplinalg.column_space_basis(f.matrix)
    cols = list(pivot_cols)
    basis_mat = fp_from_columns(p, cols, n) if cols else FpMatrix.zeros(p, n, 0)
    for i in range(n):
        e = [1 if k == i else 0 for k in range(n)]
        if fplinalg.solve(basis_mat, e) is None:
            cols.append(e)
            basis_mat = fp_from_columns(p, cols, n)
    r = len(pivot_cols)
    binv = fplinalg.inverse(basis_mat) if n else FpMatrix.zeros(p, 0, 0)
    q_mat = FpMatrix(p, n - r, n, binv.data[r:]) if n else FpMatrix.zeros(p, 0, 0)
    sec = fp_from_columns(p, cols[r:], n) if n else FpMatrix.zeros(p, 0, 0)
    actions = [q_mat.mul(tgt.actions[a]).mul(sec) for a in range(f.ring.dim)]
    coker = ModuleObj(f.ring, dim=n - r, actions=actions)
    return coker, ModMor(tgt, coker, q_mat)


def factor_through_mono(mono: ModMor, h: ModMor) -> ModMor:
    """The unique u with mono . u = h; error if h misses the subobject."""
    if h.target != mono.target:
        raise ShapeError("factor_through_mono endpoints do not match")
    src = h.source
    cols = []
    if mono.ring.is_integers:
        comb = hstack([mono.matrix, mono.target._rel_cols()])
        res = intlinalg.snf(comb)
        for j in range(src.gens):
            sol = intlinalg.solve_snf(res, h.matrix.col(j))
            if sol is None:
                raise MorphismError("map does not factor through the mono")
            cols.append(sol[: mono.source.gens])
        mat = from_columns(cols, mono.source.gens)
    else:
        for j in range(src.dim):
            sol = fplinalg.solve(mono.matrix, h.matrix.col(j))
            if sol is None:
                raise MorphismError("map does not factor through the mono")
            cols.append(sol)
        mat = fp_from_columns(mono.ring.p, cols, mono.source.dim)
    u = ModMor(src, mono.source, mat)
    assert u.then(mono) == h
    return u


def cofactor_through_epi(epi: ModMor, w: ModMor) -> ModMor:
    """The unique v with v . epi = w; requires w to kill ker(epi)."""
    if w.source != epi.source:
        raise ShapeError("cofactor_through_epi endpoints do not match")
    cols = []
    if epi.ring.is_integers:
        comb = hstack([epi.matrix, epi.target._rel_cols()])
        res = intlinalg.snf(comb)
        for j in range(epi.target.gens):
            e = [1 if i == j else 0 for i in range(epi.target.gens)]
            sec = intlinalg.solve_snf(res, e)
            if sec is None:
                raise MorphismError("map is not an epimorphism")
            cols.append(w.matrix.mul_vec(sec[: epi.source.gens]))
        mat = from_columns(cols, w.target.gens)
    else:
        for j in range(epi.target.dim):
            e = [1 if i == j else 0 for i in range(epi.target.dim)]
            sec = fplinalg.solve(epi.matrix, e)
            if sec is None:
                raise MorphismError("map is not an epimorphism")
            cols.append(w.matrix.mul_vec(sec))
        mat = fp_from_columns(epi.ring.p, cols, w.target.dim)
    v = ModMor(epi.target, w.target, mat)
    if not epi.then(v) == w:
        raise MorphismError("map does not descend along the epi")
    return v


@dataclass
class ImageData:
    obj: ModuleObj
    mono: ModMor
    epi: ModMor


def image(f: ModMor) -> ImageData:
    """Image computed literally as the kernel of the cokernel."""
    _, coker_epi = cokernel(f)
    img, mono = kernel(coker_epi)
    epi = factor_through_mono(mono, f)
    return ImageData(img, mono, epi)


def is_mono(f: ModMor) -> bool:
    k, _ = kernel(f)
    return k.is_zero()


def is_epi(f: ModMor) -> bool:
    c, _ = cokernel(f)
    return c.is_zero()


def is_iso(f: ModMor) -> bool:
    return is_mono(f) and is_epi(f)


def iso_inverse(f: ModMor) -> ModMor:
    """Inverse of an isomorphism (preimage per generator)."""
    cols = []
    if f.ring.is_integers:
        comb = hstack([f.matrix, f.target._rel_cols()])
        res = intlinalg.snf(comb)
        for j in range(f.target.gens):
            e = [1 if i == j else 0 for i in range(f.target.gens)]
            sol = intlinalg.solve_snf(res, e)
            if sol is None:
                raise MorphismError("morphism is not invertible")
            cols.append(sol[: f.source.gens])
        mat = from_columns(cols, f.source.gens)
    else:
        for j in range(f.target.dim):
            e = [1 if i == j else 0 for i in range(f.target.dim)]
            sol = fplinalg.solve(f.matrix, e)
            if sol is None:
                raise MorphismError("morphism is not invertible")
            cols.append(sol)
        mat = fp_from_columns(f.ring.p, cols, f.source.dim)
    inv = ModMor(f.target, f.source, mat)
    if not (f.then(inv) == identity_mor(f.source)
            and inv.then(f) == identity_mor(f.target)):
        raise MorphismError("morphism is not an isomorphism")
    return inv


def is_exact_at(f: ModMor, g: ModMor) -> bool:
    """Exactness at the middle of f, g: image(f) -> kernel(g) is iso."""
    if f.target != g.source:
        raise ShapeError("maps are not composable")
    if not f.then(g).is_zero():
        raise ExactnessError("composite is nonzero")
    img = image(f)
    _, kappa = kernel(g)
    u = factor_through_mono(kappa, img.mono)
    return is_iso(u)


# -- biproducts ------------------------------------------------------------


@dataclass
class BiproductData:
    obj: ModuleObj
    inj1: ModMor
    inj2: ModMor
    proj1: ModMor
    proj2: ModMor


def biproduct(A: ModuleObj, B: ModuleObj) -> BiproductData:
    if A.ring != B.ring:
        raise RingMismatchError("biproduct needs a common ring")
    if A.ring.is_integers:
        gens = A.gens + B.gens
        rels = [tuple(r) + (0,) * B.gens for r in A.rels]
        rels += [(0,) * A.gens + tuple(r) for r in B.rels]
        obj = ModuleObj(ZZ, gens=gens, rels=rels,
                        free_rank=(A.free_rank + B.free_rank
                                   if A.free_rank is not None and B.free_rank is not None
                                   else None))
        i1 = [[1 if i == j else 0 for j in range(A.gens)] for i in range(gens)]
        i2 = [[1 if i - A.gens == j else 0 for j in range(B.gens)] for i in range(gens)]
        p1 = [[1 if i == j else 0 for j in range(gens)] for i in range(A.gens)]
        p2 = [[1 if j - A.gens == i else 0 for j in range(gens)] for i in range(B.gens)]
        return BiproductData(
            obj,
            ModMor(A, obj, IntMatrix(gens, A.gens, i1), check=False),
            ModMor(B, obj, IntMatrix(gens, B.gens, i2), check=False),
            ModMor(obj, A, IntMatrix(A.gens, gens, p1), check=False),
            ModMor(obj, B, IntMatrix(B.gens, gens, p2), check=False),
        )
    p = A.ring.p
    n = A.dim + B.dim
    actions = []
    for a in range(A.ring.dim):
        data = [[0] * n for _ in range(n)]
        for i in range(A.dim):
            for j in range(A.dim):
                data[i][j] = A.actions[a].data[i][j]
        for i in range(B.dim):
            for j in range(B.dim):
                data[A.dim + i][A.dim + j] = B.actions[a].data[i][j]
        actions.append(FpMatrix(p, n, n, data))
    fr = (A.free_rank + B.free_rank
          if A.free_rank is not None and B.free_rank is not None else None)
    obj = ModuleObj(A.ring, dim=n, actions=actions, free_rank=fr, check=False)
    i1 = [[1 if i == j else 0 for j in range(A.dim)] for i in range(n)]
    i2 = [[1 if i - A.dim == j else 0 for j in range(B.dim)] for i in range(n)]
    p1 = [[1 if i == j else 0 for j in range(n)] for i in range(A.dim)]
    p2 = [[1 if j - A.dim == i else 0 for j in range(n)] for i in range(B.dim)]
    return BiproductData(
        obj,
        ModMor(A, obj, FpMatrix(p, n, A.dim, i1), check=False),
        ModMor(B, obj, FpMatrix(p, n, B.dim, i2), check=False),
        ModMor(obj, A, FpMatrix(p, A.dim, n, p1), check=False),
        ModMor(obj, B, FpMatrix(p, B.dim, n, p2), check=False),
    )


@dataclass
class NaryBiproduct:
    obj: ModuleObj
    injs: list
    projs: list


def zero_module(ring: Ring) -> ModuleObj:
    if ring.is_integers:
        return ModuleObj(ring, gens=0, rels=(), free_rank=0)
    return ModuleObj(ring, dim=0, actions=[FpMatrix.zeros(ring.p, 0, 0)] * ring.dim,
                     free_rank=0, check=False)


def nary_biproduct(mods, ring=None) -> NaryBiproduct:
    """Biproduct of a list of modules with all injections/projections.

    An empty list gives the zero module (ring then required).
    """
    mods = list(mods)
    if not mods:
        assert ring is not None
        return NaryBiproduct(zero_module(ring), [], [])
    ring = mods[0].ring
    if any(m.ring != ring for m in mods):
        raise RingMismatchError("biproduct needs a common ring")
    sizes = [m.gens for m in mods]
    offsets = [sum(sizes[:k]) for k in range(len(mods))]
    total = sum(sizes)
    if ring.is_integers:
        rels = []
        for k, m in enumerate(mods):
            for r in m.rels:
                row = [0] * total
                row[offsets[k]: offsets[k] + sizes[k]] = list(r)
                rels.append(row)
        fr = 0
        for m in mods:
            if m.free_rank is None:
                fr = None
                break
            fr += m.free_rank
        obj = ModuleObj(ZZ, gens=total, rels=rels, free_rank=fr)
        injs, projs = [], []
        for k, m in enumerate(mods):
            mi = [[1 if i == offsets[k] + j else 0 for j in range(sizes[k])]
                  for i in range(total)]
            mp = [[1 if j == offsets[k] + i else 0 for j in range(total)]
                  for i in range(sizes[k])]
            injs.append(ModMor(m, obj, IntMatrix(total, sizes[k], mi), check=False))
            projs.append(ModMor(obj, m, IntMatrix(sizes[k], total, mp), check=False))
        return NaryBiproduct(obj, injs, projs)
    p = ring.p
    actions = []
    for a in range(ring.dim):
        data = [[0] * total for _ in range(total)]
        for k, m in enumerate(mods):
            off = offsets[k]
            act = m.actions[a].data
            for i in range(sizes[k]):
                for j in range(sizes[k]):
                    data[off + i][off + j] = act[i][j]
        actions.append(FpMatrix(p, total, total, data))
    fr = 0
    for m in mods:
        if m.free_rank is None:
            fr = None
            break
        fr += m.free_rank
    obj = ModuleObj(ring, dim=total, actions=actions, free_rank=fr, check=False)
    injs, projs = [], []
    for k, m in enumerate(mods):
        mi = [[1 if i == offsets[k] + j else 0 for j in range(sizes[k])]
              for i in range(total)]
        mp = [[1 if j == offsets[k] + i else 0 for j in range(total)]
              for i in range(sizes[k])]
        injs.append(ModMor(m, obj, FpMatrix(p, total, sizes[k], mi), check=False))
        projs.append(ModMor(obj, m, FpMatrix(p, sizes[k], total, mp), check=False))
    return NaryBiproduct(obj, injs, projs)


# -- free covers and lifting ----------------------------------------------


def minimal_generators(M: ModuleObj):
    """Greedy module generating set (algebra case), scanning the basis in
    order.  Deterministic; not guaranteed minimal, but small."""
    assert not M.ring.is_integers
    ring = M.ring
    chosen = []
    span_cols = []
    span_mat = FpMatrix.zeros(ring.p, M.dim, 0)
    for i in range(M.dim):
        v = [1 if k == i else 0 for k in range(M.dim)]
        if span_cols and fplinalg.solve(span_mat, v) is not None:
            continue
        if not span_cols and M.dim == 0:
            continue
        chosen.append(v)
        for a in range(ring.dim):
            span_cols.append(M.actions[a].mul_vec(v))
        span_mat = fp_from_columns(ring.p, span_cols, M.dim)
    return chosen


def free_cover(M: ModuleObj):
    """(P, epi) with P free; generators are read off the presentation
    (integers) or a greedy generating set (algebras)."""
    if M.ring.is_integers:
        P = free_module(M.ring, M.gens)
        epi = ModMor(P, M, IntMatrix.identity(M.gens), check=False)
        return P, epi
    ring = M.ring
    gens_cols = minimal_generators(M)
    P = free_module(ring, len(gens_cols))
    cols = []
    for v in gens_cols:
        for a in range(ring.dim):
            cols.append(M.actions[a].mul_vec(v))
    mat = fp_from_columns(ring.p, cols, M.dim)
    epi = ModMor(P, M, mat)
    return P, epi


def lift_through_epi(g: ModMor, e: ModMor) -> ModMor:
    """h with e . h = g, for g out of a free module and e an epi."""
    P = g.source
    assert P.free_rank is not None, "lifting needs a free source"
    if g.target != e.target:
        raise ShapeError("lift endpoints do not match")
    gen_cols = free_generator_columns(P)
    if P.ring.is_integers:
        comb = hstack([e.matrix, e.target._rel_cols()])
        res = intlinalg.snf(comb)
        cols = []
        for gc in gen_cols:
            y = g.matrix.mul_vec(gc)
            sol = intlinalg.solve_snf(res, y)
            if sol is None:
                raise MorphismError("cannot lift through the (non-)epi")
            cols.append(sol[: e.source.gens])
        mat = from_columns(cols, e.source.gens)
    else:
        ring = P.ring
        cols = []
        for gc in gen_cols:
            y = g.matrix.mul_vec(gc)
            sol = fplinalg.solve(e.matrix, y)
            if sol is None:
                raise MorphismError("cannot lift through the (non-)epi")
            for a in range(ring.dim):
                cols.append(e.source.actions[a].mul_vec(sol))
        # column order must follow the free basis (copy, algebra element)
        mat = fp_from_columns(ring.p, cols, e.source.dim)
    h = ModMor(P, e.source, mat)
    assert h.then(e) == g
    return h


def preimage(f: ModMor, y: Element):
    """Some x with f(x) = y, or None when y is not in the image."""
    assert y.parent == f.target
    if f.ring.is_integers:
        comb = hstack([f.matrix, f.target._rel_cols()])
        sol = intlinalg.solve(comb, list(y.coords))
        if sol is None:
            return None
        return Element(f.source, sol[: f.source.gens])
    sol = fplinalg.solve(f.matrix, list(y.coords))
    if sol is None:
        return None
    return Element(f.source, sol)


# -- hom spaces and element enumeration (test/fixture support) ------------


def hom_basis(A: ModuleObj, B: ModuleObj):
    """Matrices generating all well-defined morphisms A -> B."""
    if A.ring != B.ring:
        raise RingMismatchError("hom needs a common ring")
    if A.ring.is_integers:
        a, b = A.gens, B.gens
        nrel_a = len(A.rels)
        nrel_b = len(B.rels)
        nt = a * b
        ny = nrel_b * nrel_a
        rows = []
        for ri, rel in enumerate(A.rels):
            for i in range(b):
                row = [0] * (nt + ny)
                for j in range(a):
                    row[i * a + j] = rel[j]
                for k in range(nrel_b):
                    row[nt + ri * nrel_b + k] = -B.rels[k][i]
                rows.append(row)
        if not rows:
            basis = []
            for idx in range(nt):
                v = [0] * nt
                v[idx] = 1
                basis.append(v)
        else:
            big = IntMatrix(len(rows), nt + ny, rows)
            basis = [v[:nt] for v in intlinalg.kernel_basis(big)]
        out = []
        for v in basis:
            mat = IntMatrix(b, a, [[v[i * a + j] for j in range(a)] for i in range(b)])
            if not all(x == 0 for r in mat.data for x in r):
                out.append(ModMor(A, B, mat))
        return out
    p = A.ring.p
    na, nb = A.dim, B.dim
    nt = na * nb
    rows = []
    for act in range(A.ring.dim):
        ra, rb = A.actions[act], B.actions[act]
        for i in range(nb):
            for j in range(na):
                row = [0] * nt
                for k in range(na):
                    row[i * na + k] = (row[i * na + k] + ra.data[k][j]) % p
                for k in range(nb):
                    row[k * na + j] = (row[k * na + j] - rb.data[i][k]) % p
                rows.append(row)
    if not rows:
        rows = [[0] * nt]
    big = FpMatrix(p, len(rows), nt, rows)
    out = []
    for v in fplinalg.kernel_basis(big):
        mat = FpMatrix(p, nb, na, [[v[i * na + j] for j in range(na)] for i in range(nb)])
        if not mat.is_zero():
            out.append(ModMor(A, B, mat))
    return out


def enumerate_elements(A: ModuleObj, limit=4096):
    """All elements of a finite module (oracle-sized only)."""
    if A.ring.is_integers:
        torsion, free = A.invariant_factors()
        if free:
            raise ValueError("module is infinite")
        res = A._pres_snf()
        diag = res.diagonal()
        total = 1
        for d in diag:
            total *= max(d, 1)
        if total > limit:
            raise ValueError("module too large to enumerate")
        uinv = A._uinv()
        out = []
        idxs = [0] * A.gens
        while True:
            out.append(Element(A, uinv.mul_vec(list(idxs))))
            k = A.gens - 1
            while k >= 0:
                idxs[k] += 1
                if idxs[k] < max(diag[k], 1):
                    break
                idxs[k] = 0
                k -= 1
            if k < 0:
                break
        return out
    p = A.ring.p
    if p ** A.dim > limit:
        raise ValueError("module too large to enumerate")
    out = []
    coords = [0] * A.dim
    while True:
        out.append(Element(A, list(coords)))
        k = A.dim - 1
        while k >= 0:
            coords[k] += 1
            if coords[k] < p:
                break
            coords[k] = 0
            k -= 1
        if k < 0:
            break
    return out
