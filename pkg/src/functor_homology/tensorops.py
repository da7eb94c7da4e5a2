"""Tensor products and base change at the module level.

Tensor is over the base ring itself and requires it to be commutative
(integers, or a commutative F_p-algebra).  Base change goes along a ring
map: the unique map out of Z, or an algebra map between F_p-algebras.

Object constructions cache their presentation data (keyed by object
identity) so that repeated applications, e.g. while building functor
images of whole complexes, agree on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import modules
from .errors import RingMismatchError
from .fplinalg import FpMatrix, fp_from_columns
from .intlinalg import IntMatrix
from .modules import ModMor, ModuleObj, free_module, nary_biproduct, simplify
from .rings import RingMap


def _kron_int(f: IntMatrix, g: IntMatrix) -> IntMatrix:
    rows = f.rows * g.rows
    cols = f.cols * g.cols
    data = [[0] * cols for _ in range(rows)]
    for i in range(f.rows):
        for k in range(f.cols):
            a = f.data[i][k]
            if a:
                for j in range(g.rows):
                    for l in range(g.cols):
                        data[i * g.rows + j][k * g.cols + l] = a * g.data[j][l]
    return IntMatrix(rows, cols, data)


def _kron_fp(f: FpMatrix, g: FpMatrix) -> FpMatrix:
    p = f.p
    rows = f.rows * g.rows
    cols = f.cols * g.cols
    data = [[0] * cols for _ in range(rows)]
    for i in range(f.rows):
        for k in range(f.cols):
            a = f.data[i][k]
            if a:
                for j in range(g.rows):
                    for l in range(g.cols):
                        data[i * g.rows + j][k * g.cols + l] = (a * g.data[j][l]) % p
    return FpMatrix(p, rows, cols, data)


@dataclass
class ZTensorData:
    obj: ModuleObj
    to_simple: ModMor  # raw -> obj (matrix usable on raw coordinates)
    from_simple: ModMor


@dataclass
class FpTensorData:
    obj: ModuleObj
    vec: ModuleObj  # A (x)_{F_p} B with the first-factor action
    epi: ModMor  # vec -> obj
    section: FpMatrix  # right inverse of epi's matrix


_tensor_cache = {}


def tensor_data(A: ModuleObj, B: ModuleObj):
    if A.ring != B.ring:
        raise RingMismatchError("tensor needs a common base ring")
    if not A.ring.is_commutative():
        raise RingMismatchError("tensor is only defined over a commutative base")
    key = (id(A), id(B))
    if key in _tensor_cache:
        return _tensor_cache[key][2]
    if A.ring.is_integers:
        ga, gb = A.gens, B.gens
        rels = []
        for r in A.rels:
            for j in range(gb):
                row = [0] * (ga * gb)
                for i in range(ga):
                    row[i * gb + j] = r[i]
                rels.append(row)
        for s in B.rels:
            for i in range(ga):
                row = [0] * (ga * gb)
                for j in range(gb):
                    row[i * gb + j] = s[j]
                rels.append(row)
        raw = ModuleObj(A.ring, gens=ga * gb, rels=rels)
        simple, to_simple, from_simple = simplify(raw)
        data = ZTensorData(simple, to_simple, from_simple)
    else:
        ring = A.ring
        p = ring.p
        na, nb = A.dim, B.dim
        n = na * nb
        actions = [_kron_fp(A.actions[a], FpMatrix.identity(p, nb))
                   for a in range(ring.dim)]
        vec = ModuleObj(ring, dim=n, actions=actions, check=False)
        blocks = []
        for a in range(ring.dim):
            m = _kron_fp(A.actions[a], FpMatrix.identity(p, nb)).add(
                _kron_fp(FpMatrix.identity(p, na), B.actions[a]).scale(p - 1))
            blocks.append(m)
        src = nary_biproduct([vec] * ring.dim, ring=ring)
        cols = []
        for m in blocks:
            for j in range(n):
                cols.append(m.col(j))
        rel_map = ModMor(src.obj, vec, fp_from_columns(p, cols, n), check=False)
        obj, epi = modules.cokernel(rel_map)
        sec_cols = []
        for j in range(obj.dim):
            e = [1 if i == j else 0 for i in range(obj.dim)]
            from . import fplinalg
            sec_cols.append(fplinalg.solve(epi.matrix, e))
        section = fp_from_columns(p, sec_cols, n) if obj.dim else FpMatrix.zeros(p, n, 0)
        data = FpTensorData(obj, vec, epi, section)
    _tensor_cache[key] = (A, B, data)
    return data


def tensor_obj(A: ModuleObj, B: ModuleObj) -> ModuleObj:
    return tensor_data(A, B).obj


def tensor_mor(f: ModMor, g: ModMor) -> ModMor:
    dsrc = tensor_data(f.source, g.source)
    dtgt = tensor_data(f.target, g.target)
    if f.ring.is_integers:
        raw = _kron_int(f.matrix, g.matrix)
        mat = dtgt.to_simple.matrix.mul(raw).mul(dsrc.from_simple.matrix)
        return ModMor(dsrc.obj, dtgt.obj, mat)
    raw = _kron_fp(f.matrix, g.matrix)
    mat = dtgt.epi.matrix.mul(raw).mul(dsrc.section)
    return ModMor(dsrc.obj, dtgt.obj, mat)


def tensor_unit_map(A: ModuleObj) -> ModMor:
    """Canonical map A (x) R -> A; an isomorphism."""
    ring = A.ring
    unit = modules.ring_as_module(ring)
    data = tensor_data(A, unit)
    if ring.is_integers:
        raw = IntMatrix.identity(A.gens)  # (i, 0) -> generator i
        mat = raw.mul(data.from_simple.matrix)
        return ModMor(data.obj, A, mat)
    cols = []
    for i in range(A.dim):
        e_i = [1 if k == i else 0 for k in range(A.dim)]
        for b in range(ring.dim):
            cols.append(A.actions[b].mul_vec(e_i))
    raw = fp_from_columns(ring.p, cols, A.dim)
    mat = raw.mul(data.section)
    return ModMor(data.obj, A, mat)


# -- base change -------------------------------------------------------------


@dataclass
class BaseChangeData:
    obj: ModuleObj
    cover: ModuleObj  # the free/vector-level carrier
    epi: ModMor  # cover -> obj


_base_change_cache = {}


def _scalar_block_matrix(rm: RingMap, mat: IntMatrix, rank_rows, rank_cols):
    """Integer matrix acting between free modules over the target algebra."""
    S = rm.target
    p, d = S.p, S.dim
    rows, cols = rank_rows * d, rank_cols * d
    data = [[0] * cols for _ in range(rows)]
    for i in range(rank_rows):
        for k in range(rank_cols):
            a = mat.data[i][k] % p
            if a:
                for s in range(d):
                    data[i * d + s][k * d + s] = a
    return FpMatrix(p, rows, cols, data)


def base_change_data(rm: RingMap, M: ModuleObj) -> BaseChangeData:
    if M.ring != rm.source:
        raise RingMismatchError("module is not over the ring map's source")
    key = (id(rm), id(M))
    if key in _base_change_cache:
        return _base_change_cache[key][2]
    S = rm.target
    if rm.source.is_integers and S.is_integers:
        data = BaseChangeData(M, M, modules.identity_mor(M))
    elif rm.source.is_integers:
        g = M.gens
        r = len(M.rels)
        Fg = free_module(S, g)
        Fr = free_module(S, r)
        rel_mat = IntMatrix(r, g, [list(row) for row in M.rels]).transpose()
        psi = ModMor(Fr, Fg, _scalar_block_matrix(rm, rel_mat, g, r), check=False)
        obj, epi = modules.cokernel(psi)
        data = BaseChangeData(obj, Fg, epi)
    else:
        R = rm.source
        p, dS, nM = S.p, S.dim, M.dim
        n = dS * nM
        actions = [_kron_fp(S.left_mult_matrix(S._e(c)), FpMatrix.identity(p, nM))
                   for c in range(dS)]
        vec = ModuleObj(S, dim=n, actions=actions, check=False)
        blocks = []
        for a in range(R.dim):
            right = S.right_mult_matrix(rm.images[a])
            m = _kron_fp(right, FpMatrix.identity(p, nM)).add(
                _kron_fp(FpMatrix.identity(p, dS), M.actions[a]).scale(p - 1))
            blocks.append(m)
        src = nary_biproduct([vec] * R.dim, ring=S)
        cols = []
        for m in blocks:
            for j in range(n):
                cols.append(m.col(j))
        rel_map = ModMor(src.obj, vec, fp_from_columns(p, cols, n), check=False)
        obj, epi = modules.cokernel(rel_map)
        data = BaseChangeData(obj, vec, epi)
    _base_change_cache[key] = (rm, M, data)
    return data


def base_change_obj(rm: RingMap, M: ModuleObj) -> ModuleObj:
    return base_change_data(rm, M).obj


def base_change_mor(rm: RingMap, f: ModMor) -> ModMor:
    dsrc = base_change_data(rm, f.source)
    dtgt = base_change_data(rm, f.target)
    if rm.source.is_integers and rm.target.is_integers:
        return f
    if rm.source.is_integers:
        lifted = ModMor(dsrc.cover, dtgt.cover,
                        _scalar_block_matrix(rm, f.matrix, f.target.gens,
                                             f.source.gens), check=False)
    else:
        S = rm.target
        lifted = ModMor(dsrc.cover, dtgt.cover,
                        _kron_fp(FpMatrix.identity(S.p, S.dim), f.matrix),
                        check=False)
    return modules.cofactor_through_epi(dsrc.epi, lifted.then(dtgt.epi))
