"""Resolutions, derived functors, connecting maps and long exact sequences.

Everything here runs uniformly over modules and over diagrams through the
dispatch layer.  Resolutions are built by iterated free covers of kernels
and cached on the resolved object, so repeated derived-functor
computations share canonical presentations.

The connecting homomorphism is the snake-lemma zig-zag, computed with
explicit element lifts at the module level and assembled componentwise
(then validated as a natural transformation) at the diagram level.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from . import abelian, functors
from .complexes import (ChainMap, Complex, SES, SESOfComplexes, Subquotient,
                        homology_at, induced_on_homology, project_complex)
from .diagrams import DiagMor, Diagram
from .errors import ExactnessError, ShapeError
from .fplinalg import fp_from_columns
from .intlinalg import from_columns
from .modules import Element, ModMor, ModuleObj, preimage


class Resolution:
    """Augmented free resolution with its step data.

    kernels[0] is the resolved object; covers[n]: P_n -> kernels[n] are
    epis from free objects; monos[n]: kernels[n] -> P_{n-1} (n >= 1).  The
    differential d_n is covers[n] followed by monos[n].
    """

    def __init__(self, A, extendable=True):
        self.A = A
        P, c = abelian.free_cover(A)
        self.terms = [P]
        self.covers = [c]
        self.kernels = [A]
        self.monos = [None]
        self.exhausted = False
        self.extendable = extendable
        self._lifts = {}
        self._lock = threading.RLock()

    @property
    def built(self):
        return len(self.terms) - 1

    def extend_to(self, n):
        # the only mutation in the package; locked so concurrent derived
        # computations sharing a cached resolution stay consistent
        with self._lock:
            while self.built < n and not self.exhausted:
                if not self.extendable:
                    raise ShapeError("this resolution cannot be extended")
                K, mono = abelian.kernel(self.covers[-1])
                if abelian.is_zero_obj(K):
                    self.exhausted = True
                    self.kernels.append(K)
                    self.monos.append(mono)
                    break
                P, c = abelian.free_cover(K)
                self.kernels.append(K)
                self.monos.append(mono)
                self.terms.append(P)
                self.covers.append(c)
        return self

    def term(self, n):
        if n <= self.built:
            return self.terms[n]
        return abelian.zero_object_like(self.A)

    def kernel_obj(self, n):
        if n < len(self.kernels):
            return self.kernels[n]
        return abelian.zero_object_like(self.A)

    def mono(self, n):
        assert n >= 1
        if n < len(self.monos):
            return self.monos[n]
        return abelian.zero_mor(self.kernel_obj(n), self.term(n - 1))

    def cover(self, n):
        if n <= self.built:
            return self.covers[n]
        return abelian.zero_mor(self.term(n), self.kernel_obj(n))

    def diff(self, n):
        assert n >= 1
        return self.cover(n).then(self.mono(n))

    def aug(self):
        return self.covers[0]

    def complex(self, hi) -> Complex:
        objects = {n: self.term(n) for n in range(0, hi + 1)}
        diffs = {n: self.diff(n) for n in range(1, hi + 1)}
        return Complex(0, hi, objects, diffs, check=False)


def resolve(A, n_max) -> Resolution:
    """Cached free resolution of a module or a diagram."""
    res = A._cache.get("res")
    if res is None:
        res = Resolution(A)
        A._cache["res"] = res
    res.extend_to(n_max)
    return res


def d_resolve(d, n_max) -> Resolution:
    """Resolution in the diagram category by free diagrams; every
    component is then a resolution of the corresponding component."""
    return resolve(d, n_max)


def lift_resolution_map(f, res_src: Resolution, res_tgt: Resolution, n_max):
    """Chain map between resolutions lifting f: src.A -> tgt.A.

    Returns {n: P_n(src) -> P_n(tgt)} for 0 <= n <= n_max; cached and
    extended on demand.
    """
    key = (id(f), id(res_tgt))
    entry = res_src._lifts.get(key)
    if entry is None:
        u0 = abelian.lift_through_epi(res_src.aug().then(f), res_tgt.aug())
        entry = {"f": f, "tgt": res_tgt, "maps": {0: u0}}
        res_src._lifts[key] = entry
    maps = entry["maps"]
    n_built = max(maps)
    for n in range(n_built + 1, n_max + 1):
        res_src.extend_to(n)
        res_tgt.extend_to(n)
        w = res_src.diff(n).then(maps[n - 1])
        if n > res_tgt.built:
            assert w.is_zero(), "lift hits a truncated exact resolution"
            maps[n] = abelian.zero_mor(res_src.term(n), res_tgt.term(n))
            continue
        w_k = abelian.factor_through_mono(res_tgt.mono(n), w)
        maps[n] = abelian.lift_through_epi(w_k, res_tgt.cover(n))
    return {n: maps[n] for n in range(0, n_max + 1)}


def project_resolution(res: Resolution, i) -> Resolution:
    """Component at i of a diagram resolution, as a module resolution.

    Rebuilt on every call (the parent may have grown since); projections
    are cheap and are only used transiently for chain lifting.
    """
    out = Resolution.__new__(Resolution)
    out._lock = threading.RLock()
    out.A = res.A.component(i)
    out.terms = [t.component(i) for t in res.terms]
    out.covers = [c.component(i) for c in res.covers]
    out.kernels = [res.kernels[0].component(i)] + [
        k.component(i) for k in res.kernels[1:]]
    out.monos = [None] + [m.component(i) for m in res.monos[1:]]
    out.exhausted = res.exhausted
    out.extendable = False
    out._lifts = {}
    return out


# -- derived functors --------------------------------------------------------


@dataclass
class DerivedData:
    functor: object
    base: object
    degree: int
    res: Resolution
    fcomplex: Complex
    sub: Subquotient

    @property
    def obj(self):
        return self.sub.obj


def derived_data(F, A, n) -> DerivedData:
    """L_n F (A) with its canonical presentation, cached per (F, n)."""
    key = ("derived", id(F), n)
    if key in A._cache:
        return A._cache[key]
    res = resolve(A, n + 1)
    fc = functors.apply_to_complex(F, res.complex(n + 1))
    sub = homology_at(fc, n)
    data = DerivedData(F, A, n, res, fc, sub)
    A._cache[key] = data
    # keep F alive while its id keys this cache
    A._cache.setdefault("derived_functors", []).append(F)
    return data


def derived(F, A, n):
    """The n-th left derived functor of F at A."""
    return derived_data(F, A, n).obj


def derived_map(F, f, n):
    """L_n F (f), computed through cached resolutions and chain lifts."""
    key = ("derived_map", id(F), n)
    if key in f._cache:
        return f._cache[key]
    src = derived_data(F, f.source, n)
    tgt = derived_data(F, f.target, n)
    lift = lift_resolution_map(f, src.res, tgt.res, n + 1)
    phi = functors.apply_to_morphism(F, lift[n])
    out = induced_on_homology(phi, src.sub, tgt.sub)
    f._cache[key] = out
    f._cache.setdefault("derived_keepalive", []).append((F, src, tgt))
    return out


def l0_comparison(F, A) -> object:
    """Canonical map L_0 F (A) -> F(A); an iso when F is right-exact."""
    data = derived_data(F, A, 0)
    faug = functors.apply_to_morphism(F, data.res.aug())
    u = data.sub.mono.then(faug)
    return abelian.cofactor_through_epi(data.sub.epi, u)


# -- horseshoe lemma ---------------------------------------------------------


@dataclass
class HorseshoeData:
    res_mid: Resolution
    incl: dict  # degree -> P_n(L) -> P_n(M)
    proj: dict  # degree -> P_n(M) -> P_n(N)
    retr: dict  # degree -> P_n(M) -> P_n(L), splitting of incl
    sec: dict  # degree -> P_n(N) -> P_n(M), splitting of proj


def horseshoe(ses: SES, res_sub: Resolution, res_quo: Resolution,
              n_max) -> HorseshoeData:
    """Resolution of the middle of a short exact sequence whose n-th term
    is the biproduct of the outer terms, with the degreewise split chain
    inclusions/projections."""
    res_sub.extend_to(n_max)
    res_quo.extend_to(n_max)
    cur_l, cur_m, cur_n = ses.L, ses.M, ses.N
    ci, cp = ses.f, ses.g
    out = Resolution.__new__(Resolution)
    out._lock = threading.RLock()
    out.A = ses.M
    out.terms = []
    out.covers = []
    out.kernels = [ses.M]
    out.monos = [None]
    out.exhausted = False
    out.extendable = False
    out._lifts = {}
    incl = {}
    proj = {}
    retr = {}
    sec = {}
    for n in range(0, n_max + 1):
        PL = res_sub.term(n)
        PN = res_quo.term(n)
        bp = abelian.biproduct(PL, PN)
        lam = abelian.lift_through_epi(res_quo.cover(n), cp)
        eps = (bp.proj1.then(res_sub.cover(n)).then(ci)
               + bp.proj2.then(lam))
        out.terms.append(bp.obj)
        out.covers.append(eps)
        incl[n] = bp.inj1
        proj[n] = bp.proj2
        retr[n] = bp.proj1
        sec[n] = bp.inj2
        if n == n_max:
            break
        KL, monoL = res_sub.kernel_obj(n + 1), res_sub.mono(n + 1)
        KN, monoN = res_quo.kernel_obj(n + 1), res_quo.mono(n + 1)
        KM, monoM = abelian.kernel(eps)
        out.kernels.append(KM)
        out.monos.append(monoM)
        ii = abelian.factor_through_mono(monoM, monoL.then(bp.inj1))
        pp = abelian.factor_through_mono(monoN, monoM.then(bp.proj2))
        SES(ii, pp)  # the kernels form a short exact sequence again
        cur_l, cur_m, cur_n = KL, KM, KN
        ci, cp = ii, pp
    return HorseshoeData(out, incl, proj, retr, sec)


def horseshoe_data_for(ses: SES, n_max) -> HorseshoeData:
    """Horseshoe data for a SES, cached on the sequence so that every
    later computation over it shares one resolution of the middle."""
    key = ("horseshoe", n_max)
    if key not in ses._cache:
        res_l = resolve(ses.L, n_max)
        res_n = resolve(ses.N, n_max)
        ses._cache[key] = horseshoe(ses, res_l, res_n, n_max)
    return ses._cache[key]


def horseshoe_ses_of_complexes(ses: SES, n_max, F=None):
    """Degreewise split SES of resolutions of a SES, optionally pushed
    through an additive functor F."""
    hs = horseshoe_data_for(ses, n_max)
    cl = resolve(ses.L, n_max).complex(n_max)
    cm = hs.res_mid.complex(n_max)
    cn = resolve(ses.N, n_max).complex(n_max)
    incl = ChainMap(cl, cm, hs.incl)
    proj = ChainMap(cm, cn, hs.proj)
    if F is not None:
        cl = functors.apply_to_complex(F, cl)
        cm = functors.apply_to_complex(F, cm)
        cn = functors.apply_to_complex(F, cn)
        incl = ChainMap(cl, cm, {n: functors.apply_to_morphism(F, hs.incl[n])
                                 for n in hs.incl})
        proj = ChainMap(cm, cn, {n: functors.apply_to_morphism(F, hs.proj[n])
                                 for n in hs.proj})
    return SESOfComplexes(cl, cm, cn, incl, proj, degreewise_split=True), hs


# -- connecting homomorphism -------------------------------------------------


def _mor_from_columns(source, target, cols):
    if source.ring.is_integers:
        return ModMor(source, target, from_columns(cols, target.gens))
    return ModMor(source, target, fp_from_columns(source.ring.p, cols, target.gens))


def connecting_module(sesc: SESOfComplexes, n) -> ModMor:
    """Snake-lemma zig-zag H_n(N) -> H_{n-1}(L) via explicit preimages."""
    sub_n = homology_at(sesc.quo, n)
    sub_l = homology_at(sesc.sub, n - 1)
    cols = []
    for t in range(sub_n.obj.gens):
        e = Element(sub_n.obj, [1 if k == t else 0 for k in range(sub_n.obj.gens)])
        k = preimage(sub_n.epi, e)
        z = sub_n.mono.apply(k)
        m = preimage(sesc.proj.at(n), z)
        assert m is not None, "projection of complexes must be degreewise epi"
        dm = sesc.mid.diffs[n].apply(m) if n > sesc.mid.lo else None
        assert dm is not None, "connecting map needs the differential at n"
        l = preimage(sesc.incl.at(n - 1), dm)
        assert l is not None, "boundary must come from the subcomplex"
        if n - 1 > sesc.sub.lo:
            assert sesc.sub.diffs[n - 1].apply(l).is_zero()
        kl = preimage(sub_l.mono, l)
        assert kl is not None, "representative must be a cycle"
        cols.append(list(sub_l.epi.apply(kl).coords))
    delta = _mor_from_columns(sub_n.obj, sub_l.obj, cols)
    return delta


def connecting(sesc: SESOfComplexes, n):
    """The connecting morphism delta_n; componentwise (then checked to be
    natural) when the complexes live in a diagram category."""
    if isinstance(sesc.quo.objects[sesc.quo.lo], ModuleObj):
        return connecting_module(sesc, n)
    sub_n = homology_at(sesc.quo, n)
    sub_l = homology_at(sesc.sub, n - 1)
    index = sub_n.obj.index
    comps = {}
    for i in index.objects:
        proj_sesc = SESOfComplexes(
            project_complex(sesc.sub, i), project_complex(sesc.mid, i),
            project_complex(sesc.quo, i),
            ChainMap(project_complex(sesc.sub, i), project_complex(sesc.mid, i),
                     {k: sesc.incl.at(k).component(i) for k in sesc.incl.comps},
                     check=False),
            ChainMap(project_complex(sesc.mid, i), project_complex(sesc.quo, i),
                     {k: sesc.proj.at(k).component(i) for k in sesc.proj.comps},
                     check=False),
            check=False)
        comps[i] = connecting_module(proj_sesc, n)
    return DiagMor(sub_n.obj, sub_l.obj, comps)


# -- long exact sequences ----------------------------------------------------


def _safe_exact(f, g) -> bool:
    try:
        return abelian.is_exact_at(f, g)
    except ExactnessError:
        return False


@dataclass
class LES:
    """Long exact sequence of derived functors of a short exact sequence.

    Map layout per degree n: lm[n]: F_n(L) -> F_n(M), mn[n]: F_n(M) ->
    F_n(N), delta[n]: F_n(N) -> F_{n-1}(L).  Exactness verdicts cover
    every position checkable inside the truncation.
    """

    n_max: int
    objs: dict
    lm: dict
    mn: dict
    delta: dict
    exact: dict = field(default_factory=dict)

    def all_exact(self) -> bool:
        return all(self.exact.values())

    def failing_positions(self):
        return sorted(k for k, v in self.exact.items() if not v)


@dataclass
class LesData:
    les: LES
    sesc: SESOfComplexes
    hs: HorseshoeData


def les_data(F, ses: SES, n_max) -> LesData:
    """les_of_ses plus the complexes it was built from; cached per (F, n_max)."""
    key = ("les", id(F), n_max)
    if key not in ses._cache:
        sesc, hs = horseshoe_ses_of_complexes(ses, n_max + 1, F=F)
        les = _les_from_sesc(sesc, n_max)
        ses._cache[key] = LesData(les, sesc, hs)
        ses._cache.setdefault("les_keepalive", []).append(F)
    return ses._cache[key]


def les_of_ses(F, ses: SES, n_max) -> LES:
    """The long exact sequence of L_*F applied to a short exact sequence,
    built with a horseshoe resolution and the zig-zag connecting map."""
    return les_data(F, ses, n_max).les


def _les_from_sesc(sesc: SESOfComplexes, n_max) -> LES:
    objs = {}
    lm = {}
    mn = {}
    delta = {}
    for n in range(0, n_max + 1):
        objs[("L", n)] = homology_at(sesc.sub, n).obj
        objs[("M", n)] = homology_at(sesc.mid, n).obj
        objs[("N", n)] = homology_at(sesc.quo, n).obj
        lm[n] = induced_on_homology(sesc.incl.at(n), homology_at(sesc.sub, n),
                                    homology_at(sesc.mid, n))
        mn[n] = induced_on_homology(sesc.proj.at(n), homology_at(sesc.mid, n),
                                    homology_at(sesc.quo, n))
    for n in range(1, n_max + 1):
        delta[n] = connecting(sesc, n)
    les = LES(n_max, objs, lm, mn, delta)
    for n in range(0, n_max + 1):
        les.exact[f"M{n}"] = _safe_exact(lm[n], mn[n])
        if n >= 1:
            les.exact[f"N{n}"] = _safe_exact(mn[n], delta[n])
            les.exact[f"L{n - 1}"] = _safe_exact(delta[n], lm[n - 1])
        else:
            les.exact["N0"] = abelian.is_epi(mn[0])
    return les


# -- delta-functor axioms ----------------------------------------------------


@dataclass
class DeltaReport:
    checked_sequences: int = 0
    exactness_failures: list = field(default_factory=list)
    checked_squares: int = 0
    square_failures: list = field(default_factory=list)

    def ok(self) -> bool:
        return not self.exactness_failures and not self.square_failures


def delta_axiom_suite(F, sess, morphisms, n_max) -> DeltaReport:
    """Verify the delta-functor axioms on explicit fixtures.

    (i) holds by construction (nothing is computed below degree 0);
    (ii) every long exact sequence is exact wherever checkable;
    (iii) every morphism of short exact sequences yields commuting
    delta squares.
    """
    report = DeltaReport()
    les_cache = {}

    def les_for(ses):
        if id(ses) not in les_cache:
            les_cache[id(ses)] = les_of_ses(F, ses, n_max)
        return les_cache[id(ses)]

    for ses in sess:
        les = les_for(ses)
        report.checked_sequences += 1
        for pos in les.failing_positions():
            report.exactness_failures.append((ses, pos))
    for mor in morphisms:
        les_src = les_for(mor.src)
        les_dst = les_for(mor.dst)
        for n in range(1, n_max + 1):
            fn_un = derived_map(F, mor.uN, n)
            fn_ul = derived_map(F, mor.uL, n - 1)
            lhs = les_src.delta[n].then(fn_ul)
            rhs = fn_un.then(les_dst.delta[n])
            report.checked_squares += 1
            if not lhs == rhs:
                report.square_failures.append((mor, n))
    return report


# -- comparison isomorphism (L_n F)^I = L_n (F^I) -----------------------------


_exponent_cache = {}


def exponent_spec_for(F, index):
    key = (id(F), id(index))
    if key not in _exponent_cache:
        _exponent_cache[key] = (F, index, functors.exponent(F, index))
    return _exponent_cache[key][2]


@dataclass
class ComparisonResult:
    componentwise: Diagram  # (L_n F)^I (A), from independent component data
    diagramwise: object  # L_n (F^I) (A)
    map: DiagMor
    iso: bool


def comparison_iso(F, A: Diagram, n) -> ComparisonResult:
    """Build the canonical map (L_n F)^I (A) -> L_n (F^I)(A) by chain-map
    lifting and report whether it is an isomorphism."""
    index = A.index
    expF = exponent_spec_for(F, index)
    route1 = derived_data(expF, A, n)
    comp_data = {i: derived_data(F, A.components[i], n) for i in index.objects}
    maps = {}
    for m in index.mor_names:
        if index.is_identity(m):
            maps[m] = abelian.identity(comp_data[index.src(m)].obj)
        else:
            maps[m] = derived_map(F, A.maps[m], n)
    lnf_diag = Diagram(index, {i: comp_data[i].obj for i in index.objects}, maps)
    comps = {}
    for i in index.objects:
        res_i = comp_data[i].res
        proj_res = project_resolution(route1.res, i)
        ident = abelian.identity(A.components[i])
        lift = lift_resolution_map(ident, res_i, proj_res, n + 1)
        phi = functors.apply_to_morphism(F, lift[n])
        tgt_sub = Subquotient(route1.sub.obj.component(i),
                              route1.sub.cycles.component(i),
                              route1.sub.mono.component(i),
                              route1.sub.epi.component(i))
        comps[i] = induced_on_homology(phi, comp_data[i].sub, tgt_sub)
    cmp_map = DiagMor(lnf_diag, route1.obj, comps)
    from . import diagrams
    return ComparisonResult(lnf_diag, route1.obj, cmp_map,
                            diagrams.d_is_iso(cmp_map))
