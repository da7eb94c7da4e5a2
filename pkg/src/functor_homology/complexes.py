"""Chain complexes, chain maps, short exact sequences, and homology.

A Complex stores objects C_n for lo <= n <= hi and differentials
d_n: C_n -> C_{n-1} for lo < n <= hi; everything outside the range is
treated as zero.  Objects may be modules or diagrams; all computations go
through the dispatch layer, so homology in C and C^I is one code path.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import abelian
from .errors import ExactnessError, ShapeError


class Complex:
    def __init__(self, lo, hi, objects, diffs, check=True):
        assert lo <= hi
        self.lo = lo
        self.hi = hi
        self.objects = dict(objects)
        self.diffs = dict(diffs)
        self._cache = {}
        for n in range(lo, hi + 1):
            if n not in self.objects:
                raise ShapeError(f"missing object in degree {n}")
        for n in range(lo + 1, hi + 1):
            d = self.diffs.get(n)
            if d is None:
                raise ShapeError(f"missing differential in degree {n}")
            if d.source != self.objects[n] or d.target != self.objects[n - 1]:
                raise ShapeError(f"differential {n} has wrong endpoints")
        if check:
            for n in range(lo + 2, hi + 1):
                if not self.diffs[n].then(self.diffs[n - 1]).is_zero():
                    raise ExactnessError(f"d.d is nonzero in degree {n}")

    def obj(self, n):
        return self.objects.get(n)

    def diff(self, n):
        """d_n: C_n -> C_{n-1}, substituting zero maps at the boundary."""
        if self.lo < n <= self.hi:
            return self.diffs[n]
        if n == self.lo:
            return abelian.zero_mor(self.objects[n], abelian.zero_object_like(self.objects[n]))
        if n == self.hi + 1:
            zero = abelian.zero_object_like(self.objects[self.hi])
            return abelian.zero_mor(zero, self.objects[self.hi])
        raise ShapeError(f"degree {n} outside complex range")

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_exact_everywhere_interior(self):
        return all(abelian.is_exact_at(self.diffs[n + 1], self.diffs[n])
                   for n in range(self.lo + 1, self.hi))


class ChainMap:
    """Degreewise map of complexes commuting with the differentials on the
    overlap of their ranges."""

    def __init__(self, source: Complex, target: Complex, comps, check=True):
        self.source = source
        self.target = target
        self.comps = dict(comps)
        if check:
            for n in self.comps:
                f = self.comps[n]
                if f.source != source.obj(n) or f.target != target.obj(n):
                    raise ShapeError(f"chain map component {n} has wrong endpoints")
            for n in self.comps:
                if n - 1 in self.comps and n > source.lo and n > target.lo:
                    lhs = self.comps[n].then(target.diffs[n])
                    rhs = source.diffs[n].then(self.comps[n - 1])
                    if not lhs == rhs:
                        raise ShapeError(f"chain map square fails in degree {n}")

    def at(self, n):
        return self.comps[n]


@dataclass
class Subquotient:
    """Homology presentation: cycles K with mono into C_n and the class
    epi K -> H."""

    obj: object
    cycles: object
    mono: object  # cycles -> C_n
    epi: object  # cycles -> H


def homology_at(c: Complex, n) -> Subquotient:
    """H_n = ker(d_n)/im(d_{n+1}) with canonical maps; cached per degree."""
    if not (c.lo <= n <= c.hi):
        raise ShapeError(f"degree {n} out of range [{c.lo}, {c.hi}]")
    key = ("H", n)
    if key in c._cache:
        return c._cache[key]
    d_out = c.diff(n)
    K, mono = abelian.kernel(d_out)
    if n + 1 <= c.hi:
        j = abelian.factor_through_mono(mono, c.diffs[n + 1])
    else:
        zero = abelian.zero_object_like(c.objects[n])
        j = abelian.zero_mor(zero, K)
    H, epi = abelian.cokernel(j)
    sub = Subquotient(H, K, mono, epi)
    c._cache[key] = sub
    return sub


def induced_on_homology(phi_n, sub_src: Subquotient, sub_tgt: Subquotient):
    """Map H(src) -> H(tgt) induced by a degree-n component of a chain map."""
    u = abelian.factor_through_mono(sub_tgt.mono, sub_src.mono.then(phi_n))
    return abelian.cofactor_through_epi(sub_src.epi, u.then(sub_tgt.epi))


def chain_map_homology(f: ChainMap, n) -> object:
    return induced_on_homology(f.at(n), homology_at(f.source, n),
                               homology_at(f.target, n))


class SES:
    """Short exact sequence 0 -> L -> M -> N -> 0, validated on
    construction."""

    def __init__(self, f, g, check=True):
        if f.target != g.source:
            raise ShapeError("maps of a short exact sequence must be composable")
        self.f = f
        self.g = g
        self.L = f.source
        self.M = f.target
        self.N = g.target
        self._cache = {}
        if check:
            if not f.then(g).is_zero():
                raise ExactnessError("composite L -> N is nonzero")
            if not abelian.is_mono(f):
                raise ExactnessError("first map is not mono")
            if not abelian.is_epi(g):
                raise ExactnessError("second map is not epi")
            if not abelian.is_exact_at(f, g):
                raise ExactnessError("sequence is not exact in the middle")

    def __repr__(self):
        return (f"SES({abelian.describe(self.L)} -> {abelian.describe(self.M)}"
                f" -> {abelian.describe(self.N)})")


class MorphismOfSES:
    """Three vertical maps forming commuting squares between two short
    exact sequences."""

    def __init__(self, src: SES, dst: SES, uL, uM, uN, check=True):
        self.src = src
        self.dst = dst
        self.uL = uL
        self.uM = uM
        self.uN = uN
        if check:
            if not src.f.then(uM) == uL.then(dst.f):
                raise ShapeError("left square of the SES morphism does not commute")
            if not src.g.then(uN) == uM.then(dst.g):
                raise ShapeError("right square of the SES morphism does not commute")


class SESOfComplexes:
    """Degreewise short exact sequence of complexes over a common range."""

    def __init__(self, sub: Complex, mid: Complex, quo: Complex,
                 incl: ChainMap, proj: ChainMap, check=True,
                 degreewise_split=False):
        self.sub = sub
        self.mid = mid
        self.quo = quo
        self.incl = incl
        self.proj = proj
        self.degreewise_split = degreewise_split
        if check:
            for n in sub.degrees():
                SES(incl.at(n), proj.at(n))

    def degrees(self):
        return self.sub.degrees()


def complex_apply(c: Complex, fn, check=True) -> Complex:
    """New complex with fn applied to every object and differential."""
    objects = {n: fn(c.objects[n]) for n in c.degrees()}
    diffs = {n: fn(c.diffs[n]) for n in range(c.lo + 1, c.hi + 1)}
    return Complex(c.lo, c.hi, objects, diffs, check=check)


def project_complex(c: Complex, i) -> Complex:
    """Componentwise projection of a complex of diagrams at index object i."""
    objects = {n: c.objects[n].component(i) for n in c.degrees()}
    diffs = {n: c.diffs[n].component(i) for n in range(c.lo + 1, c.hi + 1)}
    out = Complex(c.lo, c.hi, objects, diffs, check=False)
    # share cached homology data componentwise so canonical objects match
    for n in c.degrees():
        key = ("H", n)
        if key in c._cache:
            sub = c._cache[key]
            out._cache[key] = Subquotient(
                sub.obj.component(i), sub.cycles.component(i),
                sub.mono.component(i), sub.epi.component(i))
    return out
