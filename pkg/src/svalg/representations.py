"""Weight modules for sv.

Two kinds are covered.

* The intermediate series A_{a,b}, A_alpha and B_beta.  These are Virasoro
  modules lifted to sv with M, Y and c acting by zero.
* Depth-truncated highest-weight (Verma-type) modules, built by PBW
  straightening.  A module vector is a dict mapping a monomial to its
  coefficient.  The monomial is a tuple of negative-degree generators in
  canonical order and stands for ``f_1 f_2 ... f_k v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import C, BasisIndex, L, M, Y, bracket_basis, grade, sort_key
from .report import Report
from .scalars import as_gauss, as_rat, format_scalar, parse_scalar

SERIES_KINDS = ("Aab", "Aalpha", "Bbeta")


# -- intermediate series --------------------------------------------------------


@dataclass(frozen=True)
class SeriesSpec:
    """One of the three intermediate-series families.

    ``aux`` is the constant in the exceptional formulas
    L_n v_0 = n(n+aux) v_n (A_alpha) and L_n v_{-n} = -n(n+aux) v_0 (B_beta).
    """

    kind: str
    a: object = 0
    b: object = 0
    aux: object = 0

    def __post_init__(self):
        if self.kind not in SERIES_KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        for f in ("a", "b", "aux"):
            object.__setattr__(self, f, as_gauss(getattr(self, f)))

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "Aab":
            out.update(a=format_scalar(self.a), b=format_scalar(self.b))
        else:
            out["aux"] = format_scalar(self.aux)
        return {"series": out}


def Aab(a, b):
    return SeriesSpec("Aab", a, b)


def series_coefficient(s, n, k):
    """c with L_n v_k = c v_{n+k}."""
    if s.kind == "Aab":
        return s.a + k + n * s.b
    if s.kind == "Aalpha":
        return as_gauss(n + k) if k != 0 else n * (n + s.aux)
    if k == -n:
        return -n * (n + s.aux)
    return as_gauss(k)


def series_action(s, n, x):
    """L_n acting on a series vector ``{k: coeff}``."""
    out = {}
    for k, c in x.items():
        v = series_coefficient(s, n, k) * c
        if v:
            out[n + k] = out.get(n + k, 0) + v
            if not out[n + k]:
                del out[n + k]
    return out


def sv_lift_action(s, g, x):
    """sv acting on A_{a,b,0,0}-style lifts: M, Y and c act as zero."""
    if g.kind == "L":
        return series_action(s, g.index, x)
    return {}


def _vec_add(acc, vec, scale=1):
    for k, c in vec.items():
        nv = acc.get(k, 0) + scale * c
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def sv_lift_bracket_check(s, w):
    """g1(g2 v) - g2(g1 v) = [g1, g2] v on the lift, for generators and v_k in the window."""
    rep = Report("series_representation", info={"window": w.bound, **s.to_json()})
    gens = w.basis()
    for g1, g2 in product(gens, repeat=2):
        br = bracket_basis(g1, g2)
        for k in w.int_modes():
            v = {k: as_gauss(1)}
            lhs = _vec_add(dict(sv_lift_action(s, g1, sv_lift_action(s, g2, v))), sv_lift_action(s, g2, sv_lift_action(s, g1, v)), -1)
            rhs = {}
            for b, c in br:
                _vec_add(rhs, sv_lift_action(s, b, v), c)
            rep.checked += 1
            if lhs != rhs:
                rep.fail((str(g1), str(g2), k))
    return rep


def series_intertwiner_check(src, dst, shift, w):
    """Does v_k -> v_{k+shift} intertwine ``src`` with ``dst`` on the window?"""
    rep = Report("series_intertwiner", info={"window": w.bound, "source": src.to_json(), "target": dst.to_json(), "shift": shift})
    for n, k in product(w.int_modes(), repeat=2):
        lhs = {key + shift: c for key, c in series_action(src, n, {k: as_gauss(1)}).items()}
        rhs = series_action(dst, n, {k + shift: as_gauss(1)})
        rep.checked += 1
        if lhs != rhs:
            rep.fail((n, k))
    return rep


def series_shift_iso_check(a, b, w, target_b=None):
    """v_k -> v_{k+1} maps A_{a+1,b} isomorphically onto A_{a,b}.

    ``target_b`` swaps in a different b on the target side (negative control).
    """
    a, b = as_gauss(a), as_gauss(b)
    dst = Aab(a, b if target_b is None else target_b)
    return series_intertwiner_check(Aab(a + 1, b), dst, 1, w)


# -- highest-weight modules -----------------------------------------------------


class DepthExceeded(ArithmeticError):
    pass


@dataclass(frozen=True)
class Weight:
    h: object
    m: object
    z: object

    def __post_init__(self):
        for f in ("h", "m", "z"):
            object.__setattr__(self, f, as_rat(getattr(self, f)))


def mono_key(mono):
    return (len(mono), tuple(sort_key_deg(g) for g in mono))


def sort_key_deg(g):
    """Canonical PBW order: ascending doubled degree, then L < M < Y."""
    return (grade(g),) + sort_key(g)


def level(mono):
    """Doubled level of a monomial (a nonnegative integer)."""
    return -sum(grade(g) for g in mono)


def negative_generators(e):
    """Generators of doubled degree -e."""
    if e % 2:
        return [Y(-e)]
    return [L(-e // 2), M(-e // 2)]


@lru_cache(maxsize=None)
def level_basis(d):
    """Canonical monomials of doubled level d, in deterministic order."""
    out = []

    def rec(remaining, start, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining, 0, -1):
            for g in negative_generators(e):
                if start is not None and sort_key_deg(g) < sort_key_deg(start):
                    continue
                prefix.append(g)
                rec(remaining - e, g, prefix)
                prefix.pop()

    rec(d, None, [])
    return tuple(sorted(out, key=mono_key))


def verma_basis(wt, depth):
    """Per-level lists of canonical monomials for levels 0..depth (doubled)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return [list(level_basis(d)) for d in range(depth + 1)]


def _is_negative(g):
    return g.kind != "C" and grade(g) < 0


@dataclass(eq=False)
class VermaModule:
    weight: Weight
    depth: int
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")

    def basis(self, d):
        if d > self.depth:
            raise DepthExceeded(f"level {d} beyond depth {self.depth}")
        return list(level_basis(d))

    def act_mono(self, g, mono):
        """g . (mono v), straightened; returns {mono: coeff}."""
        key = (g, mono)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._act(g, mono)
            self._cache[key] = hit
        return hit

    def _act(self, g, mono):
        wt = self.weight
        if g == C:
            return {mono: wt.z} if wt.z else {}
        if g == M(0):
            return {mono: wt.m} if wt.m else {}
        if not mono:
            if g == L(0):
                return {(): wt.h} if wt.h else {}
            if grade(g) > 0:
                return {}
            return self._prepend(g, mono)
        first, rest = mono[0], mono[1:]
        if _is_negative(g) and sort_key_deg(g) <= sort_key_deg(first):
            return self._prepend(g, mono)
        out = {}
        # g f rest = f (g rest) + [g, f] rest
        for m2, c2 in self.act_mono(g, rest).items():
            for m3, c3 in self.act_mono(first, m2).items():
                _vec_add(out, {m3: c2 * c3})
        for b, c in bracket_basis(g, first):
            for m3, c3 in self.act_mono(b, rest).items():
                _vec_add(out, {m3: c * c3})
        return out

    def _prepend(self, g, mono):
        new = (g,) + mono
        if level(new) > self.depth:
            raise DepthExceeded(f"level {level(new)} beyond depth {self.depth}")
        return {new: Fraction(1)}

    def act(self, g, vec):
        """Apply a basis generator to a module vector."""
        out = {}
        for mono, c in vec.items():
            for m2, c2 in self.act_mono(g, mono).items():
                _vec_add(out, {m2: c * c2})
        return out

    def act_element(self, x, vec):
        """Apply an algebra Element to a module vector."""
        out = {}
        for g, c in x.terms.items():
            _vec_add(out, self.act(g, vec), c)
        return out

    def act_word(self, word, vec):
        """Apply g_1 g_2 ... g_k (rightmost first)."""
        for g in reversed(word):
            vec = self.act(g, vec)
        return vec


@lru_cache(maxsize=64)
def verma_module(wt, depth):
    return VermaModule(wt, depth)


def verma_act(wt, g, mono, depth):
    return verma_module(wt, depth).act_mono(g, tuple(mono))


def verma_representation_check(mod, gens, level_cap=None):
    """g1(g2 u) - g2(g1 u) = [g1, g2] u for generator pairs and basis monomials u.

    Pairs whose results would exceed the depth are skipped.
    """
    rep = Report("verma_representation", info={"depth": mod.depth})
    cap = mod.depth if level_cap is None else level_cap
    for d in range(cap + 1):
        for u in mod.basis(d):
            for g1, g2 in product(gens, repeat=2):
                if d - grade(g1) - grade(g2) > mod.depth or d - grade(g1) > mod.depth or d - grade(g2) > mod.depth:
                    continue
                v = {u: Fraction(1)}
                lhs = _vec_add(dict(mod.act(g1, mod.act(g2, v))), mod.act(g2, mod.act(g1, v)), -1)
                rhs = {}
                for b, c in bracket_basis(g1, g2):
                    _vec_add(rhs, mod.act(b, v), c)
                rep.checked += 1
                if lhs != rhs:
                    rep.fail((str(g1), str(g2), format_monomial(u)))
    return rep


def format_monomial(mono):
    return "*".join(str(g) for g in mono) + ("*v" if mono else "v")


def format_vector(vec):
    if not vec:
        return "0"
    items = sorted(vec.items(), key=lambda t: mono_key(t[0]))
    return " + ".join(f"({format_scalar(as_gauss(c))})*{format_monomial(m)}" for m, c in items)


def module_from_json(obj):
    """{"series": {...}} -> SeriesSpec; {"verma": {...}} -> VermaModule."""
    if "series" in obj:
        s = obj["series"]
        kind = s.get("kind")
        vals = {k: parse_scalar(str(v)) for k, v in s.items() if k in ("a", "b", "aux")}
        return SeriesSpec(kind, **vals)
    if "verma" in obj:
        v = obj["verma"]
        wt = Weight(*(parse_scalar(str(v[k])) for k in ("h", "m", "z")))
        return VermaModule(wt, int(v["depth"]))
    raise ValueError("module spec needs a 'series' or 'verma' key")


__all__ = [
    "SeriesSpec",
    "Aab",
    "series_action",
    "series_coefficient",
    "sv_lift_action",
    "sv_lift_bracket_check",
    "series_intertwiner_check",
    "series_shift_iso_check",
    "Weight",
    "DepthExceeded",
    "VermaModule",
    "verma_module",
    "verma_basis",
    "verma_act",
    "verma_representation_check",
    "level_basis",
    "level",
    "format_monomial",
    "format_vector",
    "module_from_json",
    "BasisIndex",
]
