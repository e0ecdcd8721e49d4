"""The Schrödinger-Virasoro algebra sv.

Basis ``L_n, M_n, Y_{n+1/2}, c``.  Half-integer modes are stored by doubled
degree, so ``Y(1)`` is Y_{1/2} and ``Y(-3)`` is Y_{-3/2}.  Brackets follow the
source convention ``[L_m, L_n] = (n-m) L_{m+n} + delta_{m+n,0} (m^3-m)/12 c``,
which is the opposite sign to the usual Virasoro one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from .report import Report
from .scalars import ONE, as_gauss, format_scalar, parse_scalar

KINDS = ("L", "M", "Y", "C")
_RANK = {"L": 0, "M": 1, "Y": 2, "C": 3}


class BasisIndex(NamedTuple):
    kind: str
    index: int = 0

    def __str__(self):
        if self.kind == "C":
            return "c"
        return f"{self.kind}[{self.index}]"


def L(n):
    return BasisIndex("L", n)


def M(n):
    return BasisIndex("M", n)


def Y(d):
    """Y with doubled degree d (odd): Y(1) is Y_{1/2}."""
    if d % 2 == 0:
        raise ValueError(f"Y takes an odd doubled degree, got {d}")
    return BasisIndex("Y", d)


C = BasisIndex("C", 0)


def grade(b):
    """Doubled degree: L_n, M_n -> 2n; Y keeps its stored index; c -> 0."""
    if b.kind == "Y":
        return b.index
    if b.kind == "C":
        return 0
    return 2 * b.index


def sort_key(b):
    return (_RANK[b.kind], b.index)


@lru_cache(maxsize=None)
def bracket_basis(x, y):
    """[x, y] on basis symbols as a tuple of (BasisIndex, Fraction) pairs."""
    kx, ky = x.kind, y.kind
    if kx == "C" or ky == "C":
        return ()
    if kx == "L":
        m = x.index
        if ky == "L":
            n = y.index
            out = []
            if n != m:
                out.append((L(m + n), Fraction(n - m)))
            if m + n == 0 and m**3 != m:
                out.append((C, Fraction(m**3 - m, 12)))
            return tuple(out)
        if ky == "M":
            n = y.index
            return ((M(m + n), Fraction(n)),) if n else ()
        # [L_m, Y_{n+1/2}] = (n + (1-m)/2) Y_{m+n+1/2}; with d = 2n+1 that is (d-m)/2
        d = y.index
        coef = Fraction(d - m, 2)
        return ((Y(d + 2 * m), coef),) if coef else ()
    if ky == "L":
        return tuple((b, -c) for b, c in bracket_basis(y, x))
    if kx == "Y" and ky == "Y":
        d1, d2 = x.index, y.index
        coef = Fraction(d2 - d1, 2)
        return ((M((d1 + d2) // 2), coef),) if coef else ()
    return ()


def mutated_table(x, y, terms, base=bracket_basis):
    """Bracket table with [x, y] replaced by ``terms`` (and [y, x] by -terms).

    Used as a fault-injection negative control for the exhaustive checks.
    """
    terms = tuple((b, Fraction(c)) for b, c in terms)
    neg = tuple((b, -c) for b, c in terms)

    def table(a, b):
        if (a, b) == (x, y):
            return terms
        if (a, b) == (y, x):
            return neg
        return base(a, b)

    return table


def standard_fault():
    """The canonical corruption [L_1, M_1] -> 2 M_2."""
    return mutated_table(L(1), M(1), [(M(2), 2)])


class Element:
    """Finite linear combination of basis symbols over Q(i)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for b, c in items:
                c = as_gauss(c)
                nv = clean.get(b, 0) + c
                if nv:
                    clean[b] = nv
                else:
                    clean.pop(b, None)
        self.terms = clean

    @classmethod
    def basis(cls, b, coef=ONE):
        return cls({b: coef})

    def __add__(self, other):
        out = dict(self.terms)
        for b, c in other.terms.items():
            nv = out.get(b, 0) + c
            if nv:
                out[b] = nv
            else:
                out.pop(b, None)
        return _raw(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return _raw({b: -c for b, c in self.terms.items()})

    def __mul__(self, s):
        s = as_gauss(s)
        if not s:
            return Element()
        return _raw({b: c * s for b, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: sort_key(t[0])))

    def coefficient(self, b):
        return self.terms.get(b, as_gauss(0))

    def support(self):
        return set(self.terms)

    def __repr__(self):
        return f"Element({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


def _raw(terms):
    e = Element.__new__(Element)
    e.terms = terms
    return e


def basis_element(b):
    return Element.basis(b)


def bracket(x, y, table=bracket_basis):
    """Bilinear bracket of two Elements."""
    out = {}
    for bx, cx in x.terms.items():
        for by, cy in y.terms.items():
            cc = cx * cy
            for b, s in table(bx, by):
                nv = out.get(b, 0) + cc * s
                if nv:
                    out[b] = nv
                else:
                    out.pop(b, None)
    return _raw(out)


# -- textual form ------------------------------------------------------------


def format_element(x):
    if not x.terms:
        return "0"
    parts = []
    for b, c in x:
        sym = str(b)
        if c.im == 0:
            r = c.re
            neg = r < 0
            mag = -r if neg else r
            body = sym if mag == 1 else f"{mag}*{sym}"
        else:
            neg = False
            body = f"({format_scalar(c)})*{sym}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"^(?:(?P<coef>\([^()]*\)|[0-9/]+)\s*\*\s*)?(?P<sym>[LMY]\[\s*-?\d+\s*\]|c)$"
)


def parse_element(text):
    """Inverse of :func:`format_element`, e.g. ``"L[2] - 1/2*M[-3] + (1*i)*Y[5]"``."""
    s = text.strip()
    if s == "0":
        return Element()
    terms = {}
    for sgn, body in _resplit(s):
        m = _TERM_RE.match(body.replace(" ", ""))
        if not m:
            raise ValueError(f"malformed term {body!r} in {text!r}")
        coef = parse_scalar(m.group("coef")) if m.group("coef") else ONE
        sym = m.group("sym")
        if sym == "c":
            b = C
        else:
            kind, idx = sym[0], int(sym[2:-1])
            b = Y(idx) if kind == "Y" else BasisIndex(kind, idx)
        terms[b] = terms.get(b, 0) + sgn * coef
    return Element(terms)


def _resplit(s):
    """Split on top-level + and - into (sign, body) pairs."""
    out = []
    depth = 0
    sign = 1
    cur = ""
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                out.append((sign, cur.strip()))
                cur = ""
                sign = 1
            if ch == "-":
                sign = -sign
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur.strip()))
    elif s.strip():
        raise ValueError(f"malformed element: {s!r}")
    return out


# -- windows and exhaustive checks ---------------------------------------------


@dataclass(frozen=True)
class Window:
    """All basis symbols with |doubled degree| <= bound (plus c)."""

    bound: int

    def __post_init__(self):
        if self.bound < 2:
            raise ValueError("window bound must be >= 2")

    def int_modes(self):
        h = self.bound // 2
        return range(-h, h + 1)

    def basis(self, kinds=KINDS):
        out = []
        if "L" in kinds:
            out += [L(n) for n in self.int_modes()]
        if "M" in kinds:
            out += [M(n) for n in self.int_modes()]
        if "Y" in kinds:
            top = self.bound if self.bound % 2 else self.bound - 1
            out += [Y(d) for d in range(-top, top + 1, 2)]
        if "C" in kinds:
            out.append(C)
        return out


def _combine(acc, terms, scale):
    for b, c in terms:
        nv = acc.get(b, 0) + scale * c
        if nv:
            acc[b] = nv
        else:
            acc.pop(b, None)


def jacobi_check(w, table=bracket_basis):
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 for every ordered basis triple."""
    rep = Report("jacobi", info={"window": w.bound})
    basis = w.basis()

    def double(x, inner):
        acc = {}
        for b, c in inner:
            _combine(acc, table(x, b), c)
        return acc

    for x, y, z in product(basis, repeat=3):
        acc = {}
        for a, (p, q) in ((x, (y, z)), (y, (z, x)), (z, (x, y))):
            _combine(acc, double(a, table(p, q)).items(), 1)
        rep.checked += 1
        if acc:
            rep.fail((str(x), str(y), str(z), format_element(Element(acc))))
    return rep


def antisymmetry_check(w, table=bracket_basis):
    rep = Report("antisymmetry", info={"window": w.bound})
    basis = w.basis()
    for x, y in product(basis, repeat=2):
        acc = {}
        _combine(acc, table(x, y), 1)
        _combine(acc, table(y, x), 1)
        rep.checked += 1
        if acc:
            rep.fail((str(x), str(y)))
    return rep


def ideal_window_check(w, table=bracket_basis):
    """[x, y] stays in span{M, Y, c} for x in sv and y in M + Y + Cc."""
    rep = Report("ideal", info={"window": w.bound})
    for x in w.basis():
        for y in w.basis(kinds=("M", "Y", "C")):
            rep.checked += 1
            bad = [b for b, c in table(x, y) if c and b.kind == "L"]
            if bad:
                rep.fail((str(x), str(y)))
    return rep


def center_check(w, table=bracket_basis):
    """M_0 and c bracket to zero with everything in the window."""
    rep = Report("center", info={"window": w.bound})
    for x in w.basis():
        for z in (M(0), C):
            rep.checked += 1
            if table(x, z) or table(z, x):
                rep.fail((str(x), str(z)))
    return rep


def grading_check(w, table=bracket_basis):
    rep = Report("grading", info={"window": w.bound})
    for x, y in product(w.basis(), repeat=2):
        rep.checked += 1
        for b, c in table(x, y):
            if b != C and grade(b) != grade(x) + grade(y):
                rep.fail((str(x), str(y), str(b)))
    return rep


# -- Vir' -------------------------------------------------------------------


def vir_prime_coefficient(n, p):
    """Coefficient x_n with L'_n = L_n + x_n M_n."""
    half = Fraction(1, 2)
    if p.kind == "plus":
        return -(Fraction(n - 1, 2)) * p.beta / p.alpha
    # the constraint conj(x) s + x / s = t (t real, |s| = 1) is met by x = s t / 2
    t = Fraction(n - 1, 2) * p.r2 - Fraction(n + 1, 2) * p.r1
    return p.mu_root * t * half


def vir_prime_generator(n, p):
    x = vir_prime_coefficient(n, p)
    return Element({L(n): ONE, M(n): x})


def vir_prime_bracket_check(w, p):
    """[L'_m, L'_n] = (n-m) L'_{m+n} + delta_{m+n,0} (m^3-m)/12 c on the window."""
    rep = Report("vir_prime_bracket", info={"window": w.bound, "theta": p.describe()})
    modes = list(w.int_modes())
    gens = {n: vir_prime_generator(n, p) for n in range(2 * modes[0], 2 * modes[-1] + 1)}
    for m, n in product(modes, repeat=2):
        lhs = bracket(gens[m], gens[n])
        rhs = gens[m + n] * (n - m)
        if m + n == 0:
            rhs = rhs + Element({C: Fraction(m**3 - m, 12)})
        rep.checked += 1
        if lhs != rhs:
            rep.fail((m, n, format_element(lhs - rhs)))
    return rep


__all__ = [
    "BasisIndex",
    "Element",
    "Window",
    "L",
    "M",
    "Y",
    "C",
    "grade",
    "bracket",
    "bracket_basis",
    "basis_element",
    "mutated_table",
    "standard_fault",
    "jacobi_check",
    "antisymmetry_check",
    "ideal_window_check",
    "center_check",
    "grading_check",
    "vir_prime_coefficient",
    "vir_prime_generator",
    "vir_prime_bracket_check",
    "format_element",
    "parse_element",
]

