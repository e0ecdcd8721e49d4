"""Contravariant Hermitian forms on highest-weight modules.

The form satisfies ``<x u, v> = <u, theta(x) v>``.  It is conjugate-linear in
the first slot and normalised by ``<v, v> = 1``.  It is only defined for the
plus family: no module is unitary under theta^-.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import M, Y
from .involutions import InvalidParams, PlusParams, basis_image
from .linalg import nullspace
from .representations import Aab, DepthExceeded, level, level_basis, series_coefficient, verma_module
from .scalars import ZERO, as_gauss, as_rat, format_scalar

# verdict tags
PD = "PositiveDefinite"
PSD = "PositiveSemidefinite"
INDEFINITE = "Indefinite"
NON_HERMITIAN = "NonHermitian"


def _require_plus(p):
    if p.kind != "plus":
        raise InvalidParams("contravariant forms are only built for the plus family")


def cartan_shift(p):
    """beta_0 with theta(L_0) = L_0 + beta_0 M_0."""
    return (p.beta - p.mu * p.beta.conj()) / (2 * p.alpha)


def weight_compatible(wt, p):
    """The form can be Hermitian only if beta_0 * m is real."""
    return (cartan_shift(p) * wt.m).im == 0


class FormContext:
    """Memoised pairing of PBW monomials for a fixed module and theta."""

    def __init__(self, module, p):
        _require_plus(p)
        self.module = module
        self.p = p
        self._pair = {}

    def pair_monos(self, mu, nu):
        if level(mu) != level(nu):
            return ZERO
        key = (mu, nu)
        hit = self._pair.get(key)
        if hit is not None:
            return hit
        vec = {nu: as_gauss(1)}
        # <f_1 ... f_k v, w> = <v, theta(f_k) ... theta(f_1) w>: theta(f_1) acts first
        for g in mu:
            vec = self.module.act_element(basis_image(self.p, g), vec)
        val = as_gauss(vec.get((), 0))
        self._pair[key] = val
        return val

    def pair(self, u, v):
        total = ZERO
        for mu, cu in u.items():
            cu = as_gauss(cu).conj()
            for nu, cv in v.items():
                val = self.pair_monos(mu, nu)
                if val:
                    total = total + cu * cv * val
        return total


def contravariant_form(wt, p, u, v, depth):
    """<u, v> for module vectors ``{monomial: coeff}`` in the depth-``depth`` module."""
    return FormContext(verma_module(wt, depth), p).pair(u, v)


def gram(wt, p, d, depth, ctx=None):
    """Gram matrix on the canonical level-d basis."""
    if d > depth:
        raise DepthExceeded(f"level {d} beyond depth {depth}")
    ctx = ctx or FormContext(verma_module(wt, depth), p)
    basis = level_basis(d)
    return [[ctx.pair_monos(a, b) for b in basis] for a in basis]


# -- positivity ----------------------------------------------------------------


@dataclass
class Verdict:
    tag: str
    radical_dim: int = 0
    witness: list = field(default_factory=list)
    cell: tuple = ()

    def to_json(self):
        out = {"verdict": self.tag, "radical_dim": self.radical_dim}
        out["witness"] = [format_scalar(x) for x in self.witness]
        if self.cell:
            out["cell"] = list(self.cell)
        return out


def hermitian_violation(G):
    n = len(G)
    for i in range(n):
        for j in range(i, n):
            if as_gauss(G[i][j]) != as_gauss(G[j][i]).conj():
                return (i, j)
    return None


def quad(G, u):
    """u* G u."""
    n = len(G)
    total = ZERO
    for i in range(n):
        if not u[i]:
            continue
        row = ZERO
        for j in range(n):
            if u[j] and G[i][j]:
                row = row + as_gauss(G[i][j]) * u[j]
        total = total + u[i].conj() * row
    return total


def positivity(G):
    """Exact PD / PSD / Indefinite / NonHermitian verdict by congruence elimination.

    Works on the Schur complement while tracking the change of basis T, so any
    negative diagonal entry met on the way yields a witness u = T e_i with
    u* G u < 0.
    """
    n = len(G)
    bad = hermitian_violation(G)
    if bad:
        return Verdict(NON_HERMITIAN, cell=bad)
    A = {(i, j): as_gauss(G[i][j]) for i in range(n) for j in range(n) if G[i][j]}
    T = {i: {i: as_gauss(1)} for i in range(n)}  # column i of T, sparse
    active = list(range(n))

    def col(i, extra=None):
        u = [ZERO] * n
        for k, v in T[i].items():
            u[k] = u[k] + v
        if extra:
            j, s = extra
            for k, v in T[j].items():
                u[k] = u[k] + s * v
        return u

    while active:
        diag = {i: A.get((i, i), ZERO).re for i in active}
        neg = [i for i in active if diag[i] < 0]
        if neg:
            return Verdict(INDEFINITE, witness=col(neg[0]))
        pos = [i for i in active if diag[i] > 0]
        if not pos:
            for i in active:
                for j in active:
                    a = A.get((i, j))
                    if i != j and a:
                        return Verdict(INDEFINITE, witness=col(i, (j, -a.conj())))
            return Verdict(PSD, radical_dim=len(active))
        piv = pos[0]
        d = A[(piv, piv)]
        active.remove(piv)
        for j in active:
            a_pj = A.get((piv, j))
            if not a_pj:
                continue
            f = a_pj / d
            for k, v in T[piv].items():
                nv = T[j].get(k, ZERO) - f * v
                if nv:
                    T[j][k] = nv
                else:
                    T[j].pop(k, None)
        for j in active:
            a_jp = A.get((j, piv))
            if not a_jp:
                continue
            for k in active:
                a_pk = A.get((piv, k))
                if not a_pk:
                    continue
                nv = A.get((j, k), ZERO) - a_jp * a_pk / d
                if nv:
                    A[(j, k)] = nv
                else:
                    A.pop((j, k), None)
    return Verdict(PD)


def radical_basis(G):
    """Exact kernel basis of a Hermitian matrix (the radical of its form)."""
    bad = hermitian_violation(G)
    if bad:
        raise ValueError(f"matrix is not Hermitian at cell {bad}")
    n = len(G)
    rows = [{j: as_gauss(G[i][j]) for j in range(n) if G[i][j]} for i in range(n)]
    return nullspace(rows, n)


def gram_report(wt, p, d, depth, ctx=None):
    G = gram(wt, p, d, depth, ctx)
    v = positivity(G)
    out = {
        "level": d,
        "dimension": len(G),
        "basis": [monomial_label(m) for m in level_basis(d)],
        "matrix": [[format_scalar(x) for x in row] for row in G],
    }
    out.update(v.to_json())
    if v.tag != NON_HERMITIAN:
        out["radical"] = [[format_scalar(x) for x in vec] for vec in radical_basis(G)]
    return out


def monomial_label(mono):
    return "*".join(str(g) for g in mono) or "1"


# -- rescaling ---------------------------------------------------------------------


def rescale_factor(p_from, n):
    """|rho|^{-n} = alpha^{-n/2} for the block of L'_0-offset n/2."""
    _require_plus(p_from)
    if p_from.alpha <= 0:
        raise InvalidParams("rescaling needs alpha > 0")
    r = abs(p_from.rho.re)
    return Fraction(r) ** (-n)


def rescale_form(p_from, blocks):
    """Multiply each block ``{n: matrix}`` by alpha^{-n/2}."""
    out = {}
    for n, G in blocks.items():
        f = rescale_factor(p_from, n)
        out[n] = [[as_gauss(x) * f for x in row] for row in G]
    return out


def rescaled_target(p_from):
    """The alpha = 1 pack for which the rescaled form is contravariant.

    Rescaling divides the M-correction of theta(L_n) by alpha, so beta becomes
    beta / alpha; for beta = 0 this is the pack with the same beta and mu.
    """
    _require_plus(p_from)
    return PlusParams(1, p_from.beta / p_from.alpha, p_from.nu)


class RescaledForm:
    """<u, v>' = sum over levels l of alpha^{l/2} <u_l, v_l> on a highest-weight module.

    Level l (doubled) has L_0-offset -l/2, i.e. n = -l in rescale_factor.
    """

    def __init__(self, module, p_from):
        self.ctx = FormContext(module, p_from)
        self.p_from = p_from

    def pair(self, u, v):
        total = ZERO
        for mu, cu in u.items():
            for nu, cv in v.items():
                if level(mu) != level(nu):
                    continue
                val = self.ctx.pair_monos(mu, nu)
                if val:
                    total = total + as_gauss(cu).conj() * cv * val * rescale_factor(self.p_from, -level(mu))
        return total


# -- intermediate series ---------------------------------------------------------------


class ReducibleParameters(ValueError):
    pass


@dataclass
class Feasibility:
    verdict: str
    weights: dict = field(default_factory=dict)
    violation: tuple = ()
    reason: str = ""

    @property
    def feasible(self):
        return self.verdict == "Feasible"

    def to_json(self):
        out = {"verdict": self.verdict}
        if self.weights:
            out["weights"] = {str(k): str(v) for k, v in sorted(self.weights.items())}
        if self.violation:
            out["violation"] = {"n": self.violation[0], "k": self.violation[1]}
        if self.reason:
            out["reason"] = self.reason
        return out


def series_unitarity_feasibility(a, b, window):
    """Search for a diagonal invariant form p_k > 0 on A_{a,b} for |k| <= window.

    Contravariance with L_n -> L_{-n} (M and Y act by zero) reads
    conj(a+k+nb) p_{k+n} = (a+k+n-nb) p_k.  The n = 1 case fixes the ratios
    from p_0 = 1; every other |n| <= window is then checked.
    """
    a = as_rat(a)
    b = as_gauss(b)
    s = Aab(a, b)
    ks = range(-window, window + 1)
    p = {0: Fraction(1)}

    def step(k):
        num = series_coefficient(s, -1, k + 1)  # a + k + 1 - b
        den = series_coefficient(s, 1, k).conj()  # conj(a + k + b)
        return num, den

    for direction in (1, -1):
        k = 0
        while -window <= k + direction <= window:
            lo = k if direction == 1 else k - 1
            num, den = step(lo)
            if not num and not den:
                raise ReducibleParameters(f"ratio undetermined at k={lo}")
            if not num or not den:
                return Feasibility("Infeasible", violation=(1, lo), reason="degenerate")
            r = num / den
            if r.im or r.re <= 0:
                return Feasibility("Infeasible", violation=(1, lo), reason="sign")
            nxt = k + direction
            p[nxt] = p[k] * r.re if direction == 1 else p[k] / r.re
            k = nxt
    for n in range(-window, window + 1):
        for k in ks:
            if k + n not in p:
                continue
            lhs = series_coefficient(s, n, k).conj() * p[k + n]
            rhs = series_coefficient(s, -n, k + n) * p[k]
            if lhs != rhs:
                return Feasibility("Infeasible", violation=(n, k), reason="constraint")
    return Feasibility("Feasible", weights=p)


def on_unitary_line(b):
    return as_gauss(b).re == Fraction(1, 2)


# -- highest-weight shape ---------------------------------------------------------------


def _coords(vec, basis):
    index = {m: i for i, m in enumerate(basis)}
    u = [ZERO] * len(basis)
    for m, c in vec.items():
        u[index[m]] = as_gauss(c)
    return u


def _in_radical(G, u):
    return all(sum((as_gauss(G[i][j]) * u[j] for j in range(len(u)) if u[j]), ZERO) == 0 for i in range(len(G)))


def highest_weight_analysis(wt, p, depth):
    """Gram verdicts for levels 0..depth plus, when m = 0, the radical shape checks.

    Returns a dict with per-level reports and the flags ``all_psd``,
    ``my_in_radical`` (every M- or Y-containing monomial is null) and
    ``quotient_action_zero`` (M_n and Y_d map every basis vector into the radical).
    """
    mod = verma_module(wt, depth)
    ctx = FormContext(mod, p)
    grams = {d: gram(wt, p, d, depth, ctx) for d in range(depth + 1)}
    verdicts = {d: positivity(G) for d, G in grams.items()}
    out = {"levels": [], "all_psd": all(v.tag in (PD, PSD) for v in verdicts.values())}
    for d in range(depth + 1):
        out["levels"].append({"level": d, "dimension": len(grams[d]), **verdicts[d].to_json()})
    my_ok = True
    for d in range(depth + 1):
        basis = level_basis(d)
        for i, mono in enumerate(basis):
            if any(g.kind in ("M", "Y") for g in mono):
                e = [ZERO] * len(basis)
                e[i] = as_gauss(1)
                if not _in_radical(grams[d], e):
                    my_ok = False
    out["my_in_radical"] = my_ok
    gens = [M(n) for n in range(-depth // 2, depth // 2 + 1)]
    gens += [Y(e) for e in range(-depth, depth + 1) if e % 2]
    act_ok = True
    for d in range(depth + 1):
        for mono in level_basis(d):
            for g in gens:
                d2 = d - (2 * g.index if g.kind == "M" else g.index)
                if d2 < 0 or d2 > depth:
                    continue
                vec = mod.act(g, {mono: Fraction(1)})
                if not _in_radical(grams[d2], _coords(vec, level_basis(d2))):
                    act_ok = False
    out["quotient_action_zero"] = act_ok
    return out


__all__ = [
    "FormContext",
    "contravariant_form",
    "gram",
    "gram_report",
    "positivity",
    "radical_basis",
    "Verdict",
    "weight_compatible",
    "cartan_shift",
    "rescale_factor",
    "rescale_form",
    "rescaled_target",
    "RescaledForm",
    "series_unitarity_feasibility",
    "Feasibility",
    "ReducibleParameters",
    "on_unitary_line",
    "highest_weight_analysis",
    "quad",
]
