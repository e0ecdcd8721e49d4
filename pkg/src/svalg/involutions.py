"""Conjugate-linear anti-involutions of sv.

Two families.  ``PlusParams(rho, beta, nu)`` gives theta^+ with alpha = rho^2
and mu = nu^2; it reverses degrees.  ``MinusParams(tau, r1, r2, sigma)`` gives
theta^- with alpha = tau^2 and mu = -sigma^2; it preserves degrees.  Square
roots are carried as parameters so that everything stays in Q(i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import (
    C,
    Element,
    L,
    M,
    Y,
    bracket,
    format_element,
    grade,
    vir_prime_generator,
)
from .report import Report
from .scalars import I, ONE, as_gauss, as_rat, format_scalar, parse_scalar

SAMPLE_SCALARS = (as_gauss(2), I, as_gauss("3/5+4/5*i"), as_gauss("-1/2+1*i"))


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class PlusParams:
    rho: object
    beta: object
    nu: object

    kind = "plus"

    def __post_init__(self):
        for f in ("rho", "beta", "nu"):
            object.__setattr__(self, f, as_gauss(getattr(self, f)))
        sq = self.rho * self.rho
        if sq.im or not sq:
            raise InvalidParams("rho^2 must be real and nonzero")
        if self.rho.re and self.rho.im:
            raise InvalidParams("rho must be real or purely imaginary")
        if self.nu.norm() != 1:
            raise InvalidParams("|nu| must be 1")

    @property
    def alpha(self):
        return (self.rho * self.rho).re

    @property
    def mu(self):
        return self.nu * self.nu

    @property
    def mu_root(self):
        return self.nu

    def to_json(self):
        return {
            "type": "plus",
            "rho": format_scalar(self.rho),
            "beta": format_scalar(self.beta),
            "nu": format_scalar(self.nu),
        }

    def describe(self):
        return "plus:" + ",".join(f"{k}={v}" for k, v in list(self.to_json().items())[1:])


@dataclass(frozen=True)
class MinusParams:
    tau: object
    r1: object
    r2: object
    sigma: object

    kind = "minus"

    def __post_init__(self):
        object.__setattr__(self, "tau", as_gauss(self.tau))
        object.__setattr__(self, "sigma", as_gauss(self.sigma))
        object.__setattr__(self, "r1", as_rat(self.r1))
        object.__setattr__(self, "r2", as_rat(self.r2))
        if self.tau.norm() != 1:
            raise InvalidParams("|tau| must be 1")
        if self.sigma.norm() != 1:
            raise InvalidParams("|sigma| must be 1")

    @property
    def alpha(self):
        return self.tau * self.tau

    @property
    def mu(self):
        return -(self.sigma * self.sigma)

    @property
    def mu_root(self):
        # a square root of mu tied to sigma: (-i sigma)^2 = -sigma^2
        return -I * self.sigma

    def to_json(self):
        return {
            "type": "minus",
            "tau": format_scalar(self.tau),
            "r1": str(self.r1),
            "r2": str(self.r2),
            "sigma": format_scalar(self.sigma),
        }

    def describe(self):
        return "minus:" + ",".join(f"{k}={v}" for k, v in list(self.to_json().items())[1:])


_FIELDS = {"plus": ("rho", "beta", "nu"), "minus": ("tau", "r1", "r2", "sigma")}


def params_from_json(obj):
    kind = obj.get("type")
    if kind not in _FIELDS:
        raise InvalidParams(f"unknown involution type {kind!r}")
    missing = [f for f in _FIELDS[kind] if f not in obj]
    if missing:
        raise InvalidParams(f"missing fields for {kind}: {', '.join(missing)}")
    vals = [parse_scalar(str(obj[f])) for f in _FIELDS[kind]]
    return (PlusParams if kind == "plus" else MinusParams)(*vals)


def parse_params(text):
    """Parse ``plus:rho=1,beta=0,nu=1`` or ``minus:tau=1,r1=0,r2=0,sigma=i``."""
    kind, _, rest = text.partition(":")
    obj = {"type": kind.strip()}
    for part in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = part.partition("=")
        if not eq:
            raise InvalidParams(f"expected key=value, got {part!r}")
        obj[key.strip()] = val.strip()
    extra = set(obj) - {"type"} - set(_FIELDS.get(obj["type"], ()))
    if extra:
        raise InvalidParams(f"unexpected fields: {', '.join(sorted(extra))}")
    return params_from_json(obj)


# -- basis images -------------------------------------------------------------


def _plus_image(p, b, flip=False):
    a = p.alpha
    n = b.index
    if b.kind == "C":
        return Element({C: ONE})
    if b.kind == "M":
        return Element({M(-n): p.mu * a**n})
    if b.kind == "Y":
        return Element({Y(-n): p.nu * p.rho * a ** ((n - 1) // 2)})
    beta_part = Fraction(n + 1, 2) * p.beta
    if flip:
        beta_part = -beta_part
    corr = a ** (n - 1) * (beta_part + Fraction(n - 1, 2) * p.mu * p.beta.conj())
    return Element({L(-n): as_gauss(a**n), M(-n): corr})


def _minus_image(p, b, verbatim=False):
    a = p.alpha
    n = b.index
    if b.kind == "C":
        return Element({C: -ONE})
    if b.kind == "M":
        return Element({M(n): p.mu * a**n})
    if b.kind == "Y":
        return Element({Y(n): p.sigma * p.tau**n})
    if verbatim:
        corr = Fraction(n + 1, 2) * a ** (n + 1) * p.mu * p.r1 - Fraction(n - 1, 2) * a ** (n - 1) * p.mu * p.r2
    else:
        corr = a**n * p.mu_root * (Fraction(n + 1, 2) * p.r1 - Fraction(n - 1, 2) * p.r2)
    return Element({L(n): -(a**n), M(n): corr})


@lru_cache(maxsize=65536)
def basis_image(p, b):
    """theta(b) for a single basis symbol."""
    if p.kind == "plus":
        return _plus_image(p, b)
    return _minus_image(p, b)


def flipped_beta_image(p):
    """Fault injection: negate only the beta part of the L_n correction term."""
    if p.kind != "plus":
        raise InvalidParams("the beta flip applies to the plus family")
    return lru_cache(maxsize=None)(lambda b: _plus_image(p, b, flip=True))


def uncorrected_minus_image(p):
    """The minus-family L_n correction written with alpha^{n+1} mu r1 and alpha^{n-1} mu r2.

    Kept for comparison only: it fails theta^2 = id unless alpha = mu = 1.
    """
    if p.kind != "minus":
        raise InvalidParams("minus family only")
    return lru_cache(maxsize=None)(lambda b: _minus_image(p, b, verbatim=True))


def apply(p, x, image=None):
    """theta(x), extended conjugate-linearly."""
    image = image or (lambda b: basis_image(p, b))
    out = Element()
    for b, c in x.terms.items():
        out = out + image(b) * c.conj()
    return out


# -- axiom checks ---------------------------------------------------------------


def axioms_check(p, w, image=None):
    """Exhaustive check of the anti-involution axioms on the window basis."""
    th = lambda x: apply(p, x, image)  # noqa: E731
    basis = [Element.basis(b) for b in w.basis()]
    syms = w.basis()
    subs = {k: Report(k) for k in ("additive", "conj_linear", "anti_multiplicative", "involutive", "ideal", "cartan", "central", "degree")}

    for (i, x), (j, y) in product(enumerate(basis), repeat=2):
        if j >= i:
            r = subs["additive"]
            r.checked += 1
            if th(x + y) != th(x) + th(y):
                r.fail((str(syms[i]), str(syms[j])))
        r = subs["anti_multiplicative"]
        r.checked += 1
        lhs = th(bracket(x, y))
        rhs = bracket(th(y), th(x))
        if lhs != rhs:
            r.fail((str(syms[i]), str(syms[j]), format_element(lhs - rhs)))

    for s, x in zip(syms, basis):
        tx = th(x)
        for q in SAMPLE_SCALARS:
            r = subs["conj_linear"]
            r.checked += 1
            if th(x * q) != tx * q.conj():
                r.fail((str(s), str(q)))
        r = subs["involutive"]
        r.checked += 1
        back = th(tx)
        if back != x:
            r.fail((str(s), format_element(back)))
        if s.kind in ("M", "Y"):
            r = subs["ideal"]
            r.checked += 1
            if any(t.kind in ("L", "C") for t in tx.terms):
                r.fail((str(s), format_element(tx)))
        if s in (L(0), M(0), C):
            r = subs["cartan"]
            r.checked += 1
            if any(t not in (L(0), M(0), C) for t in tx.terms):
                r.fail((str(s), format_element(tx)))
        if s == C:
            r = subs["central"]
            r.checked += 1
            if tx not in (Element({C: 1}), Element({C: -1})):
                r.fail((str(s), format_element(tx)))
        r = subs["degree"]
        r.checked += 1
        want = -grade(s) if p.kind == "plus" else grade(s)
        if any(grade(t) != want for t in tx.terms):
            r.fail((str(s), format_element(tx)))

    rep = Report("involution_axioms", info={"window": w.bound, "theta": p.describe()})
    for k, r in subs.items():
        rep.merge(r)
    rep.info["failed_axioms"] = [k for k, r in subs.items() if not r.passed]
    return rep


def restrict_check_vir_prime(p, w):
    """theta(L'_n) = alpha^n L'_{-n} (plus) or -alpha^n L'_n (minus)."""
    rep = Report("vir_prime_restriction", info={"window": w.bound, "theta": p.describe()})
    for n in w.int_modes():
        got = apply(p, vir_prime_generator(n, p))
        if p.kind == "plus":
            want = vir_prime_generator(-n, p) * (as_gauss(p.alpha) ** n)
        else:
            want = vir_prime_generator(n, p) * (-(p.alpha**n))
        rep.checked += 1
        if got != want:
            rep.fail((n, format_element(got), format_element(want)))
    return rep


# -- replays of the coefficient recurrences ------------------------------------


def closed_form_beta(alpha, beta1, betam1, m):
    """beta_{m,-m} = (m+1)/2 alpha^{m-1} beta_1 - (m-1)/2 alpha^{m+1} beta_{-1}."""
    a = as_gauss(alpha)
    return Fraction(m + 1, 2) * a ** (m - 1) * as_gauss(beta1) - Fraction(m - 1, 2) * a ** (m + 1) * as_gauss(betam1)


def replay_coefficient_recurrence(alpha, beta1, betam1, bound, mu=None):
    """Check (n-m) b_{m+n} = n b_n alpha^m - m alpha^n b_m for |m|, |n| <= bound."""
    alpha = as_rat(alpha)
    if alpha == 0:
        raise InvalidParams("alpha must be nonzero")
    a = as_gauss(alpha)
    rep = Report("coefficient_recurrence", info={"bound": bound, "alpha": str(alpha)})
    b = {m: closed_form_beta(alpha, beta1, betam1, m) for m in range(-2 * bound, 2 * bound + 1)}
    for m, n in product(range(-bound, bound + 1), repeat=2):
        lhs = (n - m) * b[m + n]
        rhs = n * b[n] * a**m - m * a**n * b[m]
        rep.checked += 1
        if lhs != rhs:
            rep.fail((m, n, str(lhs), str(rhs)))
    if mu is not None:
        rep.checked += 1
        want = -(a**-2) * as_gauss(mu) * as_gauss(beta1).conj()
        if as_gauss(betam1) != want:
            rep.fail(("seed_compatibility", str(betam1), str(want)))
    return rep


def y_coefficient(p, n):
    """a_{1/2+n} = alpha^n nu rho."""
    return as_gauss(p.alpha) ** n * p.nu * p.rho


def replay_y_coefficients(p, bound):
    """a_{1/2+m} a_{-1/2-m} = mu, and theta(Y_{1/2+m}) = a_{1/2+m} Y_{-1/2-m}."""
    if p.kind != "plus":
        raise InvalidParams("Y-coefficient replay applies to the plus family")
    rep = Report("y_coefficients", info={"bound": bound, "theta": p.describe()})
    for m in range(-bound, bound + 1):
        rep.checked += 2
        prod_ = y_coefficient(p, m) * y_coefficient(p, -1 - m)
        if prod_ != p.mu:
            rep.fail(("product", m, str(prod_)))
        d = 2 * m + 1
        if basis_image(p, Y(d)) != Element({Y(-d): y_coefficient(p, m)}):
            rep.fail(("image", m))
    return rep


# the sampling set used throughout the test suites
RHO_SAMPLES = ("1", "2", "1/2", "i")
NU_SAMPLES = ("1", "-1", "3/5+4/5*i")
BETA_SAMPLES = ("0", "1", "1+1*i")
TAU_SAMPLES = ("1", "3/5+4/5*i")
SIGMA_SAMPLES = ("i", "4/5+3/5*i")
R_SAMPLES = ("0", "1", "-2")


def sample_plus(positive_only=True):
    out = []
    for rho, nu, beta in product(RHO_SAMPLES, NU_SAMPLES, BETA_SAMPLES):
        p = PlusParams(rho, beta, nu)
        if positive_only and p.alpha < 0:
            continue
        out.append(p)
    return out


def sample_minus():
    return [MinusParams(t, r1, r2, s) for t, s, r1, r2 in product(TAU_SAMPLES, SIGMA_SAMPLES, R_SAMPLES, R_SAMPLES)]
