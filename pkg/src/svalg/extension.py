"""Linear constraints on a Y_{1/2}-action over a sum of intermediate series.

The module is V = (+)_l A_{a,b_l} (+) (+)_{l'} A_{a+1/2,d_l'} (+) W^T, with
L'_m acting by the series formulas and by zero on the trivial block W.  The
unknowns are the coefficients of

    Y_{1/2} v_{k,l}       = sum_l' mu[k,l,l'] v_{1/2+k,l'} + sum_t wA[k,l,t] w_t
    Y_{1/2} v_{1/2+k,l'}  = sum_l lambda[k,l,l'] v_{k+1,l} + sum_t wB[k,l',t] w_t

Rows come from two sources.  Families "3.5", "3.7", "3.8", "3.10" and "3.20"
transcribe the classical relations as written.  The remaining families are
produced by a small commutator engine that applies operator words to basis
vectors:

* "vir2" encodes ad(L'_1) ad(L'_2) ad(L'_{-1}) Y_{1/2} = 3 ad(L'_2) Y_{1/2}.
* "W:L1", "W:L1L-1" and "W:L0" are the W-components of [L'_1, Y_{1/2}] = 0,
  [L'_1, [L'_{-1}, Y_{1/2}]] = -Y_{1/2} and [L'_0, Y_{1/2}] = Y_{1/2}/2.

Without "vir2" the system leaves a 2RS-dimensional solution space, so it is
part of the default set.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import nullspace as _nullspace, rank
from .report import Report
from .representations import Aab, series_action
from .scalars import ONE, ZERO, as_gauss, as_rat, format_scalar

HALF = Fraction(1, 2)

CLASSICAL = ("3.5", "3.7", "3.8", "3.10")
TRIVIAL_FAMILIES = ("W:L1", "W:L1L-1", "W:L0", "3.20")
DEFAULT_FAMILIES = CLASSICAL + ("vir2",) + TRIVIAL_FAMILIES
ALL_FAMILIES = DEFAULT_FAMILIES + ("raw:L1", "raw:L1L-1")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionConfig:
    a: object
    b_list: tuple
    d_list: tuple
    window: int
    trivial_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", as_rat(self.a))
        object.__setattr__(self, "b_list", tuple(as_gauss(x) for x in self.b_list))
        object.__setattr__(self, "d_list", tuple(as_gauss(x) for x in self.d_list))
        if not 0 <= self.a < HALF:
            raise ConfigError("need 0 <= a < 1/2")
        if self.window < 0:
            raise ConfigError("empty window")
        if self.trivial_dim < 0:
            raise ConfigError("trivial_dim must be >= 0")
        if not self.b_list and not self.d_list:
            raise ConfigError("need at least one summand")
        off = [format_scalar(x) for x in self.b_list + self.d_list if x.re != HALF]
        if off:
            warnings.warn(f"parameters off the Re = 1/2 line: {', '.join(off)}", stacklevel=2)

    @property
    def R(self):
        return len(self.b_list)

    @property
    def S(self):
        return len(self.d_list)

    def ks(self):
        return range(-self.window, self.window + 1)

    def with_window(self, K):
        return ExtensionConfig(self.a, self.b_list, self.d_list, K, self.trivial_dim)

    def to_json(self):
        return {
            "a": str(self.a),
            "b": [format_scalar(x) for x in self.b_list],
            "d": [format_scalar(x) for x in self.d_list],
            "window": self.window,
            "trivial_dim": self.trivial_dim,
        }


def config_from_json(obj):
    return ExtensionConfig(
        obj["a"],
        tuple(obj.get("b", ())),
        tuple(obj.get("d", ())),
        int(obj["window"]),
        int(obj.get("trivial_dim", 0)),
    )


def unknown_keys(cfg):
    """Unknowns ordered by family (mu, lambda, wA, wB), then k, l, l', t."""
    R, S, T = cfg.R, cfg.S, cfg.trivial_dim
    keys = [("mu", k, l, lp) for k in cfg.ks() for l in range(R) for lp in range(S)]
    keys += [("lambda", k, l, lp) for k in cfg.ks() for l in range(R) for lp in range(S)]
    keys += [("wA", k, l, t) for k in cfg.ks() for l in range(R) for t in range(T)]
    keys += [("wB", k, lp, t) for k in cfg.ks() for lp in range(S) for t in range(T)]
    return keys


def format_unknown(key):
    fam, k, x, y = key
    if fam in ("mu", "lambda"):
        return f"{fam}[k={k},l={x + 1},l'={y + 1}]"
    side = "l" if fam == "wA" else "l'"
    return f"{fam}[k={k},{side}={x + 1},t={y + 1}]"


@dataclass
class ExtensionSystem:
    config: ExtensionConfig
    unknowns: list
    rows: list = field(default_factory=list)  # dicts unknown-key -> coefficient
    tags: list = field(default_factory=list)

    def add(self, tag, row):
        row = {k: v for k, v in row.items() if v}
        if row:
            self.rows.append(row)
            self.tags.append(tag)

    def family_counts(self):
        out = {}
        for t in self.tags:
            fam = t.split(" ", 1)[0]
            out[fam] = out.get(fam, 0) + 1
        return out

    def matrix_rows(self, families=None):
        index = {k: i for i, k in enumerate(self.unknowns)}
        out = []
        for tag, row in zip(self.tags, self.rows):
            if families is not None and tag.split(" ", 1)[0] not in families:
                continue
            out.append({index[k]: v for k, v in row.items()})
        return out

    def without(self, family):
        sub = ExtensionSystem(self.config, self.unknowns)
        for tag, row in zip(self.tags, self.rows):
            if tag.split(" ", 1)[0] != family:
                sub.rows.append(row)
                sub.tags.append(tag)
        return sub


# -- commutator engine ----------------------------------------------------------


class _Engine:
    """Applies words in L'_m and one Y_{1/2} to basis vectors of V."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.specA = [Aab(cfg.a, b) for b in cfg.b_list]
        self.specB = [Aab(cfg.a + HALF, d) for d in cfg.d_list]

    def L(self, m, v):
        """L'_m v for a basis vector, as {basis: coeff}."""
        kind, k, j = v
        if kind == "W":
            return {}
        spec = self.specA[j] if kind == "A" else self.specB[j]
        return {(kind, k2, j): c for k2, c in series_action(spec, m, {k: ONE}).items()}

    def Y(self, v):
        """Y_{1/2} v as {basis: {unknown: coeff}}."""
        kind, k, j = v
        T = self.cfg.trivial_dim
        out = {}
        if kind == "A":
            for lp in range(self.cfg.S):
                out[("B", k, lp)] = {("mu", k, j, lp): ONE}
            for t in range(T):
                out[("W", t, 0)] = {("wA", k, j, t): ONE}
        elif kind == "B":
            for l in range(self.cfg.R):
                out[("A", k + 1, l)] = {("lambda", k, l, j): ONE}
            for t in range(T):
                out[("W", t, 0)] = {("wB", k, j, t): ONE}
        return out

    def apply_word(self, word, v):
        """Evaluate a word (leftmost acts last) on basis vector v."""
        num = {v: ONE}
        sym = None
        for op in reversed(word):
            if op == "Y":
                sym = {}
                for b, c in num.items():
                    for b2, lin in self.Y(b).items():
                        acc = sym.setdefault(b2, {})
                        for u, x in lin.items():
                            _acc(acc, u, x * c)
                num = None
            elif sym is None:
                nxt = {}
                for b, c in num.items():
                    for b2, c2 in self.L(op, b).items():
                        _acc(nxt, b2, c * c2)
                num = nxt
            else:
                nxt = {}
                for b, lin in sym.items():
                    for b2, c2 in self.L(op, b).items():
                        acc = nxt.setdefault(b2, {})
                        for u, x in lin.items():
                            _acc(acc, u, x * c2)
                sym = nxt
        return sym or {}

    def apply_expr(self, expr, v):
        out = {}
        for coef, word in expr:
            for b, lin in self.apply_word(word, v).items():
                acc = out.setdefault(b, {})
                for u, x in lin.items():
                    _acc(acc, u, x * coef)
        return {b: lin for b, lin in out.items() if lin}


def _acc(d, key, val):
    nv = d.get(key, ZERO) + val
    if nv:
        d[key] = nv
    else:
        d.pop(key, None)


def ad(m, expr):
    """[L'_m, X] for an operator expression X (list of (coef, word))."""
    return [(c, (m,) + w) for c, w in expr] + [(-c, w + (m,)) for c, w in expr]


Y_HALF = [(ONE, ("Y",))]

IDENTITIES = {
    # [L'_1, Y_{1/2}] = 0
    "L1": ad(1, Y_HALF),
    # [L'_1, [L'_{-1}, Y_{1/2}]] + Y_{1/2} = 0
    "L1L-1": ad(1, ad(-1, Y_HALF)) + Y_HALF,
    # level-two equivariance: both sides equal -3/2 Y_{5/2}
    "vir2": ad(1, ad(2, ad(-1, Y_HALF))) + [(-3 * c, w) for c, w in ad(2, Y_HALF)],
    # [L'_0, Y_{1/2}] - Y_{1/2}/2 = 0
    "L0": ad(0, Y_HALF) + [(-HALF * ONE, ("Y",))],
}


def _sources(cfg):
    out = [("A", k, l) for k in cfg.ks() for l in range(cfg.R)]
    out += [("B", k, lp) for k in cfg.ks() for lp in range(cfg.S)]
    return out


def _in_window(cfg, row):
    K = cfg.window
    return all(-K <= key[1] <= K for key in row)


def engine_rows(cfg, identity, component=None):
    """Rows (tag suffix, row) from an identity applied to every in-window source vector.

    ``component`` restricts to output components of one kind ("A", "B" or "W").
    Rows touching unknowns outside the window are dropped.
    """
    eng = _Engine(cfg)
    expr = IDENTITIES[identity]
    out = []
    for src in _sources(cfg):
        res = eng.apply_expr(expr, src)
        for b in sorted(res, key=_basis_sort):
            if component and b[0] != component:
                continue
            row = res[b]
            if row and _in_window(cfg, row):
                out.append((f"src={_fmt_basis(src)} out={_fmt_basis(b)}", row))
    return out


def _basis_sort(b):
    return ("ABW".index(b[0]), b[1], b[2])


def _fmt_basis(b):
    kind, k, j = b
    if kind == "A":
        return f"v[{k},{j + 1}]"
    if kind == "B":
        return f"v[1/2+{k},{j + 1}]" if k >= 0 else f"v[1/2{k},{j + 1}]"
    return f"w[{k + 1}]"


# -- transcribed families -------------------------------------------------------------


def _classical_rows(cfg, fam):
    a = cfg.a
    K = cfg.window
    out = []
    for l, b in enumerate(cfg.b_list):
        for lp, d in enumerate(cfg.d_list):
            mu = lambda k: ("mu", k, l, lp)  # noqa: E731
            lam = lambda k: ("lambda", k, l, lp)  # noqa: E731
            for k in cfg.ks():
                tag = f"{fam} k={k} l={l + 1} l'={lp + 1}"
                if fam == "3.5" and k + 1 <= K:
                    out.append((tag, {mu(k + 1): a + k + b, mu(k): -(a + HALF + k + d)}))
                elif fam == "3.8" and k + 1 <= K:
                    out.append((tag, {lam(k + 1): a + HALF + k + d, lam(k): -(a + k + 1 + b)}))
                elif fam == "3.7" and -K < k < K:
                    row = {}
                    _acc(row, mu(k), (a + HALF + k - d) * (a - HALF + k + d))
                    _acc(row, mu(k - 1), -(a + k - b) * (a - HALF + k + d))
                    _acc(row, mu(k + 1), -(a + k + b) * (a + HALF + k + 1 - d))
                    _acc(row, mu(k), (a + k + b) * (a + k + 1 - b))
                    _acc(row, mu(k), ONE)
                    out.append((tag, row))
                elif fam == "3.10" and -K < k < K:
                    row = {}
                    _acc(row, lam(k), (a + k + b) * (a + k + 1 - b))
                    _acc(row, lam(k - 1), -(a + k + b) * (a + HALF + k - d))
                    _acc(row, lam(k + 1), -(a + k + HALF + d) * (a + k + 2 - b))
                    _acc(row, lam(k), (a + k + HALF + d) * (a + Fraction(3, 2) + k - d))
                    _acc(row, lam(k), ONE)
                    out.append((tag, row))
    return out


def _trivial_rows(cfg):
    """(1+d)(2-d) w_0 = w_0 for every l' and every trivial component."""
    out = []
    if cfg.trivial_dim == 0 or cfg.window < 0:
        return out
    for lp, d in enumerate(cfg.d_list):
        for t in range(cfg.trivial_dim):
            out.append((f"3.20 l'={lp + 1} t={t + 1}", {("wB", 0, lp, t): (1 + d) * (2 - d) - 1}))
    return out


_ENGINE_FAMILIES = {
    "vir2": ("vir2", None),
    "W:L1": ("L1", "W"),
    "W:L1L-1": ("L1L-1", "W"),
    "W:L0": ("L0", "W"),
    "raw:L1": ("L1", None),
    "raw:L1L-1": ("L1L-1", None),
}


def assemble_constraints(cfg, families=DEFAULT_FAMILIES):
    """Build the constraint system; rows are tagged "<family> <details>"."""
    unknown_set = set(unknown_keys(cfg))
    sys_ = ExtensionSystem(cfg, unknown_keys(cfg))
    for fam in families:
        if fam in CLASSICAL:
            rows = _classical_rows(cfg, fam)
        elif fam == "3.20":
            rows = _trivial_rows(cfg)
        elif fam in _ENGINE_FAMILIES:
            ident, comp = _ENGINE_FAMILIES[fam]
            if comp == "W" and cfg.trivial_dim == 0:
                continue
            rows = [(f"{fam} {t}", r) for t, r in engine_rows(cfg, ident, comp)]
        else:
            raise ConfigError(f"unknown equation family {fam!r}")
        for tag, row in rows:
            if all(k in unknown_set for k in row):
                sys_.add(tag, row)
    return sys_


def nullspace(sys_):
    """Exact nullspace basis (dense vectors over the unknown ordering)."""
    return _nullspace(sys_.matrix_rows(), len(sys_.unknowns))


def nullity(sys_):
    return len(sys_.unknowns) - rank(sys_.matrix_rows(), len(sys_.unknowns))


def raw_system(cfg):
    """Rows of the two raw commutator identities on all components (oracle)."""
    return assemble_constraints(cfg, ("raw:L1", "raw:L1L-1"))


def satisfies(sys_, vec):
    index = {k: i for i, k in enumerate(sys_.unknowns)}
    for row in sys_.rows:
        if sum((c * vec[index[k]] for k, c in row.items()), ZERO):
            return False
    return True


def solve(cfg, families=DEFAULT_FAMILIES):
    """Report with nullity, basis and family counts."""
    sys_ = assemble_constraints(cfg, families)
    basis = nullspace(sys_)
    rep = Report("extension", info={"config": cfg.to_json()})
    rep.checked = len(sys_.rows)
    if basis:
        for vec in basis:
            rep.fail({format_unknown(k): format_scalar(v) for k, v in zip(sys_.unknowns, vec) if v})
    rep.info.update(
        nullity=len(basis),
        unknowns=len(sys_.unknowns),
        rows=len(sys_.rows),
        families=sys_.family_counts(),
        basis=[[format_scalar(x) for x in vec] for vec in basis],
    )
    return rep


def window_agreement(cfg, bigger):
    """Solutions for window ``bigger`` restricted to cfg.window solve the cfg.window system."""
    small = assemble_constraints(cfg)
    large_cfg = cfg.with_window(bigger)
    large = assemble_constraints(large_cfg)
    big_basis = nullspace(large)
    index = {k: i for i, k in enumerate(large.unknowns)}
    rep = Report("window_agreement", info={"inner": cfg.window, "outer": bigger})
    small_null = nullity(small)
    big_null = len(big_basis)
    for vec in big_basis:
        proj = [vec[index[k]] for k in small.unknowns]
        rep.checked += 1
        if not satisfies(small, proj):
            rep.fail("restricted solution violates the inner system")
    rep.info.update(inner_nullity=small_null, outer_nullity=big_null, both_trivial=small_null == 0 and big_null == 0)
    if (small_null == 0) != (big_null == 0):
        rep.fail(f"triviality differs: inner {small_null}, outer {big_null}")
    return rep


# -- the a = 0, d = 1/2 chain -----------------------------------------------------


def special_case_stages(cfg):
    """The five-step elimination chain for a = 0 and d_l' = 1/2."""
    special = [lp for lp, d in enumerate(cfg.d_list) if d == HALF]
    ks = list(cfg.ks())

    def pick(fam, pred):
        return [(fam, k, l, lp) for k in ks if pred(k) for l in range(cfg.R) for lp in special]

    return [
        ("mu_k=0 for k>=0", ("3.5",), pick("mu", lambda k: k >= 0)),
        ("lambda_k=0 for k<=0", ("3.8",), pick("lambda", lambda k: k <= 0)),
        ("mu_-1=0", CLASSICAL, pick("mu", lambda k: k == -1)),
        ("mu_k=0 for k<0", ("3.5",), pick("mu", lambda k: k < 0)),
        ("lambda_k=0 for k>0", ("3.8",), pick("lambda", lambda k: k > 0)),
    ]


def _forced_zero(sys_, families, extra_zero, targets):
    index = {k: i for i, k in enumerate(sys_.unknowns)}
    rows = sys_.matrix_rows(families)
    rows += [{index[k]: ONE} for k in extra_zero]
    basis = _nullspace(rows, len(sys_.unknowns))
    cols = [index[k] for k in targets]
    return all(not vec[c] for vec in basis for c in cols)


def special_case_replay(cfg):
    """Replay the elimination chain stage by stage.

    ``derived``: the stage's own equation families, plus the zeros claimed by
    earlier stages, force its targets to vanish.  ``confirmed``: the targets
    vanish on the full default system.  The report passes when every stage is
    confirmed and the full nullspace is trivial.
    """
    if cfg.a != 0 or HALF not in cfg.d_list:
        raise ConfigError("the special case needs a = 0 and some d = 1/2")
    sys_ = assemble_constraints(cfg)
    full = nullspace(sys_)
    index = {k: i for i, k in enumerate(sys_.unknowns)}
    rep = Report("special_case", info={"config": cfg.to_json()})
    stages = []
    claimed = []
    for name, fams, targets in special_case_stages(cfg):
        derived = _forced_zero(sys_, fams, claimed, targets)
        confirmed = all(not vec[index[k]] for vec in full for k in targets)
        stages.append({"stage": name, "families": list(fams), "targets": len(targets), "derived": derived, "confirmed": confirmed})
        rep.checked += 1
        if not confirmed:
            rep.fail(name)
        claimed += targets
    rep.checked += 1
    if full:
        rep.fail(f"nullity {len(full)}")
    rep.info.update(stages=stages, nullity=len(full))
    return rep
