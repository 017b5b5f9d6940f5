"""The D(S3) anyon model: fusion rules, F/R symbols, modular data and checks.

The model is keyed by labels throughout.  ``f_symbol(a, b, c, d, n, m)`` is
the ``(n, m)`` entry of the F-matrix ``F^{abc}_d``, where ``m`` is the
intermediate charge of the left tree ``(a b)_m c`` and ``n`` the intermediate
charge of the right tree ``a (b c)_n``:

    |((a b)_m c)_d>  =  sum_n  F^{abc}_{d; n m} |(a (b c)_n)_d>

Rows and columns of an F-matrix are sorted in the basis order
``A, B, G, D, E, F, C, H``.  ``r_symbol(a, b, c)`` is the phase picked up when
the pair ``(a, b)`` with total charge ``c`` is exchanged.

The consistency checks (pentagon, hexagon, unitarity, Verlinde, modular) all
return a :class:`ConsistencyReport` whose ``violations`` list is empty when the
data passes.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import _ds3_data
from .exact_arith import (
    I,
    OMEGA,
    ONE,
    SQRT2,
    SQRT3,
    ZERO,
    Cyclotomic,
    as_cyclotomic,
    mat_adjoint,
    mat_identity,
    mat_mul,
    parse,
)

__all__ = [
    "LABELS",
    "BASIS_ORDER",
    "InadmissibleError",
    "AnyonModel",
    "ConsistencyReport",
    "ds3_model",
    "trivial_model",
    "verify_pentagon",
    "verify_hexagon",
    "verify_unitarity",
    "verify_verlinde",
    "verify_modular",
    "verify_fusion_associativity",
    "verify_qdims",
    "model_to_dict",
    "model_from_dict",
    "model_to_json",
    "model_from_json",
]

LABELS = "ABCDEFGH"
BASIS_ORDER = "ABGDEFCH"

_FUSION_TEXT = {
    "AA": "A", "AB": "B", "AC": "C", "AD": "D", "AE": "E", "AF": "F", "AG": "G", "AH": "H",
    "BB": "A", "BC": "C", "BD": "E", "BE": "D", "BF": "F", "BG": "G", "BH": "H",
    "CC": "ABC", "CD": "DE", "CE": "DE", "CF": "GH", "CG": "FH", "CH": "FG",
    "DD": "ACFGH", "DE": "BCFGH", "DF": "DE", "DG": "DE", "DH": "DE",
    "EE": "ACFGH", "EF": "DE", "EG": "DE", "EH": "DE",
    "FF": "ABF", "FG": "HC", "FH": "GC",
    "GG": "ABG", "GH": "FC",
    "HH": "ABH",
}

_QDIM = dict(zip(LABELS, (1, 1, 2, 3, 3, 2, 2, 2)))

_T_DIAG = (ONE, ONE, ONE, -ONE, ONE, ONE, OMEGA, OMEGA * OMEGA)

_S_NUM = (
    (1, 1, 2, 3, 3, 2, 2, 2),
    (1, 1, 2, -3, -3, 2, 2, 2),
    (2, 2, 4, 0, 0, -2, -2, -2),
    (3, -3, 0, 3, -3, 0, 0, 0),
    (3, -3, 0, -3, 3, 0, 0, 0),
    (2, 2, -2, 0, 0, 4, -2, -2),
    (2, 2, -2, 0, 0, -2, -2, 4),
    (2, 2, -2, 0, 0, -2, 4, -2),
)


class InadmissibleError(ValueError):
    """Raised when an F or R symbol is requested for an inadmissible tuple."""


@dataclass
class ConsistencyReport:
    """Outcome of one consistency sweep.

    Attributes
    ----------
    name : str
        Which check produced the report.
    checked : int
        Number of scalar equations evaluated.
    violations : list of dict
        One record per failed equation with keys ``indices``, ``lhs``, ``rhs``.
    """

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, indices, lhs, rhs) -> None:
        self.violations.append({"indices": indices, "lhs": str(lhs), "rhs": str(rhs)})

    def to_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked, "pass": self.ok, "violations": self.violations}


@dataclass(frozen=True, eq=False)
class AnyonModel:
    """A multiplicity-free braided fusion category given by explicit data.

    Attributes
    ----------
    labels : str
        Label alphabet in S/T row order.
    basis_order : str
        Order used for rows and columns of F-matrices and for fusion-tree
        bases.
    fusion : dict
        ``(a, b) -> tuple`` of outcomes sorted by ``basis_order``.
    qdim : dict
        Quantum dimension per label.
    F : dict
        ``(a, b, c, d, n, m) -> Cyclotomic`` for every admissible tuple.
    R : dict
        ``(a, b, c) -> Cyclotomic`` for every admissible triple.
    S, T : tuple or None
        Modular data in ``labels`` order (``T`` is the diagonal).
    unit : str
        The vacuum label.
    """

    labels: str
    basis_order: str
    fusion: Mapping
    qdim: Mapping
    F: Mapping
    R: Mapping
    S: tuple | None = None
    T: tuple | None = None
    unit: str = "A"

    # ------------------------------------------------------------------
    def rank(self, x: str) -> int:
        return self.basis_order.index(x)

    def fuse(self, a: str, b: str) -> tuple:
        """Fusion outcomes of ``a x b`` in basis order."""
        return self.fusion[(a, b)]

    def admissible(self, a: str, b: str, c: str) -> bool:
        return c in self.fusion[(a, b)]

    def left_channels(self, a: str, b: str, c: str, d: str) -> tuple:
        """Intermediate charges ``m`` of ``((a b)_m c)_d``."""
        return tuple(m for m in self.fuse(a, b) if self.admissible(m, c, d))

    def right_channels(self, a: str, b: str, c: str, d: str) -> tuple:
        """Intermediate charges ``n`` of ``(a (b c)_n)_d``."""
        return tuple(n for n in self.fuse(b, c) if self.admissible(a, n, d))

    def f_symbol(self, a: str, b: str, c: str, d: str, n: str, m: str) -> Cyclotomic:
        """Entry ``(n, m)`` of ``F^{abc}_d``.

        Raises
        ------
        InadmissibleError
            Naming the first vertex of either tree that is not allowed.
        """
        key = (a, b, c, d, n, m)
        try:
            return self.F[key]
        except KeyError:
            pass
        for (x, y, z, tree) in ((a, b, m, "left"), (m, c, d, "left"), (b, c, n, "right"), (a, n, d, "right")):
            if z not in self.fusion.get((x, y), ()):
                raise InadmissibleError(f"F^{{{a}{b}{c}}}_{{{d};{n}{m}}}: vertex {x}x{y}->{z} of the {tree} tree is not admissible")
        raise InadmissibleError(f"F^{{{a}{b}{c}}}_{{{d};{n}{m}}} not in table")

    def f_matrix(self, a: str, b: str, c: str, d: str) -> tuple:
        """The F-matrix with its row (``n``) and column (``m``) labels.

        Returns
        -------
        rows : tuple of str
        cols : tuple of str
        matrix : list of list of Cyclotomic
        """
        rows = self.right_channels(a, b, c, d)
        cols = self.left_channels(a, b, c, d)
        return rows, cols, [[self.F[(a, b, c, d, n, m)] for m in cols] for n in rows]

    def r_symbol(self, a: str, b: str, c: str) -> Cyclotomic:
        try:
            return self.R[(a, b, c)]
        except KeyError:
            raise InadmissibleError(f"R^{{{a}{b}}}_{{{c}}}: {c} is not in {a}x{b}") from None

    def fusion_matrix(self, m: str) -> list:
        """``N_m[x][y] = N_{x m}^y`` indexed in basis order."""
        order = self.basis_order
        return [[1 if self.admissible(x, m, y) else 0 for y in order] for x in order]

    # ------------------------------------------------------------------
    def with_f(self, key: tuple, value) -> "AnyonModel":
        """Copy of the model with one F entry replaced (for sabotage tests)."""
        if key not in self.F:
            raise InadmissibleError(f"F key {key} is not admissible")
        F = dict(self.F)
        F[key] = as_cyclotomic(value)
        return replace(self, F=F)

    def with_r(self, key: tuple, value) -> "AnyonModel":
        if key not in self.R:
            raise InadmissibleError(f"R key {key} is not admissible")
        R = dict(self.R)
        R[key] = as_cyclotomic(value)
        return replace(self, R=R)

    def fingerprint(self) -> str:
        """SHA-256 of the canonical JSON serialization."""
        return hashlib.sha256(model_to_json(self).encode()).hexdigest()


# ----------------------------------------------------------------------
# construction

def _parse_entry(tok: str) -> Cyclotomic:
    sign = -1 if tok.startswith("-") else 1
    tok = tok.lstrip("-")
    if tok == "sqrt2":
        v = SQRT2
    elif tok == "sqrt3":
        v = SQRT3
    else:
        v = Cyclotomic(int(tok))
    return v if sign > 0 else -v


def _parse_prefactor(tok: str) -> Cyclotomic:
    if tok == "1":
        return ONE
    num, den = tok.split("/")
    return _parse_entry(num) / _parse_entry(den)


_R_WORDS = {
    "1": ONE,
    "-1": -ONE,
    "i": I,
    "-i": -I,
    "w": OMEGA,
    "-w": -OMEGA,
    "w^2": OMEGA * OMEGA,
    "-w^2": -(OMEGA * OMEGA),
    "wi": OMEGA * I,
    "-wi": -(OMEGA * I),
    "w^2i": OMEGA * OMEGA * I,
    "-w^2i": -(OMEGA * OMEGA * I),
}


def _fusion_table(order: str) -> dict:
    table = {}
    for key, out in _FUSION_TEXT.items():
        a, b = key
        outs = tuple(sorted(out, key=order.index))
        table[(a, b)] = outs
        table[(b, a)] = outs
    return table


def _admissible_f_keys(fusion: Mapping, labels: Iterable[str]) -> Iterable[tuple]:
    labels = list(labels)
    for a, b, c, d in itertools.product(labels, repeat=4):
        ms = [m for m in fusion[(a, b)] if d in fusion[(m, c)]]
        if not ms:
            continue
        ns = [n for n in fusion[(b, c)] if d in fusion[(a, n)]]
        yield (a, b, c, d, ns, ms)


def build_model(
    labels: str,
    basis_order: str,
    fusion: Mapping,
    qdim: Mapping,
    f_explicit: Mapping,
    r_explicit: Mapping,
    S=None,
    T=None,
    unit: str = "A",
) -> AnyonModel:
    """Materialize a model, filling every admissible omitted symbol with 1.

    ``f_explicit`` maps ``(a, b, c, d)`` to a full matrix (rows ``n``, columns
    ``m`` in basis order); ``r_explicit`` maps ``(a, b, c)`` to a value.

    Raises
    ------
    ValueError
        If an explicit block has the wrong shape, names an inadmissible key,
        or a block larger than 1x1 is missing.
    """
    F: dict = {}
    seen = set()
    for a, b, c, d, ns, ms in _admissible_f_keys(fusion, labels):
        if len(ns) != len(ms):
            raise ValueError(f"F^{{{a}{b}{c}}}_{d}: {len(ns)} right vs {len(ms)} left channels")
        block = f_explicit.get((a, b, c, d))
        if block is None:
            if len(ns) != 1:
                raise ValueError(f"F^{{{a}{b}{c}}}_{d} is {len(ns)}x{len(ns)} but has no explicit data")
            block = [[ONE]]
        else:
            seen.add((a, b, c, d))
        if len(block) != len(ns) or any(len(r) != len(ms) for r in block):
            raise ValueError(f"F^{{{a}{b}{c}}}_{d}: expected {len(ns)}x{len(ms)} block")
        for i, n in enumerate(ns):
            for j, m in enumerate(ms):
                F[(a, b, c, d, n, m)] = as_cyclotomic(block[i][j])
    extra = set(f_explicit) - seen
    if extra:
        raise ValueError(f"explicit F data for inadmissible blocks: {sorted(extra)}")
    R: dict = {}
    for a, b in itertools.product(labels, repeat=2):
        for c in fusion[(a, b)]:
            R[(a, b, c)] = as_cyclotomic(r_explicit.get((a, b, c), ONE))
    extra_r = set(r_explicit) - set(R)
    if extra_r:
        raise ValueError(f"explicit R data for inadmissible triples: {sorted(extra_r)}")
    return AnyonModel(labels, basis_order, dict(fusion), dict(qdim), F, R, S, T, unit)


def _ds3_explicit() -> tuple:
    f_explicit: dict = {}

    def put(key, block):
        abc, d = key.split(";")
        k = (abc[0], abc[1], abc[2], d)
        if k in f_explicit and f_explicit[k] != block:
            raise ValueError(f"conflicting data for F^{{{abc}}}_{d}")
        f_explicit[k] = block

    for key in _ds3_data.F_MINUS_ONE.split():
        put(key, [[-ONE]])
    for pref, entries, keys in _ds3_data.F_MATRICES:
        p = _parse_prefactor(pref)
        block = [[p * _parse_entry(e) for e in row] for row in entries]
        for key in keys.split():
            put(key, block)
    r_explicit: dict = {}
    for word, keys in _ds3_data.R_VALUES.items():
        v = _R_WORDS[word]
        for key in keys.split():
            k = tuple(key)
            if k in r_explicit and r_explicit[k] != v:
                raise ValueError(f"conflicting data for R^{{{key[:2]}}}_{key[2]}")
            r_explicit[k] = v
    return f_explicit, r_explicit


@lru_cache(maxsize=1)
def ds3_model() -> AnyonModel:
    """The D(S3) model with omega = exp(2 pi i / 3)."""
    f_explicit, r_explicit = _ds3_explicit()
    sixth = Cyclotomic(Fraction(1, 6))
    S = tuple(tuple(sixth * v for v in row) for row in _S_NUM)
    return build_model(
        LABELS,
        BASIS_ORDER,
        _fusion_table(BASIS_ORDER),
        {k: Fraction(v) for k, v in _QDIM.items()},
        f_explicit,
        r_explicit,
        S=S,
        T=_T_DIAG,
    )


def trivial_model() -> AnyonModel:
    """The one-label model (vacuum only)."""
    return build_model("A", "A", {("A", "A"): ("A",)}, {"A": Fraction(1)}, {}, {}, S=((ONE,),), T=(ONE,))


# ----------------------------------------------------------------------
# consistency checks

def verify_fusion_associativity(model: AnyonModel) -> ConsistencyReport:
    rep = ConsistencyReport("fusion_associativity")
    L = model.labels
    for a, b, c, d in itertools.product(L, repeat=4):
        lhs = sum(1 for e in model.fuse(a, b) if model.admissible(e, c, d))
        rhs = sum(1 for f in model.fuse(b, c) if model.admissible(a, f, d))
        rep.checked += 1
        if lhs != rhs:
            rep.add((a, b, c, d), lhs, rhs)
    return rep


def verify_qdims(model: AnyonModel) -> ConsistencyReport:
    rep = ConsistencyReport("qdim")
    for a, b in itertools.product(model.labels, repeat=2):
        lhs = model.qdim[a] * model.qdim[b]
        rhs = sum(model.qdim[c] for c in model.fuse(a, b))
        rep.checked += 1
        if lhs != rhs:
            rep.add((a, b), lhs, rhs)
    return rep


def verify_pentagon(model: AnyonModel) -> ConsistencyReport:
    """Check the pentagon equation on every admissible 5-leg configuration.

    With ``F(a,b,c,d; m -> n)`` the coefficient of ``a (b c)_n`` in
    ``(a b)_m c``, two routes from ``(((a b)_f c)_g d)_e`` to
    ``(a (b (c d)_l)_k)_e`` must agree:

        F(f,c,d,e; g->l) F(a,b,l,e; f->k)
            = sum_h F(a,b,c,g; f->h) F(a,h,d,e; g->k) F(b,c,d,k; h->l)
    """
    rep = ConsistencyReport("pentagon")
    L = model.basis_order
    F = model.F
    fuse = model.fuse
    for a, b, c, d in itertools.product(L, repeat=4):
        for f in fuse(a, b):
            for g in fuse(f, c):
                for e in fuse(g, d):
                    for l in fuse(c, d):
                        for k in fuse(b, l):
                            if e not in fuse(a, k):
                                continue
                            lhs = F.get((f, c, d, e, l, g), ZERO) * F.get((a, b, l, e, k, f), ZERO)
                            rhs = ZERO
                            for h in fuse(b, c):
                                x = F.get((a, b, c, g, h, f))
                                y = F.get((a, h, d, e, k, g))
                                z = F.get((b, c, d, k, l, h))
                                if x is not None and y is not None and z is not None:
                                    rhs = rhs + x * y * z
                            rep.checked += 1
                            if lhs != rhs:
                                rep.add((a, b, c, d, e, f, g, k, l), lhs, rhs)
    return rep


def verify_hexagon(model: AnyonModel) -> ConsistencyReport:
    """Check both hexagon equations (braiding ``R`` and its inverse).

        R(c,a;e) F(a,c,b,d; e->g) R(c,b;g)
            = sum_f F(c,a,b,d; e->f) R(c,f;d) F(a,b,c,d; f->g)

    and the same identity with every R replaced by the conjugate of the
    reversed symbol, ``R(x,y;z) -> conj(R(y,x;z))``.
    """
    rep = ConsistencyReport("hexagon")
    L = model.basis_order
    F, R = model.F, model.R
    fuse = model.fuse
    Rinv = {(x, y, z): R[(y, x, z)].conjugate() for (x, y, z) in R}
    for a, b, c in itertools.product(L, repeat=3):
        for e in fuse(a, c):
            for g in fuse(c, b):
                for d in fuse(a, g):
                    if d not in fuse(e, b):
                        continue
                    fs = [f for f in fuse(a, b) if d in fuse(c, f)]
                    for tag, RR in (("R", R), ("Rinv", Rinv)):
                        lhs = RR[(c, a, e)] * F[(a, c, b, d, g, e)] * RR[(c, b, g)]
                        rhs = ZERO
                        for f in fs:
                            rhs = rhs + F[(c, a, b, d, f, e)] * RR[(c, f, d)] * F[(a, b, c, d, g, f)]
                        rep.checked += 1
                        if lhs != rhs:
                            rep.add((tag, a, b, c, d, e, g), lhs, rhs)
    return rep


def verify_unitarity(model: AnyonModel) -> ConsistencyReport:
    """``F^dagger F = I`` for every admissible block; ``|R| = 1``."""
    rep = ConsistencyReport("unitarity")
    L = model.basis_order
    for a, b, c, d in itertools.product(L, repeat=4):
        cols = model.left_channels(a, b, c, d)
        if not cols:
            continue
        _, _, M = model.f_matrix(a, b, c, d)
        P = mat_mul(mat_adjoint(M), M)
        rep.checked += 1
        if P != mat_identity(len(cols)):
            rep.add((a, b, c, d), [[str(x) for x in r] for r in P], "identity")
    for key, v in model.R.items():
        rep.checked += 1
        if v.norm_squared() != 1:
            rep.add(("R",) + key, v.norm_squared(), 1)
    return rep


def verify_verlinde(model: AnyonModel) -> ConsistencyReport:
    """Recover ``N_ab^c`` from ``S`` for every triple of labels."""
    rep = ConsistencyReport("verlinde")
    L = model.labels
    S = model.S
    unit = L.index(model.unit)
    inv_unit_row = [S[unit][x].inverse() for x in range(len(L))]
    for ia, a in enumerate(L):
        for ib, b in enumerate(L):
            for ic, c in enumerate(L):
                total = ZERO
                for x in range(len(L)):
                    total = total + S[ia][x] * S[ib][x] * S[ic][x].conjugate() * inv_unit_row[x]
                expected = 1 if model.admissible(a, b, c) else 0
                rep.checked += 1
                if total != expected:
                    rep.add((a, b, c), total, expected)
    return rep


def verify_modular(model: AnyonModel) -> ConsistencyReport:
    """``S = S^T``, ``S^dagger S = I``, ``S^2 = I`` and ``(S T)^3 = S^2``."""
    rep = ConsistencyReport("modular")
    S = [list(r) for r in model.S]
    n = len(S)
    ident = mat_identity(n)
    T = [[model.T[i] if i == j else ZERO for j in range(n)] for i in range(n)]
    S2 = mat_mul(S, S)
    ST = mat_mul(S, T)
    ST3 = mat_mul(mat_mul(ST, ST), ST)
    checks = {
        "symmetric": ([list(r) for r in zip(*S)], S),
        "unitary": (mat_mul(mat_adjoint(S), S), ident),
        "S^2=I": (S2, ident),
        "(ST)^3=S^2": (ST3, S2),
    }
    for name, (lhs, rhs) in checks.items():
        rep.checked += 1
        if lhs != rhs:
            rep.add(name, "mismatch", "")
    for i, t in enumerate(model.T):
        rep.checked += 1
        if t.norm_squared() != 1 or t ** 72 != 1:
            rep.add(("T", i), t, "root of unity")
    return rep


# ----------------------------------------------------------------------
# JSON form

def model_to_dict(model: AnyonModel) -> dict:
    d = {
        "labels": model.labels,
        "basis_order": model.basis_order,
        "unit": model.unit,
        "qdim": {k: str(v) for k, v in model.qdim.items()},
        "fusion": sorted([a, b, c] for (a, b), outs in model.fusion.items() for c in outs),
        "F": [{"key": ",".join(k), "value": v.serialize()} for k, v in sorted(model.F.items())],
        "R": [{"key": ",".join(k), "value": v.serialize()} for k, v in sorted(model.R.items())],
    }
    if model.S is not None:
        d["S"] = [[x.serialize() for x in row] for row in model.S]
        d["T"] = [x.serialize() for x in model.T]
    return d


def model_from_dict(d: Mapping) -> AnyonModel:
    labels = d["labels"]
    order = d.get("basis_order", labels)
    fusion: dict = {(a, b): [] for a in labels for b in labels}
    for a, b, c in d["fusion"]:
        fusion[(a, b)].append(c)
    fusion = {k: tuple(sorted(v, key=order.index)) for k, v in fusion.items()}
    F = {tuple(r["key"].split(",")): parse(r["value"]) for r in d["F"]}
    R = {tuple(r["key"].split(",")): parse(r["value"]) for r in d["R"]}
    S = tuple(tuple(parse(x) for x in row) for row in d["S"]) if "S" in d else None
    T = tuple(parse(x) for x in d["T"]) if "T" in d else None
    return AnyonModel(labels, order, fusion, {k: Fraction(v) for k, v in d["qdim"].items()}, F, R, S, T, d.get("unit", "A"))


def model_to_json(model: AnyonModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":"))


def model_from_json(text: str) -> AnyonModel:
    return model_from_dict(json.loads(text))
