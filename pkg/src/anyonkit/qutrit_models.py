"""Qutrit encodings in ``V_G^{DDDD}`` and the gates obtained by braiding.

Three encodings live in the nine-dimensional space of four ``D`` anyons with
total charge ``G`` (paired shape, internal labels ``|xy>``):

* ``U``: ``|GG>, |AG>, |GA>``
* ``V``: ``(|FC>+|CF>)/sqrt2, (|FH>+|CH>)/sqrt2, (|HF>+|HC>)/sqrt2``
* ``W``: ``(|FC>-|CF>)/sqrt2, (|CH>-|FH>)/sqrt2, (|HF>-|HC>)/sqrt2``

Two qutrits use eight anyons on the two-branch shape, each branch a paired
four-leaf tree.  Basis labels there read ``b1 x1 y1 b2 x2 y2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .anyon_model import AnyonModel, ds3_model
from .braid_engine import (
    BraidWord,
    RepMatrix,
    evaluate,
    printed_generators,
    sigma_operator,
)
from .exact_arith import (
    I,
    ONE,
    OMEGA,
    SQRT2,
    SQRT3,
    ZERO,
    Cyclotomic,
    Scalar,
    as_cyclotomic,
    mat_adjoint,
    mat_equal,
    mat_identity,
    mat_mul,
)
from .fusion_space import FusionBasis, SparseOp, StateVector, TreeShape, enumerate_basis, printed_basis

__all__ = [
    "Encoding",
    "encoding_basis",
    "ENCODING_LABELS",
    "sector_generators",
    "reference_gates",
    "braid_gates",
    "phase_relation",
    "kron",
    "TwoQutritSpace",
    "two_qutrit_space",
    "crlz",
    "CRLZ_WORD",
    "sum_from_crlz",
    "leakage_check",
    "BraidCircuit",
    "restrict",
    "GATE_CHECKS",
    "gate_report",
]

W_ = OMEGA
W2_ = OMEGA * OMEGA
_R2 = SQRT2 / 2

ENCODING_LABELS = {
    "U": ({"GG": 1}, {"AG": 1}, {"GA": 1}),
    "V": ({"FC": _R2, "CF": _R2}, {"FH": _R2, "CH": _R2}, {"HF": _R2, "HC": _R2}),
    "W": ({"FC": _R2, "CF": -_R2}, {"CH": _R2, "FH": -_R2}, {"HF": _R2, "HC": -_R2}),
}

# per-generator scalar of the reference listing for (D, G): printed = -raw
_DG_PHASE = -ONE


@dataclass(frozen=True)
class Encoding:
    """Three orthonormal vectors spanning one qutrit inside ``V_G^{DDDD}``."""

    name: str
    states: tuple

    @property
    def basis(self) -> FusionBasis:
        return self.states[0].basis

    def coords(self) -> list:
        return [list(s.amps) for s in self.states]

    def __getitem__(self, i: int) -> StateVector:
        return self.states[i]


def encoding_basis(name: str, model: AnyonModel | None = None) -> Encoding:
    """The computational basis ``|0>, |1>, |2>`` of the ``U``, ``V`` or ``W`` model."""
    if name not in ENCODING_LABELS:
        raise KeyError(f"unknown encoding {name!r}; expected U, V or W")
    basis = printed_basis("D", "G", model=model)
    states = tuple(StateVector.from_labels(basis, terms) for terms in ENCODING_LABELS[name])
    return Encoding(name, states)


def _dg_generators(model: AnyonModel | None = None) -> list:
    return [g.scaled(_DG_PHASE) for g in printed_generators("D", "G", model)]


def sector_generators(name: str, model: AnyonModel | None = None) -> list:
    """``sigma_1..3`` restricted to ``U``, ``V``, ``W`` or ``UV`` (= U then V)."""
    gens = _dg_generators(model)
    if name == "UV":
        vecs = encoding_basis("U", model).coords() + encoding_basis("V", model).coords()
    else:
        vecs = encoding_basis(name, model).coords()
    return [g.restricted(vecs) for g in gens]


# ----------------------------------------------------------------------
# reference gates

def kron(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list:
    """Kronecker product of nested-list matrices."""
    a = [[as_cyclotomic(x) for x in r] for r in a]
    b = [[as_cyclotomic(x) for x in r] for r in b]
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _diag(xs) -> list:
    n = len(xs)
    return [[as_cyclotomic(xs[i]) if i == j else ZERO for j in range(n)] for i in range(n)]


def _perm(images: Sequence[int]) -> list:
    """Matrix sending ``|j>`` to ``|images[j]>``."""
    n = len(images)
    return [[ONE if images[j] == i else ZERO for j in range(n)] for i in range(n)]


def reference_gates() -> dict:
    """Standard qutrit gates as exact nested lists.

    Keys: ``h``, ``h_inv``, ``Z``, ``P`` (phase gate, ``|i> -> w^{(i^2-i)/2}|i>``),
    ``FLIP2``, ``X`` (``|i> -> |i+1>``), ``SWAP01``, ``SWAP02``, ``SWAP12``,
    ``CZ`` (``|i,j> -> w^{ij}|i,j>``) and ``SUM`` (``|i,j> -> |i,i+j>``).
    """
    inv3 = SQRT3 / 3
    h = [[inv3 * (W_ ** ((i * j) % 3)) for j in range(3)] for i in range(3)]
    return {
        "h": h,
        "h_inv": mat_adjoint(h),
        "Z": _diag([W_ ** i for i in range(3)]),
        "P": _diag([W_ ** ((i * i - i) // 2) for i in range(3)]),
        "FLIP2": _diag([1, 1, -1]),
        "X": _perm([1, 2, 0]),
        "SWAP01": _perm([1, 0, 2]),
        "SWAP02": _perm([2, 1, 0]),
        "SWAP12": _perm([0, 2, 1]),
        "CZ": _diag([W_ ** ((i * j) % 3) for i in range(3) for j in range(3)]),
        "SUM": _perm([3 * i + (i + j) % 3 for i in range(3) for j in range(3)]),
    }


def phase_relation(a, b):
    """The scalar ``c`` with ``a == c * b`` exactly, or ``None``."""
    a = [[as_cyclotomic(x) for x in r] for r in getattr(a, "rows", a)]
    b = [[as_cyclotomic(x) for x in r] for r in getattr(b, "rows", b)]
    c = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if y:
                c = x / y
                break
        if c is not None:
            break
    if c is None:
        return ONE if all(x.is_zero() for r in a for x in r) else None
    ok = all(x == c * y for ra, rb in zip(a, b) for x, y in zip(ra, rb))
    return c if ok else None


def braid_gates(name: str, model: AnyonModel | None = None) -> dict:
    """``p = s1 s2 s1``, ``q = s3 s2 s3``, their squares, ``p^2 q^2 p^2`` and ``h' = q^2 p q^2``.

    ``name`` is ``"UV"`` (six-dimensional) or one of ``"U"``, ``"V"``, ``"W"``.
    ``U`` and ``V`` alone are not invariant under ``sigma_2``; for them the
    gates are the diagonal blocks of the ``UV`` versions, which is exact for
    ``p^2``, ``q^2`` and ``p^2 q^2 p^2``.
    """
    space = "W" if name == "W" else "UV"
    gens = sector_generators(space, model)
    p = evaluate([1, 2, 1], gens)
    q = evaluate([3, 2, 3], gens)
    p2, q2 = p @ p, q @ q
    out = {"p": p, "q": q, "p2": p2, "q2": q2, "p2q2p2": p2 @ q2 @ p2, "h_prime": q2 @ p @ q2}
    if name in ("U", "V"):
        off = 0 if name == "U" else 3
        out = {k: RepMatrix(tuple(tuple(m.rows[off + i][off + j] for j in range(3)) for i in range(3))) for k, m in out.items()}
    return out


# ----------------------------------------------------------------------
# two qutrits on eight anyons

class BraidCircuit:
    """A braid word acting on an eight-leaf fusion space.

    The word is read as a matrix product, so its rightmost letter acts
    first.  Columns are computed on demand by applying generators to basis
    vectors; :meth:`matrix` builds the full sparse operator.
    """

    def __init__(self, space: "TwoQutritSpace", word: Sequence[int], name: str = ""):
        self.space = space
        self.word = BraidWord(tuple(word), space.basis.shape.n_leaves)
        self.name = name

    def apply(self, state: StateVector) -> StateVector:
        for x in reversed(self.word.letters):
            state = self.space.generator(x).apply(state)
        return state

    __call__ = apply

    def column(self, j: int) -> StateVector:
        return self.apply(StateVector.basis_state(self.space.basis, j))

    @lru_cache(maxsize=None)
    def matrix(self) -> SparseOp:
        cols = [self.column(j).support() for j in range(len(self.space.basis))]
        return SparseOp(self.space.basis, self.space.basis, cols)

    def __repr__(self) -> str:
        return f"BraidCircuit({self.name or self.word})"


class TwoQutritSpace:
    """Eight ``D`` anyons on the two-branch shape with total charge ``G``.

    Generators carry the same per-crossing scalar as the single-qutrit
    reference listing, so restricted gates compare directly.
    """

    def __init__(self, model: AnyonModel | None = None, total: str = "G"):
        self.model = model or ds3_model()
        self.basis = enumerate_basis("D", total, TreeShape.two_branch(), self.model)
        self._gens: dict = {}

    def generator(self, x: int) -> SparseOp:
        """Sparse ``sigma_|x|`` (inverse for negative ``x``)."""
        op = self._gens.get(x)
        if op is None:
            if x > 0:
                op = sigma_operator(self.basis, x).scaled(_DG_PHASE)
            else:
                op = self.generator(-x).adjoint()
            self._gens[x] = op
        return op

    def generators(self) -> list:
        return [self.generator(i) for i in range(1, self.basis.shape.n_leaves)]

    def state(self, first: Mapping[str, Scalar] | str, second: Mapping[str, Scalar] | str, b1: str = "G", b2: str = "G") -> StateVector:
        """Product state ``|first>|second>`` with branch charges ``b1``, ``b2``.

        ``first`` and ``second`` map ``"xy"`` labels to amplitudes (a plain
        string means amplitude 1).
        """
        f = {first: 1} if isinstance(first, str) else dict(first)
        s = {second: 1} if isinstance(second, str) else dict(second)
        terms = {}
        for a, ca in f.items():
            for b, cb in s.items():
                terms[b1 + a + b2 + b] = as_cyclotomic(ca) * as_cyclotomic(cb)
        return StateVector.from_labels(self.basis, terms)

    def encoded(self, name: str, i: int, j: int, second: str | None = None) -> StateVector:
        """``|i>_name |j>_second`` in the ``(G, G)`` branch block."""
        return self.state(ENCODING_LABELS[name][i], ENCODING_LABELS[second or name][j])

    def block(self, name: str, second: str | None = None) -> list:
        return [self.encoded(name, i, j, second) for i in range(3) for j in range(3)]

    def circuit(self, word: Sequence[int], name: str = "") -> BraidCircuit:
        return BraidCircuit(self, word, name)


@lru_cache(maxsize=4)
def two_qutrit_space(model: AnyonModel | None = None) -> TwoQutritSpace:
    return TwoQutritSpace(model)


def _inv(word: Sequence[int]) -> list:
    return [-x for x in reversed(word)]


_S1 = [2, 1, 3, 2]
_S2 = [4, 3, 5, 4]
_S3 = [6, 5, 7, 6]
CRLZ_WORD = tuple(_inv(_S1) + _S2 + _S2 + _S1 + _inv(_S3) + _S2 + _S2 + _S3)


def crlz(space: TwoQutritSpace | None = None) -> BraidCircuit:
    """``s1^-1 s2^2 s1 s3^-1 s2^2 s3`` where ``s_k`` exchanges two anyon pairs."""
    space = space or two_qutrit_space()
    return space.circuit(CRLZ_WORD, "CrlZ")


def restrict(circuit: BraidCircuit, block: Sequence[StateVector]) -> list:
    """Matrix ``<b_i| C |b_j>`` on an orthonormal block."""
    images = [circuit.apply(b) for b in block]
    return [[b.inner(img) for img in images] for b in block]


def leakage_check(gate, block: Sequence[StateVector]) -> Cyclotomic:
    """Largest squared norm leaving ``span(block)`` over the block vectors.

    ``gate`` is anything with an ``apply`` method (SparseOp, BraidCircuit).
    """
    worst = ZERO
    worst_c = 0.0
    for b in block:
        img = gate.apply(b)
        inside = ZERO
        for u in block:
            c = u.inner(img)
            if c:
                inside = inside + c * c.conjugate()
        out = img.norm_squared() - inside
        if complex(out).real > worst_c or (worst.is_zero() and not out.is_zero()):
            worst, worst_c = out, complex(out).real
    return worst


def sum_from_crlz(cz: Sequence[Sequence[Scalar]]) -> list:
    """``(Id x h) cz^-1 (Id x h^-1)`` for a two-qutrit ``cz``."""
    g = reference_gates()
    eye = mat_identity(3)
    return mat_mul(mat_mul(kron(eye, g["h"]), mat_adjoint([[as_cyclotomic(x) for x in r] for r in cz])), kron(eye, g["h_inv"]))


# ----------------------------------------------------------------------
# reports

GATE_CHECKS = ("pq", "hprime", "crlz", "sum", "w-gates")


def _phase_entry(name: str, got, want) -> dict:
    c = phase_relation(got, want)
    return {"gate": name, "phase": None if c is None else str(c), "pass": c is not None}


def _block(*rows) -> list:
    out = []
    for blocks in rows:
        for i in range(3):
            out.append([x for b in blocks for x in b[i]])
    return out


def gate_report(check: str, model: AnyonModel | None = None) -> dict:
    """Exact comparison of braid-built gates with their targets.

    ``check`` is one of :data:`GATE_CHECKS`.  Every entry records the global
    phase ``c`` with ``built == c * target`` (``None`` if no such scalar).
    """
    g = reference_gates()
    h, hi = g["h"], g["h_inv"]
    entries = []
    if check == "pq":
        h2 = mat_mul(h, h)
        for name in ("U", "V"):
            entries.append(_phase_entry(f"p2q2p2 on {name} vs h^2", braid_gates(name, model)["p2q2p2"], h2))
        for name in ("U", "V", "W"):
            bg = braid_gates(name, model)
            for k in ("p2", "q2"):
                perm = all(sum(1 for x in r if x) == 1 for r in bg[k].rows)
                entries.append({"gate": f"{k} on {name}", "signed_permutation": perm, "pass": perm})
    elif check == "hprime":
        r3 = SQRT3 / 3
        scale = lambda m, c: [[c * x for x in r] for r in m]  # noqa: E731
        target = _block((scale(h, r3), scale(hi, r3 * SQRT2)), (scale(hi, r3 * SQRT2), scale(h, -r3)))
        entries.append(_phase_entry("h' on U+V vs block formula", braid_gates("UV", model)["h_prime"], target))
    elif check == "w-gates":
        bg = braid_gates("W", model)
        entries.append(_phase_entry("h' on W vs h", bg["h_prime"], h))
        s1, _, s3 = sector_generators("W", model)
        entries.append(_phase_entry("sigma_1 on W vs diag(1,1,w)", s1, _diag([1, 1, W_])))
        entries.append(_phase_entry("sigma_3 on W vs diag(1,w,1)", s3, _diag([1, W_, 1])))
        entries.append(_phase_entry("sigma_3 sigma_1^2 on W vs Z", s3 @ s1 @ s1, g["Z"]))
        entries.append(_phase_entry("sigma_1 on W vs phase gate P", s1, g["P"]))
    elif check == "sum":
        entries.append(_phase_entry("(Id x h) CZ^-1 (Id x h^-1) vs SUM", sum_from_crlz(g["CZ"]), g["SUM"]))
        space = two_qutrit_space(model)
        built = restrict(crlz(space), space.block("U"))
        entries.append(_phase_entry("(Id x h) CrlZ^-1 (Id x h^-1) vs SUM", sum_from_crlz(built), g["SUM"]))
    elif check == "crlz":
        space = two_qutrit_space(model)
        cz = crlz(space)
        blk = space.block("U")
        m = restrict(cz, blk)
        entry = _phase_entry("CrlZ on U x U vs CZ", m, g["CZ"])
        leak = leakage_check(cz, blk)
        entry["leakage"] = str(leak)
        entry["pass"] = entry["pass"] and leak.is_zero()
        entries.append(entry)
        names = space.basis.names()
        gg = [k for k, n in enumerate(names) if n[0] == "G" and n[3] == "G"]
        diag = all(set(cz.column(k).support()) <= {k} for k in gg)
        entries.append({"gate": f"CrlZ diagonal on the (G,G) branch block ({len(gg)} states)", "pass": diag})
    else:
        raise KeyError(f"unknown gate check {check!r}; expected one of {GATE_CHECKS}")
    return {"check": check, "entries": entries, "pass": all(e["pass"] for e in entries)}
