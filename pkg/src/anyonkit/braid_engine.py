"""Braid-group representations on fusion-tree spaces.

The elementary braid ``sigma_i`` exchanges strands ``i`` and ``i+1``
(1-based).  It is built by rotating the tree until the two leaves hang from
one vertex, multiplying each channel ``c`` by ``R^{ab}_c`` and rotating back.
The rotation path for each ``(shape, i)`` is computed once and cached.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .anyon_model import AnyonModel, ConsistencyReport, ds3_model
from .exact_arith import (
    ONE,
    ZERO,
    Cyclotomic,
    ExactMatrix,
    Scalar,
    as_cyclotomic,
    mat_det,
    nullspace,
    root_of_unity,
)
from .fusion_space import (
    FusionBasis,
    SparseOp,
    StateVector,
    TreeShape,
    _node_at,
    _tree_replace,
    enumerate_basis,
    printed_basis,
    rotation,
)

__all__ = [
    "BraidWord",
    "RepMatrix",
    "Sector",
    "sigma_matrix",
    "sigma_operator",
    "generators",
    "normalize_special",
    "evaluate",
    "verify_braid_relations",
    "verify_sector",
    "commutant_dimension",
    "RootNotInField",
    "adjacency_path",
    "special_scalar",
    "PRINTED_NORMALIZATION",
    "printed_generators",
    "PRINTED_SCALAR",
    "reference_generators",
    "common_scalar",
]


class RootNotInField(ArithmeticError):
    """A required root of unity does not lie in Q(zeta_72)."""


# ----------------------------------------------------------------------
# braid words

@dataclass(frozen=True)
class BraidWord:
    """A word in the braid generators.

    Parameters
    ----------
    letters : tuple of int
        ``i`` stands for ``sigma_i`` and ``-i`` for its inverse.
    n : int
        Number of strands.

    Notes
    -----
    Words read left to right as matrix products, so ``(1, 2)`` evaluates to
    ``M(sigma_1) @ M(sigma_2)``.
    """

    letters: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) > self.n - 1:
                raise IndexError(f"generator index {x} out of range for {self.n} strands")

    @classmethod
    def parse(cls, text: str, n: int) -> "BraidWord":
        """Parse ``"1 2 -1"`` or ``"s1 s2 s1^-1"`` style words."""
        out = []
        for tok in text.replace(",", " ").split():
            tok = tok.lstrip("s")
            if tok.endswith("^-1"):
                out.append(-int(tok[:-3]))
            else:
                out.append(int(tok))
        return cls(tuple(out), n)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(-x for x in reversed(self.letters)), self.n)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters, max(self.n, other.n))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)


# ----------------------------------------------------------------------
# representation matrices

@dataclass(frozen=True, eq=False)
class RepMatrix:
    """Exact square matrix acting on a fusion basis.

    Attributes
    ----------
    rows : tuple of tuple of Cyclotomic
    basis : FusionBasis or None
    norm : str
        ``"raw"`` or ``"det-normalized"``.
    """

    rows: tuple
    basis: object = None
    norm: str = "raw"

    def __post_init__(self):
        rows = tuple(tuple(as_cyclotomic(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("representation matrices must be square")
        if self.basis is not None and len(self.basis) != len(rows):
            raise ValueError("matrix size does not match basis dimension")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_op(cls, op: SparseOp, norm: str = "raw") -> "RepMatrix":
        if op.src != op.dst:
            raise ValueError("a representation matrix maps a basis to itself")
        return cls(tuple(tuple(r) for r in op.to_rows()), op.src, norm)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Cyclotomic:
        return self.rows[i][j]

    def to_exact(self) -> ExactMatrix:
        return ExactMatrix.from_rows(self.rows)

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        n = self.dim
        if other.dim != n:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return RepMatrix(tuple(out), self.basis, self.norm)

    def adjoint(self) -> "RepMatrix":
        n = self.dim
        return RepMatrix(tuple(tuple(self.rows[j][i].conjugate() for j in range(n)) for i in range(n)), self.basis, self.norm)

    def scaled(self, c: Scalar, norm: str | None = None) -> "RepMatrix":
        c = as_cyclotomic(c)
        return RepMatrix(tuple(tuple(c * x for x in r) for r in self.rows), self.basis, norm or self.norm)

    def det(self) -> Cyclotomic:
        return mat_det([list(r) for r in self.rows])

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == (ONE if i == j else ZERO) for i in range(self.dim) for j in range(self.dim))

    def is_unitary(self) -> bool:
        return (self.adjoint() @ self).is_identity()

    def restricted(self, vectors: Sequence[Sequence[Scalar]]) -> "RepMatrix":
        """Matrix on the span of orthonormal ``vectors`` (given as coordinate lists)."""
        vs = [[as_cyclotomic(x) for x in v] for v in vectors]
        out = []
        for u in vs:
            row = []
            for v in vs:
                mv = [sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.rows]
                row.append(sum((x.conjugate() * y for x, y in zip(u, mv) if x and y), ZERO))
            out.append(tuple(row))
        return RepMatrix(tuple(out), None, self.norm)

    def permuted(self, basis: FusionBasis) -> "RepMatrix":
        """Same operator written in another ordering of the same labelings."""
        if self.basis is None:
            raise ValueError("matrix has no basis to reorder")
        idx = [self.basis.index[t] for t in basis.trees]
        if sorted(idx) != list(range(self.dim)):
            raise ValueError("target basis is not a reordering")
        return RepMatrix(tuple(tuple(self.rows[i][j] for j in idx) for i in idx), basis, self.norm)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RepMatrix):
            return self.rows == other.rows
        if isinstance(other, (list, tuple)):
            try:
                return self.rows == tuple(tuple(as_cyclotomic(x) for x in r) for r in other)
            except TypeError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "basis": self.basis.names() if self.basis is not None else None,
            "rows": [[x.serialize() for x in r] for r in self.rows],
        }

    def __repr__(self) -> str:
        return f"RepMatrix(dim={self.dim}, norm={self.norm})"


# ----------------------------------------------------------------------
# sigma construction

def _lca(shape: TreeShape, p: int) -> str:
    """Path of the lowest node whose leaves include positions ``p`` and ``p+1``."""
    path = ""
    while True:
        node = shape.subtree(path)
        lo, hi = shape.leaf_range(path + "L")
        if lo <= p and p + 1 < hi:
            path += "L"
        elif p >= hi:
            path += "R"
        else:
            return path


@lru_cache(maxsize=512)
def adjacency_path(shape: TreeShape, i: int) -> tuple:
    """F-moves bringing strands ``i`` and ``i+1`` under a common vertex.

    Returns
    -------
    moves : tuple of (path, direction)
        Applied in order.
    vertex : str
        Address of the vertex whose children are the two leaves afterwards.
    """
    p = i - 1
    if not 0 <= p < shape.n_leaves - 1:
        raise IndexError(f"sigma_{i} needs at least {i + 1} strands")
    moves = []
    while True:
        v = _lca(shape, p)
        node = shape.subtree(v)
        if node[0] is None and node[1] is None:
            return tuple(moves), v
        if node[0] is not None:
            # leaf p is the rightmost leaf of the left child: lift it up
            if node[0][1] is not None:
                mv = (v + "L", "left")
            else:
                mv = (v, "right")
        else:
            # leaf p is the left child; leaf p+1 is leftmost in the right child
            if node[1][0] is not None:
                mv = (v + "R", "right")
            else:
                mv = (v, "left")
        moves.append(mv)
        shape = shape.rotated(*mv)


def _swap_leaves(basis: FusionBasis, p: int) -> FusionBasis:
    leaves = list(basis.leaves)
    leaves[p], leaves[p + 1] = leaves[p + 1], leaves[p]
    return enumerate_basis(tuple(leaves), basis.z, basis.shape, basis.model)


def _exchange(basis: FusionBasis, vertex: str, p: int, inverse: bool) -> SparseOp:
    dst = _swap_leaves(basis, p)
    model = basis.model
    cols = []
    for tree in basis.trees:
        c, a, b = _node_at(tree, vertex)
        r = model.r_symbol(a, b, c)
        if inverse:
            r = model.r_symbol(b, a, c).conjugate()
        new = _tree_replace(tree, vertex, (c, b, a))
        cols.append({dst.index[new]: r})
    return SparseOp(basis, dst, cols)


@lru_cache(maxsize=1024)
def _sigma_canonical(basis: FusionBasis, i: int, inverse: bool) -> SparseOp:
    moves, vertex = adjacency_path(basis.shape, i)
    forward = SparseOp.identity(basis)
    cur = basis
    for path, direction in moves:
        op = rotation(cur, path, direction)
        forward = op @ forward
        cur = op.dst
    op = _exchange(cur, vertex, i - 1, inverse) @ forward
    cur = op.dst
    back = {"left": "right", "right": "left"}
    for path, direction in reversed(moves):
        r = rotation(cur, path, back[direction])
        op = r @ op
        cur = r.dst
    return op


def sigma_operator(basis: FusionBasis, i: int, inverse: bool = False) -> SparseOp:
    """Sparse matrix of ``sigma_i`` (or its inverse) starting from ``basis``.

    When the two exchanged leaves differ the target is the basis with those
    leaves swapped, in canonical order.
    """
    canon = enumerate_basis(basis.leaves, basis.z, basis.shape, basis.model)
    op = _sigma_canonical(canon, i, inverse)
    if basis == canon and op.dst == canon:
        return op
    # re-index source (and target when it is the same space) in basis order
    src_idx = [canon.index[t] for t in basis.trees]
    dst = basis if op.dst == canon else op.dst
    cols = []
    for j in src_idx:
        col = op.cols[j]
        if dst is basis:
            col = {basis.index[canon.trees[k]]: v for k, v in col.items()}
        cols.append(col)
    return SparseOp(basis, dst, cols)


def sigma_matrix(
    m: str,
    z: str,
    shape: TreeShape | str | None = None,
    i: int = 1,
    model: AnyonModel | None = None,
    basis: FusionBasis | None = None,
) -> RepMatrix:
    """Raw matrix of ``sigma_i`` on ``V_z^{m...m}``.

    Parameters
    ----------
    m, z : str
        Leaf label and total charge.
    shape : TreeShape or str, optional
        Defaults to the paired four-leaf shape.  The string ``"printed"``
        selects the paired shape in the reference listing order.
    i : int
        1-based generator index.
    basis : FusionBasis, optional
        Explicit basis (overrides ``shape``).
    """
    if basis is None:
        if shape == "printed":
            basis = printed_basis(m, z, model=model)
        else:
            if isinstance(shape, str):
                shape = TreeShape.from_string(shape)
            basis = enumerate_basis(m, z, shape, model)
    if len(set(basis.leaves)) > 1:
        raise ValueError("sigma_matrix needs identical leaves; use sigma_operator")
    return RepMatrix.from_op(sigma_operator(basis, i))


def generators(basis: FusionBasis) -> list:
    """Raw ``sigma_1 .. sigma_{n-1}`` on ``basis``."""
    return [RepMatrix.from_op(sigma_operator(basis, i)) for i in range(1, basis.shape.n_leaves)]


# ----------------------------------------------------------------------
# normalization and evaluation

def _root_exponent(x: Cyclotomic) -> int:
    """``k`` with ``x = zeta_72^k`` or raise."""
    for k in range(72):
        if root_of_unity(72, k) == x:
            return k
    raise RootNotInField("value is not a 72nd root of unity")


def special_scalar(det: Cyclotomic, d: int) -> Cyclotomic:
    """A ``d``-th root of ``1/det`` in Q(zeta_72), of smallest argument.

    Raises
    ------
    RootNotInField
        When no such root exists in the field.
    """
    k = (-_root_exponent(det)) % 72
    # solve d*j = k (mod 72)
    cands = [j for j in range(72) if (d * j - k) % 72 == 0]
    if not cands:
        raise RootNotInField(f"no {d}-th root of zeta^{k} in Q(zeta_72)")
    j = min(cands, key=lambda j: (min(j, 72 - j), j > 36))
    return root_of_unity(72, j)


def normalize_special(rep: Sequence[RepMatrix]) -> list:
    """Scale all generators by one common scalar so each has determinant 1.

    The generators of a braid representation are mutually conjugate, so they
    share a determinant; the scalar is a ``d``-th root of its inverse.
    """
    rep = list(rep)
    if not rep:
        return []
    d = rep[0].dim
    if any(g.dim != d for g in rep):
        raise ValueError("generators must share a dimension")
    dets = [g.det() for g in rep]
    if any(x != dets[0] for x in dets):
        raise ValueError("generators have different determinants")
    c = special_scalar(dets[0], d)
    return [g.scaled(c, "det-normalized") for g in rep]


def evaluate(word: BraidWord | Sequence[int], gens: Sequence[RepMatrix]) -> RepMatrix:
    """Ordered product of generator matrices along ``word``."""
    if not gens:
        raise ValueError("no generators")
    letters = word.letters if isinstance(word, BraidWord) else tuple(word)
    d = gens[0].dim
    out = RepMatrix(tuple(tuple(ONE if r == c else ZERO for c in range(d)) for r in range(d)), gens[0].basis, gens[0].norm)
    invs: dict = {}
    for x in letters:
        if x == 0 or abs(x) > len(gens):
            raise IndexError(f"generator index {x} out of range")
        if x > 0:
            g = gens[x - 1]
        else:
            g = invs.get(x)
            if g is None:
                g = invs[x] = gens[-x - 1].adjoint()
        out = out @ g
    return out


def verify_braid_relations(gens: Sequence, name: str = "braid relations") -> ConsistencyReport:
    """Check ``s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}``, far commutation and unitarity.

    ``gens`` are :class:`RepMatrix` or :class:`SparseOp` values.
    """
    if len(gens) < 2:
        raise ValueError("need at least two generators")
    rep = ConsistencyReport(name)
    n = len(gens)
    for a in range(n):
        for b in range(a + 1, n):
            if b == a + 1:
                lhs = gens[a] @ gens[b] @ gens[a]
                rhs = gens[b] @ gens[a] @ gens[b]
            else:
                lhs = gens[a] @ gens[b]
                rhs = gens[b] @ gens[a]
            rep.checked += 1
            if lhs != rhs:
                rep.add((a + 1, b + 1), "lhs", "rhs")
    for k, g in enumerate(gens):
        rep.checked += 1
        unitary = g.is_unitary() if isinstance(g, RepMatrix) else (g.adjoint() @ g).is_identity()
        if not unitary:
            rep.add(("unitary", k + 1), "M^+M", "I")
    return rep


# ----------------------------------------------------------------------
# sectors

@dataclass
class Sector:
    """Span of orthonormal coordinate vectors in a generator basis."""

    vectors: list
    label: str = ""

    def __post_init__(self):
        self.vectors = [[as_cyclotomic(x) for x in v] for v in self.vectors]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @classmethod
    def from_states(cls, states: Iterable[StateVector], label: str = "") -> "Sector":
        return cls([list(s.amps) for s in states], label)

    def is_orthonormal(self) -> bool:
        for a, u in enumerate(self.vectors):
            for b, v in enumerate(self.vectors):
                ip = sum((x.conjugate() * y for x, y in zip(u, v) if x and y), ZERO)
                if ip != (ONE if a == b else ZERO):
                    return False
        return True


def _in_span(vec: list, basis: list) -> bool:
    """Exact membership test for a vector in the span of orthonormal ``basis``."""
    resid = list(vec)
    for u in basis:
        c = sum((x.conjugate() * y for x, y in zip(u, vec) if x and y), ZERO)
        if c:
            resid = [r - c * x for r, x in zip(resid, u)]
    return all(r.is_zero() for r in resid)


def commutant_dimension(mats: Sequence[RepMatrix]) -> int:
    """Dimension of ``{X : X M = M X for every M}`` by exact nullspace."""
    d = mats[0].dim
    rows = []
    # unknown X[r][c] has index r*d + c
    for M in mats:
        for r in range(d):
            for c in range(d):
                eq: dict = {}
                # (X M)[r][c] - (M X)[r][c]
                for k in range(d):
                    if M.rows[k][c]:
                        idx = r * d + k
                        eq[idx] = eq.get(idx, ZERO) + M.rows[k][c]
                    if M.rows[r][k]:
                        idx = k * d + c
                        eq[idx] = eq.get(idx, ZERO) - M.rows[r][k]
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return len(nullspace(rows, d * d))


def verify_sector(candidate: Sector, gens: Sequence[RepMatrix]) -> dict:
    """Invariance and irreducibility of ``candidate`` under ``gens``.

    Raises
    ------
    ValueError
        If the candidate vectors are not orthonormal.
    """
    if not candidate.is_orthonormal():
        raise ValueError("sector vectors must be orthonormal")
    invariant = True
    for g in gens:
        for v in candidate.vectors:
            gv = [sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in g.rows]
            if not _in_span(gv, candidate.vectors):
                invariant = False
                break
        if not invariant:
            break
    irreducible = False
    if invariant:
        restricted = [g.restricted(candidate.vectors) for g in gens]
        irreducible = commutant_dimension(restricted) == 1
    return {"invariant": invariant, "irreducible": irreducible, "dim": candidate.dim}


# ----------------------------------------------------------------------
# comparison with reference listings

# Which view of each four-strand representation the reference listings use.
PRINTED_NORMALIZATION = {
    ("C", "A"): "raw",
    ("C", "B"): "raw",
    ("C", "C"): "raw",
    ("D", "A"): "det-normalized",
    ("D", "B"): "raw",
    ("D", "F"): "raw",
    ("D", "G"): "raw",
    ("G", "A"): "det-normalized",
    ("G", "B"): "det-normalized",
    ("G", "G"): "raw",
}


def printed_generators(m: str, z: str, model: AnyonModel | None = None) -> list:
    """``sigma_1..3`` on the paired shape in reference order and normalization."""
    gens = generators(printed_basis(m, z, model=model))
    if PRINTED_NORMALIZATION.get((m, z), "raw") == "det-normalized":
        gens = normalize_special(gens)
    return gens


# residual scalar c with reference listing = c * printed_generators(m, z)
PRINTED_SCALAR = {
    ("C", "A"): -1,
    ("C", "B"): -1,
    ("C", "C"): 1,
    ("D", "A"): 1,
    ("D", "B"): -1,
    ("D", "F"): -1,
    ("D", "G"): -1,
    ("G", "A"): 1,
    ("G", "B"): 1,
    ("G", "G"): 1,
}


def reference_generators(m: str, z: str, model: AnyonModel | None = None) -> list:
    """``printed_generators`` times the recorded residual scalar: the reference listing itself."""
    c = PRINTED_SCALAR.get((m, z), 1)
    gens = printed_generators(m, z, model)
    return gens if c == 1 else [g.scaled(c) for g in gens]


def common_scalar(reference: Sequence[Sequence[Sequence[Scalar]]], built: Sequence[RepMatrix]):
    """The scalar ``c`` with ``reference[k] == c * built[k]`` for every ``k``.

    Returns
    -------
    (c, mismatches)
        ``c`` is the ratio fixed by the first nonzero entry (``None`` if the
        matrices are all zero); ``mismatches`` lists ``(k, i, j)`` entries
        where ``reference`` differs from ``c * built``.
    """
    c = None
    for ref, g in zip(reference, built):
        for i, row in enumerate(g.rows):
            for j, x in enumerate(row):
                if x:
                    c = as_cyclotomic(ref[i][j]) / x
                    break
            if c is not None:
                break
        if c is not None:
            break
    bad = []
    if c is None:
        c = ONE
    for k, (ref, g) in enumerate(zip(reference, built)):
        for i, row in enumerate(g.rows):
            for j, x in enumerate(row):
                if as_cyclotomic(ref[i][j]) != c * x:
                    bad.append((k, i, j))
    return c, bad
