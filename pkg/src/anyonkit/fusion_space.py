"""Fusion-tree Hilbert spaces on arbitrary binary tree shapes.

A tree *shape* is a nested tuple of pairs whose leaves are ``None``; for
example the paired four-leaf shape is ``((None, None), (None, None))``.  A
*labeled tree* mirrors the shape with internal nodes ``(label, left, right)``
and leaves given by their label string.  A basis of ``V_z^{m...m}`` is the
list of admissible labeled trees with root label ``z``.

Basis elements are displayed by their internal labels in preorder with the
root omitted, so ``|x y>`` on the paired shape means ``((m m)_x (m m)_y)_z``.

F-moves act at a node addressed by a path string of ``"L"``/``"R"`` steps from
the root.  A *right* move rewrites ``((A B)_e C)_d`` as
``sum_f F^{abc}_{d; f e} (A (B C)_f)_d``; a *left* move is its inverse.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .anyon_model import AnyonModel, ds3_model
from .exact_arith import ONE, ZERO, Cyclotomic, Scalar, as_cyclotomic

__all__ = [
    "TreeShape",
    "FusionBasis",
    "StateVector",
    "SparseOp",
    "dim",
    "enumerate_basis",
    "printed_basis",
    "PRINTED_ORDERS",
    "f_move",
    "rotation",
    "inner_product",
    "BasisMismatch",
]


class BasisMismatch(ValueError):
    """Raised when two objects that must share a basis do not."""


# ----------------------------------------------------------------------
# shapes

def _count(node) -> int:
    return 1 if node is None else _count(node[0]) + _count(node[1])


def _to_str(node) -> str:
    return "*" if node is None else f"({_to_str(node[0])}{_to_str(node[1])})"


def _parse_shape(text: str):
    pos = 0

    def rec():
        nonlocal pos
        ch = text[pos]
        if ch == "*":
            pos += 1
            return None
        if ch != "(":
            raise ValueError(f"bad shape string {text!r} at {pos}")
        pos += 1
        left = rec()
        right = rec()
        if text[pos] != ")":
            raise ValueError(f"bad shape string {text!r} at {pos}")
        pos += 1
        return (left, right)

    node = rec()
    if pos != len(text):
        raise ValueError(f"trailing characters in shape {text!r}")
    return node


@dataclass(frozen=True)
class TreeShape:
    """A rooted binary tree with ordered leaves.

    Attributes
    ----------
    node : nested tuple
        Pairs ``(left, right)`` with ``None`` leaves.
    """

    node: object

    @property
    def n_leaves(self) -> int:
        return _count(self.node)

    def __str__(self) -> str:
        return _to_str(self.node)

    @classmethod
    def from_string(cls, text: str) -> "TreeShape":
        """Parse the ``((**)(**))`` notation used by :meth:`__str__`."""
        return cls(_parse_shape(text.replace(" ", "")))

    @classmethod
    def caterpillar(cls, n: int) -> "TreeShape":
        """Left-leaning tree ``(((* *) *) *)...``; one leaf gives ``*``."""
        if n < 1:
            raise ValueError("a tree needs at least one leaf")
        node = None
        for _ in range(n - 1):
            node = (node, None)
        return cls(node)

    @classmethod
    def paired(cls) -> "TreeShape":
        """The four-leaf shape ``((* *)(* *))``."""
        return cls(((None, None), (None, None)))

    @classmethod
    def two_branch(cls) -> "TreeShape":
        """Eight leaves as two paired four-leaf branches."""
        p = ((None, None), (None, None))
        return cls((p, p))

    def subtree(self, path: str):
        node = self.node
        for step in path:
            if node is None:
                raise ValueError(f"path {path!r} runs past a leaf")
            node = node[0] if step == "L" else node[1]
        return node

    def leaf_range(self, path: str) -> tuple:
        """Half-open range of leaf positions below ``path``."""
        start = 0
        node = self.node
        for step in path:
            if step == "L":
                node = node[0]
            else:
                start += _count(node[0])
                node = node[1]
        return start, start + _count(node)

    def rotated(self, path: str, direction: str) -> "TreeShape":
        return TreeShape(_replace_at(self.node, path, lambda n: _rotate_shape(n, direction, path)))


def _rotate_shape(node, direction: str, path: str):
    if direction == "right":
        if node is None or node[0] is None:
            raise ValueError(f"no right move at {path!r}: left child is a leaf")
        (a, b), c = node
        return (a, (b, c))
    if direction == "left":
        if node is None or node[1] is None:
            raise ValueError(f"no left move at {path!r}: right child is a leaf")
        a, (b, c) = node
        return ((a, b), c)
    raise ValueError(f"direction must be 'left' or 'right', not {direction!r}")


def _replace_at(node, path: str, fn):
    if not path:
        return fn(node)
    if node is None:
        raise ValueError("path runs past a leaf")
    if path[0] == "L":
        return (_replace_at(node[0], path[1:], fn), node[1])
    return (node[0], _replace_at(node[1], path[1:], fn))


# ----------------------------------------------------------------------
# labeled trees

def _charge(t) -> str:
    return t if isinstance(t, str) else t[0]


def _internal_labels(t) -> list:
    if isinstance(t, str):
        return []
    return [t[0]] + _internal_labels(t[1]) + _internal_labels(t[2])


def _enumerate(model: AnyonModel, node, leaves: Sequence[str], start: int) -> list:
    """All (charge, labeled tree) pairs of a subtree whose first leaf is ``start``."""
    if node is None:
        return [(leaves[start], leaves[start])]
    nl = _count(node[0])
    left = _enumerate(model, node[0], leaves, start)
    right = _enumerate(model, node[1], leaves, start + nl)
    out = []
    for (cl, tl), (cr, tr) in itertools.product(left, right):
        for c in model.fuse(cl, cr):
            out.append((c, (c, tl, tr)))
    return out


class FusionBasis:
    """Ordered basis of admissible labelings of a tree shape.

    Parameters
    ----------
    model : AnyonModel
    shape : TreeShape
    leaves : tuple of str
        Leaf labels in strand order.
    z : str
        Root (total) charge.
    trees : sequence of labeled trees
        Basis elements in order.
    order : str
        Tag naming the ordering (``"canonical"`` or ``"printed"``).
    """

    def __init__(self, model: AnyonModel, shape: TreeShape, leaves: tuple, z: str, trees: Sequence, order: str):
        self.model = model
        self.shape = shape
        self.leaves = tuple(leaves)
        self.z = z
        self.trees = tuple(trees)
        self.order = order
        self.index = {t: i for i, t in enumerate(self.trees)}
        if len(self.index) != len(self.trees):
            raise ValueError("duplicate labelings in basis")
        self._key = (id(model), shape, self.leaves, z, self.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FusionBasis) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def labels(self, i: int) -> tuple:
        """Internal labels of element ``i`` in preorder, root omitted."""
        return tuple(_internal_labels(self.trees[i])[1:])

    def names(self) -> list:
        return ["".join(self.labels(i)) for i in range(len(self))]

    def find(self, labels: Sequence[str] | str) -> int:
        """Index of the element with the given preorder internal labels."""
        want = tuple(labels)
        for i in range(len(self)):
            if self.labels(i) == want:
                return i
        raise KeyError(f"no basis element with labels {''.join(want)}")

    def reordered(self, names: Sequence[str], tag: str) -> "FusionBasis":
        """Same space with elements listed in the order of ``names``."""
        idx = [self.find(n) for n in names]
        if sorted(idx) != list(range(len(self))):
            raise ValueError(f"{names} is not a permutation of the basis")
        return FusionBasis(self.model, self.shape, self.leaves, self.z, [self.trees[i] for i in idx], tag)

    def to_dict(self) -> dict:
        return {
            "shape": str(self.shape),
            "leaves": "".join(self.leaves),
            "z": self.z,
            "order": self.order,
            "labelings": self.names(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self) -> str:
        return f"FusionBasis({''.join(self.leaves)}->{self.z}, shape={self.shape}, dim={len(self)}, order={self.order})"


def dim(m: str, z: str, n: int, model: AnyonModel | None = None) -> int:
    """Dimension of ``V_z^{m...m}`` with ``n`` leaves, from fusion-matrix powers."""
    if n < 1:
        raise ValueError("n must be at least 1")
    model = model or ds3_model()
    order = model.basis_order
    Nm = model.fusion_matrix(m)
    vec = [1 if x == model.unit else 0 for x in order]
    for _ in range(n):
        vec = [sum(vec[i] * Nm[i][j] for i in range(len(order))) for j in range(len(order))]
    return vec[order.index(z)]


@lru_cache(maxsize=256)
def _canonical_basis(model: AnyonModel, shape: TreeShape, leaves: tuple, z: str) -> FusionBasis:
    trees = [t for c, t in _enumerate(model, shape.node, leaves, 0) if c == z]
    rank = model.basis_order.index
    trees.sort(key=lambda t: tuple(rank(x) for x in _internal_labels(t)[1:]))
    return FusionBasis(model, shape, leaves, z, trees, "canonical")


def enumerate_basis(
    m: str | Sequence[str],
    z: str,
    shape: TreeShape | None = None,
    model: AnyonModel | None = None,
) -> FusionBasis:
    """Admissible labelings of ``shape`` in canonical order.

    Parameters
    ----------
    m : str or sequence of str
        One leaf label used for every leaf, or the list of leaf labels.
    z : str
        Total charge.
    shape : TreeShape, optional
        Defaults to the paired four-leaf shape.
    model : AnyonModel, optional
        Defaults to D(S3).

    Notes
    -----
    Canonical order sorts the preorder internal labels lexicographically
    with ``model.basis_order`` ranking each coordinate.
    """
    model = model or ds3_model()
    shape = shape or TreeShape.paired()
    n = shape.n_leaves
    leaves = (m,) * n if isinstance(m, str) else tuple(m)
    if len(leaves) != n:
        raise ValueError(f"{len(leaves)} leaf labels for a shape with {n} leaves")
    if n == 1:
        trees = [leaves[0]] if leaves[0] == z else []
        return FusionBasis(model, shape, leaves, z, trees, "canonical")
    return _canonical_basis(model, shape, leaves, z)


# Basis orders of V_z^{mmmm} on the paired shape as used by the reference
# generator matrices.  For (D,A) and (D,B) the matrix listings use a
# different order from the summary table; both are kept.
PRINTED_ORDERS = {
    ("C", "A"): "AA BB CC",
    ("C", "B"): "CC AB BA",
    ("C", "C"): "CC AC CA BC CB",
    ("D", "A"): "AA GG FF CC HH",
    ("D", "B"): "GG FF CC HH",
    ("D", "C"): "CC AC CA GF FG GH HG FH HF",
    ("D", "F"): "FF AF FA GC CG GH HG CH HC",
    ("D", "G"): "GG AG GA FC CF FH HF CH HC",
    ("D", "H"): "HH AH HA GF FG GC CG FC CF",
    ("G", "A"): "AA BB GG",
    ("G", "B"): "GG AB BA",
    ("G", "G"): "GG AG GA BG GB",
}

TABLE_ORDERS = dict(PRINTED_ORDERS)
TABLE_ORDERS[("D", "A")] = "AA CC FF GG HH"
TABLE_ORDERS[("D", "B")] = "CC FF GG HH"


def printed_basis(m: str, z: str, table: bool = False, model: AnyonModel | None = None) -> FusionBasis:
    """Paired-shape basis of ``V_z^{mmmm}`` in the reference listing order.

    ``table=True`` selects the summary-table order where it differs.
    """
    orders = TABLE_ORDERS if table else PRINTED_ORDERS
    basis = enumerate_basis(m, z, TreeShape.paired(), model)
    return basis.reordered(orders[(m, z)].split(), "table" if table else "printed")


# ----------------------------------------------------------------------
# vectors and sparse operators

class StateVector:
    """Exact amplitude vector over a :class:`FusionBasis` (or any sized basis)."""

    __slots__ = ("basis", "amps")

    def __init__(self, basis, amps: Sequence[Scalar]):
        if len(amps) != len(basis):
            raise ValueError(f"{len(amps)} amplitudes for a basis of size {len(basis)}")
        self.basis = basis
        self.amps = tuple(as_cyclotomic(a) for a in amps)

    @classmethod
    def zero(cls, basis) -> "StateVector":
        return cls(basis, [ZERO] * len(basis))

    @classmethod
    def basis_state(cls, basis, i: int) -> "StateVector":
        amps = [ZERO] * len(basis)
        amps[i] = ONE
        return cls(basis, amps)

    @classmethod
    def from_labels(cls, basis: FusionBasis, terms: Mapping[str, Scalar]) -> "StateVector":
        """Build from ``{"FC": c1, "CF": c2, ...}`` keyed by preorder labels."""
        amps = [ZERO] * len(basis)
        for name, c in terms.items():
            amps[basis.find(name)] = amps[basis.find(name)] + as_cyclotomic(c)
        return cls(basis, amps)

    def __len__(self) -> int:
        return len(self.amps)

    def _check(self, other: "StateVector") -> None:
        if self.basis != other.basis:
            raise BasisMismatch("state vectors live on different bases")

    def __add__(self, other: "StateVector") -> "StateVector":
        self._check(other)
        return StateVector(self.basis, [a + b for a, b in zip(self.amps, other.amps)])

    def __sub__(self, other: "StateVector") -> "StateVector":
        self._check(other)
        return StateVector(self.basis, [a - b for a, b in zip(self.amps, other.amps)])

    def __neg__(self) -> "StateVector":
        return StateVector(self.basis, [-a for a in self.amps])

    def scaled(self, c: Scalar) -> "StateVector":
        c = as_cyclotomic(c)
        return StateVector(self.basis, [c * a if a else a for a in self.amps])

    def __rmul__(self, c: Scalar) -> "StateVector":
        return self.scaled(c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, StateVector) and self.basis == other.basis and self.amps == other.amps

    def __hash__(self) -> int:
        return hash(self.amps)

    def inner(self, other: "StateVector") -> Cyclotomic:
        return inner_product(self, other)

    def norm_squared(self) -> Cyclotomic:
        total = ZERO
        for a in self.amps:
            if a:
                total = total + a.norm_squared()
        return total

    def is_zero(self) -> bool:
        return not any(self.amps)

    def support(self) -> dict:
        return {i: a for i, a in enumerate(self.amps) if a}

    def __repr__(self) -> str:
        names = self.basis.names() if hasattr(self.basis, "names") else [str(i) for i in range(len(self.basis))]
        terms = [f"({a})|{names[i]}>" for i, a in self.support().items()]
        return " + ".join(terms) if terms else "0"


def inner_product(u: StateVector, v: StateVector) -> Cyclotomic:
    """``sum_i conj(u_i) v_i``; the bases must agree."""
    if u.basis != v.basis:
        raise BasisMismatch("inner product of vectors on different bases")
    total = ZERO
    for a, b in zip(u.amps, v.amps):
        if a and b:
            total = total + a.conjugate() * b
    return total


class SparseOp:
    """Exact linear map between two bases, stored column by column.

    ``cols[j]`` maps target indices to the coefficient of target element
    ``i`` in the image of source element ``j``.
    """

    __slots__ = ("src", "dst", "cols")

    def __init__(self, src, dst, cols: Sequence[Mapping[int, Cyclotomic]]):
        if len(cols) != len(src):
            raise ValueError("one column per source basis element is required")
        self.src = src
        self.dst = dst
        self.cols = tuple({i: v for i, v in c.items() if v} for c in cols)

    @classmethod
    def identity(cls, basis) -> "SparseOp":
        return cls(basis, basis, [{j: ONE} for j in range(len(basis))])

    @classmethod
    def diagonal(cls, basis, entries: Sequence[Scalar]) -> "SparseOp":
        return cls(basis, basis, [{j: as_cyclotomic(v)} for j, v in enumerate(entries)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], src, dst=None) -> "SparseOp":
        dst = src if dst is None else dst
        cols = [{i: as_cyclotomic(rows[i][j]) for i in range(len(rows)) if rows[i][j]} for j in range(len(src))]
        return cls(src, dst, cols)

    @property
    def shape(self) -> tuple:
        return (len(self.dst), len(self.src))

    def apply(self, state: StateVector) -> StateVector:
        if state.basis != self.src:
            raise BasisMismatch("operator applied to a vector on the wrong basis")
        out = [ZERO] * len(self.dst)
        for j, a in enumerate(state.amps):
            if a:
                for i, v in self.cols[j].items():
                    out[i] = out[i] + v * a
        return StateVector(self.dst, out)

    __call__ = apply

    def __matmul__(self, other: "SparseOp") -> "SparseOp":
        """Composition: ``(self @ other)(v) = self(other(v))``."""
        if other.dst != self.src:
            raise BasisMismatch("operators cannot be composed: bases differ")
        cols = []
        for col in other.cols:
            acc: dict = {}
            for k, a in col.items():
                for i, v in self.cols[k].items():
                    acc[i] = acc.get(i, ZERO) + v * a
            cols.append(acc)
        return SparseOp(other.src, self.dst, cols)

    def adjoint(self) -> "SparseOp":
        cols: list = [dict() for _ in range(len(self.dst))]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v.conjugate()
        return SparseOp(self.dst, self.src, cols)

    def scaled(self, c: Scalar) -> "SparseOp":
        c = as_cyclotomic(c)
        return SparseOp(self.src, self.dst, [{i: c * v for i, v in col.items()} for col in self.cols])

    def entry(self, i: int, j: int) -> Cyclotomic:
        return self.cols[j].get(i, ZERO)

    def to_rows(self) -> list:
        return [[self.entry(i, j) for j in range(len(self.src))] for i in range(len(self.dst))]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparseOp) and self.src == other.src and self.dst == other.dst and self.cols == other.cols

    def __hash__(self) -> int:
        return hash(tuple(tuple(sorted(c.items())) for c in self.cols))

    def is_identity(self) -> bool:
        return self.src == self.dst and all(c == {j: ONE} for j, c in enumerate(self.cols))

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def __repr__(self) -> str:
        return f"SparseOp({len(self.dst)}x{len(self.src)}, nnz={self.nnz()})"


# ----------------------------------------------------------------------
# F-moves

def _node_at(tree, path: str):
    for step in path:
        tree = tree[1] if step == "L" else tree[2]
    return tree


def _tree_replace(tree, path: str, new):
    if not path:
        return new
    if path[0] == "L":
        return (tree[0], _tree_replace(tree[1], path[1:], new), tree[2])
    return (tree[0], tree[1], _tree_replace(tree[2], path[1:], new))


def _move_terms(model: AnyonModel, node, direction: str) -> list:
    """Expansion of one labeled node after a right or left move."""
    d = node[0]
    if direction == "right":
        _, (e, A, B), C = node
        a, b, c = _charge(A), _charge(B), _charge(C)
        out = []
        for f in model.right_channels(a, b, c, d):
            v = model.F[(a, b, c, d, f, e)]
            if v:
                out.append(((d, A, (f, B, C)), v))
        return out
    _, A, (f, B, C) = node
    a, b, c = _charge(A), _charge(B), _charge(C)
    out = []
    for e in model.left_channels(a, b, c, d):
        v = model.F[(a, b, c, d, f, e)]
        if v:
            out.append(((d, (e, A, B), C), v.conjugate()))
    return out


@lru_cache(maxsize=4096)
def rotation(basis: FusionBasis, path: str, direction: str) -> SparseOp:
    """Change-of-basis operator for one F-move at the node ``path``.

    Parameters
    ----------
    basis : FusionBasis
    path : str
        Node address (``""`` is the root).
    direction : {"right", "left"}
        ``"right"`` turns ``((A B) C)`` into ``(A (B C))``; ``"left"`` undoes it.

    Returns
    -------
    SparseOp
        Map from ``basis`` to the canonical basis of the rotated shape.
    """
    new_shape = basis.shape.rotated(path, direction)
    dst = enumerate_basis(basis.leaves, basis.z, new_shape, basis.model)
    cols = []
    for tree in basis.trees:
        node = _node_at(tree, path)
        col: dict = {}
        for new_node, v in _move_terms(basis.model, node, direction):
            i = dst.index[_tree_replace(tree, path, new_node)]
            col[i] = col.get(i, ZERO) + v
        cols.append(col)
    return SparseOp(basis, dst, cols)


def f_move(state: StateVector, vertex: str, direction: str = "right") -> StateVector:
    """Re-express ``state`` on the shape reassociated at ``vertex``.

    Raises
    ------
    ValueError
        If ``vertex`` does not address a node admitting the requested move.
    """
    if not isinstance(state.basis, FusionBasis):
        raise TypeError("f_move needs a state on a FusionBasis")
    if any(ch not in "LR" for ch in vertex):
        raise ValueError(f"malformed vertex path {vertex!r}")
    return rotation(state.basis, vertex, direction).apply(state)
