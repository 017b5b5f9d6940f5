"""Finite matrix groups generated by exact unitary matrices.

Elements are :class:`~anyonkit.exact_arith.ExactMatrix` values hashed by
their canonical byte key, so membership is exact.
"""
from __future__ import annotations

import json
from fractions import Fraction
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exact_arith import SQRT2, SQRT3, SQRT6, ExactMatrix, Scalar, root_of_unity

__all__ = [
    "CapExceeded",
    "MatrixGroup",
    "GroupReport",
    "closure",
    "report",
    "check_presentation",
    "dseries_generators",
    "check_conjugation_equivalence",
    "as_exact",
    "DEFAULT_CAP",
    "SIGMA216_RELATIONS",
    "IMAGE_GROUPS",
    "image_group_generators",
    "image_group_check",
]

DEFAULT_CAP = 20000


class CapExceeded(RuntimeError):
    """The closure grew past the element cap."""


def as_exact(m) -> ExactMatrix:
    """Coerce a RepMatrix, nested list or ExactMatrix to an ExactMatrix."""
    if isinstance(m, ExactMatrix):
        return m
    rows = getattr(m, "rows", m)
    return ExactMatrix.from_rows(rows)


@dataclass
class MatrixGroup:
    """A closed finite group of exact matrices.

    Attributes
    ----------
    generators : list of ExactMatrix
    elements : dict
        Canonical key to element.
    """

    generators: list
    elements: dict = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    def __contains__(self, m) -> bool:
        return as_exact(m).key() in self.elements

    def __iter__(self):
        return iter(self.elements.values())

    def __len__(self) -> int:
        return len(self.elements)


def closure(gens: Sequence, cap: int = DEFAULT_CAP) -> MatrixGroup:
    """Breadth-first closure of ``gens`` under right multiplication.

    For a finite group the semigroup closure is already a group, so inverses
    need not be added.

    Raises
    ------
    CapExceeded
        If more than ``cap`` elements appear.
    """
    gens = [as_exact(g) for g in gens]
    if not gens:
        raise ValueError("at least one generator is required")
    n = gens[0].shape[0]
    if any(g.shape != (n, n) for g in gens):
        raise ValueError("generators must be square and of one size")
    ident = ExactMatrix.identity(n)
    elements = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = y.key()
                if k not in elements:
                    elements[k] = y
                    nxt.append(y)
                    if len(elements) > cap:
                        raise CapExceeded(f"closure exceeded {cap} elements")
        frontier = nxt
    return MatrixGroup(gens, elements)


def _element_order(x: ExactMatrix, limit: int) -> int:
    ident = ExactMatrix.identity(x.shape[0])
    y = x
    for k in range(1, limit + 1):
        if y == ident:
            return k
        y = y @ x
    raise ValueError("element order exceeds group order")


@dataclass
class GroupReport:
    order: int
    center_order: int
    scalar_order: int
    projective_order: int
    element_order_profile: dict

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "center_order": self.center_order,
            "scalar_order": self.scalar_order,
            "projective_order": self.projective_order,
            "element_order_profile": {str(k): v for k, v in sorted(self.element_order_profile.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def report(group: MatrixGroup, profile: bool = True) -> GroupReport:
    """Order, center, scalar subgroup and element-order profile."""
    elems = list(group)
    gens = group.generators
    center = [x for x in elems if all(x @ g == g @ x for g in gens)]
    scalars = [x for x in center if x.is_scalar()]
    prof: Counter = Counter()
    if profile:
        for x in elems:
            prof[_element_order(x, group.order)] += 1
    return GroupReport(
        order=group.order,
        center_order=len(center),
        scalar_order=len(scalars),
        projective_order=group.order // len(scalars),
        element_order_profile=dict(prof),
    )


def _word_value(word: str, assignment: Mapping[str, ExactMatrix], n: int) -> ExactMatrix:
    out = ExactMatrix.identity(n)
    for ch in word:
        if ch not in assignment:
            raise KeyError(f"unknown generator symbol {ch!r}")
        out = out @ assignment[ch]
    return out


def expand_relation(rel: str) -> list:
    """Expand ``"aba=bab"``, ``"a^3"`` or ``"(ab)^6"`` into identity words.

    Returns pairs ``(lhs, rhs)`` of plain words; ``rhs`` is ``""`` for the
    identity.
    """
    def expand(s: str) -> str:
        out = ""
        i = 0
        while i < len(s):
            ch = s[i]
            if ch == "(":
                depth, j = 1, i + 1
                while depth:
                    depth += {"(": 1, ")": -1}.get(s[j], 0)
                    j += 1
                body = expand(s[i + 1 : j - 1])
                i = j
            else:
                body = ch
                i += 1
            if i < len(s) and s[i] == "^":
                j = i + 1
                while j < len(s) and s[j].isdigit():
                    j += 1
                body = body * int(s[i + 1 : j])
                i = j
            out += body
        return out

    rel = rel.replace(" ", "")
    if "=" in rel:
        parts = rel.split("=")
        return [(expand(parts[k]), expand(parts[k + 1]) if parts[k + 1] != "1" else "") for k in range(len(parts) - 1)]
    return [(expand(rel), "")]


def check_presentation(
    group: MatrixGroup,
    assignment: Mapping[str, Scalar],
    relations: Sequence[str],
    order: int | None = None,
) -> bool:
    """True when every relation holds and (if given) the order matches.

    Parameters
    ----------
    group : MatrixGroup
    assignment : mapping
        Single-letter symbols to generator matrices.
    relations : list of str
        Words such as ``"aba=bab"``, ``"a^3=(ab)^6=1"``.
    order : int, optional
        Known order of the presented group.
    """
    amap = {k: as_exact(v) for k, v in assignment.items()}
    n = group.dim
    for rel in relations:
        for lhs, rhs in expand_relation(rel):
            if _word_value(lhs, amap, n) != _word_value(rhs, amap, n):
                return False
    return order is None or group.order == order


def _exp(num: int, den: int):
    return root_of_unity(den, num % den)


def dseries_generators(n: int, a: int, b: int, d: int, r: int, s: int) -> list:
    """Generators ``E, F(n,a,b), G(d,r,s)`` of the SU(3) family ``D(n,a,b;d,r,s)``.

    ``G`` is the monomial matrix with ``e(r/d)`` at (0,0), ``e(s/d)`` at
    (1,2) and ``-e((-r-s)/d)`` at (2,1), where ``e(x) = exp(2 pi i x)``.

    Raises
    ------
    ValueError
        If ``n`` or ``d`` does not divide 72.
    """
    for k in (n, d):
        if 72 % k:
            raise ValueError(f"roots of order {k} are outside Q(zeta_72)")
    E = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    F = [[_exp(a, n), 0, 0], [0, _exp(b, n), 0], [0, 0, _exp(-a - b, n)]]
    G = [[_exp(r, d), 0, 0], [0, 0, _exp(s, d)], [0, -_exp(-r - s, d), 0]]
    return [ExactMatrix.from_rows(m) for m in (E, F, G)]


def check_conjugation_equivalence(p, group_a: MatrixGroup, group_b: MatrixGroup) -> bool:
    """True iff ``p g p^-1`` lies in ``group_b`` for each generator of ``group_a``
    and the two groups have the same order."""
    p = as_exact(p)
    if p.shape != (group_a.dim, group_a.dim) or group_a.dim != group_b.dim:
        raise ValueError("dimension mismatch")
    pinv = p.adjoint()
    if not (p @ pinv).is_identity():
        raise ValueError("conjugating matrix must be unitary")
    if group_a.order != group_b.order:
        return False
    return all((p @ g @ pinv) in group_b for g in group_a.generators)


# ----------------------------------------------------------------------
# image groups of the four-strand representations

SIGMA216_RELATIONS = ("aba=bab", "bcb=cbc", "ac=ca", "a^3=(ab)^6=(bc)^6=(abcaba)^2=1")

_R2 = SQRT2 / 2
_HALF = Fraction(1, 2)
_E = lambda n, k: [1 if j == k else 0 for j in range(n)]  # noqa: E731

# Per (m, z): space dimension, sector dimensions, the checked sector (coordinates
# over the reference basis, None for the whole space), the normalization of the
# sector image ("reference" restriction or "det" normalized), and expected
# order / center / projective order of the image.  A ``conjugator`` p is
# checked in the sense p^-1 g p in D(...) for every generator g.
IMAGE_GROUPS = {
    ("C", "A"): dict(dim=3, sectors=(2, 1), vectors=[[0, 1, 0], [SQRT3 / 3, 0, -SQRT6 / 3]], norm="det", order=12),
    ("C", "B"): dict(dim=3, sectors=(3,), vectors=None, norm="reference", order=24),
    ("C", "C"): dict(dim=5, sectors=(3, 1, 1), vectors=[[0, _R2, -_R2, 0, 0], _E(5, 3), _E(5, 4)], norm="reference", order=24),
    ("D", "A"): dict(dim=5, sectors=(3, 1, 1), vectors=[_E(5, 1), _E(5, 4), [-_R2, 0, _HALF, _HALF, 0]], norm="reference", order=12),
    ("D", "B"): dict(dim=4, sectors=(2, 2), vectors=[_E(4, 0), [0, _R2, _R2, 0]], norm="reference", order=24, projective_order=12),
    ("D", "F"): dict(
        dim=9, sectors=(8, 1),
        vectors=[[_R2, -_R2] + [0] * 7, [SQRT6 / 6, SQRT6 / 6, -SQRT6 / 3] + [0] * 6] + [_E(9, k) for k in range(3, 9)],
        norm="reference", order=216, relations=SIGMA216_RELATIONS,
    ),
    ("D", "G"): dict(
        dim=9, sectors=(3, 6),
        vectors=[[0, 0, 0, _R2, -_R2, 0, 0, 0, 0], [0, 0, 0, 0, 0, -_R2, 0, _R2, 0], [0, 0, 0, 0, 0, 0, _R2, 0, -_R2]],
        norm="reference", order=648, center_order=3, projective_order=216,
    ),
    ("G", "A"): dict(dim=3, sectors=(3,), vectors=None, norm="reference", order=162, dseries=(9, 1, 1, 2, 1, 1)),
    ("G", "B"): dict(
        dim=3, sectors=(3,), vectors=None, norm="reference", order=648, dseries=(18, 1, 1, 2, 1, 1),
        conjugator=[[0, 0, 1], [_R2, -_R2, 0], [_R2, _R2, 0]],
    ),
    ("G", "G"): dict(dim=5, sectors=(4, 1), vectors=[_E(5, k) for k in range(1, 5)], norm="reference", order=648),
}


def image_group_generators(m: str, z: str, model=None) -> list:
    """Generator images on the checked sector of ``(m, z)``, as in :data:`IMAGE_GROUPS`."""
    from .braid_engine import normalize_special, reference_generators

    row = IMAGE_GROUPS[(m, z)]
    gens = reference_generators(m, z, model)
    if row["vectors"] is not None:
        gens = [g.restricted(row["vectors"]) for g in gens]
    if row["norm"] == "det":
        gens = normalize_special(gens)
    return gens


def image_group_check(m: str, z: str, model=None, profile: bool = False) -> dict:
    """Closure of the sector image of ``(m, z)`` compared with :data:`IMAGE_GROUPS`.

    Returns a dict with the group report, sector checks, each expectation
    and an overall ``pass``.
    """
    from .braid_engine import Sector, reference_generators, verify_sector

    row = IMAGE_GROUPS[(m, z)]
    full = reference_generators(m, z, model)
    checks = {"dim": len(full[0].rows) == row["dim"]}
    if row["vectors"] is not None:
        sec = verify_sector(Sector(row["vectors"]), full)
        checks["sector_invariant"] = sec["invariant"]
        checks["sector_irreducible"] = sec["irreducible"]
        checks["sector_dim"] = sec["dim"] == row["sectors"][0]
    gens = image_group_generators(m, z, model)
    group = closure(gens)
    rep = report(group, profile=profile)
    for key in ("order", "center_order", "projective_order"):
        if key in row:
            checks[key] = getattr(rep, key) == row[key]
    if "relations" in row:
        checks["presentation"] = check_presentation(group, dict(zip("abc", gens)), row["relations"], row["order"])
    if "dseries" in row:
        target = closure(dseries_generators(*row["dseries"]))
        checks["dseries_order"] = target.order == row["order"]
        if "conjugator" in row:
            pinv = as_exact(row["conjugator"]).adjoint()
            checks["conjugation"] = check_conjugation_equivalence(pinv, group, target)
    return {"m": m, "z": z, "report": rep.to_dict(), "checks": checks, "pass": all(checks.values())}
