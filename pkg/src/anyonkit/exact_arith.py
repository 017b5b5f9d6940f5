"""Exact arithmetic in the cyclotomic field Q(zeta_72).

Every scalar used by the package lives in this field: the cube root of unity
``omega``, ``i``, ``sqrt(2)``, ``sqrt(3)`` and ``tau = exp(-pi i / 9)``.
Elements are stored in the power basis ``{z**k : k = 0..23}`` where ``z`` is a
primitive 72nd root of unity, reduced modulo the cyclotomic polynomial

    Phi_72(x) = x**24 - x**12 + 1.

The representation is an integer numerator vector plus one positive common
denominator, normalized by their gcd, so equality is plain tuple equality.

Two matrix types are provided on top of the scalars:

* :class:`ExactMatrix`, a small dense matrix backed by an ``int64`` numpy array
  of shape ``(rows, cols, 24)`` with a common denominator.  It is built for
  fast products and hashing inside group closures.
* plain nested lists of :class:`Cyclotomic`, handled by the helper functions
  at the bottom of the module (determinant, adjoint, nullspace).
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "DEGREE",
    "ORDER",
    "Cyclotomic",
    "Scalar",
    "ExactMatrix",
    "root_of_unity",
    "as_cyclotomic",
    "ZERO",
    "ONE",
    "ZETA",
    "OMEGA",
    "I",
    "SQRT2",
    "SQRT3",
    "SQRT6",
    "TAU",
    "parse",
    "mat_mul",
    "mat_adjoint",
    "mat_identity",
    "mat_det",
    "mat_equal",
    "nullspace",
]

ORDER = 72
DEGREE = 24
_UNITS = tuple(k for k in range(1, ORDER) if math.gcd(k, ORDER) == 1)

Scalar = Union["Cyclotomic", int, Fraction]


def _reduce_poly(c: list) -> list:
    """Reduce a coefficient list of any length to length ``DEGREE``.

    Uses ``x**k = x**(k-12) - x**(k-24)`` for ``k >= 24``, walking down from
    the top degree so each rewritten term lands below the current index.
    """
    for k in range(len(c) - 1, DEGREE - 1, -1):
        v = c[k]
        if v:
            c[k - 12] += v
            c[k - 24] -= v
    del c[DEGREE:]
    if len(c) < DEGREE:
        c.extend([0] * (DEGREE - len(c)))
    return c


def _power_table() -> tuple:
    table = []
    for k in range(ORDER):
        c = [0] * (k + 1)
        c[k] = 1
        table.append(tuple(_reduce_poly(c)))
    return tuple(table)


# reduced coefficient vector of z**k for k = 0..71
_POW = _power_table()
_POW_SPARSE = tuple(tuple((j, v) for j, v in enumerate(row) if v) for row in _POW)


class Cyclotomic:
    """An immutable element of Q(zeta_72).

    Parameters
    ----------
    value : int, Fraction or Cyclotomic, optional
        Rational value to embed.  Defaults to zero.

    Notes
    -----
    Use :meth:`from_coefficients` to build a general element from its 24
    power-basis coefficients.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, value: Scalar = 0):
        if isinstance(value, Cyclotomic):
            self._num, self._den = value._num, value._den
        else:
            q = Fraction(value)
            self._num = (q.numerator,) + (0,) * (DEGREE - 1)
            self._den = q.denominator
        self._hash = None

    @classmethod
    def _raw(cls, num: Sequence[int], den: int) -> "Cyclotomic":
        """Build from an integer numerator vector, normalizing by the gcd."""
        if den < 0:
            num = [-v for v in num]
            den = -den
        g = 1 if den == 1 else math.gcd(den, *num)
        if not any(num):
            num, den = (0,) * DEGREE, 1
        elif g != 1:
            num = tuple(v // g for v in num)
            den //= g
        else:
            num = tuple(num)
        obj = object.__new__(cls)
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Scalar]) -> "Cyclotomic":
        """Build the element ``sum_k coeffs[k] * z**k``.

        Any number of coefficients is accepted; powers at or above 24 are
        reduced modulo the cyclotomic polynomial.
        """
        fr = [Fraction(c) for c in coeffs]
        if not fr:
            return ZERO
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
        num = [f.numerator * (den // f.denominator) for f in fr]
        return cls._raw(_reduce_poly(num), den)

    # ------------------------------------------------------------------
    # accessors
    @property
    def coefficients(self) -> tuple:
        """The 24 power-basis coefficients as Fractions."""
        return tuple(Fraction(v, self._den) for v in self._num)

    @property
    def numerators(self) -> tuple:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        """Return the value as a Fraction; raises ValueError if irrational."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def to_complex(self) -> complex:
        return complex(sum(v * _ZPOW_COMPLEX[k] for k, v in enumerate(self._num) if v) / self._den)

    def __complex__(self) -> complex:
        return self.to_complex()

    # ------------------------------------------------------------------
    # ring operations
    def __add__(self, other: Scalar) -> "Cyclotomic":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._den == o._den:
            return Cyclotomic._raw([a + b for a, b in zip(self._num, o._num)], self._den)
        da, db = self._den, o._den
        return Cyclotomic._raw([a * db + b * da for a, b in zip(self._num, o._num)], da * db)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        obj = object.__new__(Cyclotomic)
        obj._num = tuple(-v for v in self._num)
        obj._den = self._den
        obj._hash = None
        return obj

    def __pos__(self) -> "Cyclotomic":
        return self

    def __sub__(self, other: Scalar) -> "Cyclotomic":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "Cyclotomic":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Scalar) -> "Cyclotomic":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._num, o._num
        # rational fast paths
        if not any(b[1:]):
            s = b[0]
            return Cyclotomic._raw([v * s for v in a], self._den * o._den)
        if not any(a[1:]):
            s = a[0]
            return Cyclotomic._raw([v * s for v in b], self._den * o._den)
        nza = [(i, v) for i, v in enumerate(a) if v]
        nzb = [(j, w) for j, w in enumerate(b) if w]
        c = [0] * (2 * DEGREE - 1)
        for i, v in nza:
            for j, w in nzb:
                c[i + j] += v * w
        return Cyclotomic._raw(_reduce_poly(c), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Cyclotomic":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "Cyclotomic":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "Cyclotomic":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, k: int) -> "Cyclotomic":
        """Apply the automorphism ``z -> z**k`` for ``k`` coprime to 72."""
        k %= ORDER
        if math.gcd(k, ORDER) != 1:
            raise ValueError(f"{k} is not a unit modulo {ORDER}")
        c = [0] * DEGREE
        for j, v in enumerate(self._num):
            if v:
                for t, w in _POW_SPARSE[(j * k) % ORDER]:
                    c[t] += v * w
        return Cyclotomic._raw(c, self._den)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugate, the automorphism ``z -> z**-1``."""
        if self.is_rational():
            return self
        return self.galois(-1)

    def norm_squared(self) -> "Cyclotomic":
        """``self * conjugate(self)``, a real element of the field."""
        return self * self.conjugate()

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the product of Galois conjugates.

        Raises
        ------
        ZeroDivisionError
            If the element is zero.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_72)")
        if self.is_rational():
            return Cyclotomic._raw((self._den,) + (0,) * (DEGREE - 1), self._num[0])
        partial = ONE
        for k in _UNITS[1:]:
            partial = partial * self.galois(k)
        norm = (self * partial).to_fraction()
        return partial * Cyclotomic(1 / norm)

    # ------------------------------------------------------------------
    # comparison and hashing
    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyclotomic):
            return self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ------------------------------------------------------------------
    # text form
    def serialize(self) -> str:
        """Canonical text ``a0 + a1*z + ... + a23*z^23`` (zero terms dropped)."""
        terms = []
        for k, v in enumerate(self._num):
            if not v:
                continue
            q = Fraction(v, self._den)
            coef = str(q)
            if k == 0:
                terms.append(coef)
            elif k == 1:
                terms.append(f"{coef}*z")
            else:
                terms.append(f"{coef}*z^{k}")
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.serialize()

    def __repr__(self) -> str:
        return f"Cyclotomic({self.serialize()!r})"


_TERM_RE = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*(?:\*\s*z(?:\^(\d+))?)?\s*$")


def parse(text: str) -> Cyclotomic:
    """Inverse of :meth:`Cyclotomic.serialize`.

    Terms are separated by ``+``; each term is ``p``, ``p/q``, ``p/q*z`` or
    ``p/q*z^k``.  Exponents of any size are accepted and reduced.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty cyclotomic literal")
    coeffs: dict[int, Fraction] = {}
    for part in text.split(" + "):
        m = _TERM_RE.match(part)
        if not m:
            raise ValueError(f"cannot parse term {part!r} in {text!r}")
        q = Fraction(m.group(1))
        if "z" in part:
            k = int(m.group(2)) if m.group(2) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, Fraction(0)) + q
    top = max(coeffs)
    return Cyclotomic.from_coefficients([coeffs.get(k, 0) for k in range(top + 1)])


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic(x)
    return NotImplemented


def as_cyclotomic(x: Scalar) -> Cyclotomic:
    """Convert an int, Fraction or Cyclotomic to a Cyclotomic."""
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Cyclotomic")
    return c


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """Return ``exp(2 pi i k / n)`` exactly.

    Raises
    ------
    ValueError
        If ``n`` does not divide 72.
    """
    if n <= 0 or ORDER % n:
        raise ValueError(f"root_of_unity: n={n} does not divide {ORDER}")
    e = (k * (ORDER // n)) % ORDER
    return Cyclotomic._raw(_POW[e], 1)


_ZPOW_COMPLEX = tuple(complex(math.cos(2 * math.pi * k / ORDER), math.sin(2 * math.pi * k / ORDER)) for k in range(DEGREE))

ZERO = Cyclotomic(0)
ONE = Cyclotomic(1)
ZETA = root_of_unity(72, 1)
OMEGA = root_of_unity(3, 1)
I = root_of_unity(4, 1)
_ZETA8 = root_of_unity(8, 1)
SQRT2 = _ZETA8 + _ZETA8.conjugate()
SQRT3 = -I * (2 * OMEGA + 1)
SQRT6 = SQRT2 * SQRT3
TAU = root_of_unity(18, -1)


# ----------------------------------------------------------------------
# nested-list matrix helpers

def mat_identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[Cyclotomic]], b: Sequence[Sequence[Cyclotomic]]) -> list:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = ZERO
            for t in range(k):
                x = ai[t]
                if x:
                    y = b[t][j]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


def mat_adjoint(a: Sequence[Sequence[Cyclotomic]]) -> list:
    if not a:
        return []
    return [[a[i][j].conjugate() for i in range(len(a))] for j in range(len(a[0]))]


def mat_equal(a, b) -> bool:
    return len(a) == len(b) and all(list(r) == list(s) for r, s in zip(a, b))


def mat_det(a: Sequence[Sequence[Cyclotomic]]) -> Cyclotomic:
    """Determinant by Gaussian elimination over the field."""
    m = [list(r) for r in a]
    n = len(m)
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        pinv = p.inverse()
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f * pinv
                m[r] = [x - f * y if y else x for x, y in zip(m[r], m[col])]
    return det


def nullspace(rows: Sequence[dict], ncols: int) -> list:
    """Exact nullspace of a sparse linear system over the field.

    Parameters
    ----------
    rows : sequence of dict
        Each row maps a column index to a nonzero Cyclotomic coefficient.
    ncols : int
        Number of unknowns.

    Returns
    -------
    list of dict
        A basis of the solution space, each vector as a sparse dict.
    """
    pivots: dict[int, dict] = {}  # pivot column -> normalized row (pivot entry 1)
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        # eliminate existing pivots
        changed = True
        while r and changed:
            changed = False
            for c in sorted(r):
                if c in pivots:
                    f = r[c]
                    for k, v in pivots[c].items():
                        nv = r.get(k, ZERO) - f * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
                    changed = True
                    break
        if not r:
            continue
        c0 = min(r)
        inv = r[c0].inverse()
        r = {k: v * inv for k, v in r.items()}
        # keep the pivot table reduced
        for pc, prow in pivots.items():
            if c0 in prow:
                f = prow[c0]
                for k, v in r.items():
                    nv = prow.get(k, ZERO) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[c0] = r
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = {fcol: ONE}
        for pc, prow in pivots.items():
            v = prow.get(fcol)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


# ----------------------------------------------------------------------
# numpy-backed dense matrices for group work

_SAFE = 1 << 30


class ExactMatrix:
    """Dense exact matrix over Q(zeta_72) for fast products and hashing.

    Parameters
    ----------
    num : numpy.ndarray
        Integer array of shape ``(rows, cols, 24)`` holding numerators.
    den : int
        Positive common denominator.

    Notes
    -----
    The pair ``(num, den)`` is normalized by the gcd of all entries, so
    :meth:`key` is a canonical byte string suitable for hash sets.
    """

    __slots__ = ("num", "den", "_key")

    def __init__(self, num: np.ndarray, den: int = 1):
        if num.dtype != object and np.abs(num).max(initial=0) >= _SAFE:
            num = num.astype(object)
        g = int(np.gcd.reduce(num.ravel())) if num.size else 0
        g = math.gcd(g, den)
        if g > 1:
            num = num // g
            den //= g
        if num.dtype == object and np.abs(num).max(initial=0) < _SAFE:
            num = num.astype(np.int64)
        self.num = num
        self.den = int(den)
        self._key = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "ExactMatrix":
        cells = [[as_cyclotomic(x) for x in r] for r in rows]
        n, m = len(cells), len(cells[0]) if cells else 0
        den = 1
        for r in cells:
            for x in r:
                den = den * x.denominator // math.gcd(den, x.denominator)
        big = den >= _SAFE or any(abs(v) * (den // x.denominator) >= _SAFE for r in cells for x in r for v in x.numerators)
        arr = np.zeros((n, m, DEGREE), dtype=object if big else np.int64)
        for i, r in enumerate(cells):
            for j, x in enumerate(r):
                s = den // x.denominator
                arr[i, j, :] = [v * s for v in x.numerators]
        return cls(arr, den)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        arr = np.zeros((n, n, DEGREE), dtype=np.int64)
        arr[np.arange(n), np.arange(n), 0] = 1
        return cls(arr, 1)

    @property
    def shape(self) -> tuple:
        return self.num.shape[:2]

    def entry(self, i: int, j: int) -> Cyclotomic:
        return Cyclotomic._raw([int(v) for v in self.num[i, j]], self.den)

    def to_rows(self) -> list:
        n, m = self.shape
        return [[self.entry(i, j) for j in range(m)] for i in range(n)]

    def key(self) -> bytes:
        if self._key is None:
            arr = self.num if self.num.dtype != object else self.num.astype(str)
            self._key = str(self.den).encode() + b"|" + np.ascontiguousarray(arr).tobytes()
        return self._key

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.den == other.den and self.num.shape == other.num.shape and bool(np.array_equal(self.num, other.num))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        a, b = self.num, other.num
        if a.dtype == object or b.dtype == object or (
            np.abs(a).max(initial=0) * np.abs(b).max(initial=0) * a.shape[1] * DEGREE >= (1 << 62)
        ):
            a = a.astype(object)
            b = b.astype(object)
        n, k, m = a.shape[0], a.shape[1], b.shape[1]
        out = np.zeros((n, m, 2 * DEGREE - 1), dtype=a.dtype)
        ka = [t for t in range(DEGREE) if a[:, :, t].any()]
        kb = [t for t in range(DEGREE) if b[:, :, t].any()]
        for s in ka:
            As = a[:, :, s]
            for t in kb:
                out[:, :, s + t] += As @ b[:, :, t]
        for d in range(2 * DEGREE - 2, DEGREE - 1, -1):
            v = out[:, :, d]
            if v.any():
                out[:, :, d - 12] += v
                out[:, :, d - 24] -= v
        return ExactMatrix(out[:, :, :DEGREE].copy(), self.den * other.den)

    def scale(self, c: Scalar) -> "ExactMatrix":
        """Multiply every entry by the scalar ``c``."""
        return _scale(self, ExactMatrix.from_rows([[c]]))

    def adjoint(self) -> "ExactMatrix":
        # conjugation permutes and signs the power basis: apply z -> z**-1
        n, m = self.shape
        out = np.zeros((m, n, DEGREE), dtype=self.num.dtype)
        src = np.transpose(self.num, (1, 0, 2))
        for j in range(DEGREE):
            col = src[:, :, j]
            if col.any():
                for t, w in _POW_SPARSE[(-j) % ORDER]:
                    out[:, :, t] += w * col
        return ExactMatrix(out, self.den)

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and self == ExactMatrix.identity(n)

    def is_scalar(self) -> bool:
        n, m = self.shape
        if n != m:
            return False
        d = self.num[0, 0]
        for i in range(n):
            for j in range(n):
                if i == j:
                    if not np.array_equal(self.num[i, i], d):
                        return False
                elif self.num[i, j].any():
                    return False
        return True

    def __repr__(self) -> str:
        return f"ExactMatrix(shape={self.shape}, den={self.den})"


def _scale(mat: ExactMatrix, c: ExactMatrix) -> ExactMatrix:
    n, m = mat.shape
    flat = ExactMatrix(mat.num.reshape(n * m, 1, DEGREE), mat.den)
    prod = flat @ c
    return ExactMatrix(prod.num.reshape(n, m, DEGREE), prod.den)
