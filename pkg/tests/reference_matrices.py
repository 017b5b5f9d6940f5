"""Reference generator matrices for the ten four-strand representations.

Each entry maps ``(m, z)`` to ``(sigma_1, sigma_2, sigma_3)`` written over
the paired-shape basis in ``fusion_space.PRINTED_ORDERS`` order.  Sector
matrices are listed separately with the spanning vectors they refer to.
"""
from fractions import Fraction as Fr

from anyonkit.exact_arith import I, OMEGA, SQRT2, SQRT3, SQRT6, TAU, Cyclotomic

W = OMEGA
W2 = OMEGA * OMEGA
H = Fr(1, 2)


def _m(rows, c=1):
    return [[Cyclotomic(c) * Cyclotomic(x) if not isinstance(x, Cyclotomic) else Cyclotomic(c) * x for x in r] for r in rows]


def _diag(*xs, c=1):
    n = len(xs)
    return _m([[xs[i] if i == j else 0 for j in range(n)] for i in range(n)], c)


def _ca():
    s1 = _diag(-1, 1, -1)
    s2 = _m([[1, -1, SQRT2], [-1, 1, SQRT2], [SQRT2, SQRT2, 0]], Fr(-1, 2))
    return s1, s2, s1


def _cb():
    s1 = _diag(-1, -1, 1)
    s2 = _m([[0, -SQRT2, -SQRT2], [-SQRT2, 1, -1], [-SQRT2, -1, 1]], Fr(-1, 2))
    s3 = _diag(-1, 1, -1)
    return s1, s2, s3


def _cc():
    s1 = _diag(1, 1, 1, -1, 1)
    s2 = _m(
        [
            [1, 0, 0, 0, 0],
            [0, 1, 1, 1, -1],
            [0, 1, 1, -1, 1],
            [0, 1, -1, 1, 1],
            [0, -1, 1, 1, 1],
        ],
        H,
    )
    s3 = _diag(1, 1, 1, 1, -1)
    return s1, s2, s3


def _da():
    s1 = _diag(1, W2, 1, 1, W)
    a = SQRT2 + SQRT6 * I
    b = -SQRT2 + SQRT6 * I
    p = 1 + SQRT3 * I
    q = 1 - SQRT3 * I
    s2 = _m(
        [
            [2, a, 2 * SQRT2, 2 * SQRT2, -a],
            [b, p, q, q, 4],
            [2 * SQRT2, q, 4, -2, p],
            [2 * SQRT2, q, -2, 4, p],
            [-a, 4, p, p, q],
        ],
        Fr(1, 6),
    )
    return s1, s2, s1


def _db():
    s1 = _diag(W2, 1, 1, W)
    u = 3 - SQRT3 * I
    v = 3 + SQRT3 * I
    s2 = _m(
        [
            [u, v, v, 0],
            [v, 0, -2 * SQRT3, -u],
            [v, -2 * SQRT3, 0, u],
            [0, -u, u, v],
        ],
        Fr(1, 6),
    )
    return s1, s2, s1


def _df():
    s1 = _diag(1, 1, 1, W2, 1, W2, W, 1, W)
    s3 = _diag(1, 1, 1, 1, W2, W, W2, W, 1)
    s2 = _m(
        [
            [1, 1, 1, W2, W2, 1, 1, W, W],
            [1, 1, 1, W, 1, W, W2, 1, W2],
            [1, 1, 1, 1, W, W2, W, W2, 1],
            [W2, W, 1, 1, W2, W, 1, 1, 1],
            [W2, 1, W, W2, 1, 1, W, 1, 1],
            [1, W, W2, W, 1, 1, 1, W2, 1],
            [1, W2, W, 1, W, 1, 1, 1, W2],
            [W, 1, W2, 1, 1, W2, 1, 1, W],
            [W, W2, 1, 1, 1, 1, W2, W, 1],
        ],
        Fr(1, 3),
    )
    return s1, s2, s3


def _dg():
    s1 = _diag(W2, 1, W2, 1, 1, 1, W, 1, W)
    s3 = _diag(W2, W2, 1, 1, 1, W, 1, W, 1)
    s2 = _m(
        [
            [1, W, W, W2, W2, 1, 1, 1, 1],
            [W, 1, W, 1, 1, 1, W2, 1, W2],
            [W, W, 1, 1, 1, W2, 1, W2, 1],
            [W2, 1, 1, 1, W2, 1, W, W, 1],
            [W2, 1, 1, W2, 1, W, 1, 1, W],
            [1, 1, W2, 1, W, 1, 1, W2, W],
            [1, W2, 1, W, 1, 1, 1, W, W2],
            [1, 1, W2, W, 1, W2, W, 1, 1],
            [1, W2, 1, 1, W, W, W2, 1, 1],
        ],
        Fr(1, 3),
    )
    return s1, s2, s3


def _ga():
    s1 = _diag(W2, -W2, W, c=TAU)
    r = SQRT2 / 2
    s2 = _m([[H * W, -H * W, r * W2], [-H * W, H * W, r * W2], [r * W2, r * W2, 0]], TAU)
    return s1, s2, s1


def _gb():
    s1 = _diag(W, W2, -W2, c=TAU)
    s3 = _diag(W, -W2, W2, c=TAU)
    r = SQRT2 / 2
    s2 = _m([[0, -r * W2, -r * W2], [-r * W2, H * W, -H * W], [-r * W2, -H * W, H * W]], TAU)
    return s1, s2, s3


def _gg():
    s1 = _diag(W, W2, W, -W2, W)
    s3 = _diag(W, W, W2, W, -W2)
    s2 = _m(
        [
            [W, 0, 0, 0, 0],
            [0, H * W, H * W2, H * W, -H * W2],
            [0, H * W2, H * W, -H * W2, H * W],
            [0, H * W, -H * W2, H * W, H * W2],
            [0, -H * W2, H * W, H * W2, H * W],
        ]
    )
    return s1, s2, s3


PRINTED = {
    ("C", "A"): _ca(),
    ("C", "B"): _cb(),
    ("C", "C"): _cc(),
    ("D", "A"): _da(),
    ("D", "B"): _db(),
    ("D", "F"): _df(),
    ("D", "G"): _dg(),
    ("G", "A"): _ga(),
    ("G", "B"): _gb(),
    ("G", "G"): _gg(),
}

# coordinates over the printed basis of vectors spanning a sector, with the
# sector generator matrices printed for that spanning set
R2 = SQRT2 / 2
SECTORS = {
    ("C", "A"): (
        [[0, 1, 0], [SQRT3 / 3, 0, -SQRT6 / 3]],
        (_diag(1, -1, c=I), _m([[-1, -SQRT3], [-SQRT3, 1]], I / 2), _diag(1, -1, c=I)),
    ),
    ("C", "C"): (
        [[0, R2, -R2, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
        (
            _diag(-1, 1, -1),
            _m([[0, SQRT2, -SQRT2], [SQRT2, 1, 1], [-SQRT2, 1, 1]], Fr(-1, 2)),
            _diag(-1, -1, 1),
        ),
    ),
    ("D", "A"): (
        [[0, 1, 0, 0, 0], [0, 0, 0, 0, 1], [-R2, 0, H, H, 0]],
        (
            _diag(W2, W, 1),
            _m(
                [
                    [1 + SQRT3 * I, 4, 2 - 2 * SQRT3 * I],
                    [4, 1 - SQRT3 * I, 2 + 2 * SQRT3 * I],
                    [2 - 2 * SQRT3 * I, 2 + 2 * SQRT3 * I, -2],
                ],
                Fr(1, 6),
            ),
            _diag(W2, W, 1),
        ),
    ),
    ("D", "B"): (
        [[1, 0, 0, 0], [0, R2, R2, 0]],
        (
            _diag(W, W2),
            _m(
                [
                    [Fr(-1, 2) - SQRT3 * I / 6, -SQRT6 * I / 3],
                    [-SQRT6 * I / 3, Fr(-1, 2) + SQRT3 * I / 6],
                ]
            ),
            _diag(W, W2),
        ),
    ),
    ("D", "G"): (
        [
            [0, 0, 0, R2, -R2, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, -R2, 0, R2, 0],
            [0, 0, 0, 0, 0, 0, R2, 0, -R2],
        ],
        (
            _diag(1, 1, W),
            _m(
                [
                    [H + SQRT3 * I / 6, -H + SQRT3 * I / 6, -H + SQRT3 * I / 6],
                    [-H + SQRT3 * I / 6, H + SQRT3 * I / 6, -H + SQRT3 * I / 6],
                    [-H + SQRT3 * I / 6, -H + SQRT3 * I / 6, H + SQRT3 * I / 6],
                ]
            ),
            _diag(1, W, 1),
        ),
    ),
}

# second (D,B) sector shares the first sector's matrices
DB_SECOND_SECTOR = [[0, 0, 0, 1], [0, R2, -R2, 0]]

CONJUGATOR_GB = _m([[0, 0, 1], [R2, -R2, 0], [R2, R2, 0]])

# Entries of the listings above that are not unitary as printed, with the
# value a unitary matrix needs there: (generator index, row, col) -> value.
CORRECTIONS = {
    ("C", "C"): {(1, 0, 0): Cyclotomic(1)},
    ("D", "A"): {(1, 0, 1): (-SQRT2 + SQRT6 * I) / 6},
    ("D", "B"): {(1, 1, 2): -SQRT3 * I / 3, (1, 2, 1): -SQRT3 * I / 3},
}


def corrected(key):
    """The listing for ``key`` with :data:`CORRECTIONS` applied."""
    mats = [[list(r) for r in g] for g in PRINTED[key]]
    for (k, i, j), v in CORRECTIONS.get(key, {}).items():
        mats[k][i][j] = v
    return mats
