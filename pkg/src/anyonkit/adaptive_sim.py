"""Adaptive protocols: braids and gates interleaved with projective measurements.

A :class:`ProtocolProgram` is a finite instruction tree.  :func:`run_exact`
expands every measurement outcome into a :class:`BranchTree` whose nodes
carry exact (unnormalized) states; the squared norm of a node's state is the
probability of reaching it.  :func:`run_sampled` draws outcomes from the
same tree with one reproducible random substream per trial.

States live on one of three kinds of basis:

* the nine-dimensional ``V_G^{DDDD}`` fusion basis (single qutrit procedures),
* the eight-leaf two-branch basis (ancilla plus one qutrit),
* a :class:`QuditBasis` of plain computational registers (circuit-level constructions).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .braid_engine import evaluate
from .exact_arith import ONE, OMEGA, SQRT2, SQRT3, ZERO, Cyclotomic, Scalar, as_cyclotomic
from .fusion_space import FusionBasis, SparseOp, StateVector, printed_basis
from .qutrit_models import (
    ENCODING_LABELS,
    BraidCircuit,
    TwoQutritSpace,
    _dg_generators,
    encoding_basis,
    reference_gates,
    two_qutrit_space,
)

__all__ = [
    "QuditBasis",
    "qudit_state",
    "qudit_gate",
    "MeasurementSpec",
    "Outcome",
    "measure",
    "field_sqrt",
    "Apply",
    "Measure",
    "Terminal",
    "Loop",
    "ProtocolProgram",
    "BranchNode",
    "BranchTree",
    "run_exact",
    "run_merged",
    "run_sampled",
    "SampleReport",
    "AncillaState",
    "ancilla",
    "proportionality",
    "single_qutrit_ops",
    "procedure",
    "braid_R",
    "P_WORD",
    "Q_WORD",
    "R_WORD",
    "check_braid_R",
    "EncodingSwap",
    "PrepareLocal",
    "SHORT_NAMES",
    "sigma_x_initial",
    "toffoli_initial",
    "ProtocolEntry",
    "protocol_library",
    "verify_alpha_recursion",
    "as_probability",
]


# ----------------------------------------------------------------------
# plain qudit registers

@dataclass(frozen=True)
class QuditBasis:
    """Computational basis of a register of qudits, last qudit fastest."""

    dims: tuple

    def __len__(self) -> int:
        return math.prod(self.dims)

    def digits(self, i: int) -> tuple:
        out = []
        for d in reversed(self.dims):
            out.append(i % d)
            i //= d
        return tuple(reversed(out))

    def index(self, digits: Sequence[int]) -> int:
        i = 0
        for d, x in zip(self.dims, digits):
            i = i * d + x
        return i

    def names(self) -> list:
        return ["".join(str(x) for x in self.digits(i)) for i in range(len(self))]

    def labels(self, i: int) -> tuple:
        return tuple(str(x) for x in self.digits(i))


def qudit_state(basis: QuditBasis, terms: Mapping[str, Scalar]) -> StateVector:
    """State from ``{"01": c, ...}`` keyed by digit strings."""
    amps = [ZERO] * len(basis)
    for name, c in terms.items():
        amps[basis.index([int(ch) for ch in name])] += as_cyclotomic(c)
    return StateVector(basis, amps)


def qudit_gate(basis: QuditBasis, matrix: Sequence[Sequence[Scalar]], targets: Sequence[int]) -> SparseOp:
    """Embed a gate on the qudits ``targets`` (in that order) into the register."""
    targets = list(targets)
    local = QuditBasis(tuple(basis.dims[t] for t in targets))
    if len(matrix) != len(local):
        raise ValueError("gate size does not match its target qudits")
    m = [[as_cyclotomic(x) for x in row] for row in matrix]
    cols = []
    for j in range(len(basis)):
        d = list(basis.digits(j))
        lj = local.index([d[t] for t in targets])
        col = {}
        for li in range(len(local)):
            v = m[li][lj]
            if v:
                ld = local.digits(li)
                e = list(d)
                for t, x in zip(targets, ld):
                    e[t] = x
                col[basis.index(e)] = v
        cols.append(col)
    return SparseOp(basis, basis, cols)


# ----------------------------------------------------------------------
# local structure of a basis: (rest, local) split per element

@lru_cache(maxsize=None)
def _split(basis, part) -> tuple:
    """Per element ``(rest_key, local_key)`` for the chosen part of the basis.

    ``part`` is ``None`` (the whole space, local key = element index), a qudit
    index for a :class:`QuditBasis`, or a branch number ``1``/``2`` for the
    eight-leaf two-branch basis (labels ``b x y`` of that branch).
    """
    out = []
    for i in range(len(basis)):
        if part is None:
            out.append(((), i))
        elif isinstance(basis, QuditBasis):
            lab = tuple(basis.labels(i))
            out.append((lab[:part] + lab[part + 1 :], lab[part]))
        else:
            name = "".join(_labels(basis)[i])
            lo, hi = 3 * (part - 1), 3 * part
            out.append((name[:lo] + name[hi:], name[lo:hi]))
    index = {k: i for i, k in enumerate(out)}
    return tuple(out), index


@lru_cache(maxsize=None)
def _labels(basis) -> tuple:
    return tuple(tuple(basis.labels(i)) for i in range(len(basis)))


def _groups(state: StateVector, part) -> dict:
    keys, _ = _split(state.basis, part)
    groups: dict = {}
    for i, a in enumerate(state.amps):
        if a:
            rest, loc = keys[i]
            groups.setdefault(rest, {})[loc] = a
    return groups


def _rebuild(basis, part, groups: Mapping) -> StateVector:
    _, index = _split(basis, part)
    amps = [ZERO] * len(basis)
    for rest, vec in groups.items():
        for loc, a in vec.items():
            if a:
                amps[index[(rest, loc)]] = a
    return StateVector(basis, amps)


def _local_project(state: StateVector, part, vectors: Sequence[Mapping]) -> StateVector:
    groups = {}
    for rest, vec in _groups(state, part).items():
        out: dict = {}
        for u in vectors:
            c = ZERO
            for loc, a in vec.items():
                ua = u.get(loc)
                if ua:
                    c = c + ua.conjugate() * a
            if c:
                for loc, ua in u.items():
                    out[loc] = out.get(loc, ZERO) + c * ua
        groups[rest] = out
    return _rebuild(state.basis, part, groups)


def _as_local(vectors, part) -> tuple:
    out = []
    for v in vectors:
        if isinstance(v, StateVector):
            if part is not None:
                raise ValueError("full-space vectors need part=None")
            out.append({i: a for i, a in v.support().items()})
        else:
            out.append({k: as_cyclotomic(a) for k, a in v.items()})
    return tuple(out)


# ----------------------------------------------------------------------
# measurements

@dataclass(frozen=True)
class MeasurementSpec:
    """A projective measurement.

    Attributes
    ----------
    kind : str
        ``"pair_charge_A"`` (is the charge at label position ``target`` trivial),
        ``"subspace"`` (project onto ``span(target vectors)`` or its complement),
        ``"computational_zero"`` (qudit ``target`` in ``|0>`` or not) or
        ``"computational"`` (full standard-basis readout of qudit ``target``).
    target : object
        Label position, qudit index, or a tuple of orthonormal local vectors.
    part : object
        For ``"subspace"``: which part of the basis the vectors live on.
    outcomes : tuple of str
        Names of the outcomes, in projector order.
    """

    kind: str
    target: object
    part: object = None
    outcomes: tuple = ()

    @classmethod
    def pair_charge_A(cls, position: int = 0) -> "MeasurementSpec":
        return cls("pair_charge_A", position, None, ("A", "not_A"))

    @classmethod
    def subspace(cls, vectors, part=None, names: tuple = ("S", "S_perp")) -> "MeasurementSpec":
        return cls("subspace", _as_local(vectors, part), part, tuple(names))

    @classmethod
    def computational_zero(cls, qudit: int = 0) -> "MeasurementSpec":
        return cls("computational_zero", qudit, qudit, ("0", "not_0"))

    @classmethod
    def computational(cls, qudit: int, dim: int = 3) -> "MeasurementSpec":
        return cls("computational", qudit, qudit, tuple(str(k) for k in range(dim)))

    def project(self, state: StateVector) -> list:
        """Unnormalized projections ``[(outcome, Pi state), ...]``, all outcomes."""
        if self.kind == "pair_charge_A":
            pos = self.target
            labels = _labels(state.basis)
            hit = [a if labels[i][pos] == "A" else ZERO for i, a in enumerate(state.amps)]
            miss = [ZERO if labels[i][pos] == "A" else a for i, a in enumerate(state.amps)]
            return [("A", StateVector(state.basis, hit)), ("not_A", StateVector(state.basis, miss))]
        if self.kind == "subspace":
            inside = _local_project(state, self.part, self.target)
            return [(self.outcomes[0], inside), (self.outcomes[1], state - inside)]
        if self.kind == "computational_zero":
            inside = _local_project(state, self.target, ({"0": ONE},))
            return [("0", inside), ("not_0", state - inside)]
        if self.kind == "computational":
            return [
                (k, _local_project(state, self.target, ({k: ONE},)))
                for k in self.outcomes
            ]
        raise ValueError(f"unknown measurement kind {self.kind!r}")


def field_sqrt(p) -> Cyclotomic | None:
    """Exact square root of a nonnegative rational inside the field, or ``None``.

    Succeeds when ``p * k`` is a rational square for some ``k`` in
    ``{1, 2, 3, 6}``.
    """
    p = Fraction(as_probability(p))
    if p < 0:
        return None
    for k, root in ((1, ONE), (2, SQRT2), (3, SQRT3), (6, SQRT2 * SQRT3)):
        q = p * k
        n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if n * n == q.numerator and d * d == q.denominator:
            return Cyclotomic(Fraction(n, d)) / root
    return None


def as_probability(x):
    """A real probability as a ``Fraction`` when it is rational, else unchanged."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    x = as_cyclotomic(x)
    return x.to_fraction() if x.is_rational() else x


@dataclass
class Outcome:
    label: str
    probability: object
    state: StateVector

    def normalized(self) -> StateVector:
        """Post-measurement state scaled to unit norm.

        Raises
        ------
        ValueError
            If the square root of the squared norm is outside the field.
        """
        n2 = as_probability(self.state.norm_squared())
        r = field_sqrt(n2) if isinstance(n2, Fraction) else None
        if r is None:
            raise ValueError(f"sqrt({n2}) is not in the field")
        return self.state.scaled(r.inverse())


def measure(state: StateVector, spec: MeasurementSpec) -> list:
    """Born-rule outcomes ``[Outcome(label, probability, state), ...]``.

    Zero-probability outcomes are dropped.  Probabilities are relative to
    the squared norm of ``state``; states are the projected vectors, with
    :meth:`Outcome.normalized` giving the renormalized version.

    Raises
    ------
    ValueError
        If ``state`` is the zero vector.
    """
    total = state.norm_squared()
    if total.is_zero():
        raise ValueError("cannot measure the zero vector")
    out = []
    for label, vec in spec.project(state):
        p = vec.norm_squared()
        if not p.is_zero():
            out.append(Outcome(label, as_probability(p / total), vec))
    return out


def proportionality(state: StateVector, target: StateVector):
    """The scalar ``c`` with ``state == c * target``, or ``None``."""
    c = None
    for i, t in enumerate(target.amps):
        if t:
            c = state.amps[i] / t
            break
    if c is None:
        return None
    return c if state == target.scaled(c) else None


# ----------------------------------------------------------------------
# programs

@dataclass(frozen=True)
class Apply:
    """Apply a linear map (anything with ``apply``)."""

    gate: object
    name: str = ""


@dataclass(frozen=True)
class Measure:
    """Measure and continue with the branch named by the outcome."""

    spec: MeasurementSpec
    branches: Mapping

    def __post_init__(self):
        missing = set(self.spec.outcomes) - set(self.branches)
        if missing:
            raise ValueError(f"measurement branches missing for outcomes {sorted(missing)}")


@dataclass(frozen=True)
class Terminal:
    label: str


@dataclass(frozen=True)
class Loop:
    """Run ``procedures[start]``; a terminal label found in ``next`` starts that
    procedure, any other label ends the loop.  After ``max_iter`` procedures
    a label still in ``next`` ends as ``residual``."""

    procedures: Mapping
    start: str
    next: Mapping
    max_iter: int
    residual: str = "residual"

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("loops need max_iter >= 1")
        for target in self.next.values():
            if target not in self.procedures:
                raise ValueError(f"loop continues into unknown procedure {target!r}")


@dataclass(frozen=True)
class ProtocolProgram:
    name: str
    instructions: tuple

    def labels(self) -> set:
        """Terminal labels reachable syntactically."""
        found: set = set()

        def walk(instrs):
            for ins in instrs:
                if isinstance(ins, Terminal):
                    found.add(ins.label)
                elif isinstance(ins, Measure):
                    for b in ins.branches.values():
                        walk(b)
                elif isinstance(ins, Loop):
                    for p in ins.procedures.values():
                        inner = ProtocolProgram("", tuple(p.instructions if isinstance(p, ProtocolProgram) else p)).labels()
                        found.update(x for x in inner if x not in ins.next)
                    found.add(ins.residual)
            if not instrs or not isinstance(instrs[-1], (Terminal, Measure, Loop)):
                found.add("done")

        walk(self.instructions)
        return found


@dataclass
class BranchNode:
    """One segment of a run between measurements.

    ``state`` is unnormalized; ``prob`` is its squared norm relative to the
    initial state, i.e. the probability of this branch.
    """

    outcome: str
    state: StateVector
    prob: object
    ops: list = field(default_factory=list)
    children: list = field(default_factory=list)
    terminal: str | None = None

    @property
    def conditional(self) -> list:
        return [as_probability(as_cyclotomic(c.prob) / as_cyclotomic(self.prob)) for c in self.children]


class BranchTree:
    """Exact outcome tree of a program run."""

    def __init__(self, root: BranchNode, program: ProtocolProgram):
        self.root = root
        self.program = program

    def nodes(self):
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))

    def leaves(self) -> list:
        return [n for n in self.nodes() if n.terminal is not None]

    def terminal_distribution(self) -> dict:
        dist: dict = {}
        for leaf in self.leaves():
            dist[leaf.terminal] = dist.get(leaf.terminal, ZERO) + as_cyclotomic(leaf.prob)
        return {k: as_probability(v) for k, v in sorted(dist.items())}

    def probability(self, labels) -> object:
        labels = {labels} if isinstance(labels, str) else set(labels)
        total = ZERO
        for k, v in self.terminal_distribution().items():
            if k in labels:
                total = total + as_cyclotomic(v)
        return as_probability(total)

    def is_consistent(self) -> bool:
        """Children of every node carry exactly the node's probability."""
        for n in self.nodes():
            if n.children:
                s = ZERO
                for c in n.children:
                    s = s + as_cyclotomic(c.prob)
                if s != as_cyclotomic(n.prob):
                    return False
        total = ZERO
        for leaf in self.leaves():
            total = total + as_cyclotomic(leaf.prob)
        return total == as_cyclotomic(self.root.prob)

    def depth(self) -> int:
        def d(n):
            return 1 + max((d(c) for c in n.children), default=0) if n.children else 0

        return d(self.root)


def _body(p) -> tuple:
    return tuple(p.instructions) if isinstance(p, ProtocolProgram) else tuple(p)


def _exec(instrs: tuple, node: BranchNode, total: Cyclotomic, on_terminal: Callable) -> None:
    for k, ins in enumerate(instrs):
        if isinstance(ins, Apply):
            node.state = ins.gate.apply(node.state)
            node.ops.append(ins.name or type(ins.gate).__name__)
        elif isinstance(ins, Terminal):
            on_terminal(ins.label, node)
            return
        elif isinstance(ins, Measure):
            for label, vec in ins.spec.project(node.state):
                p = vec.norm_squared()
                if p.is_zero():
                    continue
                child = BranchNode(label, vec, as_probability(p / total))
                node.children.append(child)
                _exec(_body(ins.branches[label]), child, total, on_terminal)
            return
        elif isinstance(ins, Loop):
            rest = instrs[k + 1 :]
            _run_loop(ins, node, total, 0, ins.start, rest, on_terminal)
            return
        else:
            raise TypeError(f"unknown instruction {ins!r}")
    on_terminal("done", node)


def _run_loop(loop: Loop, node: BranchNode, total, it: int, proc: str, rest: tuple, outer: Callable) -> None:
    def finish(label: str, nd: BranchNode) -> None:
        if rest:
            _exec(rest, nd, total, lambda lab, n2: outer(lab if lab != "done" else label, n2))
        else:
            outer(label, nd)

    def on_terminal(label: str, nd: BranchNode) -> None:
        if label in loop.next:
            if it + 1 < loop.max_iter:
                _run_loop(loop, nd, total, it + 1, loop.next[label], rest, outer)
            else:
                finish(loop.residual, nd)
        else:
            finish(label, nd)

    _exec(_body(loop.procedures[proc]), node, total, on_terminal)


def run_exact(program: ProtocolProgram, initial: StateVector) -> BranchTree:
    """Expand every measurement outcome of ``program`` on ``initial``."""
    total = initial.norm_squared()
    if total.is_zero():
        raise ValueError("initial state is zero")
    root = BranchNode("root", initial, Fraction(1))

    def on_terminal(label: str, node: BranchNode) -> None:
        node.terminal = label

    _exec(tuple(program.instructions), root, total, on_terminal)
    return BranchTree(root, program)


def _direction(state: StateVector) -> tuple:
    """Key identifying ``state`` up to a nonzero scalar."""
    lead = next(a for a in state.amps if a)
    inv = lead.inverse()
    return tuple(a * inv if a else a for a in state.amps)


def _merge(items: list) -> list:
    groups: dict = {}
    for label, state, p in items:
        key = (label, _direction(state))
        if key in groups:
            groups[key][2] = groups[key][2] + as_cyclotomic(p)
        else:
            groups[key] = [label, state, as_cyclotomic(p)]
    return [(lab, s, as_probability(p)) for lab, s, p in groups.values()]


def _flow(instrs: tuple, state: StateVector, p) -> list:
    """``[(label, state, probability), ...]`` reached from one weighted state.

    States carry an arbitrary scale; probabilities are tracked separately.
    """
    for k, ins in enumerate(instrs):
        if isinstance(ins, Apply):
            state = ins.gate.apply(state)
        elif isinstance(ins, Terminal):
            return [(ins.label, state, p)]
        elif isinstance(ins, Measure):
            norm = state.norm_squared()
            out = []
            for label, vec in ins.spec.project(state):
                q = vec.norm_squared()
                if not q.is_zero():
                    out.extend(_flow(_body(ins.branches[label]), vec, as_probability(as_cyclotomic(p) * q / norm)))
            return out
        elif isinstance(ins, Loop):
            out = []
            for label, s, q in _flow_loop(ins, state, p):
                if k + 1 < len(instrs):
                    out.extend((lab if lab != "done" else label, s2, q2) for lab, s2, q2 in _flow(instrs[k + 1 :], s, q))
                else:
                    out.append((label, s, q))
            return out
        else:
            raise TypeError(f"unknown instruction {ins!r}")
    return [("done", state, p)]


def _flow_loop(loop: Loop, state: StateVector, p) -> list:
    frontier = [(loop.start, state, p)]
    done = []
    for it in range(loop.max_iter):
        reached = []
        for proc, s, q in frontier:
            reached.extend(_flow(_body(loop.procedures[proc]), s, q))
        frontier = []
        for label, s, q in _merge(reached):
            if label not in loop.next:
                done.append((label, s, q))
            elif it + 1 < loop.max_iter:
                frontier.append((loop.next[label], s, q))
            else:
                done.append((loop.residual, s, q))
        frontier = _merge(frontier)
    return _merge(done)


def run_merged(program: ProtocolProgram, initial: StateVector) -> dict:
    """Terminal distribution of ``program`` with equivalent branches merged.

    Gives the same distribution as ``run_exact(...).terminal_distribution()``
    but, at every loop iteration, branches entering the same procedure with
    proportional states are combined.  For repeat-until-success loops the
    cost then grows linearly with the iteration cap instead of
    exponentially.

    Returns
    -------
    dict
        ``label -> (probability, [states])``; the states are the distinct
        terminal states (up to scale) reached with that label.
    """
    if initial.norm_squared().is_zero():
        raise ValueError("initial state is zero")
    out: dict = {}
    for label, s, p in _merge(_flow(tuple(program.instructions), initial, Fraction(1))):
        prob, states = out.get(label, (ZERO, []))
        out[label] = (as_cyclotomic(prob) + as_cyclotomic(p), states + [s])
    return {k: (as_probability(v[0]), v[1]) for k, v in sorted(out.items())}


@dataclass
class SampleReport:
    trials: int
    seed: int
    counts: dict

    @property
    def frequencies(self) -> dict:
        return {k: v / self.trials for k, v in sorted(self.counts.items())}

    def frequency(self, labels) -> float:
        labels = {labels} if isinstance(labels, str) else set(labels)
        return sum(v for k, v in self.counts.items() if k in labels) / self.trials


def run_sampled(program: ProtocolProgram, initial: StateVector, seed: int, trials: int, tree: BranchTree | None = None) -> SampleReport:
    """Monte Carlo realization of ``program``.

    Trial ``t`` draws its uniforms from ``SeedSequence(seed, spawn_key=(t,))``,
    the same stream as the ``t``-th child of ``SeedSequence(seed).spawn``, so
    results depend only on ``(seed, t)``.  Each measurement picks a child with
    the exact conditional probabilities converted to floats.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    tree = tree or run_exact(program, initial)
    depth = max(tree.depth(), 1)
    # flatten the tree into arrays of float cumulative probabilities
    flat: list = []

    def build(n: BranchNode) -> int:
        idx = len(flat)
        flat.append(None)
        if n.children:
            kids = [build(c) for c in n.children]
            cond = np.array([float(complex(x).real) if not isinstance(x, Fraction) else float(x) for x in n.conditional])
            flat[idx] = (np.cumsum(cond / cond.sum()), kids)
        else:
            flat[idx] = n.terminal
        return idx

    build(tree.root)
    counts: dict = {}
    for t in range(trials):
        words = np.random.SeedSequence(seed, spawn_key=(t,)).generate_state(depth, dtype=np.uint64)
        us = (words >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)
        k, node = 0, 0
        while not isinstance(flat[node], str):
            cum, kids = flat[node]
            j = min(int(np.searchsorted(cum, us[k], side="right")), len(kids) - 1)
            node = kids[j]
            k += 1
        counts[flat[node]] = counts.get(flat[node], 0) + 1
    return SampleReport(trials, seed, counts)


# ----------------------------------------------------------------------
# ancillas

@dataclass(frozen=True)
class AncillaState:
    """A named local state: amplitudes over the local labels of one part."""

    name: str
    amplitudes: tuple

    def as_dict(self) -> dict:
        return dict(self.amplitudes)

    def norm_squared(self) -> Cyclotomic:
        total = ZERO
        for _, a in self.amplitudes:
            total = total + a.norm_squared()
        return total

    def is_unit(self) -> bool:
        return self.norm_squared() == ONE


def ancilla(name: str) -> AncillaState:
    """``H_A``, ``H_B`` (branch labels ``b x y``), ``psi``, ``i0..i2``, ``t0..t2`` (= ``h|i>``)."""
    r3 = SQRT3 / 3
    table = {
        "H_A": {"AHH": ONE},
        "H_B": {"BHH": ONE},
        "psi": {"0": r3, "1": -r3, "2": r3},
    }
    for i in range(3):
        table[f"i{i}"] = {str(i): ONE}
        table[f"t{i}"] = {str(j): r3 * OMEGA ** ((i * j) % 3) for j in range(3)}
    if name not in table:
        raise KeyError(f"unknown ancilla {name!r}")
    return AncillaState(name, tuple((k, as_cyclotomic(v)) for k, v in table[name].items()))


# ----------------------------------------------------------------------
# single-qutrit procedures on V_G^{DDDD}

@lru_cache(maxsize=2)
def single_qutrit_ops(model=None) -> dict:
    """``h'``, ``h'^-1`` and ``p^2 q^2 p^2`` as sparse maps on the printed ``(D,G)`` basis."""
    gens = _dg_generators(model)
    basis = printed_basis("D", "G", model=model)
    p = evaluate([1, 2, 1], gens)
    q = evaluate([3, 2, 3], gens)
    p2, q2 = p @ p, q @ q
    hp = q2 @ p @ q2
    mats = {"h_prime": hp, "h_prime_inv": hp.adjoint(), "p2q2p2": p2 @ q2 @ p2}
    return {k: SparseOp.from_rows(m.rows, basis) for k, m in mats.items()}


def _measure_U(model=None) -> MeasurementSpec:
    return MeasurementSpec.subspace(encoding_basis("U", model).states, None, ("U", "U_perp"))


def procedure(name: str, model=None) -> ProtocolProgram:
    """One round of ``P``, ``Q``, ``R`` or ``R_inv`` on ``V_G^{DDDD}``.

    Terminal labels name the net map relative to the starting qutrit:
    ``h``, ``identity``, ``gamma`` (now in ``V``), ``gamma_inv`` (now in ``U``).
    """
    ops = single_qutrit_ops(model)
    hp = Apply(ops["h_prime"], "h'")
    hpi = Apply(ops["h_prime_inv"], "h'^-1")
    fix = Apply(ops["p2q2p2"], "p2q2p2")
    M = _measure_U(model)
    T = Terminal
    if name == "P":
        body = (hp, Measure(M, {"U": (T("h"),), "U_perp": (hp, Measure(M, {"U": (fix, T("identity")), "U_perp": (T("gamma"),)}))}))
    elif name == "Q":
        body = (hpi, Measure(M, {"U": (T("h"),), "U_perp": (hpi, Measure(M, {"U": (T("identity"),), "U_perp": (fix, T("gamma"))}))}))
    elif name == "R":
        tail = Measure(M, {"U": (T("identity"),), "U_perp": (fix, T("gamma"))})
        body = (hp, Measure(M, {"U": (hpi, tail), "U_perp": (hpi, tail)}))
    elif name == "R_inv":
        body = (
            hpi,
            Measure(
                M,
                {
                    "U": (hpi, Measure(M, {"U": (T("gamma_inv"),), "U_perp": (fix, T("identity"))})),
                    "U_perp": (hp, Measure(M, {"U": (fix, T("gamma_inv")), "U_perp": (T("identity"),)})),
                },
            ),
        )
    else:
        raise KeyError(f"unknown procedure {name!r}")
    return ProtocolProgram(name, body)


# ----------------------------------------------------------------------
# ancilla-assisted W procedures on eight anyons

def _shift(word: Sequence[int], k: int) -> list:
    return [x + k if x > 0 else x - k for x in word]


P_WORD = (6, 5, 4, 3, 7, 6, 5, 4)
Q_WORD = (2, 1, 1, 2, 6, 7, 7, 6)
R_WORD = tuple([-x for x in reversed(P_WORD)] + list(Q_WORD) + list(P_WORD))
# p^2 q^2 p^2 on the second branch: p = s5 s6 s5, q = s7 s6 s7
_FIX2_WORD = tuple(_shift([1, 2, 1] * 2 + [3, 2, 3] * 2 + [1, 2, 1] * 2, 4))


def braid_R(space: TwoQutritSpace | None = None) -> BraidCircuit:
    """``R = P^-1 Q P`` on the eight-leaf space (rightmost factor acts first)."""
    space = space or two_qutrit_space()
    return space.circuit(R_WORD, "R")


def _anc_state(space: TwoQutritSpace, anc: str, enc: str, i: int, amp: Scalar = 1) -> StateVector:
    b = ancilla(anc).as_dict()
    (lab, a0), = b.items()
    terms = {lab + "G" + k: as_cyclotomic(amp) * a0 * v for k, v in ENCODING_LABELS[enc][i].items()}
    return StateVector.from_labels(space.basis, terms)


def check_braid_R(space: TwoQutritSpace | None = None) -> dict:
    """Compare ``R`` with both displayed maps for ``i = 0, 1, 2``.

    Returns per map the scalar ``c_i`` with ``R(input) = c_i * expected``
    (``None`` when ``R(input)`` is not proportional to it) and whether
    ``c_i == 1``.
    """
    space = space or two_qutrit_space()
    R = braid_R(space)
    half, r2 = ONE / 2, SQRT2 / 2
    out = {"first": [], "second": []}
    for i in range(3):
        mi = (-i) % 3
        got = R.apply(_anc_state(space, "H_A", "W", i))
        want = (
            _anc_state(space, "H_A", "W", i, -half)
            + _anc_state(space, "H_B", "V", i, half)
            + _anc_state(space, "H_B", "U", mi, -SQRT2 / 2)
        )
        out["first"].append(proportionality(got, want))
        got = R.apply(_anc_state(space, "H_B", "U", i))
        want = _anc_state(space, "H_A", "W", mi, r2) + _anc_state(space, "H_B", "V", mi, r2)
        out["second"].append(proportionality(got, want))
    exact = all(c == ONE for cs in out.values() for c in cs)
    return {"phases": out, "exact": exact}


class EncodingSwap:
    """Exchange two encodings on one branch: ``|j>_a <-> |j>_b``, identity elsewhere.

    Stands in for ``gamma^-1`` (``V -> U``), which the single-qutrit
    procedure ``R_inv`` realizes probabilistically.
    """

    def __init__(self, part: int, a: str, b: str):
        self.part = part
        self.a = [{"G" + k: as_cyclotomic(v) for k, v in t.items()} for t in ENCODING_LABELS[a]]
        self.b = [{"G" + k: as_cyclotomic(v) for k, v in t.items()} for t in ENCODING_LABELS[b]]

    def apply(self, state: StateVector) -> StateVector:
        groups = {}
        for rest, vec in _groups(state, self.part).items():
            out = dict(vec)

            def coeff(u):
                c = ZERO
                for loc, a in vec.items():
                    if loc in u:
                        c = c + u[loc].conjugate() * a
                return c

            ca = [coeff(u) for u in self.a]
            cb = [coeff(u) for u in self.b]
            for src, dst, cs in ((self.a, self.b, ca), (self.b, self.a, cb)):
                for u, w, c in zip(src, dst, cs):
                    if c:
                        for loc, x in u.items():
                            out[loc] = out.get(loc, ZERO) - c * x
                        for loc, x in w.items():
                            out[loc] = out.get(loc, ZERO) + c * x
            groups[rest] = out
        return _rebuild(state.basis, self.part, groups)


def _w_procedure(name: str, space: TwoQutritSpace) -> ProtocolProgram:
    R = Apply(braid_R(space), "R")
    fix = Apply(space.circuit(_FIX2_WORD, "p2q2p2@2"), "Id x p2q2p2")
    gamma_inv = Apply(EncodingSwap(2, "V", "U"), "Id x gamma^-1")
    M1 = MeasurementSpec.pair_charge_A(0)
    u_vecs = [{"G" + k: v for k, v in t.items()} for t in ENCODING_LABELS["U"]]
    M2 = MeasurementSpec.subspace(u_vecs, 2, ("U", "U_perp"))
    T = Terminal
    if name == "S":
        body = (R, Measure(M1, {"A": (T("unchanged"),), "not_A": (Measure(M2, {"U": (fix, T("beta")), "U_perp": (gamma_inv, T("beta"))}),)}))
    elif name == "T":
        body = (R, Measure(M1, {"A": (fix, T("beta_inv")), "not_A": (fix, gamma_inv, T("unchanged"))}))
    else:
        raise KeyError(f"unknown procedure {name!r}")
    return ProtocolProgram(name, body)


# ----------------------------------------------------------------------
# circuit-level constructions on plain qutrits and qubits

class PrepareLocal:
    """Replace one part of a product state by a fresh local state.

    Sends ``|rest>|any> -> |rest>|fresh>``; norm preserving on states whose
    part is a single basis label, as after a full readout of that part.
    """

    def __init__(self, part, amplitudes: Mapping[str, Scalar]):
        self.part = part
        self.fresh = {k: as_cyclotomic(v) for k, v in amplitudes.items()}

    def apply(self, state: StateVector) -> StateVector:
        groups = {}
        for rest, vec in _groups(state, self.part).items():
            c = ZERO
            for a in vec.values():
                c = c + a
            groups[rest] = {k: c * v for k, v in self.fresh.items()}
        return _rebuild(state.basis, self.part, groups)


def _flip_round(basis: QuditBasis, labels: Mapping[str, str]) -> tuple:
    g = reference_gates()
    fresh = Apply(PrepareLocal(1, ancilla("psi").as_dict()), "new psi")
    return (
        Apply(qudit_gate(basis, g["SUM"], [0, 1]), "SUM"),
        Measure(MeasurementSpec.computational(1), {k: (fresh, Terminal(v)) for k, v in labels.items()}),
    )


# sign pattern left on (c0, c1, c2) by each outcome, up to a global sign
_FLIP_BY_OUTCOME = {"0": "f2", "1": "f0", "2": "f1"}
_FLIP_PRODUCT = {  # Klein four-group on sign patterns modulo -1
    ("id", "f0"): "f0", ("id", "f1"): "f1", ("id", "f2"): "f2",
    ("f0", "f0"): "id", ("f0", "f1"): "f2", ("f0", "f2"): "f1",
    ("f1", "f0"): "f2", ("f1", "f1"): "id", ("f1", "f2"): "f0",
}


def _flip2_program(n: int) -> ProtocolProgram:
    basis = QuditBasis((3, 3))
    procs, nxt = {}, {}
    for cur in ("id", "f0", "f1"):
        labels = {}
        for out, f in _FLIP_BY_OUTCOME.items():
            new = _FLIP_PRODUCT[(cur, f)]
            labels[out] = "FLIP2" if new == "f2" else f"from_{cur}->{new}"
            if new != "f2":
                nxt[labels[out]] = new
        procs[cur] = _flip_round(basis, labels)
    return ProtocolProgram("flip2", (Loop(procs, "id", nxt, n),))


def _psi_prep_program() -> ProtocolProgram:
    basis = QuditBasis((3, 3))
    g = reference_gates()
    keep01 = MeasurementSpec.subspace([{"0": 1}, {"1": 1}], 0, ("in", "out"))
    keep01b = MeasurementSpec.subspace([{"0": 1}, {"1": 1}], 1, ("in", "out"))
    r3 = SQRT3 / 3
    tilde0 = MeasurementSpec.subspace([{"0": r3, "1": r3, "2": r3}], 0, ("in", "out"))
    fail = (Terminal("fail"),)
    body = (
        Measure(keep01, {"out": fail, "in": (
            Measure(keep01b, {"out": fail, "in": (
                Apply(qudit_gate(basis, g["SUM"], [0, 1]), "SUM"),
                Measure(tilde0, {"in": (Terminal("psi"),), "out": fail}),
            )}),
        )}),
    )
    return ProtocolProgram("psi_ancilla_prep", body)


def _psi_prep_initial() -> StateVector:
    basis = QuditBasis((3, 3))
    t1, t2 = ancilla("t1").as_dict(), ancilla("t2").as_dict()
    return qudit_state(basis, {a + b: x * y for a, x in t1.items() for b, y in t2.items()})


def _sign_flip_gate(basis: QuditBasis, qudits: Sequence[int]) -> SparseOp:
    """Flip the sign when the listed qudit values sum to 2 mod 3."""
    g = reference_gates()
    t = qudits[-1]
    op = SparseOp.identity(basis)
    sums = [qudit_gate(basis, g["SUM"], [c, t]) for c in qudits[:-1]]
    for s in sums:
        op = s @ op
    op = qudit_gate(basis, g["FLIP2"], [t]) @ op
    for s in sums:
        op = s.adjoint() @ op
    return op


def _lambda2_program() -> ProtocolProgram:
    basis = QuditBasis((3, 3, 3))
    steps = [(0, 1, 2), (0, 1), (0, 2), (1, 2)]
    return ProtocolProgram(
        "lambda2_sigma_z",
        tuple(Apply(_sign_flip_gate(basis, s), "flip if " + "+".join("ijk"[q] for q in s) + "=2") for s in steps) + (Terminal("done"),),
    )


def _sigma_x_program(n: int) -> ProtocolProgram:
    r3 = SQRT3 / 3
    M1 = MeasurementSpec.subspace([{"0": r3, "1": r3, "2": r3}], 0, ("tilde0", "rest"))
    M2 = MeasurementSpec.subspace([{"0": 1}, {"1": 1}], 0, ("01", "2"))
    rnd = (Measure(M1, {"tilde0": (Terminal("plus"),), "rest": (Measure(M2, {"2": (Terminal("plus"),), "01": (Terminal("again"),)}),)}),)
    return ProtocolProgram("sigma_x_measurement", (Loop({"O": rnd}, "O", {"again": "O"}, n, residual="minus"),))


def sigma_x_initial(alpha: Scalar = Fraction(3, 5), beta: Scalar = Fraction(4, 5)) -> StateVector:
    """``alpha|+> + beta|->`` in a qutrit."""
    a, b = as_cyclotomic(alpha) * SQRT2 / 2, as_cyclotomic(beta) * SQRT2 / 2
    return qudit_state(QuditBasis((3,)), {"0": a + b, "1": a - b})


_H2 = [[SQRT2 / 2, SQRT2 / 2], [SQRT2 / 2, -SQRT2 / 2]]
_Z2 = [[1, 0], [0, -1]]
_CZ2 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
_CCZ2 = [[(-1 if k == 7 and j == 7 else 1) if k == j else 0 for j in range(8)] for k in range(8)]


def _sigma_x_spec(q: int) -> MeasurementSpec:
    r = SQRT2 / 2
    return MeasurementSpec.subspace([{"0": r, "1": r}], q, ("+1", "-1"))


def _procedure_A(basis: QuditBasis, work: int, anc: int, then: Callable[[str], tuple]) -> tuple:
    """``|i>|+> -> CZ -> measure X on work``; on ``-1`` correct with ``Z`` on work."""
    cz = Apply(qudit_gate(basis, _CZ2, [work, anc]), f"CZ{work}{anc}")
    z = Apply(qudit_gate(basis, _Z2, [work]), f"Z{work}")
    return (cz, Measure(_sigma_x_spec(work), {"+1": then("+1"), "-1": (z,) + then("-1")}))


def _toffoli_round(basis: QuditBasis, labels: Mapping[str, str]) -> tuple:
    """One round on qubits ``(i, j, k, ancilla)``: yields ``T`` or ``X_3 T``."""
    ccz = Apply(qudit_gate(basis, _CCZ2, [0, 1, 3]), "CCZ124")
    fix = (Apply(qudit_gate(basis, _Z2, [2]), "Z3"), Apply(qudit_gate(basis, _CZ2, [0, 1]), "CZ12"))

    def second(first: str) -> Callable[[str], tuple]:
        def cont(out: str) -> tuple:
            tail = fix if first == "-1" else ()
            return tail + (Terminal(labels["T" if out == "+1" else "XT"]),)

        return cont

    def after_first(first: str) -> tuple:
        return (ccz,) + _procedure_A(basis, 3, 2, second(first))

    return _procedure_A(basis, 2, 3, after_first)


def _toffoli_program(n: int) -> ProtocolProgram:
    """Repeat until the data qubit holds ``ij + k``, at most ``2n - 1`` rounds."""
    basis = QuditBasis((2, 2, 2, 2))
    procs = {
        "orig": _toffoli_round(basis, {"T": "toffoli", "XT": "flipped"}),
        "flipped": _toffoli_round(basis, {"T": "shifted", "XT": "orig"}),
        "shifted": _toffoli_round(basis, {"T": "flipped", "XT": "toffoli"}),
    }
    nxt = {"flipped": "flipped", "orig": "orig", "shifted": "shifted"}
    return ProtocolProgram("toffoli_from_cz", (Loop(procs, "orig", nxt, 2 * n - 1),))


def toffoli_initial(terms: Mapping[str, Scalar] | None = None) -> StateVector:
    """``sum c_ijk |i j k>|+>`` (default: uniform over the eight inputs)."""
    basis = QuditBasis((2, 2, 2, 2))
    if terms is None:
        r = SQRT2 / 4
        terms = {f"{i}{j}{k}": r for i in range(2) for j in range(2) for k in range(2)}
    r2 = SQRT2 / 2
    out = {}
    for ijk, c in terms.items():
        for a in "01":
            out[ijk + a] = as_cyclotomic(c) * r2
    return qudit_state(basis, out)


# ----------------------------------------------------------------------
# library

@dataclass(frozen=True)
class ProtocolEntry:
    """A named protocol: program builder, default input, success labels and closed form.

    ``build(n)`` returns the program with ``n`` rounds (``n`` is ignored by
    single-shot protocols); ``closed_form(n)`` is the exact success
    probability within ``n`` rounds, when one is known.
    """

    name: str
    build: Callable
    initial: Callable
    success: frozenset
    closed_form: Callable | None = None
    default_n: int = 1


def _chain(name: str, procs: Mapping[str, str], start: str, nxt: Mapping[str, str], model=None) -> Callable:
    def build(n: int) -> ProtocolProgram:
        return ProtocolProgram(name, (Loop({k: procedure(v, model).instructions for k, v in procs.items()}, start, nxt, n),))

    return build


def _w_chain(name: str, proc: str) -> Callable:
    def build(n: int) -> ProtocolProgram:
        body = _w_procedure(proc, two_qutrit_space()).instructions
        return ProtocolProgram(name, (Loop({proc: body}, proc, {"unchanged": proc}, n),))

    return build


def protocol_library() -> dict:
    """All named protocols.

    Keys: ``flip2``, ``psi_ancilla_prep``, ``lambda2_sigma_z``,
    ``sigma_x_measurement``, ``toffoli_from_cz``, ``hadamard_via_P``,
    ``hadamard_via_Q``, ``gamma_via_R``, ``gamma_inv_via_R``, ``beta_via_S``,
    ``beta_inv_via_T``.
    """
    U = lambda: encoding_basis("U")[1]  # noqa: E731
    V = lambda: encoding_basis("V")[1]  # noqa: E731
    one = Fraction(1)
    lib = [
        ProtocolEntry("flip2", _flip2_program, lambda: qudit_state(QuditBasis((3, 3)), {
            a + b: c * p for a, c in {"0": Fraction(1, 2), "1": Fraction(1, 2), "2": SQRT2 / 2}.items() for b, p in ancilla("psi").as_dict().items()
        }), frozenset({"FLIP2"}), lambda n: one - Fraction(2, 3) ** n, 5),
        ProtocolEntry("psi_ancilla_prep", lambda n: _psi_prep_program(), _psi_prep_initial, frozenset({"psi"}), None, 1),
        ProtocolEntry("lambda2_sigma_z", lambda n: _lambda2_program(), lambda: qudit_state(QuditBasis((3, 3, 3)), {"111": 1}), frozenset({"done"}), lambda n: one, 1),
        ProtocolEntry("sigma_x_measurement", _sigma_x_program, sigma_x_initial, frozenset({"plus"}),
                      lambda n: Fraction(9, 25) * (one - Fraction(1, 9 ** n)), 5),
        ProtocolEntry("toffoli_from_cz", _toffoli_program, toffoli_initial, frozenset({"toffoli"}), lambda n: one - Fraction(1, 2 ** n), 3),
        ProtocolEntry("hadamard_via_P", _chain("hadamard_via_P", {"P": "P", "Q": "Q"}, "P", {"identity": "P", "gamma": "Q"}), U,
                      frozenset({"h"}), lambda n: one - Fraction(2, 3) * Fraction(5, 9) ** (n - 1), 5),
        ProtocolEntry("hadamard_via_Q", _chain("hadamard_via_Q", {"P": "P", "Q": "Q"}, "Q", {"identity": "P", "gamma": "Q"}), V,
                      frozenset({"h"}), lambda n: one - Fraction(1, 3) * Fraction(5, 9) ** (n - 1), 5),
        ProtocolEntry("gamma_via_R", _chain("gamma_via_R", {"R": "R"}, "R", {"identity": "R"}), U,
                      frozenset({"gamma"}), lambda n: one - Fraction(5, 9) ** n, 4),
        ProtocolEntry("gamma_inv_via_R", _chain("gamma_inv_via_R", {"R_inv": "R_inv"}, "R_inv", {"identity": "R_inv"}), V,
                      frozenset({"gamma_inv"}), lambda n: one - Fraction(5, 9) ** n, 4),
        ProtocolEntry("beta_via_S", _w_chain("beta_via_S", "S"), lambda: _anc_state(two_qutrit_space(), "H_A", "W", 1),
                      frozenset({"beta"}), lambda n: one - Fraction(1, 4) ** n, 2),
        ProtocolEntry("beta_inv_via_T", _w_chain("beta_inv_via_T", "T"), lambda: _anc_state(two_qutrit_space(), "H_B", "U", 1),
                      frozenset({"beta_inv"}), lambda n: one - Fraction(1, 2) ** n, 2),
    ]
    return {e.name: e for e in lib}


SHORT_NAMES = {
    "P": "hadamard_via_P",
    "Q": "hadamard_via_Q",
    "R": "gamma_via_R",
    "S": "beta_via_S",
    "T": "beta_inv_via_T",
    "O": "sigma_x_measurement",
    "flip2": "flip2",
    "toffoli": "toffoli_from_cz",
}


# ----------------------------------------------------------------------
# sigma_x recursion

def verify_alpha_recursion(alpha2, n: int) -> dict:
    """Iterate ``|a_k|^2 = |a_{k-1}|^2 / (9 - 8|a_{k-1}|^2)`` and compare with the closed forms.

    Parameters
    ----------
    alpha2 : rational
        ``|alpha|^2`` of the input ``alpha|+> + beta|->``.
    n : int
        Number of rounds.

    Returns
    -------
    dict
        ``alpha2_n``, ``no_plus`` (product of the ``b_k``), both closed
        forms and ``match``.
    """
    a = Fraction(alpha2)
    if not 0 <= a <= 1:
        raise ValueError("|alpha|^2 must lie in [0, 1]")
    cur, prod = a, Fraction(1)
    for _ in range(n):
        prod *= 1 - 8 * cur / 9
        cur = cur / (9 - 8 * cur)
    closed_a = a / ((1 - a) * 9 ** n + a)
    closed_b = (1 - a) + a / 9 ** n
    return {
        "alpha2_n": cur,
        "no_plus": prod,
        "closed_alpha2_n": closed_a,
        "closed_no_plus": closed_b,
        "match": cur == closed_a and prod == closed_b,
    }
