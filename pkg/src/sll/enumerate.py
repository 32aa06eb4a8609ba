"""Brute-force enumeration of small pointed models.

A labelled model on ``n`` nodes over atoms ``a_0..a_{k-1}`` is a bit code:

    bits [0, n*n)            r1, edge (u, v) at u*n + v
    bits [n*n, 2*n*n)        r2, same layout
    bits [2*n*n + j*n + u]   atom a_j holds at node u

Codes are visited in increasing order.  With isomorphism pruning a model is
kept only when its code is minimal over all node permutations, and its
evaluation points are restricted to one node per automorphism orbit.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .checker import Frame, bits, compile_formula, seq_mask
from .model import Model
from .syntax import Formula, atoms as formula_atoms, render_formula

CHUNK = 1 << 16


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class EnumSpec:
    max_nodes: int
    atoms: tuple[str, ...] | None = None   # None: atoms of the formula
    prune_isomorphic: bool = True
    time_budget: float | None = None       # seconds
    max_candidates: int | None = None      # pointed models; deterministic budget
    seq_len: int = 1                       # evaluation sequence length (1: singletons)
    min_nodes: int = 1

    def __post_init__(self):
        if self.max_nodes < 1 or self.min_nodes < 1:
            raise ValueError("max_nodes must be at least 1")
        if self.seq_len < 1:
            raise ValueError("seq_len must be at least 1")
        if self.atoms is not None:
            object.__setattr__(self, "atoms", tuple(self.atoms))


@dataclass(frozen=True)
class Candidate:
    """One pointed model in integer form."""
    n: int
    code: int
    r1: int
    r2: int
    val: tuple[int, ...]
    seq: tuple[int, ...]

    def frame(self, atoms: Sequence[str]) -> Frame:
        return Frame(self.n, self.r2, dict(zip(atoms, self.val)))

    def model(self, atoms: Sequence[str]) -> Model:
        names = [f"w{i}" for i in range(self.n)]
        r1 = [(names[e // self.n], names[e % self.n]) for e in bits(self.r1)]
        r2 = [(names[e // self.n], names[e % self.n]) for e in bits(self.r2)]
        val = {a: [names[u] for u in bits(m)] for a, m in zip(atoms, self.val)}
        return Model.build(names, r1, r2, val)

    def seq_names(self) -> tuple[str, ...]:
        return tuple(f"w{u}" for u in self.seq)


def _decode(n: int, k: int, code: int) -> tuple[int, int, tuple[int, ...]]:
    nn = n * n
    full = (1 << nn) - 1
    r1 = code & full
    r2 = (code >> nn) & full
    val = tuple((code >> (2 * nn + j * n)) & ((1 << n) - 1) for j in range(k))
    return r1, r2, val


def code_bits(n: int, k: int) -> int:
    return 2 * n * n + k * n


def _bit_destinations(n: int, k: int, perm: Sequence[int]) -> list[int]:
    nn = n * n
    dest = []
    for u in range(n):
        for v in range(n):
            dest.append(perm[u] * n + perm[v])
    dest += [nn + d for d in dest[:nn]]
    for j in range(k):
        dest += [2 * nn + j * n + perm[u] for u in range(n)]
    return dest


class _Permuter:
    """Applies a node permutation to arrays of codes with byte lookup tables."""

    def __init__(self, n: int, k: int, perm: Sequence[int]):
        self.perm = tuple(perm)
        dest = _bit_destinations(n, k, perm)
        self.tables = []
        for start in range(0, len(dest), 8):
            table = np.zeros(256, dtype=np.uint64)
            for byte in range(256):
                out = 0
                for b in range(8):
                    if byte >> b & 1 and start + b < len(dest):
                        out |= 1 << dest[start + b]
                table[byte] = out
            self.tables.append(table)

    def __call__(self, codes: np.ndarray) -> np.ndarray:
        out = np.zeros_like(codes)
        for i, table in enumerate(self.tables):
            out |= table[(codes >> np.uint64(8 * i)) & np.uint64(255)]
        return out


def _walks(r1: int, n: int, start: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 1:
        yield (start,)
        return
    for rest in _walks(r1, n, start, length - 1):
        u = rest[-1]
        for v in bits((r1 >> (u * n)) & ((1 << n) - 1)):
            yield rest + (v,)


def _canonical_chunks(n: int, k: int) -> Iterator[tuple[int, list[int]]]:
    """(code, orbit representatives) for every canonical code, in order."""
    total = 1 << code_bits(n, k)
    perms = [_Permuter(n, k, p) for p in itertools.permutations(range(n))][1:]
    for lo in range(0, total, CHUNK):
        codes = np.arange(lo, min(lo + CHUNK, total), dtype=np.uint64)
        canon = np.ones(len(codes), dtype=bool)
        permuted = []
        for p in perms:
            pc = p(codes)
            canon &= pc >= codes
            permuted.append(pc)
        idx = np.nonzero(canon)[0]
        if len(idx) == 0:
            continue
        # node u is an orbit representative iff no automorphism maps it lower
        rep = np.ones((len(idx), n), dtype=bool)
        for p, pc in zip(perms, permuted):
            aut = pc[idx] == codes[idx]
            for u in range(n):
                if p.perm[u] < u:
                    rep[:, u] &= ~aut
        for row, i in enumerate(idx):
            yield lo + int(i), [u for u in range(n) if rep[row, u]]


class ModelStream:
    """Iterable over `Candidate`s; `complete` and `examined` are set as it runs."""

    def __init__(self, spec: EnumSpec, atoms: Sequence[str]):
        self.spec = spec
        self.atoms = tuple(atoms)
        self.examined = 0
        self.complete = False
        self.stopped_by: str | None = None

    def __iter__(self) -> Iterator[Candidate]:
        spec, k = self.spec, len(self.atoms)
        deadline = None if spec.time_budget is None else time.monotonic() + spec.time_budget
        for n in range(spec.min_nodes, spec.max_nodes + 1):
            if spec.prune_isomorphic:
                source = _canonical_chunks(n, k)
            else:
                source = ((c, list(range(n))) for c in range(1 << code_bits(n, k)))
            for code, points in source:
                r1, r2, val = _decode(n, k, code)
                for w in points:
                    for seq in _walks(r1, n, w, spec.seq_len):
                        if spec.max_candidates is not None and self.examined >= spec.max_candidates:
                            self.stopped_by = "max_candidates"
                            return
                        if deadline is not None and self.examined % 256 == 0 \
                                and time.monotonic() > deadline:
                            self.stopped_by = "time_budget"
                            return
                        self.examined += 1
                        yield Candidate(n, code, r1, r2, val, seq)
        self.complete = True


def enumerate_models(spec: EnumSpec) -> Iterator[tuple[Model, tuple[str, ...]]]:
    """Every pointed model up to `spec.max_nodes` over `spec.atoms`.

    Raises `BudgetExhausted` at the end of a truncated stream.
    """
    stream = ModelStream(spec, spec.atoms or ())
    for cand in stream:
        yield cand.model(stream.atoms), cand.seq_names()
    if not stream.complete:
        raise BudgetExhausted(f"stopped by {stream.stopped_by} after {stream.examined} models")


def count_labelled(max_nodes: int, n_atoms: int, seq_len: int = 1) -> int:
    """Number of singleton-pointed labelled models (no pruning)."""
    if seq_len != 1:
        raise ValueError("closed form only for singleton sequences")
    return sum((1 << code_bits(n, n_atoms)) * n for n in range(1, max_nodes + 1))


@dataclass(frozen=True)
class Verdict:
    mode: str                     # "valid" or "sat"
    formula: str
    status: str                   # "affirmative", "negative" or "inconclusive"
    max_nodes: int
    atoms: tuple[str, ...]
    examined: int
    complete: bool
    witness: tuple[Model, tuple[str, ...]] | None = field(default=None, compare=False)
    stopped_by: str | None = None

    @property
    def summary(self) -> str:
        if self.mode == "valid":
            text = {"affirmative": f"no countermodel up to {self.max_nodes} nodes",
                    "negative": "countermodel found",
                    "inconclusive": "inconclusive: budget exhausted, no countermodel so far"}
        else:
            text = {"affirmative": "witness found",
                    "negative": f"no witness up to {self.max_nodes} nodes",
                    "inconclusive": "inconclusive: budget exhausted, no witness so far"}
        return text[self.status]


def decide_upto(mode: str, f: Formula, spec: EnumSpec) -> Verdict:
    """Search the pointed models described by `spec` for a countermodel
    (``mode="valid"``) or a witness (``mode="sat"``).

    A negative answer for ``sat`` and an affirmative one for ``valid`` only
    cover models up to ``spec.max_nodes`` nodes.
    """
    if mode not in ("valid", "sat"):
        raise ValueError(f"unknown mode {mode!r}")
    atoms = spec.atoms if spec.atoms is not None else tuple(formula_atoms(f))
    fn = compile_formula(f)
    target = mode == "sat"
    stream = ModelStream(spec, atoms)
    found = None
    frame_key = None
    fr = None
    for cand in stream:
        if (cand.n, cand.code) != frame_key:
            frame_key = (cand.n, cand.code)
            fr = cand.frame(atoms)
        if fn(fr, cand.r1, cand.seq, seq_mask(cand.seq, cand.n)) == target:
            found = cand
            break
    if found is not None:
        status = "affirmative" if mode == "sat" else "negative"
        witness = (found.model(atoms), found.seq_names())
    else:
        witness = None
        if not stream.complete:
            status = "inconclusive"
        else:
            status = "negative" if mode == "sat" else "affirmative"
    return Verdict(mode, render_formula(f), status, spec.max_nodes, tuple(atoms),
                   stream.examined, stream.complete, witness, stream.stopped_by)


def find_all(f: Formula, spec: EnumSpec) -> Iterator[tuple[Model, tuple[str, ...]]]:
    """Every enumerated pointed model satisfying `f`."""
    atoms = spec.atoms if spec.atoms is not None else tuple(formula_atoms(f))
    fn = compile_formula(f)
    stream = ModelStream(spec, atoms)
    for cand in stream:
        if fn(cand.frame(atoms), cand.r1, cand.seq, seq_mask(cand.seq, cand.n)):
            yield cand.model(atoms), cand.seq_names()
    if not stream.complete:
        raise BudgetExhausted(f"stopped by {stream.stopped_by} after {stream.examined} models")
