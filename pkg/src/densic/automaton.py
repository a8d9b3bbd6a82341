"""Base-k automata with rational output, read most-significant digit first."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from densic.exact import Matrix, as_rational, format_rational

Word = tuple[int, ...]


class ParseError(ValueError):
    """Malformed automaton text; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class NotNormalizedError(ValueError):
    pass


@dataclass(frozen=True)
class DFAO:
    base: int
    transitions: tuple[tuple[int, ...], ...]
    outputs: tuple[Fraction, ...]
    initial: int = 0

    def __post_init__(self):
        k = self.base
        if k < 2:
            raise ValueError(f"base must be >= 2, got {k}")
        object.__setattr__(self, "transitions", tuple(tuple(int(t) for t in row) for row in self.transitions))
        object.__setattr__(self, "outputs", tuple(as_rational(o) for o in self.outputs))
        m = len(self.transitions)
        if m < 1:
            raise ValueError("an automaton needs at least one state")
        if len(self.outputs) != m:
            raise ValueError(f"{m} states but {len(self.outputs)} outputs")
        if not 0 <= self.initial < m:
            raise ValueError(f"initial state {self.initial} out of range")
        for q, row in enumerate(self.transitions):
            if len(row) != k:
                raise ValueError(f"state {q} has {len(row)} transitions, expected {k}")
            for t in row:
                if not 0 <= t < m:
                    raise ValueError(f"state {q} has a transition to undefined state {t}")
        for q, o in enumerate(self.outputs):
            if o < 0:
                raise ValueError(f"state {q} has negative output {o}")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def run(self, word: Sequence[int], start: int | None = None) -> int:
        q = self.initial if start is None else start
        table = self.transitions
        for x in word:
            q = table[q][x]
        return q

    def eval(self, n: int) -> Fraction:
        return self.outputs[self.run(digits(n, self.base))]

    def is_normalized(self) -> bool:
        return self.transitions[self.initial][0] == self.initial

    def is_zero_one(self) -> bool:
        return all(o in (0, 1) for o in self.outputs)

    @property
    def max_output(self) -> Fraction:
        return max(self.outputs)

    def with_outputs(self, outputs: Sequence) -> DFAO:
        return DFAO(self.base, self.transitions, tuple(outputs), self.initial)

    def reflected(self, top=None) -> DFAO:
        """Same automaton with outputs ``top - h`` (``top`` defaults to the max output)."""
        top = self.max_output if top is None else as_rational(top)
        return self.with_outputs(top - o for o in self.outputs)


def digits(n: int, k: int) -> Word:
    """Canonical base-k expansion of n, most significant first; () for 0."""
    if n < 0:
        raise ValueError("negative integers have no base-k expansion")
    out = []
    while n:
        n, r = divmod(n, k)
        out.append(r)
    return tuple(reversed(out))


def word_value(word: Sequence[int], k: int) -> int:
    """[w]_k: the integer spelled by ``word`` in base k."""
    n = 0
    for x in word:
        n = n * k + x
    return n


def format_word(word: Sequence[int], k: int) -> str:
    if not word:
        return "ε"
    if k <= 10:
        return "".join(str(x) for x in word)
    return ".".join(str(x) for x in word)


def parse_word(text: str, k: int) -> Word:
    if text in ("", "ε"):
        return ()
    parts = text.split(".") if "." in text else list(text)
    word = tuple(int(p) for p in parts)
    if any(not 0 <= x < k for x in word):
        raise ValueError(f"word {text!r} has digits outside 0..{k - 1}")
    return word


# --- text format -----------------------------------------------------------

_STATE_RE = re.compile(r"^state\s+(\S+)\s+output\s+(\S+)\s*->\s*(.*)$")


def _header(lines, idx, key):
    lineno, text = lines[idx]
    parts = text.split()
    if len(parts) != 2 or parts[0] != key:
        raise ParseError(f"expected '{key} <n>', got {text!r}", lineno)
    try:
        return int(parts[1]), lineno
    except ValueError:
        raise ParseError(f"'{key}' needs an integer, got {parts[1]!r}", lineno) from None


def parse_dfao(text: str) -> DFAO:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if len(lines) < 3:
        raise ParseError("missing header: need 'base', 'states' and 'initial' lines", lines[-1][0] if lines else 0)
    k, ln = _header(lines, 0, "base")
    if k < 2:
        raise ParseError(f"base must be >= 2, got {k}", ln)
    m, ln = _header(lines, 1, "states")
    if m < 1:
        raise ParseError(f"state count must be positive, got {m}", ln)
    initial, ln = _header(lines, 2, "initial")
    if not 0 <= initial < m:
        raise ParseError(f"initial state {initial} is not among 0..{m - 1}", ln)

    transitions: list = [None] * m
    outputs: list = [None] * m
    for lineno, body in lines[3:]:
        match = _STATE_RE.match(body)
        if not match:
            raise ParseError(f"expected 'state <i> output <p>[/<q>] -> <targets>', got {body!r}", lineno)
        try:
            q = int(match.group(1))
        except ValueError:
            raise ParseError(f"bad state index {match.group(1)!r}", lineno) from None
        if not 0 <= q < m:
            raise ParseError(f"state {q} is not among 0..{m - 1}", lineno)
        if transitions[q] is not None:
            raise ParseError(f"duplicate transitions for state {q}", lineno)
        try:
            out = as_rational(match.group(2))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad output value {match.group(2)!r}", lineno) from None
        if out < 0:
            raise ParseError(f"negative output {format_rational(out)} for state {q}", lineno)
        targets = match.group(3).split()
        if len(targets) != k:
            raise ParseError(f"state {q} lists {len(targets)} targets, base {k} needs {k}", lineno)
        row = []
        for t in targets:
            try:
                t = int(t)
            except ValueError:
                raise ParseError(f"bad target {t!r}", lineno) from None
            if not 0 <= t < m:
                raise ParseError(f"transition from state {q} to undefined state {t}", lineno)
            row.append(t)
        transitions[q] = tuple(row)
        outputs[q] = out
    missing = [q for q in range(m) if transitions[q] is None]
    if missing:
        raise ParseError(f"no transitions given for state(s) {', '.join(map(str, missing))}", lines[-1][0])
    return DFAO(k, tuple(transitions), tuple(outputs), initial)


def format_dfao(d: DFAO) -> str:
    lines = [f"base {d.base}", f"states {d.state_count}", f"initial {d.initial}"]
    for q, (row, out) in enumerate(zip(d.transitions, d.outputs)):
        lines.append(f"state {q} output {format_rational(out)} -> {' '.join(map(str, row))}")
    return "\n".join(lines) + "\n"


def load_dfao(path) -> DFAO:
    with open(path, encoding="utf-8") as fh:
        return parse_dfao(fh.read())


# --- normalization ---------------------------------------------------------

def _reachable(transitions, start) -> list[int]:
    seen = {start}
    stack = [start]
    while stack:
        q = stack.pop()
        for t in transitions[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return sorted(seen)


def normalize(d: DFAO) -> DFAO:
    """Make leading zeros harmless and drop unreachable states.

    The result computes the same function on the naturals, has the initial
    state at index 0 with a 0-loop, and keeps the remaining states in their
    original relative order.
    """
    k = d.base
    trans = [list(r) for r in d.transitions]
    outs = list(d.outputs)
    init = d.initial
    if trans[init][0] != init:
        fresh = len(trans)
        trans.append([fresh] + trans[init][1:])
        outs.append(outs[init])
        init = fresh
    keep = _reachable(trans, init)
    order = [init] + [q for q in keep if q != init]
    index = {q: i for i, q in enumerate(order)}
    new_trans = tuple(tuple(index[trans[q][x]] for x in range(k)) for q in order)
    return DFAO(k, new_trans, tuple(outs[q] for q in order), 0)


def minimize(d: DFAO) -> DFAO:
    """Moore minimization (partition refinement); initial state stays first."""
    d = normalize(d)
    k = d.base
    block = {q: d.outputs[q] for q in range(d.state_count)}
    labels = {v: i for i, v in enumerate(sorted(set(block.values())))}
    part = [labels[block[q]] for q in range(d.state_count)]
    while True:
        sigs = [(part[q],) + tuple(part[t] for t in d.transitions[q]) for q in range(d.state_count)]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sigs]
        if len(ids) == len(set(part)):
            break
        part = new
    order: list[int] = []
    rep: dict[int, int] = {}
    for q in [0] + list(range(1, d.state_count)):
        if part[q] not in rep:
            rep[part[q]] = q
            order.append(part[q])
    index = {b: i for i, b in enumerate(order)}
    trans = tuple(tuple(index[part[t]] for t in d.transitions[rep[b]]) for b in order)
    outs = tuple(d.outputs[rep[b]] for b in order)
    return DFAO(k, trans, outs, 0)


# --- left k-kernel -----------------------------------------------------------

@dataclass(frozen=True)
class KernelSystem:
    """Digit matrices of the left k-kernel of a normalized automaton.

    Kernel function ``i`` is the output after running a word from state ``i``;
    index 0 is the initial state. ``delta[i][x]`` is the state reached from
    ``i`` on digit ``x``.
    """

    k: int
    delta: tuple[tuple[int, ...], ...]
    v0: tuple[Fraction, ...]
    B: Matrix = field(repr=False, compare=False)

    @property
    def d(self) -> int:
        return len(self.delta)

    @cached_property
    def A(self) -> tuple[Matrix, ...]:
        d = self.d
        mats = []
        for x in range(self.k):
            mats.append(Matrix(d, d, [int(self.delta[i][x] == j) for i in range(d) for j in range(d)]))
        return tuple(mats)

    def run(self, i: int, word: Sequence[int]) -> int:
        for x in word:
            i = self.delta[i][x]
        return i

    def kernel_value(self, i: int, word: Sequence[int]) -> Fraction:
        """f_i(word)."""
        return self.v0[self.run(i, word)]


def kernel_system(d: DFAO) -> KernelSystem:
    if not d.is_normalized():
        raise NotNormalizedError("kernel extraction needs δ(initial, 0) = initial; call normalize() first")
    if d.initial != 0 or len(_reachable(d.transitions, d.initial)) != d.state_count:
        d = normalize(d)
    k = d.base
    size = d.state_count
    rows = [[0] * size for _ in range(size)]
    for i, row in enumerate(d.transitions):
        for t in row:
            rows[i][t] += 1
    B = Matrix.from_rows(rows)
    assert all(sum(r) == k for r in rows)
    return KernelSystem(k, d.transitions, d.outputs, B)


@dataclass(frozen=True)
class AutomaticSet:
    """A set of naturals given by a 0/1-output automaton."""

    dfao: DFAO

    def __post_init__(self):
        if not self.dfao.is_zero_one():
            raise ValueError("an automatic set needs outputs in {0, 1}")

    def __contains__(self, n: int) -> bool:
        return self.dfao.eval(n) == 1

    @property
    def base(self) -> int:
        return self.dfao.base

    def complement(self) -> AutomaticSet:
        return AutomaticSet(self.dfao.reflected(1))
