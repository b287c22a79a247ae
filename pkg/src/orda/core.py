"""Foundational automaton types: alphabets, semiautomata, state orders.

A semiautomaton is a finite complete deterministic transition system
(Q, A, delta).  An ordered semiautomaton adds a partial order on Q under
which every letter acts as an isotone map; an ordered automaton further
fixes an initial state and an upward-closed set of final states.  States
are dense integer indices 0..n-1; display names are an optional side
table used only for rendering.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import AlphabetError, OrdaError, ParseError


@dataclass(frozen=True)
class Alphabet:
    """Ordered sequence of distinct single-character symbols."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise AlphabetError("alphabet must be non-empty")
        seen = set()
        for s in self.symbols:
            if len(s) != 1 or not s.isprintable() or s.isspace():
                raise AlphabetError(f"bad symbol {s!r}: need a single printable non-whitespace character")
            if s in seen:
                raise AlphabetError(f"duplicate symbol {s!r}")
            seen.add(s)

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        return cls(tuple(text))

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise AlphabetError(f"symbol {symbol!r} not in alphabet {''.join(self.symbols)!r}") from None

    def __contains__(self, symbol) -> bool:
        return symbol in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class Semiautomaton:
    """Complete deterministic transition table: delta[q][k] = q . symbols[k]."""

    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.delta)
        if n < 1:
            raise OrdaError("semiautomaton needs at least one state")
        width = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != width:
                raise OrdaError(f"state {q}: expected {width} transitions, got {len(row)}")
            for r in row:
                if not 0 <= r < n:
                    raise OrdaError(f"state {q}: transition target {r} out of range")
        if self.names is not None and len(self.names) != n:
            raise OrdaError("names table length differs from state count")

    @classmethod
    def from_map(cls, alphabet: Alphabet, state_count: int, moves: dict, names=None) -> "Semiautomaton":
        """Build from a {(state, symbol): state} dict; every pair must be present."""
        rows = []
        for q in range(state_count):
            row = []
            for a in alphabet:
                if (q, a) not in moves:
                    raise OrdaError(f"missing transition for ({q}, {a!r})")
                row.append(moves[(q, a)])
            rows.append(tuple(row))
        return cls(alphabet, tuple(rows), tuple(names) if names is not None else None)

    @property
    def state_count(self) -> int:
        return len(self.delta)

    def state_name(self, q: int) -> str:
        return self.names[q] if self.names is not None else str(q)


@dataclass(frozen=True)
class StateOrder:
    """Partial order on states as a dense boolean matrix; matrix[p][q] means p <= q.

    Construction never closes the relation transitively: a non-transitive
    input is preserved as given and surfaces through validate().
    """

    matrix: tuple[tuple[bool, ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrix)

    def leq(self, p: int, q: int) -> bool:
        return self.matrix[p][q]

    def pairs(self):
        """Yield the non-reflexive related pairs (p, q) with p <= q."""
        for p, row in enumerate(self.matrix):
            for q, rel in enumerate(row):
                if rel and p != q:
                    yield p, q

    def reversed(self) -> "StateOrder":
        n = self.size
        return StateOrder(tuple(tuple(self.matrix[q][p] for q in range(n)) for p in range(n)))

    @classmethod
    def discrete(cls, n: int) -> "StateOrder":
        return cls(tuple(tuple(p == q for q in range(n)) for p in range(n)))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "StateOrder":
        """Relation holding exactly the given pairs plus reflexivity."""
        rows = [[p == q for q in range(n)] for p in range(n)]
        for p, q in pairs:
            if not (0 <= p < n and 0 <= q < n):
                raise OrdaError(f"order pair ({p}, {q}) out of range")
            rows[p][q] = True
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def from_leq(cls, n: int, leq) -> "StateOrder":
        return cls(tuple(tuple(bool(leq(p, q)) for q in range(n)) for p in range(n)))


@dataclass(frozen=True)
class OrderedSemiautomaton:
    sa: Semiautomaton
    order: StateOrder

    def __post_init__(self):
        if self.order.size != self.sa.state_count:
            raise OrdaError("order size differs from state count")

    @property
    def alphabet(self) -> Alphabet:
        return self.sa.alphabet

    @property
    def state_count(self) -> int:
        return self.sa.state_count


@dataclass(frozen=True)
class OrderedAutomaton:
    osa: OrderedSemiautomaton
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        n = self.osa.state_count
        if not 0 <= self.initial < n:
            raise OrdaError(f"initial state {self.initial} out of range")
        object.__setattr__(self, "finals", frozenset(self.finals))
        for q in self.finals:
            if not 0 <= q < n:
                raise OrdaError(f"final state {q} out of range")

    @property
    def sa(self) -> Semiautomaton:
        return self.osa.sa

    @property
    def order(self) -> StateOrder:
        return self.osa.order

    @property
    def alphabet(self) -> Alphabet:
        return self.osa.alphabet

    @property
    def state_count(self) -> int:
        return self.osa.state_count


def step(sa: Semiautomaton, q: int, w: str) -> int:
    """Run the word w from state q; the action extends letter-wise, q . (ua) = (q . u) . a."""
    if not 0 <= q < sa.state_count:
        raise OrdaError(f"state {q} out of range")
    delta = sa.delta
    for a in w:
        delta_q = delta[q]
        q = delta_q[sa.alphabet.index(a)]
    return q


def validate(oa: OrderedAutomaton) -> list[str]:
    """Check every ordered-automaton axiom; return one message per violation.

    Violations are data, not errors: an empty list means the instance is valid.
    """
    sa, order, finals = oa.sa, oa.order, oa.finals
    n = sa.state_count
    name = sa.state_name
    out = []
    for p in range(n):
        if not order.leq(p, p):
            out.append(f"reflexivity: {name(p)}")
    for p in range(n):
        for q in range(n):
            if p != q and order.leq(p, q) and order.leq(q, p):
                out.append(f"antisymmetry: {name(p)},{name(q)}")
    for p in range(n):
        for q in range(n):
            if not order.leq(p, q):
                continue
            for r in range(n):
                if order.leq(q, r) and not order.leq(p, r):
                    out.append(f"transitivity: {name(p)},{name(q)},{name(r)}")
    for p in range(n):
        for q in range(n):
            if p == q or not order.leq(p, q):
                continue
            for k, a in enumerate(sa.alphabet):
                if not order.leq(sa.delta[p][k], sa.delta[q][k]):
                    out.append(
                        f"compatibility: {name(p)}<={name(q)} but "
                        f"{name(sa.delta[p][k])}<={name(sa.delta[q][k])} fails on {a!r}"
                    )
    for p in finals:
        for q in range(n):
            if order.leq(p, q) and q not in finals:
                out.append(f"finals not upward closed: {name(p)}<={name(q)}, {name(q)} not final")
    return out


def accepts(oa: OrderedAutomaton, w: str) -> bool:
    return step(oa.sa, oa.initial, w) in oa.finals


def future_accepts(oa: OrderedAutomaton, q: int, w: str) -> bool:
    """Membership in L_q = {u : q . u in F}, the future language of q."""
    return step(oa.sa, q, w) in oa.finals


def quotient_left(oa: OrderedAutomaton, u: str) -> OrderedAutomaton:
    """Automaton for the left quotient u^-1 L: move the initial state along u."""
    return OrderedAutomaton(oa.osa, step(oa.sa, oa.initial, u), oa.finals)


def quotient_right(oa: OrderedAutomaton, v: str) -> OrderedAutomaton:
    """Automaton for the right quotient L v^-1: replace F by F_v = {q : q . v in F}."""
    sa = oa.sa
    fv = frozenset(q for q in range(sa.state_count) if step(sa, q, v) in oa.finals)
    out = OrderedAutomaton(oa.osa, oa.initial, fv)
    # F_v is upward closed whenever the input is valid; re-check rather than trust.
    for p in fv:
        for q in range(sa.state_count):
            if oa.order.leq(p, q) and q not in fv:
                raise OrdaError(f"right quotient by {v!r} broke upward closure at ({p}, {q}); input automaton is invalid")
    return out


def dual(osa: OrderedSemiautomaton) -> OrderedSemiautomaton:
    """Same transitions, reversed order."""
    return OrderedSemiautomaton(osa.sa, osa.order.reversed())


def discrete(sa: Semiautomaton) -> OrderedSemiautomaton:
    """Equip with the equality order."""
    return OrderedSemiautomaton(sa, StateOrder.discrete(sa.state_count))


def reachable_states(sa: Semiautomaton, q: int) -> tuple[int, ...]:
    """States reachable from q, in breadth-first discovery order (letters in alphabet order)."""
    seen = {q}
    out = [q]
    queue = deque([q])
    while queue:
        p = queue.popleft()
        for r in sa.delta[p]:
            if r not in seen:
                seen.add(r)
                out.append(r)
                queue.append(r)
    return tuple(out)


# --- text format ------------------------------------------------------------
#
# One item per line, '#' starts a comment, keys: alphabet, states, initial,
# finals, order, trans.  Missing order lines mean the discrete order.


def parse_automaton(text: str) -> OrderedAutomaton:
    alphabet = None
    state_count = None
    initial = None
    finals = None
    order_pairs = []
    trans = {}

    def fail(msg, lineno):
        raise ParseError(msg, line=lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            fail(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        rest = rest.strip()
        if key == "alphabet":
            if alphabet is not None:
                fail("duplicate alphabet line", lineno)
            try:
                alphabet = Alphabet(tuple(rest.split()))
            except AlphabetError as e:
                fail(str(e), lineno)
        elif key == "states":
            if state_count is not None:
                fail("duplicate states line", lineno)
            if not rest.isdigit() or int(rest) < 1:
                fail(f"states wants a positive integer, got {rest!r}", lineno)
            state_count = int(rest)
        elif key == "initial":
            if initial is not None:
                fail("duplicate initial line", lineno)
            if not rest.isdigit():
                fail(f"initial wants a state index, got {rest!r}", lineno)
            initial = int(rest)
        elif key == "finals":
            if finals is not None:
                fail("duplicate finals line", lineno)
            try:
                finals = frozenset(int(tok) for tok in rest.split())
            except ValueError:
                fail(f"finals wants state indices, got {rest!r}", lineno)
        elif key == "order":
            parts = rest.split()
            if len(parts) != 3 or parts[1] != "<=" or not parts[0].isdigit() or not parts[2].isdigit():
                fail(f"order wants 'p <= q', got {rest!r}", lineno)
            order_pairs.append((int(parts[0]), int(parts[2]), lineno))
        elif key == "trans":
            parts = rest.split()
            if len(parts) != 3 or not parts[0].isdigit() or not parts[2].isdigit():
                fail(f"trans wants 'state symbol state', got {rest!r}", lineno)
            src, sym, dst = int(parts[0]), parts[1], int(parts[2])
            if (src, sym) in trans:
                fail(f"duplicate transition for ({src}, {sym})", lineno)
            trans[(src, sym)] = (dst, lineno)
        else:
            fail(f"unknown key {key!r}", lineno)

    if alphabet is None:
        raise ParseError("missing alphabet line")
    if state_count is None:
        raise ParseError("missing states line")
    if initial is None:
        raise ParseError("missing initial line")
    if finals is None:
        raise ParseError("missing finals line")

    rows = []
    for q in range(state_count):
        row = []
        for a in alphabet:
            if (q, a) not in trans:
                raise ParseError(f"missing transition for ({q}, {a})")
            dst, lineno = trans.pop((q, a))
            if not 0 <= dst < state_count:
                raise ParseError(f"transition target {dst} out of range", line=lineno)
            row.append(dst)
        rows.append(tuple(row))
    if trans:
        (src, sym), (_, lineno) = next(iter(trans.items()))
        raise ParseError(f"transition from unknown state or symbol ({src}, {sym})", line=lineno)

    for p, q, lineno in order_pairs:
        if not (0 <= p < state_count and 0 <= q < state_count):
            raise ParseError(f"order pair ({p}, {q}) out of range", line=lineno)
    order = StateOrder.from_pairs(state_count, [(p, q) for p, q, _ in order_pairs])

    if not 0 <= initial < state_count:
        raise ParseError(f"initial state {initial} out of range")
    for q in finals:
        if not 0 <= q < state_count:
            raise ParseError(f"final state {q} out of range")

    oa = OrderedAutomaton(OrderedSemiautomaton(Semiautomaton(alphabet, tuple(rows)), order), initial, finals)
    violations = validate(oa)
    if violations:
        raise OrdaError("invalid automaton: " + "; ".join(violations))
    return oa


def format_automaton(oa: OrderedAutomaton) -> str:
    sa = oa.sa
    lines = [
        "alphabet: " + " ".join(sa.alphabet),
        f"states: {sa.state_count}",
        f"initial: {oa.initial}",
        "finals:" + "".join(f" {q}" for q in sorted(oa.finals)),
    ]
    for p, q in sorted(oa.order.pairs()):
        lines.append(f"order: {p} <= {q}")
    for q in range(sa.state_count):
        for k, a in enumerate(sa.alphabet):
            lines.append(f"trans: {q} {a} {sa.delta[q][k]}")
    return "\n".join(lines) + "\n"
