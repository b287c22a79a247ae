"""Transition monoids of ordered semiautomata and the inequality oracles on them.

The transition monoid of (Q, A, ., <=) is the set of transformations of Q
induced by words, ordered pointwise by the state order.  Taken over the
minimal ordered automaton of a language it is the syntactic ordered monoid,
which is what lets the oracles here serve as ground truth for the
automaton-level classifiers.
"""

from __future__ import annotations

from .core import OrderedSemiautomaton
from .errors import AlphabetError, ResourceError

# full composition memo only for monoids where the table stays cheap
_MEMO_LIMIT = 2000


class TransitionMonoid:
    """Closure of the letter actions under composition; immutable once built.

    elements[i] is a transformation tuple t with q.w = t[q]; element 0 is the
    identity.  witnesses[i] is the length-lex least word acting as element i.
    """

    __slots__ = ("elements", "witnesses", "generators", "order", "_index", "_memo", "_omega")

    identity = 0

    def __init__(self, elements, witnesses, generators, order):
        self.elements = elements
        self.witnesses = witnesses
        self.generators = generators
        self.order = order
        self._index = {t: i for i, t in enumerate(elements)}
        self._memo = {} if len(elements) <= _MEMO_LIMIT else None
        self._omega = {}

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<transition monoid, {len(self.elements)} elements>"

    def compose(self, i: int, j: int) -> int:
        """Element acting as w_i followed by w_j."""
        if self._memo is not None:
            out = self._memo.get((i, j))
            if out is not None:
                return out
        tj = self.elements[j]
        out = self._index[tuple(tj[q] for q in self.elements[i])]
        if self._memo is not None:
            self._memo[(i, j)] = out
        return out


def build(osa: OrderedSemiautomaton, cap: int = 1_000_000) -> TransitionMonoid:
    """Transition monoid by breadth-first closure of the letter actions.

    Elements are discovered in length-lex order of their witness words, so
    every element carries its shortest (then lexicographically least) witness.
    """
    sa = osa.sa
    n = sa.state_count
    delta = sa.delta
    identity = tuple(range(n))
    elements = [identity]
    witnesses = [""]
    index = {identity: 0}
    pos = 0
    while pos < len(elements):
        base = elements[pos]
        for k, a in enumerate(sa.alphabet):
            t = tuple(delta[q][k] for q in base)
            if t not in index:
                if len(elements) >= cap:
                    raise ResourceError(f"transition monoid exceeded {cap} elements")
                index[t] = len(elements)
                elements.append(t)
                witnesses.append(witnesses[pos] + a)
        pos += 1
    generators = {
        a: index[tuple(delta[q][k] for q in range(n))] for k, a in enumerate(sa.alphabet)
    }
    return TransitionMonoid(tuple(elements), tuple(witnesses), generators, osa.order)


def element_of_word(tm: TransitionMonoid, w: str) -> int:
    """Fold the word through the generator map."""
    out = tm.identity
    for a in w:
        g = tm.generators.get(a)
        if g is None:
            raise AlphabetError(f"symbol {a!r} not in alphabet")
        out = tm.compose(out, g)
    return out


def _omega_data(tm: TransitionMonoid, m: int) -> tuple[int, int]:
    """(idempotent power of m, its exponent).

    Iterate m, m^2, ... until a repeat closes the cycle (threshold mu,
    cycle length lam); the idempotent is m^n for the least multiple n of
    lam with n >= mu.
    """
    cached = tm._omega.get(m)
    if cached is not None:
        return cached
    powers = [m]  # powers[e-1] = m^(e)
    seen = {m: 1}
    cur = m
    while True:
        cur = tm.compose(cur, m)
        exp = len(powers) + 1
        first = seen.get(cur)
        if first is not None:
            lam = exp - first
            n = lam * ((first + lam - 1) // lam)
            out = (powers[n - 1], n)
            break
        seen[cur] = exp
        powers.append(cur)
    tm._omega[m] = out
    return out


def omega_power(tm: TransitionMonoid, m: int) -> int:
    """The unique idempotent among the powers of m."""
    return _omega_data(tm, m)[0]


def omega_exponent(tm: TransitionMonoid, m: int) -> int:
    """The exponent n >= 1 with m^n idempotent; realizes ^w on witness words."""
    return _omega_data(tm, m)[1]


def is_aperiodic(tm: TransitionMonoid) -> tuple[bool, int | None]:
    """True iff m^omega . m = m^omega for every element; witness = offending element."""
    for m in range(len(tm)):
        e = omega_power(tm, m)
        if tm.compose(e, m) != e:
            return False, m
    return True, None


def _right_ideal(tm: TransitionMonoid, m: int) -> frozenset:
    """mM as an explicit element set (closure under right generator steps)."""
    gens = sorted(set(tm.generators.values()))
    seen = {m}
    stack = [m]
    while stack:
        x = stack.pop()
        for g in gens:
            y = tm.compose(x, g)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def _two_sided_ideal(tm: TransitionMonoid, m: int) -> frozenset:
    """MmM as an explicit element set (closure under both one-sided generator steps)."""
    gens = sorted(set(tm.generators.values()))
    seen = {m}
    stack = [m]
    while stack:
        x = stack.pop()
        for g in gens:
            for y in (tm.compose(x, g), tm.compose(g, x)):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return frozenset(seen)


def is_r_trivial(tm: TransitionMonoid) -> tuple[bool, tuple[int, int] | None]:
    """True iff equal principal right ideals force equal elements.

    A non-aperiodic monoid fails outright: for a witness m with e = m^omega,
    the pair (e, e.m) is distinct yet e.m.m^(n-1) = e.e = e, so both generate
    the same right ideal.  Checking that first keeps the quadratic ideal scan
    off the huge non-aperiodic monoids.
    """
    ok, m = is_aperiodic(tm)
    if not ok:
        e = omega_power(tm, m)
        return False, (e, tm.compose(e, m))
    ideals: dict[frozenset, int] = {}
    for x in range(len(tm)):
        ideal = _right_ideal(tm, x)
        other = ideals.get(ideal)
        if other is not None:
            return False, (other, x)
        ideals[ideal] = x
    return True, None


def is_j_trivial(tm: TransitionMonoid) -> tuple[bool, tuple[int, int] | None]:
    """True iff equal principal two-sided ideals force equal elements.

    J-trivial implies R-trivial on a finite monoid, and an R-violating pair
    has equal right (hence two-sided) ideals, so the R check doubles as a
    sound prefilter.
    """
    ok, pair = is_r_trivial(tm)
    if not ok:
        return False, pair
    ideals: dict[frozenset, int] = {}
    for x in range(len(tm)):
        ideal = _two_sided_ideal(tm, x)
        other = ideals.get(ideal)
        if other is not None:
            return False, (other, x)
        ideals[ideal] = x
    return True, None


def leq(tm: TransitionMonoid, m1: int, m2: int) -> bool:
    """Pointwise order lifted from the state order: q.m1 <= q.m2 at every q."""
    t1 = tm.elements[m1]
    t2 = tm.elements[m2]
    return all(tm.order.leq(p, q) for p, q in zip(t1, t2))


def satisfies_one_leq_x(tm: TransitionMonoid) -> tuple[bool, int | None]:
    """True iff the identity is below every element in the pointwise order."""
    for m in range(len(tm)):
        if not leq(tm, tm.identity, m):
            return False, m
    return True, None
