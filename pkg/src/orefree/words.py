"""Subword-closed languages given by forbidden factors.

A language ``W`` is the set of words over a finite alphabet that contain
none of the forbidden factors. It is compiled into an Aho-Corasick style
automaton whose dead states are exactly the states whose suffix chain
passes through a forbidden word, so membership is a single left-to-right
scan.

Growth data come from counting paths in the live part of the automaton.
A word has arbitrarily long right extensions inside ``W`` exactly when its
end state can still reach a cycle, which gives ``g(n) = |V_n|`` by the
same counting restricted to those states.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import comb

DEFAULT_HORIZON = 64
PERIODIC = "PERIODIC"
BINOMIAL_GROWTH = "BINOMIAL_GROWTH"
FOUND = "FOUND"
NOT_FOUND = "NOT_FOUND"
FINITE = "finite"
GROWTH = "growth"


class FactorLanguage:
    """Words over ``alphabet`` avoiding every word of ``forbidden`` as a factor."""

    def __init__(self, alphabet: str, forbidden):
        letters = list(alphabet)
        if not letters:
            raise ValueError("alphabet must not be empty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"repeated letter in alphabet {alphabet!r}")
        if len(letters) > 26:
            raise ValueError("alphabet has more than 26 letters")
        forbidden = tuple(sorted(set(forbidden), key=lambda w: (len(w), w)))
        for w in forbidden:
            if not w:
                raise ValueError("forbidden factors must be nonempty")
            bad = set(w) - set(letters)
            if bad:
                raise ValueError(f"forbidden factor {w!r} uses letters outside the alphabet: {sorted(bad)}")
        self.alphabet = "".join(letters)
        self.forbidden = forbidden
        self._compile()

    def _compile(self):
        goto = [{}]
        dead = [False]
        for w in self.forbidden:
            node = 0
            for a in w:
                nxt = goto[node].get(a)
                if nxt is None:
                    goto.append({})
                    dead.append(False)
                    nxt = len(goto) - 1
                    goto[node][a] = nxt
                node = nxt
            dead[node] = True
        fail = [0] * len(goto)
        delta = [dict() for _ in goto]
        queue = deque()
        for a in self.alphabet:
            nxt = goto[0].get(a)
            if nxt is None:
                delta[0][a] = 0
            else:
                delta[0][a] = nxt
                queue.append(nxt)
        while queue:
            node = queue.popleft()
            dead[node] = dead[node] or dead[fail[node]]
            for a in self.alphabet:
                nxt = goto[node].get(a)
                if nxt is None:
                    delta[node][a] = delta[fail[node]][a]
                else:
                    fail[nxt] = delta[fail[node]][a]
                    delta[node][a] = nxt
                    queue.append(nxt)
        self.delta = delta
        self.dead = frozenset(i for i, d in enumerate(dead) if d)
        self.start = 0
        # live states reachable from the start through live states
        seen = {0} if 0 not in self.dead else set()
        stack = list(seen)
        while stack:
            q = stack.pop()
            for a in self.alphabet:
                r = delta[q][a]
                if r not in self.dead and r not in seen:
                    seen.add(r)
                    stack.append(r)
        self.live = frozenset(seen)
        # states with an infinite live path: prune states without live successors
        inf = set(seen)
        changed = True
        while changed:
            changed = False
            for q in list(inf):
                if not any(delta[q][a] in inf for a in self.alphabet):
                    inf.discard(q)
                    changed = True
        self.extendable = frozenset(inf)

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def step(self, state: int | None, letter: str) -> int | None:
        if state is None:
            return None
        if letter not in self.delta[state]:
            raise ValueError(f"letter {letter!r} not in alphabet {self.alphabet!r}")
        nxt = self.delta[state][letter]
        return None if nxt in self.dead else nxt

    def state_of(self, word: str) -> int | None:
        """End state after reading ``word``; None once a forbidden factor occurs."""
        state = self.start if self.start not in self.dead else None
        for a in word:
            state = self.step(state, a)
            if state is None:
                return None
        return state

    def membership(self, word: str) -> bool:
        return self.state_of(word) is not None

    __contains__ = membership

    def is_infinite(self) -> bool:
        return self.start in self.extendable

    def words(self, n: int, *, extendable: bool = False) -> list[str]:
        """Words of length ``n`` in W (in V_n when ``extendable``), in alphabet order."""
        allowed = self.extendable if extendable else self.live
        if self.start not in allowed:
            return []
        out = []

        def walk(state, prefix, left):
            if left == 0:
                out.append(prefix)
                return
            for a in self.alphabet:
                r = self.delta[state][a]
                if r in allowed:
                    walk(r, prefix + a, left - 1)

        walk(self.start, "", n)
        return out

    def __repr__(self) -> str:
        return f"FactorLanguage({self.alphabet!r}, {list(self.forbidden)!r})"


def build_language(alphabet: str = "xy", forbidden=()) -> FactorLanguage:
    return FactorLanguage(alphabet, forbidden)


@dataclass(frozen=True)
class GrowthProfile:
    f: tuple
    g: tuple
    cumulative: tuple

    @property
    def horizon(self) -> int:
        return len(self.f) - 1

    def to_json(self) -> dict:
        return {"horizon": self.horizon, "f": list(self.f), "g": list(self.g), "cumulative": list(self.cumulative)}


def growth(lang: FactorLanguage, horizon: int = DEFAULT_HORIZON) -> GrowthProfile:
    """``f(n) = |W_n|`` and ``g(n) = |V_n|`` for ``0 <= n <= horizon`` by path counting."""
    counts = {lang.start: 1} if lang.start in lang.live else {}
    f, g = [], []
    for _ in range(horizon + 1):
        f.append(sum(counts.values()))
        g.append(sum(c for q, c in counts.items() if q in lang.extendable))
        nxt: dict = {}
        for q, c in counts.items():
            for a in lang.alphabet:
                r = lang.delta[q][a]
                if r in lang.live:
                    nxt[r] = nxt.get(r, 0) + c
        counts = nxt
    return GrowthProfile(tuple(f), tuple(g), tuple(itertools.accumulate(f)))


# ---------------------------------------------------------------------------
# periodic words


def power_cycle(lang: FactorLanguage, u: str) -> dict | None:
    """Automaton proof that ``u^n`` lies in W for every ``n``, or None.

    Reading ``u`` repeatedly from the start visits states ``q_0, q_1, ...``;
    once some ``q_a = q_b`` with ``a < b`` and no dead state was met, the
    sequence is periodic and every power survives.
    """
    if not u:
        return None
    seen = {}
    states = []
    state = lang.state_of("")
    if state is None:
        return None
    while state not in seen:
        seen[state] = len(states)
        states.append(state)
        for a in u:
            state = lang.step(state, a)
            if state is None:
                return None
    return {"states": states, "cycle_start": seen[state], "cycle_length": len(states) - seen[state]}


@dataclass
class PeriodicResult:
    status: str
    u: str | None = None
    reason: str | None = None
    index: int | None = None  # least i with g(i) = g(i+1)
    construction: dict = field(default_factory=dict)
    proof: dict | None = None
    profile: GrowthProfile | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.u is not None:
            out.update(u=self.u, index=self.index, construction=self.construction, proof=self.proof)
        if self.reason is not None:
            out["reason"] = self.reason
        if self.profile is not None and not self.found:
            out["profile"] = self.profile.to_json()
        return out


def _deglex(alphabet: str):
    order = {a: i for i, a in enumerate(alphabet)}
    return lambda w: (len(w), [order[a] for a in w])


def _unique_extension(lang: FactorLanguage, w: str) -> str:
    options = [a for a in lang.alphabet if lang.state_of(w + a) in lang.extendable]
    if len(options) != 1:
        raise ArithmeticError(f"{w!r} has {len(options)} extensions although g stabilized")
    return options[0]


def find_periodic_word(lang: FactorLanguage, horizon: int = DEFAULT_HORIZON) -> PeriodicResult:
    """A word ``u`` with ``u^n`` in W for all ``n``, following the pigeonhole construction.

    With ``i`` the least index ``>= 1`` such that ``g(i) = g(i+1) = m``,
    every word of V_i has a unique extension. The deglex-least word of
    length ``i(m+1)`` in V splits into ``m+1`` blocks of length ``i``; two
    blocks coincide and the blocks between them form a period. The
    returned ``u`` is the deglex-least word that passes the automaton
    power test, searched up to the length of that period.
    """
    profile = growth(lang, horizon + 1)
    if not lang.is_infinite():
        return PeriodicResult(NOT_FOUND, reason=FINITE, profile=profile)
    g = profile.g
    index = next((i for i in range(1, horizon + 1) if g[i] == g[i + 1]), None)
    if index is None:
        return PeriodicResult(NOT_FOUND, reason=GROWTH, profile=profile)
    m = g[index]
    blocks = lang.words(index, extendable=True)
    v = min(blocks, key=_deglex(lang.alphabet))
    while len(v) < index * (m + 1):
        v += _unique_extension(lang, v)
    parts = [v[k * index:(k + 1) * index] for k in range(m + 1)]
    first = {}
    for b, part in enumerate(parts):
        if part in first:
            a = first[part]
            break
        first[part] = b
    u_constructed = "".join(parts[a:b])
    proof = power_cycle(lang, u_constructed)
    if proof is None:
        raise ArithmeticError(f"constructed period {u_constructed!r} fails the power test")
    best = u_constructed
    key = _deglex(lang.alphabet)
    for n in range(1, len(u_constructed) + 1):
        hits = [w for w in lang.words(n) if power_cycle(lang, w) is not None]
        if hits:
            best = min(hits, key=key)
            break
    construction = {"m": m, "v": v, "blocks": parts, "repeat": [a, b], "u": u_constructed}
    return PeriodicResult(FOUND, best, index=index, construction=construction,
                          proof=power_cycle(lang, best), profile=profile)


@dataclass
class DichotomyResult:
    kind: str
    u: str | None = None
    d: int | None = None  # witness with f(d) <= d
    periodic: PeriodicResult | None = None
    profile: GrowthProfile | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "profile": self.profile.to_json()}
        if self.d is not None:
            out["d"] = self.d
        if self.periodic is not None:
            out["periodic"] = self.periodic.to_json()
            out["u"] = self.u
        else:
            out["binomial"] = [comb(n + 2, 2) for n in range(len(self.profile.f))]
        return out


def gap_dichotomy(lang: FactorLanguage, horizon: int = DEFAULT_HORIZON) -> DichotomyResult:
    """Either some ``f(d) <= d`` (and a periodic word is extracted) or binomial cumulative growth.

    When W is finite the periodic search reports ``NOT_FOUND(finite)``
    and the kind is ``NOT_FOUND``.
    """
    profile = growth(lang, horizon)
    d = next((n for n in range(1, horizon + 1) if profile.f[n] <= n), None)
    if d is not None:
        res = find_periodic_word(lang, horizon)
        kind = PERIODIC if res.found else NOT_FOUND
        return DichotomyResult(kind, res.u, d, res, profile)
    for n, total in enumerate(profile.cumulative):
        if total < comb(n + 2, 2):
            raise ArithmeticError(f"cumulative growth {total} below binomial bound at n = {n}")
    return DichotomyResult(BINOMIAL_GROWTH, profile=profile)
