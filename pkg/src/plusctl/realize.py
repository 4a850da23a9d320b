"""Concrete finite groups: coset enumeration over the trivial subgroup.

Element ids are canonical: breadth-first order of the right Cayley graph
from the identity (id 0), scanning letters ``g1, g1^-1, g2, g2^-1, ...``.
The stored tables are left multiplication by each generator, so two
realizations of the same group with the same generator images have
identical tables.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import ResourceExhausted, ValidationError
from .words import Presentation, Word

DEFAULT_MAX_COSETS = 10**6


def default_max_cosets() -> int:
    env = os.environ.get("PLUSCTL_MAX_COSETS")
    if not env:
        return DEFAULT_MAX_COSETS
    try:
        value = int(env)
    except ValueError:
        raise ValidationError(f"PLUSCTL_MAX_COSETS must be an integer, got {env!r}") from None
    if value < 1:
        raise ValidationError("PLUSCTL_MAX_COSETS must be positive")
    return value


class CosetLimitExceeded(ResourceExhausted):
    pass


@dataclass(frozen=True, eq=False)
class FiniteRealization:
    generators: tuple[str, ...]
    tables: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteRealization):
            return NotImplemented
        return self.generators == other.generators and self.tables == other.tables

    def __hash__(self):
        return hash((self.generators, self.tables))

    @property
    def order(self) -> int:
        return len(self.tables[0]) if self.tables else 1

    @property
    def n(self) -> int:
        return len(self.generators)

    @cached_property
    def _left(self) -> dict[int, tuple[int, ...]]:
        out = {}
        for i, t in enumerate(self.tables, start=1):
            inv = [0] * len(t)
            for x, y in enumerate(t):
                inv[y] = x
            out[i] = t
            out[-i] = tuple(inv)
        return out

    @cached_property
    def _right(self) -> dict[int, tuple[int, ...]]:
        # x.g is obtained by applying the word of x (left actions) to the image of g
        out = {}
        for i in range(1, self.n + 1):
            for letter in (i, -i):
                g = self._left[letter][0]
                out[letter] = tuple(self._apply_left(self.words[x], g) for x in range(self.order))
        return out

    @cached_property
    def words(self) -> tuple[Word, ...]:
        """Minimal-length BFS words, prefix closed; ``words[x]`` represents x."""
        new_id, words = _bfs_words(self._right_from_left(), self.order, self.n)
        return tuple(words[new_id[x]] for x in range(self.order))

    def _right_from_left(self):
        # right action computed from the left tables via arbitrary BFS words
        order = self.order
        tmp: list[Word | None] = [None] * order
        tmp[0] = Word()
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for i in range(1, self.n + 1):
                for letter in (i, -i):
                    y = self._left[letter][x]
                    if tmp[y] is None:
                        tmp[y] = Word._trusted((letter,) + tuple(tmp[x]))
                        queue.append(y)
        if any(w is None for w in tmp):
            raise ValidationError("generator action is not transitive from the identity")
        right = {}
        for i in range(1, self.n + 1):
            for letter in (i, -i):
                g = self._left[letter][0]
                right[letter] = [self._apply_left(tmp[x], g) for x in range(order)]
        return right

    def _apply_left(self, w: Sequence[int], x: int) -> int:
        for letter in reversed(w):
            x = self._left[letter][x]
        return x

    def image_of_word(self, w: Sequence[int]) -> int:
        """Element id of ``w``; letters act right-to-left by left multiplication."""
        x = 0
        left = self._left
        for letter in reversed(w):
            x = left[letter][x]
        return x

    def word_for_element(self, x: int) -> Word:
        return self.words[x]

    def act_right(self, x: int, w: Sequence[int]) -> int:
        """``x * w`` as an element id."""
        right = self._right
        for letter in w:
            x = right[letter][x]
        return x

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        order = self.order
        return tuple(tuple(self.act_right(x, self.words[y]) for y in range(order)) for x in range(order))

    def multiply(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(self.image_of_word(self.words[x].inverse()) for x in range(self.order))

    def inverse(self, x: int) -> int:
        return self.inverses[x]

    def is_trivial(self, w: Sequence[int]) -> bool:
        return self.image_of_word(w) == 0

    def extend_trivially(self, names: Sequence[str]) -> "FiniteRealization":
        """Append generators that act as the identity."""
        ident = tuple(range(self.order))
        return FiniteRealization(self.generators + tuple(names), self.tables + (ident,) * len(names))

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "order": self.order, "tables": [list(t) for t in self.tables]}

    @classmethod
    def from_json(cls, doc: dict) -> "FiniteRealization":
        r = from_left_tables(doc["generators"], doc["tables"])
        if "order" in doc and doc["order"] != r.order:
            raise ValidationError("realization order does not match its tables")
        return r

    def check_relators(self, p: Presentation) -> None:
        if tuple(p.generators) != self.generators:
            raise ValidationError("realization alphabet does not match the presentation")
        for j, rel in enumerate(p.relators, start=1):
            if not self.is_trivial(rel):
                raise ValidationError(f"relator {j} is not trivial in the realization")


def _bfs_words(right, order: int, n: int):
    """Canonical relabelling from a right action given as ``right[letter][x]``."""
    new_id = {0: 0}
    words = [Word()]
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for i in range(1, n + 1):
            for letter in (i, -i):
                y = right[letter][x]
                if y not in new_id:
                    new_id[y] = len(words)
                    words.append(Word._trusted(tuple(words[new_id[x]]) + (letter,)))
                    queue.append(y)
    if len(words) != order:
        raise ValidationError("generator action is not transitive from the identity")
    return new_id, tuple(words)


def _from_right_action(generators: Sequence[str], right, order: int) -> FiniteRealization:
    n = len(generators)
    new_id, words = _bfs_words(right, order, n)
    relabelled = {letter: [0] * order for letter in right}
    for letter, perm in right.items():
        for x, y in enumerate(perm):
            relabelled[letter][new_id[x]] = new_id[y]

    def trace(x, w):
        for letter in w:
            x = relabelled[letter][x]
        return x

    tables = []
    for i in range(1, n + 1):
        g = relabelled[i][0]
        tables.append(tuple(trace(g, words[x]) for x in range(order)))
    r = FiniteRealization(tuple(generators), tuple(tables))
    r.__dict__["words"] = words
    r.__dict__["_right"] = {letter: tuple(perm) for letter, perm in relabelled.items()}
    return r


def from_left_tables(generators: Sequence[str], tables: Sequence[Sequence[int]]) -> FiniteRealization:
    """Validate user tables (left multiplication) and renumber canonically."""
    if len(tables) != len(generators):
        raise ValidationError("one table per generator is required")
    order = len(tables[0]) if tables else 1
    for t in tables:
        if len(t) != order or sorted(t) != list(range(order)):
            raise ValidationError("every table must be a permutation of 0..order-1")
    raw = FiniteRealization(tuple(generators), tuple(tuple(t) for t in tables))
    right = raw._right_from_left()
    # tables of left multiplication commute with the right action they induce;
    # together with transitivity this forces a regular action, i.e. a group
    for letter, perm in right.items():
        if sorted(perm) != list(range(order)):
            raise ValidationError("tables are not the left multiplication of a group")
        for g in range(1, len(generators) + 1):
            t = raw._left[g]
            if any(t[perm[x]] != perm[t[x]] for x in range(order)):
                raise ValidationError("tables are not the left multiplication of a group")
    return _from_right_action(generators, right, order)


def trivial_realization(generators: Sequence[str]) -> FiniteRealization:
    return FiniteRealization(tuple(generators), tuple((0,) for _ in generators))


# ---------------------------------------------------------------- Todd-Coxeter


def todd_coxeter(p: Presentation, max_cosets: int | None = None) -> FiniteRealization:
    """Enumerate cosets of the trivial subgroup (HLT with coincidence processing).

    Raises :class:`CosetLimitExceeded` once more than ``max_cosets`` cosets
    have been defined.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets()
    n = p.n
    if n == 0:
        raise ValidationError("presentation has no generators")
    ncols = 2 * n

    def col(letter):
        return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1

    inv_col = [c ^ 1 for c in range(ncols)]
    rels = [[col(x) for x in r] for r in p.relators if r]

    table: list[list[int]] = [[-1] * ncols]
    parent = [0]

    def define(c, x):
        if len(table) >= max_cosets:
            raise CosetLimitExceeded(f"coset enumeration exceeded {max_cosets} cosets")
        d = len(table)
        table.append([-1] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][inv_col[x]] = c

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(k, l, queue):
        k, l = rep(k), rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        parent[l] = k
        queue.append(l)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(ncols):
                f = row[x]
                if f < 0:
                    continue
                ix = inv_col[x]
                table[f][ix] = -1
                e1, f1 = rep(e), rep(f)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x], queue)
                elif table[f1][ix] >= 0:
                    merge(e1, table[f1][ix], queue)
                else:
                    table[e1][x] = f1
                    table[f1][ix] = e1

    def scan_and_fill(c, w):
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv_col[w[j]]] >= 0:
                b = table[b][inv_col[w[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv_col[w[i]]] = f
                return
            define(f, w[i])

    c = 0
    while c < len(table):
        if parent[c] == c:
            for w in rels:
                if parent[c] != c:
                    break
                scan_and_fill(c, w)
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] < 0:
                        define(c, x)
        c += 1

    live = [k for k in range(len(table)) if parent[k] == k]
    index = {k: i for i, k in enumerate(live)}
    right = {}
    for g in range(1, n + 1):
        for letter in (g, -g):
            cx = col(letter)
            right[letter] = [index[rep(table[k][cx])] for k in live]
    return _from_right_action(p.generators, right, len(live))


def same_action(a: FiniteRealization, b: FiniteRealization) -> bool:
    return a.generators == b.generators and a.tables == b.tables
