"""Surjection multisimplicial sets Sur(k), Barratt-Eccles sets W Sigma_k,
their complexity filtrations, generator counts, and the comparison maps tc / TC.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import ZZ, Ring, vec_add, vec_clean
from .msets import Diagonal, IndexOutOfRange, MSet, _digits, _undigits

Perm = Tuple[int, ...]


class MalformedDiagonal(ValueError):
    pass


def _occurrence(u: Sequence[int], value: int, j: int) -> int:
    """Position of the (j+1)-th occurrence of ``value`` in ``u``."""
    seen = -1
    for pos, v in enumerate(u):
        if v == value:
            seen += 1
            if seen == j:
                return pos
    raise IndexOutOfRange(f"{value} occurs fewer than {j + 1} times in {u}")


def complexity(u: Sequence[int]) -> int:
    """Largest number of variations of ``u`` restricted to a pair of values.

    A single value has complexity 1 (it sits in the first filtration stage).
    Repeated adjacent values add nothing, so degeneracies preserve complexity.
    """
    values = sorted(set(u))
    best = 1
    for ia, a in enumerate(values):
        for b in values[ia + 1:]:
            last, var = None, 0
            for v in u:
                if v == a or v == b:
                    if last is not None and v != last:
                        var += 1
                    last = v
            best = max(best, var)
    return best


def be_complexity(s: Sequence[Perm]) -> int:
    """One plus the largest number of order changes of a pair along ``(sigma_0, ..., sigma_i)``."""
    if not s:
        return 1
    k = len(s[0])
    pos = [{v: i for i, v in enumerate(p)} for p in s]
    best = 0
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            changes = sum((p[a] < p[b]) != (q[a] < q[b]) for p, q in zip(pos, pos[1:]))
            best = max(best, changes)
    return best + 1


class Surjection(MSet):
    """``Sur(k)`` or its filtration stage ``Sur_d(k)`` (complexity <= d).

    Payloads are tuples of values in ``1..k``; direction ``l`` has degree
    (number of occurrences of ``l``) - 1.
    """

    def __init__(self, k: int, d: Optional[int] = None):
        super().__init__()
        if k < 1:
            raise ValueError("k must be positive")
        if d is not None and d < 1:
            raise ValueError("filtration index d must be >= 1")
        self.k = k
        self.d = d

    def __repr__(self):
        return f"Surjection(k={self.k}, d={self.d})"

    def degree(self, x):
        c = Counter(x)
        return tuple(c[l] - 1 for l in range(1, self.k + 1))

    def _face(self, x, l, i):
        p = _occurrence(x, l, i)
        return x[:p] + x[p + 1:]

    def _degeneracy(self, x, l, i):
        p = _occurrence(x, l, i)
        return x[:p + 1] + x[p:]

    def is_degenerate(self, x):
        return any(a == b for a, b in zip(x, x[1:]))

    def contains(self, x) -> bool:
        if sorted(set(x)) != list(range(1, self.k + 1)):
            return False
        return self.d is None or complexity(x) <= self.d

    def front_face(self, x, idx):
        self._check_face_index(x, idx)
        seen = [0] * (self.k + 1)
        out = []
        for v in x:
            if seen[v] <= idx[v - 1]:
                out.append(v)
            seen[v] += 1
        return tuple(out)

    def back_face(self, x, idx):
        deg = self._check_face_index(x, idx)
        seen = [0] * (self.k + 1)
        out = []
        for v in x:
            # skip the first a_l - i_l occurrences
            if seen[v] >= deg[v - 1] - idx[v - 1]:
                out.append(v)
            seen[v] += 1
        return tuple(out)

    def _enumerate(self, degree):
        return list(_arrangements(self.k, [a + 1 for a in degree], self.d, nondegenerate=False))

    def encode(self, x):
        return _digits(x, self.k > 9)

    def decode(self, s):
        return _undigits(s)


def _arrangements(k: int, counts: List[int], d: Optional[int], nondegenerate: bool):
    """Sequences with ``counts[l-1]`` copies of ``l``, lexicographic, pairwise variations <= d."""
    n = sum(counts)
    seq: List[int] = []
    last = [-1] * (k + 1)
    var: Dict[Tuple[int, int], int] = {}
    counts = list(counts)

    def rec():
        if len(seq) == n:
            yield tuple(seq)
            return
        for v in range(1, k + 1):
            if not counts[v - 1] or (nondegenerate and seq and seq[-1] == v):
                continue
            bumped = []
            ok = True
            for w in range(1, k + 1):
                if w != v and last[w] > last[v]:
                    key = (v, w) if v < w else (w, v)
                    c = var.get(key, 0) + 1
                    var[key] = c
                    bumped.append(key)
                    if d is not None and c > d:
                        ok = False
                        break
            if ok:
                prev = last[v]
                last[v] = len(seq)
                seq.append(v)
                counts[v - 1] -= 1
                yield from rec()
                counts[v - 1] += 1
                seq.pop()
                last[v] = prev
            for key in bumped:
                var[key] -= 1

    yield from rec()


def nondegenerate_surjections(k: int, d: int):
    """All non-degenerate elements of ``Sur_d(k)`` (finitely many), any degree."""
    seq: List[int] = []
    last = [-1] * (k + 1)
    var: Dict[Tuple[int, int], int] = {}

    def rec():
        if last.count(-1) == 1:  # index 0 is unused, so every value has appeared
            yield tuple(seq)
        for v in range(1, k + 1):
            if seq and seq[-1] == v:
                continue
            bumped, ok = [], True
            for w in range(1, k + 1):
                if w != v and last[w] > last[v]:
                    key = (v, w) if v < w else (w, v)
                    var[key] = var.get(key, 0) + 1
                    bumped.append(key)
                    if var[key] > d:
                        ok = False
                        break
            if ok:
                prev = last[v]
                last[v] = len(seq)
                seq.append(v)
                yield from rec()
                seq.pop()
                last[v] = prev
            for key in bumped:
                var[key] -= 1

    yield from rec()


class BarrattEccles(MSet):
    """``W Sigma_k`` (or ``W_d Sigma_k``): an i-simplex is a tuple of i+1 permutations."""

    k = 1

    def __init__(self, k: int, d: Optional[int] = None):
        super().__init__()
        self.arity = k
        self.d = d
        self.perms: List[Perm] = list(permutations(range(1, k + 1)))

    def __repr__(self):
        return f"BarrattEccles(k={self.arity}, d={self.d})"

    def degree(self, x):
        return (len(x) - 1,)

    def _face(self, x, l, i):
        return x[:i] + x[i + 1:]

    def _degeneracy(self, x, l, i):
        return x[:i + 1] + x[i:]

    def is_degenerate(self, x):
        return any(a == b for a, b in zip(x, x[1:]))

    def contains(self, x) -> bool:
        return all(sorted(p) == list(range(1, self.arity + 1)) for p in x) and (
            self.d is None or be_complexity(x) <= self.d)

    def _enumerate(self, degree):
        (n,) = degree
        return list(self._tuples(n + 1, nondegenerate=False))

    def _tuples(self, length: int, nondegenerate: bool, exact: bool = True):
        k = self.arity
        limit = None if self.d is None else self.d - 1
        pairs = [(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1)]
        order = {p: {(a, b): p.index(a) < p.index(b) for a, b in pairs} for p in self.perms}
        seq: List[Perm] = []
        changes = dict.fromkeys(pairs, 0)

        def rec():
            if not exact or len(seq) == length:
                if seq:
                    yield tuple(seq)
                if len(seq) == length:
                    return
            for p in self.perms:
                if seq and nondegenerate and seq[-1] == p:
                    continue
                flipped = [] if not seq else [q for q in pairs if order[p][q] != order[seq[-1]][q]]
                if limit is not None and any(changes[q] + 1 > limit for q in flipped):
                    continue
                for q in flipped:
                    changes[q] += 1
                seq.append(p)
                yield from rec()
                seq.pop()
                for q in flipped:
                    changes[q] -= 1

        yield from rec()

    def nondegenerate_simplices(self, max_length: Optional[int] = None):
        if self.d is None and max_length is None:
            raise ValueError("unfiltered Barratt-Eccles set needs a degree cap")
        length = max_length if max_length is not None else 10 ** 9
        yield from self._tuples(length, nondegenerate=True, exact=False)

    def encode(self, x):
        wide = self.arity > 9
        return "|".join(_digits(p, wide) for p in x)

    def decode(self, s):
        return tuple(_undigits(part) for part in s.strip().strip("()").replace(" ", "").split("|"))


# --- counting polynomials --------------------------------------------------

@dataclass(frozen=True)
class CountingPolynomial:
    """Ranks ``c_i`` of a normalized complex, read as ``sum c_i x^i``."""

    coeffs: Tuple[int, ...]
    k: int = 1

    def __call__(self, x):
        return sum(c * x ** i for i, c in enumerate(self.coeffs))

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def factored(self) -> str:
        """E.g. ``24*(1 + 6x + 10x^2 + 5x^3)`` with ``k!`` pulled out when it divides."""
        f = factorial(self.k)
        if f > 1 and all(c % f == 0 for c in self.coeffs):
            inner = _poly_str([c // f for c in self.coeffs])
            return f"{f}*({inner})" if len([c for c in self.coeffs if c]) > 1 else f"{f}*{inner}"
        return _poly_str(list(self.coeffs))


def _poly_str(cs: List[int]) -> str:
    parts = []
    for i, c in enumerate(cs):
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts) or "0"


def _trim(counts: Dict[int, int]) -> Tuple[int, ...]:
    top = max(counts, default=-1)
    return tuple(counts.get(i, 0) for i in range(top + 1))


def counting_polynomial_sur(k: int, d: int) -> CountingPolynomial:
    """Generating polynomial of the ranks of ``chi_d(k) = N_*(Sur_d(k))``."""
    counts: Dict[int, int] = {}
    for u in nondegenerate_surjections(k, d):
        n = len(u) - k
        counts[n] = counts.get(n, 0) + 1
    return CountingPolynomial(_trim(counts), k)


def counting_polynomial_be(k: int, d: int, cap: Optional[int] = None) -> CountingPolynomial:
    """Generating polynomial of the ranks of ``BE_d(k) = N_*(W_d Sigma_k)``.

    Each non-degenerate step flips at least one pair, so degrees never exceed
    ``C(k, 2) * (d - 1)``; ``cap`` only guards against runaway input.
    """
    bound = k * (k - 1) // 2 * (d - 1)
    if cap is not None:
        bound = min(bound, cap)
    counts: Dict[int, int] = {}
    for s in BarrattEccles(k, d).nondegenerate_simplices(max_length=bound + 1):
        counts[len(s) - 1] = counts.get(len(s) - 1, 0) + 1
    return CountingPolynomial(_trim(counts), k)


# --- tc and TC --------------------------------------------------------------

def tc(s: Sequence[int]) -> Tuple[Perm, ...]:
    """``(sigma_0, ..., sigma_i)`` with ``sigma_j`` the order of the (j+1)-st occurrences in ``s``."""
    c = Counter(s)
    sizes = set(c.values())
    if len(sizes) != 1 or sorted(c) != list(range(1, len(c) + 1)):
        raise MalformedDiagonal(f"{tuple(s)} is not a diagonal simplex of Sur(k)")
    (m,) = sizes
    out: List[List[int]] = [[] for _ in range(m)]
    seen: Counter = Counter()
    for v in s:
        out[seen[v]].append(v)
        seen[v] += 1
    return tuple(tuple(p) for p in out)


def TC(sur: Surjection, c: dict, ring: Ring = ZZ) -> dict:
    """Berger-Fresse's ``chi(k) -> BE(k)`` as ``N_*(tc) . EZ`` on normalized chains."""
    from .ezaw import ez_multisimplicial

    D = Diagonal(sur)
    out: dict = {}
    for y, a in ez_multisimplicial(sur, c, ring).items():
        if D.is_degenerate(y):
            continue
        t = tc(y)
        if any(p == q for p, q in zip(t, t[1:])):
            continue
        vec_add(out, t, a)
    return vec_clean(out, ring)


@dataclass
class FiltrationReport:
    k: int
    d: int
    max_degree: int
    checked: int = 0
    forward_ok: bool = True
    forward_counterexample: Optional[tuple] = None
    preimage_checked: int = 0
    preimage_ok: bool = True
    preimage_counterexample: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        """Verdict for tc's actual direction; the preimage reading is informational."""
        return self.forward_ok


def tc_respects_filtration(k: int, d: int, max_degree: int, samples: Optional[int] = None,
                           seed: int = 0) -> FiltrationReport:
    """Check both readings of the filtration statement for ``tc``.

    Forward: every diagonal simplex of ``Sur_d(k)`` maps into ``W_d Sigma_k``.
    Preimage: every simplex of ``W_d Sigma_k`` is hit by some simplex of ``Sur_d(k)^D``.
    Exhaustive up to ``max_degree`` unless ``samples`` asks for a random subset.
    """
    rng = random.Random(seed)
    rep = FiltrationReport(k, d, max_degree)
    S = Surjection(k, d)
    images = set()
    for n in range(max_degree + 1):
        xs = S.enumerate((n,) * k)
        if samples is not None and len(xs) > samples:
            xs = rng.sample(xs, samples)
        for s in xs:
            rep.checked += 1
            t = tc(s)
            images.add(t)
            if be_complexity(t) > d and rep.forward_ok:
                rep.forward_ok = False
                rep.forward_counterexample = tuple(s)
    if samples is None:
        B = BarrattEccles(k, d)
        for n in range(max_degree + 1):
            for t in B.enumerate((n,)):
                rep.preimage_checked += 1
                if t not in images and rep.preimage_ok:
                    rep.preimage_ok = False
                    rep.preimage_counterexample = t
    return rep
