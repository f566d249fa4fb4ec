"""Shuffles, Eilenberg-Zilber and Alexander-Whitney maps, cup products.

A shuffle is stored as its lattice path: the sequence of directions
``1..k`` taken at each step.  Tensor chains are dicts keyed by
``(left, right)`` pairs (or longer tuples for iterated tensors).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import Cochain, ComplexView, boundary, chain_degree
from .exactlin import ZZ, Ring, RingMismatch, vec_add, vec_clean
from .msets import Diagonal, ExternalProduct, MSet, diagonal


class NoSplit(ValueError):
    pass


@dataclass(frozen=True)
class Shuffle:
    profile: Tuple[int, ...]
    path: Tuple[int, ...]

    def __post_init__(self):
        counts = [0] * len(self.profile)
        for lab in self.path:
            if not 1 <= lab <= len(self.profile):
                raise ValueError(f"label {lab} outside 1..{len(self.profile)}")
            counts[lab - 1] += 1
        if tuple(counts) != tuple(self.profile):
            raise ValueError(f"path {self.path} does not fit profile {self.profile}")

    @property
    def k(self) -> int:
        return len(self.profile)

    @property
    def maps(self) -> Tuple[Tuple[int, ...], ...]:
        """Monotone maps ``pi_l : [n] -> [a_l]`` as value tuples."""
        cur = [0] * self.k
        out = [[0] for _ in range(self.k)]
        for lab in self.path:
            cur[lab - 1] += 1
            for l in range(self.k):
                out[l].append(cur[l])
        return tuple(map(tuple, out))

    @property
    def permutation(self) -> Tuple[int, ...]:
        """One-line form of ``j+1 -> a_1 + ... + a_{l-1} + pi_l(j+1)`` (1-based)."""
        offsets = [sum(self.profile[:l]) for l in range(self.k)]
        cur = [0] * self.k
        out = []
        for lab in self.path:
            cur[lab - 1] += 1
            out.append(offsets[lab - 1] + cur[lab - 1])
        return tuple(out)

    @property
    def sign(self) -> int:
        return shuffle_sign(self)

    def degeneracy_indices(self, l: int) -> Tuple[int, ...]:
        """The ``j`` with ``pi_l(j+1) = pi_l(j)``: steps not taken in direction ``l``."""
        return tuple(j for j, lab in enumerate(self.path) if lab != l)


@lru_cache(maxsize=None)
def _paths(profile: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    if not any(profile):
        return ((),)
    out = []
    for l, a in enumerate(profile, start=1):
        if a:
            rest = profile[:l - 1] + (a - 1,) + profile[l:]
            out.extend((l,) + p for p in _paths(rest))
    return tuple(out)


@lru_cache(maxsize=None)
def _enumerate_shuffles(profile: Tuple[int, ...]) -> Tuple[Shuffle, ...]:
    return tuple(Shuffle(profile, p) for p in _paths(profile))


def enumerate_shuffles(*profile: int) -> List[Shuffle]:
    """All ``(a_1, ..., a_k)``-shuffles, lexicographic in the path."""
    if len(profile) == 1 and isinstance(profile[0], (tuple, list)):
        profile = tuple(profile[0])
    if any(a < 0 for a in profile):
        raise ValueError("negative profile entry")
    return list(_enumerate_shuffles(tuple(profile)))


def shuffle_sign(s: Shuffle) -> int:
    """(-1)^(pairs of steps where a higher direction precedes a lower one)."""
    seen = [0] * (s.k + 1)
    inv = 0
    for lab in s.path:
        inv += sum(seen[lab + 1:])
        seen[lab] += 1
    return -1 if inv % 2 else 1


def concat_shuffles(p: Shuffle, q: Shuffle) -> Shuffle:
    if p.k != q.k:
        raise ValueError("shuffles over different numbers of directions")
    return Shuffle(tuple(a + b for a, b in zip(p.profile, q.profile)), p.path + q.path)


def split_shuffle(s: Shuffle, idx: Sequence[int]) -> Tuple[Shuffle, Shuffle]:
    """Inverse of concatenation at ``(i_1..i_k)``; ``NoSplit`` if the prefix does not fit."""
    idx = tuple(idx)
    if len(idx) != s.k or any(not 0 <= i <= a for i, a in zip(idx, s.profile)):
        raise NoSplit(f"{idx} outside profile {s.profile}")
    m = sum(idx)
    head = s.path[:m]
    if tuple(head.count(l) for l in range(1, s.k + 1)) != idx:
        raise NoSplit(f"prefix {head} of {s.path} does not have counts {idx}")
    rest = tuple(a - i for a, i in zip(s.profile, idx))
    return Shuffle(idx, head), Shuffle(rest, s.path[m:])


# --- Eilenberg-Zilber ------------------------------------------------------

def apply_shuffle(X: MSet, x, s: Shuffle):
    """``X(pi_1, ..., pi_k)(x)``: per direction, degeneracies at the skipped steps, lowest first."""
    for l in range(1, X.k + 1):
        for j in s.degeneracy_indices(l):
            x = X._degeneracy(x, l, j)
    return x


def ez_multisimplicial(X: MSet, c: dict, ring: Ring = ZZ, normalized: bool = False) -> dict:
    """``EZ(x) = sum_pi sgn(pi) X(pi_1..pi_k)(x)`` into chains on ``X^D``."""
    out: dict = {}
    for x, a in c.items():
        for s in _enumerate_shuffles(X.degree(x)):
            vec_add(out, apply_shuffle(X, x, s), a * shuffle_sign(s))
    out = vec_clean(out, ring)
    if normalized:
        D = diagonal(X)
        out = {y: v for y, v in out.items() if not D.is_degenerate(y)}
    return out


def ez_tensor(factors: Sequence[MSet], xs: Sequence, ring: Ring = ZZ) -> dict:
    """Multivariable EZ of ``x_1 (x) ... (x) x_k`` into chains on ``X_1 x ... x X_k``."""
    if len(factors) == 1:
        return {xs[0]: ring(1)} if ring(1) else {}
    return ez_multisimplicial(ExternalProduct(*factors), {tuple(xs): 1}, ring)


# --- Alexander-Whitney -----------------------------------------------------

def aw_sign(a: Sequence[int], idx: Sequence[int]) -> int:
    """``(-1)^(sum_{l<h} i_h (a_l - i_l))``."""
    e = 0
    back = 0
    for al, il in zip(a, idx):
        e += il * back
        back += al - il
    return -1 if e % 2 else 1


def aw_simplicial(Y: MSet, c: dict, ring: Ring = ZZ, normalized: bool = False) -> dict:
    """``AW(x) = sum_i x|_i (x) _{n-i}|x`` for a simplicial ``Y``."""
    if Y.k != 1:
        raise ValueError("aw_simplicial needs a 1-fold set")
    out: dict = {}
    for x, a in c.items():
        (n,) = Y.degree(x)
        for i in range(n + 1):
            vec_add(out, (Y.front_face(x, (i,)), Y.back_face(x, (n - i,))), a)
    out = vec_clean(out, ring)
    return _drop_degenerate(Y, Y, out) if normalized else out


def aw_multisimplicial(X: MSet, c: dict, ring: Ring = ZZ, normalized: bool = False) -> dict:
    """Front and back faces taken independently in every direction, with the shuffle sign."""
    out: dict = {}
    for x, a in c.items():
        deg = X.degree(x)
        for idx in product(*(range(al + 1) for al in deg)):
            rest = tuple(al - il for al, il in zip(deg, idx))
            term = (X.front_face(x, idx), X.back_face(x, rest))
            vec_add(out, term, a * aw_sign(deg, idx))
    out = vec_clean(out, ring)
    return _drop_degenerate(X, X, out) if normalized else out


def _drop_degenerate(L: MSet, R: MSet, t: dict) -> dict:
    return {(u, v): c for (u, v), c in t.items()
            if not L.is_degenerate(u) and not R.is_degenerate(v)}


def tensor_boundary(X: MSet, t: dict, ring: Ring = ZZ, normalized: bool = False,
                    Y: Optional[MSet] = None) -> dict:
    """Koszul differential ``d(a (x) b) = da (x) b + (-1)^|a| a (x) db`` on tuples of any length."""
    out: dict = {}
    for key, c in t.items():
        sign = 1
        for pos, u in enumerate(key):
            for v, w in boundary(X, {u: 1}, ring, normalized).items():
                vec_add(out, key[:pos] + (v,) + key[pos + 1:], sign * c * w)
            if X.total_degree(u) % 2:
                sign = -sign
    return vec_clean(out, ring)


def tensor_map(f, t: dict, ring: Ring = ZZ) -> dict:
    """Apply degree-0 chain maps ``f = (f_1, ..., f_r)`` factorwise (no Koszul sign)."""
    out: dict = {}
    for key, c in t.items():
        images = [list(fi({u: 1}).items()) for fi, u in zip(f, key)]
        for combo in product(*images):
            coeff = c * prod(w for _, w in combo)
            vec_add(out, tuple(v for v, _ in combo), coeff)
    return vec_clean(out, ring)


def flatten(t: dict, left: bool = True) -> dict:
    """((a, b), c) -> (a, b, c) or (a, (b, c)) -> (a, b, c)."""
    out: dict = {}
    for key, c in t.items():
        flat = key[0] + (key[1],) if left else (key[0],) + key[1]
        vec_add(out, flat, c)
    return out


def aw_coassociativity(X: MSet, c: dict, ring: Ring = ZZ) -> Tuple[dict, dict]:
    """``((AW (x) id) AW(c), (id (x) AW) AW(c))`` as triple tensors."""
    first = aw_multisimplicial(X, c, ring)
    lhs: dict = {}
    rhs: dict = {}
    for (u, v), a in first.items():
        for (u1, u2), b in aw_multisimplicial(X, {u: 1}, ring).items():
            vec_add(lhs, (u1, u2, v), a * b)
        for (v1, v2), b in aw_multisimplicial(X, {v: 1}, ring).items():
            vec_add(rhs, (u, v1, v2), a * b)
    return vec_clean(lhs, ring), vec_clean(rhs, ring)


# --- cup products ----------------------------------------------------------

def _check_rings(view: ComplexView, *cochains: Cochain):
    for a in cochains:
        if a.ring != view.ring:
            raise RingMismatch(f"cochain over {a.ring}, complex over {view.ring}")


def cup_msimp(view: ComplexView, alpha: Cochain, beta: Cochain) -> Cochain:
    """Dual of the multisimplicial AW map, evaluated on the basis of degree ``p + q``."""
    _check_rings(view, alpha, beta)
    X, R = view.X, view.ring
    p, q = alpha.degree, beta.degree
    out = {}
    for x in view.basis(p + q):
        deg = X.degree(x)
        total = 0
        for idx in _front_indices(deg, p):
            a = alpha(X.front_face(x, idx))
            if not a:
                continue
            b = beta(X.back_face(x, tuple(al - il for al, il in zip(deg, idx))))
            if b:
                total += aw_sign(deg, idx) * a * b
        total = R(total)
        if total:
            out[x] = total
    return Cochain(p + q, out, R)


@lru_cache(maxsize=None)
def _front_indices(deg: Tuple[int, ...], p: int) -> Tuple[Tuple[int, ...], ...]:
    """Index tuples ``0 <= i_l <= a_l`` with ``sum i_l = p``."""
    if not deg:
        return ((),) if p == 0 else ()
    out = []
    for i in range(min(deg[0], p) + 1):
        out.extend((i,) + rest for rest in _front_indices(deg[1:], p - i))
    return tuple(out)


def cup_simp(view: ComplexView, alpha: Cochain, beta: Cochain) -> Cochain:
    """Classical cup product ``(a u b)(x) = a(x|_p) b(_q|x)`` on a simplicial set."""
    _check_rings(view, alpha, beta)
    Y, R = view.X, view.ring
    if Y.k != 1:
        raise ValueError("cup_simp needs a 1-fold set")
    p, q = alpha.degree, beta.degree
    out = {}
    for x in view.basis(p + q):
        v = R(alpha(Y.front_face(x, (p,))) * beta(Y.back_face(x, (q,))))
        if v:
            out[x] = v
    return Cochain(p + q, out, R)


def cup(view: ComplexView, alpha: Cochain, beta: Cochain) -> Cochain:
    return cup_simp(view, alpha, beta) if view.X.k == 1 else cup_msimp(view, alpha, beta)


def ez_dual(view_X: ComplexView, phi: Cochain) -> Cochain:
    """``(EZ* phi)(x) = phi(EZ(x))`` on the basis of ``view_X``."""
    _check_rings(view_X, phi)
    X, R = view_X.X, view_X.ring
    out = {}
    for x in view_X.basis(phi.degree):
        v = phi.eval_chain(ez_multisimplicial(X, {x: 1}, R))
        if v:
            out[x] = v
    return Cochain(phi.degree, out, R)


# --- the EZ / AW square ----------------------------------------------------

@dataclass
class SquareReport:
    x: object
    lhs: dict           # AW_simp(EZ(x))
    rhs: dict           # (EZ (x) EZ)(AW_msimp(x))
    degenerate_terms: List[tuple] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def n_terms(self) -> int:
        return len(self.lhs)

    def differences(self) -> Dict[tuple, tuple]:
        keys = set(self.lhs) | set(self.rhs)
        return {k: (self.lhs.get(k, 0), self.rhs.get(k, 0)) for k in sorted(keys, key=repr)
                if self.lhs.get(k, 0) != self.rhs.get(k, 0)}


def verify_square(X: MSet, x, ring: Ring = ZZ, normalized: bool = False) -> SquareReport:
    """Compare ``AW_simp . EZ`` with ``(EZ (x) EZ) . AW_msimp`` on one multisimplex."""
    D = diagonal(X)
    lhs = aw_simplicial(D, ez_multisimplicial(X, {x: 1}, ring), ring)
    ez = lambda c: ez_multisimplicial(X, c, ring)  # noqa: E731
    rhs = tensor_map((ez, ez), aw_multisimplicial(X, {x: 1}, ring), ring)
    degen = sorted((t for t in lhs if D.is_degenerate(t[0]) or D.is_degenerate(t[1])), key=repr)
    if normalized:
        lhs = _drop_degenerate(D, D, lhs)
        rhs = _drop_degenerate(D, D, rhs)
    return SquareReport(x, lhs, rhs, degen)


# --- pointwise checks --------------------------------------------------------

def cup_on_chain(X: MSet, alpha: Cochain, beta: Cochain, c: dict, ring: Ring = ZZ) -> object:
    """``(alpha u beta)(c)`` through the AW decomposition of ``c`` (no basis enumeration)."""
    aw = aw_simplicial if X.k == 1 else aw_multisimplicial
    total = 0
    for (u, v), a in aw(X, c, ring).items():
        if X.total_degree(u) == alpha.degree and X.total_degree(v) == beta.degree:
            total += a * alpha(u) * beta(v)
    return ring(total)


def _coboundary_on(X: MSet, alpha: Cochain, c: dict, ring: Ring):
    """``(delta alpha)(c) = alpha(boundary c)``."""
    return alpha.eval_chain(boundary(X, c, ring))


def _triple_cup(X: MSet, a: Cochain, b: Cochain, g: Cochain, x, ring: Ring):
    """``((a u b) u g)(x)`` and ``(a u (b u g))(x)`` computed separately."""
    aw = aw_simplicial if X.k == 1 else aw_multisimplicial
    left = right = 0
    for (u, v), w in aw(X, {x: 1}, ring).items():
        du, dv = X.total_degree(u), X.total_degree(v)
        if du == a.degree + b.degree and dv == g.degree:
            left += w * cup_on_chain(X, a, b, {u: 1}, ring) * g(v)
        if du == a.degree and dv == b.degree + g.degree:
            right += w * a(u) * cup_on_chain(X, b, g, {v: 1}, ring)
    return ring(left), ring(right)


def _random_cochain(X: MSet, n: int, rng, support, ring: Ring = ZZ) -> Cochain:
    vals = {}
    for y in support:
        if X.total_degree(y) == n and rng.random() < 0.7:
            vals[y] = rng.choice((-2, -1, 1, 2))
    return Cochain(n, vals, ring)


def _faces_closure(X: MSet, x, depth: int) -> set:
    """Every iterated face of ``x`` (plus ``x``) down to ``depth`` removals."""
    seen, frontier = {x}, {x}
    for _ in range(depth):
        nxt = set()
        for y in frontier:
            for l, a in enumerate(X.degree(y), start=1):
                if a:
                    nxt.update(X._face(y, l, i) for i in range(a + 1))
        frontier = nxt - seen
        seen |= nxt
    return seen


def check_identities(X: MSet, x, ring: Ring = ZZ, rng=None) -> List[str]:
    """Run the chain-level identities on one multisimplex; return the names that fail.

    Checked: boundary squared, EZ / AW_simp / AW_msimp as chain maps, AW
    coassociativity, the EZ/AW square, and (with random cochains supported on
    the faces of ``x``) cup associativity and the Leibniz rule.
    """
    import random as _random

    rng = rng or _random.Random(0)
    D = diagonal(X)
    bad: List[str] = []
    c = {x: 1}
    dc = boundary(X, c, ring)
    if boundary(X, dc, ring):
        bad.append("boundary^2")
    ez = ez_multisimplicial(X, c, ring)
    if boundary(D, ez, ring) != ez_multisimplicial(X, dc, ring):
        bad.append("EZ chain map")
    if tensor_boundary(D, aw_simplicial(D, ez, ring), ring) != aw_simplicial(D, boundary(D, ez, ring), ring):
        bad.append("AW_simp chain map")
    aw = aw_multisimplicial(X, c, ring)
    if tensor_boundary(X, aw, ring) != aw_multisimplicial(X, dc, ring):
        bad.append("AW_msimp chain map")
    lhs, rhs = aw_coassociativity(X, c, ring)
    if lhs != rhs:
        bad.append("AW_msimp coassociative")
    if not verify_square(X, x, ring).equal:
        bad.append("EZ/AW square")

    n = X.total_degree(x)
    support = _faces_closure(X, x, n + 1)
    if n >= 0:
        degs = [rng.randint(0, n) for _ in range(2)]
        p = min(degs)
        q = max(degs) - p
        r = n - p - q
        a, b, g = (_random_cochain(X, m, rng, support, ring) for m in (p, q, r))
        left, right = _triple_cup(X, a, b, g, x, ring)
        if left != right:
            bad.append("cup associative")
    if n >= 1:
        p = rng.randint(0, n - 1)
        q = n - 1 - p
        a, b = _random_cochain(X, p, rng, support, ring), _random_cochain(X, q, rng, support, ring)
        # delta(a u b)(x) = (a u b)(dx);  (delta a u b)(x) + (-1)^p (a u delta b)(x)
        lhs_v = cup_on_chain(X, a, b, dc, ring)
        da_b = 0
        a_db = 0
        for (u, v), w in (aw_simplicial if X.k == 1 else aw_multisimplicial)(X, c, ring).items():
            du, dv = X.total_degree(u), X.total_degree(v)
            if du == p + 1 and dv == q:
                da_b += w * _coboundary_on(X, a, {u: 1}, ring) * b(v)
            if du == p and dv == q + 1:
                a_db += w * a(u) * _coboundary_on(X, b, {v: 1}, ring)
        if ring(lhs_v) != ring(da_b + (-1) ** p * a_db):
            bad.append("Leibniz")
    return bad
