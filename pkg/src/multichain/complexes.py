"""Chain and cochain complexes of a multisimplicial module.

Chains are dicts ``{multisimplex: coefficient}`` with no zero entries.  The
differential on an ``(i_1..i_k)``-multisimplex is
``sum_j sum_t (-1)^(t + i_1 + ... + i_{j-1}) d^j_t``; directions of degree 0
contribute nothing (``C_{-1} = 0``).
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .exactlin import (ZZ, HomologySummary, Ring, RingMismatch, SparseMatrix,
                       homology_of_pair, vec_add, vec_clean)
from .msets import MSet, compositions


class CapTooLow(ValueError):
    pass


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("MULTICHAIN_THREADS", "1")))
    except ValueError:
        return 1


def boundary(X: MSet, c: dict, ring: Ring = ZZ, normalized: bool = False) -> dict:
    out: dict = {}
    for x, coeff in c.items():
        deg = X.degree(x)
        shift = 0
        for j, a in enumerate(deg, start=1):
            if a:
                for t in range(a + 1):
                    y = X._face(x, j, t)
                    vec_add(out, y, coeff if (t + shift) % 2 == 0 else -coeff)
            shift += a
    if normalized:
        out = {y: v for y, v in out.items() if not X.is_degenerate(y)}
    return vec_clean(out, ring)


def project(X: MSet, c: dict) -> dict:
    """Image in the normalized complex: drop degenerate terms."""
    return {x: v for x, v in c.items() if not X.is_degenerate(x)}


def chain_degree(X: MSet, c: dict) -> Optional[int]:
    degs = {X.total_degree(x) for x in c}
    if len(degs) > 1:
        raise ValueError(f"chain is not homogeneous (degrees {sorted(degs)})")
    return degs.pop() if degs else None


@dataclass
class Cochain:
    """Finitely supported function on the basis of one total degree."""

    degree: int
    values: Dict = field(default_factory=dict)
    ring: Ring = ZZ

    def __post_init__(self):
        self.values = vec_clean(self.values, self.ring)

    def __call__(self, x):
        return self.values.get(x, 0)

    def __add__(self, other: "Cochain") -> "Cochain":
        _same(self, other)
        if self.degree != other.degree:
            raise ValueError("adding cochains of different degree")
        v = dict(self.values)
        for x, c in other.values.items():
            vec_add(v, x, c)
        return Cochain(self.degree, v, self.ring)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, a) -> "Cochain":
        return Cochain(self.degree, {x: a * c for x, c in self.values.items()}, self.ring)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.ring == other.ring and self.values == other.values)

    def is_zero(self) -> bool:
        return not self.values

    def eval_chain(self, c: dict):
        return self.ring(sum(a * self.values.get(x, 0) for x, a in c.items()))


def _same(a: Cochain, b: Cochain):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")


def indicator(x, degree: int, ring: Ring = ZZ) -> Cochain:
    return Cochain(degree, {x: 1}, ring)


class ComplexView:
    """``C_*(X)`` or ``N_*(X)`` over a ring, with bases enumerated up to ``cap``."""

    def __init__(self, X: MSet, ring: Ring = ZZ, normalized: bool = True, cap: Optional[int] = None):
        self.X = X
        self.ring = ring
        self.normalized = normalized
        self.cap = cap
        self._basis: Dict[int, list] = {}
        self._index: Dict[int, dict] = {}
        self._dmat: Dict[int, SparseMatrix] = {}

    def __repr__(self):
        mode = "N" if self.normalized else "C"
        return f"ComplexView({mode}_*({self.X!r}), {self.ring}, cap={self.cap})"

    def basis(self, n: int) -> list:
        if n < 0:
            return []
        if self.cap is not None and n > self.cap:
            raise CapTooLow(f"degree {n} beyond cap {self.cap}")
        if n not in self._basis:
            if self.normalized:
                self._basis[n] = self.X.nondegenerate_basis(n)
            else:
                self._basis[n] = self.X.basis(n)
        return self._basis[n]

    def index(self, n: int) -> dict:
        if n not in self._index:
            self._index[n] = {x: i for i, x in enumerate(self.basis(n))}
        return self._index[n]

    def boundary(self, c: dict) -> dict:
        return boundary(self.X, c, self.ring, self.normalized)

    def project(self, c: dict) -> dict:
        return project(self.X, c) if self.normalized else dict(c)

    def boundary_matrix(self, n: int) -> SparseMatrix:
        """Matrix of ``C_n -> C_{n-1}`` in the enumerated bases."""
        if n not in self._dmat:
            src, tgt = self.basis(n), self.index(n - 1) if n > 0 else {}
            ent = {}
            for j, x in enumerate(src):
                for y, v in self.boundary({x: 1}).items():
                    ent[(tgt[y], j)] = v
            self._dmat[n] = SparseMatrix(len(tgt), len(src), ent, self.ring)
        return self._dmat[n]

    def coboundary(self, alpha: Cochain) -> Cochain:
        """``delta alpha = alpha . boundary`` (no extra sign)."""
        if alpha.ring != self.ring:
            raise RingMismatch(f"{alpha.ring} vs {self.ring}")
        out = {}
        for x in self.basis(alpha.degree + 1):
            v = alpha.eval_chain(self.boundary({x: 1}))
            if v:
                out[x] = v
        return Cochain(alpha.degree + 1, out, self.ring)

    def homology(self, degrees: Sequence[int]) -> List[HomologySummary]:
        degrees = list(degrees)
        if self.cap is not None and degrees and max(degrees) + 1 > self.cap:
            raise CapTooLow(f"homology up to {max(degrees)} needs cap >= {max(degrees) + 1}")

        def one(n):
            return homology_of_pair(self.boundary_matrix(n + 1), self.boundary_matrix(n),
                                    self.ring, degree=n)

        # matrices are built serially so the cache is filled deterministically
        for n in degrees:
            self.boundary_matrix(n + 1), self.boundary_matrix(n)
        with ThreadPoolExecutor(max_workers()) as ex:
            return list(ex.map(one, degrees))

    def random_chain(self, n: int, rng, terms: int = 3, coeffs=(-2, -1, 1, 2)) -> dict:
        b = self.basis(n)
        if not b:
            return {}
        c: dict = {}
        for _ in range(terms):
            vec_add(c, rng.choice(b), rng.choice(coeffs))
        return vec_clean(c, self.ring)

    def random_cochain(self, n: int, rng, density: float = 0.5, coeffs=(-2, -1, 1, 2)) -> Cochain:
        vals = {x: rng.choice(coeffs) for x in self.basis(n) if rng.random() < density}
        return Cochain(n, vals, self.ring)


# --- normalization homotopies ----------------------------------------------

def homotopy_t(X: MSet, c: dict, l: int, j: int, ring: Ring = ZZ) -> dict:
    """``t_j^l(x) = (-1)^(j + i_1 + ... + i_{l-1}) s_j^l(x)``; zero where ``j > i_l``."""
    out: dict = {}
    for x, a in c.items():
        deg = X.degree(x)
        if j > deg[l - 1]:
            continue
        sign = -1 if (j + sum(deg[:l - 1])) % 2 else 1
        vec_add(out, X._degeneracy(x, l, j), sign * a)
    return vec_clean(out, ring)


def _h_step(X: MSet, c: dict, l: int, j: int, ring: Ring) -> dict:
    """``h_j^l = 1 - boundary t_j^l - t_j^l boundary``."""
    out = dict(c)
    for y, v in boundary(X, homotopy_t(X, c, l, j, ring), ring).items():
        vec_add(out, y, -v)
    for y, v in homotopy_t(X, boundary(X, c, ring), l, j, ring).items():
        vec_add(out, y, -v)
    return vec_clean(out, ring)


def _h_factors(X: MSet, n: int):
    """Factors of ``h = h^1 ... h^k``, ``h^l = h^l_0 h^l_1 ... h^l_n``, leftmost first.

    On chains of total degree <= n every ``h^l_j`` with ``j > n`` is the identity,
    so this finite word is the whole composite.
    """
    return [(l, j) for l in range(1, X.k + 1) for j in range(n + 1)]


def chain_map_h(X: MSet, c: dict, ring: Ring = ZZ, top: Optional[int] = None) -> dict:
    """Mac Lane's normalizing chain map; kills degenerate chains, homotopic to 1."""
    n = chain_degree(X, c)
    if n is None:
        return {}
    for l, j in reversed(_h_factors(X, n if top is None else top)):
        c = _h_step(X, c, l, j, ring)
    return c


def homotopy_T(X: MSet, c: dict, ring: Ring = ZZ, top: Optional[int] = None) -> dict:
    """Accumulated homotopy with ``1 - h = boundary T + T boundary``.

    For ``h = f_1 ... f_m`` and ``f_r = 1 - (d t_r + t_r d)``,
    ``T = sum_r f_1 ... f_{r-1} t_r``.  The identity holds for a fixed word, so
    checking it on ``c`` and ``boundary(c)`` needs the same ``top`` for both.
    """
    n = chain_degree(X, c)
    if n is None:
        return {}
    facs = _h_factors(X, n if top is None else top)
    out: dict = {}
    for r, (l, j) in enumerate(facs):
        y = homotopy_t(X, c, l, j, ring)
        for l2, j2 in reversed(facs[:r]):
            y = _h_step(X, y, l2, j2, ring)
        for z, v in y.items():
            vec_add(out, z, v)
    return vec_clean(out, ring)
