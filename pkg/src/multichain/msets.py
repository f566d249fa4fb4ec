"""Multisimplicial sets described behaviourally: enumerate, faces, degeneracies.

Directions are numbered ``1..k`` as in the usual notation; a multisimplex is
a hashable payload and its multidegree is computed by the owning set.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from itertools import combinations_with_replacement, product
from typing import Iterable, List, Sequence, Tuple

MultiIndex = Tuple[int, ...]


class IndexOutOfRange(IndexError):
    pass


class NotEnumerable(TypeError):
    pass


def compositions(n: int, k: int) -> List[MultiIndex]:
    """All multidegrees of total degree ``n`` with ``k`` parts, lexicographic."""
    if k == 1:
        return [(n,)]
    return [(a,) + rest for a in range(n + 1) for rest in compositions(n - a, k - 1)]


class MSet(ABC):
    """A k-fold simplicial set.

    Subclasses implement ``degree``, ``_face``, ``_degeneracy`` and ``_enumerate``;
    the public methods add argument checking.  ``_face(x, l, i)`` may assume
    ``1 <= l <= k`` and ``0 <= i <= a_l`` with ``a_l >= 1``.
    """

    k: int = 1

    def __init__(self):
        self._enum_cache = {}

    @abstractmethod
    def degree(self, x) -> MultiIndex: ...

    @abstractmethod
    def _face(self, x, l: int, i: int): ...

    @abstractmethod
    def _degeneracy(self, x, l: int, i: int): ...

    def _enumerate(self, degree: MultiIndex) -> List:
        raise NotEnumerable(f"{type(self).__name__} has no finite enumeration")

    # checked entry points

    def face(self, x, l: int, i: int):
        a = self._check(x, l, i)
        if a < 1:
            raise IndexOutOfRange(f"no faces in direction {l} at degree 0")
        return self._face(x, l, i)

    def degeneracy(self, x, l: int, i: int):
        self._check(x, l, i)
        return self._degeneracy(x, l, i)

    def _check(self, x, l, i) -> int:
        if not 1 <= l <= self.k:
            raise IndexOutOfRange(f"direction {l} not in 1..{self.k}")
        a = self.degree(x)[l - 1]
        if not 0 <= i <= a:
            raise IndexOutOfRange(f"index {i} not in 0..{a}")
        return a

    def enumerate(self, degree: Sequence[int], nondegenerate: bool = False) -> List:
        """Multisimplices of the given multidegree, sorted by payload."""
        degree = tuple(degree)
        if len(degree) != self.k or min(degree, default=0) < 0:
            raise IndexOutOfRange(f"bad multidegree {degree} for a {self.k}-fold set")
        key = (degree, nondegenerate)
        if key not in self._enum_cache:
            xs = self._enumerate(degree)
            if nondegenerate:
                xs = [x for x in xs if not self.is_degenerate(x)]
            self._enum_cache[key] = xs
        return self._enum_cache[key]

    def is_degenerate(self, x) -> bool:
        # x = s_i^l y forces y = d_i^l x
        for l, a in enumerate(self.degree(x), start=1):
            for i in range(a):
                if self._degeneracy(self._face(x, l, i), l, i) == x:
                    return True
        return False

    def total_degree(self, x) -> int:
        return sum(self.degree(x))

    def front_face(self, x, idx: Sequence[int]):
        """``X(F_{i_1}, ..., F_{i_k})(x)``: keep the first ``i_l + 1`` vertices per direction."""
        deg = self._check_face_index(x, idx)
        for l, (a, i) in enumerate(zip(deg, idx), start=1):
            for top in range(a, i, -1):
                x = self._face(x, l, top)
        return x

    def back_face(self, x, idx: Sequence[int]):
        """``X(B_{i_1}, ..., B_{i_k})(x)``: keep the last ``i_l + 1`` vertices per direction."""
        deg = self._check_face_index(x, idx)
        for l, (a, i) in enumerate(zip(deg, idx), start=1):
            for _ in range(a - i):
                x = self._face(x, l, 0)
        return x

    def _check_face_index(self, x, idx) -> MultiIndex:
        deg = self.degree(x)
        if len(idx) != self.k or any(not 0 <= i <= a for i, a in zip(idx, deg)):
            raise IndexOutOfRange(f"face index {tuple(idx)} outside degree {deg}")
        return deg

    def encode(self, x) -> str:
        return repr(x)

    def decode(self, s: str):
        raise NotImplementedError

    def nondegenerate_basis(self, n: int) -> List:
        return [x for d in compositions(n, self.k) for x in self.enumerate(d, nondegenerate=True)]

    def basis(self, n: int) -> List:
        return [x for d in compositions(n, self.k) for x in self.enumerate(d)]


def _digits(seq: Iterable[int], wide: bool) -> str:
    return ",".join(map(str, seq)) if wide else "".join(map(str, seq))


def _undigits(s: str) -> Tuple[int, ...]:
    s = s.strip()
    if "," in s:
        return tuple(int(t) for t in s.split(","))
    return tuple(int(ch) for ch in s)


class StandardSimplex(MSet):
    """``Delta[n]``: simplices are non-decreasing vertex tuples in ``0..n``."""

    k = 1

    def __init__(self, n: int):
        super().__init__()
        self.n = n

    def degree(self, x):
        return (len(x) - 1,)

    def _face(self, x, l, i):
        return x[:i] + x[i + 1:]

    def _degeneracy(self, x, l, i):
        return x[:i + 1] + x[i:]

    def _enumerate(self, degree):
        (m,) = degree
        return list(combinations_with_replacement(range(self.n + 1), m + 1))

    def is_degenerate(self, x):
        return any(a == b for a, b in zip(x, x[1:]))

    def identity(self):
        return tuple(range(self.n + 1))

    def encode(self, x):
        return _digits(x, self.n > 9)

    def decode(self, s):
        return _undigits(s)


class ExternalProduct(MSet):
    """External product of simplicial sets: ``(a_1..a_k)``-multisimplices are tuples ``(x_1..x_k)``."""

    def __init__(self, *factors: MSet):
        super().__init__()
        if any(f.k != 1 for f in factors):
            raise ValueError("factors must be simplicial (1-fold)")
        self.factors = factors
        self.k = len(factors)

    def degree(self, x):
        return tuple(f.degree(c)[0] for f, c in zip(self.factors, x))

    def _face(self, x, l, i):
        return x[:l - 1] + (self.factors[l - 1]._face(x[l - 1], 1, i),) + x[l:]

    def _degeneracy(self, x, l, i):
        return x[:l - 1] + (self.factors[l - 1]._degeneracy(x[l - 1], 1, i),) + x[l:]

    def _enumerate(self, degree):
        return list(product(*(f.enumerate((a,)) for f, a in zip(self.factors, degree))))

    def is_degenerate(self, x):
        return any(f.is_degenerate(c) for f, c in zip(self.factors, x))

    def encode(self, x):
        return "/".join(f.encode(c) for f, c in zip(self.factors, x))

    def decode(self, s):
        return tuple(f.decode(part) for f, part in zip(self.factors, s.split("/")))


class StandardMultisimplex(ExternalProduct):
    """``Delta_{i_1,...,i_k} = Hom(-, ([i_1], ..., [i_k]))``."""

    def __init__(self, dims: Sequence[int]):
        super().__init__(*(StandardSimplex(i) for i in dims))
        self.dims = tuple(dims)

    def identity(self):
        return tuple(f.identity() for f in self.factors)


class Diagonal(MSet):
    """Restriction of a k-fold set to equal degrees; faces act in all directions at once."""

    k = 1

    def __init__(self, base: MSet):
        super().__init__()
        self.base = base

    def degree(self, x):
        deg = self.base.degree(x)
        if len(set(deg)) != 1:
            raise ValueError(f"{x!r} is not on the diagonal (degree {deg})")
        return (deg[0],)

    def _face(self, x, l, i):
        for m in range(1, self.base.k + 1):
            x = self.base._face(x, m, i)
        return x

    def _degeneracy(self, x, l, i):
        for m in range(1, self.base.k + 1):
            x = self.base._degeneracy(x, m, i)
        return x

    def _enumerate(self, degree):
        (n,) = degree
        return list(self.base.enumerate((n,) * self.base.k))

    def front_face(self, x, idx):
        (n,), (i,) = self.degree(x), idx
        return self.base.front_face(x, (i,) * self.base.k) if 0 <= i <= n else super().front_face(x, idx)

    def back_face(self, x, idx):
        (n,), (i,) = self.degree(x), idx
        return self.base.back_face(x, (i,) * self.base.k) if 0 <= i <= n else super().back_face(x, idx)

    def encode(self, x):
        return self.base.encode(x)

    def decode(self, s):
        return self.base.decode(s)


def diagonal(X: MSet) -> MSet:
    """``X^D``; a 1-fold set is its own diagonal."""
    return X if X.k == 1 else Diagonal(X)


def product_set(*factors: MSet) -> MSet:
    """Simplicial product ``X_1 x ... x X_k`` as the diagonal of the external product."""
    return Diagonal(ExternalProduct(*factors))
