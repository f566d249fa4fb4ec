"""Exact coefficient rings, sparse matrices, Smith normal form and homology ranks.

Coefficients are plain Python numbers: ``int`` for Z and Z/p (residues kept in
``[0, p)``) and ``fractions.Fraction`` for Q.  A ring object only knows how to
bring a number into canonical form, which keeps the hot loops in the chain-level
code free of wrapper objects.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple


class RingMismatch(ValueError):
    pass


class NotAField(ValueError):
    pass


class CompositionNotZero(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``Z``, ``Q`` or ``Zp`` with prime ``p``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zp"):
            raise ValueError(f"unknown ring {self.kind!r}")
        if self.kind == "Zp" and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Zp" else 0

    @property
    def tag(self) -> str:
        return f"Zp:{self.p}" if self.kind == "Zp" else self.kind

    def __str__(self):
        return self.tag

    def __call__(self, v):
        """Canonical form of ``v`` (an int or Fraction) in this ring."""
        if self.kind == "Z":
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"{v} is not an integer")
                return v.numerator
            return int(v)
        if self.kind == "Q":
            return Fraction(v)
        if isinstance(v, Fraction):
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return int(v) % self.p

    def inv(self, v):
        if self.kind == "Z":
            if v in (1, -1):
                return v
            raise NotAField(f"{v} is not a unit in Z")
        if self.kind == "Q":
            return 1 / Fraction(v)
        return pow(v, -1, self.p)

    def field_of_fractions(self) -> "Ring":
        return QQ if self.kind == "Z" else self

    def parse(self, s: str):
        s = s.strip()
        return self(Fraction(s)) if "/" in s else self(int(s))

    def format(self, v) -> str:
        return str(v)


ZZ = Ring("Z")
QQ = Ring("Q")


@lru_cache(maxsize=None)
def GF(p: int) -> Ring:
    return Ring("Zp", p)


def parse_ring(s: str) -> Ring:
    """Parse ``Z``, ``Q``, ``Zp:<p>``, ``Zp<p>`` or ``Z<p>``."""
    s = s.strip()
    if s in ("Z", "ZZ"):
        return ZZ
    if s in ("Q", "QQ"):
        return QQ
    for prefix in ("Zp:", "Zp", "Z/", "Z", "GF"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return GF(int(s[len(prefix):]))
    raise ValueError(f"cannot parse ring {s!r}")


# --- sparse vectors: dict index -> nonzero coefficient --------------------

def vec_add(acc: dict, key, c) -> None:
    """``acc[key] += c`` leaving no explicit zero (no ring reduction)."""
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def vec_clean(v: dict, ring: Ring) -> dict:
    out = {}
    for key, c in v.items():
        c = ring(c)
        if c:
            out[key] = c
    return out


def vec_axpy(acc: dict, a, x: dict) -> None:
    """``acc += a * x`` in place."""
    for key, c in x.items():
        vec_add(acc, key, a * c)


# --- sparse matrices ------------------------------------------------------

@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)
    ring: Ring = ZZ

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = self.ring(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, data: List[List], ring: Ring = ZZ) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row) if v}
        return cls(rows, cols, ent, ring)

    @classmethod
    def zero(cls, rows: int, cols: int, ring: Ring = ZZ) -> "SparseMatrix":
        return cls(rows, cols, {}, ring)

    def to_dense(self) -> List[List]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()}, self.ring)

    def columns(self) -> List[dict]:
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        by_row: Dict[int, Dict[int, object]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, {})[c] = v
        acc: Dict[Tuple[int, int], object] = {}
        for (r, m), v in self.entries.items():
            for c, w in by_row.get(m, {}).items():
                vec_add(acc, (r, c), v * w)
        return SparseMatrix(self.rows, other.cols, acc, self.ring)

    def is_zero(self) -> bool:
        return not self.entries

    def change_ring(self, ring: Ring) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, dict(self.entries), ring)


# --- Smith normal form over Z --------------------------------------------

def _invariant_factors(diag: Iterable[int]) -> List[int]:
    """Turn any diagonal of nonzero integers into the divisor chain d1 | d2 | ..."""
    ds = [abs(d) for d in diag if d]
    # a prime-power decomposition would do too; gcd/lcm sweeps are enough here
    n = len(ds)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = ds[i], ds[j]
            g = math.gcd(a, b)
            ds[i], ds[j] = g, a // g * b
    return ds


def smith_normal_form(M: SparseMatrix) -> List[int]:
    """Invariant factors of an integer matrix.

    Pivot is the smallest nonzero absolute value, ties broken by (row, col).
    Elimination runs on a row-dict copy; entries are Python ints so there is
    no overflow however large intermediate values become.
    """
    if M.ring != ZZ:
        raise RingMismatch("smith_normal_form needs an integer matrix")
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for (r, c), v in M.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    def set_entry(r, c, v):
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            row = rows.get(r)
            if row is not None and c in row:
                del row[c]
                if not row:
                    del rows[r]
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]

    def remove_line(r, c):
        for cc in list(rows.get(r, {})):
            set_entry(r, cc, 0)
        for rr in list(cols.get(c, ())):
            set_entry(rr, c, 0)

    diag: List[int] = []
    while rows:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), r, c)
                if best is None or key < best:
                    best = key
        _, pr, pc = best
        while True:
            p = rows[pr][pc]
            dirty = False
            # clear the pivot column
            for r in sorted(cols.get(pc, ())):
                if r == pr:
                    continue
                q = rows[r][pc] // p
                for c, v in list(rows[pr].items()):
                    set_entry(r, c, rows.get(r, {}).get(c, 0) - q * v)
                if rows.get(r, {}).get(pc):
                    dirty = True
            # clear the pivot row
            for c in sorted(rows.get(pr, {})):
                if c == pc:
                    continue
                q = rows[pr][c] // p
                for r in list(cols.get(pc, ())):
                    v = rows[r][pc]
                    set_entry(r, c, rows.get(r, {}).get(c, 0) - q * v)
                if rows.get(pr, {}).get(c):
                    dirty = True
            if not dirty:
                break
            # a remainder survived: move to the smallest entry in the pivot cross
            cand = [(abs(v), r, pc) for r in cols.get(pc, ()) for v in [rows[r][pc]]]
            cand += [(abs(v), pr, c) for c, v in rows.get(pr, {}).items()]
            _, pr, pc = min(cand)
        diag.append(rows[pr][pc])
        remove_line(pr, pc)
    return _invariant_factors(diag)


# --- echelon forms over a field -------------------------------------------

class Echelon:
    """Incremental row-echelon basis of a subspace of a sparse vector space.

    Each inserted vector gets a label; reductions report the combination of
    labelled vectors that was subtracted, so the same object answers rank,
    kernel (``add`` returning a dependency) and solve queries.
    """

    def __init__(self, ring: Ring):
        if not ring.is_field:
            raise NotAField(f"echelon form over {ring}")
        self.ring = ring
        self.pivots: Dict[object, Tuple[dict, dict]] = {}  # pivot index -> (vector, combo)

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: dict) -> Tuple[dict, dict]:
        """Return (remainder, combo) with v = remainder + sum(combo[l] * input_l)."""
        R = self.ring
        v = dict(v)
        combo: dict = {}
        while True:
            hits = [i for i in v if i in self.pivots]
            if not hits:
                return v, combo
            i = min(hits, key=_sort_key)
            vec, vcombo = self.pivots[i]
            a = v[i]
            for key, c in vec.items():
                w = R(v.get(key, 0) - a * c)
                if w:
                    v[key] = w
                else:
                    v.pop(key, None)
            for key, c in vcombo.items():
                w = R(combo.get(key, 0) + a * c)
                if w:
                    combo[key] = w
                else:
                    combo.pop(key, None)

    def add(self, v: dict, label) -> Optional[dict]:
        """Insert ``v``; return None if independent, else the dependency.

        The dependency is a combination of labels (including ``label`` with
        coefficient 1) whose sum of inputs vanishes.
        """
        R = self.ring
        rem, combo = self.reduce(v)
        if not rem:
            dep = {k: R(-c) for k, c in combo.items()}
            dep[label] = R(1)
            return {k: c for k, c in dep.items() if c}
        piv = min(rem, key=_sort_key)
        s = R.inv(rem[piv])
        vec = {k: R(c * s) for k, c in rem.items()}
        # store combo so that vec = s * (input_label - combo)
        vcombo = {k: R(-c * s) for k, c in combo.items()}
        vcombo[label] = R(vcombo.get(label, 0) + s)
        self.pivots[piv] = (vec, {k: c for k, c in vcombo.items() if c})
        return None

    def solve(self, v: dict) -> Optional[dict]:
        """Combination of inputs equal to ``v``, or None if ``v`` is not in the span."""
        rem, combo = self.reduce(v)
        return None if rem else combo


def _sort_key(i):
    return (0, i) if isinstance(i, int) else (1, repr(i))


def rank(M: SparseMatrix) -> int:
    """Rank over the field of fractions of the matrix ring."""
    if M.ring == ZZ:
        return len(smith_normal_form(M))
    E = Echelon(M.ring)
    for j, col in enumerate(M.columns()):
        if col:
            E.add(col, j)
    return len(E)


def kernel_basis(M: SparseMatrix) -> List[dict]:
    """Basis of the null space of ``M`` (column dependencies) over a field."""
    E = Echelon(M.ring)
    out = []
    for j, col in enumerate(M.columns()):
        dep = E.add(col, j)
        if dep is not None:
            out.append(dep)
    return out


# --- homology of a pair of composable maps --------------------------------

@dataclass(frozen=True)
class HomologySummary:
    degree: int
    betti: int
    torsion: Tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {"degree": self.degree, "betti": self.betti, "torsion": list(self.torsion)}


def homology_of_pair(d_in: SparseMatrix, d_out: SparseMatrix, ring: Optional[Ring] = None,
                     degree: int = 0) -> HomologySummary:
    """Homology at the middle term of ``C_{n+1} --d_in--> C_n --d_out--> C_{n-1}``."""
    ring = ring or d_in.ring
    if d_in.rows != d_out.cols:
        raise ValueError("maps are not composable")
    d_in, d_out = d_in.change_ring(ring), d_out.change_ring(ring)
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out . d_in != 0")
    n = d_in.rows
    r_out = rank(d_out)
    if ring == ZZ:
        snf = smith_normal_form(d_in)
        return HomologySummary(degree, n - r_out - len(snf), tuple(f for f in snf if f > 1))
    return HomologySummary(degree, n - r_out - rank(d_in))
