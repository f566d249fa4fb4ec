"""Cohomology rings from cochain-level cup products, the EZ* comparison, Massey products."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import Cochain, ComplexView
from .exactlin import ZZ, Echelon, NotAField, Ring, kernel_basis, vec_clean
from .ezaw import cup, ez_multisimplicial
from .msets import MSet, diagonal


class NotExact(ValueError):
    pass


def _vec(view: ComplexView, a: Cochain) -> dict:
    idx = view.index(a.degree)
    return {idx[x]: v for x, v in a.values.items()}


def _cochain(view: ComplexView, n: int, v: dict) -> Cochain:
    b = view.basis(n)
    return Cochain(n, {b[i]: c for i, c in v.items()}, view.ring)


def _coboundary_columns(view: ComplexView, n: int) -> List[dict]:
    """``delta(1_y)`` for each basis element ``y`` of degree ``n - 1``, as vectors on degree ``n``."""
    if n == 0:
        return []
    return view.boundary_matrix(n).transpose().columns()


@dataclass
class CohomologyClassBasis:
    """Cocycle representatives of a basis of ``H^n`` plus a reducer for coordinates."""

    degree: int
    reps: List[Cochain]
    view: ComplexView = field(repr=False)
    _echelon: Echelon = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coordinates(self, z: Cochain) -> Tuple:
        """Coordinates of the class of cocycle ``z`` in the basis ``reps``."""
        rem, combo = self._echelon.reduce(_vec(self.view, z))
        if rem:
            raise ValueError("not a cocycle")
        return tuple(self.view.ring(combo.get(("z", i), 0)) for i in range(self.dim))

    def from_coordinates(self, coords: Sequence) -> Cochain:
        out = Cochain(self.degree, {}, self.view.ring)
        for c, r in zip(coords, self.reps):
            if c:
                out = out + r.scale(c)
        return out


def cohomology_basis(view: ComplexView, n: int) -> CohomologyClassBasis:
    R = view.ring
    if not R.is_field:
        raise NotAField("cohomology bases need field coefficients")
    E = Echelon(R)
    for j, col in enumerate(_coboundary_columns(view, n)):
        if col:
            E.add(col, ("b", j))
    cocycles = kernel_basis(view.boundary_matrix(n + 1).transpose())
    reps = []
    for z in cocycles:
        if E.add(z, ("z", len(reps))) is None:
            reps.append(_cochain(view, n, z))
    return CohomologyClassBasis(n, reps, view, E)


@dataclass
class RingPresentation:
    """Graded Betti/torsion data and cup-product structure constants.

    ``products[(p, i, q, j)]`` holds the coordinates of ``e^p_i . e^q_j`` in
    the basis of ``H^{p+q}``.
    """

    ring: Ring
    cap: int
    betti: List[int]
    torsion: List[Tuple[int, ...]] = field(default_factory=list)
    bases: Dict[int, CohomologyClassBasis] = field(default_factory=dict, repr=False)
    products: Dict[Tuple[int, int, int, int], Tuple] = field(default_factory=dict)

    def trimmed_betti(self) -> List[int]:
        b = list(self.betti)
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        return b

    def cup_rank(self, p: int, q: int) -> int:
        """Rank of the pairing ``H^p (x) H^q -> H^{p+q}``."""
        if p + q > self.cap or not self.betti[p] or not self.betti[q]:
            return 0
        E = Echelon(self.ring)
        for i in range(self.betti[p]):
            for j in range(self.betti[q]):
                v = {t: c for t, c in enumerate(self.products[(p, i, q, j)]) if c}
                if v:
                    E.add(v, (i, j))
        return len(E)

    def as_dict(self) -> dict:
        return {
            "ring": self.ring.tag,
            "cap": self.cap,
            "betti": self.betti,
            "torsion": [list(t) for t in self.torsion],
            "products": [
                {"left": [p, i], "right": [q, j], "coords": [str(c) for c in v]}
                for (p, i, q, j), v in sorted(self.products.items())
            ],
        }


def cohomology_ring(X, ring: Ring = None, cap: int = 2, products: bool = True) -> RingPresentation:
    """``H^*(N^*(X))`` up to degree ``cap``.

    ``X`` is an ``MSet`` or a normalized ``ComplexView``.  Over Z only the
    Betti numbers and torsion are available (``products=False``).
    """
    view = X if isinstance(X, ComplexView) else ComplexView(X, ring or ZZ, True, cap + 1)
    R = view.ring
    if not R.is_field:
        if products:
            raise NotAField("cup-product structure constants need a field")
        hom = view.homology(range(cap + 1))
        tors = [()] + [h.torsion for h in hom[:-1]]  # H^n torsion = torsion of H_{n-1}
        return RingPresentation(R, cap, [h.betti for h in hom], tors)
    bases = {n: cohomology_basis(view, n) for n in range(cap + 1)}
    pres = RingPresentation(R, cap, [bases[n].dim for n in range(cap + 1)],
                            [() for _ in range(cap + 1)], bases)
    if products:
        for p in range(cap + 1):
            for q in range(cap + 1 - p):
                for i, a in enumerate(bases[p].reps):
                    for j, b in enumerate(bases[q].reps):
                        pres.products[(p, i, q, j)] = bases[p + q].coordinates(cup(view, a, b))
    return pres


# --- EZ* comparison --------------------------------------------------------

@dataclass
class RingIsoReport:
    betti_X: List[int]
    betti_diagonal: List[int]
    iso_degrees: bool
    cochain_multiplicative: bool
    structure_constants_match: bool
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.iso_degrees and self.cochain_multiplicative and self.structure_constants_match


def verify_ez_ring_iso(X: MSet, ring: Ring, cap: int, indicator_pairs: bool = True) -> RingIsoReport:
    """Check that ``EZ*: N^*(X^D) -> N^*(X)`` induces a graded ring isomorphism up to ``cap``.

    Cochain-level multiplicativity is tested on products of class
    representatives and, with ``indicator_pairs``, on every pair of indicator
    cochains of the diagonal basis with total degree at most ``cap``.
    """
    if not ring.is_field:
        raise NotAField("ring comparison needs field coefficients")
    D = diagonal(X)
    vX = ComplexView(X, ring, True, cap + 1)
    vD = ComplexView(D, ring, True, cap + 1)
    rX = cohomology_ring(vX, cap=cap)
    rD = cohomology_ring(vD, cap=cap)
    failures: List[str] = []

    ez_cache: Dict = {}

    def pull(phi: Cochain) -> Cochain:
        out = {}
        for x in vX.basis(phi.degree):
            if x not in ez_cache:
                ez_cache[x] = ez_multisimplicial(X, {x: 1}, ring)
            v = phi.eval_chain(ez_cache[x])
            if v:
                out[x] = v
        return Cochain(phi.degree, out, ring)

    pulled = {n: [pull(phi) for phi in rD.bases[n].reps] for n in range(cap + 1)}
    # M[n][i] = coordinates of EZ* phi^n_i in the basis of H^n(X)
    M: Dict[int, List[Tuple]] = {}
    iso = rX.betti == rD.betti
    if not iso:
        failures.append(f"betti differ: {rX.betti} vs {rD.betti}")
    for n in range(cap + 1):
        cols = []
        for i, z in enumerate(pulled[n]):
            if not vX.coboundary(z).is_zero():
                iso = False
                failures.append(f"EZ* of class {n}.{i} is not a cocycle")
                cols.append(tuple(0 for _ in range(rX.betti[n])))
                continue
            cols.append(rX.bases[n].coordinates(z))
        M[n] = cols
        E = Echelon(ring)
        for i, col in enumerate(cols):
            E.add({t: c for t, c in enumerate(col) if c}, i)
        if len(E) != rX.betti[n] or len(cols) != rX.betti[n]:
            iso = False
            failures.append(f"EZ* not bijective on H^{n}")

    mult = True
    consts = True
    for p in range(cap + 1):
        for q in range(cap + 1 - p):
            for i, phi in enumerate(rD.bases[p].reps):
                for j, psi in enumerate(rD.bases[q].reps):
                    lhs = pull(cup(vD, phi, psi))
                    rhs = cup(vX, pulled[p][i], pulled[q][j])
                    if lhs != rhs:
                        mult = False
                        failures.append(f"EZ*(phi u psi) != EZ*phi u EZ*psi for {p}.{i}, {q}.{j}")
                    # class level: M_{p+q} c^D_ij against products computed in X
                    cD = rD.products[(p, i, q, j)]
                    via_D = [ring(sum(M[p + q][t][s] * cD[t] for t in range(len(cD))))
                             for s in range(rX.betti[p + q])]
                    via_X = [0] * rX.betti[p + q]
                    for a, ma in enumerate(M[p][i]):
                        for b, mb in enumerate(M[q][j]):
                            if ma and mb:
                                cX = rX.products[(p, a, q, b)]
                                for s in range(len(via_X)):
                                    via_X[s] += ma * mb * cX[s]
                    via_X = [ring(v) for v in via_X]
                    if via_D != via_X:
                        consts = False
                        failures.append(f"structure constants differ for {p}.{i} x {q}.{j}")
    if indicator_pairs:
        for p in range(cap + 1):
            for q in range(cap + 1 - p):
                for u in vD.basis(p):
                    for w in vD.basis(q):
                        phi, psi = Cochain(p, {u: 1}, ring), Cochain(q, {w: 1}, ring)
                        if pull(cup(vD, phi, psi)) != cup(vX, pull(phi), pull(psi)):
                            mult = False
                            failures.append(f"EZ* not multiplicative on 1_{u} x 1_{w}")
    return RingIsoReport(rX.betti, rD.betti, iso, mult, consts, failures)


# --- Massey products -------------------------------------------------------

@dataclass
class MasseyReport:
    degrees: Tuple[int, int, int]
    inputs: Tuple[Cochain, Cochain, Cochain] = field(repr=False)
    representative: Cochain = field(repr=False)
    coordinates: Tuple = ()
    indeterminacy: List[Tuple] = field(default_factory=list)
    vanishes: bool = True

    @property
    def verdict(self) -> str:
        return "zero mod indeterminacy" if self.vanishes else "nonzero"


class _Bounder:
    """Solve ``delta u = w`` in one degree; ``seed`` permutes the column order."""

    def __init__(self, view: ComplexView, n: int, seed: Optional[int] = None):
        self.view, self.n = view, n
        cols = list(enumerate(_coboundary_columns(view, n)))
        if seed is not None:
            random.Random(seed).shuffle(cols)
        self.E = Echelon(view.ring)
        for j, col in cols:
            if col:
                self.E.add(col, j)

    def solve(self, w: Cochain) -> Optional[Cochain]:
        combo = self.E.solve(_vec(self.view, w))
        if combo is None:
            return None
        return _cochain(self.view, self.n - 1, combo)


def massey_triple(view: ComplexView, a: Cochain, b: Cochain, c: Cochain,
                  pres: Optional[RingPresentation] = None, seed: Optional[int] = None,
                  _solvers: Optional[dict] = None) -> MasseyReport:
    """Triple Massey product ``<a, b, c>`` of cocycles.

    With ``delta u = a u b`` and ``delta v = b u c`` the representative is
    ``u u c + (-1)^(|a|+1) a u v``; it is compared with ``a.H + H.c``.
    """
    R = view.ring
    if not R.is_field:
        raise NotAField("Massey products need field coefficients")
    p, q, r = a.degree, b.degree, c.degree
    top = p + q + r - 1
    if pres is None or pres.cap < top:
        pres = cohomology_ring(view, cap=max(top, p + q, q + r), products=False)
    for z in (a, b, c):
        if not view.coboundary(z).is_zero():
            raise ValueError("Massey inputs must be cocycles")
    solvers = {} if _solvers is None else _solvers
    for n in {p + q, q + r}:
        if n not in solvers:
            solvers[n] = _Bounder(view, n, seed)
    u = solvers[p + q].solve(cup(view, a, b))
    v = solvers[q + r].solve(cup(view, b, c))
    if u is None or v is None:
        raise NotExact("a.b or b.c is not a coboundary")
    sign = -1 if (p + 1) % 2 else 1
    rep = cup(view, u, c) + cup(view, a, v).scale(sign)
    if top < 0:
        return MasseyReport((p, q, r), (a, b, c), rep)
    H = pres.bases
    coords = H[top].coordinates(rep)
    indet = [H[top].coordinates(cup(view, a, e)) for e in H[q + r - 1].reps] if q + r - 1 >= 0 else []
    indet += [H[top].coordinates(cup(view, e, c)) for e in H[p + q - 1].reps] if p + q - 1 >= 0 else []
    E = Echelon(R)
    for i, vec in enumerate(indet):
        E.add({t: x for t, x in enumerate(vec) if x}, i)
    rem, _ = E.reduce({t: x for t, x in enumerate(coords) if x})
    return MasseyReport((p, q, r), (a, b, c), rep, coords, indet, not rem)


def class_vectors(ring: Ring, dim: int, coeffs: Optional[Sequence] = None):
    """All coordinate vectors over Z/p, or over ``coeffs`` for Q."""
    if coeffs is None:
        if ring.characteristic == 0:
            raise ValueError("coefficient set required in characteristic 0")
        coeffs = range(ring.characteristic)
    return [tuple(ring(c) for c in v) for v in product(coeffs, repeat=dim)]


def admissible_massey_triples(pres: RingPresentation, view: ComplexView, degrees: Tuple[int, int, int],
                              coeffs: Optional[Sequence] = None, seed: Optional[int] = None) -> List[MasseyReport]:
    """Massey products of every admissible triple of classes with the given degrees."""
    p, q, r = degrees
    B = pres.bases
    R = pres.ring

    def prod_zero(x, y, dx, dy):
        if dx + dy > pres.cap:
            return cup(view, B[dx].from_coordinates(x), B[dy].from_coordinates(y)).is_zero()
        return not any(B[dx + dy].coordinates(cup(view, B[dx].from_coordinates(x),
                                                     B[dy].from_coordinates(y))))

    out = []
    solvers: dict = {}
    A = class_vectors(R, B[p].dim, coeffs)
    Bv = class_vectors(R, B[q].dim, coeffs)
    C = class_vectors(R, B[r].dim, coeffs)
    for vb in Bv:
        left = [va for va in A if prod_zero(va, vb, p, q)]
        right = [vc for vc in C if prod_zero(vb, vc, q, r)]
        for va in left:
            for vc in right:
                out.append(massey_triple(view, B[p].from_coordinates(va), B[q].from_coordinates(vb),
                                         B[r].from_coordinates(vc), pres, seed, solvers))
    return out
