"""Split root data, Weyl groups, the dominance order, and Weyl-orbit
valuation domains.

Vectors live in the rational span V of the character lattice X*(T) of a
maximal split torus; cocharacters live in the dual lattice.  Both are
plain tuples of Fractions (resp. ints), paired by the standard dot
product.  Weyl group elements are stored as pairs of integer matrices,
one acting on cocharacters and one (the inverse transpose) acting on
weights, so that the pairing is preserved.

Conventions, fixed once for the whole library:

* GL_n uses the lower-triangular Borel, so its simple roots are
  e_{i+1} - e_i and dominant weights have nondecreasing coordinates.
  The half sum of positive roots is then (-d/2, -d/2+1, ..., d/2) for
  GL_{d+1}.
* The dominance order z <= z' holds iff z' - z is a non-negative
  rational combination of the simple roots (coefficients need not be
  integral).  For GL_n this is tail-partial-sum majorization with
  equal totals.
* Membership domains: with xi a dominant integral weight per embedding,
  xi_L the coordinate-wise sum over the e*f embeddings and
  eta_L = [L:Q_p]*eta, the unnormalized domain is
  {z : (z + eta_L)^dom <= eta_L + xi_L} and the normalized one is
  {z : z^dom <= eta_L + xi_L}.  The unnormalized domain equals the
  convex hull of the Weyl translates w(eta_L + xi_L) - eta_L, which
  ``in_hull`` decides independently by exact linear programming.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import FieldData, lp_feasible, rank as mat_rank, solve_linear

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]
IntMatrix = tuple[IntVec, ...]

DEFAULT_ORBIT_CAP = 10**6
_ROOT_CLOSURE_CAP = 10_000


class InfiniteWeylGroupError(RuntimeError):
    """The reflection closure exceeded its cap; the Weyl group is not finite."""


class OrbitCapError(RuntimeError):
    """A Weyl orbit enumeration exceeded the requested cap."""


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch in pairing")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(x, y)), Fraction(0))


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _matvec(m: IntMatrix, v: Sequence) -> tuple:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as its matrix pair (on cocharacters, on weights)."""

    cochar: IntMatrix
    weight: IntMatrix

    def on_weight(self, z: Sequence) -> Vec:
        return tuple(Fraction(v) for v in _matvec(self.weight, z))

    def on_cochar(self, lam: Sequence[int]) -> IntVec:
        return _matvec(self.cochar, lam)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(_matmul(self.cochar, other.cochar), _matmul(self.weight, other.weight))


@dataclass(frozen=True)
class RootDatum:
    """A split root datum: simple roots and coroots in a rank-r lattice pair.

    ``simple_roots[i]`` has integer coordinates in the character lattice,
    ``simple_coroots[i]`` in the cocharacter lattice; the Cartan pairing
    <alpha_i, alpha_j^vee> must be 2 on the diagonal and a non-positive
    integer off it.  ``eta_integral`` records whether the half sum of
    positive roots lies in the character lattice.
    """

    rank: int
    simple_roots: tuple[IntVec, ...]
    simple_coroots: tuple[IntVec, ...]
    name: str = ""

    def __post_init__(self) -> None:
        roots = tuple(tuple(int(v) for v in r) for r in self.simple_roots)
        coroots = tuple(tuple(int(v) for v in r) for r in self.simple_coroots)
        object.__setattr__(self, "simple_roots", roots)
        object.__setattr__(self, "simple_coroots", coroots)
        if len(roots) != len(coroots):
            raise ValueError("simple roots and coroots must come in equal numbers")
        for r in roots + coroots:
            if len(r) != self.rank:
                raise ValueError("root/coroot length must equal the rank")
        for i, alpha in enumerate(roots):
            for j, cov in enumerate(coroots):
                c = sum(a * b for a, b in zip(alpha, cov))
                if i == j and c != 2:
                    raise ValueError(f"<alpha_{i}, alpha_{i}^vee> = {c}, expected 2")
                if i != j and c > 0:
                    raise ValueError(f"<alpha_{i}, alpha_{j}^vee> = {c} > 0 off the diagonal")
        if roots and mat_rank(list(zip(*roots))) != len(roots):
            raise ValueError("simple roots must be linearly independent")

    # -- constructors -------------------------------------------------------

    @classmethod
    def gl(cls, n: int) -> "RootDatum":
        """GL_n with the lower-triangular Borel (dominant = nondecreasing)."""
        if n < 1:
            raise ValueError("n must be >= 1")
        roots = []
        for i in range(n - 1):
            v = [0] * n
            v[i], v[i + 1] = -1, 1
            roots.append(tuple(v))
        return cls(rank=n, simple_roots=tuple(roots), simple_coroots=tuple(roots), name=f"gl({n})")

    @classmethod
    def sl(cls, n: int) -> "RootDatum":
        """SL_n (simply connected type A_{n-1} datum)."""
        if n < 2:
            raise ValueError("n must be >= 2")
        cartan = [
            [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n - 1)]
            for i in range(n - 1)
        ]
        return cls.from_cartan(cartan, kind="simply_connected", name=f"sl({n})")

    @classmethod
    def sp4(cls) -> "RootDatum":
        """Sp_4 in the standard rank-2 coordinates (short root e1-e2, long 2e2)."""
        return cls(
            rank=2,
            simple_roots=((1, -1), (0, 2)),
            simple_coroots=((1, -1), (0, 1)),
            name="sp(4)",
        )

    @classmethod
    def from_cartan(cls, cartan: Sequence[Sequence[int]], kind: str = "simply_connected",
                    name: str = "") -> "RootDatum":
        """Generic datum from a Cartan matrix C[i][j] = <alpha_i, alpha_j^vee>.

        kind="simply_connected": the coweight lattice has the simple coroots
        as standard basis, so roots are the rows of C.  kind="adjoint": the
        character lattice has the simple roots as standard basis, so coroots
        are the columns of C.
        """
        n = len(cartan)
        rows = tuple(tuple(int(v) for v in r) for r in cartan)
        if any(len(r) != n for r in rows):
            raise ValueError("Cartan matrix must be square")
        ident = _identity(n)
        if kind == "simply_connected":
            datum = cls(rank=n, simple_roots=rows, simple_coroots=ident, name=name)
        elif kind == "adjoint":
            cols = tuple(tuple(rows[i][j] for i in range(n)) for j in range(n))
            datum = cls(rank=n, simple_roots=ident, simple_coroots=cols, name=name)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        return datum

    # -- basic actions ------------------------------------------------------

    @property
    def nsimple(self) -> int:
        return len(self.simple_roots)

    def reflect_weight(self, i: int, z: Sequence) -> Vec:
        """Simple reflection s_i on the weight side: z - <z, alpha_i^vee> alpha_i."""
        c = dot(z, self.simple_coroots[i])
        return tuple(Fraction(v) - c * r for v, r in zip(z, self.simple_roots[i]))

    def reflect_cochar(self, i: int, lam: Sequence[int]) -> IntVec:
        c = sum(a * b for a, b in zip(self.simple_roots[i], lam))
        return tuple(v - c * r for v, r in zip(lam, self.simple_coroots[i]))

    def simple_reflection(self, i: int) -> WeylElement:
        n = self.rank
        alpha, cov = self.simple_roots[i], self.simple_coroots[i]
        coc = tuple(
            tuple(int(a == b) - cov[a] * alpha[b] for b in range(n)) for a in range(n)
        )
        wgt = tuple(
            tuple(int(a == b) - alpha[a] * cov[b] for b in range(n)) for a in range(n)
        )
        return WeylElement(coc, wgt)

    def is_dominant(self, z: Sequence) -> bool:
        return all(dot(z, cov) >= 0 for cov in self.simple_coroots)

    def eta_integral(self) -> bool:
        """Whether the half sum of positive roots is in the character lattice."""
        return all(v.denominator == 1 for v in half_sum_positive_roots(self))


@lru_cache(maxsize=None)
def all_roots(datum: RootDatum) -> tuple[Vec, ...]:
    """The full (finite) root system, by reflection closure of the simples."""
    if datum.nsimple == 0:
        return ()
    seen: set[Vec] = set()
    frontier = [vec(r) for r in datum.simple_roots]
    seen.update(frontier)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(datum.nsimple):
                img = datum.reflect_weight(i, r)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        if len(seen) > _ROOT_CLOSURE_CAP:
            raise InfiniteWeylGroupError(
                f"root closure exceeded {_ROOT_CLOSURE_CAP}; the Weyl group is infinite"
            )
        frontier = nxt
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def positive_roots(datum: RootDatum) -> tuple[Vec, ...]:
    """Roots that are non-negative rational combinations of the simples."""
    cols = list(zip(*[vec(r) for r in datum.simple_roots])) if datum.nsimple else []
    out = []
    for r in all_roots(datum):
        coeffs = solve_linear(cols, r) if cols else None
        if coeffs is not None and all(c >= 0 for c in coeffs):
            out.append(r)
    return tuple(out)


@lru_cache(maxsize=None)
def half_sum_positive_roots(datum: RootDatum) -> Vec:
    """Half the sum of the positive roots (eta); (-d/2,...,d/2) for GL_{d+1}."""
    total = [Fraction(0)] * datum.rank
    for r in positive_roots(datum):
        for i, v in enumerate(r):
            total[i] += v
    return tuple(v / 2 for v in total)


@lru_cache(maxsize=None)
def weyl_elements(datum: RootDatum, cap: int = DEFAULT_ORBIT_CAP) -> tuple[WeylElement, ...]:
    """All Weyl group elements, by closure of the simple reflections."""
    n = datum.rank
    ident = WeylElement(_identity(n), _identity(n))
    gens = [datum.simple_reflection(i) for i in range(datum.nsimple)]
    elements = {ident.cochar: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                prod = g * w
                if prod.cochar not in elements:
                    elements[prod.cochar] = prod
                    nxt.append(prod)
        if len(elements) > cap:
            raise InfiniteWeylGroupError(f"Weyl group enumeration exceeded cap {cap}")
        frontier = nxt
    return tuple(elements.values())


def weyl_orbit(datum: RootDatum, z: Sequence, cap: int = DEFAULT_ORBIT_CAP) -> frozenset:
    """The W-orbit of z (weight side), as a frozenset of vectors."""
    start = vec(z)
    if len(start) != datum.rank:
        raise ValueError("vector length must equal the rank")
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(datum.nsimple):
                img = datum.reflect_weight(i, v)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        if len(seen) > cap:
            raise OrbitCapError(f"orbit size exceeded cap {cap}")
        frontier = nxt
    return frozenset(seen)


def dominant_rep(datum: RootDatum, z: Sequence, cap: int = DEFAULT_ORBIT_CAP) -> Vec:
    """The unique dominant point in the W-orbit of z.

    For GL_n with the library convention this is the nondecreasing
    rearrangement of the coordinates.
    """
    cur = vec(z)
    for _ in range(cap):
        for i in range(datum.nsimple):
            if dot(cur, datum.simple_coroots[i]) < 0:
                cur = datum.reflect_weight(i, cur)
                break
        else:
            return cur
    raise OrbitCapError(f"dominant representative not reached within {cap} reflections")


def antidominant_rep_cochar(datum: RootDatum, lam: Sequence[int],
                            cap: int = DEFAULT_ORBIT_CAP) -> IntVec:
    """The antidominant representative of a cocharacter.

    Antidominant means <alpha, lam> <= 0 for every positive root alpha,
    equivalently for every simple root.
    """
    cur = tuple(int(v) for v in lam)
    for _ in range(cap):
        for i in range(datum.nsimple):
            if sum(a * b for a, b in zip(datum.simple_roots[i], cur)) > 0:
                cur = datum.reflect_cochar(i, cur)
                break
        else:
            return cur
    raise OrbitCapError(f"antidominant representative not reached within {cap} reflections")


def dominance_leq(datum: RootDatum, z: Sequence, z2: Sequence) -> bool:
    """Dominance order: z <= z2 iff z2 - z is a non-negative rational
    combination of the simple roots (decided exactly; the combination is
    unique because simple roots are independent)."""
    a, b = vec(z), vec(z2)
    if len(a) != datum.rank or len(b) != datum.rank:
        raise ValueError("vector length must equal the rank")
    diff = tuple(y - x for x, y in zip(a, b))
    if datum.nsimple == 0:
        return all(v == 0 for v in diff)
    cols = list(zip(*[vec(r) for r in datum.simple_roots]))
    coeffs = solve_linear(cols, diff)
    return coeffs is not None and all(c >= 0 for c in coeffs)


# ---------------------------------------------------------------------------
# Highest weights and membership domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HighestWeight:
    """A dominant integral weight for each of the e*f embeddings.

    For GL_{d+1} each entry is (a_1, ..., a_{d+1}) with a_j <= a_{j+1}
    (the lower-triangular Borel convention).
    """

    per_embedding: tuple[IntVec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "per_embedding", tuple(tuple(int(v) for v in w) for w in self.per_embedding)
        )

    @classmethod
    def of(cls, weights: Iterable[Iterable[int]]) -> "HighestWeight":
        return cls(tuple(tuple(int(v) for v in w) for w in weights))

    @classmethod
    def zero(cls, datum: RootDatum, field: FieldData) -> "HighestWeight":
        return cls(tuple((0,) * datum.rank for _ in range(field.degree)))

    @property
    def embeddings(self) -> int:
        return len(self.per_embedding)

    def xi_L(self) -> Vec:
        """Coordinate-wise sum over the embeddings (the valuation of xi)."""
        n = len(self.per_embedding[0])
        return tuple(Fraction(sum(w[i] for w in self.per_embedding)) for i in range(n))


def validate_highest_weight(datum: RootDatum, field: FieldData, xi: HighestWeight) -> None:
    if xi.embeddings != field.degree:
        raise ValueError(f"expected {field.degree} embeddings, got {xi.embeddings}")
    for w in xi.per_embedding:
        if len(w) != datum.rank:
            raise ValueError("weight length must equal the rank")
        if not datum.is_dominant(w):
            raise ValueError(f"weight {w} is not dominant for {datum.name or 'datum'}")


def eta_L(datum: RootDatum, field: FieldData) -> Vec:
    """[L:Q_p] times the half sum of positive roots."""
    return tuple(field.degree * v for v in half_sum_positive_roots(datum))


def in_Vxi(datum: RootDatum, field: FieldData, xi: HighestWeight, z: Sequence,
           normalized: bool = False) -> bool:
    """Membership of z in the valuation image of the spectral domain.

    Unnormalized: (z + eta_L)^dom <= eta_L + xi_L.
    Normalized:    z^dom          <= eta_L + xi_L.
    """
    validate_highest_weight(datum, field, xi)
    zv = vec(z)
    el = eta_L(datum, field)
    bound = tuple(a + b for a, b in zip(el, xi.xi_L()))
    probe = zv if normalized else tuple(a + b for a, b in zip(zv, el))
    return dominance_leq(datum, dominant_rep(datum, probe), bound)


@lru_cache(maxsize=None)
def _hull_points(datum: RootDatum, field: FieldData, xi: HighestWeight,
                 cap: int) -> tuple[Vec, ...]:
    el = eta_L(datum, field)
    top = tuple(a + b for a, b in zip(el, xi.xi_L()))
    orbit = weyl_orbit(datum, top, cap)
    return tuple(sorted(tuple(a - b for a, b in zip(pt, el)) for pt in orbit))


def in_hull(datum: RootDatum, field: FieldData, xi: HighestWeight, z: Sequence,
            cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Membership of z in the convex hull of {w(eta_L + xi_L) - eta_L : w in W},
    decided by exact rational linear programming."""
    validate_highest_weight(datum, field, xi)
    zv = vec(z)
    pts = _hull_points(datum, field, xi, cap)
    rows = [[pt[i] for pt in pts] for i in range(datum.rank)]
    rows.append([Fraction(1)] * len(pts))
    rhs = list(zv) + [Fraction(1)]
    return lp_feasible(rows, rhs)
