"""Dictionary between unramified-or-Steinberg Weil-Deligne data and
Frobenius modules, F-semisimplification, and block decomposition.

Convention table (see also the checker module):

* A ``WDRep`` stores valuations of GEOMETRIC Frobenius eigenvalues, in the
  val_L normalization.  Under the dictionary the geometric Frobenius
  matches the f-th Frobenius power directly, so these valuations are the
  module slopes with no sign change.
* Raw zeta-valuation lists at the checker boundary are ARITHMETIC
  Frobenius valuations (slope = -valuation); the flip happens there, not
  here.
* Within an indecomposable chain, successive geometric Frobenius
  valuations differ by exactly val_L(q) = [L:Q_p] (the nilpotent operator
  intertwines the Frobenius with a twist by p).

Only unramified data (and chains over unramified pieces) are
representable; inputs flagged ramified are rejected, since a faithful
treatment needs an honest Galois action rather than valuations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import FieldData
from .isocrystal import Block, PhiModule, UnsupportedRegimeError


@dataclass(frozen=True)
class Unramified:
    """An unramified piece: eigenvalue valuation of geometric Frobenius,
    multiplicity, and the Jordan partition of the Frobenius action."""

    val: Fraction
    mult: int
    jordan: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "val", Fraction(self.val))
        jordan = tuple(sorted((int(v) for v in self.jordan), reverse=True)) or (1,) * self.mult
        object.__setattr__(self, "jordan", jordan)
        if self.mult < 1:
            raise ValueError("multiplicity must be >= 1")
        if any(p < 1 for p in jordan) or sum(jordan) != self.mult:
            raise ValueError(f"jordan {jordan} is not a partition of {self.mult}")

    @property
    def dimension(self) -> int:
        return self.mult


@dataclass(frozen=True)
class SteinbergChain:
    """An indecomposable chain of length pieces, each of dimension
    piece_dim, over an unramified piece at base_val; the nilpotent
    operator maps each twist onto the previous one."""

    base_val: Fraction
    piece_dim: int
    length: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "base_val", Fraction(self.base_val))
        if self.piece_dim < 1 or self.length < 2:
            raise ValueError("piece_dim must be >= 1 and length >= 2")

    @property
    def dimension(self) -> int:
        return self.piece_dim * self.length


Summand = Union[Unramified, SteinbergChain]


def _sort_key(part: Summand):
    if isinstance(part, SteinbergChain):
        return (1, part.base_val, part.piece_dim, part.length)
    return (0, part.val, part.mult, part.jordan)


@dataclass(frozen=True)
class WDRep:
    """An unramified-or-Steinberg Weil-Deligne datum, as a direct sum of
    declared summands.  ``ramified`` marks out-of-scope inputs so the
    error surface exists at this layer too."""

    field: FieldData
    parts: tuple[Summand, ...]
    ramified: bool = False

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a representation needs at least one summand")
        for part in self.parts:
            if isinstance(part, SteinbergChain):
                continue
            if not isinstance(part, Unramified):
                raise TypeError(f"unsupported summand {part!r}")

    @property
    def dimension(self) -> int:
        return sum(p.dimension for p in self.parts)

    def canonical(self) -> "WDRep":
        """Sorted canonical form (summand order and Jordan order are
        choices the dictionary does not see)."""
        return WDRep(self.field, tuple(sorted(self.parts, key=_sort_key)), self.ramified)

    def has_nilpotent(self) -> bool:
        return any(isinstance(p, SteinbergChain) for p in self.parts)


def mod_of_wd(rep: WDRep) -> PhiModule:
    """The Frobenius module of an unramified-or-chain datum.

    The underlying module is the sum of one copy of the space per residue
    Frobenius step, with the wrap map acting by geometric Frobenius, so
    the f-th power eigenvalues on each isotypic component are exactly the
    geometric Frobenius eigenvalues and slopes equal the stored
    valuations.  A single chain summand maps to the chain module; mixed
    sums have no single-module representation here and raise.
    """
    if rep.ramified:
        raise UnsupportedRegimeError("ramified data cannot be transported by valuations alone")
    if not rep.has_nilpotent():
        blocks = tuple(Block(p.val, p.mult, p.jordan) for p in rep.parts)
        return PhiModule(rep.field, blocks)
    if len(rep.parts) == 1:
        chain = rep.parts[0]
        return PhiModule.chain(rep.field, chain.piece_dim, chain.length - 1, chain.base_val)
    raise UnsupportedRegimeError(
        "mixed nilpotent and plain summands: decompose into blocks instead"
    )


def wd_of_mod(module: PhiModule) -> WDRep:
    """Inverse dictionary, up to canonical form of the data."""
    if module.steinberg is not None:
        st = module.steinberg
        part = SteinbergChain(st.base_slope, st.piece_rank, st.s + 1)
        return WDRep(module.field, (part,)).canonical()
    parts = tuple(Unramified(b.slope, b.mult, b.jordan) for b in module.blocks)
    return WDRep(module.field, parts).canonical()


def f_semisimplify(rep: WDRep) -> WDRep:
    """Replace every Jordan partition by all-1 parts; chain descriptors
    (the nilpotent data) are preserved."""
    parts = []
    for p in rep.parts:
        if isinstance(p, Unramified):
            parts.append(Unramified(p.val, p.mult, (1,) * p.mult))
        else:
            parts.append(p)
    return WDRep(rep.field, tuple(parts), rep.ramified)


def block_decompose(rep: WDRep) -> tuple[tuple[Fraction, int], ...]:
    """Per indecomposable summand of the F-semisimplification: the
    normalized Newton number and the dimension.

    Unramified summands split into multiplicity-many one-dimensional
    pieces (Jordan data is invisible here, by design: semisimplification
    must not change the output).  A chain of length L over a piece of
    dimension p at base valuation v contributes
    (L*p*v + p*[L:Q_p]*(0+1+...+(L-1)), L*p).
    """
    if rep.ramified:
        raise UnsupportedRegimeError("ramified data cannot be decomposed by valuations alone")
    out: list[tuple[Fraction, int]] = []
    deg = rep.field.degree
    for p in rep.parts:
        if isinstance(p, Unramified):
            out.extend([(p.val, 1)] * p.mult)
        else:
            tn = p.length * p.piece_dim * p.base_val + Fraction(
                p.piece_dim * deg * p.length * (p.length - 1), 2
            )
            out.append((tn, p.dimension))
    return tuple(out)
