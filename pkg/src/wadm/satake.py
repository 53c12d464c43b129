"""Group ring of the cocharacter lattice with its twisted Weyl action and
the highest-weight sup norm; spectral membership tests.

Elements of the group ring K[Lambda] are finitely supported sums
sum_lambda c_lambda * lambda with lambda an integer cocharacter vector and
c_lambda in the formal quadratic extension by sqrt(q).  Only valuations of
the half modulus character, the cocycle and the weight character are ever
needed, and all of them are reported in the q-normalized valuation
(val(q) = 1, val(sqrt q) = 1/2); multiply by [L:Q_p] to convert to the
uniformizer-normalized valuation.

Sign convention, frozen once: the preferred square root of the Borel
modulus character evaluates on lambda with q-valuation +<eta, lambda>
where eta is the half sum of positive roots.  The opposite sign breaks
submultiplicativity of the norm already on GL_2 monomials; the frozen
golden value is delta_half_val(gl(2), (1,0)) = -1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import INF, FieldData, QSqrtQ, val_q
from .rootdata import (
    HighestWeight,
    RootDatum,
    WeylElement,
    antidominant_rep_cochar,
    dot,
    half_sum_positive_roots,
    in_Vxi,
    validate_highest_weight,
    vec,
)

Cochar = tuple[int, ...]


@dataclass(frozen=True)
class GroupRingElem:
    """Finitely supported map lambda -> coefficient, zero terms pruned."""

    terms: tuple[tuple[Cochar, QSqrtQ], ...]

    def __post_init__(self) -> None:
        pruned = tuple(
            (tuple(int(v) for v in lam), c) for lam, c in self.terms if not c.is_zero()
        )
        qs = {c.q for _, c in pruned}
        if len(qs) > 1:
            raise ValueError(f"coefficients with mismatched q: {sorted(qs)}")
        lams = [lam for lam, _ in pruned]
        if len(set(lams)) != len(lams):
            raise ValueError("duplicate cocharacters in support")
        object.__setattr__(self, "terms", tuple(sorted(pruned)))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Sequence[int], QSqrtQ]]) -> "GroupRingElem":
        acc: dict[Cochar, QSqrtQ] = {}
        for lam, c in terms:
            key = tuple(int(v) for v in lam)
            acc[key] = acc[key] + c if key in acc else c
        return cls(tuple(acc.items()))

    @classmethod
    def monomial(cls, lam: Sequence[int], coeff: QSqrtQ) -> "GroupRingElem":
        return cls(((tuple(int(v) for v in lam), coeff),))

    @classmethod
    def zero(cls) -> "GroupRingElem":
        return cls(())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        return GroupRingElem.from_terms(self.terms + other.terms)

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        """Convolution product: lambda * mu = lambda + mu on the lattice."""
        out: list[tuple[Cochar, QSqrtQ]] = []
        for lam, c in self.terms:
            for mu, d in other.terms:
                out.append((tuple(a + b for a, b in zip(lam, mu)), c * d))
        return GroupRingElem.from_terms(out)

    def support(self) -> tuple[Cochar, ...]:
        return tuple(lam for lam, _ in self.terms)


def delta_half_val(datum: RootDatum, lam: Sequence[int]) -> Fraction:
    """q-valuation of the preferred square root of the Borel modulus at lambda.

    Linear in lambda: +<eta, lambda>.  On GL_2 with lambda = (1, 0) this is
    -1/2 (golden value; the sign is locked by the norm invariants).
    """
    return dot(half_sum_positive_roots(datum), lam)


def cocycle_gamma_val(datum: RootDatum, w: WeylElement, lam: Sequence[int]) -> Fraction:
    """q-valuation of the twisting cocycle gamma(w, lambda).

    Equals delta_half_val(w lambda) - delta_half_val(lambda); always an
    integer because lambda - w(lambda) lies in the coroot lattice and eta
    pairs integrally with coroots.
    """
    v = delta_half_val(datum, w.on_cochar(lam)) - delta_half_val(datum, lam)
    if v.denominator != 1:
        raise ArithmeticError(f"cocycle valuation {v} is not an integer")
    return v


def twisted_action(datum: RootDatum, w: WeylElement, x: GroupRingElem) -> GroupRingElem:
    """The twisted Weyl action w . sum c_lambda lambda = sum gamma(w,lambda)
    c_lambda (w lambda), with gamma realized as the exact power q^val."""
    out = []
    for lam, c in x.terms:
        n = cocycle_gamma_val(datum, w, lam)
        scale = Fraction(c.q) ** int(n)
        out.append((w.on_cochar(lam), c * scale))
    return GroupRingElem.from_terms(out)


def norm_xi_val(datum: RootDatum, field: FieldData, xi: HighestWeight, x: GroupRingElem):
    """q-valuation of the highest-weight sup norm of a group ring element.

    Every lambda is first moved to its antidominant Weyl translate; the
    value is min over the support of

        val_q(c_lambda) + [delta_half_val(lambda^-) - delta_half_val(lambda)]
                        + <xi_L, lambda^-> / [L:Q_p]

    and INF for the zero element.  The norm itself is q^(-value); for an
    antidominant monomial with unit coefficient the value is the
    q-valuation of the weight character at the corresponding torus point.
    """
    validate_highest_weight(datum, field, xi)
    if x.is_zero():
        return INF
    if any(c.q != field.q for _, c in x.terms):
        raise ValueError(f"coefficient q does not match the field's q = {field.q}")
    xi_l = xi.xi_L()
    best = None
    for lam, c in x.terms:
        anti = antidominant_rep_cochar(datum, lam)
        v = (
            val_q(c)
            + delta_half_val(datum, anti)
            - delta_half_val(datum, lam)
            + dot(xi_l, anti) / field.degree
        )
        if best is None or v < best:
            best = v
    return best


def spectrum_member(datum: RootDatum, field: FieldData, xi: HighestWeight,
                    zeta_val: Sequence, normalized: bool = False) -> bool:
    """Whether a spectral point, given through its valuation vector in V,
    lies in the (normalized or unnormalized) valuation domain.

    This is the exact criterion for the character attached to the point to
    extend to the completed Hecke algebra; the vector is val_L-normalized
    (the image of the valuation map on the dual torus).
    """
    return in_Vxi(datum, field, xi, vec(zeta_val), normalized=normalized)
