"""Top-level checker: weight/jump conversions, invariant-norm inequalities,
central character integrality, existence verdicts with witnesses, and
normalized spectral membership.

Sign and inversion table -- the single reconciliation point between the
Galois-side and spectral-side conventions.  Every module boundary below
refers to this table; the translation identity in the acceptance suite
(norm inequalities <=> partial-sum inequalities after weight conversion
<=> normalized membership) is the machine check that it is consistent.

  ==============================  =========================================
  quantity                        convention
  ==============================  =========================================
  galois.zeta_vals                val_L of ARITHMETIC Frobenius eigenvalues
  WDRep Frobenius valuations      val_L of GEOMETRIC Frobenius eigenvalues,
                                  equal to the module slopes
  module slope                    -zeta_val  (geometric = arithmetic^-1)
  spectral point, normalized      zeta_vals - [L:Q_p]*(d/2)*(1,...,1)
  spectral point, unnormalized    zeta_vals - [L:Q_p]*(0,1,...,d)
  dual-parameter inversion        negation at valuation level; absorbed by
                                  the two rows above
  ==============================  =========================================

For non-GL group presets the membership test takes the spectral point
directly (no shift, no cross-check): the parameter there already lives on
the dual torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import FieldData, format_rat
from .isocrystal import (
    Filtration,
    PhiModule,
    Polygon,
    UnsupportedRegimeError,
    admissible_by_inequalities,
    block_existence_criterion,
    build_admissible_filtration,
    hodge_polygon,
    newton_polygon,
    steinberg_filtration,
    t_H,
    t_N,
    weak_admissible,
)
from .rootdata import HighestWeight, RootDatum, in_Vxi
from .weildeligne import SteinbergChain, Unramified, WDRep, block_decompose, f_semisimplify

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"


# ---------------------------------------------------------------------------
# Weight conversions
# ---------------------------------------------------------------------------


def jumps_from_weights(a_rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Jump type of a highest weight: i_j = -a_{d+2-j} - (d+1-j), per
    embedding (1-based j); the inverse of weights_from_jumps."""
    out = []
    for row in a_rows:
        a = [int(v) for v in row]
        if any(x > y for x, y in zip(a, a[1:])):
            raise ValueError(f"weights must be nondecreasing, got {a}")
        d = len(a) - 1
        out.append([-a[d - j] - (d - j) for j in range(d + 1)])
    return out


def weights_from_jumps(i_rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Highest weight of a jump type: a_j = -i_{d+2-j} - (j-1), per
    embedding (1-based j)."""
    out = []
    for row in i_rows:
        i = [int(v) for v in row]
        if any(x >= y for x, y in zip(i, i[1:])):
            raise ValueError(f"jumps must be strictly increasing, got {i}")
        d = len(i) - 1
        out.append([-i[d - j] - j for j in range(d + 1)])
    return out


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass
class CheckLine:
    """One evaluated condition with both sides as exact rationals."""

    name: str
    ok: Optional[bool]
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    note: str = ""

    def render(self) -> str:
        parts = []
        if self.lhs is not None:
            parts.append(f"lhs={format_rat(self.lhs)}")
        if self.rhs is not None:
            parts.append(f"rhs={format_rat(self.rhs)}")
        if self.ok is not None:
            parts.append(f"ok={'true' if self.ok else 'false'}")
        if self.note:
            parts.append(f"note={self.note}")
        return f"{self.name}: " + " ".join(parts)


@dataclass
class Verdict:
    """Named results plus witness data and a trace of every inequality."""

    status: str
    checks: list[CheckLine] = dc_field(default_factory=list)
    witness: Optional[Filtration] = None
    newton: Optional[Polygon] = None
    hodge: Optional[Polygon] = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


GaloisSide = Union[tuple, WDRep]  # ("zeta", vals) or a WDRep


@dataclass(frozen=True)
class Instance:
    """One structured problem instance.

    ``weights_a`` is the canonical highest-weight form (nondecreasing per
    embedding); the jump form converts through jumps_from_weights.  The
    Galois side is either a tuple of arithmetic Frobenius valuations or a
    WDRep with declared summands (see the sign table above).
    """

    ident: str
    field: FieldData
    weights_a: tuple[tuple[int, ...], ...]
    zeta_vals: Optional[tuple[Fraction, ...]] = None
    wd: Optional[WDRep] = None
    group: Optional[RootDatum] = None
    normalized: bool = True

    def __post_init__(self) -> None:
        if (self.zeta_vals is None) == (self.wd is None):
            raise ValueError("exactly one of zeta_vals and wd must be given")
        if len(self.weights_a) != self.field.degree:
            raise ValueError(
                f"expected {self.field.degree} embeddings of weights, got {len(self.weights_a)}"
            )
        n = len(self.weights_a[0])
        if any(len(row) != n for row in self.weights_a):
            raise ValueError("weight rows must have equal length")
        if self.zeta_vals is not None and len(self.zeta_vals) != n:
            raise ValueError("zeta valuation count must match the weight length")
        if self.wd is not None and self.wd.dimension != n:
            raise ValueError("Weil-Deligne dimension must match the weight length")
        if self.group is not None and self.group.name.startswith("gl(") \
                and self.group.rank != n:
            raise ValueError(
                f"group rank {self.group.rank} does not match the data dimension {n}"
            )

    @property
    def dimension(self) -> int:
        return len(self.weights_a[0])

    def datum(self) -> RootDatum:
        return self.group if self.group is not None else RootDatum.gl(self.dimension)

    def jumps(self) -> list[list[int]]:
        return jumps_from_weights(self.weights_a)

    def arithmetic_vals(self) -> list[Fraction]:
        """Arithmetic Frobenius valuations of the Galois side (sign table)."""
        if self.zeta_vals is not None:
            return list(self.zeta_vals)
        return [-v for v in _expanded_geometric_vals(self.wd)]


def _expanded_geometric_vals(rep: WDRep) -> list[Fraction]:
    vals: list[Fraction] = []
    deg = rep.field.degree
    for part in rep.parts:
        if isinstance(part, Unramified):
            vals.extend([part.val] * part.mult)
        else:
            for j in range(part.length):
                vals.extend([part.base_val + j * deg] * part.piece_dim)
    return vals


# ---------------------------------------------------------------------------
# Named checks
# ---------------------------------------------------------------------------


def invariant_norm_inequalities(zeta_vals: Sequence, a_rows: Sequence[Sequence[int]],
                                field: FieldData) -> Verdict:
    """Necessary conditions for an invariant norm on the attached locally
    algebraic representation: sorted tail sums of the zeta valuations
    against weight tail sums plus the modulus constant, with equality of
    the totals.
    """
    vals = sorted(Fraction(v) for v in zeta_vals)
    n = len(vals)
    d = n - 1
    if len(a_rows) != field.degree:
        raise ValueError(f"expected {field.degree} embeddings, got {len(a_rows)}")
    if any(len(row) != n for row in a_rows):
        raise ValueError("weight rows must match the valuation count")
    agg = [sum(row[j] for row in a_rows) for j in range(n)]
    checks = []
    ok_all = True
    for i in range(2, n + 1):  # 1-based tail start
        lhs = sum(vals[i - 1:], Fraction(0))
        rhs = sum(agg[i - 1:], Fraction(0)) + Fraction(
            field.degree * (d * (d + 1) - (i - 2) * (i - 1)), 2
        )
        ok = lhs <= rhs
        ok_all &= ok
        checks.append(CheckLine(f"norm.ineq.i={i}", ok, lhs, rhs))
    lhs = sum(vals, Fraction(0))
    rhs = sum(agg, Fraction(0)) + Fraction(field.degree * d * (d + 1), 2)
    ok = lhs == rhs
    ok_all &= ok
    checks.append(CheckLine("norm.eq.total", ok, lhs, rhs))
    return Verdict(PASS if ok_all else FAIL, checks)


def central_char_integral(galois: Union[Sequence, WDRep], a_rows: Sequence[Sequence[int]],
                          field: FieldData) -> bool:
    """Whether the central character is integral: the weight-character
    valuation plus the smooth-side central valuation must vanish.

    Equivalent to the endpoint equality t_H = t_N of every polygon
    verdict, which the acceptance suite checks.
    """
    if isinstance(galois, WDRep):
        det_arith = -sum((tn for tn, _ in block_decompose(galois)), Fraction(0))
        n = galois.dimension
    else:
        vals = [Fraction(v) for v in galois]
        det_arith = sum(vals, Fraction(0))
        n = len(vals)
    if any(len(row) != n for row in a_rows) or len(a_rows) != field.degree:
        raise ValueError("weight shape mismatch")
    d = n - 1
    chi_rho = sum(sum(row) for row in a_rows)
    chi_pi = -det_arith + Fraction(field.degree * d * (d + 1), 2)
    return chi_rho + chi_pi == 0


def _inequality_route(instance: Instance, slopes: Sequence[Fraction]) -> Verdict:
    """Existence via the partial-sum inequalities, with a witness built and
    re-verified by the subobject oracle; distinct slopes required."""
    module = PhiModule.of_slopes(instance.field, slopes)
    jumps = instance.jumps()
    checks = []
    n = module.rank
    vals = sorted(-s for s in module.slopes_expanded())
    agg = [sum(sigma[j] for sigma in jumps) for j in range(n)]
    ok_all = True
    lhs = Fraction(0)
    for i in range(1, n + 1):
        lhs += agg[i - 1]
        rhs = -sum(vals[n - i:], Fraction(0))
        ok = (lhs <= rhs) if i < n else (lhs == rhs)
        ok_all &= ok
        kind = f"adm.ineq.i={i}" if i < n else "adm.eq.total"
        checks.append(CheckLine(kind, ok, lhs, rhs))
    assert ok_all == admissible_by_inequalities(module, jumps)
    newton = newton_polygon(module)
    hodge = hodge_polygon(Filtration.of_jumps(jumps))
    witness = None
    if ok_all:
        witness = build_admissible_filtration(module, jumps)
        if not weak_admissible(module, witness):  # pragma: no cover - internal consistency
            raise RuntimeError("constructed witness failed the subobject oracle")
        checks.append(CheckLine("adm.witness.oracle", True))
    return Verdict(PASS if ok_all else FAIL, checks, witness, newton, hodge)


def _chain_route(instance: Instance, chain: SteinbergChain) -> Verdict:
    """Existence for a single declared chain: the chain filtration is the
    simultaneous minimizer over the chain subobjects, so the oracle on it
    decides existence; for integer jumps this is the central equality."""
    module = PhiModule.chain(instance.field, chain.piece_dim, chain.length - 1, chain.base_val)
    jumps = instance.jumps()
    filt = steinberg_filtration(module, jumps)
    ok = weak_admissible(module, filt)
    checks = [
        CheckLine("adm.chain.equality", t_H(filt) == t_N(module), t_H(filt), t_N(module)),
        CheckLine("adm.chain.oracle", ok),
    ]
    newton = newton_polygon(module)
    hodge = hodge_polygon(filt)
    return Verdict(PASS if ok else FAIL, checks, filt if ok else None, newton, hodge)


def _block_route(instance: Instance, rep: WDRep) -> Verdict:
    """Existence for declared direct sums via the block polygon criterion.
    Non-constructive: no witness filtration is attached."""
    blocks = block_decompose(rep)
    jumps = instance.jumps()
    ok = block_existence_criterion(blocks, jumps)
    total_dim = sum(d for _, d in blocks)
    agg = [sum(sigma[j] for sigma in jumps) for j in range(total_dim)]
    ordered = sorted(((Fraction(tn), int(d)) for tn, d in blocks), key=lambda bd: (bd[0], -bd[1]))
    newton_pts = []
    hodge_pts = []
    x = 0
    ysum = Fraction(0)
    checks = []
    for tn, dim in ordered:
        x += dim
        ysum += tn
        hy = sum(agg[:x], Fraction(0))
        newton_pts.append((Fraction(x), ysum))
        hodge_pts.append((Fraction(x), hy))
        boundary_ok = (hy <= ysum) if x < total_dim else (hy == ysum)
        checks.append(CheckLine(f"adm.block.x={x}", boundary_ok, hy, ysum))
    checks.append(CheckLine("adm.block.criterion", ok, note="no constructive witness in this regime"))
    return Verdict(
        PASS if ok else FAIL,
        checks,
        None,
        Polygon.from_path(newton_pts),
        Polygon.from_path(hodge_pts),
    )


def exists_admissible(instance: Instance) -> Verdict:
    """Existence of an admissible filtration with the instance's jump type.

    Decision paths: partial-sum inequalities with constructed witness for
    distinct-slope unramified data; chain oracle for a single declared
    chain; block polygon criterion for declared direct sums.  Unsupported
    regimes return an undecided verdict with the reason, never a guess.
    """
    if instance.zeta_vals is not None:
        vals = list(instance.zeta_vals)
        if len(set(vals)) != len(vals):
            return Verdict(
                UNDECIDED,
                reason="repeated zeta valuations without declared summand structure",
            )
        return _inequality_route(instance, [-v for v in vals])
    rep = instance.wd
    if rep.ramified:
        return Verdict(UNDECIDED, reason="ramified Galois data is outside the decidable regimes")
    rep_ss = f_semisimplify(rep)
    if len(rep_ss.parts) == 1 and isinstance(rep_ss.parts[0], SteinbergChain):
        return _chain_route(instance, rep_ss.parts[0])
    if not rep_ss.has_nilpotent():
        geo = _expanded_geometric_vals(rep_ss)
        if len(set(geo)) == len(geo):
            return _inequality_route(instance, geo)
    return _block_route(instance, rep_ss)


def membership_check(instance: Instance) -> Verdict:
    """Normalized spectral membership of the instance's parameter.

    For general-linear data the spectral point is the zeta-valuation
    vector shifted by the modulus (see the sign table), and the verdict is
    cross-checked against the invariant-norm inequalities; the two must
    agree identically.  For other group presets the Galois-side valuations
    are taken as the spectral point itself and tested under the instance's
    normalized/unnormalized option; half-integral data needs no special
    path.
    """
    datum = instance.datum()
    is_gl = datum.name.startswith("gl(")
    xi = HighestWeight.of(instance.weights_a)
    checks: list[CheckLine] = []
    if is_gl:
        vals = instance.arithmetic_vals()
        d = instance.dimension - 1
        shift = Fraction(instance.field.degree * d, 2)
        point = tuple(sorted(Fraction(v) - shift for v in vals))
        member = in_Vxi(datum, instance.field, xi, point, normalized=True)
        checks.append(CheckLine("membership.normalized", member,
                                note="point=(" + ", ".join(format_rat(v) for v in point) + ")"))
        norm_verdict = invariant_norm_inequalities(vals, instance.weights_a, instance.field)
        agree = member == norm_verdict.passed
        checks.append(CheckLine("membership.agrees_with_norm_inequalities", agree))
        if not agree:  # pragma: no cover - identity violation means a bug
            raise RuntimeError("membership and norm inequalities disagree")
        return Verdict(PASS if member else FAIL, checks)
    vals = instance.arithmetic_vals()
    if len(vals) != datum.rank:
        raise ValueError("spectral point length must equal the group rank")
    member = in_Vxi(datum, instance.field, xi, vals, normalized=instance.normalized)
    flavor = "normalized" if instance.normalized else "unnormalized"
    checks.append(CheckLine(f"membership.{flavor}", member))
    return Verdict(PASS if member else FAIL, checks)


# ---------------------------------------------------------------------------
# Full instance check
# ---------------------------------------------------------------------------


def polygons_for_instance(instance: Instance) -> tuple[Polygon, Polygon, bool]:
    """Newton/Hodge pair of an instance and whether the Hodge side is
    dominated.  Unlike the existence verdict this is defined for repeated
    raw valuations too (the polygons are purely numerical)."""
    from .isocrystal import polygon_dominates  # local to keep the import list honest

    jumps = instance.jumps()
    if instance.zeta_vals is not None:
        module = PhiModule.of_slopes(instance.field, [-v for v in instance.zeta_vals])
        newton = newton_polygon(module)
        hodge = hodge_polygon(Filtration.of_jumps(jumps))
        return newton, hodge, polygon_dominates(newton, hodge)
    rep = f_semisimplify(instance.wd)
    if rep.ramified:
        raise UnsupportedRegimeError("ramified Galois data has no polygon pair here")
    if len(rep.parts) == 1 and isinstance(rep.parts[0], SteinbergChain):
        chain = rep.parts[0]
        module = PhiModule.chain(instance.field, chain.piece_dim, chain.length - 1,
                                 chain.base_val)
        newton = newton_polygon(module)
        hodge = hodge_polygon(Filtration.of_jumps(jumps))
        return newton, hodge, polygon_dominates(newton, hodge)
    verdict = _block_route(instance, rep)
    return verdict.newton, verdict.hodge, verdict.passed


@dataclass
class InstanceResult:
    instance: Instance
    norm: Verdict
    central_ok: bool
    adm: Verdict
    membership: Optional[Verdict]
    status: str


def check_instance(instance: Instance) -> InstanceResult:
    """Run every named check on one instance; the overall status is the
    existence verdict's."""
    vals = instance.arithmetic_vals()
    norm = invariant_norm_inequalities(vals, instance.weights_a, instance.field)
    galois = instance.wd if instance.wd is not None else vals
    central = central_char_integral(galois, instance.weights_a, instance.field)
    adm = exists_admissible(instance)
    membership = None
    datum = instance.datum()
    if datum.name.startswith("gl(") or len(vals) == datum.rank:
        membership = membership_check(instance)
    return InstanceResult(instance, norm, central, adm, membership, adm.status)
