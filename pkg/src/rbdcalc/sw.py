"""Wall-crossing arithmetic for small-perturbation invariants at b2+ = 1.

The engine's normalization axiom: on the blown-up rational surface the value
in the chamber of the hyperplane period point PD(h) is 0 for every
characteristic class. All other chamber values follow from the crossing rule

    value(H') = value(H) + { 0                  same sign of K.H and K.H',
                             (-1)^(d/2)         K.H > 0 > K.H',
                             (-1)^(1 + d/2)     K.H < 0 < K.H',

with d = (K^2 - 2e - 3sigma)/4 the expected dimension. The increment depends
only on the endpoints' signs, so values are path-independent.

The blowdown pipeline evaluates the ambient value in the chamber of a period
point orthogonal to the configuration; a lift whose pairings against the
configuration are (0, ..., 0, +/-p) descends, and the restriction checks
below certify the arithmetic of that descent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .blowdown import AmbientManifoldData
from .chains import CpConfiguration, intersection_matrix
from .errors import ConsistencyError, LatticeMismatchError, PreconditionError
from .lattice import ClassVector, is_characteristic, pairing
from .snf import smith_normal_form, solve_rational


@dataclass(frozen=True)
class CharacteristicData:
    """A characteristic class on the ambient manifold."""

    k: ClassVector

    def __post_init__(self):
        if not is_characteristic(self.k):
            even = [i for i, c in enumerate(self.k.coeffs) if c % 2 == 0]
            raise PreconditionError(
                f"class is not characteristic: coefficients at positions {even} are even"
            )

    @property
    def manifold(self) -> AmbientManifoldData:
        return AmbientManifoldData(self.k.lattice)


@dataclass(frozen=True)
class PeriodPoint:
    """A positive-square class in the forward cone, defining a chamber."""

    vector: ClassVector

    def __post_init__(self):
        sq = self.vector.square()
        if sq <= 0:
            raise PreconditionError(f"period point needs square > 0, got H^2 = {sq}")
        if self.vector.coeffs[0] <= 0:
            raise PreconditionError(
                f"period point must lie in the forward cone: H.h = "
                f"{self.vector.coeffs[0]} <= 0"
            )


def d_invariant(k: CharacteristicData) -> int:
    """Expected dimension d = (K^2 - 2e - 3sigma)/4 of the ambient manifold."""
    man = k.manifold
    num = k.k.square() - 2 * man.euler - 3 * man.signature
    if num % 4 != 0:
        raise ConsistencyError(f"dimension formula gives non-integer: {num}/4")
    return num // 4


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _increment(sign_from: int, sign_to: int, d: int) -> tuple[int, str]:
    if sign_from == sign_to:
        return 0, "no-crossing"
    if sign_from > 0 > sign_to:
        return (-1) ** (d // 2), "positive-to-negative"
    return (-1) ** (1 + d // 2), "negative-to-positive"


def wall_crossing(
    k: CharacteristicData,
    start: PeriodPoint,
    end: PeriodPoint,
    base_value: int,
) -> int:
    """Value in the end chamber from the value in the start chamber."""
    if start.vector.lattice != k.k.lattice or end.vector.lattice != k.k.lattice:
        raise LatticeMismatchError("period points and class must share one lattice")
    d = d_invariant(k)
    if d < 0:
        raise PreconditionError(f"crossing formula needs d >= 0, got d = {d}")
    if d % 2 != 0:
        raise ConsistencyError(f"crossing sign needs even d, got d = {d}")
    s_from = _sign(pairing(k.k, start.vector))
    s_to = _sign(pairing(k.k, end.vector))
    if s_from == 0:
        raise PreconditionError("start period point lies on the wall: K.H = 0")
    if s_to == 0:
        raise PreconditionError("end period point lies on the wall: K.H' = 0")
    inc, _ = _increment(s_from, s_to, d)
    return base_value + inc


@dataclass(frozen=True)
class AdmissibilityReport:
    """Pairings of a lift against the configuration, and whether they descend."""

    ok: bool
    pairings: tuple[int, ...]
    p: int

    def to_json(self) -> dict:
        return {"ok": self.ok, "pairings": list(self.pairings), "p": self.p}


def lift_admissible(k: CharacteristicData, cfg: CpConfiguration) -> AdmissibilityReport:
    """A lift descends iff it pairs 0 with the body and +/-p with the long class."""
    if k.k.lattice != cfg.lattice:
        raise LatticeMismatchError("lift and configuration lattices differ")
    pair = tuple(pairing(k.k, u) for u in cfg.classes)
    ok = all(v == 0 for v in pair[: cfg.p - 2]) and abs(pair[cfg.p - 2]) == cfg.p
    return AdmissibilityReport(ok=ok, pairings=pair, p=cfg.p)


@dataclass(frozen=True)
class RestrictionReport:
    """Arithmetic certificate for restricting a lift to the configuration.

    square_ok is the exact rational identity k^T Q^{-1} k = 1 - p. The coset
    data (residue, m, parity) is computed in the fixed normal-form convention
    and is flagged convention-dependent: the parity comparison is reported,
    not claimed invariant.
    """

    pairings: tuple[int, ...]
    square: Fraction
    square_expected: int
    square_ok: bool
    gram_divisors: tuple[int, ...]
    residue: int
    residue_divisible_by_p: bool
    m: int | None
    m_parity_expected: int
    m_parity_matches: bool | None
    convention_dependent: bool

    def to_json(self) -> dict:
        return {
            "pairings": list(self.pairings),
            "square": [self.square.numerator, self.square.denominator],
            "square_expected": self.square_expected,
            "square_ok": self.square_ok,
            "gram_divisors": list(self.gram_divisors),
            "residue": self.residue,
            "residue_divisible_by_p": self.residue_divisible_by_p,
            "m": self.m,
            "m_parity_expected": self.m_parity_expected,
            "m_parity_matches": self.m_parity_matches,
            "convention_dependent": self.convention_dependent,
        }


def restriction_conditions(k: CharacteristicData, cfg: CpConfiguration) -> RestrictionReport:
    """Check the exact arithmetic of restricting the lift to the chain span.

    With Q the configuration Gram matrix and k_i = K.u_i: the rational square
    k^T Q^{-1} k must equal 1 - p, and the class of k in coker(Q), a cyclic
    group of order p^2, is reported as residue = m p with m's parity compared
    against p - 1 (mod 2) under the fixed normal-form convention.
    """
    if k.k.lattice != cfg.lattice:
        raise LatticeMismatchError("lift and configuration lattices differ")
    q = intersection_matrix(cfg.classes)
    kv = [pairing(k.k, u) for u in cfg.classes]
    y = solve_rational(q, kv)
    sq = sum(Fraction(a) * b for a, b in zip(kv, y))
    expected = 1 - cfg.p

    s = smith_normal_form(q)
    # coker(Q) = sum Z/d_i via x -> (U x)_i mod d_i; chains give (1,...,1,p^2)
    ux = [sum(s.u[i][j] * kv[j] for j in range(len(kv))) for i in range(len(kv))]
    p2 = cfg.p * cfg.p
    last = s.diagonal[-1]
    if last != p2:
        raise ConsistencyError(
            f"configuration cokernel is not Z/p^2: divisors {s.diagonal}"
        )
    residue = ux[-1] % p2
    divisible = residue % cfg.p == 0
    m = residue // cfg.p if divisible else None
    parity_expected = (cfg.p - 1) % 2
    return RestrictionReport(
        pairings=tuple(kv),
        square=sq,
        square_expected=expected,
        square_ok=sq == expected,
        gram_divisors=s.diagonal,
        residue=residue,
        residue_divisible_by_p=divisible,
        m=m,
        m_parity_expected=parity_expected,
        m_parity_matches=None if m is None else (m % 2 == parity_expected),
        convention_dependent=True,
    )


@dataclass(frozen=True)
class SwOutcome:
    """Value of the blowdown invariant plus the certificate chain behind it."""

    value: int
    d: int
    base_value: int
    base_sign: int
    target_sign: int
    branch: str
    admissibility: AdmissibilityReport
    restriction: RestrictionReport
    exotic_certificate: bool
    note: str | None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "d": self.d,
            "base_value": self.base_value,
            "base_sign": self.base_sign,
            "target_sign": self.target_sign,
            "branch": self.branch,
            "admissibility": self.admissibility.to_json(),
            "restriction": self.restriction.to_json(),
            "exotic_certificate": self.exotic_certificate,
            "note": self.note,
        }


def sw_on_blowdown(
    x: AmbientManifoldData,
    cfg: CpConfiguration,
    k: CharacteristicData,
    h: PeriodPoint,
) -> SwOutcome:
    """Blowdown invariant of the descended class, evaluated in the H chamber.

    Preconditions: everything shares one lattice, H is orthogonal to the
    configuration (so its chamber survives the surgery), the lift is
    admissible, and the blowdown's negative rank is at most 9 (which makes
    the downstairs invariant a single well-defined number rather than a
    chamber function). A nonzero value certifies nonvanishing downstairs;
    with d = 0 that separates the blowdown from manifolds with vanishing
    invariants, while for d > 0 the note records that nonvanishing alone is
    not such a certificate.
    """
    if cfg.lattice != x.lattice or k.k.lattice != x.lattice or h.vector.lattice != x.lattice:
        raise LatticeMismatchError("ambient, configuration, lift and period point must share a lattice")
    b2_minus_after = x.b2_minus - (cfg.p - 1)
    if b2_minus_after > 9:
        raise PreconditionError(
            f"b2- after blowdown is {b2_minus_after} > 9: the downstairs "
            f"invariant is chamber-dependent and no single value exists"
        )
    for i, u in enumerate(cfg.classes, 1):
        pv = pairing(h.vector, u)
        if pv != 0:
            raise PreconditionError(
                f"period point is not orthogonal to the configuration: H.u_{i} = {pv}"
            )
    adm = lift_admissible(k, cfg)
    if not adm.ok:
        raise PreconditionError(
            f"lift does not descend: pairings {list(adm.pairings)} are not "
            f"(0, ..., 0, +/-{cfg.p})"
        )
    restr = restriction_conditions(k, cfg)
    d = d_invariant(k)
    base = x.lattice.h()
    s_base = _sign(pairing(k.k, base))
    s_target = _sign(pairing(k.k, h.vector))
    if d < 0:
        return SwOutcome(
            value=0,
            d=d,
            base_value=0,
            base_sign=s_base,
            target_sign=s_target,
            branch="negative-dimension",
            admissibility=adm,
            restriction=restr,
            exotic_certificate=False,
            note="expected dimension is negative; the invariant vanishes in every chamber",
        )
    if s_base == 0:
        raise PreconditionError("class pairs zero with h; the base chamber is on a wall")
    if s_target == 0:
        raise PreconditionError("period point lies on a wall of the class: K.H = 0")
    inc, branch = _increment(s_base, s_target, d)
    value = 0 + inc
    note = None
    if d > 0 and value != 0:
        note = "d > 0: nonvanishing does not by itself certify an exotic pair"
    return SwOutcome(
        value=value,
        d=d,
        base_value=0,
        base_sign=s_base,
        target_sign=s_target,
        branch=branch,
        admissibility=adm,
        restriction=restr,
        exotic_certificate=(d == 0 and value != 0),
        note=note,
    )
