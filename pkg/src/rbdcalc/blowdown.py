"""Invariants and certificates for the rational blowdown of a chain.

Cutting out the configuration and gluing in the rational ball preserves b2+
and removes p-1 negative classes, so on the level of homology the outcome is
controlled by bookkeeping plus two certificate searches:

  * an H1 certificate: a class whose pairings against the configuration
    force the complement's first homology to die after gluing;
  * a parity certificate: either the signature obstruction (an even closed
    simply connected 4-manifold has signature divisible by 16) or an explicit
    odd-square class orthogonal to the configuration.

Both searches are deterministic, so reports are stable byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd
from typing import Sequence

from .chains import CpConfiguration
from .errors import DomainError, LatticeMismatchError
from .lattice import (
    AmbientLattice,
    ClassVector,
    orthogonal_complement_basis,
    pairing,
)


@dataclass(frozen=True)
class AmbientManifoldData:
    """The blown-up rational surface whose intersection lattice is Z^{1,n}."""

    lattice: AmbientLattice
    simply_connected: bool = True

    @property
    def b2_plus(self) -> int:
        return 1

    @property
    def b2_minus(self) -> int:
        return self.lattice.n

    @property
    def euler(self) -> int:
        return self.lattice.n + 3

    @property
    def signature(self) -> int:
        return 1 - self.lattice.n


@dataclass(frozen=True)
class BlowdownInvariants:
    b2_plus: int
    b2_minus: int
    euler: int
    signature: int

    def to_json(self) -> dict:
        return {
            "b2_plus": self.b2_plus,
            "b2_minus": self.b2_minus,
            "euler": self.euler,
            "signature": self.signature,
        }


@dataclass(frozen=True)
class H1Certificate:
    """Verdict on the first homology of the blowdown.

    verdict is "trivial" (witness found) or "inconclusive" (bounded search
    exhausted); never a claim of nontriviality. condition 1 means the witness
    pairs 1 with the first class and 0 with the rest; condition 2 means it
    pairs 0 with the body and coprime-to-p with the long class.
    """

    verdict: str
    condition: int | None
    witness: ClassVector | None
    pairings: tuple[int, ...] | None
    searched_bound: int | None = None
    searched_support: int | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "condition": self.condition,
            "witness": None if self.witness is None else self.witness.to_json(),
            "pairings": None if self.pairings is None else list(self.pairings),
            "searched_bound": self.searched_bound,
            "searched_support": self.searched_support,
        }


@dataclass(frozen=True)
class ParityReport:
    """Oddness certificate for the blowdown's intersection form.

    verdict: "odd", "even-possible" (no certificate found; no claim either
    way), or "inconclusive" (h1 not certified, so no route applies).
    """

    verdict: str
    route: str | None            # "signature-mod-16" | "odd-square-orthogonal-vector"
    witness: ClassVector | None
    witness_square: int | None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "route": self.route,
            "witness": None if self.witness is None else self.witness.to_json(),
            "witness_square": self.witness_square,
        }


def blowdown_invariants(x: AmbientManifoldData, cfg: CpConfiguration) -> BlowdownInvariants:
    """Betti/Euler/signature bookkeeping for the blowdown of cfg inside x."""
    if cfg.lattice != x.lattice:
        raise LatticeMismatchError(
            f"configuration lives in n = {cfg.lattice.n}, ambient has n = {x.lattice.n}"
        )
    b2_minus = x.b2_minus - (cfg.p - 1)
    if b2_minus < 0:
        raise DomainError("configuration rank exceeds the ambient negative part")
    return BlowdownInvariants(
        b2_plus=x.b2_plus,
        b2_minus=b2_minus,
        euler=2 + x.b2_plus + b2_minus,
        signature=x.b2_plus - b2_minus,
    )


def _h1_condition(delta: ClassVector, cfg: CpConfiguration) -> tuple[int, tuple[int, ...]] | None:
    """Which triviality condition delta satisfies (1 or 2), with its pairings."""
    p = cfg.p
    pair = tuple(pairing(delta, u) for u in cfg.classes)
    if pair[0] == 1 and all(v == 0 for v in pair[1:]):
        return 1, pair
    if all(v == 0 for v in pair[: p - 2]) and gcd(pair[p - 2], p) == 1:
        return 2, pair
    return None


def h1_certificate(
    x: AmbientManifoldData,
    cfg: CpConfiguration,
    delta: ClassVector | None = None,
    bound: int = 3,
    max_support: int = 4,
) -> H1Certificate:
    """Certify triviality of the blowdown's first homology, or give up.

    With an explicit delta, only that class is tested. Otherwise candidates
    are scanned in a fixed order (support size, then largest |coefficient|,
    then support positions, then coefficient tuples, all ascending) and the
    first class meeting either condition is the witness. Exhausting the scan
    yields "inconclusive", never a nontriviality claim.
    """
    if cfg.lattice != x.lattice:
        raise LatticeMismatchError("configuration and ambient lattices differ")
    if delta is not None:
        if delta.lattice != x.lattice:
            raise LatticeMismatchError("delta lives in a different lattice")
        hit = _h1_condition(delta, cfg)
        if hit is None:
            return H1Certificate(
                verdict="inconclusive",
                condition=None,
                witness=delta,
                pairings=tuple(pairing(delta, u) for u in cfg.classes),
            )
        cond, pair = hit
        return H1Certificate(verdict="trivial", condition=cond, witness=delta, pairings=pair)

    if bound < 1 or max_support < 1:
        raise DomainError("witness search needs bound >= 1 and max_support >= 1")
    rank = x.lattice.rank
    # pairings of each basis vector with each configuration class, so a
    # candidate's pairings cost O(support) instead of O(rank)
    basis_rows = [
        tuple(pairing(x.lattice.basis_vector(j), u) for u in cfg.classes)
        for j in range(rank)
    ]
    p = cfg.p
    for size in range(1, min(max_support, rank) + 1):
        for mag in range(1, bound + 1):
            for support in combinations(range(rank), size):
                rows = [basis_rows[j] for j in support]
                if all(all(v == 0 for v in row) for row in rows):
                    continue
                for coeffs in product(range(-mag, mag + 1), repeat=size):
                    if any(c == 0 for c in coeffs):
                        continue
                    if max(abs(c) for c in coeffs) != mag:
                        continue
                    pair = tuple(
                        sum(c * row[i] for c, row in zip(coeffs, rows))
                        for i in range(p - 1)
                    )
                    ok = None
                    if pair[0] == 1 and all(v == 0 for v in pair[1:]):
                        ok = 1
                    elif all(v == 0 for v in pair[: p - 2]) and gcd(pair[p - 2], p) == 1:
                        ok = 2
                    if ok is not None:
                        c = [0] * rank
                        for j, cv in zip(support, coeffs):
                            c[j] = cv
                        witness = x.lattice.vector(c)
                        return H1Certificate(
                            verdict="trivial",
                            condition=ok,
                            witness=witness,
                            pairings=pair,
                            searched_bound=bound,
                            searched_support=max_support,
                        )
    return H1Certificate(
        verdict="inconclusive",
        condition=None,
        witness=None,
        pairings=None,
        searched_bound=bound,
        searched_support=max_support,
    )


def parity_and_homeo_type(
    x: AmbientManifoldData,
    cfg: CpConfiguration,
    h1: H1Certificate,
) -> tuple[ParityReport, str | None]:
    """Decide oddness of the blowdown's form and, if possible, its homeo type.

    Odd is certified either by signature (mod 16) or by an odd-square class
    orthogonal to the configuration. For the second route it is enough to
    scan a basis of the orthogonal complement: in a diagonal ambient basis,
    (sum x_i w_i)^2 = sum x_i w_i^2 (mod 2), so the complement is even
    exactly when every basis square is even, and the scan is complete.

    The type is pinned down only from: ambient simply connected, h1 certified
    trivial, b2+ = 1, odd form. Then the blowdown is homeomorphic to
    CP^2 # k CPbar^2 with k the remaining negative rank.
    """
    inv = blowdown_invariants(x, cfg)
    if not x.simply_connected or h1.verdict != "trivial":
        return ParityReport("inconclusive", None, None, None), None
    if inv.signature % 16 != 0:
        report = ParityReport("odd", "signature-mod-16", None, None)
    else:
        report = None
        for w in orthogonal_complement_basis(list(cfg.classes)):
            sq = w.square()
            if sq % 2 != 0:
                report = ParityReport("odd", "odd-square-orthogonal-vector", w, sq)
                break
        if report is None:
            return ParityReport("even-possible", None, None, None), None
    if inv.b2_minus == 0:
        return report, "CP^2"
    return report, f"CP^2 # {inv.b2_minus} CPbar^2"


def handle_counts_after_blowdown(h2: int, h3: int) -> tuple[int, int, int, int, int]:
    """Handle tuple of the blown-down manifold from the complement's counts.

    A decomposition of the complement with h2 two-handles and h3
    three-handles closes up to (1, 0, h2 + 1, h3, 1) after the ball is glued
    in. h2 = 0 is allowed (single-two-handle outcomes).
    """
    if h2 < 0 or h3 < 0:
        raise DomainError(f"handle counts must be nonnegative, got h2={h2}, h3={h3}")
    return (1, 0, h2 + 1, h3, 1)


@dataclass(frozen=True)
class BlowdownReport:
    """Full outcome bundle for one blowdown, as emitted by the CLI."""

    invariants: BlowdownInvariants
    h1: H1Certificate
    parity: ParityReport
    homeo_type: str | None
    handle_counts: tuple[int, int, int, int, int] | None

    def to_json(self) -> dict:
        return {
            "invariants": self.invariants.to_json(),
            "h1": self.h1.to_json(),
            "parity": self.parity.to_json(),
            "homeo_type": self.homeo_type,
            "handle_counts": None if self.handle_counts is None else list(self.handle_counts),
        }


def full_blowdown_report(
    x: AmbientManifoldData,
    cfg: CpConfiguration,
    delta: ClassVector | None = None,
    bound: int = 3,
    handle_data: tuple[int, int] | Sequence[int] | None = None,
) -> BlowdownReport:
    """Run the whole certificate pipeline for one configuration."""
    inv = blowdown_invariants(x, cfg)
    h1 = h1_certificate(x, cfg, delta=delta, bound=bound)
    parity, homeo = parity_and_homeo_type(x, cfg, h1)
    counts = None
    if handle_data is not None:
        if len(handle_data) == 2:
            counts = handle_counts_after_blowdown(int(handle_data[0]), int(handle_data[1]))
        elif len(handle_data) == 5:
            counts = tuple(int(v) for v in handle_data)
        else:
            raise DomainError("handle data must be (h2, h3) or a full 5-tuple")
    return BlowdownReport(
        invariants=inv,
        h1=h1,
        parity=parity,
        homeo_type=homeo,
        handle_counts=counts,
    )
