"""Linear chain configurations C_p and their verification.

A C_p configuration is an ordered tuple of p-1 classes u_1, ..., u_{p-1} whose
Gram matrix is the negative-definite tridiagonal

    diag(-2, ..., -2, -(p+2))  with +1 on the off-diagonals,

long class last. Its boundary is the lens space L(p^2, p-1), whose surgery
weights are the negative continued fraction of p^2/(p-1): [p+2, 2, ..., 2]
(p-2 twos). The weight list reads from the long class inward, i.e. it is the
reversal of the class order used here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    ArityError,
    DomainError,
    InvalidConfigurationError,
    LatticeMismatchError,
)
from .lattice import AmbientLattice, ClassVector, pairing


@dataclass(frozen=True)
class ChainViolation:
    """First Gram defect found, indices 1-based in class order."""

    kind: str                 # "square" | "consecutive_pairing" | "distant_pairing"
    indices: tuple[int, ...]
    expected: int
    actual: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass(frozen=True)
class ChainReport:
    """Outcome of verifying candidate classes against the C_p Gram matrix."""

    p: int
    ok: bool
    violation: ChainViolation | None
    squares: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ok": self.ok,
            "violation": None if self.violation is None else self.violation.to_json(),
            "squares": list(self.squares),
        }


def expected_square(i: int, p: int) -> int:
    """Required self-intersection of u_i: -2 for the body, -(p+2) for the last."""
    return -(p + 2) if i == p - 1 else -2


def verify_cp_configuration(candidate: Sequence[ClassVector], p: int) -> ChainReport:
    """Check candidate classes against the C_p Gram matrix.

    Scan order is fixed so the reported violation is deterministic: squares
    in class order, then consecutive pairings, then distant pairs in
    lexicographic order. Only the first violation is reported.
    """
    if p < 2:
        raise DomainError(f"need p >= 2, got p = {p}")
    if len(candidate) != p - 1:
        raise ArityError(f"C_{p} needs exactly {p - 1} classes, got {len(candidate)}")
    for c in candidate[1:]:
        if c.lattice != candidate[0].lattice:
            raise LatticeMismatchError("candidate classes live in different lattices")

    squares = tuple(u.square() for u in candidate)
    violation = None
    for i, sq in enumerate(squares, 1):
        want = expected_square(i, p)
        if sq != want:
            violation = ChainViolation("square", (i,), want, sq)
            break
    if violation is None:
        for i in range(1, p - 1):
            got = pairing(candidate[i - 1], candidate[i])
            if got != 1:
                violation = ChainViolation("consecutive_pairing", (i, i + 1), 1, got)
                break
    if violation is None:
        for i in range(1, p):
            for j in range(i + 2, p):
                got = pairing(candidate[i - 1], candidate[j - 1])
                if got != 0:
                    violation = ChainViolation("distant_pairing", (i, j), 0, got)
                    break
            if violation is not None:
                break
    return ChainReport(p=p, ok=violation is None, violation=violation, squares=squares)


@dataclass(frozen=True)
class CpConfiguration:
    """A verified C_p configuration; construction re-checks the Gram matrix."""

    p: int
    classes: tuple[ClassVector, ...]

    def __post_init__(self):
        report = verify_cp_configuration(self.classes, self.p)
        if not report.ok:
            raise InvalidConfigurationError(report)

    @property
    def lattice(self) -> AmbientLattice:
        return self.classes[0].lattice

    @property
    def rank(self) -> int:
        return self.p - 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.lattice.n,
            "classes": [u.to_json() for u in self.classes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CpConfiguration":
        p = int(data["p"])
        n = int(data["n"])
        lat = AmbientLattice(n)
        classes = tuple(lat.vector(row) for row in data["classes"])
        return cls(p=p, classes=classes)

    @classmethod
    def load(cls, path) -> "CpConfiguration":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _trusted_configuration(p: int, classes: tuple[ClassVector, ...]) -> CpConfiguration:
    """Construct a CpConfiguration without re-running the Gram check.

    Only for callers that have already established the Gram matrix by other
    means (the bounded search re-derives every entry from raw coefficients
    before calling this). Everything else should use the normal constructor.
    """
    cfg = object.__new__(CpConfiguration)
    object.__setattr__(cfg, "p", p)
    object.__setattr__(cfg, "classes", classes)
    return cfg


def intersection_matrix(classes: Sequence[ClassVector]) -> list[list[int]]:
    """Gram matrix of the given classes under the ambient pairing."""
    return [[pairing(x, y) for y in classes] for x in classes]


def lens_space_cf(p: int) -> list[int]:
    """Negative continued fraction of p^2/(p-1): the surgery weights of the boundary.

    Computed by the standard recursion (x, y) -> (y, ceil(x/y)*y - x); for
    this family the result is [p+2, 2, ..., 2] with p-2 twos.
    """
    if p < 2:
        raise DomainError(f"need p >= 2, got p = {p}")
    num, den = p * p, p - 1
    out = []
    while den:
        q = -(-num // den)
        out.append(q)
        num, den = den, q * den - num
    return out


def evaluate_neg_cf(terms: Sequence[int]) -> Fraction:
    """Value of [a_1, a_2, ...] = a_1 - 1/(a_2 - 1/(...)). Inverse of lens_space_cf."""
    if not terms:
        raise DomainError("empty continued fraction")
    val = Fraction(terms[-1])
    for t in reversed(terms[:-1]):
        if val == 0:
            raise DomainError("continued fraction hits a zero tail")
        val = t - 1 / val
    return val


def standard_configuration(p: int, n: int | None = None) -> CpConfiguration:
    """The minimal model C_p inside the diagonal lattice.

    Body u_i = e_i - e_{i+1} (i = 1..p-2) and long class
    e_1 + ... + e_{p-2} + 2 e_{p-1}, which fit in any ambient with n >= p-1.
    Useful as a synthetic test bed at every p.
    """
    if p < 2:
        raise DomainError(f"need p >= 2, got p = {p}")
    if n is None:
        n = p - 1
    if n < p - 1:
        raise DomainError(f"need n >= p-1 = {p - 1} to fit the chain, got n = {n}")
    lat = AmbientLattice(n)
    classes = [lat.e(i) - lat.e(i + 1) for i in range(1, p - 1)]
    tail = lat.zero()
    for j in range(1, p - 1):
        tail = tail + lat.e(j)
    tail = tail + 2 * lat.e(p - 1)
    classes.append(tail)
    return CpConfiguration(p=p, classes=tuple(classes))
