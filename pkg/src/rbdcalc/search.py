"""Bounded enumeration of chain configurations inside a coefficient box.

A template fixes the ambient size n, the chain index p, the body shape, and
per-coordinate absolute bounds for the long class (h first). Bodies are
difference classes e_x - e_y on distinct indices; orthogonality against the
body forces most tail coordinates into a single run value t, the top index
into t + 1, and the h coefficient is solved from the square equation rather
than enumerated. Only genuinely free coordinates are walked, with a pruning
step that discards a partial assignment only when no completion can reach a
feasible h^2, so the enumeration returns exactly the box solutions.

Everything is deterministic: placements, coordinate order, and value order
are fixed, and results are sorted by their class coefficient tuples, so a
parallel run merges to the same output as a sequential one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt, perm
from multiprocessing import Pool
from typing import Iterable, Sequence

from .chains import CpConfiguration, _trusted_configuration, verify_cp_configuration
from .errors import ConsistencyError, DomainError, SearchCapExceeded, TemplateError
from .lattice import AmbientLattice, ClassVector

DEFAULT_CAP = 10_000_000

BODY_SHAPES = ("consecutive-differences", "free-pairs")


@dataclass(frozen=True)
class SearchTemplate:
    """Box description for a bounded configuration search."""

    n: int
    p: int
    tail_bounds: tuple[int, ...]
    body_shape: str = "consecutive-differences"
    symmetry_reduction: bool = True

    def __post_init__(self):
        if self.p < 2:
            raise DomainError(f"need p >= 2, got p = {self.p}")
        if self.n < 1:
            raise DomainError(f"need n >= 1, got n = {self.n}")
        if self.body_shape not in BODY_SHAPES:
            raise DomainError(f"unknown body shape {self.body_shape!r}")
        if len(self.tail_bounds) != self.n + 1:
            raise DomainError(
                f"need {self.n + 1} bounds (h first), got {len(self.tail_bounds)}"
            )
        if any(b < 0 for b in self.tail_bounds):
            raise DomainError("bounds must be nonnegative")
        if self.p - 1 > self.n:
            raise TemplateError(
                f"chain does not fit: rank p - 1 = {self.p - 1} exceeds the "
                f"negative rank n = {self.n}"
            )

    @classmethod
    def uniform(
        cls,
        n: int,
        p: int,
        bound: int,
        body_shape: str = "consecutive-differences",
        symmetry_reduction: bool = True,
    ) -> "SearchTemplate":
        return cls(
            n=n,
            p=p,
            tail_bounds=(bound,) * (n + 1),
            body_shape=body_shape,
            symmetry_reduction=symmetry_reduction,
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "tail_bounds": list(self.tail_bounds),
            "body_shape": self.body_shape,
            "symmetry_reduction": self.symmetry_reduction,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchTemplate":
        bounds = data["tail_bounds"]
        n = int(data["n"])
        if isinstance(bounds, int):
            bounds = (bounds,) * (n + 1)
        else:
            bounds = tuple(int(b) for b in bounds)
        return cls(
            n=n,
            p=int(data["p"]),
            tail_bounds=bounds,
            body_shape=data.get("body_shape", "consecutive-differences"),
            symmetry_reduction=bool(data.get("symmetry_reduction", True)),
        )

    @classmethod
    def load(cls, path) -> "SearchTemplate":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _placements(template: SearchTemplate) -> list[tuple[int, ...]]:
    """Body index sequences x_1..x_{p-1}; body_i = e_{x_i} - e_{x_{i+1}}.

    With symmetry reduction, one canonical ascending run anchored at the top
    index. Without it: all ascending runs for the consecutive shape, all
    injective sequences for free-pairs (use the estimate before walking
    these). p = 2 has an empty body and a single empty placement.
    """
    n, p = template.n, template.p
    if p == 2:
        return [()]
    anchored = tuple(range(n - p + 2, n + 1))
    if template.symmetry_reduction:
        return [anchored]
    if template.body_shape == "consecutive-differences":
        return [tuple(range(s, s + p - 1)) for s in range(1, n - p + 3)]
    out = []
    def extend(seq):
        if len(seq) == p - 1:
            out.append(tuple(seq))
            return
        for i in range(1, n + 1):
            if i not in seq:
                seq.append(i)
                extend(seq)
                seq.pop()
    extend([])
    return out


def _placement_geometry(template: SearchTemplate, placement: tuple[int, ...]):
    """(free_indices, run_indices, end_index, t_range) for one placement."""
    n, p = template.n, template.p
    bounds = template.tail_bounds
    if p == 2:
        return tuple(range(1, n + 1)), (), None, (None,)
    run = placement[: p - 2]
    end = placement[p - 2]
    free = tuple(i for i in range(1, n + 1) if i not in set(placement))
    run_cap = min(bounds[i] for i in run)
    lo = max(-run_cap, -bounds[end] - 1)
    hi = min(run_cap, bounds[end] - 1)
    return free, run, end, tuple(range(lo, hi + 1))


def _t_part(p: int, t: int | None) -> int:
    if t is None:
        return 0
    return (p - 2) * t * t + (t + 1) * (t + 1)


def _solve_h(template: SearchTemplate, s: int, tpart: int) -> list[int]:
    """Values of the h coefficient with c0^2 = s + tpart - (p + 2), in the box."""
    rhs = s + tpart - (template.p + 2)
    if rhs < 0:
        return []
    r = isqrt(rhs)
    if r * r != rhs or r > template.tail_bounds[0]:
        return []
    return [r] if r == 0 else [r, -r]


def _enumerate_placement(
    template: SearchTemplate,
    placement: tuple[int, ...],
    first_slice: Sequence[int] | None = None,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (placement, tail coefficients) solutions for one body placement.

    first_slice restricts the first enumerated coordinate (parallel workers
    each take a slice); None walks the full range.
    """
    n, p = template.n, template.p
    bounds = template.tail_bounds
    free, run, end, t_range = _placement_geometry(template, placement)
    if not t_range:
        return []
    tmin = min(_t_part(p, t) for t in t_range)
    budget = bounds[0] ** 2 + (p + 2)   # s + tpart may not exceed this
    out = []
    coeffs = [0] * (n + 1)

    def leaf(s: int) -> None:
        for t in t_range:
            tpart = _t_part(p, t)
            for c0 in _solve_h(template, s, tpart):
                tail = list(coeffs)
                tail[0] = c0
                if t is not None:
                    for i in run:
                        tail[i] = t
                    tail[end] = t + 1
                out.append((placement, tuple(tail)))

    def walk(idx: int, s: int) -> None:
        if s + tmin > budget:
            return
        if idx == len(free):
            leaf(s)
            return
        coord = free[idx]
        lo = -bounds[coord]
        if idx == 0 and first_slice is not None:
            values: Iterable[int] = first_slice
        else:
            values = range(lo, bounds[coord] + 1)
        for c in values:
            coeffs[coord] = c
            walk(idx + 1, s + c * c)
        coeffs[coord] = 0

    if not free:
        if first_slice is None or 0 in first_slice:
            leaf(0)
    else:
        walk(0, 0)
    return out


def estimate_search_space(template: SearchTemplate) -> int:
    """Assignments the enumerator will examine (h is solved, not counted).

    Exact for reduced and consecutive shapes. For unreduced free-pairs the
    per-placement boxes are not all equal, so the result is the upper bound
    (number of placements) x (largest single-placement box).
    """
    n, p = template.n, template.p
    bounds = template.tail_bounds

    def box(placement: tuple[int, ...]) -> int:
        free, _run, _end, t_range = _placement_geometry(template, placement)
        total = 1
        for i in free:
            total *= 2 * bounds[i] + 1
        return total * len(t_range) if p > 2 else total

    if template.body_shape == "free-pairs" and not template.symmetry_reduction and p > 2:
        count = perm(n, p - 1)
        widest = sorted(range(1, n + 1), key=lambda i: bounds[i])[: p - 1]
        return count * box(tuple(widest))
    return sum(box(pl) for pl in _placements(template))


def _raw_gram_ok(p: int, placement: tuple[int, ...], tail: tuple[int, ...]) -> bool:
    """Re-derive every Gram entry from the raw solution data.

    Deliberately independent of the enumerator's algebra: body entries come
    from index coincidences of e_{x_i} - e_{x_{i+1}}, tail entries from plain
    coefficient reads, so a bug in the run/end propagation or the h solver
    cannot survive this comparison.
    """
    if tail[0] * tail[0] - sum(c * c for c in tail[1:]) != -(p + 2):
        return False
    m = p - 2
    for i in range(m):
        a, b = placement[i], placement[i + 1]
        if a == b:
            return False
        if -tail[a] + tail[b] != (1 if i == m - 1 else 0):
            return False
        for j in range(i + 1, m):
            c, d = placement[j], placement[j + 1]
            got = -(a == c) + (a == d) + (b == c) - (b == d)
            if got != (1 if j == i + 1 else 0):
                return False
    return True


def _body_coeff_rows(
    rank: int, p: int, placement: tuple[int, ...]
) -> tuple[tuple[int, ...], ...]:
    rows = []
    for i in range(p - 2):
        row = [0] * rank
        row[placement[i]] = 1
        row[placement[i + 1]] = -1
        rows.append(tuple(row))
    return tuple(rows)


def _worker(args):
    template_json, placement, first_slice = args
    template = SearchTemplate.from_json(template_json)
    return _enumerate_placement(template, placement, first_slice)


def search(
    template: SearchTemplate,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CpConfiguration]:
    """All chain configurations matching the template inside its box.

    Raises SearchCapExceeded before enumerating anything when the estimate
    exceeds the cap. Every hit is re-checked against the full Gram matrix by
    a second derivation from raw coefficients before being packaged, so an
    enumerator bug cannot leak an invalid chain into the result. Output is
    sorted by class coefficients; jobs > 1 splits the first enumerated
    coordinate over a process pool and merges to the identical list.
    """
    if cap < 1:
        raise DomainError(f"cap must be positive, got {cap}")
    if jobs < 1:
        raise DomainError(f"jobs must be positive, got {jobs}")
    estimate = estimate_search_space(template)
    if estimate > cap:
        raise SearchCapExceeded(estimate, cap)

    raw: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    if jobs == 1:
        for placement in _placements(template):
            raw.extend(_enumerate_placement(template, placement))
    else:
        tasks = []
        tj = template.to_json()
        for placement in _placements(template):
            free, _run, _end, _tr = _placement_geometry(template, placement)
            if free:
                first = free[0]
                b = template.tail_bounds[first]
                values = list(range(-b, b + 1))
                chunk = max(1, (len(values) + jobs - 1) // jobs)
                for off in range(0, len(values), chunk):
                    tasks.append((tj, placement, values[off : off + chunk]))
            else:
                tasks.append((tj, placement, None))
        with Pool(processes=jobs) as pool:
            for part in pool.map(_worker, tasks):
                raw.extend(part)

    for pl, tail in raw:
        if not _raw_gram_ok(template.p, pl, tail):
            raise ConsistencyError(
                f"enumerated solution fails the Gram re-check: "
                f"placement {pl}, tail {tail}"
            )

    lat = AmbientLattice(template.n)
    keys = {
        pl: _body_coeff_rows(lat.rank, template.p, pl) for pl in {pl for pl, _ in raw}
    }
    raw.sort(key=lambda item: keys[item[0]] + (item[1],))
    bodies = {
        pl: tuple(ClassVector(lat, row) for row in rows) for pl, rows in keys.items()
    }
    return [
        _trusted_configuration(template.p, bodies[pl] + (ClassVector(lat, tail),))
        for pl, tail in raw
    ]


@dataclass(frozen=True)
class FamilySearchReport:
    """Outcome of one open-range probe, labeled as homology-only evidence."""

    kind: str
    a: int
    template: SearchTemplate
    configurations: tuple[CpConfiguration, ...]
    label: str = "homological only; existence of an embedded configuration is not certified"

    @property
    def count(self) -> int:
        return len(self.configurations)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "a": self.a,
            "label": self.label,
            "template": self.template.to_json(),
            "count": self.count,
            "configurations": [c.to_json() for c in self.configurations],
        }


FAMILY_QUESTION_KINDS = ("3-chain", "4-chain")

# documented probe ranges for the two question families
FAMILY_QUESTION_RANGE = {"3-chain": range(3, 12), "4-chain": range(3, 7)}


def family_question_dimensions(a: int, kind: str) -> tuple[int, int]:
    """(n, p) of the question template at parameter a."""
    if kind not in FAMILY_QUESTION_KINDS:
        raise DomainError(f"kind must be one of {FAMILY_QUESTION_KINDS}, got {kind!r}")
    if kind == "3-chain":
        return 3 * a + 2, 4 * a - 9
    return 4 * a + 2, 6 * a - 11


def family_question_template(a: int, kind: str) -> SearchTemplate:
    """Default shaped box for the question at parameter a.

    Bounds follow the published tail shapes: h up to a + 3, the first
    exceptional coordinate up to a - 1, middle coordinates up to 2, the top
    coordinate up to 1. Raises TemplateError when the chain cannot fit the
    ambient rank at all (a >= 13 for the 3-chain).
    """
    if a < 3:
        raise DomainError(f"question templates need a >= 3, got a = {a}")
    n, p = family_question_dimensions(a, kind)
    bounds = [a + 3, a - 1] + [2] * (n - 2) + [1]
    return SearchTemplate(n=n, p=p, tail_bounds=tuple(bounds))


def search_family_questions(
    a: int,
    kind: str,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> FamilySearchReport:
    """Probe one open-range question with the default shaped box.

    Every hit is passed through the public chain verifier once more before
    the report is assembled; a failure there is an internal inconsistency,
    not a user error.
    """
    if kind not in FAMILY_QUESTION_KINDS:
        raise DomainError(f"kind must be one of {FAMILY_QUESTION_KINDS}, got {kind!r}")
    if a not in FAMILY_QUESTION_RANGE[kind]:
        r = FAMILY_QUESTION_RANGE[kind]
        raise DomainError(
            f"{kind} questions are posed for a in {r.start}..{r.stop - 1}, got a = {a}"
        )
    template = family_question_template(a, kind)
    hits = search(template, cap=cap, jobs=jobs)
    for cfg in hits:
        check = verify_cp_configuration(cfg.classes, cfg.p)
        if not check.ok:
            raise ConsistencyError(
                f"search hit fails independent re-verification: {check.violation}"
            )
    return FamilySearchReport(
        kind=kind,
        a=a,
        template=template,
        configurations=tuple(hits),
    )
