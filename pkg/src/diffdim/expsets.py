"""Exponent sets in N^m and their Kolchin polynomials.

An exponent set stands for the upward closure of its generators under the
componentwise order.  The points *outside* the closure of order at most s
are counted by the volume function, and for large s that count agrees with
a numerical polynomial, computed here by an exact recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ParseError, ResourceLimit
from .numpoly import NumericalPolynomial

DEFAULT_ENUMERATION_CAP = 10**7

ExponentVector = tuple[int, ...]


def order_of(xi: ExponentVector) -> int:
    """Total order of an exponent vector: the sum of its entries."""
    return sum(xi)


def dominates(a: ExponentVector, b: ExponentVector) -> bool:
    return all(x >= y for x, y in zip(a, b))


def _check_vector(xi, m) -> ExponentVector:
    xi = tuple(xi)
    if len(xi) != m:
        raise ValueError(f"exponent vector {xi} does not have {m} entries")
    for e in xi:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            raise ValueError(f"exponent entries must be naturals, got {xi}")
    return xi


def _minimalize(gens: tuple[ExponentVector, ...]) -> tuple[ExponentVector, ...]:
    out = []
    for g in sorted(set(gens)):
        if not any(dominates(g, h) for h in out):
            out = [h for h in out if not dominates(h, g)] + [g]
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class ExponentSet:
    """Finitely many generators of an upward-closed subset of N^m.

    Generators are kept as given; equality and hashing go through the
    canonical antichain of minimal elements, so two sets compare equal
    exactly when they generate the same closure.
    """

    m: int
    generators: tuple[ExponentVector, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("ambient dimension must be at least 1")
        gens = tuple(_check_vector(g, self.m) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_antichain", _minimalize(gens))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentSet):
            return NotImplemented
        return self.m == other.m and self._antichain == other._antichain

    def __hash__(self) -> int:
        return hash((self.m, self._antichain))


def minimal_elements(exp_set: ExponentSet) -> ExponentSet:
    """Canonical form: the antichain of minimal generators, sorted."""
    return ExponentSet(exp_set.m, exp_set._antichain)


def _lattice_points(m: int, s: int) -> np.ndarray:
    """All vectors in N^m with entry sum <= s, one per row."""
    pts = np.arange(s + 1, dtype=np.int64).reshape(-1, 1)
    for _ in range(m - 1):
        sums = pts.sum(axis=1)
        order = np.argsort(sums, kind="stable")
        pts = pts[order]
        sums = sums[order]
        blocks = []
        for k in range(s + 1):
            take = int(np.searchsorted(sums, s - k, side="right"))
            blocks.append(
                np.hstack([np.full((take, 1), k, dtype=np.int64), pts[:take]])
            )
        pts = np.vstack(blocks)
    return pts


def volume(exp_set: ExponentSet, s: int, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Count points of order <= s lying outside the upward closure.

    Enumerates every candidate point, so the candidate count binom(s+m, m)
    is checked against ``enumeration_cap`` first.
    """
    if s < 0:
        raise ValueError("order cutoff must be non-negative")
    m = exp_set.m
    candidates = comb(s + m, m)
    if candidates > enumeration_cap:
        raise ResourceLimit(
            f"volume enumeration needs {candidates} candidates "
            f"(cap {enumeration_cap})"
        )
    pts = _lattice_points(m, s)
    outside = np.ones(len(pts), dtype=bool)
    for g in exp_set.generators:
        outside &= ~(pts >= np.asarray(g, dtype=np.int64)).all(axis=1)
    return int(outside.sum())


def volume_ie(exp_set: ExponentSet, s: int) -> int:
    """The same count by inclusion-exclusion over joins of minimal elements.

    No enumeration of lattice points; instead a sum over all subsets of the
    minimal antichain, so this is exponential in the antichain size and
    meant as an independent cross-check.
    """
    if s < 0:
        raise ValueError("order cutoff must be non-negative")
    m = exp_set.m
    gens = exp_set._antichain
    total = 0
    for mask in range(1 << len(gens)):
        join = (0,) * m
        bit = mask
        idx = 0
        sign = 1
        while bit:
            if bit & 1:
                join = tuple(max(a, b) for a, b in zip(join, gens[idx]))
                sign = -sign
            bit >>= 1
            idx += 1
        d = sum(join)
        if s >= d:
            total += sign * comb(s - d + m, m)
    return total


_DIMENSION_CACHE: dict[tuple[int, tuple[ExponentVector, ...]], NumericalPolynomial] = {}


def dimension_polynomial(exp_set: ExponentSet) -> NumericalPolynomial:
    """The Kolchin polynomial of the complement of the closure.

    For every s at or beyond stability_bound(exp_set), evaluating the result
    at s gives volume(exp_set, s).  Computed by recursion on a pivot
    coordinate: splitting on whether that coordinate is zero reduces to one
    set in fewer variables and one with a smaller generator, and the second
    branch enters shifted by one.
    """
    return _dimension_rec(exp_set.m, exp_set._antichain)


def _dimension_rec(m: int, gens: tuple[ExponentVector, ...]) -> NumericalPolynomial:
    key = (m, gens)
    cached = _DIMENSION_CACHE.get(key)
    if cached is not None:
        return cached
    if not gens:
        result = NumericalPolynomial.full(m)
    elif (0,) * m in gens:
        result = NumericalPolynomial.zero(m)
    elif m == 1:
        # antichain in N^1 is a single positive generator (v,)
        result = NumericalPolynomial(1, (0, gens[0][0]))
    else:
        pivot_gen = gens[0]  # lexicographically least minimal element
        j = max(i for i, e in enumerate(pivot_gen) if e != 0)
        section = _minimalize(
            tuple(g[:j] + g[j + 1:] for g in gens if g[j] == 0)
        )
        decremented = _minimalize(
            tuple(g[:j] + (max(g[j] - 1, 0),) + g[j + 1:] for g in gens)
        )
        p_section = _dimension_rec(m - 1, section).padded(m)
        p_decremented = _dimension_rec(m, decremented)
        result = p_section + p_decremented.shift(1)
    _DIMENSION_CACHE[key] = result
    return result


def stability_bound(exp_set: ExponentSet) -> int:
    """A cutoff beyond which the volume agrees with the Kolchin polynomial.

    Returns max(0, m*(D - 1)) where D sums the orders of the minimal
    generators.  Not tight, but cheap and valid.
    """
    d = sum(order_of(g) for g in exp_set._antichain)
    return max(0, exp_set.m * (d - 1))


def parse_exponent_set(text: str, m: int | None = None) -> ExponentSet:
    """Read one generator per line, entries comma-separated.

    Blank lines and '#' comments are skipped.  When ``m`` is given every
    row must have that many entries; otherwise the width of the first row
    fixes it.
    """
    gens = []
    width = m
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        try:
            entries = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(f"bad exponent entry in {line!r}", line=lineno) from None
        if any(e < 0 for e in entries):
            raise ParseError("exponent entries must be non-negative", line=lineno)
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise ParseError(
                f"expected {width} entries, got {len(entries)}", line=lineno
            )
        gens.append(entries)
    if width is None:
        raise ParseError("no generators and no ambient dimension given")
    return ExponentSet(width, tuple(gens))
