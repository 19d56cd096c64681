"""Linear differential systems with constant rational coefficients.

A system in n unknown functions of m independent variables is a finite set
of homogeneous linear equations in derivative symbols.  Two independent
routes to its Kolchin polynomial live here: a Groebner basis of the
generated submodule (leaders feed the combinatorial recursion) and exact
rank computations on prolongation matrices followed by interpolation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm

from .diffrank import (
    DifferentialMonomial,
    LeaderProfile,
    kolchin_from_leaders,
)
from .errors import AmbientMismatch, ParseError, ResourceLimit
from .expsets import ExponentSet, dimension_polynomial, stability_bound, volume_ie
from .numpoly import NumericalPolynomial, compare_eventual, interpolate

DEFAULT_MATRIX_CELL_CAP = 10**8
DEFAULT_SEARCH_SPAN = 100

ExponentVector = tuple[int, ...]
TermKey = tuple[ExponentVector, int]


def _rank_of(key: TermKey) -> tuple[int, ...]:
    xi, comp = key
    return (sum(xi), comp) + xi


@dataclass(frozen=True)
class LinearEquation:
    """Terms (coefficient, monomial), sorted by descending rank."""

    terms: tuple[tuple[Fraction, DifferentialMonomial], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("equation needs at least one term")
        fixed = []
        seen = set()
        width = None
        for coeff, mono in self.terms:
            coeff = Fraction(coeff)
            if coeff == 0:
                raise ValueError("zero coefficient in equation")
            if width is None:
                width = mono.m
            elif mono.m != width:
                raise AmbientMismatch("mixed derivation counts in one equation")
            key = (mono.exponents, mono.var_index)
            if key in seen:
                raise ValueError(f"duplicate monomial {key} in equation")
            seen.add(key)
            fixed.append((coeff, mono))
        fixed.sort(key=lambda t: _rank_of((t[1].exponents, t[1].var_index)), reverse=True)
        object.__setattr__(self, "terms", tuple(fixed))

    @classmethod
    def from_terms(cls, mapping: dict[TermKey, Fraction]) -> "LinearEquation":
        return cls(
            tuple(
                (c, DifferentialMonomial(xi, i)) for (xi, i), c in mapping.items()
            )
        )

    @property
    def leader(self) -> DifferentialMonomial:
        return self.terms[0][1]

    @property
    def order(self) -> int:
        return self.leader.order

    def as_dict(self) -> dict[TermKey, Fraction]:
        return {(m.exponents, m.var_index): c for c, m in self.terms}


@dataclass(frozen=True)
class LinearDiffSystem:
    """A finite system over m derivations and n unknowns."""

    m: int
    n: int
    equations: tuple[LinearEquation, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("need at least one derivation and one unknown")
        eqs = tuple(self.equations)
        for eq in eqs:
            for _, mono in eq.terms:
                if mono.m != self.m:
                    raise AmbientMismatch(
                        f"monomial over {mono.m} derivations in a system over {self.m}"
                    )
                if mono.var_index > self.n:
                    raise ValueError(
                        f"unknown x{mono.var_index} outside 1..{self.n}"
                    )
        object.__setattr__(self, "equations", eqs)

    @property
    def order(self) -> int:
        return max((eq.order for eq in self.equations), default=0)


# ---------------------------------------------------------------------------
# parsing


def parse_system(text: str) -> LinearDiffSystem:
    """Parse the plain text system format.

    Header lines 'm = <int>' and 'n = <int>' must appear before the first
    equation.  Each equation line reads 'eq: <term> (+|- <term>)*' where a
    term is an optional rational coefficient 'p' or 'p/q' joined with '*'
    to a monomial 'd[u1,...,um]x<i>' or its order-zero shorthand 'x<i>'.
    Blank lines and '#' comments are ignored.
    """
    m = n = None
    equations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith(("m", "n")) and "=" in stripped and not stripped.startswith("eq"):
            name, _, value = stripped.partition("=")
            name = name.strip()
            if name not in ("m", "n"):
                raise ParseError(f"unknown header {name!r}", line=lineno)
            try:
                parsed = int(value.strip())
            except ValueError:
                raise ParseError(f"bad integer for {name}", line=lineno) from None
            if parsed < 1:
                raise ParseError(f"{name} must be at least 1", line=lineno)
            if name == "m":
                if m is not None:
                    raise ParseError("duplicate m header", line=lineno)
                m = parsed
            else:
                if n is not None:
                    raise ParseError("duplicate n header", line=lineno)
                n = parsed
            continue
        if stripped.startswith("eq"):
            rest = stripped[2:].lstrip()
            if not rest.startswith(":"):
                raise ParseError("expected ':' after 'eq'", line=lineno)
            if m is None or n is None:
                raise ParseError("m and n must be declared before equations", line=lineno)
            body_offset = line.index(":", line.find("eq")) + 1
            body = line[body_offset:]
            equations.append(_parse_equation(body, lineno, body_offset, m, n))
            continue
        raise ParseError(f"unrecognised line {stripped!r}", line=lineno)
    if m is None or n is None:
        raise ParseError("missing m or n header")
    return LinearDiffSystem(m, n, tuple(equations))


def _parse_equation(body: str, lineno: int, offset: int, m: int, n: int) -> LinearEquation:
    terms: dict[TermKey, Fraction] = {}
    i = 0

    def col(pos):
        return offset + pos + 1

    def skip_ws(pos):
        while pos < len(body) and body[pos].isspace():
            pos += 1
        return pos

    def scan_int(pos):
        start = pos
        while pos < len(body) and body[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a number", line=lineno, column=col(start))
        return int(body[start:pos]), pos

    i = skip_ws(i)
    if i >= len(body):
        raise ParseError("empty equation", line=lineno, column=col(i))
    first = True
    while i < len(body):
        sign = 1
        if body[i] in "+-":
            if body[i] == "-":
                sign = -1
            i = skip_ws(i + 1)
        elif not first:
            raise ParseError(
                f"expected '+' or '-', got {body[i]!r}", line=lineno, column=col(i)
            )
        coeff = Fraction(sign)
        if i < len(body) and body[i].isdigit():
            num_col = col(i)
            num, i = scan_int(i)
            den = 1
            if i < len(body) and body[i] == "/":
                num2, i = scan_int(i + 1)
                den = num2
                if den == 0:
                    raise ParseError("zero denominator", line=lineno, column=num_col)
            if num == 0:
                raise ParseError("zero coefficient", line=lineno, column=num_col)
            coeff *= Fraction(num, den)
            i = skip_ws(i)
            if i >= len(body) or body[i] != "*":
                raise ParseError(
                    "constant terms are not allowed; expected '*' and a monomial",
                    line=lineno,
                    column=col(i),
                )
            i = skip_ws(i + 1)
        mono_col = col(i)
        if i < len(body) and body[i] == "d":
            if i + 1 >= len(body) or body[i + 1] != "[":
                raise ParseError("expected '[' after 'd'", line=lineno, column=col(i + 1))
            i += 2
            exps = []
            while True:
                e, i = scan_int(skip_ws(i))
                exps.append(e)
                i = skip_ws(i)
                if i < len(body) and body[i] == ",":
                    i += 1
                    continue
                if i < len(body) and body[i] == "]":
                    i += 1
                    break
                raise ParseError("expected ',' or ']'", line=lineno, column=col(i))
            exps = tuple(exps)
        elif i < len(body) and body[i] == "x":
            exps = (0,) * m
        else:
            raise ParseError("expected a monomial", line=lineno, column=col(i))
        if len(exps) != m:
            raise ParseError(
                f"exponent list has {len(exps)} entries, expected {m}",
                line=lineno,
                column=mono_col,
            )
        if i >= len(body) or body[i] != "x":
            raise ParseError("expected unknown 'x<i>'", line=lineno, column=col(i))
        idx, i = scan_int(i + 1)
        if not 1 <= idx <= n:
            raise ParseError(
                f"unknown x{idx} outside 1..{n}", line=lineno, column=mono_col
            )
        key = (exps, idx)
        if key in terms:
            raise ParseError(
                f"duplicate monomial in equation", line=lineno, column=mono_col
            )
        terms[key] = coeff
        first = False
        i = skip_ws(i)
    return LinearEquation.from_terms(terms)


# ---------------------------------------------------------------------------
# Groebner bases for submodules of the free module over the operator ring


def _shifted(elem: dict[TermKey, Fraction], theta: ExponentVector) -> dict[TermKey, Fraction]:
    return {
        (tuple(a + b for a, b in zip(xi, theta)), comp): c
        for (xi, comp), c in elem.items()
    }


def _normal_form(elem, rep, basis):
    """Fully reduce against (element, lead, rep) triples; exact arithmetic.

    ``rep`` bounds the prolongation level at which the element is available
    as a combination of the original equations; every reduction step lifts
    it by the reducer's availability, so the returned pair keeps the bound
    honest.
    """
    work = dict(elem)
    out = {}
    level = rep
    while work:
        key = max(work, key=_rank_of)
        coeff = work.pop(key)
        if coeff == 0:
            continue
        xi, comp = key
        hit = None
        for g, (gxi, gcomp), grep in basis:
            if gcomp == comp and all(a <= b for a, b in zip(gxi, xi)):
                hit = (g, (gxi, gcomp), grep)
                break
        if hit is None:
            out[key] = coeff
            continue
        g, glead, grep = hit
        shift = tuple(a - b for a, b in zip(xi, glead[0]))
        level = max(level, sum(shift) + grep)
        factor = coeff / g[glead]
        for gkey, gc in g.items():
            if gkey == glead:
                continue
            tkey = (tuple(a + b for a, b in zip(gkey[0], shift)), gkey[1])
            val = work.get(tkey, Fraction(0)) - factor * gc
            if val == 0:
                work.pop(tkey, None)
            else:
                work[tkey] = val
    return out, level


def _monic(elem):
    lead = max(elem, key=_rank_of)
    lc = elem[lead]
    if lc == 1:
        return elem, lead
    return {k: v / lc for k, v in elem.items()}, lead


def _confined(elem, comp) -> bool:
    return all(k[1] == comp for k in elem)


def _groebner_with_margin(system: LinearDiffSystem):
    """Reduced Groebner basis plus a certified prolongation margin.

    Buchberger completion under the orderly ranking.  S-pairs exist only
    between elements whose leaders involve the same unknown; a pair is
    skipped by the product criterion only when the leader exponents are
    disjoint and both elements involve no other unknown, which is the case
    that genuinely reduces to the one-unknown polynomial ring.

    Every element carries the prolongation level at which it is reachable
    from the original equations, so the returned margin makes the level
    s + margin prolongation span contain every basis prolongation of order
    up to s.
    """
    basis: list[tuple[dict, TermKey, int]] = []
    confined_flags: list[bool] = []

    def push(elem, rep):
        elem, lead = _monic(elem)
        basis.append((elem, lead, rep))
        confined_flags.append(_confined(elem, lead[1]))
        k = len(basis) - 1
        for j in range(k):
            if basis[j][1][1] == lead[1]:
                pairs.append((j, k))

    pairs: deque[tuple[int, int]] = deque()
    for eq in system.equations:
        nf, rep = _normal_form(eq.as_dict(), eq.order, basis)
        if nf:
            push(nf, rep)
    while pairs:
        a, b = pairs.popleft()
        (f, flead, frep), (g, glead, grep) = basis[a], basis[b]
        fxi, comp = flead
        gxi = glead[0]
        if (
            confined_flags[a]
            and confined_flags[b]
            and all(min(p, q) == 0 for p, q in zip(fxi, gxi))
        ):
            continue
        join = tuple(max(p, q) for p, q in zip(fxi, gxi))
        fshift = tuple(a2 - b2 for a2, b2 in zip(join, fxi))
        gshift = tuple(a2 - b2 for a2, b2 in zip(join, gxi))
        s_elem = _shifted(f, fshift)
        for key, val in _shifted(g, gshift).items():
            cur = s_elem.get(key, Fraction(0)) - val
            if cur == 0:
                s_elem.pop(key, None)
            else:
                s_elem[key] = cur
        s_rep = max(sum(fshift) + frep, sum(gshift) + grep)
        nf, rep = _normal_form(s_elem, s_rep, basis)
        if nf:
            push(nf, rep)

    # minimalise: drop any element whose lead another element's lead divides
    ordered = sorted(range(len(basis)), key=lambda k: _rank_of(basis[k][1]))
    kept: list[int] = []
    for k in ordered:
        xi, comp = basis[k][1]
        covered = any(
            basis[j][1][1] == comp
            and all(a <= b for a, b in zip(basis[j][1][0], xi))
            for j in kept
        )
        if not covered:
            kept.append(k)
    # tail-reduce each survivor against the others
    reduced = []
    margin = 0
    for k in kept:
        others = [basis[j] for j in kept if j != k]
        nf, rep = _normal_form(basis[k][0], basis[k][2], others)
        elem = _monic(nf)[0]
        order = _rank_of(max(elem, key=_rank_of))[0]
        margin = max(margin, order, rep - order)
        reduced.append(elem)
    reduced.sort(key=lambda e: _rank_of(max(e, key=_rank_of)), reverse=True)
    gb = LinearDiffSystem(
        system.m,
        system.n,
        tuple(LinearEquation.from_terms(e) for e in reduced),
    )
    return gb, margin


def module_groebner(system: LinearDiffSystem) -> LinearDiffSystem:
    """The reduced Groebner basis of the submodule the equations generate."""
    return _groebner_with_margin(system)[0]


def leader_profile(gb: LinearDiffSystem) -> LeaderProfile:
    """Leader exponents of a reduced basis, grouped by unknown."""
    buckets: list[list[ExponentVector]] = [[] for _ in range(gb.n)]
    for eq in gb.equations:
        lead = eq.leader
        buckets[lead.var_index - 1].append(lead.exponents)
    return LeaderProfile(
        gb.m, tuple(ExponentSet(gb.m, tuple(b)) for b in buckets)
    )


def kolchin_polynomial(system: LinearDiffSystem) -> NumericalPolynomial:
    """Kolchin polynomial via the Groebner route."""
    return kolchin_from_leaders(leader_profile(module_groebner(system)))


# ---------------------------------------------------------------------------
# prolongation matrices


def _exponents_upto(m: int, bound: int) -> list[ExponentVector]:
    if bound < 0:
        return []
    if m == 1:
        return [(k,) for k in range(bound + 1)]
    out = []
    for k in range(bound + 1):
        for rest in _exponents_upto(m - 1, bound - k):
            out.append((k,) + rest)
    return out


def _integer_rows(system: LinearDiffSystem, level: int, col_index) -> list[dict[int, int]]:
    rows = []
    for eq in system.equations:
        denominators = [c.denominator for c, _ in eq.terms]
        scale = lcm(*denominators) if denominators else 1
        int_terms = [
            (int(c * scale), mono.exponents, mono.var_index) for c, mono in eq.terms
        ]
        for theta in _exponents_upto(system.m, level - eq.order):
            row = {}
            for c, xi, comp in int_terms:
                shifted = tuple(a + b for a, b in zip(xi, theta))
                row[col_index[(shifted, comp)]] = c
            rows.append(row)
    return rows


def _pivot_columns(rows: list[dict[int, int]]) -> set[int]:
    """Column indices holding pivots; canonical whatever the row order.

    Fraction-free elimination on sparse integer rows: each incoming row is
    reduced by existing pivot rows via cross-multiplication, with a gcd
    division to keep entries small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                content = 0
                for v in row.values():
                    content = gcd(content, v)
                if content > 1:
                    row = {k: v // content for k, v in row.items()}
                pivots[c] = row
                break
            a, b = row[c], piv[c]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            merged = {k: ma * v for k, v in row.items()}
            for k, v in piv.items():
                merged[k] = merged.get(k, 0) - mb * v
            row = {k: v for k, v in merged.items() if v}
    return set(pivots)


def prolongation_dimension(
    system: LinearDiffSystem,
    s: int,
    margin: int,
    matrix_cell_cap: int = DEFAULT_MATRIX_CELL_CAP,
) -> int:
    """Dimension of the order <= s projection of the solution space cut to
    order s + margin.

    Columns are derivative symbols of order <= s + margin sorted by rank,
    highest first, so the columns of order exceeding s form a prefix and
    every pivot landing outside that prefix kills one low-order degree of
    freedom.  Rows are all prolongations theta of each equation with
    ord(theta) + ord(equation) <= s + margin.
    """
    if s < 0 or margin < 0:
        raise ValueError("level and margin must be non-negative")
    level = s + margin
    m, n = system.m, system.n
    columns = [
        (xi, comp)
        for xi in _exponents_upto(m, level)
        for comp in range(1, n + 1)
    ]
    columns.sort(key=_rank_of, reverse=True)
    col_index = {key: idx for idx, key in enumerate(columns)}
    low_count = n * comb(m + s, m)
    high_count = len(columns) - low_count
    rows = _integer_rows(system, level, col_index)
    cells = len(rows) * len(columns)
    if cells > matrix_cell_cap:
        raise ResourceLimit(
            f"prolongation matrix would hold {cells} cells "
            f"(cap {matrix_cell_cap})"
        )
    pivots = _pivot_columns(rows)
    pivots_low = sum(1 for p in pivots if p >= high_count)
    return low_count - pivots_low


def _counting_floor(profile: LeaderProfile) -> int:
    """The least level where every component count is already polynomial.

    The generic bound m*(D - 1) is sound but wildly conservative, so each
    component is walked downward from it while the inclusion-exclusion
    count still matches the component's polynomial.  Everything at or past
    the returned level counts polynomially.
    """
    floor = 0
    for exp_set in profile.variable_sets:
        bound = stability_bound(exp_set)
        omega = dimension_polynomial(exp_set)
        level = bound
        while level > 0 and volume_ie(exp_set, level - 1) == omega.evaluate(level - 1):
            level -= 1
        floor = max(floor, level)
    return floor


def kolchin_via_prolongation(
    system: LinearDiffSystem,
    matrix_cell_cap: int = DEFAULT_MATRIX_CELL_CAP,
    search_span: int = DEFAULT_SEARCH_SPAN,
) -> NumericalPolynomial:
    """Kolchin polynomial from exact prolongation ranks plus interpolation.

    The margin combines the order of the reduced basis with the certified
    level overshoot needed to reach each basis element by prolonging the
    original equations.  Starting at the level where every leader
    complement already counts polynomially, the first window [s*, s* + m]
    on which the margin and margin + 1 dimensions agree pointwise is
    declared stable and its values are interpolated.  Raises ResourceLimit
    when no window stabilises within ``search_span`` levels.
    """
    gb, margin = _groebner_with_margin(system)
    profile = leader_profile(gb)
    floor = _counting_floor(profile)
    m = system.m
    cache: dict[tuple[int, int], int] = {}

    def dim(level, mg):
        key = (level, mg)
        if key not in cache:
            cache[key] = prolongation_dimension(
                system, level, mg, matrix_cell_cap=matrix_cell_cap
            )
        return cache[key]

    limit = floor + search_span
    start = floor
    while start + m <= limit:
        moved = False
        for t in range(start, start + m + 1):
            if dim(t, margin) != dim(t, margin + 1):
                start = t + 1
                moved = True
                break
        if not moved:
            values = [dim(t, margin) for t in range(start, start + m + 1)]
            return interpolate(values, start, m)
    raise ResourceLimit(
        f"prolongation dimensions did not stabilise within {search_span} "
        f"levels past {floor}"
    )


def omega_at_least(system: LinearDiffSystem, p: NumericalPolynomial) -> bool:
    """Does the system's Kolchin polynomial eventually dominate p?"""
    return compare_eventual(kolchin_polynomial(system), p) >= 0


def omega_equals(system: LinearDiffSystem, p: NumericalPolynomial) -> bool:
    return compare_eventual(kolchin_polynomial(system), p) == 0
