"""Rank bookkeeping in long exact sequences over a field.

A sequence T_0 -> T_1 -> ... -> T_{n-1} is read with zeros implicitly
attached at both ends. Unknowns are the term dimensions d_i and the arrow
ranks r_i; exactness at T_i is the linear equation d_i = r_{i-1} + r_i.
Arrow flags translate to more linear equations (epi: r_i = d_{i+1},
mono: r_i = d_i, zero: r_i = 0, iso: both). The system is solved exactly over
Q, and nonnegativity is used to force variables to zero when an equation has
all coefficients of one sign and a zero right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

Constraint = Union[int, Literal["epi", "mono", "zero", "iso"], None]
ARROW_FLAGS = ("epi", "mono", "zero", "iso")


class InconsistentSequenceError(ValueError):
    def __init__(self, equation: str, detail: str = "") -> None:
        self.equation = equation
        super().__init__(f"inconsistent at {equation}" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class SequenceTerm:
    label: str
    rank: int | None = None


@dataclass(frozen=True)
class Arrow:
    label: str = ""
    constraint: Constraint = None


@dataclass(frozen=True)
class ExactSequenceSpec:
    terms: tuple[SequenceTerm, ...]
    arrows: tuple[Arrow, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.terms and len(self.arrows) != len(self.terms) - 1:
            raise ValueError(f"{len(self.terms)} terms need {len(self.terms) - 1} arrows, got {len(self.arrows)}")
        for t in self.terms:
            if t.rank is not None and (isinstance(t.rank, bool) or t.rank < 0):
                raise ValueError(f"term {t.label!r} has invalid rank {t.rank!r}")
        for a in self.arrows:
            c = a.constraint
            if c is None or c in ARROW_FLAGS:
                continue
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise ValueError(f"arrow {a.label!r} has invalid constraint {c!r}")


@dataclass(frozen=True)
class LesSolution:
    status: Literal["determined", "underdetermined"]
    term_ranks: tuple[int | None, ...]
    arrow_ranks: tuple[int | None, ...]
    undetermined: tuple[str, ...]

    def rank_of(self, spec: ExactSequenceSpec, label: str) -> int | None:
        for t, r in zip(spec.terms, self.term_ranks):
            if t.label == label:
                return r
        raise KeyError(label)


Equation = tuple[dict[int, int], int, str]


def _rref(eqs: list[Equation], nvars: int) -> list[tuple[list[Fraction], Fraction]]:
    rows = [([Fraction(c.get(j, 0)) for j in range(nvars)], Fraction(rhs)) for c, rhs, _ in eqs]
    out: list[tuple[list[Fraction], Fraction]] = []
    pivot_row = 0
    m = [list(r) + [b] for r, b in rows]
    for col in range(nvars):
        piv = next((i for i in range(pivot_row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[pivot_row], m[piv] = m[piv], m[pivot_row]
        p = m[pivot_row][col]
        m[pivot_row] = [x / p for x in m[pivot_row]]
        for i in range(len(m)):
            if i != pivot_row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[pivot_row])]
        pivot_row += 1
    for r in m:
        out.append((r[:nvars], r[nvars]))
    return out


def _solve(eqs: list[Equation], nvars: int) -> dict[int, int]:
    """Determined values, or raise ValueError with a reason."""
    zeros: set[int] = set()
    while True:
        system = eqs + [({j: 1}, 0, "nonnegativity") for j in sorted(zeros)]
        rows = _rref(system, nvars)
        values: dict[int, int] = {}
        forced: set[int] = set()
        for coeffs, rhs in rows:
            support = [j for j, c in enumerate(coeffs) if c != 0]
            if not support:
                if rhs != 0:
                    raise ValueError("0 = nonzero")
                continue
            if len(support) == 1:
                v = rhs / coeffs[support[0]]
                if v < 0 or v.denominator != 1:
                    raise ValueError(f"rank forced to {v}")
                values[support[0]] = int(v)
                continue
            signs = {c > 0 for j, c in enumerate(coeffs) if c != 0}
            if len(signs) == 1:
                positive = signs.pop()
                if rhs == 0:
                    forced.update(support)
                elif (rhs < 0) == positive:
                    raise ValueError("sum of nonnegative ranks has the wrong sign")
        # sign patterns are often visible only in the original equations
        for c, rhs, _ in system:
            rest = Fraction(rhs) - sum(Fraction(v) * values[j] for j, v in c.items() if j in values)
            live = [j for j, v in c.items() if v != 0 and j not in values]
            if not live:
                continue
            signs = {c[j] > 0 for j in live}
            if len(signs) == 1:
                positive = signs.pop()
                if rest == 0:
                    forced.update(live)
                elif (rest < 0) == positive:
                    raise ValueError("sum of nonnegative ranks has the wrong sign")
        forced -= {j for j, v in values.items() if v == 0}
        if forced <= zeros:
            return values
        zeros |= forced


def _term_var(i: int) -> int:
    return 2 * i


def _arrow_var(i: int) -> int:
    return 2 * i + 1


def les_rank_solver(spec: ExactSequenceSpec) -> LesSolution:
    """Solve the unknown ranks of an exact sequence of real vector spaces.

    Raises :class:`InconsistentSequenceError` naming the first equation whose
    addition makes the system unsatisfiable.
    """
    n = len(spec.terms)
    if n == 0:
        return LesSolution("determined", (), (), ())
    nvars = 2 * n - 1
    eqs: list[Equation] = []
    for i, t in enumerate(spec.terms):
        if t.rank is not None:
            eqs.append(({_term_var(i): 1}, t.rank, f"rank {t.label} = {t.rank}"))
    for i, a in enumerate(spec.arrows):
        name = a.label or f"arrow {i}"
        c = a.constraint
        src, dst = spec.terms[i].label, spec.terms[i + 1].label
        if c in ("epi", "iso"):
            eqs.append(({_arrow_var(i): 1, _term_var(i + 1): -1}, 0, f"{name}: {src} -> {dst} epi"))
        if c in ("mono", "iso"):
            eqs.append(({_arrow_var(i): 1, _term_var(i): -1}, 0, f"{name}: {src} -> {dst} mono"))
        if c == "zero":
            eqs.append(({_arrow_var(i): 1}, 0, f"{name}: {src} -> {dst} zero"))
        if isinstance(c, int) and not isinstance(c, bool):
            eqs.append(({_arrow_var(i): 1}, c, f"rank {name} = {c}"))
    for i, t in enumerate(spec.terms):
        coeffs = {_term_var(i): 1}
        if i > 0:
            coeffs[_arrow_var(i - 1)] = -1
        if i < n - 1:
            coeffs[_arrow_var(i)] = -1
        eqs.append((coeffs, 0, f"exactness at {t.label}"))

    active: list[Equation] = []
    values: dict[int, int] = {}
    for eq in eqs:
        active.append(eq)
        try:
            values = _solve(active, nvars)
        except ValueError as exc:
            raise InconsistentSequenceError(eq[2], str(exc)) from None

    term_ranks = tuple(values.get(_term_var(i)) for i in range(n))
    arrow_ranks = tuple(values.get(_arrow_var(i)) for i in range(n - 1))
    missing = tuple(t.label for t, r in zip(spec.terms, term_ranks) if r is None)
    return LesSolution("underdetermined" if missing else "determined", term_ranks, arrow_ranks, missing)


def pair_sequence(
    labels_pair: str,
    boundary: list[int],
    space: list[int],
    arrow_constraints: dict[str, Constraint],
    name: str = "",
) -> ExactSequenceSpec:
    """Homology sequence of a 3-dimensional pair (M, dM), top degree 3 down to 0.

    ``boundary`` and ``space`` give ranks of H_k(dM), H_k(M) for k = 2, 1, 0;
    H_3(M) = 0 and H_0(M, dM) = 0 are already folded in. Arrow names are
    ``i2, j2, d2, i1, j1, d1, i0`` plus ``d3``.
    """
    terms: list[SequenceTerm] = [SequenceTerm(f"H3({labels_pair})")]
    arrows: list[Arrow] = []
    for idx, k in enumerate((2, 1, 0)):
        arrows.append(Arrow(f"d{k + 1}", arrow_constraints.get(f"d{k + 1}")))
        terms.append(SequenceTerm(f"H{k}(bd)", boundary[idx]))
        arrows.append(Arrow(f"i{k}", arrow_constraints.get(f"i{k}")))
        terms.append(SequenceTerm(f"H{k}(M)", space[idx]))
        if k > 0:
            arrows.append(Arrow(f"j{k}", arrow_constraints.get(f"j{k}")))
            terms.append(SequenceTerm(f"H{k}({labels_pair})"))
    return ExactSequenceSpec(tuple(terms), tuple(arrows), name)


def handlebody_sequence(g: int) -> ExactSequenceSpec:
    """Pair sequence of a genus-g handlebody: H(S_g) = (1, 2g, 1), H(M) = (0, g, 1)."""
    return pair_sequence("M,bd", [1, 2 * g, 1], [0, g, 1], {"i1": "epi", "i0": 1}, f"handlebody_{g}")


def t2xi_sequence() -> ExactSequenceSpec:
    """Pair sequence of T^2 x [0,1]: H(bd) = (2, 4, 2), H(M) = (1, 2, 1)."""
    return pair_sequence("M,bd", [2, 4, 2], [1, 2, 1], {"i2": "epi", "i1": "epi", "i0": 1}, "T2xI")
