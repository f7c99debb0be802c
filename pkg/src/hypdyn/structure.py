"""Symbolic models of Omega-stable diffeomorphisms of 3-manifolds.

A model lists basic sets with their type, unstable dimension, orientability
and trapping-neighborhood topology, plus the Smale relations between them.
From that data the module derives a filtration order, the spectral class of
f^* on each filtration pair, and a step-by-step replay of the argument that
rules out orientable one-dimensional attractors and Anosov-torus attractors
when every other basic set is trivial.

Spectral classes, from most to least constrained:

zero_group            the pair group is 0
nilpotent             every eigenvalue is 0
unipotent             every eigenvalue is a root of unity
plus_minus_id         rank one free part, so the action is +1 or -1
spectral              an explicit characteristic polynomial
rank_g_unconstrained  nothing is known; growth is admissible
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Literal, Mapping, Sequence

from .homology import homology
from .matrix import Matrix, char_poly
from .poly import Poly, count_real_roots
from .spaces import handlebody, t2xi
from .spectral import is_roots_of_unity_only

KINDS = (
    "trivial_periodic",
    "attractor_1d",
    "attractor_2d_expanding",
    "anosov_torus",
    "attractor_3d",
    "nontrivial_saddle",
    "nontrivial_repeller",
)
ATTRACTOR_KINDS = ("attractor_1d", "attractor_2d_expanding", "anosov_torus", "attractor_3d")
SPECTRAL_CLASSES = ("zero_group", "nilpotent", "unipotent", "plus_minus_id", "spectral", "rank_g_unconstrained")

_HANDLEBODY_RE = re.compile(r"^handlebody\((\d+)\)$")


class ModelError(ValueError):
    pass


def parse_trapping(text: str | None) -> tuple[str, int] | None:
    """'handlebody(g)' -> ('handlebody', g); 'T2xI' -> ('T2xI', 0); None -> None."""
    if text is None:
        return None
    m = _HANDLEBODY_RE.match(text)
    if m:
        return "handlebody", int(m.group(1))
    if text == "T2xI":
        return "T2xI", 0
    raise ModelError(f"unknown trapping topology {text!r}")


@dataclass(frozen=True)
class BasicSetSpec:
    id: str
    kind: str
    dim_unstable: int
    orientable: bool = True
    trapping: str | None = None
    # optional explicit characteristic polynomials of the pair action, by degree
    spectra: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ModelError(f"basic set {self.id!r}: unknown kind {self.kind!r}")
        if not 0 <= self.dim_unstable <= 3:
            raise ModelError(f"basic set {self.id!r}: unstable dimension must be in 0..3")
        trap = parse_trapping(self.trapping)
        if self.kind == "attractor_1d" and (trap is None or trap[0] != "handlebody"):
            raise ModelError(f"basic set {self.id!r}: a one-dimensional attractor needs a handlebody(g) trapping neighborhood")
        if self.kind == "anosov_torus" and (trap is None or trap[0] != "T2xI"):
            raise ModelError(f"basic set {self.id!r}: an Anosov torus needs a T2xI trapping neighborhood")
        spectra = {}
        for k, coeffs in dict(self.spectra).items():
            if not 0 <= int(k) <= 3:
                raise ModelError(f"basic set {self.id!r}: spectral override for degree {k} outside 0..3")
            p = Poly.of(coeffs)
            if p.is_zero or not p.is_monic or not p.is_integral:
                raise ModelError(f"basic set {self.id!r}: spectral override must be a monic integer polynomial")
            spectra[int(k)] = tuple(int(c) for c in p.coeffs)
        object.__setattr__(self, "spectra", spectra)

    @property
    def is_trivial(self) -> bool:
        return self.kind == "trivial_periodic"

    @property
    def is_attractor(self) -> bool:
        return self.kind in ATTRACTOR_KINDS

    @property
    def trapping_parsed(self) -> tuple[str, int] | None:
        return parse_trapping(self.trapping)


@dataclass(frozen=True)
class Ambient:
    orientable: bool = True
    closed: bool = True
    dimension: int = 3
    name: str = ""


@dataclass(frozen=True)
class StructureModel:
    basic_sets: tuple[BasicSetSpec, ...]
    relations: tuple[tuple[str, str], ...] = ()
    ambient: Ambient = Ambient()
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "basic_sets", tuple(self.basic_sets))
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        ids = [b.id for b in self.basic_sets]
        if len(set(ids)) != len(ids):
            raise ModelError("duplicate basic set id")
        for a, b in self.relations:
            if a not in ids or b not in ids:
                raise ModelError(f"relation ({a}, {b}) references an unknown basic set")

    def get(self, bid: str) -> BasicSetSpec:
        for b in self.basic_sets:
            if b.id == bid:
                return b
        raise KeyError(bid)


# -- Smale order ---------------------------------------------------------------


@dataclass(frozen=True)
class OrderResult:
    order: tuple[str, ...] | None
    unique: bool
    cycle: tuple[str, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.cycle is None


def _find_cycle(nodes: set[str], succ: Mapping[str, list[str]]) -> tuple[str, ...]:
    """A directed cycle inside ``nodes``, rotated to start at its smallest id."""
    color: dict[str, int] = {}
    stack: list[str] = []

    def dfs(u: str) -> tuple[str, ...] | None:
        color[u] = 1
        stack.append(u)
        for v in sorted(succ.get(u, [])):
            if v not in nodes:
                continue
            if color.get(v) == 1:
                cyc = stack[stack.index(v):]
                i = cyc.index(min(cyc))
                return tuple(cyc[i:] + cyc[:i])
            if v not in color:
                found = dfs(v)
                if found:
                    return found
        stack.pop()
        color[u] = 2
        return None

    for start in sorted(nodes):
        if start not in color:
            found = dfs(start)
            if found:
                return found
    raise AssertionError("no cycle among remaining nodes")  # pragma: no cover


def smale_order(model: StructureModel, priority: Mapping[str, tuple] | None = None) -> OrderResult:
    """Topological order refining the relations, ties broken by (priority, id).

    A relation (a, b) means a precedes b. ``unique`` is False as soon as two
    sets were simultaneously available.
    """
    ids = [b.id for b in model.basic_sets]
    succ: dict[str, list[str]] = {i: [] for i in ids}
    indeg = {i: 0 for i in ids}
    for a, b in sorted(set(model.relations)):
        succ[a].append(b)
        indeg[b] += 1
    key = (lambda i: (priority[i], i)) if priority else (lambda i: ((), i))
    heap = [(key(i), i) for i in ids if indeg[i] == 0]
    heapq.heapify(heap)
    order: list[str] = []
    unique = True
    while heap:
        if len(heap) > 1:
            unique = False
        _, u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, (key(v), v))
    if len(order) < len(ids):
        remaining = set(ids) - set(order)
        return OrderResult(None, False, _find_cycle(remaining, succ))
    return OrderResult(tuple(order), unique)


# -- pair ledger -----------------------------------------------------------------


@dataclass(frozen=True)
class SpectralClass:
    name: str
    rank: int | None = None
    poly: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.name not in SPECTRAL_CLASSES:
            raise ValueError(f"unknown spectral class {self.name!r}")

    def __str__(self) -> str:
        if self.name == "spectral":
            return f"spectral({Poly.of(self.poly)})"
        if self.name == "rank_g_unconstrained" and self.rank is not None:
            return f"rank_g_unconstrained(rank {self.rank})"
        return self.name


def admits_off_circle(cls: SpectralClass) -> bool:
    """Can the class carry a nonzero eigenvalue off the unit circle?"""
    if cls.name in ("zero_group", "nilpotent", "unipotent", "plus_minus_id"):
        return False
    if cls.name == "spectral":
        core, _ = Poly.of(cls.poly).strip_zero_roots()  # zero roots are the nilpotent part
        return not is_roots_of_unity_only(core)
    return True


@lru_cache(maxsize=None)
def _pair_ranks(kind: str, genus: int) -> tuple[int, ...]:
    pair = handlebody(genus) if kind == "handlebody" else t2xi()
    # real cohomology rank of the pair equals the free rank of integral homology
    return tuple(h.free_rank for h in homology(pair, "relative"))


def _class_for_rank(rank: int) -> SpectralClass:
    if rank == 0:
        return SpectralClass("zero_group", 0)
    if rank == 1:
        return SpectralClass("plus_minus_id", 1)
    return SpectralClass("rank_g_unconstrained", rank)


@dataclass(frozen=True)
class LedgerEntry:
    basic_set: str
    classes: tuple[SpectralClass, ...]
    ranks: tuple[int | None, ...]
    note: str = ""


def ledger_entry(b: BasicSetSpec, reverse: bool = False) -> LedgerEntry:
    """Spectral classes of f^* (or of g = f^-1 when ``reverse``) on the pair of b.

    Trivial sets are unipotent in the degree of their unstable dimension for
    the map in question (3 - u for the inverse) and nilpotent elsewhere.
    Attractor entries always describe the trapping pair (Q, dQ), which is the
    pair a repeller of the inverse map contributes after excision.
    """
    classes: list[SpectralClass] = []
    ranks: list[int | None] = []
    note = ""
    if b.is_trivial:
        k0 = 3 - b.dim_unstable if reverse else b.dim_unstable
        for k in range(4):
            classes.append(SpectralClass("unipotent") if k == k0 else SpectralClass("nilpotent"))
            ranks.append(None)
        note = f"trivial: unipotent in degree {k0}"
    elif b.kind in ("attractor_1d", "anosov_torus"):
        trap = b.trapping_parsed
        assert trap is not None
        pr = _pair_ranks(*trap)
        for k in range(4):
            classes.append(_class_for_rank(pr[k]))
            ranks.append(pr[k])
        note = f"pair ({b.trapping}, boundary): ranks {list(pr)}"
    else:
        for k in range(4):
            classes.append(SpectralClass("rank_g_unconstrained"))
            ranks.append(None)
        note = f"{b.kind}: modeled as unconstrained"
    for k, coeffs in b.spectra.items():
        classes[k] = SpectralClass("spectral", ranks[k], tuple(coeffs))
    return LedgerEntry(b.id, tuple(classes), tuple(ranks), note)


def pair_ledger(model: StructureModel, reverse: bool = False) -> tuple[LedgerEntry, ...]:
    res = smale_order(model)
    if not res.ok:
        raise ModelError(f"Smale relations contain a cycle: {' < '.join(res.cycle)}")
    return tuple(ledger_entry(model.get(i), reverse) for i in res.order)


@dataclass(frozen=True)
class BudgetReport:
    degree: int
    classes: tuple[str, ...]
    admits_growth: bool
    witnesses: tuple[str, ...]


def eigenvalue_budget(
    model: StructureModel, k: int, reverse: bool = False, among: Iterable[str] | None = None
) -> BudgetReport:
    """Union of the degree-k classes over the pairs (optionally a subset of basic sets)."""
    if not 0 <= k <= 3:
        raise ValueError("degree must be in 0..3")
    keep = None if among is None else set(among)
    names: set[str] = set()
    witnesses = []
    for entry in pair_ledger(model, reverse):
        if keep is not None and entry.basic_set not in keep:
            continue
        cls = entry.classes[k]
        names.add(str(cls))
        if admits_off_circle(cls):
            witnesses.append(entry.basic_set)
    return BudgetReport(k, tuple(sorted(names)), bool(witnesses), tuple(witnesses))


# -- H^0 action --------------------------------------------------------------------


@dataclass(frozen=True)
class PermutationSpectrum:
    char_poly: Poly
    real_eigenvalues: tuple[int, ...]
    all_real_are_pm1: bool
    roots_of_unity_only: bool


def permutation_H0_eigen(components: int, permutation: Sequence[int]) -> PermutationSpectrum:
    """Spectrum of the map on H^0 induced by permuting connected components."""
    perm = list(permutation)
    if components < 1 or len(perm) != components or sorted(perm) != list(range(components)):
        raise ValueError(f"invalid permutation {perm!r} of {components} components")
    rows = [[1 if perm[j] == i else 0 for j in range(components)] for i in range(components)]
    p = char_poly(Matrix.from_rows(rows))
    real = tuple(r for r in (-1, 1) if p(r) == 0)
    return PermutationSpectrum(p, real, count_real_roots(p) == len(real), is_roots_of_unity_only(p))


# -- the checker -----------------------------------------------------------------

Verdict = Literal["consistent", "contradiction", "out_of_hypothesis"]


@dataclass(frozen=True)
class TraceStep:
    step: str
    outcome: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.step}] {self.outcome}: {self.detail}"


@dataclass(frozen=True)
class CheckResult:
    verdict: Verdict
    trace: tuple[TraceStep, ...]
    attractor: str | None = None

    @property
    def steps(self) -> list[str]:
        return [t.step for t in self.trace]


def cover_model(model: StructureModel) -> StructureModel:
    """Model of the lift to the orientation double cover.

    Each basic set sits in an orientable trapping region, on which the
    orientation character is trivial, so its preimage is two copies; the
    copies keep the kind, unstable dimension and orientability.
    """
    sets = []
    for b in model.basic_sets:
        for s in ("a", "b"):
            sets.append(replace(b, id=f"{b.id}.{s}"))
    rels = [(f"{x}.{s}", f"{y}.{s}") for x, y in model.relations for s in ("a", "b")]
    amb = replace(model.ambient, orientable=True, name=f"cover({model.ambient.name})" if model.ambient.name else "cover")
    return StructureModel(tuple(sets), tuple(rels), amb, f"cover({model.name})" if model.name else "cover")


def _hypothesis_failure(model: StructureModel) -> str | None:
    if model.ambient.dimension != 3:
        return f"ambient dimension {model.ambient.dimension} != 3"
    for b in model.basic_sets:
        if b.kind in ("nontrivial_saddle", "nontrivial_repeller"):
            return f"{b.id} is a non-trivial basic set that is not an attractor"
        if b.kind == "attractor_3d":
            return f"{b.id} fills the manifold, so it is also a non-trivial repeller"
    return None


def _attractor_minimality(model: StructureModel) -> None:
    for a, b in model.relations:
        if model.get(b).is_attractor:
            raise ModelError(f"relation {a} < {b} places a basic set below the attractor {b}")


def _filtration_for(model: StructureModel, target: str) -> tuple[str, ...]:
    """Order with attractors first and ``target`` last among them; then reversed."""
    prio = {}
    for b in model.basic_sets:
        if b.is_attractor:
            prio[b.id] = (0, 1 if b.id == target else 0)
        else:
            prio[b.id] = (1, 0)
    res = smale_order(model, prio)
    assert res.order is not None
    return tuple(reversed(res.order))


def _check_attractor(model: StructureModel, a: BasicSetSpec, on_cover: bool) -> tuple[bool, list[TraceStep]]:
    """Replay the exclusion argument for attractor a; True when it ends in a contradiction."""
    tag = " (on the cover)" if on_cover else ""
    trace: list[TraceStep] = [TraceStep(
        "growth", "axiom",
        f"{a.id} is a non-trivial basic set, so the number N_m of fixed points of g^m = f^-m tends to infinity{tag}")]
    if not a.orientable:
        trace.append(TraceStep("equal-index", "premise fails",
                               f"{a.id} is non-orientable; indices of its periodic points need not agree"))
        return False, trace
    if a.dim_unstable != 1:
        budget = eigenvalue_budget(model, 1, reverse=True, among=[a.id])
        trace.append(TraceStep("equal-index", "premise fails",
                               f"{a.id} has unstable dimension {a.dim_unstable}; equal indices need dimension 1"))
        trace.append(TraceStep("budget", "growth admissible" if budget.admits_growth else "no witness",
                               f"{a.id} pair classes in degree 1: {', '.join(budget.classes)}"))
        return False, trace
    trace.append(TraceStep("equal-index", "applied",
                           f"{a.id} is orientable with unstable dimension 1, so all fixed points of g^m share one index{tag}"))
    trace.append(TraceStep("lefschetz-count", "applied",
                           "N_m = |sum_k (-1)^k tr (g^*_k)^m| grows, so some H^k of the filtration piece needs |lambda| > 1"))

    g_order = _filtration_for(model, a.id)
    i0 = g_order.index(a.id)
    piece = g_order[: i0 + 1]
    others_after = g_order[i0 + 1:]
    has_boundary = bool(others_after)

    h0 = permutation_H0_eigen(1, [0])
    trace.append(TraceStep("k=0", "excluded",
                           f"g^* on H^0 permutes components; char poly {h0.char_poly}, every root a root of unity"))
    if has_boundary:
        trace.append(TraceStep("k=3", "excluded",
                               f"the piece has boundary (sets {', '.join(others_after)} lie outside), so H^3 = 0"))
    else:
        trace.append(TraceStep("k=3", "excluded", "the piece is the closed manifold, H^3 is Z and g^* = +-id"))

    budget = eigenvalue_budget(model, 1, reverse=True, among=piece)
    if budget.admits_growth:
        trace.append(TraceStep("k=1", "not excluded",
                               f"pairs {', '.join(budget.witnesses)} admit eigenvalues off the unit circle in degree 1"))
        return False, trace
    trace.append(TraceStep("k=1", "excluded",
                           f"pairs of {', '.join(piece)} in degree 1 carry only {', '.join(budget.classes)}"))
    trace.append(TraceStep("k=2", "excluded",
                           "duality sends lambda to +-1/lambda on H^1(piece, boundary); the pair sequence pushes it "
                           "to H^0(boundary), roots of unity only, or to H^1(piece), excluded at k=1"))
    return True, trace


def theorem_check(model: StructureModel) -> CheckResult:
    """Replay the exclusion argument for every non-trivial attractor of the model."""
    reason = _hypothesis_failure(model)
    if reason:
        return CheckResult("out_of_hypothesis", (TraceStep("hypothesis", "fails", reason),))
    order = smale_order(model)
    if not order.ok:
        return CheckResult("out_of_hypothesis", (
            TraceStep("hypothesis", "fails", f"cycle {' < '.join(order.cycle)}: not Omega-stable"),))
    _attractor_minimality(model)

    nontrivial = [b for b in model.basic_sets if not b.is_trivial]
    if not nontrivial:
        return CheckResult("consistent", (TraceStep("hypothesis", "vacuous", "every basic set is trivial"),))

    work = model
    on_cover = not model.ambient.orientable
    if on_cover:
        work = cover_model(model)

    trace: list[TraceStep] = []
    for b in sorted(nontrivial, key=lambda x: x.id):
        target = work.get(f"{b.id}.a") if on_cover else b
        contradiction, steps = _check_attractor(work, target, on_cover)
        trace.extend(steps)
        if contradiction:
            if on_cover:
                trace.append(TraceStep("double-cover", "applied",
                                       f"the ambient manifold is non-orientable; g lifts to its orientation double cover "
                                       f"and the preimage of {b.id} stays orientable, so the argument above applies there"))
            return CheckResult("contradiction", tuple(trace), b.id)
    return CheckResult("consistent", tuple(trace))
