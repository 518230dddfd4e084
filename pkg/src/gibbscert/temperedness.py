"""Animal averages, temperedness checks, repulsiveness, and counting bounds.

The central quantity is the animal average of a growth function of the
host degrees.  A graph is certified tempered on a finite window (root x,
radii N_k) when the maximum of that average over all sufficiently large
animals inside each ball stays below a constant gamma.  Exhaustive
enumeration is used whenever it fits the caps; otherwise a greedy
hub-growing search provides a flagged lower bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .enumeration import Caps, DEFAULT_CAPS, count_paths_from, enumerate_animals
from .graphs import Animal, Graph, GraphError, ball_vertices, distance


# ---------------------------------------------------------------------------
# growth functions and repulsiveness specs


@dataclass(frozen=True)
class GrowthFunction:
    """Nonnegative nondecreasing function on [1, inf)."""

    name: str
    fn: Callable[[float], float]

    def __call__(self, t: float) -> float:
        if t < 1:
            raise ValueError(f"growth function defined on [1, inf), got {t}")
        return self.fn(t)


def g_log() -> GrowthFunction:
    return GrowthFunction("log", math.log)


def g_tlogt() -> GrowthFunction:
    return GrowthFunction("tlogt", lambda t: t * math.log(t))


def g_custom(name: str, fn: Callable[[float], float]) -> GrowthFunction:
    return GrowthFunction(name, fn)


@dataclass(frozen=True)
class RepulsivenessSpec:
    """Hub-repulsion condition: rho(x, y) >= phi(m(x, y)) above threshold n*.

    mode "min" uses m(x,y) = min degree of the pair, "max" the max degree.
    phi must be increasing; phi_inv may be supplied in closed form,
    otherwise it is computed by bisection.
    """

    phi: Callable[[float], float]
    n_star: int
    mode: str = "min"
    phi_inv: Callable[[float], float] | None = None
    name: str = "custom"

    def __post_init__(self):
        if self.n_star < 1:
            raise ValueError("n_star must be >= 1")
        if self.mode not in ("min", "max"):
            raise ValueError("mode must be 'min' or 'max'")

    def pair_degree(self, nx: int, ny: int) -> int:
        return min(nx, ny) if self.mode == "min" else max(nx, ny)

    def inverse(self, y: float, hi: float = 1e9, tol: float = 1e-12) -> float:
        """Largest t with phi(t) <= y (built-ins use closed forms)."""
        if self.phi_inv is not None:
            return self.phi_inv(y)
        if self.phi(1.0) > y:
            return 0.0
        lo, up = 1.0, 2.0
        while self.phi(up) <= y:
            lo = up
            up *= 2
            if up > hi:
                return up
        while up - lo > tol:
            mid = 0.5 * (lo + up)
            if self.phi(mid) <= y:
                lo = mid
            else:
                up = mid
        return lo


def power_repulsion(p: float, n_star: int, scale: float = 1.0, mode: str = "min") -> RepulsivenessSpec:
    """phi(t) = scale * t**p with closed-form inverse."""
    return RepulsivenessSpec(
        phi=lambda t: scale * t**p,
        n_star=n_star,
        mode=mode,
        phi_inv=lambda y: (y / scale) ** (1.0 / p) if y > 0 else 0.0,
        name=f"{scale}*t^{p}",
    )


# ---------------------------------------------------------------------------
# animal average and the temperedness check


def animal_average(a: Animal, gf: GrowthFunction, host: Graph) -> float:
    """Mean of gf over HOST degrees of the animal's vertices."""
    if not a.vertices:
        raise GraphError("empty animal")
    return sum(gf(host.degree(x)) for x in a.vertices) / len(a.vertices)


@dataclass
class RadiusResult:
    radius: int
    max_average: float
    witness: Animal | None
    exhaustive: bool
    animals_seen: int


@dataclass
class TemperednessReport:
    root: int
    growth: str
    radii: list[int]
    per_radius: list[RadiusResult]
    gamma: float
    verdict: str  # certified-on-window | failed | inconclusive
    gamma_target: float | None = None

    @property
    def witness(self) -> Animal | None:
        best = max(self.per_radius, key=lambda r: r.max_average, default=None)
        return best.witness if best else None

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "growth": self.growth,
            "radii": self.radii,
            "per_radius_max": [r.max_average for r in self.per_radius],
            "exhaustive": [r.exhaustive for r in self.per_radius],
            "gamma": self.gamma,
            "gamma_target": self.gamma_target,
            "verdict": self.verdict,
            "witness": sorted(self.witness.vertices) if self.witness else None,
        }


def _greedy_max_average(
    g: Graph, ball_verts: frozenset[int], min_size: int, gf: GrowthFunction
) -> tuple[float, frozenset[int] | None]:
    """Greedy hub-growing lower bound on the max animal average.

    From every start vertex, repeatedly absorb the neighbor with the
    largest gf(degree), tracking the best average at admissible sizes.
    """
    best = -math.inf
    best_set: frozenset[int] | None = None
    gval = {v: gf(g.degree(v)) for v in ball_verts}
    for start in sorted(ball_verts):
        chosen = {start}
        total = gval[start]
        frontier = {v for v in g.neighbors(start) if v in ball_verts}
        while frontier and len(chosen) < len(ball_verts):
            u = max(sorted(frontier), key=lambda v: gval[v])
            chosen.add(u)
            total += gval[u]
            frontier.discard(u)
            frontier |= {v for v in g.neighbors(u) if v in ball_verts and v not in chosen}
            if len(chosen) >= min_size:
                avg = total / len(chosen)
                if avg > best:
                    best = avg
                    best_set = frozenset(chosen)
    return best, best_set


def check_tempered(
    g: Graph,
    gf: GrowthFunction,
    x: int,
    radii: Sequence[int],
    gamma_target: float | None = None,
    caps: Caps = DEFAULT_CAPS,
    greedy: bool = True,
) -> TemperednessReport:
    """Per-radius maximum of the animal average over A in the ball of each radius.

    For radius r only animals with at least r+1 vertices count.  The
    enumeration is over connected vertex sets with induced edges: the
    animal average depends only on the vertex set, so the max over all
    animals with a given vertex set is attained by the induced one.
    """
    if list(radii) != sorted(set(radii)) or (radii and radii[0] < 1):
        raise GraphError("radii must be strictly increasing positive integers")
    from .graphs import animal_from_vertices

    per_radius: list[RadiusResult] = []
    for r in radii:
        verts = ball_vertices(g, x, r)
        enum = enumerate_animals(g, verts, min_vertices=r + 1, max_vertices=len(verts), caps=caps)
        best = -math.inf
        witness: Animal | None = None
        for a in enum.items:
            avg = animal_average(a, gf, g)
            if avg > best:
                best = avg
                witness = a
        if not enum.complete and greedy:
            gbest, gset = _greedy_max_average(g, verts, r + 1, gf)
            if gbest > best:
                best = gbest
                witness = animal_from_vertices(g, gset) if gset else None
        if best == -math.inf:
            best = 0.0
        per_radius.append(
            RadiusResult(
                radius=r,
                max_average=best,
                witness=witness,
                exhaustive=enum.complete,
                animals_seen=len(enum.items),
            )
        )
    gamma = max((r.max_average for r in per_radius), default=0.0)
    all_exhaustive = all(r.exhaustive for r in per_radius)
    if gamma_target is not None and gamma > gamma_target:
        verdict = "failed"  # gamma is a valid lower bound even when partial
    elif all_exhaustive:
        verdict = "certified-on-window"
    else:
        verdict = "inconclusive"
    return TemperednessReport(
        root=x,
        growth=gf.name,
        radii=list(radii),
        per_radius=per_radius,
        gamma=gamma,
        verdict=verdict,
        gamma_target=gamma_target,
    )


# ---------------------------------------------------------------------------
# repulsiveness, summability, separation, N_k selection


@dataclass
class RepulsivenessReport:
    holds: bool
    witnesses: list[tuple[int, int, int, float]]  # (x, y, rho, required)


def check_repulsive(g: Graph, spec: RepulsivenessSpec) -> RepulsivenessReport:
    """Verify rho(x, y) >= phi(m(x, y)) for all pairs above the degree threshold."""
    heavy = [v for v in g.vertices if g.degree(v) >= spec.n_star]
    if spec.mode == "max":
        # any pair with at least one heavy endpoint can trigger the condition
        relevant = set(g.vertices)
    else:
        relevant = set(heavy)
    witnesses = []
    for x in heavy:
        dist = g.distances_from(x)
        for y in relevant:
            if y <= x and y in heavy:
                continue  # unordered pairs once
            if y == x:
                continue
            m = spec.pair_degree(g.degree(x), g.degree(y))
            if m < spec.n_star:
                continue
            required = spec.phi(m)
            rho = dist.get(y)
            if rho is None or rho < required:
                witnesses.append((x, y, rho if rho is not None else -1, required))
    return RepulsivenessReport(holds=not witnesses, witnesses=witnesses)


@dataclass
class SummabilityReport:
    partial_sum: float
    gamma: float  # 2 * partial_sum, the constant entering the temperedness bound
    diagnostic: str  # converged | diverging
    terms: int


def check_summability(
    gf: GrowthFunction,
    spec: RepulsivenessSpec,
    t_seq: Sequence[float],
    terms: int,
    tol: float = 1e-6,
) -> SummabilityReport:
    """Partial sum of gf(t_{k+1}) / phi(t_k) with a Cauchy-style diagnostic."""
    if len(t_seq) < terms + 1:
        raise ValueError("t_seq must have at least terms+1 entries")
    if any(b <= a for a, b in zip(t_seq, t_seq[1:])):
        raise ValueError("t_seq must be strictly increasing")
    if t_seq[0] < 1:
        raise ValueError("t_seq must start at >= 1")
    increments = []
    for k in range(terms):
        denom = spec.phi(t_seq[k])
        if denom <= 0:
            raise ValueError("phi must be positive on the sequence")
        increments.append(gf(t_seq[k + 1]) / denom)
    total = sum(increments)
    half = sum(increments[: terms // 2])
    diagnostic = "converged" if total - half <= tol else "diverging"
    return SummabilityReport(
        partial_sum=total, gamma=2.0 * total, diagnostic=diagnostic, terms=terms
    )


def verify_separation_bound(
    a: Animal, lam: float, b: Iterable[int], host: Graph
) -> bool:
    """|B| <= max(1, (2|V(A)| - 1) / lambda) for a lambda-separated B in V(A)."""
    bset = sorted(set(b))
    if not set(bset) <= a.vertices:
        raise GraphError("B must be a subset of the animal's vertices")
    for i, x in enumerate(bset):
        for y in bset[i + 1 :]:
            if distance(host, x, y) < lam:
                raise GraphError(f"B is not lambda-separated: rho({x},{y}) < {lam}")
    return len(bset) <= max(1.0, (2 * len(a.vertices) - 1) / lam)


def select_Nk(
    g: Graph, x: int, spec: RepulsivenessSpec, r_max: int
) -> list[int]:
    """Radii r <= r_max whose ball max degree is at most phi^{-1}(2r + 1)."""
    if r_max < 1:
        return []
    dist = g.distances_from(x)
    radii = []
    for r in range(1, r_max + 1):
        md = max(g.degree(v) for v, d in dist.items() if d <= r)
        if md <= spec.inverse(2 * r + 1):
            radii.append(r)
    return radii


# ---------------------------------------------------------------------------
# counting bounds


@dataclass
class CountRecord:
    N: int
    count: int
    bound: float
    ok: bool | None  # None = inconclusive (partial count below the bound)
    complete: bool


@dataclass
class CountingReport:
    root: int
    N_k: int
    path_records: list[CountRecord]
    animal_records: list[CountRecord]
    verdict: str  # pass | fail | inconclusive

    def all_pass(self) -> bool:
        return self.verdict == "pass"


def verify_counting_bounds(
    g: Graph,
    x: int,
    N_k: int,
    N_range: Sequence[int],
    gamma_paths: float | None = None,
    gamma_animals: float | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> CountingReport:
    """Check |Sigma^N_{N_k}(x)| <= e^{gamma N} and |A^N_{N_k}(x)| <= e^{gamma N}.

    Sigma^N collects simple paths originating at x inside the ball of
    radius N_k with length N >= N_k; A^N collects animals in that ball
    with N >= N_k + 1 vertices.  A partial count above its bound is a
    definitive failure; a partial count below it is inconclusive.
    """
    verts = ball_vertices(g, x, N_k)
    path_records: list[CountRecord] = []
    animal_records: list[CountRecord] = []
    if gamma_paths is not None:
        counts, complete = count_paths_from(g, verts, x, max(N_range), caps)
        for N in N_range:
            c = counts.get(N, 0) if N >= N_k else 0
            bound = math.exp(gamma_paths * N)
            ok: bool | None = c <= bound
            if not complete and c <= bound:
                ok = None
            path_records.append(CountRecord(N, c, bound, ok, complete))
    if gamma_animals is not None:
        enum = enumerate_animals(g, verts, min_vertices=N_k + 1, max_vertices=max(N_range), caps=caps)
        by_size: dict[int, int] = {}
        for a in enum.items:
            by_size[len(a.vertices)] = by_size.get(len(a.vertices), 0) + 1
        for N in N_range:
            c = by_size.get(N, 0) if N >= N_k + 1 else 0
            bound = math.exp(gamma_animals * N)
            ok = c <= bound
            if not enum.complete and c <= bound:
                ok = None
            animal_records.append(CountRecord(N, c, bound, ok, enum.complete))
    records = path_records + animal_records
    if any(r.ok is False for r in records):
        verdict = "fail"
    elif any(r.ok is None for r in records):
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return CountingReport(
        root=x,
        N_k=N_k,
        path_records=path_records,
        animal_records=animal_records,
        verdict=verdict,
    )


def randic_index(g: Graph, x: int, theta: float) -> float:
    """Generalized degree-product index: sum over neighbors of [n(x) n(y)]^theta."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    nx = g.degree(x)
    return sum((nx * g.degree(y)) ** theta for y in g.neighbors(x))
