"""Exhaustive search over blow-up families and the extremal characterizations.

Every member of B_n(G) is a positive composition of n into t = |V(G)| parts.
At desk scale we evaluate all of them and compare the argmin/argmax classes
with the predicted ones.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import numbers
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .closed_form import SunflowerBlowup, balanced_product, sunflower_rho
from .hypergraph import (
    HypergraphError,
    SunflowerParams,
    UniformHypergraph,
    as_sunflower,
    balanced_parts,
    complete_hypergraph,
    link_set,
    sunflower,
)
from .spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    ConvergenceError,
    quotient_spectral_radii,
)

Composition = tuple[int, ...]

TIE_TOL = 1e-9
SCAN_TIE_TOL = 1e-12
EVALUATORS = ("solver", "closed")


class VerificationError(AssertionError):
    pass


class ShiftPreconditionError(ValueError):
    pass


def enumerate_compositions(n: int, t: int) -> Iterator[Composition]:
    """All positive compositions of n into t parts, lexicographically."""
    if t < 1 or n < t:
        raise HypergraphError(f"no positive composition of {n} into {t} parts")
    for cuts in itertools.combinations(range(1, n), t - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def describe(G: UniformHypergraph) -> str:
    if G == complete_hypergraph(G.order, G.rank):
        return f"K_{G.order}^{G.rank}"
    params = as_sunflower(G)
    if params is not None:
        return f"SH({params.m},{params.q},{params.r})"
    return f"G(r={G.rank},t={G.order},m={G.num_edges})"


# ---------------------------------------------------------------- symmetry


def symmetry_blocks(G: UniformHypergraph) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Known label symmetries of ``G`` as (blocks permutable inside, blocks permutable among themselves).

    Only K_t^r and labeled sunflowers are recognized; anything else gets the
    trivial group.
    """
    if G == complete_hypergraph(G.order, G.rank):
        return [tuple(G.vertices)], []
    params = as_sunflower(G)
    if params is not None:
        return [params.kernel, *params.petals], list(params.petals)
    return [(v,) for v in G.vertices], []


def symmetry_orbit(
    comp: Sequence[int], within: list[tuple[int, ...]], swap: list[tuple[int, ...]]
) -> set[Composition]:
    comp = tuple(comp)
    swapped = set()
    for order in itertools.permutations(range(len(swap))):
        c = list(comp)
        for dst, src in zip(swap, (swap[k] for k in order)):
            for a, b in zip(dst, src):
                c[a - 1] = comp[b - 1]
        swapped.add(tuple(c))
    orbit = set()
    for c in swapped:
        choices = [set(itertools.permutations([c[v - 1] for v in block])) for block in within]
        for pick in itertools.product(*choices):
            d = list(c)
            for block, vals in zip(within, pick):
                for v, val in zip(block, vals):
                    d[v - 1] = val
            orbit.add(tuple(d))
    return orbit


def symmetry_closure(G: UniformHypergraph, comps: Iterable[Sequence[int]]) -> frozenset[Composition]:
    within, swap = symmetry_blocks(G)
    out: set[Composition] = set()
    for c in comps:
        out |= symmetry_orbit(c, within, swap)
    return frozenset(out)


# ---------------------------------------------------------------- brute force


@dataclass(frozen=True)
class ExtremalReport:
    family: str
    n: int
    evaluator: str
    evaluations: int
    minima: tuple[tuple[Composition, float], ...]
    maxima: tuple[tuple[Composition, float], ...]
    tolerance: float = TIE_TOL

    @property
    def min_value(self) -> float:
        return min(v for _, v in self.minima)

    @property
    def max_value(self) -> float:
        return max(v for _, v in self.maxima)

    @property
    def min_set(self) -> frozenset[Composition]:
        return frozenset(c for c, _ in self.minima)

    @property
    def max_set(self) -> frozenset[Composition]:
        return frozenset(c for c, _ in self.maxima)

    def to_dict(self) -> dict:
        def block(items):
            return [{"parts": list(c), "rho": v} for c, v in items]

        return {
            "schema": 1,
            "kind": "extremal",
            "family": self.family,
            "n": self.n,
            "evaluator": self.evaluator,
            "evaluations": self.evaluations,
            "tolerance": self.tolerance,
            "minima": block(self.minima),
            "maxima": block(self.maxima),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "n", "extreme", "parts", "rho"])
        for label, items in (("min", self.minima), ("max", self.maxima)):
            for c, v in items:
                w.writerow([self.family, self.n, label, ",".join(map(str, c)), repr(v)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [
            f"family {self.family}  n={self.n}  evaluator={self.evaluator}  "
            f"compositions={self.evaluations}  tie_tol={self.tolerance:g}"
        ]
        width = max(len(",".join(map(str, c))) for c, _ in self.minima + self.maxima)
        for label, items in (("min", self.minima), ("max", self.maxima)):
            for c, v in items:
                lines.append(f"  {label}  {','.join(map(str, c)):<{width}}  {v:.12f}")
        return "\n".join(lines) + "\n"


def _solve_chunk(base, rows, tol, max_iter):
    results = quotient_spectral_radii(base, rows, tol, max_iter)
    for row, res in zip(rows, results):
        if not res.converged:
            raise ConvergenceError(
                f"no convergence for parts {tuple(row)} after {res.iterations} iterations, "
                f"bracket {res.bracket}",
                res,
            )
    return [res.rho for res in results]


def _closed_chunk(params, rows):
    return [sunflower_rho(SunflowerBlowup(params, tuple(row))) for row in rows]


def evaluate_compositions(
    G: UniformHypergraph,
    comps: Sequence[Composition],
    evaluator: str = "solver",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    workers: int = 1,
    chunk: int = 2048,
) -> list[float]:
    """Spectral radius of ``G o c`` for every composition ``c``."""
    if evaluator not in EVALUATORS:
        raise ValueError(f"unknown evaluator {evaluator!r}")
    if evaluator == "closed":
        params = as_sunflower(G)
        if params is None:
            raise ValueError("the closed-form evaluator only applies to sunflower bases")
        task, args = _closed_chunk, (params,)
        extra = ()
    else:
        task, args = _solve_chunk, (G,)
        extra = (tol, max_iter)
    batches = [list(comps[k : k + chunk]) for k in range(0, len(comps), chunk)]
    if workers > 1 and len(batches) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(task, *args, b, *extra) for b in batches]
            parts = [f.result() for f in futures]
    else:
        parts = [task(*args, b, *extra) for b in batches]
    return [v for p in parts for v in p]


def _extremes(items, tie_tol):
    vmin = min(v for _, v in items)
    vmax = max(v for _, v in items)
    minima = tuple(sorted((c, v) for c, v in items if v - vmin <= tie_tol * abs(vmin)))
    maxima = tuple(sorted((c, v) for c, v in items if vmax - v <= tie_tol * abs(vmax)))
    return minima, maxima


def brute_force_extremal(
    G: UniformHypergraph,
    n: int,
    evaluator: str = "solver",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    tie_tol: float = TIE_TOL,
    workers: int = 1,
) -> ExtremalReport:
    """Evaluate every member of B_n(G) and collect the min/max classes."""
    if n < G.order:
        raise HypergraphError(f"n={n} is smaller than the base order {G.order}")
    comps = list(enumerate_compositions(n, G.order))
    values = evaluate_compositions(G, comps, evaluator, tol, max_iter, workers)
    minima, maxima = _extremes(list(zip(comps, values)), tie_tol)
    return ExtremalReport(describe(G), n, evaluator, len(comps), minima, maxima, tie_tol)


# ---------------------------------------------------------------- discrete optimizers


def _is_integral(beta) -> bool:
    return isinstance(beta, numbers.Integral) or Fraction(beta).denominator == 1


def _pow(base: int, beta):
    """Exact integer power when beta is integral, float otherwise."""
    if _is_integral(beta):
        return base ** int(beta)
    return float(base) ** float(beta)


def same_value(a, b, rel=SCAN_TIE_TOL) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    return abs(a - b) <= rel * max(abs(a), abs(b))


def R_value(b: Sequence[int], beta) -> float | int:
    return _pow(b[0], beta) * sum(_pow(x, beta) for x in b[1:])


def exhaustive_min_R(theta: int, l: int, beta) -> tuple[float | int, frozenset[Composition]]:
    vals = [(R_value(b, beta), b) for b in enumerate_compositions(theta, l)]
    best = min(v for v, _ in vals)
    return best, frozenset(b for v, b in vals if same_value(v, best))


def minimize_R(theta: int, l: int, beta, verify: bool = False) -> tuple[Composition, float | int]:
    """Minimize b_1^beta * (b_2^beta + ... + b_l^beta) over positive b summing to theta.

    The minimizer puts b_1 = 1 and spreads theta - 1 evenly over the rest.
    """
    if l < 3:
        raise ValueError(f"need l >= 3, got {l}")
    if beta < 1:
        raise ValueError(f"need beta >= 1, got {beta}")
    if theta < l:
        raise ValueError(f"need theta >= l, got theta={theta}, l={l}")
    b = (1,) + tuple(sorted(balanced_parts(theta - 1, l - 1)))
    value = R_value(b, beta)
    if verify:
        best, _ = exhaustive_min_R(theta, l, beta)
        if not same_value(best, value):
            raise VerificationError(f"minimize_R{theta, l, beta}: characterized {value}, exhaustive {best}")
    return b, value


def f_value(s: Sequence[int], q: int, beta) -> float | int:
    return sum(_pow(balanced_product(x, q), beta) for x in s)


def _sorted_vectors(theta: int, m: int, low: int) -> Iterator[Composition]:
    """Nondecreasing vectors of length m, entries >= low, summing to theta."""
    if m == 1:
        if theta >= low:
            yield (theta,)
        return
    for first in range(low, theta // m + 1):
        for rest in _sorted_vectors(theta - first, m - 1, first):
            yield (first,) + rest


def exhaustive_max_f(theta: int, m: int, q: int, beta) -> tuple[float | int, frozenset[Composition]]:
    vals = [(f_value(s, q, beta), s) for s in _sorted_vectors(theta, m, q)]
    best = max(v for v, _ in vals)
    return best, frozenset(s for v, s in vals if same_value(v, best))


def maximize_f(theta: int, m: int, q: int, beta, verify: bool = False) -> tuple[Composition, float | int]:
    """Maximize sum_i g_q(s_i)^beta over q <= s_1 <= ... <= s_m with sum theta.

    Optimum: every block but the last stays at its floor q.
    """
    if q < 2 or m < 2:
        raise ValueError(f"need q >= 2 and m >= 2, got q={q}, m={m}")
    if theta < m * q:
        raise ValueError(f"need theta >= m*q = {m * q}, got {theta}")
    if beta <= 1:
        raise ValueError(f"need beta > 1, got {beta}")
    s = (q,) * (m - 1) + (theta - (m - 1) * q,)
    value = f_value(s, q, beta)
    if verify:
        best, _ = exhaustive_max_f(theta, m, q, beta)
        if not same_value(best, value):
            raise VerificationError(f"maximize_f{theta, m, q, beta}: characterized {value}, exhaustive {best}")
    return s, value


@dataclass(frozen=True)
class ObjectiveScan:
    """Values of g_{r-q}(s)^b * (m - 1 + g_q(n - s - (m-1)q)^b), b = (r-1)/(r-q),
    for s over [r-q, n-mq]."""

    n: int
    m: int
    q: int
    r: int
    domain: tuple[int, int]
    values: tuple
    maxima: tuple[int, ...]
    exact: bool
    tolerance: float = SCAN_TIE_TOL

    def value_at(self, s: int):
        return self.values[s - self.domain[0]]

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "scan",
            "n": self.n,
            "m": self.m,
            "q": self.q,
            "r": self.r,
            "domain": list(self.domain),
            "values": list(self.values),
            "maxima": list(self.maxima),
            "exact": self.exact,
        }


def scan_eq14(n: int, m: int, q: int, r: int) -> ObjectiveScan:
    """Scan the one-parameter objective whose maximizers give the largest blow-ups."""
    if q < 2 or m < 2 or r < 3 or q >= r:
        raise ValueError(f"need q >= 2, m >= 2, r >= 3, q < r; got m={m}, q={q}, r={r}")
    lo, hi = r - q, n - m * q
    if hi < lo:
        raise ValueError(f"empty scan domain [{lo}, {hi}] for n={n}")
    beta = Fraction(r - 1, r - q)
    exact = beta.denominator == 1
    values = tuple(
        _pow(balanced_product(s, r - q), beta)
        * (m - 1 + _pow(balanced_product(n - s - (m - 1) * q, q), beta))
        for s in range(lo, hi + 1)
    )
    best = max(values)
    maxima = tuple(s for s, v in zip(range(lo, hi + 1), values) if same_value(v, best))
    return ObjectiveScan(n, m, q, r, (lo, hi), values, maxima, exact)


# ---------------------------------------------------------------- predicted extremal classes


def theorem5_classes(t: int, r: int, n: int) -> tuple[frozenset, frozenset]:
    G = complete_hypergraph(t, r)
    low = symmetry_closure(G, [(n - t + 1,) + (1,) * (t - 1)])
    high = symmetry_closure(G, [balanced_parts(n, t)])
    return low, high


def theorem41_classes(m: int, r: int, n: int) -> tuple[frozenset, frozenset]:
    """Predicted min/max classes in B_n(SH(m, 1, r))."""
    G = sunflower(m, 1, r)
    low = frozenset((1,) * (r - 1) + c for c in enumerate_compositions(n - r + 1, m))
    if n < m * r:
        kernel = balanced_parts(n - m, r - 1)
        high = symmetry_closure(G, [kernel + (1,) * m])
    else:
        target = sorted(balanced_parts(n, r))
        high = frozenset(
            c for c in enumerate_compositions(n, G.order)
            if sorted(c[: r - 1] + (sum(c[r - 1 :]),)) == target
        )
    return low, high


def theorem9_classes(m: int, q: int, r: int, n: int) -> tuple[frozenset, frozenset, ObjectiveScan]:
    """Predicted min/max classes in B_n(SH(m, q, r)) for q >= 2."""
    params = SunflowerParams(m, q, r)
    G = params.hypergraph()
    t = params.order
    designees = [p[-1] for p in params.petals]
    low = []
    for extra in set(itertools.permutations(balanced_parts(n - t + m, m))):
        c = [1] * t
        for v, val in zip(designees, extra):
            c[v - 1] = val
        low.append(tuple(c))
    scan = scan_eq14(n, m, q, r)
    high = []
    for p in scan.maxima:
        c = list(balanced_parts(p, r - q))
        for _ in range(m - 1):
            c.extend([1] * q)
        c.extend(balanced_parts(n - (m - 1) * q - p, q))
        high.append(tuple(c))
    return symmetry_closure(G, low), symmetry_closure(G, high), scan


# ---------------------------------------------------------------- verification


@dataclass
class VerificationReport:
    name: str
    params: dict
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def check(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append((label, bool(ok), detail))

    def compare_sets(self, label: str, found: frozenset, predicted: frozenset) -> None:
        missing = sorted(predicted - found)
        extra = sorted(found - predicted)
        detail = ""
        if missing or extra:
            detail = f"missing={missing[:6]} extra={extra[:6]}"
        self.check(label, not missing and not extra, detail)

    def line(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.params.items())
        status = "PASS" if self.passed else "FAIL"
        bad = "; ".join(f"{lab}: {d}" for lab, ok, d in self.checks if not ok)
        return f"[{status}] {self.name} {args}" + (f"  -- {bad}" if bad else "")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "passed": self.passed,
            "checks": [{"check": lab, "ok": ok, "detail": d} for lab, ok, d in self.checks],
        }


def verify_theorem5(t: int, r: int, n: int, evaluator: str = "solver", workers: int = 1) -> VerificationReport:
    report = VerificationReport("theorem5", {"t": t, "r": r, "n": n})
    G = complete_hypergraph(t, r)
    found = brute_force_extremal(G, n, evaluator, workers=workers)
    low, high = theorem5_classes(t, r, n)
    report.compare_sets("minimum class", found.min_set, low)
    report.compare_sets("maximum class", found.max_set, high)
    return report


def verify_theorem41(m: int, r: int, n: int, evaluator: str = "solver", workers: int = 1) -> VerificationReport:
    if m < 2 or r < 2 or n < r + m - 1:
        raise ValueError("need m >= 2, r >= 2 and n >= r + m - 1")
    report = VerificationReport("theorem41", {"m": m, "r": r, "n": n})
    G = sunflower(m, 1, r)
    found = brute_force_extremal(G, n, evaluator, workers=workers)
    low, high = theorem41_classes(m, r, n)
    report.compare_sets("minimum class", found.min_set, low)
    vals = [v for _, v in found.minima]
    spread = max(vals) - min(vals)
    report.check("minimum shared by all petal distributions", spread <= TIE_TOL * min(vals), f"spread={spread:.3e}")
    case = "n<mr" if n < m * r else "n>=mr"
    report.compare_sets(f"maximum class ({case})", found.max_set, high)
    return report


def verify_theorem9(m: int, q: int, r: int, n: int, evaluator: str = "solver", workers: int = 1) -> VerificationReport:
    if q < 2 or m < 2 or r < 3 or n < r + (m - 1) * q:
        raise ValueError("need q >= 2, m >= 2, r >= 3 and n >= r + (m-1)q")
    report = VerificationReport("theorem9", {"m": m, "q": q, "r": r, "n": n})
    G = sunflower(m, q, r)
    found = brute_force_extremal(G, n, evaluator, workers=workers)
    low, high, scan = theorem9_classes(m, q, r, n)
    report.params["scan_maxima"] = list(scan.maxima)
    report.compare_sets("minimum class", found.min_set, low)
    report.compare_sets("maximum class", found.max_set, high)
    return report


def shift_test(
    G: UniformHypergraph,
    parts: Sequence[int],
    i: int,
    j: int,
    tol: float = 1e-12,
) -> tuple[float, float]:
    """Spectral radius before and after moving one vertex from class i to class j."""
    parts = tuple(parts)
    if len(parts) != G.order:
        raise ShiftPreconditionError(f"expected {G.order} parts, got {len(parts)}")
    if i == j:
        raise ShiftPreconditionError("i and j must differ")
    if not G.adjacent(i, j):
        raise ShiftPreconditionError(f"vertices {i} and {j} are not adjacent")
    if not link_set(G, i, {j}) <= link_set(G, j, {i}):
        raise ShiftPreconditionError(f"link of {i} avoiding {j} is not contained in link of {j} avoiding {i}")
    if parts[i - 1] - parts[j - 1] < 2:
        raise ShiftPreconditionError(f"need n_i - n_j >= 2, got {parts[i - 1]} - {parts[j - 1]}")
    moved = list(parts)
    moved[i - 1] -= 1
    moved[j - 1] += 1
    results = quotient_spectral_radii(G, [parts, moved], tol=tol)
    for res in results:
        if not res.converged:
            raise ConvergenceError("shift test solve did not converge", res)
    return results[0].rho, results[1].rho

