"""Named verification sweeps, each yielding one report per instance."""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .closed_form import scaling_rho
from .corpus import random_connected_hypergraph, random_shift_instance
from .extremal import (
    TIE_TOL,
    VerificationReport,
    same_value,
    exhaustive_max_f,
    exhaustive_min_R,
    f_value,
    minimize_R,
    scan_eq14,
    shift_test,
    verify_theorem5,
    verify_theorem9,
    verify_theorem41,
)
from .hypergraph import BlowupSpec, balanced_parts, blow_up, sunflower
from .spectral import quotient_spectral_radii, spectral_radius

BETAS = (1, 1.5, 2, 3)


def theorem5(ts: Sequence[int], rs: Sequence[int], n_max: int | None = None, **kw) -> Iterator[VerificationReport]:
    for t in ts:
        for r in rs:
            if not 2 <= r <= t:
                continue
            for n in range(t, (n_max if n_max is not None else t + 6) + 1):
                yield verify_theorem5(t, r, n, **kw)


def theorem41(ms: Sequence[int], rs: Sequence[int], n_max: int | None = None, **kw) -> Iterator[VerificationReport]:
    for m in ms:
        for r in rs:
            lo = r + m - 1
            for n in range(lo, (n_max if n_max is not None else r + m + 5) + 1):
                yield verify_theorem41(m, r, n, **kw)


def theorem9(ms, qs, rs, n_max: int | None = None, **kw) -> Iterator[VerificationReport]:
    for m in ms:
        for q in qs:
            for r in rs:
                if q < 2 or m < 2 or r < 3 or q >= r:
                    continue
                t = r + (m - 1) * q
                for n in range(t, (n_max if n_max is not None else t + 6) + 1):
                    yield verify_theorem9(m, q, r, n, **kw)


def lemma4(count: int = 100, seed: int = 0) -> Iterator[VerificationReport]:
    rng = np.random.default_rng(seed)
    for k in range(count):
        G, parts, i, j = random_shift_instance(rng)
        before, after = shift_test(G, parts, i, j)
        rep = VerificationReport("lemma4", {"base": f"r={G.rank},t={G.order},m={G.num_edges}",
                                            "parts": ",".join(map(str, parts)), "i": i, "j": j})
        rep.check("strict increase", after - before > 1e-9 * before, f"before={before!r} after={after!r}")
        yield rep


def lemma7(theta_max: int = 20, l_max: int = 5, betas=BETAS) -> Iterator[VerificationReport]:
    for l in range(3, l_max + 1):
        for beta in betas:
            rep = VerificationReport("lemma7", {"l": l, "beta": beta, "theta_max": theta_max})
            for theta in range(l, theta_max + 1):
                b, value = minimize_R(theta, l, beta)
                best, argmins = exhaustive_min_R(theta, l, beta)
                rep.check(f"theta={theta} value", same_value(value, best), f"{value} vs {best}")
                rep.check(f"theta={theta} minimizer attained", b in argmins)
                if beta > 1:
                    predicted = frozenset(c for c in argmins if c[0] == 1 and max(c[1:]) - min(c[1:]) <= 1)
                    rep.check(f"theta={theta} argmin set", predicted == argmins and len(predicted) > 0,
                              f"{sorted(argmins)[:4]}")
            yield rep


def lemma8(theta_max: int = 20, m_max: int = 4, qs=(2, 3, 4), betas=BETAS) -> Iterator[VerificationReport]:
    for m in range(2, m_max + 1):
        for q in qs:
            for beta in betas:
                rep = VerificationReport("lemma8", {"m": m, "q": q, "beta": beta, "theta_max": theta_max})
                for theta in range(m * q, theta_max + 1):
                    s = (q,) * (m - 1) + (theta - (m - 1) * q,)
                    value = f_value(s, q, beta)
                    best, argmaxes = exhaustive_max_f(theta, m, q, beta)
                    rep.check(f"theta={theta} value", same_value(value, best), f"{value} vs {best}")
                    rep.check(f"theta={theta} argmax set", argmaxes == {s}, f"{sorted(argmaxes)}")
                yield rep


def scan_family_parts(n: int, m: int, q: int, r: int, s: int) -> tuple[int, ...]:
    """The one-edge blow-up: kernel carries s, last petal the rest, other petals ones."""
    parts = list(balanced_parts(s, r - q))
    parts += [1] * (q * (m - 1))
    parts += balanced_parts(n - s - (m - 1) * q, q)
    return tuple(parts)


def scan(triples, n_extra: int = 6) -> Iterator[VerificationReport]:
    """Argmax of the scanned objective equals argmax of the solver over the same family."""
    for m, q, r in triples:
        t = r + (m - 1) * q
        for n in range(t, t + n_extra + 1):
            sc = scan_eq14(n, m, q, r)
            s_values = range(sc.domain[0], sc.domain[1] + 1)
            rows = [scan_family_parts(n, m, q, r, s) for s in s_values]
            rhos = [res.rho for res in quotient_spectral_radii(sunflower(m, q, r), rows)]
            top = max(rhos)
            solver_max = tuple(s for s, v in zip(s_values, rhos) if top - v <= TIE_TOL * top)
            rep = VerificationReport("scan", {"m": m, "q": q, "r": r, "n": n})
            rep.check("argmax agrees", solver_max == sc.maxima, f"scan={sc.maxima} solver={solver_max}")
            yield rep


def scaling(ks: Sequence[int] = (2, 3), count: int = 50, seed: int = 0, r: int = 3,
            t_max: int = 6) -> Iterator[VerificationReport]:
    rng = np.random.default_rng(seed)
    for k_inst in range(count):
        t = int(rng.integers(r, t_max + 1))
        G = random_connected_hypergraph(rng, t, r)
        base = spectral_radius(G)
        for k in ks:
            H, _ = blow_up(BlowupSpec(G, (k,) * t))
            got = spectral_radius(H).rho
            want = scaling_rho(base.rho, k, r)
            rep = VerificationReport("scaling", {"instance": k_inst, "t": t, "m": G.num_edges, "k": k})
            rep.check("k^(r-1) law", abs(got - want) <= 1e-8 * want, f"blow-up {got!r} vs {want!r}")
            yield rep


SUITES = ("theorem5", "theorem41", "theorem9", "lemma4", "lemma7", "lemma8", "scan", "scaling")
