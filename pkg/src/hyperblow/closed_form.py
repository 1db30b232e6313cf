"""Exact spectral radius of sunflower blow-ups and the balanced-product helper."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hypergraph import HypergraphError, SunflowerParams


@dataclass(frozen=True)
class SunflowerBlowup:
    """SH(m, q, r) o parts, with parts listed in sunflower vertex order
    (kernel first, then petal blocks)."""

    params: SunflowerParams
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != self.params.order:
            raise HypergraphError(f"SH{self.params.m, self.params.q, self.params.r} needs "
                                  f"{self.params.order} parts, got {len(parts)}")
        if any(p < 1 for p in parts):
            raise HypergraphError(f"all parts must be positive, got {parts}")

    @property
    def kernel_product(self) -> int:
        return math.prod(self.parts[k - 1] for k in self.params.kernel)

    @property
    def petal_products(self) -> tuple[int, ...]:
        return tuple(math.prod(self.parts[k - 1] for k in y) for y in self.params.petals)


def sunflower_rho(sb: SunflowerBlowup) -> float:
    """rho = P_X^{(r-1)/r} * (sum_l P_l^{(r-1)/(r-q)})^{(r-q)/r}.

    Evaluated in log space from exact integer products.
    """
    q, r = sb.params.q, sb.params.r
    if q >= r:
        raise HypergraphError("petal exponent is undefined for q >= r")
    outer = Fraction(r - 1, r)
    inner = Fraction(r - 1, r - q)
    tail = Fraction(r - q, r)
    logs = [float(inner) * math.log(p) for p in sb.petal_products]
    top = max(logs)
    log_sum = top + math.log(math.fsum(math.exp(v - top) for v in logs))
    return math.exp(float(outer) * math.log(sb.kernel_product) + float(tail) * log_sum)


@dataclass(frozen=True)
class BalancedSplit:
    """s = a*p + l with 0 <= l < p; the best product of p positive parts summing to s."""

    total: int
    slots: int

    def __post_init__(self):
        if self.slots < 1 or self.total < self.slots:
            raise HypergraphError(f"need s >= p >= 1, got s={self.total}, p={self.slots}")

    @property
    def quotient(self) -> int:
        return self.total // self.slots

    @property
    def remainder(self) -> int:
        return self.total % self.slots

    @property
    def value(self) -> int:
        a, l = self.quotient, self.remainder
        return a ** (self.slots - l) * (a + 1) ** l

    def parts(self) -> tuple[int, ...]:
        a, l = self.quotient, self.remainder
        return (a + 1,) * l + (a,) * (self.slots - l)


def balanced_product(s: int, p: int) -> int:
    """g_p(s) as an exact integer."""
    return BalancedSplit(s, p).value


def scaling_rho(rho_G: float, k: int, r: int) -> float:
    """Spectral radius of the uniform blow-up G o (k, ..., k)."""
    if k < 1 or r < 2 or rho_G < 0:
        raise ValueError("need k >= 1, r >= 2 and rho_G >= 0")
    return k ** (r - 1) * rho_G


def sunflower_rho_of(m: int, q: int, r: int, parts: Sequence[int]) -> float:
    return sunflower_rho(SunflowerBlowup(SunflowerParams(m, q, r), tuple(parts)))
