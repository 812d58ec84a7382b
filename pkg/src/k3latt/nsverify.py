"""Divisibility and generator checks on user-supplied intersection data.

Configurations of curves come in as a labeled Gram matrix of intersection
numbers; candidate classes are integer combinations divided by n.  Reports
are granular (membership, norm, order, generated subgroup) so multi-part
hand computations can be cross-checked line by line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import (
    DimensionMismatch,
    GramMatrix,
    Vector,
    determinant,
    is_dual_vector,
    order_in_quotient,
    qnorm_mod2Z,
)


class InvalidConfig(ValueError):
    """Configuration data violates its declared constraints."""


@dataclass(frozen=True)
class CurveConfig:
    names: tuple[str, ...]
    gram: GramMatrix
    rational_curves: bool = False

    def __post_init__(self):
        if len(self.names) != self.gram.n:
            raise InvalidConfig("one label per basis curve required")
        if self.rational_curves:
            for i in range(self.gram.n):
                if self.gram.rows[i][i] != -2:
                    raise InvalidConfig(
                        f"curve {self.names[i]} has self-intersection "
                        f"{self.gram.rows[i][i]}, expected -2")


@dataclass(frozen=True)
class ClassReport:
    coeffs: tuple[int, ...]
    n: int
    in_dual: bool
    qnorm: Optional[Fraction]
    order: Optional[int]

    def line(self) -> str:
        frac = f"({' '.join(str(c) for c in self.coeffs)})/{self.n}"
        if not self.in_dual:
            return f"{frac}: NOT in dual"
        return f"{frac}: in dual, q = {self.qnorm} mod 2Z, order {self.order}"


def check_divisible_class(cfg: CurveConfig, coeffs: Sequence[int], n: int) -> ClassReport:
    """Membership, norm mod 2Z and quotient order of coeffs/n."""
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != cfg.gram.n:
        raise DimensionMismatch(
            f"expected {cfg.gram.n} coefficients, got {len(coeffs)}")
    if n < 1:
        raise ValueError("divisor n must be >= 1")
    v = tuple(Fraction(c, n) for c in coeffs)
    if not is_dual_vector(cfg.gram, v):
        return ClassReport(coeffs, n, False, None, None)
    return ClassReport(coeffs, n, True, qnorm_mod2Z(cfg.gram, v),
                       order_in_quotient(cfg.gram, v))


@dataclass(frozen=True)
class GeneratorsReport:
    classes: tuple[ClassReport, ...]
    subgroup_order: int
    expected_order: int

    @property
    def generates_full_group(self) -> bool:
        return self.subgroup_order == self.expected_order

    def lines(self) -> list[str]:
        out = [r.line() for r in self.classes]
        verdict = "generate" if self.generates_full_group else "do NOT generate"
        out.append(f"candidates {verdict} the discriminant group: "
                   f"subgroup order {self.subgroup_order} of {self.expected_order}")
        return out


def _mod1(v: Vector) -> Vector:
    return tuple(c % 1 for c in v)


def generators_report(cfg: CurveConfig,
                      candidates: Sequence[tuple[Sequence[int], int]]) -> GeneratorsReport:
    """Per-candidate reports plus the order of the subgroup they generate.

    The subgroup lives in L^dual/L, realized as vectors mod Z^n; closure
    under addition of the dual candidates computes its order exactly.
    """
    reports = tuple(check_divisible_class(cfg, coeffs, n) for coeffs, n in candidates)
    gens = [_mod1(tuple(Fraction(c, n) for c in r.coeffs))
            for r, (coeffs, n) in zip(reports, candidates) if r.in_dual]
    seen: set[Vector] = {tuple(Fraction(0) for _ in range(cfg.gram.n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = _mod1(tuple(a + b for a, b in zip(v, g)))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return GeneratorsReport(reports, len(seen), abs(determinant(cfg.gram)))
