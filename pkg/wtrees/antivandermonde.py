"""Weighted power-sum ("anti-Vandermonde") systems of a type.

Placing the heaviest white vertex at 0 and the heaviest black vertex at 1,
matching the top s+t-2 coefficients of prod (z-a)^k and prod (z-b)^l is
equivalent to the power-sum equations

    sum k_a x_a^r - sum l_b y_b^r - l_t = 0,   r = 1..s+t-2,

because the q_r polynomials turn signed coefficients into weighted power sums.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import repeat
from typing import Any, Optional, Sequence

import numpy as np
import sympy as sp

from .core.weights import WeightedType, weight_document
from .errors import NoConvergence


def _rational(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def _truncated_product(a: Sequence[sp.Expr], b: Sequence[sp.Expr], order: int) -> list[sp.Expr]:
    return [sp.expand(sum((a[j] * b[k - j] for j in range(k + 1)), sp.Integer(0))) for k in range(order + 1)]


@dataclass(frozen=True)
class QPolynomial:
    """q_i with q_i(s_1..s_i) = sum k_a a_a^i, where s_r are the signed coefficients of prod (x-a)^k."""

    index: int
    poly: sp.Poly

    @property
    def symbols(self) -> tuple[sp.Symbol, ...]:
        return tuple(self.poly.gens)

    def as_expr(self) -> sp.Expr:
        return self.poly.as_expr()

    def substitute(self, values: Sequence[Any]) -> sp.Expr:
        return self.as_expr().xreplace(dict(zip(self.symbols, values)))

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        value = sp.Rational(self.substitute([_rational(Fraction(v)) for v in values]))
        return Fraction(int(value.p), int(value.q))

    def __str__(self) -> str:
        return str(self.as_expr())


@lru_cache(maxsize=None)
def newton_q(i: int) -> QPolynomial:
    """q_i from log(1 - s_1 x + s_2 x^2 - ...) = -sum_r (p_r / r) x^r, read at x^i."""
    if i < 1:
        raise ValueError("q_i is defined for i >= 1")
    xs = sp.symbols(f"x_1:{i + 1}")
    u = [sp.Integer(0)] + [(-1) ** r * xs[r - 1] for r in range(1, i + 1)]
    power: list[sp.Expr] = [sp.Integer(1)] + [sp.Integer(0)] * i
    log_coefficient: sp.Expr = sp.Integer(0)
    for m in range(1, i + 1):
        power = _truncated_product(power, u, i)
        log_coefficient += sp.Rational((-1) ** (m + 1), m) * power[i]
    return QPolynomial(i, sp.Poly(sp.expand(-i * log_coefficient), *xs, domain=sp.QQ))


def signed_coefficients(pairs: Sequence[tuple[Any, Any]], order: int) -> list[sp.Expr]:
    """s_0..s_order of prod (x - a)^k, i.e. (-1)^r [x^r] prod (1 - a x)^k; rational k use the binomial series."""
    series: list[sp.Expr] = [sp.Integer(1)] + [sp.Integer(0)] * order
    for k, a in pairs:
        factor = [sp.binomial(k, r) * (-a) ** r for r in range(order + 1)]
        series = _truncated_product(series, factor, order)
    return [sp.expand((-1) ** r * c) for r, c in enumerate(series)]


@dataclass(frozen=True)
class AVSystem:
    wtype: WeightedType
    white_unknowns: tuple[sp.Symbol, ...]
    black_unknowns: tuple[sp.Symbol, ...]
    white_coefficients: tuple[Fraction, ...]
    black_coefficients: tuple[Fraction, ...]
    pinned_black_weight: Fraction
    pinned_white_index: int
    pinned_black_index: int
    equations: tuple[sp.Expr, ...]

    @property
    def unknowns(self) -> tuple[sp.Symbol, ...]:
        return self.white_unknowns + self.black_unknowns

    @property
    def size(self) -> int:
        return len(self.equations)

    @property
    def degenerate(self) -> bool:
        return self.size == 0

    @property
    def bezout_bound(self) -> int:
        return math.factorial(self.size)

    def to_text(self) -> str:
        return "\n".join(f"{eq} = 0" for eq in self.equations)

    def to_document(self) -> dict[str, Any]:
        equations = []
        for eq in self.equations:
            poly = sp.Poly(eq, *self.unknowns, domain=sp.QQ)
            monomials = [
                {
                    "coefficient": weight_document(Fraction(int(c.p), int(c.q))),
                    "exponents": {str(sym): e for sym, e in zip(self.unknowns, exps) if e},
                }
                for exps, c in poly.terms()
            ]
            equations.append({"monomials": monomials})
        return {
            "type": self.wtype.literal(),
            "unknowns": [str(sym) for sym in self.unknowns],
            "pinned": {"white": self.pinned_white_index, "black": self.pinned_black_index},
            "bezoutBound": self.bezout_bound,
            "equations": equations,
        }


def build_system(wtype: WeightedType) -> AVSystem:
    """Pin the last (heaviest) white vertex at 0 and the last black one at 1; s+t-2 equations."""
    s, t = wtype.s, wtype.t
    xs = tuple(sp.symbols(f"x_1:{s}")) if s > 1 else ()
    ys = tuple(sp.symbols(f"y_1:{t}")) if t > 1 else ()
    ks, ls, lt = wtype.white[:-1], wtype.black[:-1], wtype.black[-1]
    equations = tuple(
        sum((_rational(k) * x**r for k, x in zip(ks, xs)), sp.Integer(0))
        - sum((_rational(l) * y**r for l, y in zip(ls, ys)), sp.Integer(0))
        - _rational(lt)
        for r in range(1, s + t - 1)
    )
    return AVSystem(wtype, xs, ys, ks, ls, lt, s - 1, t - 1, equations)


@dataclass(frozen=True)
class ReductionStep:
    r: int
    white_coefficient: sp.Expr
    black_coefficient: sp.Expr
    power_sum: sp.Expr
    verified: bool


def raw_system(system: AVSystem) -> list[tuple[sp.Expr, sp.Expr]]:
    """Coefficient-matching form s_r = t_r, r = 1..s+t-2, before the q_r reduction."""
    wtype = system.wtype
    white = [(_rational(k), x) for k, x in zip(system.white_coefficients, system.white_unknowns)]
    white.append((_rational(wtype.white[-1]), sp.Integer(0)))
    black = [(_rational(l), y) for l, y in zip(system.black_coefficients, system.black_unknowns)]
    black.append((_rational(system.pinned_black_weight), sp.Integer(1)))
    s_coeffs = signed_coefficients(white, system.size)
    t_coeffs = signed_coefficients(black, system.size)
    return [(s_coeffs[r], t_coeffs[r]) for r in range(1, system.size + 1)]


def reduction_report(system: AVSystem) -> list[ReductionStep]:
    """Check that q_r(s) - q_r(t) is exactly the r-th power-sum equation."""
    raw = raw_system(system)
    s_coeffs = [lhs for lhs, _ in raw]
    t_coeffs = [rhs for _, rhs in raw]
    steps = []
    for r in range(1, system.size + 1):
        q = newton_q(r)
        difference = q.substitute(s_coeffs[:r]) - q.substitute(t_coeffs[:r])
        verified = sp.expand(difference - system.equations[r - 1]) == 0
        steps.append(ReductionStep(r, raw[r - 1][0], raw[r - 1][1], system.equations[r - 1], verified))
    return steps


@dataclass(frozen=True)
class SolverConfig:
    starts: int = 500
    tol: float = 1e-10
    dedup_radius: float = 1e-6
    seed: int = 0
    max_iter: int = 100
    max_halvings: int = 20
    radius: float = 3.0
    center: complex = 0.5
    jobs: int = 1


@dataclass(frozen=True)
class Solution:
    point: tuple[complex, ...]
    residual: float

    def to_document(self) -> dict[str, Any]:
        return {"point": [[z.real, z.imag] for z in self.point], "residual": self.residual}


@dataclass(frozen=True)
class SolveResult:
    """Distinct finite solutions found; a lower bound on the true count."""

    solutions: tuple[Solution, ...]
    starts: int
    converged: int

    @property
    def count(self) -> int:
        return len(self.solutions)


class _Residual:
    def __init__(self, system: AVSystem):
        self.coefficients = np.array(
            [float(k) for k in system.white_coefficients] + [-float(l) for l in system.black_coefficients],
            dtype=complex,
        )
        self.constant = float(system.pinned_black_weight)
        self.orders = np.arange(1, system.size + 1)

    def value(self, z: np.ndarray) -> np.ndarray:
        return (z[None, :] ** self.orders[:, None]) @ self.coefficients - self.constant

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        r = self.orders[:, None]
        return r * self.coefficients[None, :] * z[None, :] ** (r - 1)


def _newton(residual: _Residual, z: np.ndarray, config: SolverConfig) -> Optional[np.ndarray]:
    f = residual.value(z)
    norm = float(np.max(np.abs(f)))
    for _ in range(config.max_iter):
        if norm < config.tol:
            return z
        try:
            step = np.linalg.solve(residual.jacobian(z), -f)
        except np.linalg.LinAlgError:
            return None
        scale = 1.0
        for _ in range(config.max_halvings + 1):
            trial = z + scale * step
            f_trial = residual.value(trial)
            trial_norm = float(np.max(np.abs(f_trial)))
            if np.isfinite(trial_norm) and trial_norm < norm:
                break
            scale /= 2
        else:
            return None
        z, f, norm = trial, f_trial, trial_norm
    return z if norm < config.tol else None


def _newton_batch(system: AVSystem, starts: np.ndarray, config: SolverConfig) -> list[np.ndarray]:
    residual = _Residual(system)
    found = []
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for z0 in starts:
            z = _newton(residual, z0, config)
            if z is not None:
                found.append(z)
    return found


def _sort_key(z: np.ndarray) -> tuple[float, ...]:
    return tuple(v for c in z for v in (float(c.real), float(c.imag)))


def solve_multistart(system: AVSystem, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Damped complex Newton from random starts; converged points merged within `dedup_radius`."""
    if system.degenerate:
        return SolveResult((Solution((), 0.0),), starts=0, converged=0)

    rng = np.random.default_rng(config.seed)
    shape = (config.starts, system.size)
    radius = config.radius * np.sqrt(rng.random(shape))
    angle = 2 * np.pi * rng.random(shape)
    starts = config.center + radius * np.exp(1j * angle)

    if config.jobs > 1 and config.starts >= 2 * config.jobs:
        chunks = np.array_split(starts, config.jobs)
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            converged = [z for part in pool.map(_newton_batch, repeat(system), chunks, repeat(config)) for z in part]
    else:
        converged = _newton_batch(system, starts, config)

    if not converged:
        raise NoConvergence(f"none of {config.starts} starts converged for {system.wtype}")

    residual = _Residual(system)
    kept: list[np.ndarray] = []
    for z in sorted(converged, key=_sort_key):
        if all(np.max(np.abs(z - other)) > config.dedup_radius for other in kept):
            kept.append(z)
    solutions = tuple(
        Solution(tuple(complex(c) for c in z), float(np.max(np.abs(residual.value(z))))) for z in kept
    )
    return SolveResult(solutions, starts=config.starts, converged=len(converged))


def exact_residual(system: AVSystem, point: Sequence[complex]) -> float:
    """Max |equation| with the point's float coordinates taken as exact rationals."""
    if system.degenerate:
        return 0.0
    values = {
        sym: _rational(Fraction(z.real)) + sp.I * _rational(Fraction(z.imag)) for sym, z in zip(system.unknowns, point)
    }
    return max(float(sp.Abs(sp.expand(eq.xreplace(values)))) for eq in system.equations)
