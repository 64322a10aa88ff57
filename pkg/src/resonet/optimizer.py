"""Coupling-matrix refinement by deterministic parameter-sweep descent.

The cost pins the reflection zeros to their target prototype frequencies
and the band edges to the equiripple reflection level; it is zero exactly
when the matrix reproduces the target response. Descent sweeps the free
parameters cyclically with a shrinking step, mirroring the bench practice
of tuning one dimension at a time, and never accepts a worse iterate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coupling import CouplingMatrix
from .errors import InvalidSpecError, NumericalError
from .prototype import FilterSpec
from .response import s_parameters

_PALINDROME_RTOL = 1e-12

ParamKey = tuple
# ("m", i, j) with 1-based resonator indices, ("qe1",) or ("qen",)


@dataclass(frozen=True)
class CostConfig:
    """Targets the cost function drives the response toward."""

    zero_omegas: tuple[float, ...]
    edge_s11_mag: float
    edge_omega: float = 1.0

    def __post_init__(self):
        if not self.zero_omegas:
            raise InvalidSpecError("need at least one reflection-zero target")
        if not 0 <= self.edge_s11_mag < 1:
            raise InvalidSpecError("edge reflection target must lie in [0, 1)")

    @classmethod
    def from_spec(cls, spec: FilterSpec) -> "CostConfig":
        """Equiripple targets: zeros at cos((2i-1) pi / 2n) and band-edge
        reflection eps / sqrt(1 + eps^2) from the ripple value."""
        n = spec.order
        zeros = tuple(math.cos((2 * i - 1) * math.pi / (2 * n)) for i in range(1, n + 1))
        eps = math.sqrt(10.0 ** (spec.ripple_db / 10.0) - 1.0)
        return cls(zero_omegas=zeros, edge_s11_mag=eps / math.sqrt(1.0 + eps * eps))


def cost(cm: CouplingMatrix, config: CostConfig) -> float:
    """Scalar mismatch between the matrix response and the targets.

    Sum of |S11|^2 at every target reflection zero plus the squared error
    of |S11| against the equiripple level at both band edges. Non-negative
    and zero only for an exact equiripple response.
    """
    total = 0.0
    for z in config.zero_omegas:
        s11, _ = s_parameters(cm, 1j * z)
        total += abs(s11) ** 2
    for sign in (1.0, -1.0):
        s11, _ = s_parameters(cm, 1j * sign * config.edge_omega)
        total += (abs(s11) - config.edge_s11_mag) ** 2
    return total


def ladder_free_parameters(order: int, include_qe: bool = False) -> tuple[ParamKey, ...]:
    """The usual free set: every superdiagonal coupling, optionally both qe."""
    params: list[ParamKey] = [("m", i, i + 1) for i in range(1, order)]
    if include_qe:
        params += [("qe1",), ("qen",)]
    return tuple(params)


def _normalize_key(key, n: int, allow_cross: bool) -> ParamKey:
    if key in (("qe1",), ("qen",)):
        return key
    if len(key) == 3 and key[0] == "m":
        i, j = int(key[1]), int(key[2])
        if i > j:
            i, j = j, i
        if not 1 <= i <= j <= n:
            raise InvalidSpecError(f"matrix position {key} outside order {n}")
        if not allow_cross and j - i > 1:
            raise InvalidSpecError(
                f"cross coupling {key} requires allow_cross_couplings=True"
            )
        return ("m", i, j)
    raise InvalidSpecError(f"unknown free parameter {key!r}")


@dataclass(frozen=True)
class OptimizationProblem:
    """A coupling matrix, the spec it should meet, and what may vary.

    Symmetric matrix positions always vary jointly; free parameters stay
    on the ladder superdiagonal, the diagonal, or the qe slots unless
    allow_cross_couplings widens the set.
    """

    initial: CouplingMatrix
    spec: FilterSpec
    free_parameters: tuple[ParamKey, ...]
    cost_config: CostConfig
    allow_cross_couplings: bool = False

    def __post_init__(self):
        if not self.free_parameters:
            raise InvalidSpecError("need at least one free parameter")
        seen: list[ParamKey] = []
        for key in self.free_parameters:
            norm = _normalize_key(tuple(key), self.initial.n, self.allow_cross_couplings)
            if norm not in seen:
                seen.append(norm)
        object.__setattr__(self, "free_parameters", tuple(seen))


@dataclass(frozen=True)
class OptimizationResult:
    final: CouplingMatrix
    final_cost: float
    iterations: int
    converged: bool


class _State:
    def __init__(self, cm: CouplingMatrix):
        self.m = np.array(cm.m, dtype=float)
        self.qe1 = cm.qe1
        self.qen = cm.qen

    def get(self, key: ParamKey) -> float:
        if key == ("qe1",):
            return self.qe1
        if key == ("qen",):
            return self.qen
        return self.m[key[1] - 1, key[2] - 1]

    def set(self, key: ParamKey, value: float) -> None:
        if key == ("qe1",):
            self.qe1 = value
        elif key == ("qen",):
            self.qen = value
        else:
            self.m[key[1] - 1, key[2] - 1] = value
            self.m[key[2] - 1, key[1] - 1] = value

    def matrix(self) -> CouplingMatrix:
        return CouplingMatrix(m=self.m, qe1=self.qe1, qen=self.qen)


def _mirror_key(key: ParamKey, n: int) -> ParamKey:
    if key == ("qe1",):
        return ("qen",)
    if key == ("qen",):
        return ("qe1",)
    i, j = n + 1 - key[2], n + 1 - key[1]
    return ("m", i, j)


def _is_palindromic(problem: OptimizationProblem) -> bool:
    cm = problem.initial
    flipped = cm.m[::-1, ::-1].T
    scale = max(np.abs(cm.m).max(), 1e-30)
    if np.abs(cm.m - flipped).max() > _PALINDROME_RTOL * scale:
        return False
    if abs(cm.qe1 - cm.qen) > _PALINDROME_RTOL * max(cm.qe1, cm.qen):
        return False
    free = set(problem.free_parameters)
    return all(_mirror_key(k, cm.n) in free for k in free)


def _orbits(problem: OptimizationProblem) -> list[tuple[ParamKey, ...]]:
    # For a palindromic problem, mirrored parameters move as one coordinate
    # so symmetry survives every intermediate iterate, not just the limit.
    if not _is_palindromic(problem):
        return [(key,) for key in problem.free_parameters]
    n = problem.initial.n
    orbits: list[tuple[ParamKey, ...]] = []
    used: set[ParamKey] = set()
    for key in problem.free_parameters:
        if key in used:
            continue
        mirror = _mirror_key(key, n)
        orbit = (key,) if mirror == key else (key, mirror)
        used.update(orbit)
        orbits.append(orbit)
    return orbits


def _checked_cost(state: _State, config: CostConfig) -> float:
    value = cost(state.matrix(), config)
    if math.isnan(value):
        raise NumericalError("cost evaluated to NaN")
    return value


def optimize(
    problem: OptimizationProblem,
    max_iter: int = 2000,
    tol: float = 1e-10,
    step_floor: float = 1e-9,
    initial_step: float = 0.05,
    method: str = "sweep",
    on_iteration: Callable[[int, float, float], None] | None = None,
) -> OptimizationResult:
    """Minimize the cost over the free parameters.

    The default "sweep" method is cyclic coordinate descent: each sweep
    tries a positive then a negative step on every free coordinate,
    accepting only improvements; a sweep with no improvement halves every
    step. Converged means the cost fell below tol or every step hit the
    relative step floor; exhausting max_iter returns converged=False
    rather than raising. Identical problems give bit-identical results.

    "nelder-mead" delegates to the scipy simplex implementation as a
    fallback for awkward landscapes; it shares the cost and convergence
    thresholds but not the per-sweep monotonicity guarantee.

    on_iteration, when given, is called after each sweep with
    (iteration, cost, max_step).
    """
    if int(max_iter) != max_iter or max_iter < 1:
        raise InvalidSpecError(f"max_iter must be an integer >= 1, got {max_iter}")
    if method not in ("sweep", "nelder-mead"):
        raise InvalidSpecError(f"unknown method {method!r}")

    state = _State(problem.initial)
    orbits = _orbits(problem)
    current = _checked_cost(state, problem.cost_config)

    if method == "nelder-mead":
        return _optimize_nelder_mead(problem, state, orbits, current, max_iter, tol, step_floor)

    steps = [
        initial_step * abs(state.get(orbit[0])) or 0.01 for orbit in orbits
    ]
    iterations = 0
    converged = current <= tol
    while not converged and iterations < max_iter:
        iterations += 1
        improved = False
        for oi, orbit in enumerate(orbits):
            old = state.get(orbit[0])
            for sign in (1.0, -1.0):
                candidate = old + sign * steps[oi]
                for key in orbit:
                    state.set(key, candidate)
                trial = _checked_cost(state, problem.cost_config)
                if trial < current:
                    current = trial
                    improved = True
                    break
                for key in orbit:
                    state.set(key, old)
        if on_iteration is not None:
            on_iteration(iterations, current, max(steps))
        if current <= tol:
            converged = True
            break
        if not improved:
            steps = [st / 2.0 for st in steps]
            floors = [
                step_floor * max(1.0, abs(state.get(orbit[0])))
                for orbit in orbits
            ]
            if all(st < fl for st, fl in zip(steps, floors)):
                converged = True
                break

    return OptimizationResult(
        final=state.matrix(),
        final_cost=current,
        iterations=iterations,
        converged=converged,
    )


def _optimize_nelder_mead(problem, state, orbits, initial_cost, max_iter, tol, step_floor):
    from scipy.optimize import minimize

    def fun(x: Sequence[float]) -> float:
        for orbit, value in zip(orbits, x):
            for key in orbit:
                state.set(key, value)
        return _checked_cost(state, problem.cost_config)

    x0 = np.array([state.get(orbit[0]) for orbit in orbits])
    res = minimize(
        fun,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": max_iter * max(len(orbits), 1) * 4,
            "fatol": tol,
            "xatol": step_floor * max(1.0, np.abs(x0).max()),
        },
    )
    final_cost = fun(res.x) if res.fun <= initial_cost else fun(x0)
    return OptimizationResult(
        final=state.matrix(),
        final_cost=final_cost,
        iterations=int(res.nit),
        converged=bool(final_cost <= tol or res.success),
    )
