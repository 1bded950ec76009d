"""Attainable sets of small controlled systems.

Two systems are provided:

* ``Trivial(c)``: ``x1(t) = c`` is frozen and ``dx2/dt = u``. Its
  attainable set at any horizon is the line ``{c} x R``.
* ``Schrodinger(n_grid, dt)``: the bilinear equation
  ``i phi_t = -phi_xx - p(t) x phi`` on ``(0, 1)`` with zero Dirichlet
  ends, discretised by second-order differences on ``n_grid`` interior
  nodes and stepped with Crank-Nicolson.

Controls are piecewise constant with ``segments`` equal pieces on
``[0, T]`` and values in ``[-amplitude, amplitude]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BadInterval,
    EmptyCloud,
    InconsistentDimensions,
    MisalignedSegments,
    NonfiniteState,
    TooManyCells,
)
from .setcore import MAX_UNIVERSE, Subset, Universe
from .topology import discrete_topology, is_dense, mu_topology, separation_profile

@dataclass(frozen=True)
class Trivial:
    c: float = 1.0


@dataclass(frozen=True)
class Schrodinger:
    n_grid: int = 63
    dt: float = 1e-3

    def __post_init__(self):
        if self.n_grid < 3:
            raise ValueError("need at least 3 interior grid nodes")
        if not self.dt > 0:
            raise ValueError("dt must be positive")

    @property
    def h(self) -> float:
        return 1.0 / (self.n_grid + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.n_grid + 1)


@dataclass(frozen=True)
class ControlledSystem:
    kind: Trivial | Schrodinger
    segments: int = 4
    amplitude: float = 5.0

    def __post_init__(self):
        if self.segments < 1:
            raise ValueError("need at least one control segment")
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")

    def to_json(self) -> dict:
        kind = self.kind
        out: dict = {"segments": self.segments, "amplitude": self.amplitude}
        if isinstance(kind, Trivial):
            out.update(kind="trivial", c=kind.c)
        else:
            out.update(kind="schrodinger", n_grid=kind.n_grid, dt=kind.dt)
        return out


def trivial_system(c: float = 1.0, segments: int = 1, amplitude: float = 1.0) -> ControlledSystem:
    return ControlledSystem(Trivial(c), segments, amplitude)


def schrodinger_system(
    n_grid: int = 63, dt: float = 1e-3, segments: int = 4, amplitude: float = 5.0
) -> ControlledSystem:
    return ControlledSystem(Schrodinger(n_grid, dt), segments, amplitude)


def l2_norm(phi: np.ndarray) -> float:
    """Discrete L2 norm on the uniform interior grid of ``len(phi)`` nodes."""
    h = 1.0 / (len(phi) + 1)
    return math.sqrt(h * float(np.sum(np.abs(phi) ** 2)))


def sine_state(n_grid: int = 63) -> np.ndarray:
    """Ground state ``sin(pi x)`` sampled on the grid, unit discrete norm."""
    x = np.arange(1, n_grid + 1) / (n_grid + 1)
    phi = np.sin(np.pi * x).astype(complex)
    return phi / l2_norm(phi)


def smooth_state(n_grid: int = 63) -> np.ndarray:
    """``sin(pi x)^3`` with unit discrete norm.

    Its first two derivatives vanish at both ends, so the bilinear term
    ``x phi`` stays compatible with the Dirichlet boundary and the
    Crank-Nicolson error shows its full second order. ``sin(pi x)`` alone
    does not: with a nonzero control the observed order drops to about 5/3.
    """
    x = np.arange(1, n_grid + 1) / (n_grid + 1)
    phi = (np.sin(np.pi * x) ** 3).astype(complex)
    return phi / l2_norm(phi)


def zero_state(n_grid: int = 63) -> np.ndarray:
    return np.zeros(n_grid, dtype=complex)


def _steps_per_segment(kind: Schrodinger, segments: int, T: float) -> int:
    ratio = T / (segments * kind.dt)
    k = round(ratio)
    if k < 1 or abs(ratio - k) > 1e-9 * max(1.0, ratio):
        raise MisalignedSegments(
            f"T/(segments*dt) = {ratio!r} must be a positive integer so segments align with steps"
        )
    return k


def _thomas_factor(lower: complex, diag: np.ndarray, upper: complex) -> tuple[np.ndarray, np.ndarray]:
    """Forward-elimination coefficients for a constant off-diagonal tridiagonal matrix."""
    n = diag.size
    cprime = np.empty(n - 1, dtype=complex)
    denom = np.empty(n, dtype=complex)
    denom[0] = diag[0]
    for i in range(n - 1):
        cprime[i] = upper / denom[i]
        denom[i + 1] = diag[i + 1] - lower * cprime[i]
    return cprime, denom


def _thomas_solve(lower: complex, cprime: np.ndarray, denom: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    n = rhs.size
    y = np.empty(n, dtype=complex)
    y[0] = rhs[0] / denom[0]
    for i in range(1, n):
        y[i] = (rhs[i] - lower * y[i - 1]) / denom[i]
    for i in range(n - 2, -1, -1):
        y[i] -= cprime[i] * y[i + 1]
    return y


def _simulate_schrodinger(
    kind: Schrodinger, control: np.ndarray, phi0: np.ndarray, T: float
) -> list[np.ndarray]:
    per_seg = _steps_per_segment(kind, control.size, T)
    h2 = kind.h**2
    x = kind.nodes
    r = 0.5j * kind.dt
    off = -1.0 / h2
    phi = np.array(phi0, dtype=complex)
    out = [phi.copy()]
    with np.errstate(over="ignore", invalid="ignore"):
        for p in control:
            # H = -D2 - p x, real symmetric; CN: (I + r H) phi' = (I - r H) phi
            hdiag = 2.0 / h2 - p * x
            cprime, denom = _thomas_factor(r * off, 1.0 + r * hdiag, r * off)
            bdiag = 1.0 - r * hdiag
            boff = -r * off
            for _ in range(per_seg):
                rhs = bdiag * phi
                rhs[1:] += boff * phi[:-1]
                rhs[:-1] += boff * phi[1:]
                phi = _thomas_solve(r * off, cprime, denom, rhs)
                out.append(phi)
    if not np.all(np.isfinite(phi)):
        raise NonfiniteState("amplitudes overflowed; reduce dt")
    return out


def _simulate_trivial(kind: Trivial, control: np.ndarray, x0: np.ndarray, T: float) -> list[np.ndarray]:
    seg = T / control.size
    x2 = float(x0[1])
    out = [np.array([kind.c, x2])]
    for u in control:
        x2 = x2 + float(u) * seg
        out.append(np.array([kind.c, x2]))
    return out


def _check_state(system: ControlledSystem, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    kind = system.kind
    expected = 2 if isinstance(kind, Trivial) else kind.n_grid
    if x.shape != (expected,):
        raise InconsistentDimensions(f"state has shape {x.shape}, expected ({expected},)")
    return x


def simulate(system: ControlledSystem, control: Sequence[float], x0, T: float) -> list[np.ndarray]:
    """Trajectory from ``x0`` under a piecewise-constant control.

    Returns the state at every step boundary, ``x0`` first. The trivial
    system is updated analytically per segment and its first coordinate is
    pinned to ``c``. The Schrodinger system takes ``T/dt`` Crank-Nicolson
    steps; ``T/(segments*dt)`` must be an integer.
    """
    control = np.asarray(control, dtype=float).ravel()
    if control.size != system.segments:
        raise InconsistentDimensions(f"control has {control.size} values, system expects {system.segments}")
    if not T > 0:
        raise ValueError("T must be positive")
    x0 = _check_state(system, x0)
    if isinstance(system.kind, Trivial):
        return _simulate_trivial(system.kind, control, x0, T)
    return _simulate_schrodinger(system.kind, control, x0, T)


def terminal_state(system: ControlledSystem, control: Sequence[float], x0, T: float) -> np.ndarray:
    return simulate(system, control, x0, T)[-1]


def probability(phi: np.ndarray, a: float, b: float) -> float:
    """Trapezoidal estimate of the integral of ``|phi|^2`` over ``[a, b]``.

    The boundary zeros at x = 0 and x = 1 are included; endpoints between
    nodes are handled by linear interpolation of the density.
    """
    if not 0.0 <= a < b <= 1.0:
        raise BadInterval(f"need 0 <= a < b <= 1, got ({a}, {b})")
    n = len(phi)
    xs = np.arange(n + 2) / (n + 1)
    dens = np.concatenate(([0.0], np.abs(np.asarray(phi)) ** 2, [0.0]))
    inner = (xs > a) & (xs < b)
    px = np.concatenate(([a], xs[inner], [b]))
    py = np.concatenate(([np.interp(a, xs, dens)], dens[inner], [np.interp(b, xs, dens)]))
    return float(np.trapezoid(py, px))


@dataclass(frozen=True)
class Sample:
    control: tuple[float, ...]
    terminal: np.ndarray


@dataclass(frozen=True)
class AttainableCloud:
    system: ControlledSystem
    horizon: float
    x0: np.ndarray
    samples: tuple[Sample, ...]
    seed: int | None = None

    def __len__(self) -> int:
        return len(self.samples)

    def terminals(self) -> np.ndarray:
        return np.array([s.terminal for s in self.samples])

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "T": self.horizon,
            "seed": self.seed,
            "K": len(self.samples),
            "x0": state_to_json(self.x0),
            "samples": [
                {"control": list(s.control), "terminal": state_to_json(s.terminal)} for s in self.samples
            ],
        }


def state_to_json(x: np.ndarray) -> list:
    x = np.asarray(x)
    if np.iscomplexobj(x):
        return [[float(v.real), float(v.imag)] for v in x]
    return [float(v) for v in x]


def cloud_from_controls(
    system: ControlledSystem, x0, T: float, controls: Sequence[Sequence[float]], seed: int | None = None
) -> AttainableCloud:
    x0 = _check_state(system, x0)
    samples = []
    for control in controls:
        control = tuple(float(u) for u in np.asarray(control, dtype=float).ravel())
        samples.append(Sample(control, terminal_state(system, control, x0, T)))
    return AttainableCloud(system, T, x0, tuple(samples), seed)


def attainable_cloud(system: ControlledSystem, x0, T: float, K: int, seed: int = 0) -> AttainableCloud:
    """Terminal states for ``K`` controls drawn uniformly from ``[-P, P]^m``."""
    if K < 1:
        raise ValueError("K must be at least 1")
    rng = np.random.default_rng(seed)
    controls = rng.uniform(-system.amplitude, system.amplitude, size=(K, system.segments))
    return cloud_from_controls(system, x0, T, controls, seed)


@dataclass(frozen=True)
class TrivialGrid:
    """Cells at ``lo, lo+step, ..., hi`` for the free coordinate ``x2``.

    ``x1_values`` adds rows for the frozen coordinate; by default the only
    row is ``x1 = c``. Cells are numbered row-major. Samples are assigned
    to the nearest cell, so points outside the window land on an edge.
    """

    lo: float
    hi: float
    step: float
    x1_values: tuple[float, ...] | None = None

    @property
    def values(self) -> np.ndarray:
        count = int(round((self.hi - self.lo) / self.step)) + 1
        return self.lo + self.step * np.arange(count)


@dataclass(frozen=True)
class ProbabilityBins:
    """Bins of ``P(a, b; T)`` for each interval; cells are bin tuples."""

    intervals: tuple[tuple[float, float], ...]
    width: float

    @property
    def bins(self) -> int:
        return max(1, math.ceil(1.0 / self.width - 1e-9))


def quantize(cloud: AttainableCloud, features: TrivialGrid | ProbabilityBins) -> tuple[Universe, Subset]:
    """Cell universe of the feature grid and the cells hit by the cloud."""
    if not cloud.samples:
        raise EmptyCloud("cloud has no samples")
    trivial = isinstance(cloud.system.kind, Trivial)
    if isinstance(features, TrivialGrid):
        if not trivial:
            raise InconsistentDimensions("grid features apply to the trivial system only")
        values = features.values
        c = cloud.system.kind.c
        rows = np.asarray(features.x1_values if features.x1_values is not None else (c,), dtype=float)
        count = int(rows.size * values.size)
        if count > MAX_UNIVERSE:
            raise TooManyCells(f"{count} cells exceed {MAX_UNIVERSE}")
        labels = tuple(f"({r:g}, {v:g})" for r in rows for v in values)
        hits = set()
        for s in cloud.samples:
            row = int(np.argmin(np.abs(rows - s.terminal[0])))
            idx = int(round((s.terminal[1] - features.lo) / features.step))
            hits.add(row * values.size + min(max(idx, 0), values.size - 1))
        universe = Universe(count, labels)
        return universe, Subset.of(universe, hits)

    if trivial:
        raise InconsistentDimensions("probability features apply to the Schrodinger system only")
    nb = features.bins
    k = len(features.intervals)
    count = nb**k
    if count > MAX_UNIVERSE:
        raise TooManyCells(f"{count} cells exceed {MAX_UNIVERSE}")
    hits = set()
    for s in cloud.samples:
        cell = 0
        for i, (a, b) in enumerate(features.intervals):
            p = probability(s.terminal, a, b)
            cell += min(int(p / features.width), nb - 1) * nb**i
        hits.add(cell)
    labels = []
    for cell in range(count):
        parts = []
        for i, (a, b) in enumerate(features.intervals):
            j = cell // nb**i % nb
            parts.append(f"P({a:g},{b:g})@{j * features.width:g}")
        labels.append(" ".join(parts))
    universe = Universe(count, tuple(labels))
    return universe, Subset.of(universe, hits)


def state_distance(system: ControlledSystem, x, y) -> float:
    d = np.asarray(x) - np.asarray(y)
    if isinstance(system.kind, Trivial):
        return float(np.linalg.norm(d))
    return l2_norm(d)


@dataclass(frozen=True)
class DensityReport:
    eps: float
    distances: tuple[float, ...]
    dense: bool

    def to_json(self) -> dict:
        return {"eps": self.eps, "distances": list(self.distances), "dense": self.dense}


def check_eps_density(cloud: AttainableCloud, targets: Sequence, eps: float) -> DensityReport:
    """Nearest-sample distance per target in the system's own norm."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not cloud.samples:
        raise EmptyCloud("cloud has no samples")
    dists = []
    for target in targets:
        target = _check_state(cloud.system, target)
        dists.append(min(state_distance(cloud.system, s.terminal, target) for s in cloud.samples))
    return DensityReport(eps, tuple(dists), all(d <= eps for d in dists))


@dataclass(frozen=True)
class MuReport:
    universe_size: int
    F: tuple[int, ...]
    dense: bool
    hausdorff: bool
    topology: str

    @property
    def f_size(self) -> int:
        return len(self.F)

    def to_json(self) -> dict:
        return {
            "universe_size": self.universe_size,
            "F": list(self.F),
            "F_size": self.f_size,
            "dense": self.dense,
            "hausdorff": self.hausdorff,
            "topology": self.topology,
        }


def check_mu_controllability(cloud: AttainableCloud, features: TrivialGrid | ProbabilityBins) -> MuReport:
    """Quantise the cloud and test density of the hit cells.

    The hit set ``F`` is made dense by the F-dense topology. When the cloud
    hits every cell there is no strict ``F``; the whole space is dense in
    any topology and the discrete one is reported instead.
    """
    universe, F = quantize(cloud, features)
    if F.mask == universe.full_mask:
        topo, name = discrete_topology(universe), "discrete"
    else:
        topo, name = mu_topology(universe, F), "mu"
    return MuReport(
        universe_size=universe.size,
        F=F.members(),
        dense=is_dense(topo, F),
        hausdorff=separation_profile(topo).hausdorff,
        topology=name,
    )


def step_halving_ratio(
    system: ControlledSystem, control: Sequence[float], phi0: np.ndarray, T: float
) -> float:
    """``|phi_dt - phi_dt/2| / |phi_dt/2 - phi_dt/4|`` at time ``T``.

    Close to 4 for a second-order time integrator.
    """
    kind = system.kind
    if not isinstance(kind, Schrodinger):
        raise InconsistentDimensions("step halving applies to the Schrodinger system only")
    runs = []
    for div in (1, 2, 4):
        sub = ControlledSystem(Schrodinger(kind.n_grid, kind.dt / div), system.segments, system.amplitude)
        runs.append(terminal_state(sub, control, phi0, T))
    return l2_norm(runs[0] - runs[1]) / l2_norm(runs[1] - runs[2])
