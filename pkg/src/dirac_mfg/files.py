"""
Instance, result and density-sample files

Instances and results are JSON objects; density samples are two-column CSV
with header ``x,f``. Floats are written in their shortest round-trip form,
so reading a file back gives bit-identical values.
"""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .equilibrium_map import F
from .geometry import EquilibriumDensity, bubble_endpoints, build_measure

__all__ = [
    "InstanceFile",
    "ResultFile",
    "AtomResult",
    "gen_instance",
    "load_instance",
    "save_instance",
    "result_from_report",
    "load_result",
    "save_result",
    "density_samples",
    "save_density",
    "load_density",
]

GEN_KINDS = ("equispaced_random_weights", "fully_random")


@dataclass
class InstanceFile:
    positions: list
    weights: list
    normalize: bool = True
    label: str = ""

    def measure(self):
        return build_measure(self.positions, self.weights, self.normalize)

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - {"positions", "weights", "normalize", "label"}
        if unknown:
            raise ValueError(f"unknown instance keys: {sorted(unknown)}")
        if "positions" not in d or "weights" not in d:
            raise ValueError("an instance needs 'positions' and 'weights'")
        return cls(
            positions=[float(v) for v in d["positions"]],
            weights=[float(v) for v in d["weights"]],
            normalize=bool(d.get("normalize", True)),
            label=str(d.get("label", "")),
        )


def gen_instance(kind, n, seed, normalize=True):
    """Random instance in the style of the equispaced and fully random demos.

    ``equispaced_random_weights``: positions 1..n, weights uniform on
    [0.05, 1], normalised only if ``normalize``.
    ``fully_random``: sorted uniform positions on [0, n] with every gap at
    least 0.1, weights as above and always normalised.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    if kind == "equispaced_random_weights":
        x = np.arange(1.0, n + 1.0)
        a = rng.uniform(0.05, 1.0, n)
        return InstanceFile(x.tolist(), a.tolist(), bool(normalize), f"{kind} n={n} seed={seed}")
    if kind == "fully_random":
        gap = 0.1
        span = float(n)
        if (n - 1) * gap > span:
            raise ValueError(f"cannot fit {n} points with gap {gap} in [0, {span}]")
        # sorted uniforms on the shrunk interval, then re-inflate the gaps:
        # same law as rejection sampling on the gap constraint
        u = np.sort(rng.uniform(0.0, span - (n - 1) * gap, n))
        x = u + gap * np.arange(n)
        a = rng.uniform(0.05, 1.0, n)
        return InstanceFile(x.tolist(), a.tolist(), True, f"{kind} n={n} seed={seed}")
    raise ValueError(f"unknown instance kind {kind!r}; expected one of {GEN_KINDS}")


def load_instance(path):
    with open(path) as fh:
        return InstanceFile.from_dict(json.load(fh))


def save_instance(inst, path):
    with open(path, "w") as fh:
        json.dump(asdict(inst), fh, indent=2)
        fh.write("\n")


def _num(v):
    v = float(v)
    return None if np.isnan(v) else v


def _unnum(v):
    return float("nan") if v is None else float(v)


@dataclass
class AtomResult:
    x: float
    a: float
    C: float
    alpha: float
    beta: float
    left_case: str
    right_case: str


@dataclass
class ResultFile:
    atoms: list
    residual: float
    newton_iters: int
    lmap_iters: int
    path: str
    converged: bool
    total_mass: float
    min_bubble_length: float
    label: str = ""
    verification: dict = field(default_factory=dict)

    @property
    def positions(self):
        return np.array([at.x for at in self.atoms])

    @property
    def weights(self):
        return np.array([at.a for at in self.atoms])

    @property
    def levels(self):
        return np.array([at.C for at in self.atoms])

    def to_dict(self):
        d = asdict(self)
        for at in d["atoms"]:
            for k in ("x", "a", "C", "alpha", "beta"):
                at[k] = _num(at[k])
        d["min_bubble_length"] = _num(d["min_bubble_length"])
        return d

    @classmethod
    def from_dict(cls, d):
        atoms = [
            AtomResult(
                x=_unnum(at["x"]), a=_unnum(at["a"]), C=_unnum(at["C"]),
                alpha=_unnum(at["alpha"]), beta=_unnum(at["beta"]),
                left_case=at["left_case"], right_case=at["right_case"],
            )
            for at in d["atoms"]
        ]
        return cls(
            atoms=atoms,
            residual=float(d["residual"]),
            newton_iters=int(d["newton_iters"]),
            lmap_iters=int(d["lmap_iters"]),
            path=str(d["path"]),
            converged=bool(d["converged"]),
            total_mass=float(d["total_mass"]),
            min_bubble_length=_unnum(d["min_bubble_length"]),
            label=str(d.get("label", "")),
            verification=dict(d.get("verification", {})),
        )


def result_from_report(report, m, a=None, label=""):
    a = m.weights if a is None else np.asarray(a, dtype=float)
    C = np.asarray(report.C_star, dtype=float)
    geo = bubble_endpoints(C, m)
    atoms = [
        AtomResult(float(x), float(aj), float(c), float(al), float(be), lc.value, rc.value)
        for x, aj, c, al, be, lc, rc in zip(
            m.positions, a, C, geo.alpha, geo.beta, geo.left_case, geo.right_case
        )
    ]
    return ResultFile(
        atoms=atoms,
        residual=float(report.residual),
        newton_iters=int(report.newton_iters),
        lmap_iters=int(report.lmap_iters),
        path=report.path.value,
        converged=bool(report.converged),
        total_mass=float(F(C, m, geo).sum()),
        min_bubble_length=float(geo.lengths.min()),
        label=label,
    )


def save_result(res, path):
    with open(path, "w") as fh:
        json.dump(res.to_dict(), fh, indent=2)
        fh.write("\n")


def load_result(path):
    with open(path) as fh:
        return ResultFile.from_dict(json.load(fh))


def density_samples(C, m, samples=2000, padding=1.0):
    """``(y, f(y))`` at evenly spaced points over the support hull plus padding."""
    d = EquilibriumDensity.from_levels(C, m)
    reach = np.sqrt(max(float(np.max(d.levels)), 0.0))
    y = np.linspace(m.positions[0] - reach - padding, m.positions[-1] + reach + padding, samples)
    return y, d(y)


def save_density(path, y, f):
    np.savetxt(path, np.column_stack([y, f]), delimiter=",", header="x,f", comments="", fmt="%.17g")


def load_density(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0], data[:, 1]
