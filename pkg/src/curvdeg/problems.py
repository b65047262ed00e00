"""Problem files: parse and emit curvature specs with run options.

Schema (JSON): ``polynomial`` is a list of {powers: [p1, p2, p3, p4],
coeff} terms for the ambient curvature K; ``perturbation_polynomial`` (same
shape, optional) acts at the k-level; ``bumps`` is a list of {center: [4],
radius, amplitude}; ``s`` scales both perturbations; ``t_range`` is a
subinterval of (0, 1]; ``options`` carries tolerances and search settings.
Emit-then-parse round-trips to an identical spec.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

from .func_algebra import AmbientPoly, BumpFunction, CurvatureSpec

DEFAULT_OPTIONS = {
    "tol": 1e-6,
    "n_starts": 512,
    "seed": 0,
    "exactness_degree": 23,
}


@dataclass(frozen=True)
class Problem:
    spec: CurvatureSpec
    t_range: tuple = (0.0, 1.0)
    options: tuple = tuple(sorted(DEFAULT_OPTIONS.items()))

    @property
    def option_dict(self):
        return dict(self.options)


def _poly_from_json(terms):
    return AmbientPoly(tuple((tuple(t["powers"]), float(t["coeff"])) for t in terms))


def _poly_to_json(poly):
    return [{"powers": list(e), "coeff": c} for e, c in poly.terms]


def problem_from_dict(data):
    if "polynomial" not in data:
        raise ValueError("problem file needs a 'polynomial' field")
    base = _poly_from_json(data["polynomial"])
    pert = (_poly_from_json(data["perturbation_polynomial"])
            if data.get("perturbation_polynomial") else None)
    bumps = tuple(BumpFunction(center=tuple(b["center"]), radius=float(b["radius"]),
                               amplitude=float(b["amplitude"]))
                  for b in data.get("bumps", ()))
    spec = CurvatureSpec(base=base, poly_perturbation=pert,
                         bump_perturbations=bumps, s=float(data.get("s", 0.0)))
    lo, hi = data.get("t_range", (0.0, 1.0))
    if not (0.0 <= lo < hi <= 1.0):
        raise ValueError(f"t_range must satisfy 0 <= lo < hi <= 1, got ({lo}, {hi})")
    options = dict(DEFAULT_OPTIONS)
    options.update(data.get("options", {}))
    unknown = set(options) - set(DEFAULT_OPTIONS)
    if unknown:
        raise ValueError(f"unknown options: {sorted(unknown)}")
    return Problem(spec=spec, t_range=(float(lo), float(hi)),
                   options=tuple(sorted(options.items())))


def problem_to_dict(problem):
    spec = problem.spec
    data = {"polynomial": _poly_to_json(spec.base)}
    if spec.poly_perturbation is not None:
        data["perturbation_polynomial"] = _poly_to_json(spec.poly_perturbation)
    if spec.bump_perturbations:
        data["bumps"] = [{"center": [float(c) for c in b.center.coords],
                          "radius": b.radius, "amplitude": b.amplitude}
                         for b in spec.bump_perturbations]
    if spec.s:
        data["s"] = spec.s
    data["t_range"] = list(problem.t_range)
    data["options"] = problem.option_dict
    return data


def load_problem(path):
    with open(path) as fh:
        return problem_from_dict(json.load(fh))


def save_problem(problem, path):
    with open(path, "w") as fh:
        json.dump(problem_to_dict(problem), fh, indent=2, sort_keys=True)
        fh.write("\n")


def bundled_names():
    root = resources.files(__package__) / "problems"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_bundled(name):
    """Load a problem shipped with the package, e.g. 'quadratic_flat'."""
    path = resources.files(__package__) / "problems" / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(
            f"no bundled problem '{name}'; available: {', '.join(bundled_names())}")
    return problem_from_dict(json.loads(path.read_text()))
