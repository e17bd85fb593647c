"""Run both pipelines on family members and compare them.

:func:`analyze` builds the group, its NCCC- and CCC-graphs, the numeric and
exact spectra, and the closed form, and records every deviation and
agreement flag. :func:`run_sweep` fans a list of instances out to worker
processes and returns the records in a deterministic order.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import classify
from .closed_form import ClosedFormResult, family_closed_form
from .graphs import build_ccc, build_nccc, complement, detect_multipartite
from .groups import FamilySpec, build_group, center, central_quotient_kind, conjugacy_classes
from .spectra import (
    Spectrum,
    adjacency_matrix,
    char_poly_exact,
    graph_spectra,
    laplacian_matrix,
    signless_laplacian_matrix,
)

__all__ = [
    "SCHEMA",
    "AnalysisRecord",
    "analyze",
    "default_sweep_specs",
    "run_sweep",
    "worker_count",
    "sweep_csv",
    "FIGURES",
    "Figure",
    "figure_rows",
    "figure_csv",
    "figure_violations",
]

SCHEMA = 1
FAMILY_ORDER = ("dihedral", "dicyclic", "semidihedral", "u6m", "umn", "v8m", "heisenberg", "table")
CLI_FAMILY = {"d2m": "dihedral", "t4m": "dicyclic", "sd8m": "semidihedral", "umn": "umn",
              "u6m": "u6m", "v8m": "v8m", "heis": "heisenberg", "table": "table"}


def _spec_pairs(s: Spectrum) -> list[list]:
    return [[str(v) if s.exact else float(v), mult] for v, mult in s.pairs]


@dataclass
class AnalysisRecord:
    family: str
    name: str
    params: dict
    order: int
    center_size: int
    quotient: str
    n_vertices: int
    n_edges: int
    shape: str | None
    formula_shape: str | None
    case_tag: str | None
    oracle_spectra: dict
    formula_spectra: dict
    oracle_energies: tuple[float, float, float]
    formula_energies: tuple[float, float, float]
    formula_energies_exact: tuple[str, str, str]
    spectrum_deviation: dict
    energy_deviation: dict
    integrality_oracle: tuple[bool, bool, bool] | None
    integrality_predicate: tuple[bool, bool, bool] | None
    integrality_formula: tuple[bool, bool, bool] | None
    energy_class_oracle: tuple[str, str, str]
    energy_class_predicate: tuple[str, str, str] | None
    ordering_oracle: str
    ordering_predicate: str | None
    flags: dict = field(default_factory=dict)
    tol: float = 1e-8

    @property
    def key(self) -> tuple:
        p = self.params
        return (FAMILY_ORDER.index(self.family), p.get("m", 0), p.get("n", 0), p.get("p", 0), self.name)

    @property
    def agree(self) -> bool:
        return all(self.flags.values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.flags.items() if not ok]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "family": self.family,
            "name": self.name,
            "params": self.params,
            "order": self.order,
            "center_size": self.center_size,
            "central_quotient": self.quotient,
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "shape": self.shape,
            "formula_shape": self.formula_shape,
            "case_tag": self.case_tag,
            "spectra": {"oracle": self.oracle_spectra, "formula": self.formula_spectra},
            "energies": {
                "oracle": dict(zip(("E", "LE", "SE"), self.oracle_energies)),
                "formula": dict(zip(("E", "LE", "SE"), self.formula_energies)),
                "formula_exact": dict(zip(("E", "LE", "SE"), self.formula_energies_exact)),
            },
            "deviation": {"spectra": self.spectrum_deviation, "energies": self.energy_deviation},
            "integrality": {
                "oracle": _triple(self.integrality_oracle),
                "predicate": _triple(self.integrality_predicate),
                "formula": _triple(self.integrality_formula),
            },
            "energy_class": {
                "oracle": dict(zip(("E", "LE", "SE"), self.energy_class_oracle)),
                "predicate": None if self.energy_class_predicate is None
                else dict(zip(("E", "LE", "SE"), self.energy_class_predicate)),
            },
            "ordering": {"oracle": self.ordering_oracle, "predicate": self.ordering_predicate},
            "tolerance": self.tol,
            "flags": self.flags,
            "agree": self.agree,
        }

    def format_table(self) -> str:
        E, LE, SE = self.oracle_energies
        fE, fLE, fSE = self.formula_energies_exact
        rows = [
            ("group", f"{self.name}  (order {self.order}, |Z| = {self.center_size}, G/Z = {self.quotient})"),
            ("graph", f"{self.n_vertices} vertices, {self.n_edges} edges, shape {self.shape}"),
            ("branch", self.case_tag or "-"),
            ("E", f"{E:.12g}   formula {fE}"),
            ("LE", f"{LE:.12g}   formula {fLE}"),
            ("SE", f"{SE:.12g}   formula {fSE}"),
            ("Spec A", _fmt_spec(self.formula_spectra.get("A"), self.oracle_spectra["A"])),
            ("Spec L", _fmt_spec(self.formula_spectra.get("L"), self.oracle_spectra["L"])),
            ("Spec Q", _fmt_spec(self.formula_spectra.get("Q"), self.oracle_spectra["Q"])),
            ("integral A/L/Q", _fmt_bool3(self.integrality_oracle)),
            ("E/LE/SE class", "/".join(self.energy_class_oracle)),
            ("ordering", self.ordering_oracle),
            ("max deviation", f"{max([*self.spectrum_deviation.values(), *self.energy_deviation.values()], default=0.0):.3g}"),
            ("agreement", "yes" if self.agree else "NO: " + ", ".join(self.failures())),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _triple(t):
    return None if t is None else dict(zip(("A", "L", "Q"), t))


def _fmt_bool3(t) -> str:
    return "-" if t is None else "/".join("yes" if b else "no" for b in t)


def _fmt_spec(formula, oracle) -> str:
    pairs = formula if formula is not None else oracle
    return "{" + ", ".join(f"[{v}]^{mult}" for v, mult in pairs) + "}"


def _safe_dev(x: float) -> float:
    return x if math.isfinite(x) else float("inf")


def analyze(spec: FamilySpec, tol: float = 1e-8, *, exact: bool = True, perturb: bool = False,
            backend: str | None = None, return_graphs: bool = False):
    """Run group-core, graph, oracle spectra and the closed form on one instance."""
    group = build_group(spec)
    partition = conjugacy_classes(group)
    z = len(center(group))
    quotient = central_quotient_kind(group)
    gamma = build_nccc(group, partition)
    ccc = build_ccc(group, partition)
    shape = detect_multipartite(gamma)
    oracle = graph_spectra(gamma, backend=backend)
    o_energies = oracle.energy.as_floats()

    flags: dict[str, bool] = {"duality": gamma.same_as(complement(ccc))}

    try:
        cf: ClosedFormResult | None = family_closed_form(spec, perturb=perturb)
    except ValueError:
        cf = None

    spec_dev, energy_dev = {}, {}
    if cf is not None:
        for key, ours, theirs in (("A", oracle.A, cf.spec_A), ("L", oracle.L, cf.spec_L), ("Q", oracle.Q, cf.spec_Q)):
            spec_dev[key] = _safe_dev(ours.deviation(theirs))
        f_energies = (float(cf.E), float(cf.LE), float(cf.SE))
        for key, a, b in zip(("E", "LE", "SE"), o_energies, f_energies):
            energy_dev[key] = abs(a - b)
        flags["shape"] = shape == cf.shape
        flags["spectra"] = all(d <= tol for d in spec_dev.values())
        flags["energies"] = all(d <= tol for d in energy_dev.values())
    else:
        # no closed form to compare against; the remaining checks still run
        f_energies = (math.nan,) * 3

    int_oracle = int_pred = int_formula = None
    if exact:
        polys = [char_poly_exact(f(gamma)) for f in (adjacency_matrix, laplacian_matrix, signless_laplacian_matrix)]
        int_oracle = classify.integrality_from_polys(*polys)
        try:
            int_pred = classify.integrality_predicates(spec)
        except ValueError:
            int_pred = None
        if int_pred is not None:
            flags["integrality"] = int_oracle == int_pred
        if cf is not None:
            int_formula = cf.integrality()
            flags["integrality_formula"] = int_oracle == int_formula

    n = gamma.n_vertices
    class_oracle = tuple(classify.tag_energy(x, n, tol) for x in o_energies)
    try:
        class_pred = classify.energy_classification(spec)
    except ValueError:
        class_pred = None
    if class_pred is not None:
        flags["energy_class"] = class_oracle == class_pred

    order_oracle = classify.tag_ordering(*o_energies, tol=tol)
    order_pred = classify.energy_ordering(spec) if classify.in_ordering_scope(spec) else None
    if order_pred is not None:
        flags["ordering"] = order_oracle == order_pred

    record = AnalysisRecord(
        family=spec.kind,
        name=group.name,
        params=spec.params,
        order=group.order,
        center_size=z,
        quotient=str(quotient),
        n_vertices=n,
        n_edges=gamma.n_edges,
        shape=None if shape is None else str(shape),
        formula_shape=None if cf is None else str(cf.shape),
        case_tag=None if cf is None else cf.case_tag,
        oracle_spectra={"A": _spec_pairs(oracle.A), "L": _spec_pairs(oracle.L), "Q": _spec_pairs(oracle.Q)},
        formula_spectra={} if cf is None else
        {"A": _spec_pairs(cf.spec_A), "L": _spec_pairs(cf.spec_L), "Q": _spec_pairs(cf.spec_Q)},
        oracle_energies=o_energies,
        formula_energies=f_energies,
        formula_energies_exact=("-",) * 3 if cf is None else (str(cf.E), str(cf.LE), str(cf.SE)),
        spectrum_deviation=spec_dev,
        energy_deviation=energy_dev,
        integrality_oracle=int_oracle,
        integrality_predicate=int_pred,
        integrality_formula=int_formula,
        energy_class_oracle=class_oracle,
        energy_class_predicate=class_pred,
        ordering_oracle=order_oracle,
        ordering_predicate=order_pred,
        flags=flags,
        tol=tol,
    )
    if return_graphs:
        return record, gamma, ccc
    return record


# ----------------------------------------------------------------------
# sweeps

SWEEP_RANGES = {
    "dihedral": range(3, 41),
    "dicyclic": range(2, 31),
    "semidihedral": range(2, 21),
    "u6m": range(2, 26),
    "umn": (range(2, 7), range(3, 16)),
    "v8m": range(2, 16),
    "heisenberg": (3, 5),
}


def default_sweep_specs(families=None, max_m: int | None = None) -> list[FamilySpec]:
    """The verification sweep; ``families`` restricts kinds, ``max_m`` caps m."""
    families = set(families or SWEEP_RANGES)
    out: list[FamilySpec] = []
    for kind in FAMILY_ORDER:
        if kind not in families or kind not in SWEEP_RANGES:
            continue
        if kind == "heisenberg":
            out += [FamilySpec.heisenberg(p) for p in SWEEP_RANGES[kind]]
        elif kind == "umn":
            ns, ms = SWEEP_RANGES[kind]
            out += [FamilySpec.umn(n, m) for n in ns for m in ms if max_m is None or m <= max_m]
        else:
            out += [FamilySpec(kind, m=m) for m in SWEEP_RANGES[kind] if max_m is None or m <= max_m]
    return out


def worker_count() -> int:
    env = os.environ.get("NCCC_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"NCCC_THREADS must be an integer, got {env!r}") from None
        if value < 1:
            raise ValueError("NCCC_THREADS must be at least 1")
        return value
    return os.cpu_count() or 1


def _job(args):
    spec, tol, exact, perturb = args
    return analyze(spec, tol, exact=exact, perturb=perturb)


def run_sweep(specs, tol: float = 1e-8, *, exact: bool = True, perturb: bool = False,
              threads: int | None = None) -> list[AnalysisRecord]:
    """Analyze every spec; records come back sorted by (family, parameters)."""
    jobs = [(s, tol, exact, perturb) for s in specs]
    threads = threads or worker_count()
    if threads <= 1 or len(jobs) <= 1:
        records = [_job(j) for j in jobs]
    else:
        # biggest instances first so stragglers do not dominate
        order = sorted(range(len(jobs)), key=lambda i: -(jobs[i][0].expected_order or 0))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            done = list(pool.map(_job, [jobs[i] for i in order], chunksize=1))
        records = [None] * len(jobs)
        for i, rec in zip(order, done):
            records[i] = rec
    return sorted(records, key=lambda r: r.key)


SWEEP_CSV_FIELDS = ("family", "name", "params", "n_vertices", "n_edges", "dev_A", "dev_L", "dev_Q",
                    "dev_E", "dev_LE", "dev_SE", "failures", "agree")


def _g(x) -> str:
    return "" if x is None else f"{x:.12g}"


def sweep_csv(records, out=None) -> str:
    """Per-instance deviations as CSV; returns the text and writes it to ``out`` if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_CSV_FIELDS)
    for r in records:
        params = ";".join(f"{k}={v}" for k, v in r.params.items())
        sd, ed = r.spectrum_deviation, r.energy_deviation
        w.writerow([r.family, r.name, params, r.n_vertices, r.n_edges,
                    _g(sd.get("A")), _g(sd.get("L")), _g(sd.get("Q")),
                    _g(ed.get("E")), _g(ed.get("LE")), _g(ed.get("SE")),
                    " ".join(r.failures()), int(r.agree)])
    text = buf.getvalue()
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return text


# ----------------------------------------------------------------------
# figure data

@dataclass(frozen=True)
class Figure:
    number: int
    title: str
    kind: str
    ms: tuple[int, ...]

    def spec(self, m: int) -> FamilySpec:
        return FamilySpec(self.kind, m=m)

    def expected_ordering(self, m: int) -> str:
        if self.kind == "u6m":
            return classify.EQ
        return classify.energy_ordering(self.spec(m))


FIGURES: dict[int, Figure] = {f.number: f for f in (
    Figure(1, "D2m, m even and m/2 odd", "dihedral", tuple(range(6, 47, 4))),
    Figure(2, "D2m, m and m/2 even", "dihedral", tuple(range(4, 49, 4))),
    Figure(3, "D2m, m odd", "dihedral", tuple(range(3, 30, 2))),
    Figure(4, "T4m, m even", "dicyclic", tuple(range(2, 31, 2))),
    Figure(5, "T4m, m odd", "dicyclic", tuple(range(3, 32, 2))),
    Figure(6, "SD8m, m even", "semidihedral", tuple(range(2, 31, 2))),
    Figure(7, "SD8m, m odd", "semidihedral", tuple(range(3, 32, 2))),
    Figure(8, "U6m", "u6m", tuple(range(2, 26))),
    Figure(9, "V8m, m even", "v8m", tuple(range(2, 31, 2))),
    Figure(10, "V8m, m odd", "v8m", tuple(range(3, 32, 2))),
)}


def _figure(number: int) -> Figure:
    try:
        return FIGURES[number]
    except KeyError:
        raise ValueError(f"unknown figure {number}; valid ids are 1..{len(FIGURES)}") from None


def figure_rows(number: int, *, oracle: bool = False) -> list[tuple[int, float, float, float]]:
    """``(m, E, LE, SE)`` rows from the closed forms, or from the oracle pipeline."""
    fig = _figure(number)
    rows = []
    for m in fig.ms:
        if oracle:
            g = build_nccc(build_group(fig.spec(m)))
            E, LE, SE = graph_spectra(g).energy.as_floats()
        else:
            cf = family_closed_form(fig.spec(m))
            E, LE, SE = float(cf.E), float(cf.LE), float(cf.SE)
        rows.append((m, E, LE, SE))
    return rows


def figure_csv(number: int, out=None, *, oracle: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("m", "E", "LE", "SE"))
    for m, E, LE, SE in figure_rows(number, oracle=oracle):
        w.writerow((m, f"{E:.12g}", f"{LE:.12g}", f"{SE:.12g}"))
    text = buf.getvalue()
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return text


def figure_violations(number: int, rows=None, tol: float = 1e-8) -> list[tuple[int, str, str]]:
    """Rows whose pointwise ordering differs from the expected tag: ``(m, expected, got)``."""
    fig = _figure(number)
    rows = rows if rows is not None else figure_rows(number)
    bad = []
    for m, E, LE, SE in rows:
        want, got = fig.expected_ordering(m), classify.tag_ordering(E, LE, SE, tol)
        if want != got:
            bad.append((m, want, got))
    return bad
