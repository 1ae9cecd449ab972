"""Command-line front end.

Subcommands
-----------
catalog
    List the catalog surfaces with their invariants.
compute
    Assemble an index form, solve for the lowest eigenvalues, and write a
    JSON spectral report (plus an eigenvalue CSV).
verify-identity
    Run seeded random trials of the energy/area comparison identity and
    report the residuals.
bounds
    Evaluate every applicable index/nullity bound, optionally against a
    computed spectrum, and write the verdict table.

Exit codes: 0 pass, 1 verdict failure, 2 usage/configuration error,
3 numerical indeterminacy.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__, bounds, catalog, forms, grids, report_io, repair, \
    sections, spectral
from .exceptions import (CatalogError, ContractError, FeatureNotAvailable,
                         IntegrityError, MinsurfError)

EXIT_PASS = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3

IDENTITY_TOL = 1e-6


def parse_surface(spec):
    """NAME[:PARAM] -> catalog surface (knoid takes k, clifford a quotient)."""
    name, _, param = spec.partition(":")
    if name == "knoid":
        if not param:
            raise CatalogError("knoid needs a parameter, e.g. knoid:3")
        return catalog.make_catalog_surface("knoid", k=int(param))
    if name == "clifford_torus":
        return catalog.make_catalog_surface(name, quotient=param or "rp3")
    if param:
        raise CatalogError(f"surface {name!r} takes no parameter")
    return catalog.make_catalog_surface(name)


def _base_payload(args):
    cfg = {k: v for k, v in sorted(vars(args).items())
           if k not in ("func",) and v is not None}
    return {"tool": "minsurf", "version": __version__, "config": cfg}


def cmd_catalog(args):
    entries = []
    for name in catalog.CATALOG_NAMES:
        if name == "knoid":
            entries.append(catalog.make_catalog_surface(name, k=3).describe())
        elif name == "chen_gackstatter":
            inv = catalog.catalog_invariants(name)
            entries.append({"name": name, "available": False,
                            "reason": "optional elliptic-function feature",
                            "genus": inv.genus, "ends": inv.ends,
                            "total_curvature_over_pi": -inv.curv_pi})
        else:
            entries.append(catalog.make_catalog_surface(name).describe())
    payload = _base_payload(args)
    payload["catalog"] = entries
    print_or_write(payload, args.out)
    return EXIT_PASS


def _spectral_discretization(surface, args):
    if surface.domain_kind == "flat_torus":
        n = args.grid or 32
        return grids.FourierTorusGrid(
            n, quotient=surface.params.get("quotient", "rp3")
            if surface.params.get("quotient") == "rp3" else "none")
    if surface.domain_kind == "punctured_sphere":
        return grids.IcosphereMesh(args.level or 5)
    raise CatalogError(f"{surface.name} has no spectral discretization")


def cmd_compute(args):
    surface = parse_surface(args.surface)
    disc = _spectral_discretization(surface, args)
    pair = spectral.assemble_area_stability(surface, disc)
    report = spectral.solve_spectrum(pair, m=args.eigs)
    payload = _base_payload(args)
    payload["surface"] = surface.describe()
    payload["report"] = report.as_dict()
    print_or_write(payload, args.out)
    if args.out:
        report_io.write_eigenvalue_csv(str(args.out) + ".eigenvalues.csv",
                                       report.eigenvalues)
    if report.status != "ok":
        return EXIT_INDETERMINATE
    return EXIT_PASS


def cmd_verify_identity(args):
    surface = parse_surface(args.surface)
    rng = np.random.default_rng(args.seed)
    residuals = []
    if surface.domain_kind == "flat_torus":
        grid = grids.FourierTorusGrid(args.grid or 32, quotient="rp3")
        for _ in range(args.trials):
            s = sections.random_torus_normal(surface, grid, rng)
            sig = sections.random_torus_tangential(surface, grid, rng)
            residuals.append(forms.comparison_residual(s, sig))
    elif surface.domain_kind == "punctured_sphere":
        grid = grids.SphereQuadratureGrid(args.level or 24)
        for _ in range(args.trials):
            s = sections.random_normal_sphere(surface, grid, rng)
            sig = sections.random_tangential_sphere(surface, grid, rng)
            residuals.append(forms.comparison_residual(s, sig))
    else:
        raise CatalogError(f"identity trials are not defined for "
                           f"{surface.name}")
    worst = max(residuals)
    payload = _base_payload(args)
    payload["surface"] = surface.describe()
    payload["residuals"] = residuals
    payload["max_residual"] = worst
    payload["tolerance"] = IDENTITY_TOL
    payload["passed"] = bool(worst <= IDENTITY_TOL)
    print_or_write(payload, args.out)
    return EXIT_PASS if worst <= IDENTITY_TOL else EXIT_VERDICT


def _computed_counts(surface, args):
    """Index/nullity inputs for the bound verdicts."""
    computed = {}
    status = []
    disc = _spectral_discretization(surface, args)
    area = spectral.solve_spectrum(
        spectral.assemble_area_stability(surface, disc), m=args.eigs)
    status.append(area.status)
    computed["i_A"] = area.index
    computed["n_A"] = area.nullity
    if surface.domain_kind == "flat_torus":
        energy = spectral.solve_spectrum(
            spectral.assemble_energy_hessian(surface, disc), m=args.eigs + 6)
        tang = spectral.solve_spectrum(
            spectral.assemble_energy_hessian(surface, disc,
                                             subspace="tangential"),
            m=args.eigs)
        computed["i_E"] = energy.index
        computed["n_E"] = energy.nullity
        computed["n_E_T"] = tang.nullity
        status.extend([energy.status, tang.status])
    return computed, status, area


def cmd_bounds(args):
    try:
        surface = parse_surface(args.surface)
        inv = surface.invariants
    except FeatureNotAvailable:
        name = args.surface.partition(":")[0]
        inv = catalog.catalog_invariants(name)
        surface = None
    indeterminate = False
    computed, area_report = {}, None
    if args.with_spectrum:
        if surface is None:
            raise CatalogError(f"{inv.name} has no computable spectrum")
        computed, statuses, area_report = _computed_counts(surface, args)
        indeterminate = any(s != "ok" for s in statuses)
    if surface is not None and inv.strong_symmetry:
        sym = repair.default_symmetry(surface)
        verdict = repair.check_symmetry(surface, sym)
        if not verdict.passed:
            inv = None
            raise IntegrityError("catalog symmetry failed verification")
    report = bounds.evaluate_bounds(inv, computed)
    payload = _base_payload(args)
    payload["invariants"] = {
        "name": inv.name, "genus": inv.genus, "ends": inv.ends,
        "branch_total": inv.branch_total,
        "neg_total_curvature_over_pi": inv.curv_pi,
        "strong_symmetry": inv.strong_symmetry, "closed": inv.closed}
    payload["computed"] = computed
    payload["bounds"] = report.as_dict()
    print_or_write(payload, args.out)
    if args.out:
        report_io.write_bounds_csv(str(args.out) + ".bounds.csv", report)
        if area_report is not None:
            report_io.write_eigenvalue_csv(
                str(args.out) + ".eigenvalues.csv", area_report.eigenvalues)
    if indeterminate:
        return EXIT_INDETERMINATE
    if report.failed():
        return EXIT_VERDICT
    return EXIT_PASS


def print_or_write(payload, out):
    import json
    if out:
        report_io.write_json(out, payload)
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


def build_parser():
    p = argparse.ArgumentParser(
        prog="minsurf",
        description="Morse index and nullity laboratory for classical "
                    "minimal surfaces")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("catalog", help="list catalog surfaces")
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=cmd_catalog)

    pp = sub.add_parser("compute", help="compute an area-stability spectrum")
    pp.add_argument("--surface", required=True,
                    help="NAME[:PARAM], e.g. catenoid, knoid:4")
    pp.add_argument("--level", type=int, default=None,
                    help="icosphere subdivision level (genus-0 surfaces)")
    pp.add_argument("--grid", type=int, default=None,
                    help="Fourier grid size (torus surfaces)")
    pp.add_argument("--eigs", type=int, default=14)
    pp.add_argument("--seed", type=int, default=0)
    pp.add_argument("--out", default=None)
    pp.set_defaults(func=cmd_compute)

    pv = sub.add_parser("verify-identity",
                        help="randomized comparison-identity trials")
    pv.add_argument("--surface", required=True)
    pv.add_argument("--trials", type=int, default=50)
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--level", type=int, default=None,
                    help="sphere quadrature order")
    pv.add_argument("--grid", type=int, default=None,
                    help="torus grid size")
    pv.add_argument("--out", default=None)
    pv.set_defaults(func=cmd_verify_identity)

    pb = sub.add_parser("bounds", help="evaluate the bound suite")
    pb.add_argument("--surface", required=True)
    pb.add_argument("--with-spectrum", action="store_true")
    pb.add_argument("--level", type=int, default=None)
    pb.add_argument("--grid", type=int, default=None)
    pb.add_argument("--eigs", type=int, default=14)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--out", default=None)
    pb.set_defaults(func=cmd_bounds)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CatalogError, ContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except MinsurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE


if __name__ == "__main__":
    sys.exit(main())
