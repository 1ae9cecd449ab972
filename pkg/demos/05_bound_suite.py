"""Every index/nullity bound, evaluated exactly and checked against
computed spectra.

Total curvature enters as an exact integer multiple of pi, so the bound
values are exact integers or rationals.  Each row shows the bound value,
the computed quantity, and the verdict; the catenoid and k-noid rows are
sharp, and the Clifford torus realizes equality in the closed-surface
three-dimensional comparison.
"""

from minsurf import bounds, catalog, grids, spectral

LEVEL = 5


def show(report):
    for e in report.entries:
        d = e.as_dict()
        if not d["applicable"]:
            continue
        comp = "" if d["computed"] is None else f"  computed={d['computed']}"
        print(f"    {d['name']:58s} bound={d['bound']}{comp}  -> {d['verdict']}")


for name, kwargs in [("catenoid", {}), ("enneper", {}), ("knoid", {"k": 3}),
                     ("knoid", {"k": 4})]:
    surf = catalog.make_catalog_surface(name, **kwargs)
    rep = spectral.solve_spectrum(
        spectral.assemble_area_stability(surf, grids.IcosphereMesh(LEVEL)),
        m=14, refine=False)
    print(f"{surf.name}: computed index={rep.index}, nullity={rep.nullity}")
    show(bounds.evaluate_bounds(surf.invariants,
                                {"i_A": rep.index, "n_A": rep.nullity}))
    print()

print("clifford_torus (closed, three-dimensional space form):")
cliff = catalog.make_catalog_surface("clifford_torus")
g = grids.FourierTorusGrid(32, quotient="rp3")
area = spectral.solve_spectrum(spectral.assemble_area_stability(cliff, g),
                               m=12, refine=False)
energy = spectral.solve_spectrum(spectral.assemble_energy_hessian(cliff, g),
                                 m=16, refine=False)
tang = spectral.solve_spectrum(
    spectral.assemble_energy_hessian(cliff, g, subspace="tangential"),
    m=8, refine=False)
show(bounds.evaluate_bounds(cliff.invariants, {
    "i_A": area.index, "n_A": area.nullity,
    "i_E": energy.index, "n_E": energy.nullity, "n_E_T": tang.nullity}))
print()

print("chen_gackstatter (bound arithmetic only; spectrum needs the optional "
      "elliptic feature):")
show(bounds.evaluate_bounds(catalog.catalog_invariants("chen_gackstatter"),
                            {"i_A": 3}))
print("    (the known index 3 satisfies both headline bounds, 6 and 7)")
