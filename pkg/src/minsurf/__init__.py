"""Numerical laboratory for the Morse index and nullity of classical
minimal surfaces: exact Weierstrass geometry, second-variation forms of
area and energy, their comparison identity, the conformal-repair
obstruction theory, and exact bound arithmetic with verdicts."""

__version__ = "0.1.0"

from .bounds import SurfaceInvariants, evaluate_bounds, h0_totcurv, r_of
from .catalog import (GeometrySample, WeierstrassSurface, catalog_invariants,
                      make_catalog_surface, sample_geometry, total_curvature)
from .forms import (FormValue, area_hessian, comparison_residual,
                    energy_hessian, eta_functional)
from .grids import (DiskQuadratureGrid, FourierTorusGrid, IcosphereMesh,
                    SphereQuadratureGrid)
from .repair import (ObstructionSpace, RepairResult, SymmetrySpec,
                     check_symmetry, fredholm_codimension,
                     holomorphic_reference_section, obstruction_space,
                     solve_repair)
from .sections import SectionSample, combine
from .spectral import (QuadFormPair, SpectralReport, assemble_area_stability,
                       assemble_energy_hessian, solve_spectrum)

__all__ = [
    "__version__",
    "SurfaceInvariants", "evaluate_bounds", "h0_totcurv", "r_of",
    "GeometrySample", "WeierstrassSurface", "catalog_invariants",
    "make_catalog_surface", "sample_geometry", "total_curvature",
    "FormValue", "area_hessian", "comparison_residual", "energy_hessian",
    "eta_functional",
    "DiskQuadratureGrid", "FourierTorusGrid", "IcosphereMesh",
    "SphereQuadratureGrid",
    "ObstructionSpace", "RepairResult", "SymmetrySpec", "check_symmetry",
    "fredholm_codimension", "holomorphic_reference_section",
    "obstruction_space", "solve_repair",
    "SectionSample", "combine",
    "QuadFormPair", "SpectralReport", "assemble_area_stability",
    "assemble_energy_hessian", "solve_spectrum",
]
