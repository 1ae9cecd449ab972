import numpy as np
import pytest

from minsurf import catalog, grids


@pytest.fixture(scope="session")
def catenoid():
    return catalog.make_catalog_surface("catenoid")


@pytest.fixture(scope="session")
def enneper():
    return catalog.make_catalog_surface("enneper")


@pytest.fixture(scope="session")
def knoid3():
    return catalog.make_catalog_surface("knoid", k=3)


@pytest.fixture(scope="session")
def knoid4():
    return catalog.make_catalog_surface("knoid", k=4)


@pytest.fixture(scope="session")
def plane():
    return catalog.make_catalog_surface("plane")


@pytest.fixture(scope="session")
def clifford():
    return catalog.make_catalog_surface("clifford_torus")


@pytest.fixture(scope="session")
def clifford_s3():
    return catalog.make_catalog_surface("clifford_torus", quotient="s3")


@pytest.fixture(scope="session")
def holo_curve():
    return catalog.make_catalog_surface("holomorphic_curve_R4")


@pytest.fixture(scope="session")
def sphere_grid():
    return grids.SphereQuadratureGrid(24)


@pytest.fixture(scope="session")
def torus_grid():
    return grids.FourierTorusGrid(32, quotient="rp3")


@pytest.fixture(scope="session")
def torus_grid_s3():
    return grids.FourierTorusGrid(32)


@pytest.fixture(scope="session")
def disk_grid():
    return grids.DiskQuadratureGrid(32)


@pytest.fixture(scope="session")
def mesh3():
    return grids.IcosphereMesh(3)


@pytest.fixture(scope="session")
def mesh4():
    return grids.IcosphereMesh(4)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
