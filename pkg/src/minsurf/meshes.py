"""Geodesic icosphere triangulations and linear FEM matrices.

Subdivided icosahedra projected to the unit sphere; cotangent stiffness
and consistent mass matrices assembled vectorized over triangles
(closed mesh, no boundary handling needed).
"""

from __future__ import annotations

import numpy as np
from scipy import sparse


def icosahedron():
    """Vertices and faces of a regular icosahedron inscribed in the unit sphere."""
    t = (1.0 + np.sqrt(5.0)) / 2.0
    verts = np.array([
        [-1, t, 0], [1, t, 0], [-1, -t, 0], [1, -t, 0],
        [0, -1, t], [0, 1, t], [0, -1, -t], [0, 1, -t],
        [t, 0, -1], [t, 0, 1], [-t, 0, -1], [-t, 0, 1],
    ], dtype=float)
    verts /= np.linalg.norm(verts[0])
    faces = np.array([
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ], dtype=np.int64)
    return verts, faces


def subdivide(verts, faces):
    """One 4-to-1 subdivision with midpoint projection to the sphere."""
    edge_mid = {}
    verts = list(map(tuple, verts))

    def midpoint(i, j):
        key = (min(i, j), max(i, j))
        if key not in edge_mid:
            v = 0.5 * (np.array(verts[i]) + np.array(verts[j]))
            v /= np.linalg.norm(v)
            verts.append(tuple(v))
            edge_mid[key] = len(verts) - 1
        return edge_mid[key]

    new_faces = []
    for a, b, c in faces:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        new_faces.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
    return np.array(verts), np.array(new_faces, dtype=np.int64)


def icosphere(level):
    """Icosphere at the given subdivision level (level 0 = icosahedron)."""
    verts, faces = icosahedron()
    for _ in range(level):
        verts, faces = subdivide(verts, faces)
    return verts, faces


def euler_characteristic(verts, faces):
    edges = set()
    for a, b, c in faces:
        edges.update({(min(a, b), max(a, b)), (min(b, c), max(b, c)),
                      (min(c, a), max(c, a))})
    return len(verts) - len(edges) + len(faces)


def fem_matrices(verts, faces, potential=None, mass_weight=None):
    """Linear FEM matrices on a triangle mesh.

    Parameters
    ----------
    verts, faces : arrays
        Mesh geometry (closed surface).
    potential : array (nv,), optional
        Scalar q at vertices.  When given, the returned ``A`` is
        stiffness - potential, with the potential term assembled as the
        consistent mass of the per-triangle mean of q.
    mass_weight : array (nv,), optional
        Pointwise weight for the mass matrix (conformal factor e^{2 phi});
        defaults to 1.

    Returns
    -------
    A, M : csr_matrix
        Quadratic-form matrix and (weighted) mass matrix.
    """
    v1 = verts[faces[:, 0]]
    v2 = verts[faces[:, 1]]
    v3 = verts[faces[:, 2]]
    e12, e23, e31 = v2 - v1, v3 - v2, v1 - v3
    cr = np.cross(e23, e31)
    area4 = 2.0 * np.linalg.norm(cr, axis=1)   # 4 * triangle area

    # cotangent weights (see row-sum-zero assembly)
    a12 = np.einsum('ij,ij->i', e23, e31) / area4
    a23 = np.einsum('ij,ij->i', e31, e12) / area4
    a31 = np.einsum('ij,ij->i', e12, e23) / area4
    a11, a22, a33 = -a12 - a31, -a12 - a23, -a31 - a23

    t1, t2, t3 = faces[:, 0], faces[:, 1], faces[:, 2]
    rows = np.column_stack((t1, t2, t2, t3, t3, t1, t1, t2, t3)).ravel()
    cols = np.column_stack((t2, t1, t3, t2, t1, t3, t1, t2, t3)).ravel()
    vals = np.column_stack((a12, a12, a23, a23, a31, a31, a11, a22, a33)).ravel()
    n = len(verts)
    stiff = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))

    def consistent_mass(scale):
        b_ii = scale * area4 / 24.0
        b_ij = scale * area4 / 48.0
        mv = np.column_stack((b_ij,) * 6 + (b_ii,) * 3).ravel()
        return sparse.csr_matrix((mv, (rows, cols)), shape=(n, n))

    if mass_weight is None:
        mass = consistent_mass(np.ones(len(faces)))
    else:
        wtri = (mass_weight[t1] + mass_weight[t2] + mass_weight[t3]) / 3.0
        mass = consistent_mass(wtri)

    A = stiff
    if potential is not None:
        qtri = (potential[t1] + potential[t2] + potential[t3]) / 3.0
        A = stiff - consistent_mass(qtri)
    return A.tocsr(), mass.tocsr()


def vertex_areas(verts, faces):
    """Lumped (barycentric) vertex areas of the polyhedral mesh."""
    v1 = verts[faces[:, 0]]
    v2 = verts[faces[:, 1]]
    v3 = verts[faces[:, 2]]
    cr = np.cross(v2 - v1, v3 - v1)
    tri_area = 0.5 * np.linalg.norm(cr, axis=1)
    areas = np.zeros(len(verts))
    for k in range(3):
        np.add.at(areas, faces[:, k], tri_area / 3.0)
    return areas
