"""Numerical policy constants, centralized so there is a single audit point.

All tolerances are absolute. Matrices handled by this package are small
(dimension of order tens) and normalized (traces and norms of order one),
so absolute tolerances are meaningful.
"""

# Construction-time checks.
HERMITICITY_TOL = 1e-10    # max entrywise |A - A^dagger| accepted as Hermitian
DENSITY_TRACE_TOL = 1e-10  # |tr(rho) - 1| accepted for density matrices
DENSITY_EIG_TOL = 1e-10    # eigenvalues of a density matrix may dip this far below 0
STATE_NORM_TOL = 1e-12     # | ||psi|| - 1 | accepted for pure states

# Eigendecomposition quality.
RECONSTRUCTION_TOL = 1e-8  # entrywise error of sum_k e_k |v_k><v_k| vs the input
ORTHONORMALITY_TOL = 1e-8  # |<v_j|v_k> - delta_jk| for eigenvector sets and bases

# Spectrum and region arithmetic.
ZERO_EIGENVALUE_TOL = 1e-12  # environment eigenvalues at or below this are exact zeros
BOUNDARY_TOL = 1e-12         # reflectivities this close to a region boundary label as III

# Measurement construction.
POSITIVE_PART_TOL = 1e-12  # eigenvalues within this band of zero go to the "absent" projector
