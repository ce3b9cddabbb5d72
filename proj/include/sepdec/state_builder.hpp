#pragma once

#include "sepdec/core_types.hpp"

namespace sepdec {

/// Dense operator on the bipartite product basis. The basis vector
/// |a> (x) |b> (1-based a, b) sits at flat index (a-1)*n + (b-1).
struct DensityOperator {
  int n = 0;
  CMatrix mat;  // n^2 x n^2
};

/// Flat 0-based index of |a> (x) |b>.
inline int flat_index(int a, int b, int n) { return (a - 1) * n + (b - 1); }

/// Materialize rho = sum_{l,j,k} x_l^j conj(x_l^k)
///   |j><k| (x) |j+l-1><k+l-1|  (indices mod n).
/// Hermitian, PSD, unit trace, rank n.
DensityOperator build_rho(const ClassParams& params);

/// Transpose on the first tensor factor: ((a,b),(c,d)) <- ((c,b),(a,d)).
/// Involutive; preserves Hermiticity and trace.
DensityOperator partial_transpose(const DensityOperator& rho);

struct SpectralReport {
  double min_eigenvalue = 0.0;
  RVector eigenvalues;  // ascending, n^2 entries, sum to 1
  bool is_ppt = false;  // min_eigenvalue >= -psd_tol
};

/// Independent spectral PPT oracle: eigendecomposes rho^{T1} built from the
/// validated parameters. Throws EigensolverFailure on non-convergence.
SpectralReport spectral_ppt(const ClassParams& params);

/// Ascending eigenvalues of a Hermitian matrix.
RVector hermitian_eigenvalues(const CMatrix& mat);

}  // namespace sepdec
