#include "sepdec/state_builder.hpp"

#include <Eigen/Eigenvalues>

namespace sepdec {

DensityOperator build_rho(const ClassParams& params) {
  const int n = params.n();
  CMatrix mat = CMatrix::Zero(n * n, n * n);
  for (int l = 1; l <= n; ++l) {
    for (int j = 1; j <= n; ++j) {
      const int row = flat_index(j, cyc(j + l - 1, n), n);
      for (int k = 1; k <= n; ++k) {
        mat(row, flat_index(k, cyc(k + l - 1, n), n)) +=
            params.x(l, j) * std::conj(params.x(l, k));
      }
    }
  }
  return {n, std::move(mat)};
}

DensityOperator partial_transpose(const DensityOperator& rho) {
  const int n = rho.n;
  if (n < 2 || rho.mat.rows() != n * n || rho.mat.cols() != n * n)
    fail(ErrorCode::BadShape, "density operator must be n^2 x n^2 with n >= 2");
  CMatrix out(n * n, n * n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d)
          out(flat_index(a, b, n), flat_index(c, d, n)) =
              rho.mat(flat_index(c, b, n), flat_index(a, d, n));
  return {n, std::move(out)};
}

RVector hermitian_eigenvalues(const CMatrix& mat) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(mat, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::EigensolverFailure, "hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

SpectralReport spectral_ppt(const ClassParams& params) {
  const DensityOperator transposed = partial_transpose(build_rho(params));
  SpectralReport report;
  report.eigenvalues = hermitian_eigenvalues(transposed.mat);
  report.min_eigenvalue = report.eigenvalues(0);
  report.is_ppt = report.min_eigenvalue >= -params.tol().psd_tol;
  return report;
}

}  // namespace sepdec
