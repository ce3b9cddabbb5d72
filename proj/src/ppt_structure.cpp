#include "sepdec/ppt_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sepdec/state_builder.hpp"

namespace sepdec {

StructureMatrix structure_matrix(const ClassParams& params, int m) {
  const int n = params.n();
  const int block = cyc(m, n);
  CMatrix mat(n, n);
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const int l = cyc(block - j - k, n);
      mat(j - 1, k - 1) = params.x(l, j) * std::conj(params.x(l, k));
    }
  }
  return {block, std::move(mat)};
}

StructuralReport check_minor_relations(const ClassParams& params) {
  const int n = params.n();
  StructuralReport report;
  report.per_m_min_eig.resize(n);
  report.max_minor_residual = 0.0;
  report.worst_witness = {1, 1, 2, 1, 2};
  for (int m = 1; m <= n; ++m) {
    const StructureMatrix block = structure_matrix(params, m);
    report.per_m_min_eig(m - 1) = hermitian_eigenvalues(block.mat)(0);
    for (int j = 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        for (int p = 1; p <= n; ++p) {
          for (int q = p + 1; q <= n; ++q) {
            const Complex direct =
                block.mat(j - 1, p - 1) * block.mat(k - 1, q - 1);
            const Complex crossed =
                block.mat(j - 1, q - 1) * block.mat(k - 1, p - 1);
            const double scale =
                std::max({std::abs(direct), std::abs(crossed),
                          std::numeric_limits<double>::min()});
            const double residual = std::abs(direct - crossed) / scale;
            if (residual > report.max_minor_residual) {
              report.max_minor_residual = residual;
              report.worst_witness = {m, j, k, p, q};
            }
          }
        }
      }
    }
  }
  report.is_ppt = report.max_minor_residual <= params.tol().residual_tol;
  return report;
}

ThetaData extract_theta(const ClassParams& params) {
  const StructuralReport structural = check_minor_relations(params);
  if (!structural.is_ppt) {
    std::ostringstream os;
    os << "minor relations fail (max residual " << structural.max_minor_residual
       << "); the phase angles are ill-defined";
    fail(ErrorCode::NotPPT, os.str());
  }
  const int n = params.n();
  ThetaData data;
  data.n = n;
  data.tol = params.tol();
  data.theta.resize(n);
  data.consistency_residual = 0.0;
  for (int m = 1; m <= n; ++m) {
    for (int j = 1; j <= n; ++j) {
      const Complex num =
          params.x(cyc(m + 1, n), j) * params.x(cyc(m - 1, n), cyc(j + 1, n));
      const Complex den = params.x(m, j) * params.x(m, cyc(j + 1, n));
      const double angle = std::arg(num / den);
      if (j == 1) {
        data.theta(m - 1) = angle;
      } else {
        data.consistency_residual = std::max(
            data.consistency_residual, angular_distance(angle, data.theta(m - 1)));
      }
    }
  }
  if (data.consistency_residual > params.tol().residual_tol)
    fail(ErrorCode::InconsistentTheta,
         "angle extraction disagrees across base indices by " +
             std::to_string(data.consistency_residual) +
             " although the minor test passed; tolerances are mis-calibrated");
  const double total = data.theta.sum();
  const long long k = std::llround(total / (2.0 * M_PI));
  data.sum_defect_k = static_cast<int>(k);
  if (std::abs(total - 2.0 * M_PI * static_cast<double>(k)) >
      params.tol().residual_tol)
    fail(ErrorCode::InconsistentTheta,
         "angles sum to " + std::to_string(total) +
             " which is not a multiple of 2*pi; tolerances are mis-calibrated");
  return data;
}

double derive_theta_s(const ThetaData& theta, int s, int m) {
  const int n = theta.n;
  if (n < 2 || theta.theta.size() != n)
    fail(ErrorCode::BadArgument, "malformed theta data");
  if (s < 1 || s > n / 2)
    fail(ErrorCode::BadS, "s must lie in 1..floor(n/2), got " + std::to_string(s));
  const int base = cyc(m, n);
  double total = 0.0;
  for (int t = -(s - 1); t <= s - 1; ++t)
    total += static_cast<double>(s - std::abs(t)) * theta.theta(cyc(base + t, n) - 1);
  return principal_angle(total);
}

bool verify_block_decomposition(const ClassParams& params) {
  const int n = params.n();
  const RVector transposed =
      hermitian_eigenvalues(partial_transpose(build_rho(params)).mat);
  RVector stacked(n * n);
  for (int m = 1; m <= n; ++m)
    stacked.segment((m - 1) * n, n) =
        hermitian_eigenvalues(structure_matrix(params, m).mat);
  std::sort(stacked.begin(), stacked.end());
  return (stacked - transposed).cwiseAbs().maxCoeff() <=
         params.tol().residual_tol;
}

double order3_diagnostic(const ClassParams& params) {
  const int n = params.n();
  double worst = 0.0;
  for (int m = 1; m <= n; ++m) {
    const CMatrix& a = structure_matrix(params, m).mat;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          const Complex cycle = a(i, j) * a(j, k) * a(k, i);
          const Complex diag = a(i, i) * a(j, j) * a(k, k);
          const double scale = std::max({std::abs(cycle), std::abs(diag),
                                         std::numeric_limits<double>::min()});
          worst = std::max(worst, std::abs(cycle - diag) / scale);
        }
      }
    }
  }
  return worst;
}

}  // namespace sepdec
