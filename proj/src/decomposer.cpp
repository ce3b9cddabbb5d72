#include "sepdec/decomposer.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "sepdec/state_builder.hpp"

namespace sepdec {

DeltaSolution solve_delta(const ThetaData& theta, double free_constant) {
  const int n = theta.n;
  if (n < 2 || theta.theta.size() != n)
    fail(ErrorCode::BadArgument, "malformed theta data");
  if (!std::isfinite(free_constant))
    fail(ErrorCode::BadArgument, "free constant must be finite");
  const double two_pi = 2.0 * M_PI;
  const double total = theta.theta.sum();
  const long long k = std::llround(total / two_pi);
  if (std::abs(total - two_pi * static_cast<double>(k)) > theta.tol.residual_tol) {
    std::ostringstream os;
    os << "angles sum to " << total
       << " which is not a multiple of 2*pi; the state is outside the PPT "
          "family or the extraction failed";
    fail(ErrorCode::SumDefect, os.str());
  }

  // Row 1 of the cyclic Laplacian is implied by the others once the sum
  // vanishes, so it is replaced by the gauge pin delta_1 = free_constant.
  // The remaining rows are solved exactly as reals; the 2*pi*kappa lift only
  // touches the discarded row.
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(n, n);
  RVector rhs = RVector::Zero(n);
  lhs(0, 0) = 1.0;
  rhs(0) = free_constant;
  for (int i = 2; i <= n; ++i) {
    lhs(i - 1, i - 1) += 2.0;
    lhs(i - 1, cyc(i + 1, n) - 1) -= 1.0;
    lhs(i - 1, cyc(i - 1, n) - 1) -= 1.0;
    rhs(i - 1) = theta.theta(i - 1);
  }

  DeltaSolution solution;
  solution.delta = lhs.partialPivLu().solve(rhs);
  solution.free_constant = free_constant;
  solution.kappa = IVector::Zero(n);
  solution.kappa(0) = static_cast<int>(-k);
  solution.tol = theta.tol;

  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double second_difference = 2.0 * solution.delta(i - 1) -
                                     solution.delta(cyc(i + 1, n) - 1) -
                                     solution.delta(cyc(i - 1, n) - 1);
    worst = std::max(worst,
                     angular_distance(second_difference, theta.theta(i - 1)));
  }
  if (worst > theta.tol.residual_tol)
    fail(ErrorCode::SumDefect,
         "delta plug-back residual " + std::to_string(worst) +
             " exceeds tolerance");
  return solution;
}

MixingUnitary build_unitary(const DeltaSolution& delta, int n) {
  if (n < 2 || delta.delta.size() != n)
    fail(ErrorCode::BadArgument, "delta solution does not match the dimension");
  const double omega = 2.0 * M_PI / n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMatrix mat(n, n);
  for (int k = 1; k <= n; ++k) {
    if (!std::isfinite(delta.delta(k - 1)))
      fail(ErrorCode::BadArgument, "non-finite phase in delta solution");
    for (int l = 1; l <= n; ++l)
      mat(k - 1, l - 1) = std::polar(
          scale, static_cast<double>(k - 1) * (l - 1) * omega + delta.delta(k - 1));
  }
  const double defect =
      (mat.adjoint() * mat - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > delta.tol.residual_tol)
    fail(ErrorCode::Internal,
         "mixing matrix failed its unitarity check, defect " +
             std::to_string(defect));
  return {n, std::move(mat)};
}

std::vector<CMatrix> mixed_coefficients(const ClassParams& params,
                                        const MixingUnitary& unitary) {
  const int n = params.n();
  if (unitary.n != n || unitary.mat.rows() != n || unitary.mat.cols() != n)
    fail(ErrorCode::BadShape, "mixing matrix does not match the instance");

  // Direct mixing: column k of `columns` is |X_k| in the product basis.
  CMatrix columns = CMatrix::Zero(n * n, n);
  for (int k = 1; k <= n; ++k)
    for (int r = 1; r <= n; ++r)
      columns(flat_index(r, cyc(r + k - 1, n), n), k - 1) = params.x(k, r);
  const CMatrix mixed = columns * unitary.mat;

  std::vector<CMatrix> result;
  result.reserve(n);
  double worst = 0.0;
  for (int l = 1; l <= n; ++l) {
    CMatrix block(n, n);
    for (int r = 1; r <= n; ++r) {
      for (int s = 1; s <= n; ++s) {
        const int k = cyc(s - r + 1, n);
        block(r - 1, s - 1) = unitary.mat(k - 1, l - 1) * params.x(k, r);
        worst = std::max(worst, std::abs(block(r - 1, s - 1) -
                                         mixed(flat_index(r, s, n), l - 1)));
      }
    }
    result.push_back(std::move(block));
  }
  if (worst > params.tol().residual_tol)
    fail(ErrorCode::MixIdentityViolated,
         "entry rule disagrees with direct mixing by " + std::to_string(worst));
  return result;
}

RankOneFactor factor_rank1(const CMatrix& mat) {
  if (mat.rows() < 1 || mat.rows() != mat.cols())
    fail(ErrorCode::BadShape, "rank-one factorization expects a square matrix");
  Eigen::JacobiSVD<CMatrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RankOneFactor factor;
  factor.phi = svd.singularValues()(0) * svd.matrixU().col(0);
  factor.psi = svd.matrixV().col(0).conjugate();
  const double denom =
      std::max(mat.norm(), std::numeric_limits<double>::min());
  factor.residual = (mat - factor.phi * factor.psi.transpose()).norm() / denom;
  return factor;
}

SeparableDecomposition decompose(const ClassParams& params,
                                 double free_constant) {
  const int n = params.n();
  const ThetaData theta = extract_theta(params);  // NotPPT when the gate fails
  const DeltaSolution delta = solve_delta(theta, free_constant);
  const MixingUnitary unitary = build_unitary(delta, n);
  const std::vector<CMatrix> blocks = mixed_coefficients(params, unitary);

  SeparableDecomposition decomp;
  decomp.n = n;
  decomp.free_constant = free_constant;
  decomp.max_rank1_residual = 0.0;
  decomp.terms.reserve(n);
  for (int l = 0; l < n; ++l) {
    const RankOneFactor factor = factor_rank1(blocks[l]);
    if (factor.residual > params.tol().residual_tol) {
      std::ostringstream os;
      os << "coefficient matrix " << (l + 1) << " resists rank-one "
         << "factorization (residual " << factor.residual
         << ") although the structural test passed";
      fail(ErrorCode::RankOneFailure, os.str());
    }
    decomp.max_rank1_residual =
        std::max(decomp.max_rank1_residual, factor.residual);
    DecompositionTerm term;
    term.p = blocks[l].squaredNorm();
    term.a = factor.phi.normalized();
    term.b = factor.psi.normalized();
    decomp.terms.push_back(std::move(term));
  }

  const VerifyReport report = verify_decomposition(decomp, params);
  decomp.reconstruction_frobenius = report.reconstruction_frobenius;
  if (!report.pass)
    fail(ErrorCode::Internal,
         "decomposition failed its own verification (reconstruction " +
             std::to_string(report.reconstruction_frobenius) + ")");
  return decomp;
}

VerifyReport verify_decomposition(const SeparableDecomposition& decomp,
                                  const ClassParams& params) {
  const int n = params.n();
  VerifyReport report;
  report.shape_ok = decomp.n == n &&
                    decomp.terms.size() == static_cast<std::size_t>(n);
  for (const DecompositionTerm& term : decomp.terms)
    report.shape_ok = report.shape_ok && term.a.size() == n && term.b.size() == n;
  if (!report.shape_ok) return report;

  CMatrix rebuilt = CMatrix::Zero(n * n, n * n);
  double weight_sum = 0.0;
  report.min_weight = std::numeric_limits<double>::infinity();
  for (const DecompositionTerm& term : decomp.terms) {
    weight_sum += term.p;
    report.min_weight = std::min(report.min_weight, term.p);
    report.max_a_norm_defect =
        std::max(report.max_a_norm_defect, std::abs(term.a.norm() - 1.0));
    report.max_b_norm_defect =
        std::max(report.max_b_norm_defect, std::abs(term.b.norm() - 1.0));
    CVector product(n * n);
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= n; ++s)
        product(flat_index(r, s, n)) = term.a(r - 1) * term.b(s - 1);
    rebuilt += term.p * (product * product.adjoint());
  }
  report.weight_sum_defect = std::abs(weight_sum - 1.0);
  report.reconstruction_frobenius = (rebuilt - build_rho(params).mat).norm();

  const double tol = params.tol().residual_tol;
  report.pass = report.min_weight > 0.0 && report.weight_sum_defect <= tol &&
                report.max_a_norm_defect <= tol &&
                report.max_b_norm_defect <= tol &&
                report.reconstruction_frobenius <= tol;
  return report;
}

std::vector<SeparableDecomposition> enumerate_gauge(
    const ClassParams& params, const std::vector<double>& constants) {
  std::vector<SeparableDecomposition> result;
  result.reserve(constants.size());
  for (double constant : constants)
    result.push_back(decompose(params, constant));
  return result;
}

}  // namespace sepdec
