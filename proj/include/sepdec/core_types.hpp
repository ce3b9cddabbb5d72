#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace sepdec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using IVector = Eigen::VectorXi;

enum class ErrorCode {
  BadShape,
  ZeroEntry,
  BadTrace,
  ParseError,
  NotPPT,
  InconsistentTheta,
  SumDefect,
  BadS,
  MixIdentityViolated,
  RankOneFailure,
  EigensolverFailure,
  DegenerateDraw,
  BadArgument,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg);

/// Numerical policy shared by the whole pipeline.
struct Tolerances {
  /// Entries at or below this magnitude count as zero.
  double zero_threshold = 1e-12;
  /// Residual bound for identities, plug-backs and reconstructions.
  double residual_tol = 1e-9;
  /// Absolute slack on minimum eigenvalues when testing positivity.
  double psd_tol = 1e-10;

  void check() const;  // throws BadArgument when ill-formed
};

/// Band inside which the structural and the spectral verdicts are allowed to
/// disagree (both tests sit on top of their own numerical thresholds, so
/// instances close to the boundary are classified, not asserted).
struct AgreementBand {
  double eig_abs = 1e-7;       ///< |min eigenvalue| at or below this is borderline
  double residual_lo = 1e-11;  ///< structural residual inside (lo, hi) is borderline
  double residual_hi = 1e-7;

  bool borderline(double max_minor_residual, double min_eigenvalue) const {
    return std::abs(min_eigenvalue) <= eig_abs ||
           (max_minor_residual > residual_lo && max_minor_residual < residual_hi);
  }
};

/// 1-based residue representative: cyc(i, n) lies in {1,...,n}, is n-periodic
/// and total for any integer i (negatives included).
int cyc(long long i, int n);

/// Reduce an angle to its principal value in (-pi, pi].
double principal_angle(double angle);

/// Absolute circular distance between two angles, in [0, pi].
double angular_distance(double a, double b);

/// Validated coefficient table of a state in the shifted-diagonal class.
///
/// Row l (1-based) holds the coefficients of the l-th spectral term; column j
/// is the component index, so x(l, j) multiplies |j> (x) |j+l-1 mod n>.
/// Validation enforces a square table with n >= 2, no vanishing entries and
/// unit total squared magnitude. Instances are immutable once built.
class ClassParams {
 public:
  static ClassParams validate(const CMatrix& table, const Tolerances& tol = {});
  static ClassParams validate(const CMatrix& table, std::string label,
                              const Tolerances& tol = {});

  int n() const noexcept { return n_; }

  /// Coefficient x_l^j, 1-based indices.
  Complex x(int l, int j) const { return x_(l - 1, j - 1); }
  /// Spectral weight of row l: sum_j |x_l^j|^2.
  double lambda(int l) const { return lambda_(l - 1); }
  /// Unit-normalized row entry v_l^j = x_l^j / sqrt(lambda_l).
  Complex v(int l, int j) const;

  const CMatrix& table() const noexcept { return x_; }
  const RVector& weights() const noexcept { return lambda_; }
  const Tolerances& tol() const noexcept { return tol_; }
  const std::string& label() const noexcept { return label_; }

 private:
  ClassParams(CMatrix table, RVector lambda, Tolerances tol, std::string label);

  int n_;
  CMatrix x_;
  RVector lambda_;
  Tolerances tol_;
  std::string label_;
};

/// Rescale a raw table by a global constant so its squared magnitudes sum to 1.
/// Validation never rescales silently; callers opt in through this helper.
CMatrix renormalize(const CMatrix& table);

}  // namespace sepdec
