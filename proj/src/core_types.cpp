#include "sepdec/core_types.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace sepdec {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::ZeroEntry: return "ZeroEntry";
    case ErrorCode::BadTrace: return "BadTrace";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPPT: return "NotPPT";
    case ErrorCode::InconsistentTheta: return "InconsistentTheta";
    case ErrorCode::SumDefect: return "SumDefect";
    case ErrorCode::BadS: return "BadS";
    case ErrorCode::MixIdentityViolated: return "MixIdentityViolated";
    case ErrorCode::RankOneFailure: return "RankOneFailure";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

void Tolerances::check() const {
  if (!(zero_threshold > 0.0) || !(residual_tol > 0.0) || !(psd_tol > 0.0))
    fail(ErrorCode::BadArgument, "tolerances must be strictly positive");
  if (!(residual_tol > zero_threshold))
    fail(ErrorCode::BadArgument, "residual_tol must exceed zero_threshold");
}

int cyc(long long i, int n) {
  if (n < 2) fail(ErrorCode::BadArgument, "cyclic index needs n >= 2");
  long long r = (i - 1) % n;
  if (r < 0) r += n;
  return static_cast<int>(r) + 1;
}

double principal_angle(double angle) {
  double r = std::remainder(angle, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

double angular_distance(double a, double b) {
  return std::abs(principal_angle(a - b));
}

ClassParams::ClassParams(CMatrix table, RVector lambda, Tolerances tol,
                         std::string label)
    : n_(static_cast<int>(table.rows())),
      x_(std::move(table)),
      lambda_(std::move(lambda)),
      tol_(tol),
      label_(std::move(label)) {}

Complex ClassParams::v(int l, int j) const {
  return x_(l - 1, j - 1) / std::sqrt(lambda_(l - 1));
}

ClassParams ClassParams::validate(const CMatrix& table, const Tolerances& tol) {
  return validate(table, std::string{}, tol);
}

ClassParams ClassParams::validate(const CMatrix& table, std::string label,
                                  const Tolerances& tol) {
  tol.check();
  if (table.rows() != table.cols() || table.rows() < 2) {
    std::ostringstream os;
    os << "coefficient table must be square with n >= 2, got " << table.rows()
       << "x" << table.cols();
    fail(ErrorCode::BadShape, os.str());
  }
  const int n = static_cast<int>(table.rows());
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      const Complex entry = table(l, j);
      if (!std::isfinite(entry.real()) || !std::isfinite(entry.imag()))
        fail(ErrorCode::BadArgument, "non-finite entry at x[" +
                                         std::to_string(l + 1) + "][" +
                                         std::to_string(j + 1) + "]");
      if (std::abs(entry) <= tol.zero_threshold)
        fail(ErrorCode::ZeroEntry, "entry x[" + std::to_string(l + 1) + "][" +
                                       std::to_string(j + 1) +
                                       "] vanishes; outside the state class");
    }
  }
  RVector lambda(n);
  for (int l = 0; l < n; ++l) lambda(l) = table.row(l).squaredNorm();
  const double trace = lambda.sum();
  if (std::abs(trace - 1.0) > tol.residual_tol) {
    std::ostringstream os;
    os << "squared magnitudes sum to " << trace << ", expected 1";
    fail(ErrorCode::BadTrace, os.str());
  }
  for (int l = 0; l < n; ++l) {
    if (!(lambda(l) > 0.0 && lambda(l) < 1.0))
      fail(ErrorCode::BadTrace, "spectral weight lambda[" +
                                    std::to_string(l + 1) +
                                    "] lies outside (0, 1)");
  }
  return ClassParams(table, std::move(lambda), tol, std::move(label));
}

CMatrix renormalize(const CMatrix& table) {
  const double total = table.squaredNorm();
  if (!(total > 0.0) || !std::isfinite(total))
    fail(ErrorCode::BadArgument, "cannot renormalize this table");
  return table / std::sqrt(total);
}

}  // namespace sepdec
