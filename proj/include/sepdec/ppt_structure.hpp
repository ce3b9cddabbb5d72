#pragma once

#include "sepdec/core_types.hpp"

namespace sepdec {

/// One of the n Hermitian blocks into which the quadratic form of rho^{T1}
/// decouples. Entry (j, k) is x_l^j * conj(x_l^k) with l = cyc(m - j - k).
/// The diagonal is strictly positive for every class instance.
struct StructureMatrix {
  int m = 0;    // 1-based block index
  CMatrix mat;  // n x n, Hermitian
};

StructureMatrix structure_matrix(const ClassParams& params, int m);

/// A 2x2 minor of block m selected by rows (j, k) and columns (p, q), 1-based.
struct MinorWitness {
  int m = 0, j = 0, k = 0, p = 0, q = 0;
};

struct StructuralReport {
  bool is_ppt = false;
  /// Largest minor magnitude, normalized by the larger of the two entry
  /// products involved (scale-invariant).
  double max_minor_residual = 0.0;
  MinorWitness worst_witness;
  RVector per_m_min_eig;  // redundant eigensolve of each block
};

/// Structural PPT test: every 2x2 minor of every block must vanish. With all
/// entries nonzero this is equivalent to each block being PSD of rank one.
/// Violations are reported, never thrown.
StructuralReport check_minor_relations(const ClassParams& params);

struct ThetaData {
  int n = 0;
  /// Principal angles in (-pi, pi]; theta(m-1) is extracted at base index j=1.
  RVector theta;
  /// Max angular deviation of the extraction across base indices j.
  double consistency_residual = 0.0;
  /// Integer k with sum(theta) = 2*pi*k (up to tolerance).
  int sum_defect_k = 0;
  Tolerances tol;
};

/// Extract the phase angles theta_m = arg(x_{m+1}^j x_{m-1}^{j+1} /
/// (x_m^j x_m^{j+1})). Requires the structural test to pass (NotPPT
/// otherwise); throws InconsistentTheta when the extraction disagrees across
/// base indices or the angles fail to sum to a multiple of 2*pi even though
/// the minors passed.
ThetaData extract_theta(const ClassParams& params);

/// Chain the s=1 relation into the order-s angle
///   theta_m^s = sum_{|t| < s} (s - |t|) theta_{m+t}  (principal value).
/// s must lie in 1..floor(n/2) (BadS otherwise); s=1 returns theta_m.
double derive_theta_s(const ThetaData& theta, int s, int m);

/// True iff the eigenvalue multiset of rho^{T1} equals the union of the
/// eigenvalue multisets of the n structure matrices (sorted comparison).
bool verify_block_decomposition(const ClassParams& params);

/// Max relative residual of the triple identity
///   A(i,j) A(j,k) A(k,i) = A(i,i) A(j,j) A(k,k)
/// over all blocks and index triples. Diagnostic only; zero for n < 3.
double order3_diagnostic(const ClassParams& params);

}  // namespace sepdec
