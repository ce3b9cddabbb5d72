#pragma once

#include <vector>

#include "sepdec/core_types.hpp"
#include "sepdec/ppt_structure.hpp"

namespace sepdec {

struct DeltaSolution {
  RVector delta;
  double free_constant = 0.0;
  /// Integer lift: the real system solved is L*delta = theta + 2*pi*kappa.
  IVector kappa;
  Tolerances tol;
};

/// Solve the cyclic second-difference system
///   2 delta_i - delta_{i+1} - delta_{i-1} = theta_i (mod 2*pi).
/// The angles must sum to a multiple of 2*pi (SumDefect otherwise); the lift
/// kappa = (-k, 0, ..., 0) with k = sum_defect_k makes the real system
/// consistent, and the kernel (constant vector) is pinned by
/// delta_1 = free_constant. The congruence plug-back is checked before
/// returning.
DeltaSolution solve_delta(const ThetaData& theta, double free_constant);

/// Row-phased Fourier mixing matrix,
///   u_{kl} = (1/sqrt n) exp(i((k-1)(l-1) 2*pi/n + delta_k)).
struct MixingUnitary {
  int n = 0;
  CMatrix mat;
};

MixingUnitary build_unitary(const DeltaSolution& delta, int n);

/// Coefficient matrices of the mixed vectors: entry (r, s) of the l-th matrix
/// is u_{cyc(s-r+1), l} * x_{cyc(s-r+1)}^r, so the row-major flattening of the
/// l-th matrix equals sum_k u_{kl} |X_k> in the product basis. That identity
/// is asserted against a directly mixed copy (MixIdentityViolated on
/// disagreement -- it signals an index-convention bug, not bad data).
std::vector<CMatrix> mixed_coefficients(const ClassParams& params,
                                        const MixingUnitary& unitary);

struct RankOneFactor {
  CVector phi;  ///< absorbs the dominant singular value
  CVector psi;
  double residual;  ///< ||B - phi psi^T||_F / ||B||_F
};

/// Best rank-one factorization via the dominant singular triple.
RankOneFactor factor_rank1(const CMatrix& mat);

struct DecompositionTerm {
  double p = 0.0;
  CVector a;
  CVector b;
};

/// Convex combination of pure product states reproducing rho:
///   sum_l p_l (a_l a_l^dag) (x) (b_l b_l^dag).
struct SeparableDecomposition {
  int n = 0;
  std::vector<DecompositionTerm> terms;
  double reconstruction_frobenius = 0.0;
  double max_rank1_residual = 0.0;
  double free_constant = 0.0;
};

/// Full pipeline: extract_theta -> solve_delta -> build_unitary ->
/// mixed_coefficients -> per-term rank-one factorization, verified before
/// returning. Throws NotPPT when the structural gate fails and
/// RankOneFailure when a coefficient matrix resists factorization despite
/// structural PPT (tolerance escalation, with the offending term index).
SeparableDecomposition decompose(const ClassParams& params,
                                 double free_constant = 0.0);

struct VerifyReport {
  bool pass = false;
  bool shape_ok = false;
  double reconstruction_frobenius = 0.0;
  double weight_sum_defect = 0.0;
  double min_weight = 0.0;
  double max_a_norm_defect = 0.0;
  double max_b_norm_defect = 0.0;
};

/// Independent verifier: rebuilds rho from the parameters and from the terms
/// separately and reports distances and normalization defects. Report-only.
VerifyReport verify_decomposition(const SeparableDecomposition& decomp,
                                  const ClassParams& params);

/// One verified decomposition per gauge constant. Deterministic: equal
/// constants give identical outputs.
std::vector<SeparableDecomposition> enumerate_gauge(
    const ClassParams& params, const std::vector<double>& constants);

}  // namespace sepdec
