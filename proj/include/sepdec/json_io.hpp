#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sepdec/core_types.hpp"
#include "sepdec/decomposer.hpp"
#include "sepdec/instance_gen.hpp"
#include "sepdec/ppt_structure.hpp"
#include "sepdec/state_builder.hpp"

namespace sepdec {

/// Instance format (stable): {"n": int, "x": [[{"re","im"} x n] x n]} with
/// x[l-1][j-1] holding x_l^j, plus an optional trailing "label". Floats use
/// the shortest round-trip representation; field order is fixed. Parsing
/// rejects NaN/Inf components.
std::string instance_to_json(const ClassParams& params);
ClassParams instance_from_json(std::string_view text, const Tolerances& tol = {});

/// {"n", "kind", "seed", "epsilon"?, "label"?}
std::string genspec_to_json(const GenSpec& spec);
GenSpec genspec_from_json(std::string_view text);

/// {"is_ppt", "max_minor_residual", "witness", "theta", "sum_defect_k"};
/// witness is null when the test passes, theta and sum_defect_k are null when
/// it fails (the angles are only defined on passing instances).
std::string structural_report_to_json(const StructuralReport& report,
                                      const std::optional<ThetaData>& theta);

/// {"is_ppt", "min_eigenvalue", "eigenvalues"}
std::string spectral_report_to_json(const SpectralReport& report);

/// Decomposition format (stable): {"n", "terms": [{"p", "a", "b"} x n],
/// "residuals": {"reconstruction", "max_rank1"}, "free_constant"}.
std::string decomposition_to_json(const SeparableDecomposition& decomp);
SeparableDecomposition decomposition_from_json(std::string_view text);

/// {"pass", "shape_ok", "reconstruction_frobenius", "weight_sum_defect",
///  "min_weight", "max_a_norm_defect", "max_b_norm_defect"}
std::string verify_report_to_json(const VerifyReport& report);

/// Debug dump {"n", "mat": row-major {"re","im"} pairs}. Not a
/// stability-guaranteed format.
std::string density_to_json(const DensityOperator& rho);

/// Write text to path atomically (temp file in the same directory + rename).
void write_file_atomic(const std::string& path, std::string_view text);
std::string read_file(const std::string& path);

}  // namespace sepdec
