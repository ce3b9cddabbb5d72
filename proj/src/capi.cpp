#include "sepdec/sepdec.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include <json.hpp>

#include "sepdec/core_types.hpp"
#include "sepdec/decomposer.hpp"
#include "sepdec/instance_gen.hpp"
#include "sepdec/json_io.hpp"
#include "sepdec/ppt_structure.hpp"
#include "sepdec/state_builder.hpp"

struct sepdec_instance {
  sepdec::ClassParams params;
};

struct sepdec_decomposition {
  sepdec::SeparableDecomposition value;
};

namespace {

thread_local std::string g_last_error;

sepdec_status status_from(sepdec::ErrorCode code) {
  using sepdec::ErrorCode;
  switch (code) {
    case ErrorCode::BadShape: return SEPDEC_ERR_BAD_SHAPE;
    case ErrorCode::ZeroEntry: return SEPDEC_ERR_ZERO_ENTRY;
    case ErrorCode::BadTrace: return SEPDEC_ERR_BAD_TRACE;
    case ErrorCode::ParseError: return SEPDEC_ERR_PARSE;
    case ErrorCode::NotPPT: return SEPDEC_ERR_NOT_PPT;
    case ErrorCode::InconsistentTheta: return SEPDEC_ERR_INCONSISTENT_THETA;
    case ErrorCode::SumDefect: return SEPDEC_ERR_SUM_DEFECT;
    case ErrorCode::BadS: return SEPDEC_ERR_BAD_S;
    case ErrorCode::MixIdentityViolated: return SEPDEC_ERR_MIX_IDENTITY;
    case ErrorCode::RankOneFailure: return SEPDEC_ERR_RANK_ONE;
    case ErrorCode::EigensolverFailure: return SEPDEC_ERR_EIGENSOLVER;
    case ErrorCode::DegenerateDraw: return SEPDEC_ERR_DEGENERATE_DRAW;
    case ErrorCode::BadArgument: return SEPDEC_ERR_BAD_ARGUMENT;
    case ErrorCode::Internal: return SEPDEC_ERR_INTERNAL;
  }
  return SEPDEC_ERR_INTERNAL;
}

template <typename Fn>
sepdec_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SEPDEC_OK;
  } catch (const sepdec::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SEPDEC_ERR_INTERNAL;
  }
}

sepdec::Tolerances to_cpp(const sepdec_tolerances* tol) {
  if (tol == nullptr) return {};
  sepdec::Tolerances out;
  out.zero_threshold = tol->zero_threshold;
  out.residual_tol = tol->residual_tol;
  out.psd_tol = tol->psd_tol;
  return out;
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) sepdec::fail(sepdec::ErrorCode::BadArgument, what);
}

}  // namespace

extern "C" {

const char* sepdec_version(void) { return "0.1.0"; }

const char* sepdec_status_name(sepdec_status status) {
  switch (status) {
    case SEPDEC_OK: return "OK";
    case SEPDEC_ERR_BAD_SHAPE: return "BadShape";
    case SEPDEC_ERR_ZERO_ENTRY: return "ZeroEntry";
    case SEPDEC_ERR_BAD_TRACE: return "BadTrace";
    case SEPDEC_ERR_PARSE: return "ParseError";
    case SEPDEC_ERR_NOT_PPT: return "NotPPT";
    case SEPDEC_ERR_INCONSISTENT_THETA: return "InconsistentTheta";
    case SEPDEC_ERR_SUM_DEFECT: return "SumDefect";
    case SEPDEC_ERR_BAD_S: return "BadS";
    case SEPDEC_ERR_MIX_IDENTITY: return "MixIdentityViolated";
    case SEPDEC_ERR_RANK_ONE: return "RankOneFailure";
    case SEPDEC_ERR_EIGENSOLVER: return "EigensolverFailure";
    case SEPDEC_ERR_DEGENERATE_DRAW: return "DegenerateDraw";
    case SEPDEC_ERR_BAD_ARGUMENT: return "BadArgument";
    case SEPDEC_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* sepdec_last_error(void) { return g_last_error.c_str(); }

void sepdec_tolerances_default(sepdec_tolerances* tol) {
  if (tol == nullptr) return;
  const sepdec::Tolerances defaults;
  tol->zero_threshold = defaults.zero_threshold;
  tol->residual_tol = defaults.residual_tol;
  tol->psd_tol = defaults.psd_tol;
}

void sepdec_string_free(char* text) { std::free(text); }

void sepdec_instance_free(sepdec_instance* inst) { delete inst; }

void sepdec_decomposition_free(sepdec_decomposition* dec) { delete dec; }

sepdec_status sepdec_generate(int n, const char* kind, uint64_t seed,
                              double epsilon, const char* label,
                              const sepdec_tolerances* tol,
                              sepdec_instance** out) {
  return guarded([&] {
    require(kind != nullptr && out != nullptr, "kind and out must not be NULL");
    sepdec::GenSpec spec;
    spec.n = n;
    spec.kind = sepdec::gen_kind_from_name(kind);
    spec.seed = seed;
    spec.epsilon = epsilon;
    if (label != nullptr) spec.label = label;
    *out = new sepdec_instance{sepdec::generate(spec, to_cpp(tol))};
  });
}

sepdec_status sepdec_instance_from_json(const char* json,
                                        const sepdec_tolerances* tol,
                                        sepdec_instance** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "json and out must not be NULL");
    *out = new sepdec_instance{sepdec::instance_from_json(json, to_cpp(tol))};
  });
}

sepdec_status sepdec_instance_to_json(const sepdec_instance* inst,
                                      char** json_out) {
  return guarded([&] {
    require(inst != nullptr && json_out != nullptr,
            "instance and out must not be NULL");
    *json_out = dup_string(sepdec::instance_to_json(inst->params));
  });
}

int sepdec_instance_dim(const sepdec_instance* inst) {
  return inst == nullptr ? -1 : inst->params.n();
}

sepdec_status sepdec_check_structural(const sepdec_instance* inst, int* is_ppt,
                                      char** report_json) {
  return guarded([&] {
    require(inst != nullptr, "instance must not be NULL");
    const sepdec::StructuralReport report =
        sepdec::check_minor_relations(inst->params);
    if (is_ppt != nullptr) *is_ppt = report.is_ppt ? 1 : 0;
    if (report_json != nullptr) {
      std::optional<sepdec::ThetaData> theta;
      if (report.is_ppt) theta = sepdec::extract_theta(inst->params);
      *report_json = dup_string(sepdec::structural_report_to_json(report, theta));
    }
  });
}

sepdec_status sepdec_check_spectral(const sepdec_instance* inst, int* is_ppt,
                                    char** report_json) {
  return guarded([&] {
    require(inst != nullptr, "instance must not be NULL");
    const sepdec::SpectralReport report = sepdec::spectral_ppt(inst->params);
    if (is_ppt != nullptr) *is_ppt = report.is_ppt ? 1 : 0;
    if (report_json != nullptr)
      *report_json = dup_string(sepdec::spectral_report_to_json(report));
  });
}

sepdec_status sepdec_check_both(const sepdec_instance* inst,
                                sepdec_verdict* verdict, char** report_json) {
  return guarded([&] {
    require(inst != nullptr, "instance must not be NULL");
    const sepdec::StructuralReport structural =
        sepdec::check_minor_relations(inst->params);
    const sepdec::SpectralReport spectral = sepdec::spectral_ppt(inst->params);
    const sepdec::AgreementBand band;
    const bool borderline = band.borderline(structural.max_minor_residual,
                                            spectral.min_eigenvalue);
    if (verdict != nullptr) {
      verdict->structural_is_ppt = structural.is_ppt ? 1 : 0;
      verdict->spectral_is_ppt = spectral.is_ppt ? 1 : 0;
      verdict->max_minor_residual = structural.max_minor_residual;
      verdict->min_eigenvalue = spectral.min_eigenvalue;
      verdict->borderline = borderline ? 1 : 0;
      verdict->agree = structural.is_ppt == spectral.is_ppt ? 1 : 0;
    }
    if (report_json != nullptr) {
      std::optional<sepdec::ThetaData> theta;
      if (structural.is_ppt) theta = sepdec::extract_theta(inst->params);
      nlohmann::ordered_json root;
      root["structural"] = nlohmann::ordered_json::parse(
          sepdec::structural_report_to_json(structural, theta));
      root["spectral"] = nlohmann::ordered_json::parse(
          sepdec::spectral_report_to_json(spectral));
      root["agree"] = structural.is_ppt == spectral.is_ppt;
      root["borderline"] = borderline;
      *report_json = dup_string(root.dump());
    }
  });
}

sepdec_status sepdec_decompose(const sepdec_instance* inst,
                               double free_constant,
                               sepdec_decomposition** out) {
  return guarded([&] {
    require(inst != nullptr && out != nullptr,
            "instance and out must not be NULL");
    *out = new sepdec_decomposition{
        sepdec::decompose(inst->params, free_constant)};
  });
}

sepdec_status sepdec_decomposition_to_json(const sepdec_decomposition* dec,
                                           char** json_out) {
  return guarded([&] {
    require(dec != nullptr && json_out != nullptr,
            "decomposition and out must not be NULL");
    *json_out = dup_string(sepdec::decomposition_to_json(dec->value));
  });
}

sepdec_status sepdec_decomposition_from_json(const char* json,
                                             sepdec_decomposition** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "json and out must not be NULL");
    *out = new sepdec_decomposition{sepdec::decomposition_from_json(json)};
  });
}

sepdec_status sepdec_verify(const sepdec_instance* inst,
                            const sepdec_decomposition* dec, int* pass,
                            char** report_json) {
  return guarded([&] {
    require(inst != nullptr && dec != nullptr,
            "instance and decomposition must not be NULL");
    const sepdec::VerifyReport report =
        sepdec::verify_decomposition(dec->value, inst->params);
    if (pass != nullptr) *pass = report.pass ? 1 : 0;
    if (report_json != nullptr)
      *report_json = dup_string(sepdec::verify_report_to_json(report));
  });
}

}  // extern "C"
