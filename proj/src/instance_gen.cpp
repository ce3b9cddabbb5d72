#include "sepdec/instance_gen.hpp"

#include <cmath>

namespace sepdec {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint32_t SplitMix64::next_below(std::uint32_t n) {
  if (n == 0) fail(ErrorCode::BadArgument, "next_below needs n > 0");
  return static_cast<std::uint32_t>(next() % n);
}

const char* gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::Uniform: return "uniform";
    case GenKind::Ppt: return "ppt";
    case GenKind::Perturbed: return "perturbed";
    case GenKind::Random: return "random";
  }
  return "unknown";
}

GenKind gen_kind_from_name(const std::string& name) {
  if (name == "uniform") return GenKind::Uniform;
  if (name == "ppt") return GenKind::Ppt;
  if (name == "perturbed") return GenKind::Perturbed;
  if (name == "random") return GenKind::Random;
  fail(ErrorCode::BadArgument, "unknown generator kind '" + name + "'");
}

namespace {

constexpr int kMaxDraws = 256;

Complex draw_entry(SplitMix64& rng) {
  const double magnitude = 0.2 + 0.8 * rng.next_unit();
  const double phase = 2.0 * M_PI * rng.next_unit();
  return std::polar(magnitude, phase);
}

// One draw of the constructive family as a raw table; retries on the (in
// practice unreachable) degenerate case of an entry at the zero threshold.
CMatrix ppt_table(int n, SplitMix64& rng, double zero_threshold) {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    CVector phi(n), psi(n);
    RVector delta(n);
    for (int j = 0; j < n; ++j) phi(j) = draw_entry(rng);
    for (int j = 0; j < n; ++j) psi(j) = draw_entry(rng);
    for (int l = 0; l < n; ++l) delta(l) = 2.0 * M_PI * rng.next_unit();
    const double scale = 1.0 / (phi.norm() * psi.norm());
    CMatrix table(n, n);
    for (int l = 1; l <= n; ++l) {
      const Complex row_phase = std::polar(scale, -delta(l - 1));
      for (int j = 1; j <= n; ++j)
        table(l - 1, j - 1) = row_phase * phi(j - 1) * psi(cyc(j + l - 1, n) - 1);
    }
    if (table.cwiseAbs().minCoeff() > zero_threshold) return table;
  }
  fail(ErrorCode::DegenerateDraw,
       "repeated draws collapsed below the zero threshold");
}

}  // namespace

ClassParams params_from_product(const CVector& phi, const CVector& psi,
                                const RVector& delta, const Tolerances& tol) {
  const int n = static_cast<int>(phi.size());
  if (n < 2 || psi.size() != n || delta.size() != n)
    fail(ErrorCode::BadArgument,
         "phi, psi and delta must share one length n >= 2");
  const double scale = 1.0 / (phi.norm() * psi.norm());
  if (!std::isfinite(scale) || !(scale > 0.0))
    fail(ErrorCode::DegenerateDraw, "phi or psi has no usable norm");
  CMatrix table(n, n);
  for (int l = 1; l <= n; ++l) {
    const Complex row_phase = std::polar(scale, -delta(l - 1));
    for (int j = 1; j <= n; ++j)
      table(l - 1, j - 1) = row_phase * phi(j - 1) * psi(cyc(j + l - 1, n) - 1);
  }
  return ClassParams::validate(table, tol);
}

ClassParams gen_uniform(int n, const Tolerances& tol) {
  if (n < 2) fail(ErrorCode::BadArgument, "generator needs n >= 2");
  const CMatrix table =
      CMatrix::Constant(n, n, Complex(1.0 / static_cast<double>(n), 0.0));
  return ClassParams::validate(table, tol);
}

ClassParams gen_ppt(int n, std::uint64_t seed, const Tolerances& tol) {
  if (n < 2) fail(ErrorCode::BadArgument, "generator needs n >= 2");
  SplitMix64 rng(seed);
  return ClassParams::validate(ppt_table(n, rng, tol.zero_threshold), tol);
}

ClassParams gen_perturbed(int n, std::uint64_t seed, double epsilon,
                          const Tolerances& tol) {
  if (n < 2) fail(ErrorCode::BadArgument, "generator needs n >= 2");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    fail(ErrorCode::BadArgument, "epsilon must be finite and nonnegative");
  SplitMix64 rng(seed);
  CMatrix table = ppt_table(n, rng, tol.zero_threshold);
  if (epsilon == 0.0) return ClassParams::validate(table, tol);
  const int l = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
  const int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
  const bool phase_kick = (rng.next() & 1ULL) == 0;
  if (phase_kick) {
    table(l, j) *= std::polar(1.0, epsilon);  // trace-neutral
  } else {
    table(l, j) *= (1.0 + epsilon);
    table = renormalize(table);
  }
  return ClassParams::validate(table, tol);
}

ClassParams gen_random(int n, std::uint64_t seed, const Tolerances& tol) {
  if (n < 2) fail(ErrorCode::BadArgument, "generator needs n >= 2");
  SplitMix64 rng(seed);
  CMatrix table(n, n);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j) table(l, j) = draw_entry(rng);
  return ClassParams::validate(renormalize(table), tol);
}

ClassParams generate(const GenSpec& spec, const Tolerances& tol) {
  const ClassParams params = [&]() -> ClassParams {
    switch (spec.kind) {
      case GenKind::Uniform: return gen_uniform(spec.n, tol);
      case GenKind::Ppt: return gen_ppt(spec.n, spec.seed, tol);
      case GenKind::Perturbed:
        return gen_perturbed(spec.n, spec.seed, spec.epsilon, tol);
      case GenKind::Random: return gen_random(spec.n, spec.seed, tol);
    }
    fail(ErrorCode::BadArgument, "unknown generator kind");
  }();
  if (spec.label.empty()) return params;
  return ClassParams::validate(params.table(), spec.label, tol);
}

}  // namespace sepdec
