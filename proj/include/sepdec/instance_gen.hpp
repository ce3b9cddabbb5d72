#pragma once

#include <cstdint>
#include <string>

#include "sepdec/core_types.hpp"

namespace sepdec {

/// splitmix64 with the published constants (increment 0x9E3779B97F4A7C15,
/// mixers 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB, shifts 30/27/31).
/// Chosen so that instances are reproducible across platforms and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform double in [0, 1) from the top 53 bits.
  double next_unit();
  /// Uniform integer in [0, n); plain modulo reduction (documented bias is
  /// negligible for the small n used here and keeps the mapping portable).
  std::uint32_t next_below(std::uint32_t n);

 private:
  std::uint64_t state_;
};

enum class GenKind { Uniform, Ppt, Perturbed, Random };

const char* gen_kind_name(GenKind kind);
GenKind gen_kind_from_name(const std::string& name);

/// Deterministic generator request; identical specs yield byte-identical
/// instances.
struct GenSpec {
  int n = 2;
  GenKind kind = GenKind::Uniform;
  std::uint64_t seed = 0;
  double epsilon = 0.0;  // perturbation magnitude, kind == Perturbed only
  std::string label;
};

/// Closed-form family member: x_l^j = C e^{-i delta_l} phi_j psi_{cyc(j+l-1)}
/// with C = 1 / (||phi|| ||psi||). Every 2x2 minor of every structure matrix
/// vanishes identically for these tables, so they are PPT and decomposable.
ClassParams params_from_product(const CVector& phi, const CVector& psi,
                                const RVector& delta,
                                const Tolerances& tol = {});

/// x_l^j = 1/n for all l, j.
ClassParams gen_uniform(int n, const Tolerances& tol = {});

/// Seeded member of the constructive PPT family. Draw order (one splitmix64
/// stream): phi entries j=1..n as (magnitude, phase) pairs with magnitude
/// 0.2 + 0.8*u and phase 2*pi*u, then psi entries likewise, then the n row
/// phases delta_l = 2*pi*u. Redraws internally on a degenerate table.
ClassParams gen_ppt(int n, std::uint64_t seed, const Tolerances& tol = {});

/// gen_ppt(n, seed) with a single-entry kick: continuing the same stream,
/// pick row and column by next_below(n), then the kick type by parity of the
/// next draw (even = phase kick e^{i eps}, odd = magnitude kick 1 + eps,
/// followed by renormalization). epsilon == 0 returns the unkicked instance
/// bit for bit.
ClassParams gen_perturbed(int n, std::uint64_t seed, double epsilon,
                          const Tolerances& tol = {});

/// Unbiased class member: every entry drawn independently (magnitude
/// 0.2 + 0.8*u, phase 2*pi*u, row-major order), then renormalized globally.
ClassParams gen_random(int n, std::uint64_t seed, const Tolerances& tol = {});

ClassParams generate(const GenSpec& spec, const Tolerances& tol = {});

}  // namespace sepdec
