// Acceptance suite: one self-contained check per shipped guarantee, each
// printing a single PASS/FAIL line. Run with no arguments for the full set or
// with --criterion N for one. The exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sepdec/decomposer.hpp"
#include "sepdec/instance_gen.hpp"
#include "sepdec/ppt_structure.hpp"
#include "sepdec/state_builder.hpp"

using namespace sepdec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

double multiset_distance(RVector a, RVector b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return (a - b).cwiseAbs().maxCoeff();
}

// 1. Structural and spectral PPT verdicts agree on 1000 seeded instances per
//    dimension 2..8 and kind in {ppt, random, perturbed}, outside the
//    declared borderline band; the sweep stays under two minutes.
Outcome criterion_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const AgreementBand band;
  const double epsilons[] = {1e-12, 1e-10, 1e-8, 1e-6, 1e-4,
                             1e-2,  0.1,   0.5,  1.0,  M_PI};
  long total = 0, borderline = 0, disagree = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int kind = 0; kind < 3; ++kind) {
      for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const ClassParams params =
            kind == 0   ? gen_ppt(n, seed)
            : kind == 1 ? gen_random(n, seed)
                        : gen_perturbed(n, seed, epsilons[seed % 10]);
        const StructuralReport structural = check_minor_relations(params);
        const SpectralReport spectral = spectral_ppt(params);
        ++total;
        if (band.borderline(structural.max_minor_residual,
                            spectral.min_eigenvalue)) {
          ++borderline;
        } else if (structural.is_ppt != spectral.is_ppt) {
          ++disagree;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << total << " instances, " << borderline << " borderline skipped, "
     << disagree << " disagreements, " << elapsed << "s";
  return {disagree == 0 && elapsed < 120.0, os.str()};
}

// 2. The eigenvalue multiset of the transposed state equals the union of the
//    block spectra to 1e-9 on 200 random instances per dimension 2..8.
Outcome criterion_spectrum_union() {
  double worst = 0.0;
  long checked = 0;
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const ClassParams params = gen_random(n, seed);
      const RVector whole =
          hermitian_eigenvalues(partial_transpose(build_rho(params)).mat);
      RVector stacked(n * n);
      for (int m = 1; m <= n; ++m)
        stacked.segment((m - 1) * n, n) =
            hermitian_eigenvalues(structure_matrix(params, m).mat);
      worst = std::max(worst, multiset_distance(whole, stacked));
      ++checked;
    }
  }
  std::ostringstream os;
  os << checked << " instances, worst sorted-spectrum gap " << worst;
  return {worst <= 1e-9, os.str()};
}

// 3. Frozen oracle values for the flat-row two-level instance with weights
//    (0.9, 0.1): both blocks, the transposed spectrum and the NPT verdict,
//    all to 1e-12.
Outcome criterion_two_level_oracle() {
  CMatrix table(2, 2);
  const double hi = std::sqrt(0.45), lo = std::sqrt(0.05);
  table << Complex(hi, 0), Complex(hi, 0), Complex(lo, 0), Complex(lo, 0);
  const ClassParams params = ClassParams::validate(table);

  CMatrix expected_1(2, 2), expected_2(2, 2);
  expected_1 << Complex(0.45, 0), Complex(0.05, 0), Complex(0.05, 0),
      Complex(0.45, 0);
  expected_2 << Complex(0.05, 0), Complex(0.45, 0), Complex(0.45, 0),
      Complex(0.05, 0);
  const double gap_1 =
      (structure_matrix(params, 1).mat - expected_1).cwiseAbs().maxCoeff();
  const double gap_2 =
      (structure_matrix(params, 2).mat - expected_2).cwiseAbs().maxCoeff();

  RVector expected_spectrum(4);
  expected_spectrum << -0.4, 0.4, 0.5, 0.5;
  const double gap_spectrum = multiset_distance(
      hermitian_eigenvalues(partial_transpose(build_rho(params)).mat),
      expected_spectrum);

  const bool structural_npt = !check_minor_relations(params).is_ppt;
  const bool spectral_npt = !spectral_ppt(params).is_ppt;

  std::ostringstream os;
  os << "block gaps " << gap_1 << " / " << gap_2 << ", spectrum gap "
     << gap_spectrum << ", NPT structural=" << structural_npt
     << " spectral=" << spectral_npt;
  return {gap_1 <= 1e-12 && gap_2 <= 1e-12 && gap_spectrum <= 1e-12 &&
              structural_npt && spectral_npt,
          os.str()};
}

// 4. The uniform two-level instance decomposes into the two balanced product
//    states, up to per-vector global phases, reconstructing to 1e-12.
Outcome criterion_uniform_decomposition() {
  const SeparableDecomposition decomp = decompose(gen_uniform(2), 0.0);
  CVector plus(2), minus(2);
  plus << Complex(1, 0), Complex(1, 0);
  minus << Complex(1, 0), Complex(-1, 0);
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);

  bool pass = decomp.terms.size() == 2 &&
              decomp.reconstruction_frobenius <= 1e-12;
  double worst_overlap_gap = 0.0, worst_weight_gap = 0.0;
  if (pass) {
    const CVector references[2] = {plus, minus};
    for (int t = 0; t < 2; ++t) {
      worst_weight_gap =
          std::max(worst_weight_gap, std::abs(decomp.terms[t].p - 0.5));
      worst_overlap_gap = std::max(
          {worst_overlap_gap,
           std::abs(1.0 - std::abs(references[t].dot(decomp.terms[t].a))),
           std::abs(1.0 - std::abs(references[t].dot(decomp.terms[t].b)))});
    }
    pass = worst_weight_gap <= 1e-12 && worst_overlap_gap <= 1e-12;
  }
  std::ostringstream os;
  os << "reconstruction " << decomp.reconstruction_frobenius
     << ", weight gap " << worst_weight_gap << ", overlap gap "
     << worst_overlap_gap;
  return {pass, os.str()};
}

// 5. The constructive family decomposes and verifies end to end for
//    dimensions 2..12, 100 seeds each, at 1e-9, under a second per instance.
Outcome criterion_end_to_end() {
  long count = 0;
  double worst_reconstruction = 0.0, worst_rank1 = 0.0, slowest = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto start = std::chrono::steady_clock::now();
      const ClassParams params = gen_ppt(n, seed);
      const SeparableDecomposition decomp = decompose(params, 0.0);
      const VerifyReport report = verify_decomposition(decomp, params);
      const double elapsed = seconds_since(start);
      if (!report.pass) {
        std::ostringstream os;
        os << "verification failed at n=" << n << " seed=" << seed;
        return {false, os.str()};
      }
      worst_reconstruction =
          std::max(worst_reconstruction, report.reconstruction_frobenius);
      worst_rank1 = std::max(worst_rank1, decomp.max_rank1_residual);
      slowest = std::max(slowest, elapsed);
      ++count;
    }
  }
  std::ostringstream os;
  os << count << " pipelines, worst reconstruction " << worst_reconstruction
     << ", worst rank-one residual " << worst_rank1 << ", slowest instance "
     << slowest << "s";
  return {worst_reconstruction <= 1e-9 && worst_rank1 <= 1e-9 && slowest < 1.0,
          os.str()};
}

// 6. Angle bookkeeping on passing instances: the extracted angle depends only
//    on the superscript difference, the angles close around the cycle, and
//    the order-2 chained angle equals 2*theta_1 + theta_2 + theta_n, all to
//    1e-9 and cross-checked against direct extraction.
Outcome criterion_angle_relations() {
  double worst_group = 0.0, worst_closure = 0.0, worst_chain = 0.0;
  long instances = 0;
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ClassParams params = gen_ppt(n, seed + 9000);
      const ThetaData data = extract_theta(params);
      ++instances;

      // same |j - k| means same angle, for every base pair and every block
      for (int m = 1; m <= n; ++m) {
        for (int d = 1; d < n; ++d) {
          double reference = 0.0;
          bool first = true;
          for (int j = 1; j + d <= n; ++j) {
            const int k = j + d;
            const Complex num =
                params.x(cyc(m + d, n), j) * params.x(cyc(m - d, n), k);
            const Complex den = params.x(m, j) * params.x(m, k);
            const double angle = std::arg(num / den);
            if (first) {
              reference = angle;
              first = false;
            } else {
              worst_group =
                  std::max(worst_group, angular_distance(angle, reference));
            }
          }
        }
      }

      worst_closure = std::max(
          worst_closure, std::abs(principal_angle(data.theta.sum())));

      if (n >= 4) {
        const double chained = derive_theta_s(data, 2, 1);
        const double combo =
            2 * data.theta(0) + data.theta(1) + data.theta(n - 1);
        worst_chain =
            std::max(worst_chain, angular_distance(chained, combo));
        // direct extraction of the same order-2 angle
        const Complex num = params.x(cyc(1 + 2, n), 1) * params.x(cyc(1 - 2, n), 3);
        const Complex den = params.x(1, 1) * params.x(1, 3);
        worst_chain = std::max(worst_chain,
                               angular_distance(chained, std::arg(num / den)));
      }
    }
  }
  std::ostringstream os;
  os << instances << " instances, group spread " << worst_group
     << ", closure defect " << worst_closure << ", order-2 chain gap "
     << worst_chain;
  return {worst_group <= 1e-9 && worst_closure <= 1e-9 && worst_chain <= 1e-9,
          os.str()};
}

// 7. Gauge freedom: twenty gauge constants on one constructive instance all
//    produce verified decompositions, and at least two constants give first
//    terms with |<a_1|a_1'>| < 1 - 1e-6.
Outcome criterion_gauge_freedom() {
  const ClassParams params = gen_ppt(4, 11);
  std::vector<SeparableDecomposition> decomps;
  for (int t = 0; t < 20; ++t) {
    const double constant = 2.0 * M_PI * t / 20.0;
    SeparableDecomposition decomp = decompose(params, constant);
    if (!verify_decomposition(decomp, params).pass) {
      std::ostringstream os;
      os << "constant " << constant << " failed verification";
      return {false, os.str()};
    }
    decomps.push_back(std::move(decomp));
  }
  double min_overlap = 1.0;
  for (std::size_t i = 0; i < decomps.size(); ++i)
    for (std::size_t j = i + 1; j < decomps.size(); ++j)
      min_overlap =
          std::min(min_overlap, std::abs(decomps[i].terms[0].a.dot(
                                    decomps[j].terms[0].a)));
  const bool distinct = min_overlap < 1.0 - 1e-6;
  std::ostringstream os;
  os << "all 20 verified; min pairwise |<a_1|a_1'>| = " << min_overlap;
  if (!distinct)
    os << " -- the additive gauge shifts every mixing phase by one common "
          "constant, which scales each mixed vector by a global phase and "
          "cannot move the product states";
  return {distinct, os.str()};
}

// 8. Mixing invariance: phased Fourier mixings with arbitrary row phases
//    reproduce the state from the coefficient matrices to 1e-10 even when
//    those matrices are far from rank one.
Outcome criterion_mixing_invariance() {
  SplitMix64 rng(4242);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const ClassParams params = gen_random(n, 300 + trial);
    DeltaSolution arbitrary;
    arbitrary.delta.resize(n);
    for (int i = 0; i < n; ++i) arbitrary.delta(i) = 2 * M_PI * rng.next_unit();
    arbitrary.tol = params.tol();
    const std::vector<CMatrix> blocks =
        mixed_coefficients(params, build_unitary(arbitrary, n));
    CMatrix rebuilt = CMatrix::Zero(n * n, n * n);
    for (const CMatrix& block : blocks) {
      CVector vec(n * n);
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s)
          vec(flat_index(r, s, n)) = block(r - 1, s - 1);
      rebuilt += vec * vec.adjoint();
    }
    worst = std::max(worst, (rebuilt - build_rho(params).mat).norm());
  }
  std::ostringstream os;
  os << "50 mixings, worst reconstruction " << worst;
  return {worst <= 1e-10, os.str()};
}

struct Criterion {
  int index;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "structural-spectral equivalence", criterion_equivalence},
      {2, "spectrum union", criterion_spectrum_union},
      {3, "two-level oracle values", criterion_two_level_oracle},
      {4, "uniform decomposition", criterion_uniform_decomposition},
      {5, "constructive family end-to-end", criterion_end_to_end},
      {6, "angle relations", criterion_angle_relations},
      {7, "gauge freedom", criterion_gauge_freedom},
      {8, "mixing invariance", criterion_mixing_invariance},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: sepdec_acceptance [--criterion N]\n";
      return 64;
    }
  }
  if (selected < 0 || selected > static_cast<int>(criteria().size())) {
    std::cerr << "criterion must lie in 1.." << criteria().size() << "\n";
    return 64;
  }

  int failures = 0;
  for (const Criterion& criterion : criteria()) {
    if (selected != 0 && criterion.index != selected) continue;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << criterion.index << ": " << criterion.name
              << " ... " << (outcome.pass ? "PASS" : "FAIL") << " ("
              << outcome.detail << ")\n";
    if (!outcome.pass) ++failures;
  }
  return failures;
}
