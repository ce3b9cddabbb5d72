#include <doctest.h>

#include <cmath>

#include "sepdec/decomposer.hpp"
#include "sepdec/instance_gen.hpp"
#include "sepdec/json_io.hpp"
#include "sepdec/ppt_structure.hpp"
#include "sepdec/state_builder.hpp"
#include "test_support.hpp"

using namespace sepdec;
using testsup::code_of;

TEST_CASE("splitmix64 produces the published sequence") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);

  SplitMix64 a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  SplitMix64 u(7);
  for (int i = 0; i < 1000; ++i) {
    const double value = u.next_unit();
    CHECK(value >= 0.0);
    CHECK(value < 1.0);
  }
}

TEST_CASE("uniform instances have flat tables and weights") {
  for (int n : {2, 3}) {
    const ClassParams params = gen_uniform(n);
    for (int l = 1; l <= n; ++l) {
      CHECK(params.lambda(l) == doctest::Approx(1.0 / n).epsilon(1e-12));
      for (int j = 1; j <= n; ++j)
        CHECK(std::abs(params.x(l, j) - Complex(1.0 / n, 0)) < 1e-15);
    }
  }
  CHECK(check_minor_relations(gen_uniform(3)).max_minor_residual == 0.0);
  CHECK(spectral_ppt(gen_uniform(5)).is_ppt);
}

TEST_CASE("constructive generator is deterministic and seed-sensitive") {
  const ClassParams a = gen_ppt(3, 9);
  const ClassParams b = gen_ppt(3, 9);
  CHECK(instance_to_json(a) == instance_to_json(b));
  const ClassParams c = gen_ppt(3, 10);
  CHECK((a.table() - c.table()).norm() > 1e-3);
}

TEST_CASE("constructive instances survive the whole pipeline") {
  for (int n = 2; n <= 12; n += 2) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const ClassParams params = gen_ppt(n, seed);
      CHECK(check_minor_relations(params).is_ppt);
      CHECK(spectral_ppt(params).is_ppt);
      const SeparableDecomposition decomp = decompose(params, 0.0);
      CHECK(verify_decomposition(decomp, params).pass);
    }
  }
}

TEST_CASE("the all-ones product reduces to the uniform instance") {
  const int n = 4;
  const CVector ones = CVector::Constant(n, Complex(1, 0));
  const ClassParams product = params_from_product(ones, ones, RVector::Zero(n));
  const ClassParams uniform = gen_uniform(n);
  CHECK((product.table() - uniform.table()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("product construction rejects mismatched inputs") {
  const CVector two = CVector::Constant(2, Complex(1, 0));
  const CVector three = CVector::Constant(3, Complex(1, 0));
  CHECK(code_of([&] { params_from_product(two, three, RVector::Zero(2)); }) ==
        ErrorCode::BadArgument);
}

TEST_CASE("perturbed with zero magnitude is the unkicked instance, bit for bit") {
  for (int n : {2, 5}) {
    CHECK(instance_to_json(gen_perturbed(n, 13, 0.0)) ==
          instance_to_json(gen_ppt(n, 13)));
  }
}

TEST_CASE("a tiny kick stays below the structural tolerance") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const StructuralReport report =
        check_minor_relations(gen_perturbed(3, seed, 1e-12));
    CHECK(report.is_ppt);
    CHECK(report.max_minor_residual < 1e-9);
  }
}

TEST_CASE("a large kick is caught by both tests in agreement") {
  const AgreementBand band;
  int npt_seen = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ClassParams params = gen_perturbed(4, seed, M_PI);
    const StructuralReport structural = check_minor_relations(params);
    const SpectralReport spectral = spectral_ppt(params);
    CHECK_FALSE(structural.is_ppt);  // one flipped entry breaks the relations
    if (!band.borderline(structural.max_minor_residual, spectral.min_eigenvalue)) {
      CHECK(structural.is_ppt == spectral.is_ppt);
      if (!spectral.is_ppt) ++npt_seen;
    }
  }
  MESSAGE("NPT outside the band for ", npt_seen, " of 10 seeds");
  CHECK(npt_seen > 0);
}

TEST_CASE("random instances validate and almost never pass the gate") {
  int structural_pass = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ClassParams params = gen_random(4, seed);
    CHECK(params.n() == 4);
    if (check_minor_relations(params).is_ppt) ++structural_pass;
  }
  MESSAGE("structural passes among random draws: ", structural_pass, " of 50");
  CHECK(instance_to_json(gen_random(4, 3)) == instance_to_json(gen_random(4, 3)));
}

TEST_CASE("generator dispatch honours the spec record") {
  GenSpec spec;
  spec.n = 3;
  spec.kind = GenKind::Ppt;
  spec.seed = 77;
  spec.label = "case-77";
  const ClassParams params = generate(spec);
  CHECK(params.label() == "case-77");
  CHECK((params.table() - gen_ppt(3, 77).table()).norm() == 0.0);

  spec.kind = GenKind::Perturbed;
  spec.epsilon = 0.25;
  CHECK((generate(spec).table() - gen_perturbed(3, 77, 0.25).table()).norm() ==
        0.0);
}

TEST_CASE("generator argument validation") {
  CHECK(code_of([] { gen_uniform(1); }) == ErrorCode::BadArgument);
  CHECK(code_of([] { gen_ppt(0, 1); }) == ErrorCode::BadArgument);
  CHECK(code_of([] { gen_perturbed(3, 1, -0.5); }) == ErrorCode::BadArgument);
  CHECK(code_of([] { gen_kind_from_name("bogus"); }) == ErrorCode::BadArgument);
  CHECK(gen_kind_from_name("ppt") == GenKind::Ppt);
  CHECK(std::string(gen_kind_name(GenKind::Random)) == "random");
}
