// Command-line front end. Talks to the library exclusively through the C API
// in sepdec/sepdec.h.
//
// Exit codes: 0 success / PPT-confirmed / verification pass, 1 negative
// verdict (NPT, failed verification), 2 input or usage error, 3 internal
// numerical failure (including a structural/spectral disagreement outside the
// tolerance band).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepdec/sepdec.h"

namespace {

using ojson = nlohmann::ordered_json;

struct StringDeleter {
  void operator()(char* p) const { sepdec_string_free(p); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct InstanceDeleter {
  void operator()(sepdec_instance* p) const { sepdec_instance_free(p); }
};
using InstancePtr = std::unique_ptr<sepdec_instance, InstanceDeleter>;

struct DecompositionDeleter {
  void operator()(sepdec_decomposition* p) const { sepdec_decomposition_free(p); }
};
using DecompositionPtr = std::unique_ptr<sepdec_decomposition, DecompositionDeleter>;

bool g_json_errors = false;

int exit_code_for(sepdec_status status) {
  switch (status) {
    case SEPDEC_OK:
      return 0;
    case SEPDEC_ERR_NOT_PPT:
      return 1;
    case SEPDEC_ERR_BAD_SHAPE:
    case SEPDEC_ERR_ZERO_ENTRY:
    case SEPDEC_ERR_BAD_TRACE:
    case SEPDEC_ERR_PARSE:
    case SEPDEC_ERR_BAD_ARGUMENT:
    case SEPDEC_ERR_BAD_S:
      return 2;
    default:
      return 3;
  }
}

void print_error(const std::string& code, const std::string& detail) {
  if (g_json_errors) {
    ojson err;
    err["error"] = code;
    err["detail"] = detail;
    std::cerr << err.dump() << "\n";
  } else {
    std::cerr << "error: " << code << ": " << detail << "\n";
  }
}

int report_error(sepdec_status status) {
  print_error(sepdec_status_name(status), sepdec_last_error());
  return exit_code_for(status);
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Output files appear atomically: write a sibling temp file, then rename.
void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(output_path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.put('\n');
    if (!out) throw UsageError("cannot write " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) throw UsageError("cannot move " + temp.string() + " into place");
}

struct TolOpt {
  double value = 0.0;
  bool set = false;
};

sepdec_tolerances make_tolerances(const TolOpt& flag) {
  sepdec_tolerances tol;
  sepdec_tolerances_default(&tol);
  if (const char* env = std::getenv("SEPDEC_TOL")) {
    try {
      std::size_t used = 0;
      const double value = std::stod(env, &used);
      if (used != std::string(env).size() || !(value > 0.0))
        throw std::invalid_argument("not a positive number");
      tol.residual_tol = value;
    } catch (const std::exception&) {
      throw UsageError(std::string("SEPDEC_TOL is not a positive number: ") + env);
    }
  }
  if (flag.set) {
    if (!(flag.value > 0.0)) throw UsageError("--tol must be positive");
    tol.residual_tol = flag.value;
  }
  return tol;
}

InstancePtr load_instance(const std::string& path, const sepdec_tolerances& tol,
                          sepdec_status& status) {
  sepdec_instance* raw = nullptr;
  status = sepdec_instance_from_json(read_file(path).c_str(), &tol, &raw);
  return InstancePtr(raw);
}

// ---------------------------------------------------------------------------

int run_generate(int n, const std::string& kind, std::uint64_t seed,
                 double epsilon, const std::string& label, const TolOpt& tolflag,
                 const std::string& output) {
  const sepdec_tolerances tol = make_tolerances(tolflag);
  sepdec_instance* raw = nullptr;
  sepdec_status status =
      sepdec_generate(n, kind.c_str(), seed, epsilon,
                      label.empty() ? nullptr : label.c_str(), &tol, &raw);
  if (status != SEPDEC_OK) return report_error(status);
  InstancePtr inst(raw);
  char* json = nullptr;
  status = sepdec_instance_to_json(inst.get(), &json);
  if (status != SEPDEC_OK) return report_error(status);
  ApiString text(json);
  emit(text.get(), output);
  return 0;
}

int run_check(const std::string& input, const std::string& method,
              const TolOpt& tolflag, const std::string& output) {
  const sepdec_tolerances tol = make_tolerances(tolflag);
  sepdec_status status = SEPDEC_OK;
  InstancePtr inst = load_instance(input, tol, status);
  if (status != SEPDEC_OK) return report_error(status);

  if (method == "structural" || method == "spectral") {
    int is_ppt = 0;
    char* report = nullptr;
    status = method == "structural"
                 ? sepdec_check_structural(inst.get(), &is_ppt, &report)
                 : sepdec_check_spectral(inst.get(), &is_ppt, &report);
    if (status != SEPDEC_OK) return report_error(status);
    ApiString text(report);
    emit(text.get(), output);
    return is_ppt ? 0 : 1;
  }

  sepdec_verdict verdict{};
  char* report = nullptr;
  status = sepdec_check_both(inst.get(), &verdict, &report);
  if (status != SEPDEC_OK) return report_error(status);
  ApiString text(report);
  emit(text.get(), output);
  if (!verdict.agree && !verdict.borderline) {
    print_error("VerdictDisagreement",
                "structural and spectral PPT verdicts disagree outside the "
                "tolerance band");
    return 3;
  }
  return verdict.spectral_is_ppt ? 0 : 1;
}

int run_decompose(const std::string& input, double free_constant,
                  const TolOpt& tolflag, const std::string& output) {
  const sepdec_tolerances tol = make_tolerances(tolflag);
  sepdec_status status = SEPDEC_OK;
  InstancePtr inst = load_instance(input, tol, status);
  if (status != SEPDEC_OK) return report_error(status);
  sepdec_decomposition* raw = nullptr;
  status = sepdec_decompose(inst.get(), free_constant, &raw);
  if (status != SEPDEC_OK) return report_error(status);
  DecompositionPtr decomp(raw);
  char* json = nullptr;
  status = sepdec_decomposition_to_json(decomp.get(), &json);
  if (status != SEPDEC_OK) return report_error(status);
  ApiString text(json);
  emit(text.get(), output);
  return 0;
}

int run_verify(const std::string& instance_path, const std::string& decomp_path,
               const TolOpt& tolflag, const std::string& output) {
  const sepdec_tolerances tol = make_tolerances(tolflag);
  sepdec_status status = SEPDEC_OK;
  InstancePtr inst = load_instance(instance_path, tol, status);
  if (status != SEPDEC_OK) return report_error(status);
  sepdec_decomposition* raw = nullptr;
  status = sepdec_decomposition_from_json(read_file(decomp_path).c_str(), &raw);
  if (status != SEPDEC_OK) return report_error(status);
  DecompositionPtr decomp(raw);
  int pass = 0;
  char* report = nullptr;
  status = sepdec_verify(inst.get(), decomp.get(), &pass, &report);
  if (status != SEPDEC_OK) return report_error(status);
  ApiString text(report);
  emit(text.get(), output);
  return pass ? 0 : 1;
}

ojson genspec_json(int n, const std::string& kind, std::uint64_t seed,
                   double epsilon) {
  ojson spec;
  spec["n"] = n;
  spec["kind"] = kind;
  spec["seed"] = seed;
  if (kind == "perturbed") spec["epsilon"] = epsilon;
  return spec;
}

int run_fuzz(int n_min, int n_max, int seeds, std::vector<std::string> kinds,
             double epsilon, const TolOpt& tolflag, const std::string& output) {
  if (n_min < 2 || n_max < n_min) throw UsageError("need 2 <= n-min <= n-max");
  if (seeds < 0) throw UsageError("--seeds must be nonnegative");
  if (kinds.empty()) kinds = {"ppt", "random"};
  const sepdec_tolerances tol = make_tolerances(tolflag);

  long total = 0, agree = 0, borderline = 0, disagree = 0;
  long pipeline_pass = 0, pipeline_fail = 0;
  ojson disagreements = ojson::array();
  ojson failures = ojson::array();

  for (const std::string& kind : kinds) {
    for (int n = n_min; n <= n_max; ++n) {
      for (int seed = 0; seed < seeds; ++seed) {
        sepdec_instance* raw = nullptr;
        sepdec_status status = sepdec_generate(
            n, kind.c_str(), static_cast<std::uint64_t>(seed), epsilon, nullptr,
            &tol, &raw);
        if (status != SEPDEC_OK) return report_error(status);
        InstancePtr inst(raw);
        ++total;

        sepdec_verdict verdict{};
        status = sepdec_check_both(inst.get(), &verdict, nullptr);
        if (status != SEPDEC_OK) return report_error(status);
        if (verdict.borderline) {
          ++borderline;
        } else if (verdict.agree) {
          ++agree;
        } else {
          ++disagree;
          disagreements.push_back(genspec_json(n, kind, seed, epsilon));
        }

        // Constructive instances must survive the whole pipeline.
        if (kind == "ppt") {
          sepdec_decomposition* draw = nullptr;
          status = sepdec_decompose(inst.get(), 0.0, &draw);
          if (status != SEPDEC_OK) {
            ++pipeline_fail;
            failures.push_back(genspec_json(n, kind, seed, epsilon));
            continue;
          }
          DecompositionPtr decomp(draw);
          int pass = 0;
          status = sepdec_verify(inst.get(), decomp.get(), &pass, nullptr);
          if (status == SEPDEC_OK && pass) {
            ++pipeline_pass;
          } else {
            ++pipeline_fail;
            failures.push_back(genspec_json(n, kind, seed, epsilon));
          }
        }
      }
    }
  }

  ojson report;
  report["n_min"] = n_min;
  report["n_max"] = n_max;
  report["seeds"] = seeds;
  report["kinds"] = kinds;
  report["epsilon"] = epsilon;
  report["total"] = total;
  report["agree"] = agree;
  report["borderline"] = borderline;
  report["disagree"] = disagree;
  report["pipeline_pass"] = pipeline_pass;
  report["pipeline_fail"] = pipeline_fail;
  report["disagreements"] = std::move(disagreements);
  report["failures"] = std::move(failures);
  emit(report.dump(), output);
  return 0;  // failures are data, not an exit condition
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"separability certificates for shifted-diagonal bipartite "
               "mixed states"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "produce an instance of the state class as JSON");
  int gen_n = 0;
  std::string gen_kind;
  std::uint64_t gen_seed = 0;
  double gen_epsilon = 0.0;
  std::string gen_label, gen_output;
  TolOpt gen_tol;
  bool gen_json_errors = false;
  generate->add_option("--n", gen_n, "local dimension (n >= 2)")->required();
  generate->add_option("--kind", gen_kind,
                       "uniform | ppt | perturbed | random")->required();
  generate->add_option("--seed", gen_seed, "64-bit generator seed");
  generate->add_option("--epsilon", gen_epsilon,
                       "perturbation magnitude (kind=perturbed)");
  generate->add_option("--label", gen_label, "optional instance label");
  generate->add_option("-o,--output", gen_output, "output path (default stdout)");
  generate->add_option("--tol", gen_tol.value, "override residual tolerance")
      ->each([&gen_tol](const std::string&) { gen_tol.set = true; });
  generate->add_flag("--json-errors", gen_json_errors,
                     "machine-parsable errors on stderr");

  // check
  auto* check = app.add_subcommand(
      "check", "decide PPT for an instance file");
  std::string check_input, check_method = "both", check_output;
  TolOpt check_tol;
  bool check_json_errors = false;
  check->add_option("input", check_input, "instance JSON file")->required();
  check->add_option("--method", check_method, "structural | spectral | both")
      ->check(CLI::IsMember({"structural", "spectral", "both"}));
  check->add_option("-o,--output", check_output, "report path (default stdout)");
  check->add_option("--tol", check_tol.value, "override residual tolerance")
      ->each([&check_tol](const std::string&) { check_tol.set = true; });
  check->add_flag("--json-errors", check_json_errors,
                  "machine-parsable errors on stderr");

  // decompose
  auto* decompose = app.add_subcommand(
      "decompose", "emit a separable pure-state decomposition");
  std::string dec_input, dec_output;
  double dec_free = 0.0;
  TolOpt dec_tol;
  bool dec_json_errors = false;
  decompose->add_option("input", dec_input, "instance JSON file")->required();
  decompose->add_option("--free-delta", dec_free,
                        "gauge constant pinning the first mixing phase");
  decompose->add_option("-o,--output", dec_output,
                        "decomposition path (default stdout)");
  decompose->add_option("--tol", dec_tol.value, "override residual tolerance")
      ->each([&dec_tol](const std::string&) { dec_tol.set = true; });
  decompose->add_flag("--json-errors", dec_json_errors,
                      "machine-parsable errors on stderr");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "re-check a decomposition against its instance");
  std::string ver_instance, ver_decomp, ver_output;
  TolOpt ver_tol;
  bool ver_json_errors = false;
  verify->add_option("instance", ver_instance, "instance JSON file")->required();
  verify->add_option("decomposition", ver_decomp, "decomposition JSON file")
      ->required();
  verify->add_option("-o,--output", ver_output, "report path (default stdout)");
  verify->add_option("--tol", ver_tol.value, "override residual tolerance")
      ->each([&ver_tol](const std::string&) { ver_tol.set = true; });
  verify->add_flag("--json-errors", ver_json_errors,
                   "machine-parsable errors on stderr");

  // fuzz
  auto* fuzz = app.add_subcommand(
      "fuzz", "structural-vs-spectral and pipeline soundness campaign");
  int fuzz_n_min = 2, fuzz_n_max = 6, fuzz_seeds = 50;
  std::vector<std::string> fuzz_kinds;
  double fuzz_epsilon = 0.1;
  std::string fuzz_output;
  TolOpt fuzz_tol;
  bool fuzz_json_errors = false;
  fuzz->add_option("--n-min", fuzz_n_min, "smallest dimension");
  fuzz->add_option("--n-max", fuzz_n_max, "largest dimension");
  fuzz->add_option("--seeds", fuzz_seeds, "seeds per dimension and kind");
  fuzz->add_option("--kinds", fuzz_kinds,
                   "comma-separated kinds (default ppt,random)")
      ->delimiter(',');
  fuzz->add_option("--epsilon", fuzz_epsilon,
                   "perturbation magnitude for kind=perturbed");
  fuzz->add_option("-o,--output", fuzz_output, "report path (default stdout)");
  fuzz->add_option("--tol", fuzz_tol.value, "override residual tolerance")
      ->each([&fuzz_tol](const std::string&) { fuzz_tol.set = true; });
  fuzz->add_flag("--json-errors", fuzz_json_errors,
                 "machine-parsable errors on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed()) {
      g_json_errors = gen_json_errors;
      return run_generate(gen_n, gen_kind, gen_seed, gen_epsilon, gen_label,
                          gen_tol, gen_output);
    }
    if (check->parsed()) {
      g_json_errors = check_json_errors;
      return run_check(check_input, check_method, check_tol, check_output);
    }
    if (decompose->parsed()) {
      g_json_errors = dec_json_errors;
      return run_decompose(dec_input, dec_free, dec_tol, dec_output);
    }
    if (verify->parsed()) {
      g_json_errors = ver_json_errors;
      return run_verify(ver_instance, ver_decomp, ver_tol, ver_output);
    }
    if (fuzz->parsed()) {
      g_json_errors = fuzz_json_errors;
      return run_fuzz(fuzz_n_min, fuzz_n_max, fuzz_seeds, fuzz_kinds,
                      fuzz_epsilon, fuzz_tol, fuzz_output);
    }
  } catch (const UsageError& e) {
    print_error("UsageError", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return 3;
  }
  return 2;
}
