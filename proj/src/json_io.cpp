#include "sepdec/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sepdec {

namespace {

using ojson = nlohmann::ordered_json;

ojson complex_to_json(const Complex& value) {
  ojson entry;
  entry["re"] = value.real();
  entry["im"] = value.imag();
  return entry;
}

double finite_number(const ojson& node, const char* what) {
  if (!node.is_number())
    fail(ErrorCode::ParseError, std::string(what) + " must be a number");
  const double value = node.get<double>();
  if (!std::isfinite(value))
    fail(ErrorCode::ParseError, std::string(what) + " must be finite");
  return value;
}

Complex complex_from_json(const ojson& node, const char* what) {
  if (!node.is_object() || !node.contains("re") || !node.contains("im"))
    fail(ErrorCode::ParseError,
         std::string(what) + " must be an object with re and im");
  return {finite_number(node["re"], what), finite_number(node["im"], what)};
}

ojson parse(std::string_view text) {
  try {
    return ojson::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

ojson vector_to_json(const CVector& vec) {
  ojson list = ojson::array();
  for (Eigen::Index i = 0; i < vec.size(); ++i)
    list.push_back(complex_to_json(vec(i)));
  return list;
}

CVector vector_from_json(const ojson& node, int n, const char* what) {
  if (!node.is_array() || node.size() != static_cast<std::size_t>(n))
    fail(ErrorCode::ParseError,
         std::string(what) + " must be an array of length n");
  CVector vec(n);
  for (int i = 0; i < n; ++i) vec(i) = complex_from_json(node[i], what);
  return vec;
}

}  // namespace

std::string instance_to_json(const ClassParams& params) {
  ojson root;
  root["n"] = params.n();
  ojson rows = ojson::array();
  for (int l = 1; l <= params.n(); ++l) {
    ojson row = ojson::array();
    for (int j = 1; j <= params.n(); ++j) row.push_back(complex_to_json(params.x(l, j)));
    rows.push_back(std::move(row));
  }
  root["x"] = std::move(rows);
  if (!params.label().empty()) root["label"] = params.label();
  return root.dump();
}

ClassParams instance_from_json(std::string_view text, const Tolerances& tol) {
  const ojson root = parse(text);
  if (!root.is_object() || !root.contains("n") || !root.contains("x"))
    fail(ErrorCode::ParseError, "instance JSON needs fields n and x");
  if (!root["n"].is_number_integer())
    fail(ErrorCode::ParseError, "field n must be an integer");
  const int n = root["n"].get<int>();
  if (n < 2) fail(ErrorCode::BadShape, "instance needs n >= 2");
  const ojson& rows = root["x"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
    fail(ErrorCode::BadShape, "field x must hold n rows");
  CMatrix table(n, n);
  for (int l = 0; l < n; ++l) {
    const ojson& row = rows[l];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      fail(ErrorCode::BadShape, "row " + std::to_string(l + 1) +
                                    " of x must hold n entries");
    for (int j = 0; j < n; ++j)
      table(l, j) = complex_from_json(row[j], "entry of x");
  }
  std::string label;
  if (root.contains("label")) {
    if (!root["label"].is_string())
      fail(ErrorCode::ParseError, "field label must be a string");
    label = root["label"].get<std::string>();
  }
  return ClassParams::validate(table, std::move(label), tol);
}

std::string genspec_to_json(const GenSpec& spec) {
  ojson root;
  root["n"] = spec.n;
  root["kind"] = gen_kind_name(spec.kind);
  root["seed"] = spec.seed;
  if (spec.kind == GenKind::Perturbed) root["epsilon"] = spec.epsilon;
  if (!spec.label.empty()) root["label"] = spec.label;
  return root.dump();
}

GenSpec genspec_from_json(std::string_view text) {
  const ojson root = parse(text);
  if (!root.is_object() || !root.contains("n") || !root.contains("kind") ||
      !root.contains("seed"))
    fail(ErrorCode::ParseError, "generator spec needs n, kind and seed");
  GenSpec spec;
  if (!root["n"].is_number_integer())
    fail(ErrorCode::ParseError, "field n must be an integer");
  spec.n = root["n"].get<int>();
  if (!root["kind"].is_string())
    fail(ErrorCode::ParseError, "field kind must be a string");
  spec.kind = gen_kind_from_name(root["kind"].get<std::string>());
  if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
    fail(ErrorCode::ParseError, "field seed must be an integer");
  spec.seed = root["seed"].get<std::uint64_t>();
  if (root.contains("epsilon"))
    spec.epsilon = finite_number(root["epsilon"], "epsilon");
  if (root.contains("label")) {
    if (!root["label"].is_string())
      fail(ErrorCode::ParseError, "field label must be a string");
    spec.label = root["label"].get<std::string>();
  }
  return spec;
}

std::string structural_report_to_json(const StructuralReport& report,
                                      const std::optional<ThetaData>& theta) {
  ojson root;
  root["is_ppt"] = report.is_ppt;
  root["max_minor_residual"] = report.max_minor_residual;
  if (report.is_ppt) {
    root["witness"] = nullptr;
  } else {
    const MinorWitness& w = report.worst_witness;
    root["witness"] = ojson::array({w.m, w.j, w.k, w.p, w.q});
  }
  if (theta.has_value()) {
    ojson angles = ojson::array();
    for (Eigen::Index i = 0; i < theta->theta.size(); ++i)
      angles.push_back(theta->theta(i));
    root["theta"] = std::move(angles);
    root["sum_defect_k"] = theta->sum_defect_k;
  } else {
    root["theta"] = nullptr;
    root["sum_defect_k"] = nullptr;
  }
  return root.dump();
}

std::string spectral_report_to_json(const SpectralReport& report) {
  ojson root;
  root["is_ppt"] = report.is_ppt;
  root["min_eigenvalue"] = report.min_eigenvalue;
  ojson values = ojson::array();
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i)
    values.push_back(report.eigenvalues(i));
  root["eigenvalues"] = std::move(values);
  return root.dump();
}

std::string decomposition_to_json(const SeparableDecomposition& decomp) {
  ojson root;
  root["n"] = decomp.n;
  ojson terms = ojson::array();
  for (const DecompositionTerm& term : decomp.terms) {
    ojson node;
    node["p"] = term.p;
    node["a"] = vector_to_json(term.a);
    node["b"] = vector_to_json(term.b);
    terms.push_back(std::move(node));
  }
  root["terms"] = std::move(terms);
  ojson residuals;
  residuals["reconstruction"] = decomp.reconstruction_frobenius;
  residuals["max_rank1"] = decomp.max_rank1_residual;
  root["residuals"] = std::move(residuals);
  root["free_constant"] = decomp.free_constant;
  return root.dump();
}

SeparableDecomposition decomposition_from_json(std::string_view text) {
  const ojson root = parse(text);
  if (!root.is_object() || !root.contains("n") || !root.contains("terms"))
    fail(ErrorCode::ParseError, "decomposition JSON needs fields n and terms");
  if (!root["n"].is_number_integer())
    fail(ErrorCode::ParseError, "field n must be an integer");
  SeparableDecomposition decomp;
  decomp.n = root["n"].get<int>();
  if (decomp.n < 2) fail(ErrorCode::BadShape, "decomposition needs n >= 2");
  const ojson& terms = root["terms"];
  if (!terms.is_array() || terms.size() != static_cast<std::size_t>(decomp.n))
    fail(ErrorCode::BadShape, "field terms must hold n records");
  for (const ojson& node : terms) {
    if (!node.is_object() || !node.contains("p") || !node.contains("a") ||
        !node.contains("b"))
      fail(ErrorCode::ParseError, "each term needs p, a and b");
    DecompositionTerm term;
    term.p = finite_number(node["p"], "term weight");
    term.a = vector_from_json(node["a"], decomp.n, "term vector a");
    term.b = vector_from_json(node["b"], decomp.n, "term vector b");
    decomp.terms.push_back(std::move(term));
  }
  if (root.contains("residuals") && root["residuals"].is_object()) {
    const ojson& residuals = root["residuals"];
    if (residuals.contains("reconstruction"))
      decomp.reconstruction_frobenius =
          finite_number(residuals["reconstruction"], "reconstruction residual");
    if (residuals.contains("max_rank1"))
      decomp.max_rank1_residual =
          finite_number(residuals["max_rank1"], "rank-one residual");
  }
  if (root.contains("free_constant"))
    decomp.free_constant = finite_number(root["free_constant"], "free constant");
  return decomp;
}

std::string verify_report_to_json(const VerifyReport& report) {
  ojson root;
  root["pass"] = report.pass;
  root["shape_ok"] = report.shape_ok;
  root["reconstruction_frobenius"] = report.reconstruction_frobenius;
  root["weight_sum_defect"] = report.weight_sum_defect;
  root["min_weight"] = report.min_weight;
  root["max_a_norm_defect"] = report.max_a_norm_defect;
  root["max_b_norm_defect"] = report.max_b_norm_defect;
  return root.dump();
}

std::string density_to_json(const DensityOperator& rho) {
  ojson root;
  root["n"] = rho.n;
  ojson entries = ojson::array();
  for (Eigen::Index r = 0; r < rho.mat.rows(); ++r)
    for (Eigen::Index c = 0; c < rho.mat.cols(); ++c)
      entries.push_back(complex_to_json(rho.mat(r, c)));
  root["mat"] = std::move(entries);
  return root.dump();
}

void write_file_atomic(const std::string& path, std::string_view text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::BadArgument, "cannot open " + temp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.put('\n');
    if (!out) fail(ErrorCode::BadArgument, "short write to " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    fail(ErrorCode::BadArgument,
         "cannot move " + temp.string() + " into place: " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::BadArgument, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace sepdec
