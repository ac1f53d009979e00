#include "core/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "core/rng.hpp"
#include "json.hpp"

namespace lfv {

using nlohmann::json;

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> k = {
      "frames", "minkowski", "connection", "berwald",
      "spray",  "kahler",    "curvature"};
  return k;
}

namespace {

const std::map<std::string, int>& default_samples() {
  static const std::map<std::string, int> k = {
      {"frames", 20},  {"minkowski", 200}, {"connection", 20},
      {"berwald", 20}, {"spray", 20},      {"kahler", 50},
      {"curvature", 50}};
  return k;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> k = {
      {"frames", 1e-5},  {"minkowski", 1e-5}, {"connection", 1e-5},
      {"berwald", 1e-4}, {"spray", 1e-5},     {"kahler", 1e-4},
      {"curvature", 1e-4}};
  return k;
}

[[noreturn]] void invalid(const std::string& msg) { throw ValidationError(msg); }

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      invalid("unknown key \"" + key + "\" in " + where);
    }
  }
}

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  invalid(where + ": complex entries must be numbers or [re, im] pairs");
}

ModelSpec parse_model(const json& j) {
  if (!j.is_object()) invalid("\"model\" must be an object");
  reject_unknown_keys(j, "model", {"name", "n"});
  ModelSpec m;
  if (!j.contains("name") || !j.at("name").is_string())
    invalid("model.name must be a string");
  m.name = j.at("name").get<std::string>();
  if (j.contains("n")) {
    if (!j.at("n").is_number_integer() || j.at("n").get<int>() < 1)
      invalid("model.n must be a positive integer");
    m.n = j.at("n").get<int>();
  }
  return m;
}

NormSpec parse_norm(const json& j) {
  if (!j.is_object()) invalid("\"norm\" must be an object");
  reject_unknown_keys(j, "norm", {"kind", "matrix", "p", "weights"});
  NormSpec spec;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) invalid("norm.kind must be a string");
    spec.kind = j.at("kind").get<std::string>();
  }
  if (spec.kind != "hermitian" && spec.kind != "pnorm")
    invalid("norm.kind must be \"hermitian\" or \"pnorm\", got \"" + spec.kind +
            "\"");
  if (j.contains("matrix")) {
    if (spec.kind != "hermitian")
      invalid("norm.matrix only applies to kind \"hermitian\"");
    const json& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty()) invalid("norm.matrix must be a non-empty array of rows");
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != rows.size())
        invalid("norm.matrix must be square");
      std::vector<Complex> parsed;
      for (const auto& entry : row) parsed.push_back(parse_complex(entry, "norm.matrix"));
      spec.matrix.push_back(std::move(parsed));
    }
  }
  if (j.contains("p")) {
    if (spec.kind != "pnorm") invalid("norm.p only applies to kind \"pnorm\"");
    if (!j.at("p").is_number()) invalid("norm.p must be a number");
    spec.p = j.at("p").get<double>();
    if (!(spec.p > 1.0)) invalid("norm.p must exceed 1");
  }
  if (j.contains("weights")) {
    if (spec.kind != "pnorm") invalid("norm.weights only applies to kind \"pnorm\"");
    const json& w = j.at("weights");
    if (!w.is_array() || w.empty()) invalid("norm.weights must be a non-empty array");
    for (const auto& entry : w) {
      if (!entry.is_number() || !(entry.get<double>() > 0.0))
        invalid("norm.weights entries must be positive numbers");
      spec.weights.push_back(entry.get<double>());
    }
  }
  return spec;
}

DiffScheme parse_scheme(const json& j) {
  if (!j.is_object()) invalid("\"scheme\" must be an object");
  reject_unknown_keys(j, "scheme", {"step", "order", "richardson"});
  DiffScheme s;
  if (j.contains("step")) {
    if (!j.at("step").is_number()) invalid("scheme.step must be a number");
    s.step = j.at("step").get<double>();
  }
  if (j.contains("order")) {
    if (!j.at("order").is_number_integer()) invalid("scheme.order must be an integer");
    s.order = j.at("order").get<int>();
  }
  if (j.contains("richardson")) {
    if (!j.at("richardson").is_boolean()) invalid("scheme.richardson must be a boolean");
    s.richardson = j.at("richardson").get<bool>();
  }
  try {
    s.validate();
  } catch (const Error& e) {
    invalid(std::string("scheme: ") + e.what());
  }
  return s;
}

std::string joined_suites() {
  std::string out;
  for (const auto& s : all_suites()) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

template <typename T>
std::map<std::string, T> parse_suite_map(const json& j, const std::string& where,
                                         bool integral) {
  if (!j.is_object()) invalid("\"" + where + "\" must be an object keyed by suite");
  std::map<std::string, T> out;
  for (const auto& [key, value] : j.items()) {
    if (std::find(all_suites().begin(), all_suites().end(), key) ==
        all_suites().end())
      invalid(where + ": unknown suite \"" + key + "\" (valid: " +
              joined_suites() + ")");
    if (integral) {
      if (!value.is_number_integer() || value.template get<int>() < 1)
        invalid(where + "." + key + " must be a positive integer");
    } else {
      if (!value.is_number() || !(value.template get<double>() > 0.0))
        invalid(where + "." + key + " must be a positive number");
    }
    out[key] = value.template get<T>();
  }
  return out;
}

}  // namespace

GroupModel RunConfig::make_model() const {
  return builtin_model(model.name, model.n);
}

MinkowskiNorm RunConfig::make_norm() const {
  const int n = make_model().n;
  if (norm.kind == "hermitian") {
    if (norm.matrix.empty()) return MinkowskiNorm::hermitian(CMatrix::Identity(n, n));
    const int m = static_cast<int>(norm.matrix.size());
    if (m != n)
      invalid("norm.matrix is " + std::to_string(m) + "x" + std::to_string(m) +
              " but the model has dimension " + std::to_string(n));
    CMatrix H(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) H(i, j) = norm.matrix[i][j];
    return MinkowskiNorm::hermitian(H);
  }
  RVector w;
  if (norm.weights.empty()) {
    w = RVector::Ones(n);
  } else {
    if (static_cast<int>(norm.weights.size()) != n)
      invalid("norm.weights has " + std::to_string(norm.weights.size()) +
              " entries but the model has dimension " + std::to_string(n));
    w = Eigen::Map<const RVector>(norm.weights.data(), n);
  }
  return MinkowskiNorm::pnorm(norm.p, w);
}

int RunConfig::sample_count(const std::string& suite) const {
  auto it = samples.find(suite);
  if (it != samples.end()) return it->second;
  return default_samples().at(suite);
}

double RunConfig::tolerance(const std::string& suite) const {
  auto it = tolerances.find(suite);
  const double base =
      it != tolerances.end() ? it->second : default_tolerances().at(suite);
  return base * tol_scale;
}

void RunConfig::validate() {
  if (!(tol_scale > 0.0)) invalid("tol_scale must be positive");
  if (suites.empty()) suites = all_suites();
  std::vector<std::string> deduped;
  for (const auto& s : suites) {
    if (std::find(all_suites().begin(), all_suites().end(), s) ==
        all_suites().end())
      invalid("unknown suite \"" + s + "\" (valid: " + joined_suites() + ")");
    if (std::find(deduped.begin(), deduped.end(), s) == deduped.end())
      deduped.push_back(s);
  }
  suites = std::move(deduped);
  // surfaces bad model names and model/norm dimension clashes right away
  make_model();
  try {
    make_norm();
  } catch (const NotPseudoConvex& e) {
    invalid(std::string("norm: ") + e.what());
  }
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ParseError("top-level config must be a JSON object");
  reject_unknown_keys(j, "config",
                      {"model", "norm", "seed", "samples", "tolerances",
                       "scheme", "suites", "tol_scale"});
  RunConfig cfg;
  if (j.contains("model")) cfg.model = parse_model(j.at("model"));
  if (j.contains("norm")) cfg.norm = parse_norm(j.at("norm"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned())
      invalid("seed must be a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("samples"))
    cfg.samples = parse_suite_map<int>(j.at("samples"), "samples", true);
  if (j.contains("tolerances"))
    cfg.tolerances =
        parse_suite_map<double>(j.at("tolerances"), "tolerances", false);
  if (j.contains("scheme")) cfg.scheme = parse_scheme(j.at("scheme"));
  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) invalid("\"suites\" must be an array");
    for (const auto& entry : j.at("suites")) {
      if (!entry.is_string()) invalid("suite names must be strings");
      cfg.suites.push_back(entry.get<std::string>());
    }
    if (cfg.suites.empty()) invalid("\"suites\" must not be empty");
  }
  if (j.contains("tol_scale")) {
    if (!j.at("tol_scale").is_number()) invalid("tol_scale must be a number");
    cfg.tol_scale = j.at("tol_scale").get<double>();
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading config file: " + path);
  return parse_config(buf.str());
}

std::string canonical_json(const RunConfig& cfg) {
  json j;  // std::map keys -> alphabetically sorted, hence byte-stable
  j["model"]["name"] = cfg.model.name;
  j["model"]["n"] = cfg.model.n;
  j["norm"]["kind"] = cfg.norm.kind;
  if (cfg.norm.kind == "hermitian") {
    json rows = json::array();
    for (const auto& row : cfg.norm.matrix) {
      json r = json::array();
      for (const auto& entry : row) r.push_back({entry.real(), entry.imag()});
      rows.push_back(r);
    }
    j["norm"]["matrix"] = rows;  // empty array = identity
  } else {
    j["norm"]["p"] = cfg.norm.p;
    j["norm"]["weights"] = cfg.norm.weights;
  }
  j["seed"] = cfg.seed;
  for (const auto& s : all_suites()) {
    j["samples"][s] = cfg.sample_count(s);
    j["tolerances"][s] = cfg.tolerance(s);
  }
  j["scheme"]["step"] = cfg.scheme.step;
  j["scheme"]["order"] = cfg.scheme.order;
  j["scheme"]["richardson"] = cfg.scheme.richardson;
  j["suites"] = cfg.suites;
  return j.dump();
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_json(cfg))));
  return std::string(buf);
}

}  // namespace lfv
