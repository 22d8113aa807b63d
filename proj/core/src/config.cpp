#include "hardy/config.hpp"

#include <fstream>

namespace hardy {

namespace {

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

Vec vec_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("config key '") + key + "' must be an array of numbers");
  }
  const auto v = j.at(key).get<std::vector<double>>();
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string expr_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) {
    nlohmann::json copy = v;
    return copy.dump();
  }
  throw ConfigError("coefficient must be a string expression or a number");
}

std::vector<std::string> expr_list(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) {
    out.push_back(expr_string(v));
    return out;
  }
  for (const auto& row : v) {
    if (row.is_array()) {
      for (const auto& e : row) out.push_back(expr_string(e));
    } else {
      out.push_back(expr_string(row));
    }
  }
  return out;
}

}  // namespace

DomainSpec parse_domain(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("'domain' must be an object");
  const std::string kind = get_or<std::string>(j, "kind", "");
  if (kind.empty()) throw ConfigError("'domain.kind' is required");
  const DomainKind k = parse_domain_kind(kind);
  if (k == DomainKind::Box) return DomainSpec::box(vec_from(j, "lo"), vec_from(j, "hi"));
  if (!j.contains("n")) throw ConfigError("'domain.n' is required");
  const int n = get_or<int>(j, "n", 0);
  const double radius = get_or<double>(j, "radius", 1.0);
  switch (k) {
    case DomainKind::HalfBall:
      return DomainSpec::half_ball(n, radius);
    case DomainKind::HalfSpace:
      return DomainSpec::half_space(n);
    case DomainKind::ExteriorBall:
      return DomainSpec::exterior_ball(n, radius);
    default:
      return DomainSpec::punctured_space(n);
  }
}

OperatorSpec parse_operator(const nlohmann::json& j, int n) {
  if (j.is_null()) return OperatorSpec::laplacian_neumann(n);
  if (!j.is_object()) throw ConfigError("'operator' must be an object");
  const std::string preset = get_or<std::string>(j, "preset", "laplacian_neumann");
  if (preset == "laplacian_neumann") return OperatorSpec::laplacian_neumann(n);
  if (preset == "laplacian_robin") {
    return OperatorSpec::laplacian_robin(n, get_or<double>(j, "gamma", 0.0),
                                         get_or<double>(j, "beta", 1.0));
  }
  if (preset == "custom") {
    CustomCoefficients k;
    k.A = expr_list(j, "A");
    k.b_tilde = expr_list(j, "b_tilde");
    k.b = expr_list(j, "b");
    if (j.contains("c")) k.c = expr_string(j.at("c"));
    if (j.contains("beta")) k.beta = expr_string(j.at("beta"));
    if (j.contains("gamma")) k.gamma = expr_string(j.at("gamma"));
    k.theta = get_or<double>(j, "theta", 1.0);
    k.symmetric = get_or<bool>(j, "symmetric", k.b.empty() && k.b_tilde.empty());
    return OperatorSpec::custom(n, k);
  }
  throw ConfigError("unknown operator preset '" + preset + "'");
}

ProblemConfig parse_problem_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  if (!j.contains("domain")) throw ConfigError("config needs a 'domain' section");
  DomainSpec domain = parse_domain(j.at("domain"));
  OperatorSpec op = parse_operator(j.contains("operator") ? j.at("operator") : nlohmann::json(),
                                   domain.dim());
  return {std::move(domain), std::move(op), j};
}

ProblemConfig load_problem_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
  return parse_problem_config(j);
}

}  // namespace hardy
