#include "qmeix/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qmeix::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

Complex entry_at(const json& row, int i, int j, const std::string& name) {
  std::ostringstream loc;
  loc << name << "[" << i << "][" << j << "]";
  if (!row.is_array() || j >= int(row.size())) fail(loc.str(), "missing entry");
  const json& e = row[j];
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (!e.is_object() || !e.contains("re") || !e.contains("im"))
    fail(loc.str(), "expected {\"re\": x, \"im\": y} or a plain number");
  if (!e["re"].is_number() || !e["im"].is_number()) fail(loc.str(), "re/im must be numbers");
  return Complex(e["re"].get<double>(), e["im"].get<double>());
}

Matrix parse_matrix(const json& j, int n, const std::string& name) {
  if (!j.is_array() || int(j.size()) != n) fail(name, "expected an array of " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || int(j[i].size()) != n)
      fail(name + "[" + std::to_string(i) + "]", "expected " + std::to_string(n) + " columns");
    for (int k = 0; k < n; ++k) m(i, k) = entry_at(j[i], i, k, name);
  }
  return m;
}

double get_param(const json& params, const std::string& key) {
  if (!params.contains(key)) fail("params." + key, "missing");
  if (!params[key].is_number()) fail("params." + key, "must be a number");
  return params[key].get<double>();
}

}  // namespace

MatrixFile parse_matrix_file(const nlohmann::json& j) {
  if (!j.is_object()) fail("<root>", "expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) fail("n", "missing or not an integer");
  const int n = j["n"].get<int>();
  if (n < 1) fail("n", "must be >= 1");
  if (!j.contains("A")) fail("A", "missing");
  if (!j.contains("C")) fail("C", "missing");
  MatrixFile mf;
  mf.n = n;
  mf.A = parse_matrix(j["A"], n, "A");
  mf.C = parse_matrix(j["C"], n, "C");
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (std::abs(mf.A(i, k) - mf.A(k, i)) > 1e-12) {
        std::ostringstream os;
        os << "A[" << i << "][" << k << "] vs A[" << k << "][" << i
           << "]: symmetry violated beyond 1e-12";
        throw std::invalid_argument(os.str());
      }
      if (std::abs(mf.C(i, k) - std::conj(mf.C(k, i))) > 1e-12) {
        std::ostringstream os;
        os << "C[" << i << "][" << k << "] vs conj C[" << k << "][" << i
           << "]: Hermiticity violated beyond 1e-12";
        throw std::invalid_argument(os.str());
      }
    }
  return mf;
}

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix file parse error: ") + e.what());
  }
  return parse_matrix_file(j);
}

nlohmann::json dist_spec_to_json(const meix::DistributionSpec& spec) {
  json j;
  j["convention"] = "E[exp(itX)]";
  std::visit(
      [&j](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, meix::MeixnerV>) {
          j["class"] = "MeixnerV";
          j["params"] = {{"a", d.a}, {"b", d.b}, {"delta", d.delta}, {"mu", d.mu}};
        } else if constexpr (std::is_same_v<T, meix::GammaDist>) {
          j["class"] = "Gamma";
          j["params"] = {{"a", d.a}, {"theta", d.theta}, {"mu", d.mu}};
        } else if constexpr (std::is_same_v<T, meix::NegBinomial>) {
          j["class"] = "NegativeBinomial";
          j["params"] = {{"r", d.r}, {"p", d.p}, {"mu", d.mu}, {"d", d.d}};
        } else if constexpr (std::is_same_v<T, meix::TwoAtom>) {
          j["class"] = "TwoAtom";
          j["params"] = {{"x1", d.x1}, {"p1", d.p1}, {"x2", d.x2}, {"p2", d.p2}};
        } else {
          j["class"] = "DiracDelta";
          j["params"] = {{"x0", d.x0}};
        }
      },
      spec);
  return j;
}

meix::DistributionSpec dist_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("<root>", "expected a JSON object");
  if (!j.contains("class") || !j["class"].is_string()) fail("class", "missing or not a string");
  if (!j.contains("params") || !j["params"].is_object()) fail("params", "missing or not an object");
  const std::string cls = j["class"].get<std::string>();
  const json& p = j["params"];
  if (cls == "MeixnerV")
    return meix::MeixnerV(get_param(p, "a"), get_param(p, "b"), get_param(p, "delta"),
                          get_param(p, "mu"));
  if (cls == "Gamma")
    return meix::GammaDist(get_param(p, "a"), get_param(p, "theta"), get_param(p, "mu"));
  if (cls == "NegativeBinomial")
    return meix::NegBinomial(get_param(p, "r"), get_param(p, "p"), get_param(p, "mu"),
                             get_param(p, "d"));
  if (cls == "TwoAtom" || cls == "Bernoulli")  // classify --json labels two-atom laws Bernoulli
    return meix::TwoAtom(get_param(p, "x1"), get_param(p, "p1"), get_param(p, "x2"),
                         get_param(p, "p2"));
  if (cls == "DiracDelta") return meix::DiracDelta(get_param(p, "x0"));
  fail("class", "unknown distribution class '" + cls + "'");
}

meix::DistributionSpec load_dist_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open distribution file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("distribution file parse error: ") + e.what());
  }
  return dist_spec_from_json(j);
}

nlohmann::json classification_to_json(const meix::ClassificationResult& res) {
  json j = dist_spec_to_json(res.dist);
  j["class"] = meix::class_label_name(res.label);
  j["det_h"] = res.det_h;
  j["omega"] = {{"re", res.omega.real()}, {"im", res.omega.imag()}};
  json meta = json::object();
  for (const auto& [k, v] : res.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j;
}

}  // namespace qmeix::io
