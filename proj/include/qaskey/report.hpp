/**
 * @file report.hpp
 * @brief Structured verification reports: suite configuration, per-case
 *        records, summaries and deterministic JSON serialization, plus the
 *        named parameter-grid registry loaded from a config file.
 */

#ifndef QASKEY_REPORT_HPP
#define QASKEY_REPORT_HPP

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qaskey/types.hpp"

namespace qaskey {

/// Version string stamped on every emitted report.
inline constexpr const char* kReportSchema = "qaskey-report/1";

/// Configuration of a verification run: which suite, over which named grid,
/// with which tolerance / degree cap / seed / precision.
struct SuiteConfig {
  std::string suite = "all";
  std::string grid = "smoke";
  double tol = 1e-6;
  long long nmax = 4;
  unsigned long long seed = 1;
  Precision precision = Precision::standard;

  void validate() const {
    if (!(tol > 0)) throw ConfigError("tol must be > 0");
    if (nmax < 0) throw ConfigError("nmax must be >= 0");
  }
};

/// One verified case: a stable key, the echoed inputs, the measured metric
/// (a normalized residual or an |exact/predicted| ratio) and its verdict.
struct CaseRecord {
  std::string key;               ///< stable ordering/identification key
  nlohmann::json inputs;         ///< echo of the case inputs
  std::string metric = "residual";  ///< "residual" or "ratio-error"
  double value = 0.0;            ///< the measured metric
  bool pass = false;
  std::string diagnostics;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["key"] = key;
    j["inputs"] = inputs;
    j["metric"] = metric;
    j["value"] = value;
    j["pass"] = pass;
    if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
    return j;
  }
};

/// A full verification report.  The serialized body is deterministic given
/// (config, seed, precision): cases are ordered by key and the wall time is
/// kept outside the body object.
struct Report {
  std::string suite;
  nlohmann::json config;  ///< echo of the resolved configuration
  std::vector<CaseRecord> cases;
  double wall_seconds = 0.0;

  int pass_count() const {
    return static_cast<int>(
        std::count_if(cases.begin(), cases.end(),
                      [](const CaseRecord& c) { return c.pass; }));
  }
  int fail_count() const { return static_cast<int>(cases.size()) - pass_count(); }
  bool all_pass() const { return fail_count() == 0; }

  double worst_value() const {
    double w = 0.0;
    for (const auto& c : cases) w = std::max(w, c.value);
    return w;
  }

  /// Deterministic report body (no timestamps, cases sorted by key).
  nlohmann::json body() const {
    std::vector<const CaseRecord*> ordered;
    ordered.reserve(cases.size());
    for (const auto& c : cases) ordered.push_back(&c);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const CaseRecord* a, const CaseRecord* b) {
                       return a->key < b->key;
                     });
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["suite"] = suite;
    j["config"] = config;
    nlohmann::json arr = nlohmann::json::array();
    for (const CaseRecord* c : ordered) arr.push_back(c->to_json());
    j["cases"] = arr;
    j["summary"] = {{"pass", pass_count()},
                    {"fail", fail_count()},
                    {"worst", worst_value()}};
    return j;
  }

  /// Full document: the deterministic body plus the (volatile) wall time.
  std::string serialize() const {
    nlohmann::json j;
    j["body"] = body();
    j["wall_seconds"] = wall_seconds;
    return j.dump(2) + "\n";
  }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open report file '" + path + "'");
    out << serialize();
  }
};

/// One named parameter grid from the registry.  `qs` lists the |q| values to
/// sweep (empty means: keep each relation's curated base), `points` is the
/// number of cases drawn per suite leaf, and `jitter` the maximum relative
/// perturbation applied to the curated parameter points.
struct GridSpec {
  std::string name;
  std::vector<double> qs;
  int points = 1;
  double jitter = 0.0;
  long long nmax = 4;
  double tol = 1e-6;

  void validate() const {
    if (points < 1) throw ConfigError("grid '" + name + "' is empty");
    if (jitter < 0 || jitter >= 0.5)
      throw ConfigError("grid jitter must lie in [0, 0.5)");
    for (double q : qs)
      if (!(q > 0 && q < 1))
        throw ConfigError("grid q values must lie in (0, 1)");
  }
};

/// Load a named grid from the JSON registry file.
inline GridSpec load_grid(const std::string& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid registry '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("grid registry parse error: " + std::string(e.what()));
  }
  if (!j.contains("grids") || !j["grids"].contains(name))
    throw ConfigError("unknown grid '" + name + "'");
  const nlohmann::json& g = j["grids"][name];
  GridSpec spec;
  spec.name = name;
  if (g.contains("qs")) spec.qs = g["qs"].get<std::vector<double>>();
  if (g.contains("points")) spec.points = g["points"].get<int>();
  if (g.contains("jitter")) spec.jitter = g["jitter"].get<double>();
  if (g.contains("nmax")) spec.nmax = g["nmax"].get<long long>();
  if (g.contains("tol")) spec.tol = g["tol"].get<double>();
  spec.validate();
  return spec;
}

/// Parse a complex literal in the `re+imi` form (also plain `re`, `imi`,
/// and `re-imi`); exact round trip of the textual parts through strtod.
template <typename R = double>
Complex<R> parse_complex(const std::string& s) {
  if (s.empty()) throw ConfigError("empty complex literal");
  std::string t = s;
  if (t.back() == 'i' || t.back() == 'I') {
    t.pop_back();
    // Split at the last +/- that is not an exponent sign or leading sign.
    for (size_t i = t.size(); i-- > 1;) {
      if ((t[i] == '+' || t[i] == '-') &&
          t[i - 1] != 'e' && t[i - 1] != 'E') {
        const std::string re = t.substr(0, i);
        const std::string im = t.substr(i);
        size_t p1 = 0, p2 = 0;
        const R rv = static_cast<R>(std::stod(re, &p1));
        const R iv = im == "+" ? R(1) : im == "-" ? R(-1)
                                      : static_cast<R>(std::stod(im, &p2));
        if (p1 != re.size() || (p2 != im.size() && p2 != 0))
          throw ConfigError("malformed complex literal '" + s + "'");
        return Complex<R>(rv, iv);
      }
    }
    // Pure imaginary.
    size_t p = 0;
    const R iv = (t.empty() || t == "+") ? R(1)
                 : t == "-" ? R(-1)
                            : static_cast<R>(std::stod(t, &p));
    if (!t.empty() && t != "+" && t != "-" && p != t.size())
      throw ConfigError("malformed complex literal '" + s + "'");
    return Complex<R>(R(0), iv);
  }
  size_t p = 0;
  const R rv = static_cast<R>(std::stod(t, &p));
  if (p != t.size())
    throw ConfigError("malformed complex literal '" + s + "'");
  return Complex<R>(rv, R(0));
}

/// Render a complex value in the same `re+imi` literal form.
template <typename R>
std::string format_complex(Complex<R> v) {
  std::ostringstream os;
  os.precision(17);
  os << static_cast<double>(v.real());
  if (v.imag() != R(0)) {
    if (!(v.imag() < R(0))) os << "+";
    os << static_cast<double>(v.imag()) << "i";
  }
  return os.str();
}

}  // namespace qaskey

#endif  // QASKEY_REPORT_HPP
