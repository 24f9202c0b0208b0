#include "esddfd/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "esddfd/ode_schemes.hpp"

namespace esddfd::harness {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class Kind : std::uint8_t { Real, Int, RealList, NameList, Name, ModeList };

// Returns an error message, or empty when the canonical value is acceptable.
using Check = std::function<std::string(const ExperimentConfig&, const std::string& key)>;

struct KeySpec {
  std::string key;
  Kind kind;
  bool required;
  std::string fallback;
  Check check;
};

struct RawEntry {
  std::string value;
  int line = 0;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    out.push_back(trim(s.substr(start, end - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) {
    return std::nullopt;
  }
  return v;
}

std::optional<long long> to_integer(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += parts[i];
  }
  return out;
}

// Canonical text for a raw value, or an error message.
std::optional<std::string> canonicalize(Kind kind, const std::string& raw, std::string& error) {
  switch (kind) {
    case Kind::Real: {
      const auto v = to_double(raw);
      if (!v || !std::isfinite(*v)) {
        error = "expected a finite number, got '" + raw + "'";
        return std::nullopt;
      }
      return format_number(*v);
    }
    case Kind::Int: {
      const auto v = to_integer(raw);
      if (!v) {
        error = "expected an integer, got '" + raw + "'";
        return std::nullopt;
      }
      return std::to_string(*v);
    }
    case Kind::RealList: {
      std::vector<std::string> parts;
      for (const auto& item : split_list(raw)) {
        const auto v = to_double(item);
        if (!v || !std::isfinite(*v)) {
          error = "expected a comma-separated list of numbers, got '" + raw + "'";
          return std::nullopt;
        }
        parts.push_back(format_number(*v));
      }
      return join(parts);
    }
    case Kind::NameList: {
      const auto parts = split_list(raw);
      if (std::any_of(parts.begin(), parts.end(), [](const std::string& p) { return p.empty(); })) {
        error = "empty entry in list '" + raw + "'";
        return std::nullopt;
      }
      return join(parts);
    }
    case Kind::Name:
      if (raw.empty()) {
        error = "empty value";
        return std::nullopt;
      }
      return raw;
    case Kind::ModeList: {
      std::vector<std::string> parts;
      for (const auto& item : split_list(raw)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
          error = "expected amplitude:wavenumber pairs, got '" + raw + "'";
          return std::nullopt;
        }
        const auto amp = to_double(trim(std::string_view(item).substr(0, colon)));
        const auto k = to_double(trim(std::string_view(item).substr(colon + 1)));
        if (!amp || !k || !std::isfinite(*amp) || !std::isfinite(*k)) {
          error = "expected amplitude:wavenumber pairs, got '" + raw + "'";
          return std::nullopt;
        }
        parts.push_back(format_number(*amp) + ":" + format_number(*k));
      }
      return join(parts);
    }
  }
  return std::nullopt;
}

// ---- reusable checks ----

Check positive() {
  return [](const ExperimentConfig& c, const std::string& key) -> std::string {
    return c.number(key) > 0.0 ? "" : key + " must be positive";
  };
}

Check non_negative() {
  return [](const ExperimentConfig& c, const std::string& key) -> std::string {
    return c.number(key) >= 0.0 ? "" : key + " must be non-negative";
  };
}

Check at_least(int lo) {
  return [lo](const ExperimentConfig& c, const std::string& key) -> std::string {
    return c.integer(key) >= lo ? "" : key + " must be at least " + std::to_string(lo);
  };
}

Check all_positive() {
  return [](const ExperimentConfig& c, const std::string& key) -> std::string {
    const auto v = c.numbers(key);
    if (v.empty()) {
      return key + " must not be empty";
    }
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; }) ? "" : key + " entries must be positive";
  };
}

Check alpha_range() {
  return [](const ExperimentConfig& c, const std::string& key) -> std::string {
    for (double a : c.numbers(key)) {
      if (!(a > 0.0 && a <= 1.0)) {
        return key + " = " + format_number(a) + " is out of range: alpha must lie in (0, 1]";
      }
    }
    return "";
  };
}

Check one_of(std::vector<std::string> allowed) {
  return [allowed](const ExperimentConfig& c, const std::string& key) -> std::string {
    for (const auto& v : c.strings(key)) {
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        return key + ": unknown value '" + v + "' (expected one of " + join(allowed) + ")";
      }
    }
    return "";
  };
}

const std::vector<std::string> kMethods{"EulerStd", "Nsfd", "EsddfdPhys", "EsddfdModal"};

std::vector<std::string> decay_scheme_names() {
  std::vector<std::string> out;
  for (auto s : ode::kAllDecaySchemes) {
    out.emplace_back(ode::to_string(s));
  }
  return out;
}

std::vector<KeySpec> common_keys() {
  return {
      {"experiment", Kind::Name, true, "", nullptr},
      {"format", Kind::Name, false, "csv", one_of({"csv", "json", "svg"})},
      {"output", Kind::Name, false, "", nullptr},
  };
}

std::vector<KeySpec> schema(Experiment e) {
  auto keys = common_keys();
  auto add = [&](std::vector<KeySpec> more) { keys.insert(keys.end(), more.begin(), more.end()); };
  const std::string two_pi = format_number(2.0 * kPi);
  switch (e) {
    case Experiment::DecayOrder:
      add({
          {"lambda", Kind::Real, true, "", positive()},
          {"t_final", Kind::Real, true, "", positive()},
          {"h0", Kind::Real, true, "", positive()},
          {"levels", Kind::Int, true, "", at_least(4)},
          {"x0", Kind::Real, false, "1", nullptr},
          {"schemes", Kind::NameList, false, join(decay_scheme_names()), one_of(decay_scheme_names())},
      });
      break;
    case Experiment::HoExact:
      add({
          {"omega", Kind::Real, true, "", positive()},
          {"h", Kind::Real, true, "", positive()},
          {"n_steps", Kind::Int, true, "", at_least(2)},
          {"y0", Kind::Real, false, "1", nullptr},
          {"v0", Kind::Real, false, "0", nullptr},
      });
      break;
    case Experiment::PdeCompare:
      add({
          {"a", Kind::Real, true, "", non_negative()},
          {"b", Kind::Real, true, "", nullptr},
          {"m_points", Kind::Int, true, "", at_least(3)},
          {"dts", Kind::RealList, true, "", all_positive()},
          {"t_final", Kind::Real, true, "", positive()},
          {"length", Kind::Real, false, two_pi, positive()},
          {"ic_modes", Kind::ModeList, false, "1:1", nullptr},
          {"methods", Kind::NameList, false, join(kMethods), one_of(kMethods)},
          {"esddfd_k", Kind::Real, false, "", nullptr},
          {"esddfd_s", Kind::Real, false, "", nullptr},
      });
      break;
    case Experiment::PdeStability:
      add({
          {"a", Kind::Real, true, "", non_negative()},
          {"b", Kind::Real, true, "", nullptr},
          {"m_points", Kind::Int, true, "", at_least(3)},
          {"dts", Kind::RealList, true, "", all_positive()},
          {"length", Kind::Real, false, two_pi, positive()},
          {"methods", Kind::NameList, false, join(kMethods), one_of(kMethods)},
          {"ic_modes", Kind::ModeList, false, "1:1", nullptr},
          {"esddfd_k", Kind::Real, false, "", nullptr},
          {"esddfd_s", Kind::Real, false, "", nullptr},
      });
      break;
    case Experiment::MlIdentities:
      add({
          {"alphas", Kind::RealList, false, "0.5,1",
           [](const ExperimentConfig& c, const std::string& key) -> std::string {
             for (double a : c.numbers(key)) {
               if (a != 0.5 && a != 1.0) {
                 return key + ": no closed-form oracle for alpha = " + format_number(a) + " (supported: 0.5, 1)";
               }
             }
             return "";
           }},
          {"zs", Kind::RealList, false, "-10,-5,-3,-2,-1,-0.5,0,0.5,1,2,5",
           [](const ExperimentConfig& c, const std::string& key) -> std::string {
             for (double z : c.numbers(key)) {
               if (z < -50.0 || z > 10.0) {
                 return key + " entries must lie in [-50, 10]";
               }
             }
             return "";
           }},
      });
      break;
    case Experiment::SignatureDemo:
      add({
          {"alpha", Kind::RealList, true, "", alpha_range()},
          {"lambda", Kind::Real, false, "1", positive()},
          {"propagator", Kind::Name, false, "nonlocal", one_of({"local", "nonlocal"})},
          {"t_min", Kind::Real, false, "0.0001", positive()},
          {"t_max", Kind::Real, false, "0.01", positive()},
          {"samples", Kind::Int, false, "32", at_least(8)},
      });
      break;
    case Experiment::LaplaceBvp:
      add({
          {"s", Kind::Real, true, "", nullptr},
          {"a", Kind::Real, false, "1", positive()},
          {"b", Kind::Real, false, "0", nullptr},
          {"levels", Kind::Int, false, "4", at_least(2)},
          {"n0", Kind::Int, false, "8", at_least(2)},
          {"ic_modes", Kind::ModeList, false, "1:1", nullptr},
      });
      break;
  }
  return keys;
}

bool integral_ratio(double num, double den) {
  const double q = num / den;
  const double n = std::nearbyint(q);
  return n >= 1.0 && std::fabs(q - n) <= 1e-9 * n;
}

// Checks spanning several keys.
void cross_checks(const ExperimentConfig& c, std::vector<ConfigIssue>& issues,
                  const std::map<std::string, RawEntry>& raw) {
  auto line_of = [&](const std::string& key) {
    const auto it = raw.find(key);
    return it == raw.end() ? 0 : it->second.line;
  };
  auto fail = [&](const std::string& key, std::string msg) { issues.push_back({line_of(key), key, std::move(msg)}); };
  switch (c.experiment) {
    case Experiment::DecayOrder:
      if (!integral_ratio(c.number("t_final"), c.number("h0"))) {
        fail("h0", "t_final / h0 must be a positive integer");
      }
      break;
    case Experiment::HoExact:
      if (c.number("omega") * c.number("h") / 2.0 >= kPi) {
        fail("h", "omega * h / 2 must stay below pi");
      }
      break;
    case Experiment::PdeCompare:
      for (double dt : c.numbers("dts")) {
        if (dt > 0.0 && !integral_ratio(c.number("t_final"), dt)) {
          fail("dts", "t_final / dt must be a positive integer for dt = " + format_number(dt));
        }
      }
      [[fallthrough]];
    case Experiment::PdeStability: {
      const double length = c.number("length");
      for (const auto& m : c.modes("ic_modes")) {
        const double cycles = m.k * length / (2.0 * kPi);
        if (std::fabs(cycles - std::nearbyint(cycles)) > 1e-9 * std::max(1.0, std::fabs(cycles))) {
          fail("ic_modes", "wave number " + format_number(m.k) + " is not periodic on length " + format_number(length));
        }
      }
      const auto methods = c.strings("methods");
      const bool phys = std::find(methods.begin(), methods.end(), "EsddfdPhys") != methods.end();
      if (phys && !(c.number("a") > 0.0)) {
        fail("a", "EsddfdPhys requires a > 0");
      }
      if (c.integer("m_points") > 4096) {
        fail("m_points", "m_points must not exceed 4096");
      }
      break;
    }
    case Experiment::SignatureDemo:
      if (!(c.number("t_max") > c.number("t_min"))) {
        fail("t_max", "t_max must exceed t_min");
      }
      break;
    case Experiment::LaplaceBvp:
      if (!(c.number("s") > c.number("b"))) {
        fail("s", "s must exceed b");
      }
      break;
    case Experiment::MlIdentities:
      break;
  }
}

ExperimentConfig validate(const std::map<std::string, RawEntry>& raw, std::string name,
                          std::vector<ConfigIssue>& issues) {
  ExperimentConfig cfg;
  const auto exp_it = raw.find("experiment");
  if (exp_it == raw.end()) {
    issues.push_back({0, "experiment", "missing required key 'experiment'"});
    return cfg;
  }
  const auto exp = parse_experiment(exp_it->second.value);
  if (!exp) {
    issues.push_back({exp_it->second.line, "experiment", "unknown experiment '" + exp_it->second.value + "'"});
    return cfg;
  }
  cfg.experiment = *exp;
  cfg.name = name.empty() ? std::string(to_string(*exp)) : std::move(name);

  const auto keys = schema(*exp);
  const std::size_t before = issues.size();
  for (const auto& [key, entry] : raw) {
    if (std::none_of(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.key == key; })) {
      issues.push_back({entry.line, key, "unknown key '" + key + "' for experiment " + std::string(to_string(*exp))});
    }
  }
  for (const auto& spec : keys) {
    const auto it = raw.find(spec.key);
    if (it == raw.end()) {
      if (spec.required) {
        issues.push_back({0, spec.key, "missing required key '" + spec.key + "'"});
      } else if (!spec.fallback.empty()) {
        cfg.params[spec.key] = spec.fallback;
      }
      continue;
    }
    std::string error;
    const auto canonical = canonicalize(spec.kind, it->second.value, error);
    if (!canonical) {
      issues.push_back({it->second.line, spec.key, spec.key + ": " + error});
      continue;
    }
    cfg.params[spec.key] = *canonical;
  }
  for (const auto& spec : keys) {
    if (!spec.check || !cfg.has(spec.key)) {
      continue;
    }
    const std::string msg = spec.check(cfg, spec.key);
    if (!msg.empty()) {
      const auto it = raw.find(spec.key);
      issues.push_back({it == raw.end() ? 0 : it->second.line, spec.key, msg});
    }
  }
  if (issues.size() == before) {
    cross_checks(cfg, issues, raw);
  }
  return cfg;
}

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, RawEntry> entries;
};

struct Document {
  std::map<std::string, RawEntry> globals;
  std::vector<Section> sections;
};

Document parse_document(std::string_view text, std::vector<ConfigIssue>& issues) {
  Document doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3) {
        issues.push_back({line_no, "", "line " + std::to_string(line_no) + ": malformed section header"});
        continue;
      }
      doc.sections.push_back({trim(std::string_view(body).substr(1, body.size() - 2)), line_no, {}});
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      issues.push_back({line_no, "", "line " + std::to_string(line_no) + ": expected 'key = value'"});
      continue;
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) {
      issues.push_back({line_no, "", "line " + std::to_string(line_no) + ": empty key"});
      continue;
    }
    auto& target = doc.sections.empty() ? doc.globals : doc.sections.back().entries;
    if (target.count(key) != 0) {
      issues.push_back({line_no, key, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'"});
      continue;
    }
    target[key] = {value, line_no};
  }
  return doc;
}

std::vector<ExperimentConfig> parse_all(std::string_view text) {
  std::vector<ConfigIssue> issues;
  const Document doc = parse_document(text, issues);
  std::vector<ExperimentConfig> out;
  if (doc.sections.empty()) {
    out.push_back(validate(doc.globals, {}, issues));
  } else {
    for (const auto& section : doc.sections) {
      auto merged = section.entries;
      for (const auto& [k, v] : doc.globals) {
        merged.emplace(k, v);
      }
      out.push_back(validate(merged, section.name, issues));
    }
  }
  if (!issues.empty()) {
    throw ConfigError(std::move(issues));
  }
  return out;
}

std::string render_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << "invalid configuration (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s") << ")";
  for (const auto& i : issues) {
    os << "\n  ";
    if (i.line > 0 && i.message.rfind("line ", 0) != 0) {
      os << "line " << i.line << ": ";
    }
    os << i.message;
  }
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(render_issues(issues)), issues_(std::move(issues)) {}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::DecayOrder:
      return "decay_order";
    case Experiment::HoExact:
      return "ho_exact";
    case Experiment::PdeCompare:
      return "pde_compare";
    case Experiment::PdeStability:
      return "pde_stability";
    case Experiment::MlIdentities:
      return "ml_identities";
    case Experiment::SignatureDemo:
      return "signature_demo";
    case Experiment::LaplaceBvp:
      return "laplace_bvp";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (auto e : {Experiment::DecayOrder, Experiment::HoExact, Experiment::PdeCompare, Experiment::PdeStability,
                 Experiment::MlIdentities, Experiment::SignatureDemo, Experiment::LaplaceBvp}) {
    if (to_string(e) == name) {
      return e;
    }
  }
  return std::nullopt;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw std::out_of_range("config has no key '" + key + "'");
  }
  return it->second;
}

double ExperimentConfig::number(const std::string& key) const { return *to_double(text(key)); }

int ExperimentConfig::integer(const std::string& key) const { return static_cast<int>(*to_integer(text(key))); }

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split_list(text(key))) {
    out.push_back(*to_double(s));
  }
  return out;
}

std::vector<std::string> ExperimentConfig::strings(const std::string& key) const { return split_list(text(key)); }

std::vector<SineMode> ExperimentConfig::modes(const std::string& key) const {
  std::vector<SineMode> out;
  for (const auto& s : split_list(text(key))) {
    const auto colon = s.find(':');
    out.push_back({*to_double(s.substr(0, colon)), *to_double(s.substr(colon + 1))});
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  auto all = parse_all(text);
  if (all.size() != 1) {
    throw ConfigError({{0, "", "document defines " + std::to_string(all.size()) + " experiments; expected one"}});
  }
  return std::move(all.front());
}

std::vector<ExperimentConfig> parse_batch(std::string_view text) { return parse_all(text); }

ExperimentConfig make_config(Experiment experiment, const std::map<std::string, std::string>& values,
                             std::string name) {
  std::map<std::string, RawEntry> raw;
  for (const auto& [k, v] : values) {
    raw[k] = {trim(v), 0};
  }
  raw["experiment"] = {std::string(to_string(experiment)), 0};
  std::vector<ConfigIssue> issues;
  auto cfg = validate(raw, std::move(name), issues);
  if (!issues.empty()) {
    throw ConfigError(std::move(issues));
  }
  return cfg;
}

std::string to_config_text(const ExperimentConfig& config) {
  std::ostringstream os;
  os << "[" << config.name << "]\n";
  os << "experiment = " << config.params.at("experiment") << "\n";
  for (const auto& [k, v] : config.params) {
    if (k != "experiment") {
      os << k << " = " << v << "\n";
    }
  }
  return os.str();
}

}  // namespace esddfd::harness
