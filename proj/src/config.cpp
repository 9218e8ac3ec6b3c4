#include "ionsq/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ionsq {

const char* command_name(Command c) {
  switch (c) {
    case Command::Squeeze: return "squeeze";
    case Command::Superpose: return "superpose";
    case Command::General: return "general";
    case Command::ValidateRwa: return "validate-rwa";
    case Command::Conventions: return "conventions";
  }
  return "?";
}

Complex ProtocolConfig::resolved_g() const {
  if (g) return *g;
  return Complex(0.0, -1.0) * omega.value() * eta.value() * eta_r.value() *
         t.value();
}

const char* order_name(ExpansionOrder order) {
  switch (order) {
    case ExpansionOrder::Second: return "2";
    case ExpansionOrder::Fourth: return "4";
    case ExpansionOrder::ExactCosine: return "exact";
  }
  return "?";
}

PhysicalParams ProtocolConfig::physical_params() const {
  PhysicalParams p = PhysicalParams::defaults();
  p.mu = mu;
  p.nu = nu;
  p.omega0 = omega0;
  p.mass = mass;
  p.wavevector = wavevector;
  if (omega) p.rabi = *omega;
  if (eta) p.eta_c = *eta;
  if (eta_r) p.eta_r = *eta_r;
  p.derive_etas();
  return p;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(out);
}

bool try_parse_complex(const std::string& text, Complex& out) {
  std::string s = trim(text);
  if (s.empty()) return false;
  // Forms: "1.5", "2i", "-0.5i", "1+2i", "1e-3-2.5e-2i".
  if (s.back() == 'i' || s.back() == 'I') {
    // Split off the trailing imaginary term: the last '+'/'-' that is not an
    // exponent sign and not the leading sign.
    size_t split = std::string::npos;
    for (size_t k = s.size() - 1; k >= 1; --k) {
      const char c = s[k];
      if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
      if (k == 1) break;
    }
    std::string re_part, im_part;
    if (split == std::string::npos) {
      re_part = "0";
      im_part = s.substr(0, s.size() - 1);
    } else {
      re_part = s.substr(0, split);
      im_part = s.substr(split, s.size() - split - 1);
    }
    if (im_part == "+" || im_part == "-") im_part += "1";
    if (im_part.empty()) im_part = "1";
    double re = 0.0, im = 0.0;
    if (!parse_double(re_part, re) || !parse_double(im_part, im)) return false;
    out = Complex(re, im);
    return true;
  }
  double re = 0.0;
  if (!parse_double(s, re)) return false;
  out = Complex(re, 0.0);
  return true;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) parts.push_back(trim(cur));
  return parts;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  Complex out;
  if (!try_parse_complex(text, out)) {
    throw ConfigError("cannot parse complex number '" + text + "'",
                      {"complex: " + text});
  }
  return out;
}

ProtocolConfig parse_config(const std::string& text) {
  ProtocolConfig cfg;
  std::vector<std::string> issues;
  std::map<std::string, std::string> kv;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) +
                       ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      issues.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (!seen.insert(key).second) {
      issues.push_back("duplicate key '" + key + "'");
      continue;
    }
    kv[key] = value;
  }

  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_double = [&](const char* key, double& target) -> bool {
    auto v = take(key);
    if (!v) return false;
    double d;
    if (!parse_double(*v, d)) {
      issues.push_back(std::string(key) + ": not a finite number: '" + *v +
                       "'");
      return false;
    }
    target = d;
    return true;
  };
  auto take_opt_double = [&](const char* key,
                             std::optional<double>& target) {
    auto v = take(key);
    if (!v) return;
    double d;
    if (!parse_double(*v, d)) {
      issues.push_back(std::string(key) + ": not a finite number: '" + *v +
                       "'");
      return;
    }
    target = d;
  };
  auto take_int = [&](const char* key, int& target) {
    auto v = take(key);
    if (!v) return;
    double d;
    if (!parse_double(*v, d) || d != std::floor(d)) {
      issues.push_back(std::string(key) + ": not an integer: '" + *v + "'");
      return;
    }
    target = static_cast<int>(d);
  };
  auto take_complex = [&](const char* key, Complex& target) -> bool {
    auto v = take(key);
    if (!v) return false;
    Complex c;
    if (!try_parse_complex(*v, c)) {
      issues.push_back(std::string(key) + ": not a complex number: '" + *v +
                       "' (expected forms like 1.5, -2i, 0.3+0.2i)");
      return false;
    }
    target = c;
    return true;
  };
  auto take_double_list = [&](const char* key, std::vector<double>& target) {
    auto v = take(key);
    if (!v) return;
    for (const std::string& part : split_list(*v)) {
      double d;
      if (!parse_double(part, d)) {
        issues.push_back(std::string(key) + ": not a finite number: '" + part +
                         "'");
        return;
      }
      target.push_back(d);
    }
  };

  // command
  bool have_command = false;
  if (auto v = take("command")) {
    have_command = true;
    if (*v == "squeeze") cfg.command = Command::Squeeze;
    else if (*v == "superpose") cfg.command = Command::Superpose;
    else if (*v == "general") cfg.command = Command::General;
    else if (*v == "validate-rwa") cfg.command = Command::ValidateRwa;
    else if (*v == "conventions") cfg.command = Command::Conventions;
    else {
      issues.push_back("command: unknown value '" + *v +
                       "' (squeeze | superpose | general | validate-rwa | "
                       "conventions)");
      have_command = false;
    }
  } else {
    issues.push_back("command: required key missing");
  }

  take_int("n_c_cut", cfg.n_c_cut);
  take_int("n_r_cut", cfg.n_r_cut);
  if (cfg.n_c_cut < 1 || cfg.n_r_cut < 1) {
    issues.push_back("n_c_cut/n_r_cut: cutoffs must be >= 1");
  }

  if (auto v = take("g")) {
    Complex c;
    if (try_parse_complex(*v, c)) cfg.g = c;
    else issues.push_back("g: not a complex number: '" + *v + "'");
  }
  take_opt_double("omega", cfg.omega);
  take_opt_double("eta", cfg.eta);
  take_opt_double("eta_r", cfg.eta_r);
  take_opt_double("t", cfg.t);

  if (auto v = take("weights")) {
    for (const std::string& part : split_list(*v)) {
      Complex c;
      if (!try_parse_complex(part, c)) {
        issues.push_back("weights: not a complex number: '" + part + "'");
        break;
      }
      cfg.weights.push_back(c);
    }
  }

  take_complex("beta_c", cfg.beta_c);
  take_complex("beta_r", cfg.beta_r);

  take_double("mu", cfg.mu);
  take_double("nu", cfg.nu);
  take_double("omega0", cfg.omega0);
  take_double("mass", cfg.mass);
  take_double("wavevector", cfg.wavevector);
  take_double("r_target", cfg.r_target);
  take_double_list("sweep_eta", cfg.sweep_eta);
  take_double_list("sweep_omega_over_nu", cfg.sweep_omega_over_nu);

  if (auto v = take("order")) {
    if (*v == "2") cfg.order = ExpansionOrder::Second;
    else if (*v == "4") cfg.order = ExpansionOrder::Fourth;
    else if (*v == "exact") cfg.order = ExpansionOrder::ExactCosine;
    else issues.push_back("order: expected 2, 4 or exact, got '" + *v + "'");
  }

  take_double("expm_tol", cfg.expm_tol);
  take_double("integrator_tol", cfg.integrator_tol);
  take_double("tail_budget", cfg.tail_budget);

  if (auto v = take("out")) cfg.out = *v;
  if (auto v = take("format")) {
    if (*v != "json" && *v != "csv") {
      issues.push_back("format: expected json or csv, got '" + *v + "'");
    } else {
      cfg.format = *v;
    }
  }

  for (const auto& [key, value] : kv) {
    issues.push_back("unknown key '" + key + "'");
  }

  // Cross-field validation.
  const bool squeezing_run = have_command && (cfg.command == Command::Squeeze ||
                                              cfg.command == Command::Superpose ||
                                              cfg.command == Command::General);
  if (squeezing_run) {
    const bool quad = cfg.omega || cfg.eta || cfg.eta_r || cfg.t;
    const bool quad_complete = cfg.omega && cfg.eta && cfg.eta_r && cfg.t;
    if (cfg.g && quad) {
      issues.push_back(
          "g conflicts with (omega, eta, eta_r, t): give exactly one of the "
          "two parameterizations");
    } else if (!cfg.g && !quad) {
      issues.push_back("squeezing runs need g or the full (omega, eta, eta_r, "
                       "t) quadruple");
    } else if (quad && !quad_complete) {
      issues.push_back("(omega, eta, eta_r, t): incomplete quadruple");
    }
  }
  if (have_command && cfg.command == Command::Superpose) {
    if (cfg.weights.empty()) {
      issues.push_back("weights: required for superpose");
    } else if (cfg.weights.size() % 2 != 0) {
      issues.push_back("weights: length must be even (two weights per cycle), "
                       "got " + std::to_string(cfg.weights.size()));
    }
  }
  if (have_command && cfg.command == Command::ValidateRwa) {
    if (!cfg.sweep_eta.empty() && !cfg.sweep_omega_over_nu.empty()) {
      issues.push_back("validate-rwa: give at most one of sweep_eta and "
                       "sweep_omega_over_nu");
    }
    if (!(cfg.r_target > 0.0)) {
      issues.push_back("r_target: must be positive");
    }
    for (double e : cfg.sweep_eta) {
      if (!(e > 0.0) || e > 0.3) {
        issues.push_back("sweep_eta: values must lie in (0, 0.3]");
        break;
      }
    }
    for (double x : cfg.sweep_omega_over_nu) {
      if (!(x > 0.0)) {
        issues.push_back("sweep_omega_over_nu: values must be positive");
        break;
      }
    }
  }
  if (!(cfg.expm_tol > 0.0) || !(cfg.integrator_tol > 0.0) ||
      !(cfg.tail_budget > 0.0)) {
    issues.push_back("tolerances must be positive");
  }

  if (!issues.empty()) {
    throw ConfigError("config validation failed with " +
                          std::to_string(issues.size()) + " issue(s)",
                      std::move(issues));
  }
  return cfg;
}

ProtocolConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'",
                      {"io: " + path});
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ionsq
