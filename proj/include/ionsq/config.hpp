// config.hpp — declarative run configuration: one key = value per line,
// '#' comments, full-file validation that reports every error found.
#pragma once

#include "ionsq/dynamics.hpp"
#include "ionsq/protocols.hpp"

#include <optional>
#include <string>

namespace ionsq {

enum class Command { Squeeze, Superpose, General, ValidateRwa, Conventions };

const char* command_name(Command c);

struct ProtocolConfig {
  Command command = Command::Conventions;

  int n_c_cut = 30;
  int n_r_cut = 30;

  // Squeeze argument: either g directly or the drive quadruple
  // (omega, eta, eta_r, t) with g = −i Ω η η_r t. Exactly one of the two
  // for squeezing runs.
  std::optional<Complex> g;
  std::optional<double> omega;
  std::optional<double> eta;
  std::optional<double> eta_r;
  std::optional<double> t;

  WeightList weights;  // superpose

  Complex beta_c{0.0, 0.0};  // general
  Complex beta_r{0.0, 0.0};

  // validate-rwa block (defaults from PhysicalParams::defaults()).
  double mu = 2.0 * kPi * 1.0e6;
  double nu = std::sqrt(3.0) * 2.0 * kPi * 1.0e6;
  double omega0 = 0.0;
  double mass = 0.0;
  double wavevector = 0.0;
  ExpansionOrder order = ExpansionOrder::Second;
  double r_target = 0.05;
  std::vector<double> sweep_eta;
  std::vector<double> sweep_omega_over_nu;

  double expm_tol = kDefaultExpmTol;
  double integrator_tol = kDefaultIntegratorTol;
  double tail_budget = kDefaultTailBudget;

  std::string out;  // empty: report to stdout
  std::string format = "json";

  Complex resolved_g() const;
  PhysicalParams physical_params() const;
};

const char* order_name(ExpansionOrder order);

Complex parse_complex(const std::string& text);  // throws ConfigError

// Parses and validates; throws ConfigError carrying the full issue list.
ProtocolConfig parse_config(const std::string& text);

ProtocolConfig load_config_file(const std::string& path);

}  // namespace ionsq
