#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mldelta/bound.hpp"
#include "mldelta/deformation.hpp"

namespace mldelta::cli {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full run configuration: deformation + units + coupling + sweep ranges.
/// Defaults give a valid undeformed setup with hbar = m = 1.
struct RunConfig {
  std::string command;

  std::string deformation = "undeformed";
  double beta = 0.0;
  double b = 0.0;  // cutoff half-width

  double v0 = 1.0;
  double hbar = 1.0;
  double mass = 1.0;
  double tol = 1e-10;

  double k = 1.0;  // asymptotic-check incident momentum
  double k_min = 0.5, k_max = 5.0;
  double x_min = -10.0, x_max = 10.0;
  double v0_min = 1.0, v0_max = 4.0;
  int samples = 50;

  std::string format = "csv";  // csv | json
  std::string output;          // empty: standard output

  void validate() const;  // throws ConfigError naming the offending key
  DeformationSpec make_deformation() const;
  PotentialSpec make_potential() const;
};

/// Flat key=value file (# comments, blank lines allowed) over the defaults.
/// Keys mirror the long flags without the leading dashes.
RunConfig load_config(const std::string& path);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// 15-significant-digit shortest decimal, locale independent.
std::string format_double(double v);

/// Parses argv, runs one subcommand of {bound, wavefunction, scatter,
/// resonance, flux, asymptotic-check, selfcheck} and writes CSV or JSON.
/// Exit status: 0 success, 1 computation error, 2 usage/config error.
/// MLDELTA_WORKERS sets the sweep worker count (default 1).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mldelta::cli
