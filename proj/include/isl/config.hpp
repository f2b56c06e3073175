#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isl/chart.hpp"
#include "isl/geom.hpp"
#include "isl/models.hpp"

namespace isl {

struct Tolerances {
  double zcc = 1e-8;
  double immersion = 1e-5;
  double closed = 1e-6;
  double path = 1e-7;
  double recover = 1e-7;
};

struct OutputSpec {
  std::string dir = ".";
  std::string prefix = "surface";
  /// 1-based basis indices of the OBJ projection (Gell-Mann order for su(3)).
  std::vector<int> obj_axes = {8, 4, 5};
  bool obj = true;
  bool csv = true;
  bool json = true;
};

struct RSpec {
  std::string id = "conformal";
  std::vector<double> f = {1.0};
  std::vector<double> g = {};
};

struct Config {
  ModelSpec model;
  std::optional<Chart> chart;
  /// Domain parameters: lambda = i t on the imaginary line, lambda = t on the real line.
  std::vector<double> lambda = {0.5};
  std::string formula = "weierstrass";
  /// beta(lambda): "1", "i", or a real number.
  std::string beta = "1";
  std::vector<PolyTerm> S;
  RSpec R;
  /// closed_form or integrated
  std::string wavefunction = "closed_form";
  Tolerances tol;
  OutputSpec output;
  SphereQuadrature quadrature;
  std::optional<int> i0, j0;
};

/// Parses a JSON config; unknown keys and ill-typed values are configuration errors.
Config parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
/// Reads the file (usage error when missing) and applies `--set key=value` overrides (dotted keys).
Config load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides = {});

/// Default configuration as JSON text (documented schema).
std::string default_config_json();

cd parse_beta(const std::string& s);

}  // namespace isl
