#pragma once

// Run configuration: a JSON document merged over built-in defaults, with
// dotted-key overrides, strict key checking and typed extraction.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/ermakov.hpp"
#include "dunkl/params.hpp"
#include "json.hpp"

namespace dunkl::app {

struct SpectrumOptions {
  int n_max = 2;
  int n_theta_max = 2;
  int n_phi_max = 2;
  bool all_sectors = true;
};

struct EPOptions {
  std::optional<double> rho0;  // adiabatic 1 / sqrt(M omega) when absent
  double rho_dot0 = 0.0;
  double t_end = 10.0;
  double step = 1e-3;
  int output_every = 10;
};

struct ModesOptions {
  int angular_nodes = 64;
  int radial_nodes = 400;
};

struct EvolveOptions {
  double t_end = 5.0;
  std::vector<double> snapshot_times;
  std::string snapshot_format = "csv";  // csv, binary or both
  int snapshot_radial_nodes = 200;
  double snapshot_r_max = 0.0;  // 0 picks the truncation radius
  int snapshot_theta_nodes = 16;
  int snapshot_phi_nodes = 16;
  bool propagate = true;
  int propagator_nodes = 4000;
  double propagator_r_max = 12.0;
  double propagator_step = 1e-4;
  int observe_every = 100;
};

struct VerifyOptions {
  int nodes = 2000;
  int commutator_nodes = 4000;
  int random_fields = 20;
  std::uint64_t seed = 1234;
  double lambda_perturbation = 0.0;
  double t_end = 2.0;
  int propagator_nodes = 2000;
  double propagator_step = 1e-3;
};

struct RunConfig {
  ModelParams model;
  ParitySector sector;
  AzimuthalBranch branch = AzimuthalBranch::Principal;
  QuantumNumbers quantum_numbers;
  TimeProfile profile;
  SpectrumOptions spectrum;
  EPOptions ep;
  ModesOptions modes;
  EvolveOptions evolve;
  VerifyOptions verify;
};

struct ResolvedConfig {
  nlohmann::json document;             // defaults, then file, then overrides
  std::vector<std::string> overrides;  // as given on the command line
  RunConfig run;
};

nlohmann::json default_document();

// Applies one KEY=VALUE override. KEY is a dotted path to an existing scalar
// field; VALUE is parsed as JSON and falls back to a plain string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Throws ConfigError naming the first key that is not in the defaults or
// has the wrong JSON type.
void check_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                  const std::string& prefix = "");

// Typed view of a schema-checked document; table paths resolve against
// `base_dir`. Throws ConfigError / DomainError on invalid values.
RunConfig extract(const nlohmann::json& doc, const std::filesystem::path& base_dir);

ResolvedConfig load_config(const std::filesystem::path& path,
                           const std::vector<std::string>& overrides);
ResolvedConfig resolve(const nlohmann::json& file_doc, const std::vector<std::string>& overrides,
                       const std::filesystem::path& base_dir);

}  // namespace dunkl::app
