#pragma once

// Subcommands of the dunkl front end and the verification battery.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "dunkl/params.hpp"

namespace dunkl::app {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kBlowUp = 3 };

struct CommandContext {
  ResolvedConfig config;
  std::filesystem::path out_dir = ".";
  std::ostream* log = nullptr;  // human-readable summary, may be null
};

// '#' comment lines: artifact version, command, resolved config, overrides.
std::vector<std::string> header_lines(const ResolvedConfig& config, const std::string& command);

struct SpectrumRow {
  QuantumNumbers nq;
  ParitySector sector;
  SpectralConstants constants;
};

// Rows ordered by sector (e1, e2, e3 from +1 to -1), then n, n_theta, n_phi.
std::vector<SpectrumRow> spectrum_table(const RunConfig& config);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  // pass iff value >= tolerance; otherwise value < tolerance
  bool at_floor = false;     // order ratio short of the bound, finer residual below kResolutionFloor

  bool passed() const;
};

// Residuals below this have no resolvable convergence order left.
inline constexpr double kResolutionFloor = 1e-10;

std::vector<Check> run_checks(const RunConfig& config);

int cmd_spectrum(const CommandContext& ctx);
int cmd_modes(const CommandContext& ctx);
int cmd_ep(const CommandContext& ctx);
int cmd_evolve(const CommandContext& ctx);
int cmd_verify(const CommandContext& ctx);

// Columns t, rho, rho_dot, eta of an ep CSV.
struct EPTable {
  std::vector<double> t, rho, rho_dot, eta;
};
EPTable read_ep_csv(const std::filesystem::path& path);

}  // namespace dunkl::app
