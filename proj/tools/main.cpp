#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dunkl/error.hpp"
#include "dunkl/kernels.hpp"

int main(int argc, char** argv) {
  using namespace dunkl::app;
  CLI::App app{"Time-dependent Dunkl oscillator: spectra, modes, auxiliary trajectories, evolution"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  int threads = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--override", overrides, "KEY=VALUE override of a config field (repeatable)")->allow_extra_args(false);
  app.add_option("--threads", threads, "worker threads for the parallel kernels")->check(CLI::NonNegativeNumber);
  app.fallthrough();
  auto* spectrum = app.add_subcommand("spectrum", "tabulate separation constants and invariant eigenvalues");
  auto* modes = app.add_subcommand("modes", "sample the angular and radial mode functions");
  auto* ep = app.add_subcommand("ep", "integrate the auxiliary Ermakov-Pinney equation");
  auto* evolve = app.add_subcommand("evolve", "analytic evolution, snapshots and propagator comparison");
  auto* verify = app.add_subcommand("verify", "run the residual and conservation checks");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (threads > 0) dunkl::set_threads(threads);
    CommandContext ctx;
    ctx.config = load_config(config_path, overrides);
    ctx.out_dir = out_dir;
    ctx.log = &std::cout;
    std::filesystem::create_directories(ctx.out_dir);
    if (spectrum->parsed()) return cmd_spectrum(ctx);
    if (modes->parsed()) return cmd_modes(ctx);
    if (ep->parsed()) return cmd_ep(ctx);
    if (evolve->parsed()) return cmd_evolve(ctx);
    if (verify->parsed()) return cmd_verify(ctx);
  } catch (const dunkl::BlowUp& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBlowUp;
  } catch (const dunkl::SingularSolve& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
