#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sailroa/cli.hpp"
#include "sailroa/errors.hpp"

using namespace sailroa;

int main(int argc, char** argv) {
  CLI::App app{"lightsail levitation simulator and ROA analysis toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string sdpa_export;
  bool print_config_only = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_flag("--print-config", print_config_only,
                  "echo the normalized config and exit");
  };

  CLI::App* sim = app.add_subcommand("simulate", "closed-loop levitation rollout");
  add_common(sim);
  CLI::App* lin = app.add_subcommand("linearize", "internal-dynamics linearization");
  add_common(lin);
  CLI::App* roa = app.add_subcommand("roa", "region-of-attraction estimation");
  add_common(roa);
  roa->add_option("--export-sdpa", sdpa_export, "write the SOS program as SDPA .dat-s");
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep of linearize + roa");
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = load_config(config_path);
    if (print_config_only) {
      std::cout << print_config(config);
      return cli::kExitOk;
    }
    const std::string out = out_dir.empty() ? config.output_dir : out_dir;
    if (sim->parsed()) return cli::cmd_simulate(config, out);
    if (lin->parsed()) return cli::cmd_linearize(config, out);
    if (roa->parsed()) return cli::cmd_roa(config, out, sdpa_export);
    if (sweep->parsed()) return cli::cmd_sweep(config, out);
    return cli::kExitUnexpected;
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return cli::kExitConfig;
  } catch (const NotHurwitzError& err) {
    std::cerr << err.what() << "\n";
    return cli::kExitNotHurwitz;
  } catch (const CertificationError& err) {
    std::cerr << err.what() << "\n";
    return cli::kExitCertification;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return cli::kExitUnexpected;
  }
}
