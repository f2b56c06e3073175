#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isl/commands.hpp"
#include "isl/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Integrable surfaces: zero-curvature checks, immersion formulas, invariants"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("-c,--config", config_path, "JSON configuration file");
  app.add_option("-s,--set", overrides, "override a config entry, dotted key=value (repeatable)")->allow_extra_args(false);

  auto* zcc = app.add_subcommand("zcc", "sup of the zero-curvature residual per lambda");
  auto* immerse = app.add_subcommand("immerse", "build a surface and write OBJ/CSV/JSON");
  auto* inv = app.add_subcommand("invariants", "invariant report of X_k as JSON");
  auto* check = app.add_subcommand("check", "run property suites");
  std::string suite = "all";
  check->add_option("suite", suite, "cohomology, laxpair, immersion, cpn, geom or all");
  auto* defaults = app.add_subcommand("default-config", "print the default configuration");

  for (auto* sub : {zcc, immerse, inv, check}) {
    sub->add_option("-c,--config", config_path, "JSON configuration file");
    sub->add_option("-s,--set", overrides, "override a config entry, dotted key=value (repeatable)")->allow_extra_args(false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (defaults->parsed()) {
      std::cout << isl::default_config_json() << "\n";
      return 0;
    }
    const std::optional<std::string> path = config_path.empty() ? std::nullopt : std::optional<std::string>(config_path);
    const isl::Config cfg = isl::load_config(path, overrides);
    if (zcc->parsed()) return isl::cmd_zcc(cfg, std::cout);
    if (immerse->parsed()) return isl::cmd_immerse(cfg, std::cout);
    if (inv->parsed()) return isl::cmd_invariants(cfg, std::cout);
    return isl::cmd_check(suite, cfg, std::cout);
  } catch (const isl::Error& e) {
    std::cerr << e.what() << "\n";
    return isl::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
