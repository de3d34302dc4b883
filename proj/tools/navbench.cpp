// Command line entry point. Subcommands are wired up as the library grows.

#include <CLI11.hpp>

#include <cstdio>

#include "navbench/env_io.hpp"
#include "navbench/envgen.hpp"

int main(int argc, char** argv) {
  CLI::App app{"navbench: 2D navigation benchmark suite"};
  app.require_subcommand(1);

  // --- generate ---------------------------------------------------------
  uint64_t master_seed = 0;
  std::string out_dir = "catalog";
  double robot_radius = navbench::envgen::kDefaultRobotRadius;
  CLI::App* generate = app.add_subcommand("generate", "generate a benchmark catalog");
  generate->add_option("--master-seed", master_seed, "master seed for the whole catalog")
      ->required();
  generate->add_option("--out", out_dir, "output directory")->capture_default_str();
  generate->add_option("--robot-radius", robot_radius,
                       "robot radius used for the navigability check")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      navbench::envgen::CatalogOptions options;
      options.robot_radius = robot_radius;
      const auto catalog = navbench::envgen::generate_benchmark_set(master_seed, options);
      navbench::envgen::save_catalog(catalog, out_dir);
      std::printf("wrote %zu environments to %s (hash %s)\n", catalog.envs.size(),
                  out_dir.c_str(), navbench::envgen::catalog_content_hash(catalog).c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
