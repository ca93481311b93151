#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "glint/experiments.hpp"
#include "glint/render.hpp"
#include "glint/scene.hpp"

namespace {

using glint::render::SceneConfig;

SceneConfig load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  SceneConfig c = glint::render::load_config(path);
  if (seed) {
    c.seed = *seed;
    c.material.seed = *seed;
  }
  return c;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic glint shading: renderer, experiments and benchmarks"};
  app.require_subcommand(1);
  int threads = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--seed", seed, "Override the config or experiment seed");

  std::string config_path;
  std::string out_path;
  std::string trace_path;
  std::string experiment;
  std::string out_dir;

  auto* render_cmd = app.add_subcommand("render", "Render a scene to a binary PPM");
  render_cmd->add_option("--config", config_path, "Scene config")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--out", out_path, "Output PPM")->required();
  render_cmd->add_option("--trace", trace_path, "Per-pixel trace CSV");

  auto* stats_cmd = app.add_subcommand("stats", "Run a statistical experiment");
  stats_cmd->add_option("--experiment", experiment, "Experiment id")
      ->required()
      ->check(CLI::IsMember({"fig4", "fig8", "variance_zirr", "convergence"}));
  stats_cmd->add_option("--out", out_path, "Output CSV")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Binomial call counts and timings");
  bench_cmd->add_option("--config", config_path, "Scene config")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", out_path, "Output CSV")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Mode comparison and ghosting triptych");
  compare_cmd->add_option("--config", config_path, "Scene config")->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--out-dir", out_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*render_cmd) {
      const SceneConfig c = load(config_path, seed);
      const auto out = glint::render::render(c, threads);
      glint::render::write_ppm(out_path, out.image, c.exposure);
      if (!trace_path.empty()) {
        auto csv = open_out(trace_path);
        glint::render::write_trace_csv(csv, out);
      }
    } else if (*stats_cmd) {
      const auto report = glint::experiments::run_experiment(experiment, seed.value_or(0));
      auto csv = open_out(out_path);
      glint::experiments::write_stats_csv(csv, report);
      for (const auto& check : report.checks)
        std::cout << (check.pass ? "PASS " : "FAIL ") << experiment << '.' << check.name << ' '
                  << check.detail << '\n';
    } else if (*bench_cmd) {
      const SceneConfig c = load(config_path, seed);
      const auto rows = glint::experiments::run_bench(c, threads);
      auto csv = open_out(out_path);
      glint::experiments::write_bench_csv(csv, rows);
    } else if (*compare_cmd) {
      const SceneConfig c = load(config_path, seed);
      const auto r = glint::experiments::run_compare(c, out_dir, threads);
      std::cout << "ghosts output_mix=" << r.ghosts_output_mix
                << " distributed=" << r.ghosts_distributed << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
