#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "glint/scene.hpp"
#include "glint/stats.hpp"

// Reproducible experiments behind the `stats`, `bench` and `compare`
// subcommands. Each returns a report whose checks the acceptance suite reads.

namespace glint::experiments {

struct Series {
  std::string name;
  stats::Histogram histogram;  ///< empty for curve-only series
  std::int64_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::vector<std::pair<std::string, double>> metrics;

  double metric(const std::string& key) const;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct StatsReport {
  std::string experiment;
  std::uint64_t config_hash = 0;  ///< FNV-1a of the experiment parameters
  std::vector<Series> series;
  std::vector<Check> checks;

  bool pass() const;
  const Series& find(const std::string& name) const;
};

struct Fig4Options {
  std::size_t points = 64;
  double p = 0.5;
  double window = 0.75;  ///< side of the square counting window
  double area_lo = 0.5;
  double area_hi = 1.0;
  int trials = 10000;
  std::uint64_t seed = 0;
};

/// Spatialized trials versus the distributed law and output blending at a
/// mid-LOD area.
StatsReport run_fig4(const Fig4Options& options = {});

/// Gated sampler versus exact pmf and reference sampler on the
/// {1, 4, 16, 64} x {0.05, 0.3, 0.5, 0.95} grid.
StatsReport run_fig8(std::uint64_t seed = 0, int samples = 100000);

/// Variance of output blending across the LOD interval against its
/// closed form and against the distributed law.
StatsReport run_variance_zirr(std::uint64_t seed = 0, int trials = 10000);

/// Mean and relative RMS error of eval_glint_ndf against D(h) over facet
/// densities 10^2 .. 10^6 per footprint, Beckmann and GGX at alpha = 1.
StatsReport run_convergence(std::uint64_t seed = 0, int evaluations = 10000);

/// Dispatches fig4, fig8, variance_zirr or convergence. Throws
/// std::invalid_argument for other ids.
StatsReport run_experiment(const std::string& id, std::uint64_t seed = 0);

/// experiment,series,kind,key,value with kinds meta, bin, moment, metric
/// and check.
void write_stats_csv(std::ostream& out, const StatsReport& report);

struct BenchRow {
  std::string mode;
  double tilt_deg = 0.0;
  std::int64_t pixels = 0;
  int calls_min = 0;
  int calls_max = 0;
  double calls_mean = 0.0;
  double calls_variance = 0.0;  ///< population variance over pixels
  double wall_ms = 0.0;
  std::uint64_t config_hash = 0;
};

/// Renders config on the plane at 90 and 25 degrees in both glint modes.
std::vector<BenchRow> run_bench(const render::SceneConfig& config, int threads = 1);

/// mode,tilt_deg,pixels,calls_min,calls_max,calls_mean,calls_variance,wall_ms,config_hash
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct CompareReport {
  std::uint64_t config_hash = 0;
  std::int64_t pixels = 0;
  std::int64_t ghosts_output_mix = 0;   ///< midpoint blended per LOD output
  std::int64_t ghosts_distributed = 0;  ///< midpoint with the distributed law
  std::int64_t endpoint_lo_mismatches = 0;  ///< pixels where the two methods differ at LOD k
  std::int64_t endpoint_hi_mismatches = 0;  ///< same at LOD k + 1
  double mode_max_difference = 0.0;  ///< max |ours - zirr| linear radiance
};

/// Writes ours.ppm, zirr_baseline.ppm, side_by_side.ppm, difference.ppm,
/// lod_k.ppm, lod_k1.ppm, mid_output_mix.ppm, mid_distributed.ppm,
/// triptych_output_mix.ppm, triptych_distributed.ppm and compare.csv.
CompareReport run_compare(const render::SceneConfig& config, const std::filesystem::path& out_dir,
                          int threads = 1);

/// Ghost classification of one pixel from the glint counts at LOD k (a),
/// LOD k + 1 (b) and the midpoint (v): a != b, v == (a + b) / 2 and v
/// differs from both endpoints.
bool is_ghost(double a, double b, double v, double tolerance = 1e-9);

}  // namespace glint::experiments
