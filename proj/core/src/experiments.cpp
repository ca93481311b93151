#include "glint/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "glint/counting.hpp"
#include "glint/glint_brdf.hpp"
#include "glint/ndf.hpp"
#include "glint/render.hpp"
#include "glint/rng.hpp"

namespace glint::experiments {

namespace {

constexpr std::uint32_t kStreamFig4Field = 10;
constexpr std::uint32_t kStreamFig4Lod = 11;
constexpr std::uint32_t kStreamFig8 = 20;
constexpr std::uint32_t kStreamVariance = 30;
constexpr std::uint32_t kStreamConvergence = 40;

std::uint64_t seed_of(std::initializer_list<std::int64_t> ints, std::uint32_t stream) {
  return rng::hash_seed(rng::SeedKey(ints, stream));
}

Series make_series(std::string name, const std::vector<double>& values, bool with_histogram) {
  Series s;
  s.name = std::move(name);
  if (with_histogram) s.histogram = stats::histogram_rounded(values);
  s.samples = static_cast<std::int64_t>(values.size());
  const stats::Moments m = stats::moments(values);
  s.mean = m.mean;
  s.variance = m.variance;
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

double Series::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  throw std::out_of_range("Series " + name + ": no metric " + key);
}

bool StatsReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Series& StatsReport::find(const std::string& name) const {
  for (const Series& s : series)
    if (s.name == name) return s;
  throw std::out_of_range("StatsReport " + experiment + ": no series " + name);
}

StatsReport run_fig4(const Fig4Options& o) {
  StatsReport report;
  report.experiment = "fig4";
  std::ostringstream params;
  params << "fig4;points=" << o.points << ";p=" << o.p << ";window=" << o.window
         << ";lo=" << o.area_lo << ";hi=" << o.area_hi << ";trials=" << o.trials
         << ";seed=" << o.seed;
  report.config_hash = render::fnv1a64(params.str());

  const counting::Rect window{0.0, 0.0, o.window, o.window};
  const double area = window.area();
  const double density = static_cast<double>(o.points);

  std::vector<double> oracle;
  std::vector<double> distributed;
  std::vector<double> distributed_gated;
  std::vector<double> zirr;
  const auto seed = static_cast<std::int64_t>(o.seed);
  for (int m = 0; m < o.trials; ++m) {
    const counting::TrialField field{o.points, counting::TrialLayout::stratified, o.p,
                                     seed_of({seed, m}, kStreamFig4Field)};
    oracle.push_back(static_cast<double>(counting::spatialized_trials_oracle(field, window)));
    const counting::LodPair lods{o.area_lo, o.area_hi, seed_of({seed, m, 0}, kStreamFig4Lod),
                                 seed_of({seed, m, 1}, kStreamFig4Lod)};
    distributed.push_back(static_cast<double>(
        counting::distribute_binomial(area, lods, density, o.p, counting::Sampler::reference)));
    distributed_gated.push_back(static_cast<double>(
        counting::distribute_binomial(area, lods, density, o.p, counting::Sampler::gated)));
    zirr.push_back(
        counting::blend_binomial_zirr(area, lods, density, o.p, counting::Sampler::reference));
  }

  const auto n_window = static_cast<int>(std::llround(density * area));
  const std::vector<double> pmf = stats::binomial_pmf(n_window, o.p);
  const double target_variance = density * area * o.p * (1.0 - o.p);

  report.series.push_back(make_series("oracle", oracle, true));
  report.series.push_back(make_series("distributed", distributed, true));
  report.series.push_back(make_series("distributed_gated", distributed_gated, true));
  report.series.push_back(make_series("zirr", zirr, true));
  for (Series& s : report.series) {
    const stats::ChiSquare gof = stats::chi_square_gof(s.histogram, pmf);
    s.metrics.emplace_back("gof_statistic", gof.statistic);
    s.metrics.emplace_back("gof_dof", gof.dof);
    s.metrics.emplace_back("gof_p_value", gof.p_value);
    s.metrics.emplace_back("variance_ratio", s.variance / target_variance);
    if (s.name != "oracle") {
      const stats::ChiSquare h =
          stats::chi_square_homogeneity(s.histogram, report.series.front().histogram);
      s.metrics.emplace_back("vs_oracle_statistic", h.statistic);
      s.metrics.emplace_back("vs_oracle_dof", h.dof);
      s.metrics.emplace_back("vs_oracle_p_value", h.p_value);
    }
  }

  const Series& dist = report.find("distributed");
  const Series& z = report.find("zirr");
  const double dist_p = dist.metric("vs_oracle_p_value");
  const double zirr_p = z.metric("vs_oracle_p_value");
  const double deficit = 1.0 - z.variance / target_variance;
  report.checks.push_back({"distributed_not_rejected", dist_p > 0.01, "p=" + fmt(dist_p)});
  report.checks.push_back({"zirr_rejected", zirr_p < 0.01, "p=" + fmt(zirr_p)});
  report.checks.push_back({"zirr_variance_deficit", deficit >= 0.25, "deficit=" + fmt(deficit)});
  return report;
}

StatsReport run_fig8(std::uint64_t seed, int samples) {
  StatsReport report;
  report.experiment = "fig8";
  report.config_hash = render::fnv1a64("fig8;samples=" + std::to_string(samples) +
                                       ";seed=" + std::to_string(seed));
  constexpr std::array<int, 4> kTrials{1, 4, 16, 64};
  constexpr std::array<double, 4> kProbabilities{0.05, 0.3, 0.5, 0.95};

  double worst_tv = 0.0;
  double worst_zero = 0.0;
  for (const int n : kTrials) {
    for (std::size_t pi = 0; pi < kProbabilities.size(); ++pi) {
      const double p = kProbabilities[pi];
      const std::uint64_t s_gated =
          seed_of({static_cast<std::int64_t>(seed), n, static_cast<std::int64_t>(pi), 0}, kStreamFig8);
      const std::uint64_t s_ref =
          seed_of({static_cast<std::int64_t>(seed), n, static_cast<std::int64_t>(pi), 1}, kStreamFig8);
      std::vector<double> gated(samples);
      std::vector<double> floor_variant(samples);
      std::vector<double> reference(samples);
      for (int m = 0; m < samples; ++m) {
        const double t0 = rng::uniform(s_gated, 2 * static_cast<std::uint64_t>(m));
        const double t1 = rng::uniform(s_gated, 2 * static_cast<std::uint64_t>(m) + 1);
        gated[m] = static_cast<double>(counting::sample_binomial_gated(n, p, t0, t1));
        floor_variant[m] = static_cast<double>(counting::sample_binomial_gated_floor(n, p, t0, t1));
        reference[m] = static_cast<double>(counting::sample_binomial_reference(
            static_cast<std::uint64_t>(n), p, s_ref, static_cast<std::uint64_t>(m) * n));
      }
      const std::vector<double> pmf = stats::binomial_pmf(n, p);
      const std::string tag = "n" + std::to_string(n) + "_p" + fmt(p);
      for (auto [name, values] : {std::pair{"gated", &gated}, std::pair{"gated_floor", &floor_variant},
                                  std::pair{"reference", &reference}}) {
        Series s = make_series(std::string(name) + "_" + tag, *values, true);
        const auto zero = s.histogram.find(0);
        const double p0 =
            zero == s.histogram.end() ? 0.0 : static_cast<double>(zero->second) / samples;
        const double tv = stats::tv_distance(s.histogram, pmf);
        s.metrics.emplace_back("tv", tv);
        s.metrics.emplace_back("p_zero", p0);
        s.metrics.emplace_back("p_zero_exact", pmf[0]);
        if (std::string(name) == "gated") {
          worst_tv = std::max(worst_tv, tv);
          worst_zero = std::max(worst_zero, std::abs(p0 - pmf[0]));
        }
        report.series.push_back(std::move(s));
      }
    }
  }
  report.checks.push_back({"gated_tv", worst_tv <= 0.05, "max_tv=" + fmt(worst_tv)});
  report.checks.push_back(
      {"gated_zero_class", worst_zero <= 0.005, "max_abs_error=" + fmt(worst_zero)});
  return report;
}

StatsReport run_variance_zirr(std::uint64_t seed, int trials) {
  StatsReport report;
  report.experiment = "variance_zirr";
  report.config_hash = render::fnv1a64("variance_zirr;trials=" + std::to_string(trials) +
                                       ";seed=" + std::to_string(seed));
  constexpr double kDensity = 64.0;
  constexpr double kP = 0.5;
  constexpr double kLo = 0.5;
  constexpr double kHi = 1.0;
  constexpr int kSteps = 9;

  bool closed_form_ok = true;
  bool distributed_ok = true;
  double mid_deficit = 0.0;
  for (int i = 0; i < kSteps; ++i) {
    const double area = kLo + (kHi - kLo) * i / (kSteps - 1);
    std::vector<double> zirr(trials);
    std::vector<double> distributed(trials);
    for (int m = 0; m < trials; ++m) {
      const auto key = static_cast<std::int64_t>(seed);
      const counting::LodPair lods{kLo, kHi, seed_of({key, i, m, 0}, kStreamVariance),
                                   seed_of({key, i, m, 1}, kStreamVariance)};
      zirr[m] = counting::blend_binomial_zirr(area, lods, kDensity, kP, counting::Sampler::reference);
      distributed[m] = static_cast<double>(
          counting::distribute_binomial(area, lods, kDensity, kP, counting::Sampler::reference));
    }
    const counting::LodWeights w = counting::lod_weights(area, {kLo, kHi});
    const double q = kP * (1.0 - kP);
    const double target = kDensity * area * q;
    const double predicted =
        (w.w_hi * w.w_hi * kDensity * kHi + w.w_lo * w.w_lo * kDensity * kLo) * q;

    const std::string tag = "area" + fmt(area);
    Series z = make_series("zirr_" + tag, zirr, false);
    z.metrics.emplace_back("area", area);
    z.metrics.emplace_back("target_variance", target);
    z.metrics.emplace_back("predicted_variance", predicted);
    z.metrics.emplace_back("deficit", 1.0 - z.variance / target);
    Series d = make_series("distributed_" + tag, distributed, false);
    d.metrics.emplace_back("area", area);
    d.metrics.emplace_back("target_variance", target);
    d.metrics.emplace_back("deficit", 1.0 - d.variance / target);

    closed_form_ok = closed_form_ok && std::abs(z.variance / predicted - 1.0) < 0.1;
    distributed_ok = distributed_ok && std::abs(d.variance / target - 1.0) < 0.1;
    if (i == kSteps / 2) mid_deficit = 1.0 - z.variance / target;
    report.series.push_back(std::move(z));
    report.series.push_back(std::move(d));
  }
  report.checks.push_back({"zirr_matches_closed_form", closed_form_ok, "within 10%"});
  report.checks.push_back({"distributed_matches_target", distributed_ok, "within 10%"});
  report.checks.push_back(
      {"zirr_mid_deficit", mid_deficit >= 0.25, "deficit=" + fmt(mid_deficit)});
  return report;
}

StatsReport run_convergence(std::uint64_t seed, int evaluations) {
  StatsReport report;
  report.experiment = "convergence";
  report.config_hash = render::fnv1a64("convergence;evaluations=" + std::to_string(evaluations) +
                                       ";seed=" + std::to_string(seed));
  constexpr std::array<double, 5> kAngles{0.0, 15.0, 30.0, 45.0, 60.0};
  constexpr std::array<double, 5> kDensities{1e2, 1e3, 1e4, 1e5, 1e6};
  constexpr std::array<ndf::NdfKind, 2> kKinds{ndf::NdfKind::beckmann, ndf::NdfKind::ggx};

  bool mean_ok = true;
  bool monotone_ok = true;
  double worst_mean = 0.0;
  for (const ndf::NdfKind kind : kKinds) {
    const std::string kind_name = kind == ndf::NdfKind::beckmann ? "beckmann" : "ggx";
    for (std::size_t ai = 0; ai < kAngles.size(); ++ai) {
      const double theta = kAngles[ai] * std::numbers::pi / 180.0;
      const double target = ndf::ndf_d(kind, 1.0, std::cos(theta));
      Series curve;
      curve.name = kind_name + "_theta" + fmt(kAngles[ai]);
      curve.metrics.emplace_back("theta_deg", kAngles[ai]);
      curve.metrics.emplace_back("target", target);
      double previous_rms = std::numeric_limits<double>::infinity();
      for (std::size_t di = 0; di < kDensities.size(); ++di) {
        GlintMaterial material;
        material.micro = {kind, 1.0, {0.04, 0.04, 0.04}};
        material.ratio = 0.5;
        material.density = kDensities[di];
        material.seed = seed;
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int e = 0; e < evaluations; ++e) {
          const std::uint64_t s = seed_of({static_cast<std::int64_t>(seed),
                                           static_cast<std::int64_t>(kind), static_cast<std::int64_t>(ai),
                                           static_cast<std::int64_t>(di), e},
                                          kStreamConvergence);
          // Unit-area footprint at a random place, anisotropy and orientation.
          const Vec2 center{1024.0 * rng::uniform(s, 0), 1024.0 * rng::uniform(s, 1)};
          const double ratio = std::exp2(3.0 * rng::uniform(s, 2));
          const double phi = std::numbers::pi * rng::uniform(s, 3);
          const double psi = 2.0 * std::numbers::pi * rng::uniform(s, 4);
          const grid::Footprint fp =
              grid::make_footprint(center, 1.0 / std::sqrt(ratio), ratio, phi);
          const Vec3 h{std::sin(theta) * std::cos(psi), std::sin(theta) * std::sin(psi),
                       std::cos(theta)};
          const auto frame = ndf::ShadingFrame::make({0.0, 0.0, 1.0}, h, h);
          const double v = eval_glint_ndf(fp, frame, material).value;
          sum += v;
          sum_sq += (v - target) * (v - target);
        }
        const double mean_rel = sum / evaluations / target - 1.0;
        const double rms_rel = std::sqrt(sum_sq / evaluations) / target;
        const std::string tag = "density" + fmt(kDensities[di]);
        curve.metrics.emplace_back(tag + "_mean_rel_error", mean_rel);
        curve.metrics.emplace_back(tag + "_rms_rel_error", rms_rel);
        if (kDensities[di] <= 1e5) {
          monotone_ok = monotone_ok && rms_rel < previous_rms;
          previous_rms = rms_rel;
        } else {
          worst_mean = std::max(worst_mean, std::abs(mean_rel));
          mean_ok = mean_ok && std::abs(mean_rel) <= 0.02;
        }
      }
      report.series.push_back(std::move(curve));
    }
  }
  report.checks.push_back({"mean_within_2pct_at_1e6", mean_ok, "max_abs_rel=" + fmt(worst_mean)});
  report.checks.push_back({"error_strictly_decreasing", monotone_ok, "densities 1e2..1e5"});
  return report;
}

StatsReport run_experiment(const std::string& id, std::uint64_t seed) {
  if (id == "fig4") {
    Fig4Options o;
    o.seed = seed;
    return run_fig4(o);
  }
  if (id == "fig8") return run_fig8(seed);
  if (id == "variance_zirr") return run_variance_zirr(seed);
  if (id == "convergence") return run_convergence(seed);
  throw std::invalid_argument("unknown experiment '" + id +
                              "' (expected fig4, fig8, variance_zirr or convergence)");
}

void write_stats_csv(std::ostream& out, const StatsReport& r) {
  out << "experiment,series,kind,key,value\n";
  out << r.experiment << ",,meta,config_hash," << render::hex64(r.config_hash) << '\n';
  out << std::setprecision(12);
  for (const Series& s : r.series) {
    for (const auto& [k, c] : s.histogram) out << r.experiment << ',' << s.name << ",bin," << k << ',' << c << '\n';
    if (s.samples > 0) {
      out << r.experiment << ',' << s.name << ",moment,samples," << s.samples << '\n';
      out << r.experiment << ',' << s.name << ",moment,mean," << s.mean << '\n';
      out << r.experiment << ',' << s.name << ",moment,variance," << s.variance << '\n';
    }
    for (const auto& [k, v] : s.metrics) out << r.experiment << ',' << s.name << ",metric," << k << ',' << v << '\n';
  }
  for (const Check& c : r.checks) out << r.experiment << ",,check," << c.name << ',' << (c.pass ? 1 : 0) << '\n';
}

std::vector<BenchRow> run_bench(const render::SceneConfig& base, int threads) {
  std::vector<BenchRow> rows;
  for (const GlintMode mode : {GlintMode::ours, GlintMode::zirr_baseline}) {
    for (const double tilt : {90.0, 25.0}) {
      render::SceneConfig c = base;
      c.scene = render::SceneType::plane;
      c.tilt_deg = tilt;
      c.smooth = false;
      c.material.mode = mode;
      const auto start = std::chrono::steady_clock::now();
      const render::RenderOutput out = render::render(c, threads);
      const auto stop = std::chrono::steady_clock::now();

      BenchRow row;
      row.mode = mode == GlintMode::ours ? "ours" : "zirr_baseline";
      row.tilt_deg = tilt;
      row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      row.config_hash = render::config_hash(c);
      row.calls_min = std::numeric_limits<int>::max();
      double sum = 0.0;
      double sum_sq = 0.0;
      for (const render::PixelTrace& t : out.traces) {
        if (!t.hit) continue;
        const int calls = t.eval.binomial_calls;
        ++row.pixels;
        row.calls_min = std::min(row.calls_min, calls);
        row.calls_max = std::max(row.calls_max, calls);
        sum += calls;
        sum_sq += static_cast<double>(calls) * calls;
      }
      if (row.pixels == 0) row.calls_min = 0;
      if (row.pixels > 0) {
        row.calls_mean = sum / row.pixels;
        row.calls_variance = std::max(0.0, sum_sq / row.pixels - row.calls_mean * row.calls_mean);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "mode,tilt_deg,pixels,calls_min,calls_max,calls_mean,calls_variance,wall_ms,config_hash\n";
  out << std::setprecision(10);
  for (const BenchRow& r : rows)
    out << r.mode << ',' << r.tilt_deg << ',' << r.pixels << ',' << r.calls_min << ','
        << r.calls_max << ',' << r.calls_mean << ',' << r.calls_variance << ',' << r.wall_ms << ','
        << render::hex64(r.config_hash) << '\n';
}

bool is_ghost(double a, double b, double v, double tolerance) {
  return std::abs(a - b) > tolerance && std::abs(v - 0.5 * (a + b)) <= tolerance &&
         std::abs(v - a) > tolerance && std::abs(v - b) > tolerance;
}

namespace {

struct ProbeImage {
  render::Image image;
  std::vector<double> counts;
};

ProbeImage render_probe(const render::SceneConfig& c, const LodProbe& probe, int threads) {
  ProbeImage out{render::Image(c.width, c.height),
                 std::vector<double>(static_cast<std::size_t>(c.width) * c.height, 0.0)};
  const render::CameraRig cam = render::CameraRig::from_config(c);
  GlintMaterial material = c.material;
  material.density = c.compare_density;
  render::parallel_rows(c.height, threads, [&](int y) {
    for (int x = 0; x < c.width; ++x) {
      const auto hit = render::trace_primary(c, cam, x, y);
      if (!hit || hit->wi_local.z <= 0.0 || hit->wo_local.z <= 0.0) continue;
      const auto frame = ndf::ShadingFrame::make({0.0, 0.0, 1.0}, hit->wi_local, hit->wo_local);
      const LodProbeResult r = eval_lod_probe(hit->uv, frame, material, probe);
      out.counts[static_cast<std::size_t>(y) * c.width + x] = r.count;
      out.image.at(x, y) = ndf::microfacet_brdf(frame, material.micro, r.value) *
                           c.light_intensity * (hit->wo_local.z / hit->light_distance2);
    }
  });
  return out;
}

render::Image hconcat(std::initializer_list<const render::Image*> parts) {
  int width = 0;
  int height = 0;
  for (const render::Image* p : parts) {
    width += p->width;
    height = std::max(height, p->height);
  }
  render::Image out(width, height);
  int x0 = 0;
  for (const render::Image* p : parts) {
    for (int y = 0; y < p->height; ++y)
      for (int x = 0; x < p->width; ++x) out.at(x0 + x, y) = p->at(x, y);
    x0 += p->width;
  }
  return out;
}

}  // namespace

CompareReport run_compare(const render::SceneConfig& config, const std::filesystem::path& dir,
                          int threads) {
  std::filesystem::create_directories(dir);
  CompareReport report;
  report.config_hash = render::config_hash(config);
  report.pixels = static_cast<std::int64_t>(config.width) * config.height;
  const double exposure = config.exposure;

  render::SceneConfig c_ours = config;
  c_ours.smooth = false;
  c_ours.material.mode = GlintMode::ours;
  render::SceneConfig c_zirr = c_ours;
  c_zirr.material.mode = GlintMode::zirr_baseline;
  const render::Image ours = render::render(c_ours, threads).image;
  const render::Image zirr = render::render(c_zirr, threads).image;
  render::Image diff(config.width, config.height);
  for (std::size_t i = 0; i < diff.pixels.size(); ++i) {
    const Rgb& a = ours.pixels[i];
    const Rgb& b = zirr.pixels[i];
    diff.pixels[i] = {std::abs(a.r - b.r), std::abs(a.g - b.g), std::abs(a.b - b.b)};
    report.mode_max_difference =
        std::max({report.mode_max_difference, diff.pixels[i].r, diff.pixels[i].g, diff.pixels[i].b});
  }
  render::write_ppm(dir / "ours.ppm", ours, exposure);
  render::write_ppm(dir / "zirr_baseline.ppm", zirr, exposure);
  render::write_ppm(dir / "side_by_side.ppm", hconcat({&ours, &zirr}), exposure);
  render::write_ppm(dir / "difference.ppm", diff, exposure);

  const double lo = config.compare_lod_area;
  const double hi = 2.0 * lo;
  const double mid = 0.5 * (lo + hi);
  const auto probe = [&](double area, LodBlend blend) {
    return render_probe(config, {lo, hi, area, blend}, threads);
  };
  const ProbeImage lod_k = probe(lo, LodBlend::distributed);
  const ProbeImage lod_k1 = probe(hi, LodBlend::distributed);
  const ProbeImage lod_k_mix = probe(lo, LodBlend::output_mix);
  const ProbeImage lod_k1_mix = probe(hi, LodBlend::output_mix);
  const ProbeImage mid_mix = probe(mid, LodBlend::output_mix);
  const ProbeImage mid_dist = probe(mid, LodBlend::distributed);

  for (std::size_t i = 0; i < lod_k.counts.size(); ++i) {
    const double a = lod_k.counts[i];
    const double b = lod_k1.counts[i];
    report.ghosts_output_mix += is_ghost(a, b, mid_mix.counts[i]);
    report.ghosts_distributed += is_ghost(a, b, mid_dist.counts[i]);
    report.endpoint_lo_mismatches += !(lod_k_mix.image.pixels[i] == lod_k.image.pixels[i]);
    report.endpoint_hi_mismatches += !(lod_k1_mix.image.pixels[i] == lod_k1.image.pixels[i]);
  }

  render::write_ppm(dir / "lod_k.ppm", lod_k.image, exposure);
  render::write_ppm(dir / "lod_k1.ppm", lod_k1.image, exposure);
  render::write_ppm(dir / "mid_output_mix.ppm", mid_mix.image, exposure);
  render::write_ppm(dir / "mid_distributed.ppm", mid_dist.image, exposure);
  render::write_ppm(dir / "triptych_output_mix.ppm",
                    hconcat({&lod_k.image, &mid_mix.image, &lod_k1.image}), exposure);
  render::write_ppm(dir / "triptych_distributed.ppm",
                    hconcat({&lod_k.image, &mid_dist.image, &lod_k1.image}), exposure);

  std::ofstream csv(dir / "compare.csv");
  csv << "metric,value\n"
      << "config_hash," << render::hex64(report.config_hash) << '\n'
      << "lod_area_k," << fmt(lo) << '\n'
      << "lod_area_k1," << fmt(hi) << '\n'
      << "probe_density," << fmt(config.compare_density) << '\n'
      << "pixels," << report.pixels << '\n'
      << "ghosts_output_mix," << report.ghosts_output_mix << '\n'
      << "ghosts_distributed," << report.ghosts_distributed << '\n'
      << "endpoint_lo_mismatches," << report.endpoint_lo_mismatches << '\n'
      << "endpoint_hi_mismatches," << report.endpoint_hi_mismatches << '\n'
      << "mode_max_difference," << fmt(report.mode_max_difference) << '\n';
  if (!csv) throw std::runtime_error((dir / "compare.csv").string() + ": write failed");
  return report;
}

}  // namespace glint::experiments
