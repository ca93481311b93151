#include "glint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace glint::stats {

std::int64_t total(const Histogram& h) {
  std::int64_t m = 0;
  for (const auto& [k, c] : h) m += c;
  return m;
}

Histogram histogram_rounded(std::span<const double> values) {
  Histogram h;
  for (const double v : values) ++h[static_cast<std::int64_t>(std::llround(v))];
  return h;
}

std::vector<double> binomial_pmf(int n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_pmf: bad arguments");
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (p == 0.0 || p == 1.0) {
    pmf[p == 0.0 ? 0 : n] = 1.0;
    return pmf;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (int k = 0; k <= n; ++k)
    pmf[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * lp + (n - k) * lq);
  return pmf;
}

double tv_distance(const Histogram& h, std::span<const double> pmf) {
  const double m = static_cast<double>(total(h));
  if (m <= 0.0) throw std::invalid_argument("tv_distance: empty histogram");
  double sum = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const auto it = h.find(static_cast<std::int64_t>(k));
    const double obs = it == h.end() ? 0.0 : static_cast<double>(it->second) / m;
    sum += std::abs(obs - pmf[k]);
  }
  for (const auto& [k, c] : h)
    if (k < 0 || k >= static_cast<std::int64_t>(pmf.size())) sum += static_cast<double>(c) / m;
  return 0.5 * sum;
}

double chi_square_sf(double x, int dof) {
  if (dof < 1) return 1.0;
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

ChiSquare chi_square_gof(const Histogram& h, std::span<const double> pmf, double min_expected) {
  const double m = static_cast<double>(total(h));
  if (m <= 0.0 || pmf.empty()) throw std::invalid_argument("chi_square_gof: empty input");
  const auto last = static_cast<std::int64_t>(pmf.size()) - 1;
  std::vector<double> observed(pmf.size(), 0.0);
  for (const auto& [k, c] : h) observed[std::clamp<std::int64_t>(k, 0, last)] += static_cast<double>(c);

  std::vector<double> obs_bins;
  std::vector<double> exp_bins;
  double o = 0.0;
  double e = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    o += observed[k];
    e += pmf[k] * m;
    if (e >= min_expected) {
      obs_bins.push_back(o);
      exp_bins.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp_bins.empty()) {
      obs_bins.push_back(o);
      exp_bins.push_back(e);
    } else {
      obs_bins.back() += o;
      exp_bins.back() += e;
    }
  }
  ChiSquare out;
  for (std::size_t i = 0; i < obs_bins.size(); ++i) {
    const double d = obs_bins[i] - exp_bins[i];
    out.statistic += d * d / exp_bins[i];
  }
  out.dof = static_cast<int>(obs_bins.size()) - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

ChiSquare chi_square_homogeneity(const Histogram& a, const Histogram& b, double min_expected) {
  const double na = static_cast<double>(total(a));
  const double nb = static_cast<double>(total(b));
  if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("chi_square_homogeneity: empty input");
  Histogram keys = a;
  for (const auto& [k, c] : b) keys[k] += c;
  const double n = na + nb;
  // Pool until the smaller sample's expected count in the bin is large enough.
  const double frac = std::min(na, nb) / n;

  std::vector<std::pair<double, double>> bins;
  double ca = 0.0;
  double cb = 0.0;
  for (const auto& [k, c] : keys) {
    if (const auto it = a.find(k); it != a.end()) ca += static_cast<double>(it->second);
    if (const auto it = b.find(k); it != b.end()) cb += static_cast<double>(it->second);
    if ((ca + cb) * frac >= min_expected) {
      bins.emplace_back(ca, cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (bins.empty()) bins.emplace_back(ca, cb);
    else {
      bins.back().first += ca;
      bins.back().second += cb;
    }
  }
  ChiSquare out;
  for (const auto& [oa, ob] : bins) {
    const double col = oa + ob;
    const double ea = col * na / n;
    const double eb = col * nb / n;
    out.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  out.dof = static_cast<int>(bins.size()) - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KolmogorovSmirnov ks_uniform(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ks_uniform: empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = std::clamp(values[i], 0.0, 1.0);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double rn = std::sqrt(n);
  return {d, kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d)};
}

Moments moments(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("moments: need at least two values");
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return {mean, ss / static_cast<double>(values.size() - 1)};
}

}  // namespace glint::stats
