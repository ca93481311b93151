#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

// Goodness-of-fit helpers for the statistical experiments and tests.

namespace glint::stats {

using Histogram = std::map<std::int64_t, std::int64_t>;

std::int64_t total(const Histogram& h);

/// Histogram of values rounded to the nearest integer.
Histogram histogram_rounded(std::span<const double> values);

/// pmf[k] = P(b(n, p) = k), k = 0..n, from log-gamma.
std::vector<double> binomial_pmf(int n, double p);

/// 1/2 sum_k |h[k]/M - pmf[k]| including mass outside the pmf support.
double tv_distance(const Histogram& h, std::span<const double> pmf);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Upper tail of the chi-square law.
double chi_square_sf(double x, int dof);

/// Goodness of fit of h against pmf. Adjacent bins are pooled until every
/// expected count reaches min_expected; observations outside the support
/// are folded into the end bins.
ChiSquare chi_square_gof(const Histogram& h, std::span<const double> pmf,
                         double min_expected = 5.0);

/// Two-sample homogeneity test on a 2 x k table. Adjacent values are pooled
/// until every expected cell count reaches min_expected.
ChiSquare chi_square_homogeneity(const Histogram& a, const Histogram& b,
                                 double min_expected = 5.0);

struct KolmogorovSmirnov {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda).
double kolmogorov_sf(double lambda);

/// One-sample KS test against U(0, 1), with the Stephens small-sample
/// correction of the argument.
KolmogorovSmirnov ks_uniform(std::vector<double> values);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
};

Moments moments(std::span<const double> values);

}  // namespace glint::stats
