#pragma once

// Small-sample comparison utilities for campaign analysis.

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <span>
#include <stdexcept>

namespace idionet::stats {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance: need >= 2 values");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
  double p = 0.5;  // one-tailed, H1: mean(a) < mean(b)
  bool significant_95 = false;
  bool significant_99 = false;
  bool significant_999 = false;
};

// Welch's unequal-variance t-test, one-tailed for mean(a) < mean(b).
// Swapping the samples maps p to 1 - p. Two degenerate zero-variance samples
// compare by mean alone: equal means give the no-evidence p of 0.5.
inline WelchResult welch_less(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_less: need >= 2 values per sample");
  const double ma = mean(a), mb = mean(b);
  const double va = sample_variance(a), vb = sample_variance(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;

  WelchResult r;
  if (se2 <= 0.0) {
    r.t = 0.0;
    r.dof = na + nb - 2.0;
    r.p = ma == mb ? 0.5 : (ma < mb ? 0.0 : 1.0);
  } else {
    r.t = (ma - mb) / std::sqrt(se2);
    const double num = se2 * se2;
    const double den = (va / na) * (va / na) / (na - 1.0) +
                       (vb / nb) * (vb / nb) / (nb - 1.0);
    r.dof = num / den;
    boost::math::students_t dist(r.dof);
    r.p = boost::math::cdf(dist, r.t);
  }
  r.significant_95 = r.p <= 0.05;
  r.significant_99 = r.p <= 0.01;
  r.significant_999 = r.p <= 0.001;
  return r;
}

}  // namespace idionet::stats
