#include "wardsim/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wardsim/stats.hpp"

namespace wardsim {

DischargeHourDistribution::DischargeHourDistribution() {
  mass_.fill(1.0 / 24.0);
  for (int h = 0; h < 24; ++h) cum_[h + 1] = cum_[h] + mass_[h];
}

DischargeHourDistribution::DischargeHourDistribution(const std::array<double, 24>& mass)
    : mass_(mass) {
  double total = 0.0;
  for (double m : mass_) {
    if (m < 0.0) throw std::invalid_argument("discharge-hour mass must be nonnegative");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("discharge-hour mass must sum to 1");
  for (int h = 0; h < 24; ++h) cum_[h + 1] = cum_[h] + mass_[h];
  cum_[24] = 1.0;
}

double DischargeHourDistribution::cdf_within_day(double hours) const {
  if (hours <= 0.0) return 0.0;
  if (hours >= 24.0) return 1.0;
  const int bin = static_cast<int>(hours);
  const double frac = hours - bin;
  return cum_[bin] + frac * mass_[bin];
}

double DischargeHourDistribution::quantile(double u) const {
  if (u < 0.0 || u > 1.0) throw std::invalid_argument("quantile needs u in [0, 1]");
  for (int h = 0; h < 24; ++h) {
    if (u <= cum_[h + 1] || h == 23) {
      if (mass_[h] <= 0.0) continue;
      const double frac = std::clamp((u - cum_[h]) / mass_[h], 0.0, 1.0);
      return std::min(h + frac, 24.0 - 1e-9);
    }
  }
  // All remaining mass sits in earlier zero bins only if the pmf is degenerate.
  for (int h = 23; h >= 0; --h)
    if (mass_[h] > 0.0) return std::min(h + 1.0, 24.0) - 1e-9;
  return 0.0;
}

double DischargeHourDistribution::conditional_quantile_above(double floor_hours, double u) const {
  const double f = cdf_within_day(floor_hours);
  if (f >= 1.0 - 1e-15) return std::clamp(floor_hours, 0.0, 24.0 - 1e-9);
  return std::max(quantile(f + u * (1.0 - f)), std::clamp(floor_hours, 0.0, 24.0 - 1e-9));
}

double DischargeHourDistribution::mean_hours() const {
  double m = 0.0;
  for (int h = 0; h < 24; ++h) m += mass_[h] * (h + 0.5);
  return m;
}

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments pmf_moments(const std::vector<double>& pmf) {
  Moments mo;
  for (std::size_t k = 0; k < pmf.size(); ++k) mo.mean += pmf[k] * static_cast<double>(k);
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double d = static_cast<double>(k) - mo.mean;
    mo.var += pmf[k] * d * d;
  }
  return mo;
}

// Gamma(shape, scale) rounded to the nearest integer, truncated at `cap`.
std::vector<double> discretized_gamma(double shape, double scale, int cap) {
  std::vector<double> pmf(cap + 1, 0.0);
  double prev = 0.0;
  for (int n = 0; n <= cap; ++n) {
    const double upper = (n + 0.5) / scale;
    const double cdf = n == cap ? 1.0 : lower_regularized_gamma(shape, upper);
    pmf[n] = std::max(0.0, cdf - prev);
    prev = cdf;
  }
  return pmf;
}

}  // namespace

LosDistribution LosDistribution::empirical(std::vector<double> pmf) {
  if (pmf.empty()) throw std::invalid_argument("empty length-of-stay pmf");
  double total = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw std::invalid_argument("length-of-stay pmf must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("length-of-stay pmf must sum to 1");
  LosDistribution d;
  d.pmf_ = std::move(pmf);
  const Moments mo = pmf_moments(d.pmf_);
  d.mean_ = mo.mean;
  d.sd_ = std::sqrt(mo.var);
  return d;
}

LosDistribution LosDistribution::from_moments(double mean, double sd) {
  if (mean < 0.0 || sd < 0.0) throw std::invalid_argument("moments must be nonnegative");
  const double k = std::floor(mean);
  const double f = mean - k;
  // f(1-f) is the smallest variance any integer-valued pmf with this mean can
  // have; below (or near) it the two-point floor/ceil law is the answer.
  if (sd * sd <= f * (1.0 - f) + 0.02) {
    std::vector<double> pmf(static_cast<std::size_t>(k) + 2, 0.0);
    pmf[static_cast<std::size_t>(k)] = 1.0 - f;
    pmf[static_cast<std::size_t>(k) + 1] = f;
    return empirical(std::move(pmf));
  }

  const int cap = static_cast<int>(std::ceil(mean + 15.0 * sd + 20.0));
  const double target_var = sd * sd;

  // theta(shape): inner bisection matching the discretized mean.
  auto theta_for_mean = [&](double shape) {
    double lo = 1e-8, hi = 1e7;
    for (int it = 0; it < 80; ++it) {
      const double mid = std::sqrt(lo * hi);
      const double m = pmf_moments(discretized_gamma(shape, mid, cap)).mean;
      (m < mean ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
  };

  // Outer bisection on the shape to match the variance (CV falls as the
  // shape grows).
  double klo = 1e-4, khi = 1e6;
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(klo * khi);
    const double v = pmf_moments(discretized_gamma(mid, theta_for_mean(mid), cap)).var;
    (v > target_var ? klo : khi) = mid;
  }
  const double shape = std::sqrt(klo * khi);
  std::vector<double> pmf = discretized_gamma(shape, theta_for_mean(shape), cap);
  while (pmf.size() > 1 && pmf.back() < 1e-15) pmf.pop_back();
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (double& p : pmf) p /= total;
  return empirical(std::move(pmf));
}

int LosDistribution::quantile(double u) const {
  double cum = 0.0;
  for (std::size_t k = 0; k + 1 < pmf_.size(); ++k) {
    cum += pmf_[k];
    if (u < cum) return static_cast<int>(k);
  }
  return static_cast<int>(pmf_.size()) - 1;
}

void LengthOfStayLaw::set(Specialty s, Source src, std::optional<bool> pm_admission,
                          LosDistribution d) {
  const int pm = src == Source::ED ? (pm_admission.value_or(false) ? 1 : 0) : 0;
  cells_.insert_or_assign({static_cast<int>(s), static_cast<int>(src), pm}, std::move(d));
}

const LosDistribution& LengthOfStayLaw::lookup(Specialty s, Source src, bool pm_admission) const {
  const int pm = src == Source::ED ? (pm_admission ? 1 : 0) : 0;
  auto it = cells_.find({static_cast<int>(s), static_cast<int>(src), pm});
  if (it == cells_.end())
    throw std::out_of_range(std::string("no length-of-stay cell for ") + to_string(s) + "/" +
                            to_string(src));
  return it->second;
}

bool LengthOfStayLaw::has(Specialty s, Source src) const {
  const int pm = 0;
  return cells_.count({static_cast<int>(s), static_cast<int>(src), pm}) > 0;
}

double occupancy_time(int los_days, double admission_frac, double discharge_frac) {
  if (los_days < 0) throw std::invalid_argument("length of stay must be nonnegative");
  if (admission_frac < 0.0 || admission_frac >= 1.0)
    throw std::invalid_argument("admission fraction outside [0, 1)");
  if (discharge_frac < 0.0 || discharge_frac >= 1.0)
    throw std::invalid_argument("discharge fraction outside [0, 1)");
  return static_cast<double>(los_days) - admission_frac + discharge_frac;
}

double availability_cdf(const CandidateBed& bed, TimeMin t_query,
                        const DischargeHourDistribution& discharge) {
  if (const auto* now = std::get_if<AvailableNow>(&bed.availability))
    return t_query >= now->at ? 1.0 : 0.0;
  const auto& later = std::get<AvailableLater>(bed.availability);
  const TimeMin start = day_start(later.day);
  if (t_query <= start) return 0.0;
  if (t_query >= start + kMinutesPerDay) return 1.0;
  return discharge.cdf_within_day(minutes_to_hours(t_query - start));
}

LogProb log_meet_probability(const BoardedPatient& patient, const CandidateBed& bed,
                             const DischargeHourDistribution& discharge) {
  const double p = availability_cdf(bed, patient.request_time + patient.delay_target, discharge);
  return LogProb::from_probability(p);
}

namespace {

// Collapse the 24 hour bins into groups large enough for the chi-square
// approximation (Cochran's rule of thumb on the pooled marginal).
std::vector<int> bin_groups(const std::array<int, 24>& counts, int n) {
  const int min_per_group = std::max(5, n / 8);
  std::vector<int> group_of(24, 0);
  int g = 0, acc = 0;
  for (int h = 0; h < 24; ++h) {
    group_of[h] = g;
    acc += counts[h];
    if (acc >= min_per_group && h < 23) {
      ++g;
      acc = 0;
    }
  }
  // A trailing underfull group is merged back into its predecessor.
  if (acc < min_per_group && g > 0)
    for (int h = 23; h >= 0 && group_of[h] == g; --h) group_of[h] = g - 1;
  return group_of;
}

}  // namespace

IndependenceReport independence_check(const std::vector<std::vector<double>>& samples_by_bed) {
  const int beds = static_cast<int>(samples_by_bed.size());
  if (beds < 2) throw std::invalid_argument("need >= 2 beds");
  const std::size_t n = samples_by_bed.front().size();
  for (const auto& col : samples_by_bed) {
    if (col.size() != n) throw std::invalid_argument("columns must be paired (equal lengths)");
    if (col.size() < 30) throw std::invalid_argument("need >= 30 samples per bed");
  }

  auto hour_bin = [](double t) {
    double h = std::fmod(t, 24.0);
    if (h < 0.0) h += 24.0;
    return std::min(23, static_cast<int>(h));
  };

  IndependenceReport report;
  report.min_p_value = 1.0;
  for (int a = 0; a < beds; ++a) {
    for (int b = a + 1; b < beds; ++b) {
      std::array<int, 24> ca{}, cb{};
      for (std::size_t k = 0; k < n; ++k) {
        ca[hour_bin(samples_by_bed[a][k])]++;
        cb[hour_bin(samples_by_bed[b][k])]++;
      }
      const std::vector<int> ga = bin_groups(ca, static_cast<int>(n));
      const std::vector<int> gb = bin_groups(cb, static_cast<int>(n));
      const int ra = 1 + *std::max_element(ga.begin(), ga.end());
      const int rb = 1 + *std::max_element(gb.begin(), gb.end());
      if (ra < 2 || rb < 2) continue;  // all mass in one group; nothing to test

      std::vector<double> table(static_cast<std::size_t>(ra) * rb, 0.0);
      std::vector<double> ma(ra, 0.0), mb(rb, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const int i = ga[hour_bin(samples_by_bed[a][k])];
        const int j = gb[hour_bin(samples_by_bed[b][k])];
        table[static_cast<std::size_t>(i) * rb + j] += 1.0;
        ma[i] += 1.0;
        mb[j] += 1.0;
      }
      double stat = 0.0;
      for (int i = 0; i < ra; ++i) {
        for (int j = 0; j < rb; ++j) {
          const double expected = ma[i] * mb[j] / static_cast<double>(n);
          if (expected <= 0.0) continue;
          const double diff = table[static_cast<std::size_t>(i) * rb + j] - expected;
          stat += diff * diff / expected;
        }
      }
      const double df = static_cast<double>((ra - 1) * (rb - 1));
      const double p = chi_square_sf(stat, df);
      if (p < report.min_p_value) {
        report.min_p_value = p;
        report.statistic = stat;
        report.bed_a = a;
        report.bed_b = b;
      }
    }
  }
  return report;
}

}  // namespace wardsim
