#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "wardsim/domain.hpp"
#include "wardsim/time.hpp"

namespace wardsim {

// Hourly distribution of the within-day discharge time D. Mass lives in 24
// one-hour bins; time within a bin is uniform, so the CDF is piecewise linear.
class DischargeHourDistribution {
 public:
  DischargeHourDistribution();  // uniform over the day
  explicit DischargeHourDistribution(const std::array<double, 24>& mass);

  const std::array<double, 24>& mass() const { return mass_; }
  double mass_before(int hour) const { return cum_.at(hour); }  // sum of bins [0, hour)

  // P(D <= h) for h in day-hours [0, 24].
  double cdf_within_day(double hours) const;
  // Inverse CDF; returns day-hours in [0, 24).
  double quantile(double u) const;
  // Quantile of D conditioned on D >= floor_hours (degenerates to floor_hours
  // when no mass remains above it).
  double conditional_quantile_above(double floor_hours, double u) const;
  double mean_hours() const;

 private:
  std::array<double, 24> mass_{};
  std::array<double, 25> cum_{};
};

// Integer-day length-of-stay distribution for one (specialty, source, am/pm)
// cell: either an empirical pmf or a moment-matched discretized-gamma
// surrogate built from a (mean, sd) pair.
class LosDistribution {
 public:
  static LosDistribution empirical(std::vector<double> pmf);
  static LosDistribution from_moments(double mean, double sd);

  int quantile(double u) const;
  double mean() const { return mean_; }
  double sd() const { return sd_; }
  const std::vector<double>& pmf() const { return pmf_; }

 private:
  LosDistribution() = default;
  std::vector<double> pmf_;
  double mean_ = 0.0;
  double sd_ = 0.0;
};

// Length-of-stay law across cells. ED cells are split by am/pm admission;
// all other sources carry a single cell.
class LengthOfStayLaw {
 public:
  void set(Specialty s, Source src, std::optional<bool> pm_admission, LosDistribution d);
  const LosDistribution& lookup(Specialty s, Source src, bool pm_admission) const;
  bool has(Specialty s, Source src) const;

 private:
  std::map<std::tuple<int, int, int>, LosDistribution> cells_;
};

// Two-time-scale occupancy model: integer nights L plus within-day admission
// and discharge times A and D.
struct OccupancyModel {
  LengthOfStayLaw los;
  DischargeHourDistribution discharge;
};

// T = L - A + D, in days. Requires L >= 0, 0 <= A < 1, 0 <= D < 1.
double occupancy_time(int los_days, double admission_frac, double discharge_frac);

// P(d_j <= t_query). AvailableNow beds are a step at their availability time;
// AvailableLater beds spread the discharge-hour mass over their scheduled day.
double availability_cdf(const CandidateBed& bed, TimeMin t_query,
                        const DischargeHourDistribution& discharge);

// ln P(d_j - a_i <= tau_i); impossible when the probability is zero.
LogProb log_meet_probability(const BoardedPatient& patient, const CandidateBed& bed,
                             const DischargeHourDistribution& discharge);

struct IndependenceReport {
  double min_p_value = 1.0;
  double statistic = 0.0;  // chi-square statistic of the worst pair
  int bed_a = 0;
  int bed_b = 0;
};

// Pairwise chi-square independence test over hour-binned discharge times.
// `samples_by_bed` holds one column per bed; rows are paired observations.
// Requires >= 2 beds and >= 30 samples per bed.
IndependenceReport independence_check(const std::vector<std::vector<double>>& samples_by_bed);

}  // namespace wardsim
