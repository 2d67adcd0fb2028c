#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wardsim/time.hpp"

namespace wardsim {

enum class Specialty {
  cardiology,
  gastroenterology,
  geriatrics,
  general_medicine,
  respiratory,
  surgery,
  surgery_el,  // surgical beds reserved for elective / same-day admissions
  mixed,       // common overflow pools serving all specialties (beds only)
};

enum class Gender { male, female };
enum class GenderLabel { male_only, female_only, gender_neutral };
enum class AccommodationClass { A1, B1, B2, C };
enum class Source { ED, SDA, EL, SOC };
enum class Tier { primary, preferred, secondary };

const char* to_string(Specialty s);
const char* to_string(Gender g);
const char* to_string(GenderLabel g);
const char* to_string(AccommodationClass c);
const char* to_string(Source s);
const char* to_string(Tier t);

struct PatientType {
  int id = 0;
  Specialty specialty = Specialty::general_medicine;
  Gender gender = Gender::male;
  AccommodationClass accommodation = AccommodationClass::C;
  std::vector<Source> sources;  // sources that may request this type
};

struct BedPool {
  int id = 0;
  Specialty specialty = Specialty::general_medicine;
  GenderLabel gender_label = GenderLabel::gender_neutral;
  AccommodationClass accommodation = AccommodationClass::C;
  int capacity = 0;

  bool admits(Gender g) const {
    return gender_label == GenderLabel::gender_neutral ||
           (g == Gender::male ? gender_label == GenderLabel::male_only
                              : gender_label == GenderLabel::female_only);
  }
};

// Tiered patient-type -> bed-pool eligibility with overflow costs. The cost
// is zero exactly on primary pools and positive on the two non-primary tiers.
class CompatibilityMap {
 public:
  struct TierLists {
    // Pool ids in hospital search order (the order matters to baseline policies).
    std::vector<int> primary;
    std::vector<int> preferred;
    std::vector<int> secondary;
  };

  CompatibilityMap() = default;
  CompatibilityMap(std::vector<TierLists> by_type, double preferred_cost, double secondary_cost);

  int type_count() const { return static_cast<int>(by_type_.size()); }
  const TierLists& tiers(int type_index) const { return by_type_.at(type_index); }

  // Tier of `pool_id` for the given type, or nullopt when incompatible.
  std::optional<Tier> tier_of(int type_index, int pool_id) const;
  bool compatible(int type_index, int pool_id) const { return tier_of(type_index, pool_id).has_value(); }

  // Overflow cost u(type, pool); throws std::out_of_range on incompatible pairs.
  double cost(int type_index, int pool_id) const;

  double tier_cost(Tier t) const {
    switch (t) {
      case Tier::primary: return 0.0;
      case Tier::preferred: return preferred_cost_;
      default: return secondary_cost_;
    }
  }

  // All compatible pools in tier order: primary, then preferred, then secondary.
  std::vector<int> all_pools(int type_index) const;

 private:
  std::vector<TierLists> by_type_;
  double preferred_cost_ = 1.0;
  double secondary_cost_ = 1.0;
};

struct BoardedPatient {
  int id = 0;
  int type = 0;               // index into the patient-type registry
  TimeMin request_time = 0;   // a_i
  DurMin delay_target = 0;    // tau_i, > 0
  Source source = Source::ED;
};

// Availability of a candidate bed: either free right now, or occupied with a
// discharge scheduled on a known day (the hour within that day is random).
struct AvailableNow {
  TimeMin at = 0;
  bool operator==(const AvailableNow&) const = default;
};
struct AvailableLater {
  int day = 0;
  bool operator==(const AvailableLater&) const = default;
};

struct CandidateBed {
  int id = 0;
  int pool = 0;
  std::variant<AvailableNow, AvailableLater> availability;

  bool available_now() const { return std::holds_alternative<AvailableNow>(availability); }
  bool operator==(const CandidateBed&) const = default;
};

// Edge weight of the assignment problem: ln P(d_j - a_i <= tau_i). A zero
// probability is kept as an explicit flag, never as a large negative float.
struct LogProb {
  bool impossible = false;
  double value = 0.0;  // valid (and <= 0) only when !impossible

  static LogProb certain() { return {false, 0.0}; }
  static LogProb never() { return {true, 0.0}; }
  static LogProb from_probability(double p);
  bool operator==(const LogProb&) const = default;
};

struct AssignmentEdge {
  int patient = 0;  // BoardedPatient::id
  int bed = 0;      // CandidateBed::id
  LogProb weight;
  double cost = 0.0;  // u_ij >= 0
};

// One decision-iteration snapshot: patients I, beds J, eligibility J_i (as
// the edge list), weights, costs and the overflow budget B.
struct AssignmentInstance {
  std::vector<BoardedPatient> patients;
  std::vector<CandidateBed> beds;
  std::vector<AssignmentEdge> edges;  // sorted by (patient, bed)
  double budget = 0.0;
};

struct AssignmentPlan {
  // (patient id, bed id) pairs sorted by patient id; every patient appears
  // exactly once, every bed at most once.
  std::vector<std::pair<int, int>> matches;
  int impossible_edges = 0;   // matched edges whose weight is impossible
  double log_objective = 0.0; // finite part of the objective
  double total_cost = 0.0;

  // V(z) as an extended real: -inf whenever any matched edge is impossible.
  double objective() const;
};

struct Violation {
  std::string code;
  std::string message;
};

// Checks the structural invariants of an instance; returns the first
// violation found, or nullopt when the instance is well formed.
std::optional<Violation> validate_instance(const AssignmentInstance& inst);

// True iff `plan` satisfies the two admissibility constraints and the budget
// constraint of the instance. Throws std::invalid_argument on unknown ids.
bool is_admissible(const AssignmentInstance& inst, const AssignmentPlan& plan);

// Recomputes (impossible_edges, log_objective, total_cost) of a match set
// against the instance's edges. Throws std::invalid_argument on unknown pairs.
AssignmentPlan evaluate_plan(const AssignmentInstance& inst,
                             std::vector<std::pair<int, int>> matches);

}  // namespace wardsim
