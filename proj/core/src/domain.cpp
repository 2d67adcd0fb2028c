#include "wardsim/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace wardsim {

const char* to_string(Specialty s) {
  switch (s) {
    case Specialty::cardiology: return "cardiology";
    case Specialty::gastroenterology: return "gastroenterology";
    case Specialty::geriatrics: return "geriatrics";
    case Specialty::general_medicine: return "general_medicine";
    case Specialty::respiratory: return "respiratory";
    case Specialty::surgery: return "surgery";
    case Specialty::surgery_el: return "surgery_el";
    case Specialty::mixed: return "mixed";
  }
  return "?";
}

const char* to_string(Gender g) { return g == Gender::male ? "male" : "female"; }

const char* to_string(GenderLabel g) {
  switch (g) {
    case GenderLabel::male_only: return "male";
    case GenderLabel::female_only: return "female";
    case GenderLabel::gender_neutral: return "neutral";
  }
  return "?";
}

const char* to_string(AccommodationClass c) {
  switch (c) {
    case AccommodationClass::A1: return "A1";
    case AccommodationClass::B1: return "B1";
    case AccommodationClass::B2: return "B2";
    case AccommodationClass::C: return "C";
  }
  return "?";
}

const char* to_string(Source s) {
  switch (s) {
    case Source::ED: return "ED";
    case Source::SDA: return "SDA";
    case Source::EL: return "EL";
    case Source::SOC: return "SOC";
  }
  return "?";
}

const char* to_string(Tier t) {
  switch (t) {
    case Tier::primary: return "primary";
    case Tier::preferred: return "preferred";
    case Tier::secondary: return "secondary";
  }
  return "?";
}

CompatibilityMap::CompatibilityMap(std::vector<TierLists> by_type, double preferred_cost,
                                   double secondary_cost)
    : by_type_(std::move(by_type)),
      preferred_cost_(preferred_cost),
      secondary_cost_(secondary_cost) {
  if (preferred_cost_ <= 0.0 || secondary_cost_ <= 0.0)
    throw std::invalid_argument("non-primary tier costs must be positive");
  for (const auto& t : by_type_) {
    if (t.primary.empty()) throw std::invalid_argument("every patient type needs a primary pool");
    std::set<int> seen;
    for (const auto* list : {&t.primary, &t.preferred, &t.secondary})
      for (int p : *list)
        if (!seen.insert(p).second)
          throw std::invalid_argument("pool appears in more than one tier for a type");
  }
}

std::optional<Tier> CompatibilityMap::tier_of(int type_index, int pool_id) const {
  const TierLists& t = by_type_.at(type_index);
  auto has = [pool_id](const std::vector<int>& v) {
    return std::find(v.begin(), v.end(), pool_id) != v.end();
  };
  if (has(t.primary)) return Tier::primary;
  if (has(t.preferred)) return Tier::preferred;
  if (has(t.secondary)) return Tier::secondary;
  return std::nullopt;
}

double CompatibilityMap::cost(int type_index, int pool_id) const {
  auto tier = tier_of(type_index, pool_id);
  if (!tier) throw std::out_of_range("pool is not compatible with patient type");
  return tier_cost(*tier);
}

std::vector<int> CompatibilityMap::all_pools(int type_index) const {
  const TierLists& t = by_type_.at(type_index);
  std::vector<int> out;
  out.reserve(t.primary.size() + t.preferred.size() + t.secondary.size());
  out.insert(out.end(), t.primary.begin(), t.primary.end());
  out.insert(out.end(), t.preferred.begin(), t.preferred.end());
  out.insert(out.end(), t.secondary.begin(), t.secondary.end());
  return out;
}

LogProb LogProb::from_probability(double p) {
  if (p < 0.0 || p > 1.0 + 1e-12) throw std::invalid_argument("probability outside [0, 1]");
  if (p <= 0.0) return never();
  return {false, std::min(0.0, std::log(p))};
}

double AssignmentPlan::objective() const {
  return impossible_edges > 0 ? -std::numeric_limits<double>::infinity() : log_objective;
}

std::optional<Violation> validate_instance(const AssignmentInstance& inst) {
  auto fail = [](std::string code, std::string msg) {
    return Violation{std::move(code), std::move(msg)};
  };

  std::set<int> patient_ids;
  for (const auto& p : inst.patients) {
    if (!patient_ids.insert(p.id).second)
      return fail("duplicate-patient", "duplicate patient id " + std::to_string(p.id));
    if (p.delay_target <= 0)
      return fail("nonpositive-target", "patient " + std::to_string(p.id) + " has tau <= 0");
  }
  std::set<int> bed_ids;
  for (const auto& b : inst.beds) {
    if (!bed_ids.insert(b.id).second)
      return fail("duplicate-bed", "duplicate bed id " + std::to_string(b.id));
  }
  if (inst.budget < 0.0) return fail("negative-budget", "budget B < 0");

  std::set<int> beds_with_edges;
  std::set<int> patients_with_edges;
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& e : inst.edges) {
    if (!patient_ids.count(e.patient))
      return fail("unknown-patient", "edge references unknown patient " + std::to_string(e.patient));
    if (!bed_ids.count(e.bed))
      return fail("unknown-bed", "edge references unknown bed " + std::to_string(e.bed));
    if (!seen_edges.insert({e.patient, e.bed}).second)
      return fail("duplicate-edge", "duplicate edge");
    if (e.cost < 0.0)
      return fail("negative-cost", "negative cost on edge (" + std::to_string(e.patient) + ", " +
                                       std::to_string(e.bed) + ")");
    if (!e.weight.impossible && e.weight.value > 1e-12)
      return fail("positive-weight", "log-probability above 0");
    patients_with_edges.insert(e.patient);
    beds_with_edges.insert(e.bed);
  }
  for (const auto& p : inst.patients)
    if (!patients_with_edges.count(p.id))
      return fail("empty-eligible-set", "patient " + std::to_string(p.id) + " has empty J_i");
  // J is the union of the J_i: beds nobody can use do not belong in the instance.
  for (const auto& b : inst.beds)
    if (!beds_with_edges.count(b.id))
      return fail("unused-bed", "bed " + std::to_string(b.id) + " is outside every J_i");
  return std::nullopt;
}

namespace {

const AssignmentEdge* find_edge(const AssignmentInstance& inst, int patient, int bed) {
  for (const auto& e : inst.edges)
    if (e.patient == patient && e.bed == bed) return &e;
  return nullptr;
}

}  // namespace

bool is_admissible(const AssignmentInstance& inst, const AssignmentPlan& plan) {
  std::set<int> patient_ids;
  for (const auto& p : inst.patients) patient_ids.insert(p.id);
  std::set<int> bed_ids;
  for (const auto& b : inst.beds) bed_ids.insert(b.id);

  std::set<int> matched_patients;
  std::set<int> matched_beds;
  double cost = 0.0;
  for (const auto& [pid, bid] : plan.matches) {
    if (!patient_ids.count(pid)) throw std::invalid_argument("plan references unknown patient");
    if (!bed_ids.count(bid)) throw std::invalid_argument("plan references unknown bed");
    const AssignmentEdge* e = find_edge(inst, pid, bid);
    if (e == nullptr) return false;  // bed outside J_i
    if (!matched_patients.insert(pid).second) return false;
    if (!matched_beds.insert(bid).second) return false;  // bed taken twice
    cost += e->cost;
  }
  if (matched_patients.size() != inst.patients.size()) return false;
  return cost <= inst.budget + 1e-9;
}

AssignmentPlan evaluate_plan(const AssignmentInstance& inst,
                             std::vector<std::pair<int, int>> matches) {
  AssignmentPlan plan;
  std::sort(matches.begin(), matches.end());
  plan.matches = std::move(matches);
  for (const auto& [pid, bid] : plan.matches) {
    const AssignmentEdge* e = find_edge(inst, pid, bid);
    if (e == nullptr) throw std::invalid_argument("match is not an instance edge");
    if (e->weight.impossible)
      plan.impossible_edges += 1;
    else
      plan.log_objective += e->weight.value;
    plan.total_cost += e->cost;
  }
  return plan;
}

}  // namespace wardsim
