#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fnls/vec.hpp"

namespace fnls {

/// Deterministic sampling configuration. Identical plans produce identical
/// sample streams and therefore identical reports.
struct SamplePlan {
  std::uint64_t seed = 1;
  std::size_t n_points = 128;
  double point_radius = 5.0;
  double a_min = 1e-3;
  double a_max = 1e3;
  std::size_t n_thresholds = 12;
  double equality_tol = 1e-9;

  double limit_tol = 1e-6;     // large-threshold limit probe acceptance
  double semicont_tol = 1e-6;  // one-sided continuity probe acceptance
  std::size_t witness_cap = 32;

  void validate() const;

  /// Reference threshold for fuzzy-value defect measures (geometric middle
  /// of the threshold range).
  double a_ref() const { return std::sqrt(a_min * a_max); }
};

/// Library-wide comparison tolerances (absolute + relative).
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;
  bool close(double x, double y) const {
    const double s = std::max(std::abs(x), std::abs(y));
    return std::abs(x - y) <= abs + rel * s;
  }
};

struct ClauseResult {
  std::string id;
  bool pass = true;
  std::string note;
};

/// Concrete inputs demonstrating a clause violation. `defect` and `tol` are
/// clause-specific: the violation condition is reproducible from them alone
/// (typically defect > tol), and re-evaluating the clause on the stored
/// inputs must recompute `defect` bit-for-bit.
struct Witness {
  std::string clause;
  std::map<std::string, Vector> vectors;
  std::map<std::string, double> scalars;
  double defect = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<ClauseResult> clauses;
  std::vector<Witness> witnesses;
  std::size_t samples_used = 0;
  std::size_t violations_total = 0;  // can exceed witnesses.size() when capped
  std::map<std::string, double> tolerances;
  std::vector<std::string> notes;

  bool pass() const { return witnesses.empty(); }
};

/// Caps the witness list deterministically: keeps the largest defects,
/// reported in discovery order.
class WitnessCollector {
 public:
  explicit WitnessCollector(std::size_t cap) : cap_(cap) {}

  void add(Witness w) {
    entries_.push_back({next_index_++, std::move(w)});
  }

  std::size_t total() const { return entries_.size(); }

  std::vector<Witness> take() {
    if (entries_.size() > cap_) {
      std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return a.w.defect > b.w.defect;
      });
      entries_.resize(cap_);
      std::sort(entries_.begin(), entries_.end(),
                [](const Entry& a, const Entry& b) { return a.index < b.index; });
    }
    std::vector<Witness> out;
    out.reserve(entries_.size());
    for (auto& e : entries_) out.push_back(std::move(e.w));
    entries_.clear();
    return out;
  }

 private:
  struct Entry {
    std::size_t index;
    Witness w;
  };
  std::size_t cap_;
  std::size_t next_index_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace fnls
