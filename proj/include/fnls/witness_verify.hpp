#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fnls/report.hpp"

namespace fnls {

struct WitnessCheck {
  std::string clause;
  bool reproduced = false;      // defect matches the stored one bit-for-bit
  bool still_violating = false; // the recomputed defect still exceeds the stored tol
  double stored_defect = 0.0;
  double recomputed_defect = 0.0;
  std::string note;
};

struct WitnessVerification {
  std::vector<WitnessCheck> checks;
  bool all_reproduced() const;
};

/// Recompute every witness in a previously written report, using only the
/// report's command and config echo to rebuild the norms, maps and sequences
/// involved. Defects are recomputed through the same primitives the checkers
/// use, so a faithful report reproduces exactly.
WitnessVerification verify_report_witnesses(const nlohmann::json& report);

}  // namespace fnls
