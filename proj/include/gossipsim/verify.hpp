#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gossipsim {

enum class VerifyLevel { kQuick, kFull };

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string details;
  double seconds = 0;
};

/// Runs the full invariant battery: trace reversal, Superstep claims and
/// round bounds, rumor via repeated Superstep, DirectExchange bounds, the
/// conductance decomposition checks, spanner extraction bounds, simulator
/// output equivalence, the random-unheard-neighbor pathology, and clique
/// broadcast. kQuick shrinks corpora and seed counts; kFull runs the
/// acceptance-scale version. Progress lines go to `progress` when given.
std::vector<CriterionResult> run_verification(VerifyLevel level, std::ostream* progress = nullptr);

}  // namespace gossipsim
