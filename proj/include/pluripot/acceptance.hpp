#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pluripot {

enum class Preset { Fast, Full };
Preset parse_preset(const std::string& s);
std::string to_string(Preset p);

struct AcceptanceOptions {
  Preset preset = Preset::Full;
  std::uint64_t seed = 1;
  /// Claims wrong pole weights in the Green-function check; its row must then fail.
  bool perturb_weights = false;
  /// Criteria to run (1..12); empty means all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string measured;
  std::string target;
  std::string tolerance;
  double seconds = 0;
  std::string detail;  // failure reasons, exceptions
};

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
/// Runs the selected criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  exact Lelong numbers  measured=... target=... tol=... (0.01 s)"
std::string format_row(const CriterionResult& r);

}  // namespace pluripot
