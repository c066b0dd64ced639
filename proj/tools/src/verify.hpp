#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace contest::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  // Smallest slack against the tolerance over all trials; negative on failure.
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  int trials = 100;
  // Group names ("objective"), check names ("structure.schur") or their suffix ("schur").
  std::vector<std::string> only;
};

std::vector<std::string> verify_check_names();

std::vector<CheckResult> run_verify(const VerifyOptions& opts,
                                    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace contest::cli
