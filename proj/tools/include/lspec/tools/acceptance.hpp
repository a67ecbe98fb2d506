#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lspec::tools {

struct AcceptanceOptions {
  bool fast = false;          // limits capped at 1e5, grids at 1e4 points
  std::string zeros_dir;      // directory holding the zero tables
  unsigned threads = 4;
  std::uint64_t seed = 20261018;
  std::vector<int> only;      // empty runs every criterion
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  std::string threshold;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const AcceptanceOptions& options);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

// Zero-table file names looked up inside AcceptanceOptions::zeros_dir and the
// figure drivers' zero directory.
namespace zero_files {
inline constexpr const char* zeta_low = "zeta_zeros_100.txt";
inline constexpr const char* zeta_1000 = "zeta_zeros_1000.txt";
inline constexpr const char* zeta_high = "zeta_zeros_1e6.txt";
inline constexpr const char* chi5 = "chi5_zeros.txt";
inline constexpr const char* chi5_negative = "chi5_zeros_negative.txt";
inline constexpr const char* chi4 = "chi4_zeros.txt";
}  // namespace zero_files

}  // namespace lspec::tools
