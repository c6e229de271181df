#pragma once

#include <string>
#include <vector>

#include "conestab/stability.hpp"

namespace conestab {

inline constexpr const char* kVersion = "0.3.0";
inline constexpr const char* kCsvSchema = "conestab-scan/1";

struct ScanOptions {
  int n = 4;
  int jobs = 1;
  StabilityOptions stability;
  ConeSolveOptions solve;
};

/// Stability reports for every C(k,h), k ≥ 1, h ≥ 1, k + h = n, ordered by k.
struct ScanTable {
  int n = 0;
  std::vector<StabilityReport> rows;
  ScanOptions options;
  std::string timestamp;  // excluded from the determinism contract
};

/// Cones are solved concurrently with at most `jobs` workers; row order and
/// content do not depend on scheduling.
ScanTable scan(const ScanOptions& options);

/// Columns: k,h,n,theta_star,H,Lambda,threshold,verdict,L,B_a4,alpha_min,alpha_max,criterion37
std::string to_csv(const ScanTable& table);

std::string utc_timestamp();

}  // namespace conestab
