#pragma once

// Singleton-type distance upper bounds for LRC and hierarchical LRC codes.

#include <cstdint>
#include <utility>
#include <vector>

#include "hlrc/error.hpp"

namespace hlrc {

using Locality = std::pair<std::int64_t, std::int64_t>;  // (r, rho)

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

/// d <= n - k + 1 - (ceil(k/r) - 1)(rho - 1).
inline std::int64_t bound_sb(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t rho) {
  require_param(n >= 1 && k >= 1 && r >= 1 && rho >= 2, "bound_sb: need n, k, r >= 1 and rho >= 2");
  return n - k + 1 - (ceil_div(k, r) - 1) * (rho - 1);
}

/// d <= n - k + 2 - ceil(k/r).
inline std::int64_t bound_sb2(std::int64_t n, std::int64_t k, std::int64_t r) {
  require_param(n >= 1 && k >= 1 && r >= 1, "bound_sb2: need n, k, r >= 1");
  return n - k + 2 - ceil_div(k, r);
}

/// Levels ordered outermost first: [(r1, rho1), ..., (r_tau, rho_tau)].
inline std::int64_t bound_hlrc(std::int64_t n, std::int64_t k, const std::vector<Locality>& levels) {
  require_param(!levels.empty(), "bound_hlrc: at least one level required");
  for (auto [r, rho] : levels) require_param(r >= 1 && rho >= 2, "bound_hlrc: need r >= 1 and rho >= 2 at every level");
  require_param(n >= 1 && k >= 1, "bound_hlrc: need n, k >= 1");
  const auto [rt, rhot] = levels.back();
  std::int64_t d = n - k + 1 - (ceil_div(k, rt) - 1) * (rhot - 1);
  for (std::size_t j = 0; j + 1 < levels.size(); ++j)
    d -= (ceil_div(k, levels[j].first) - 1) * (levels[j].second - levels[j + 1].second);
  return d;
}

}  // namespace hlrc
