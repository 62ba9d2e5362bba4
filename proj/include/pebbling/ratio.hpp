#pragma once

#include <compare>
#include <string>

#include "pebbling/errors.hpp"

namespace pebbling {

/// Strengthening ratio Δt/Δp, kept as an exact fraction. Δp = 0 stands for
/// the infinite ratio of the empty distribution.
struct Ratio {
  long long delta_t = 0;
  long long delta_p = 0;

  bool infinite() const noexcept { return delta_p == 0; }

  friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    if (a.infinite() && b.infinite()) return std::strong_ordering::equal;
    if (a.infinite()) return std::strong_ordering::greater;
    if (b.infinite()) return std::strong_ordering::less;
    return static_cast<__int128>(a.delta_t) * b.delta_p <=> static_cast<__int128>(b.delta_t) * a.delta_p;
  }

  /// Δt/Δp >= num/den, by cross-multiplication.
  bool at_least(long long num, long long den) const {
    if (infinite()) return true;
    return static_cast<__int128>(delta_t) * den >= static_cast<__int128>(num) * delta_p;
  }

  std::string str() const {
    if (infinite()) return "inf";
    return std::to_string(delta_t) + "/" + std::to_string(delta_p);
  }
};

/// Ratio of two consecutive expansions: (Δt1+Δt2)/(Δp1+Δp2), which is never
/// below the smaller of the two.
inline Ratio ratio_compose_check(const Ratio& r1, const Ratio& r2) {
  if (r1.delta_p < 0 || r2.delta_p < 0 || r1.delta_t < 0 || r2.delta_t < 0) {
    throw PreconditionError("bad-ratio", "ratios must have nonnegative parts");
  }
  const Ratio composed{r1.delta_t + r2.delta_t, r1.delta_p + r2.delta_p};
  const Ratio& smaller = r1 < r2 ? r1 : r2;
  if (composed < smaller) {
    throw InternalError("ratio-compose", "composed ratio " + composed.str() + " below " + smaller.str());
  }
  return composed;
}

}  // namespace pebbling
