#pragma once

#include <array>
#include <optional>

namespace accinfo::reference {

/// Published obtuse-threshold table, m = 2..7. The m = 7 root is the negative
/// continuation of the obtuse equation; its m r0 entry is undefined.
struct TableRow {
  int m;
  double tau;
  std::optional<double> m_r0;
  double p;
};

inline constexpr std::array<TableRow, 6> kTable{{
    {2, 0.0, 0.0, 0.5},
    {3, 0.3616, 0.1841, 0.8725},
    {4, 0.25866, 0.08726, 0.8656},
    {5, 0.15195, 0.02869, 0.85699},
    {6, 0.04781, 0.00274, 0.84896},
    {7, -0.05286, std::nullopt, 0.8417},
}};

inline constexpr double kTauTolerance = 5e-5;
inline constexpr double kMR0Tolerance = 5e-4;
inline constexpr double kPTolerance = 5e-5;

}  // namespace accinfo::reference
