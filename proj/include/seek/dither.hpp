#pragma once

#include <string_view>

namespace seek {

/// Which Lie bracket the dither pair excites: first-, second- or third-order.
enum class DitherOrder { C1, C2, C3 };

std::string_view to_string(DitherOrder order);
DitherOrder dither_order_from_string(std::string_view name);

struct DitherSpec {
  DitherOrder order = DitherOrder::C3;
  int kappa = 1;
  double epsilon = 1e-3;

  /// Bracket depth N in {2, 3, 4}; the time scaling exponent is 1/N - 1.
  int bracket_depth() const noexcept;
};

void validate(const DitherSpec& spec);

struct DitherPair {
  double v1 = 0.0;
  double v2 = 0.0;
};

/// Unscaled dithers at phase s = t / epsilon (period 1 in s).
DitherPair dither_pair(const DitherSpec& spec, double phase);

/// u_i = epsilon^(1/N - 1) v_i(t / epsilon).
DitherPair scaled_inputs(const DitherSpec& spec, double t);

struct MomentReport {
  double m1 = 0.0;        ///< mean of v1 over one period
  double m2 = 0.0;        ///< mean of v2 over one period
  double lambda12 = 0.0;  ///< first-bracket excitation: int v2(s) int_0^s v1
};

/// Composite trapezoid over one unit period.
MomentReport moment_check(const DitherSpec& spec, int panels = 10000);

}  // namespace seek
