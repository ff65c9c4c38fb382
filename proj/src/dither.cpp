#include "seek/dither.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "seek/error.hpp"

namespace seek {

using std::numbers::pi;

std::string_view to_string(DitherOrder order) {
  switch (order) {
    case DitherOrder::C1: return "c1";
    case DitherOrder::C2: return "c2";
    case DitherOrder::C3: return "c3";
  }
  return "?";
}

DitherOrder dither_order_from_string(std::string_view name) {
  if (name == "c1") return DitherOrder::C1;
  if (name == "c2") return DitherOrder::C2;
  if (name == "c3") return DitherOrder::C3;
  throw ValidationError("dither.order", "expected one of c1, c2, c3, got '" + std::string(name) + "'");
}

int DitherSpec::bracket_depth() const noexcept {
  switch (order) {
    case DitherOrder::C1: return 2;
    case DitherOrder::C2: return 3;
    case DitherOrder::C3: return 4;
  }
  return 0;
}

void validate(const DitherSpec& spec) {
  if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon)) {
    throw ValidationError("esc.epsilon", "must be finite and > 0, got " + std::to_string(spec.epsilon));
  }
  if (spec.kappa < 1) {
    throw ValidationError("dither.kappa", "must be >= 1, got " + std::to_string(spec.kappa));
  }
}

DitherPair dither_pair(const DitherSpec& spec, double phase) {
  const double k = static_cast<double>(spec.kappa);
  switch (spec.order) {
    case DitherOrder::C1: {
      const double amp = 2.0 * std::sqrt(k * pi);
      return {amp * std::cos(2.0 * k * pi * phase), amp * std::sin(2.0 * k * pi * phase)};
    }
    case DitherOrder::C2: {
      const double amp = std::pow(4.0 * k * pi, 2.0 / 3.0);
      return {-2.0 * amp * std::cos(4.0 * k * pi * phase), amp * std::cos(2.0 * k * pi * phase)};
    }
    case DitherOrder::C3: {
      const double amp = std::pow(2.0 * k * pi, 0.75);
      return {6.0 * amp * std::sin(6.0 * k * pi * phase), 2.0 * amp * std::cos(2.0 * k * pi * phase)};
    }
  }
  return {};
}

DitherPair scaled_inputs(const DitherSpec& spec, double t) {
  const double n = spec.bracket_depth();
  const double scale = std::pow(spec.epsilon, 1.0 / n - 1.0);
  const DitherPair v = dither_pair(spec, t / spec.epsilon);
  return {scale * v.v1, scale * v.v2};
}

MomentReport moment_check(const DitherSpec& spec, int panels) {
  if (panels < 2) throw ValidationError("panels", "need at least 2 quadrature panels");
  const double h = 1.0 / panels;
  std::vector<DitherPair> v(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) v[i] = dither_pair(spec, i * h);

  MomentReport r;
  double inner = 0.0;  // running int_0^s v1
  double prev_integrand = 0.0;
  for (int i = 1; i <= panels; ++i) {
    r.m1 += 0.5 * h * (v[i - 1].v1 + v[i].v1);
    r.m2 += 0.5 * h * (v[i - 1].v2 + v[i].v2);
    inner += 0.5 * h * (v[i - 1].v1 + v[i].v1);
    const double integrand = v[i].v2 * inner;
    r.lambda12 += 0.5 * h * (prev_integrand + integrand);
    prev_integrand = integrand;
  }
  return r;
}

}  // namespace seek
