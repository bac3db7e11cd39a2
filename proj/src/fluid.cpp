#include "wellopt/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wellopt {

void FluidProps::validate() const {
  if (!(mu_o_cp > 0.0) || !(mu_w_cp > 0.0))
    throw std::invalid_argument("fluid: viscosities must be > 0");
  if (!(rho_o_kgm3 > 0.0) || !(rho_w_kgm3 > 0.0))
    throw std::invalid_argument("fluid: densities must be > 0");
  if (s_w_init < 0.0 || s_w_init >= 1.0)
    throw std::invalid_argument("fluid: s_w_init must lie in [0, 1)");
  if (s_wr < 0.0 || s_wr >= 1.0 || s_or < 0.0 || s_or >= 1.0)
    throw std::invalid_argument("fluid: residual saturations must lie in [0, 1)");
  if (s_wr + s_or >= 1.0)
    throw std::invalid_argument("fluid: s_wr + s_or must be < 1");
  if (!(n_w >= 1.0) || !(n_o >= 1.0))
    throw std::invalid_argument("fluid: Corey exponents must be >= 1");
}

namespace {

// pow with a fast path for the common integer exponents
inline double corey_pow(double base, double exponent) {
  if (exponent == 2.0) return base * base;
  if (exponent == 1.0) return base;
  if (exponent == 3.0) return base * base * base;
  return std::pow(base, exponent);
}

}  // namespace

Mobilities relative_mobility(double s_w, const FluidProps& fluid) {
  const double span = 1.0 - fluid.s_wr - fluid.s_or;
  const double s_norm = std::clamp((s_w - fluid.s_wr) / span, 0.0, 1.0);
  return {corey_pow(s_norm, fluid.n_w) / fluid.mu_w_cp,
          corey_pow(1.0 - s_norm, fluid.n_o) / fluid.mu_o_cp};
}

double fractional_flow(double s_w, const FluidProps& fluid) {
  const Mobilities m = relative_mobility(s_w, fluid);
  return m.water / (m.water + m.oil);
}

double max_fractional_flow_slope(const FluidProps& fluid) {
  const double span = 1.0 - fluid.s_wr - fluid.s_or;
  // d f/d S on a fine grid of normalized saturation; f' = (w' o - w o')/t^2
  constexpr int kSamples = 4096;
  double max_slope = 0.0;
  for (int k = 0; k <= kSamples; ++k) {
    const double s_norm = static_cast<double>(k) / kSamples;
    const double w = corey_pow(s_norm, fluid.n_w) / fluid.mu_w_cp;
    const double o = corey_pow(1.0 - s_norm, fluid.n_o) / fluid.mu_o_cp;
    const double dw = s_norm > 0.0 || fluid.n_w <= 1.0
                          ? fluid.n_w * corey_pow(s_norm, fluid.n_w - 1.0) /
                                fluid.mu_w_cp
                          : 0.0;
    const double d_o = (1.0 - s_norm) > 0.0 || fluid.n_o <= 1.0
                           ? -fluid.n_o *
                                 corey_pow(1.0 - s_norm, fluid.n_o - 1.0) /
                                 fluid.mu_o_cp
                           : 0.0;
    const double t = w + o;
    const double slope = std::abs((dw * o - w * d_o) / (t * t));
    max_slope = std::max(max_slope, slope);
  }
  return max_slope / span;
}

}  // namespace wellopt
