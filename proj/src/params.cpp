#include "sis/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sis {

EpidemicParams::EpidemicParams(double lambda, double mu, double gamma)
    : lambda_(lambda), mu_(mu), gamma_(gamma) {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0))
      throw std::invalid_argument(std::string(name) + " must be a finite positive rate, got " +
                                  std::to_string(v));
  };
  check(lambda, "lambda");
  check(mu, "mu");
  check(gamma, "gamma");
  effective_rate_ = lambda / mu;
  log_ratio_ = std::log(lambda) - std::log(mu);
  log_gamma_ = std::log(gamma);
}

EpidemicParams EpidemicParams::from_rates(double lambda, double mu, double gamma) {
  return EpidemicParams(lambda, mu, gamma);
}

EpidemicParams EpidemicParams::from_ratio(double ratio, double gamma) {
  return EpidemicParams(ratio, 1.0, gamma);
}

EpidemicParams EpidemicParams::from_ratio(const Rational& ratio, const Rational& gamma) {
  if (!ratio.is_positive() || !gamma.is_positive())
    throw std::invalid_argument("lambda/mu and gamma must be positive");
  EpidemicParams p(ratio.to_double(), 1.0, gamma.to_double());
  p.exact_ratio_ = ratio;
  p.exact_gamma_ = gamma;
  return p;
}

int log_weight_sign(const EpidemicParams& p, std::int64_t count_exp, std::int64_t edge_exp) {
  const double v = static_cast<double>(count_exp) * p.log_ratio() +
                   static_cast<double>(edge_exp) * p.log_gamma();
  if (p.is_exact()) {
    // Round-off in v is far below this margin, so only near-ties need bigints.
    if (std::abs(v) > 1e-9) return v > 0 ? 1 : -1;
    return sign_of_power_product_minus_one(*p.exact_ratio(), count_exp, *p.exact_gamma(),
                                           edge_exp);
  }
  if (std::abs(v) <= kLogTieTolerance) return 0;
  return v > 0 ? 1 : -1;
}

}  // namespace sis
