#ifndef SIS_PARAMS_HPP
#define SIS_PARAMS_HPP

#include <cstdint>
#include <optional>

#include "sis/rational.hpp"

namespace sis {

/// Rates of the scaled SIS process: exogenous infection (lambda), healing
/// (mu) and endogenous infection (gamma). All three are strictly positive.
///
/// When the parameters come from exact rationals (CLI input, sweep grids)
/// the ratio lambda/mu and gamma are kept alongside the doubles so that
/// tie decisions at phase boundaries can be made exactly.
class EpidemicParams {
 public:
  /// Throws std::invalid_argument unless all rates are finite and positive.
  static EpidemicParams from_rates(double lambda, double mu, double gamma);
  /// lambda = ratio, mu = 1.
  static EpidemicParams from_ratio(const Rational& ratio, const Rational& gamma);
  static EpidemicParams from_ratio(double ratio, double gamma);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double gamma() const { return gamma_; }
  double effective_rate() const { return effective_rate_; }

  double log_ratio() const { return log_ratio_; }
  double log_gamma() const { return log_gamma_; }

  const std::optional<Rational>& exact_ratio() const { return exact_ratio_; }
  const std::optional<Rational>& exact_gamma() const { return exact_gamma_; }
  bool is_exact() const { return exact_ratio_.has_value() && exact_gamma_.has_value(); }

 private:
  EpidemicParams(double lambda, double mu, double gamma);

  double lambda_ = 1.0;
  double mu_ = 1.0;
  double gamma_ = 1.0;
  double effective_rate_ = 1.0;
  double log_ratio_ = 0.0;
  double log_gamma_ = 0.0;
  std::optional<Rational> exact_ratio_;
  std::optional<Rational> exact_gamma_;
};

/// Absolute tolerance for "equal" in the log domain when no exact path exists.
inline constexpr double kLogTieTolerance = 1e-12;

/// Sign of  count_exp * ln(lambda/mu) + edge_exp * ln(gamma), i.e. of
/// log((lambda/mu)^count_exp * gamma^edge_exp). Exact when the parameters
/// carry rationals; otherwise |value| <= kLogTieTolerance counts as zero.
int log_weight_sign(const EpidemicParams& p, std::int64_t count_exp, std::int64_t edge_exp);

}  // namespace sis

#endif
