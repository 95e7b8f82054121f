#include "mastereq/stationary.hpp"

#include <cmath>

namespace mastereq {

namespace {

std::vector<double> detailed_balance_weights(const RateSchedule& s) {
  std::vector<double> w(static_cast<std::size_t>(s.num_states()));
  w[0] = 1.0;
  for (int n = 0; n < s.last_state(); ++n) {
    const double death = s.death(n + 1);
    if (!(death > 0.0)) throw NonpositiveDenominator(n + 1, death);
    w[n + 1] = w[n] * (s.birth(n) / death);
  }
  return w;
}

double factor_at(const RateSchedule& s, const FProducts& fp, double anchor_magnitude, int i) {
  const double shift = fp.f(i - 1) * s.birth(i) / s.death(i + 1);
  const double denom = anchor_magnitude + fp.partial_sum(i - 1) - shift;
  if (!(denom > 0.0)) throw NonpositiveDenominator(i, denom);
  return 1.0 + shift / denom;
}

}  // namespace

Distribution classical_stationary(const RateSchedule& s) {
  return Distribution::from_weights(detailed_balance_weights(s), Provenance{Source::classical, std::nullopt});
}

double renormalization_factor(const RateSchedule& s, DParameter d, int i) {
  if (i < 0 || i > s.last_state() - 1) throw std::out_of_range("renormalization index " + std::to_string(i));
  if (d.is_infinite()) return 1.0;
  const FProducts fp(s);
  return factor_at(s, fp, -riccati_anchor(fp, d), i);
}

std::vector<double> renormalization_factors(const RateSchedule& s, const FProducts& fp, DParameter d) {
  std::vector<double> r(static_cast<std::size_t>(s.last_state()), 1.0);
  if (d.is_infinite()) return r;
  const double anchor_magnitude = -riccati_anchor(fp, d);
  for (int i = 0; i < s.last_state(); ++i) r[i] = factor_at(s, fp, anchor_magnitude, i);
  return r;
}

Distribution parametric_stationary(const RateSchedule& s, DParameter d) {
  if (d.is_infinite()) {
    Distribution out = classical_stationary(s);
    out.provenance = Provenance{Source::parametric, d};
    return out;
  }
  return parametric_stationary(s, FProducts(s), d);
}

Distribution parametric_stationary(const RateSchedule& s, const FProducts& fp, DParameter d) {
  if (d.is_infinite()) return parametric_stationary(s, d);
  const std::vector<double> factors = renormalization_factors(s, fp, d);
  const std::vector<double> classical = detailed_balance_weights(s);
  std::vector<double> weights(classical.size());
  double correction = 1.0;
  weights[0] = 1.0;
  for (int n = 0; n < s.last_state(); ++n) {
    correction *= factors[n];
    weights[n + 1] = classical[n + 1] * correction;
  }
  return Distribution::from_weights(std::move(weights), Provenance{Source::parametric, d});
}

RateSchedule effective_schedule(const RateSchedule& s, DParameter d) {
  if (d.is_infinite()) return s;
  const FProducts fp(s);
  const std::vector<double> factors = renormalization_factors(s, fp, d);
  auto b = s.birth_rates();
  auto dr = s.death_rates();
  std::vector<double> birth(b.begin(), b.end());
  for (int i = 0; i < s.last_state(); ++i) birth[i] *= factors[i];
  return make_explicit(s.last_state(), std::move(birth), std::vector<double>(dr.begin(), dr.end()),
                       "effective(" + s.label() + ", D=" + d.to_string() + ")");
}

Distribution constant_case_closed_form(double rate, int last_state, DParameter d) {
  if (!(rate > 0.0 && rate < 1.0)) throw std::invalid_argument("constant rate must lie in (0, 1)");
  if (last_state < 1) throw std::invalid_argument("last state N must be >= 1");
  const auto states = static_cast<std::size_t>(last_state) + 1;
  const double uniform = 1.0 / static_cast<double>(states);
  Provenance prov{Source::closed_form_constant, d};
  if (d.is_infinite()) return Distribution{std::vector<double>(states, uniform), uniform, prov};

  const double mag = d.magnitude();
  const double prefactor = uniform / (1.0 + static_cast<double>(last_state) / (2.0 * mag));
  std::vector<double> p(states);
  for (std::size_t k = 0; k < states; ++k) p[k] = prefactor * (1.0 + static_cast<double>(k) / mag);
  return Distribution{std::move(p), prefactor, prov};
}

Distribution asymmetric_closed_form(double epsilon, int last_state, DParameter d) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (last_state < 1) throw std::invalid_argument("last state N must be >= 1");
  const double q = (1.0 - epsilon) / (1.0 + epsilon);
  const double one_minus_q = 2.0 * epsilon / (1.0 + epsilon);
  const double log_q = std::log1p(-epsilon) - std::log1p(epsilon);

  std::vector<double> w(static_cast<std::size_t>(last_state) + 1);
  w[0] = 1.0;
  for (int i = 0; i < last_state; ++i) {
    double factor = 1.0;
    if (!d.is_infinite()) {
      const double q_pow = std::exp(i * log_q);
      const double one_minus_q_pow = -std::expm1(i * log_q);
      const double denom = one_minus_q * d.magnitude() + one_minus_q_pow;
      if (!(denom > 0.0)) throw NonpositiveDenominator(i, denom);
      factor = (one_minus_q * (d.magnitude() + q_pow) + one_minus_q_pow) / denom;
    }
    w[i + 1] = w[i] / q * factor;
  }
  return Distribution::from_weights(std::move(w), Provenance{Source::closed_form_asymmetric, d});
}

}  // namespace mastereq
