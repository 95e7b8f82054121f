#include "mastereq/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mastereq {

namespace {

std::string describe(int index, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "nonpositive denominator at index " << index << " (value " << value << ")";
  return os.str();
}

}  // namespace

NonpositiveDenominator::NonpositiveDenominator(int index, double value)
    : std::domain_error(describe(index, value)), index_(index), value_(value) {}

FProducts::FProducts(const RateSchedule& s) : last_state_(s.last_state()) {
  const int n_max = last_state_ - 1;
  f_.reserve(static_cast<std::size_t>(n_max) + 2);
  sum_.reserve(static_cast<std::size_t>(n_max) + 2);
  f_.push_back(1.0);
  sum_.push_back(0.0);

  double f = 1.0;
  double sum = 0.0;
  double carry = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double next_birth = s.birth(n + 1);
    if (next_birth == 0.0) throw std::domain_error("f products: b_" + std::to_string(n + 1) + " is zero");
    if (s.death(n + 2) == 0.0) throw std::domain_error("f products: d_" + std::to_string(n + 2) + " is zero");
    f *= s.birth(n) * s.death(n + 2) / (next_birth * next_birth);
    if (!std::isfinite(f)) throw std::overflow_error("f products overflow at n = " + std::to_string(n));

    const double term = f * next_birth / s.death(n + 2);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;

    f_.push_back(f);
    sum_.push_back(sum + carry);
  }
}

double FProducts::max_f() const { return *std::max_element(f_.begin(), f_.end()); }

double riccati_particular(const RateSchedule& s, int n) {
  if (n < 0 || n > s.last_state() - 1) throw std::out_of_range("riccati index " + std::to_string(n));
  return (1.0 - s.birth(n + 1)) / s.birth(n);
}

RiccatiSequence riccati_particular_sequence(const RateSchedule& s) {
  RiccatiSequence seq{std::vector<double>(static_cast<std::size_t>(s.last_state())), s.label()};
  for (int n = 0; n < s.last_state(); ++n) seq.y[n] = riccati_particular(s, n);
  return seq;
}

double riccati_anchor(const FProducts& fp, DParameter d) {
  if (d.is_infinite()) return d.value();
  return (d.value() - fp.partial_sum(0)) / fp.f(0);
}

RiccatiSequence riccati_general(const RateSchedule& s, DParameter d) {
  return riccati_general(s, FProducts(s), d);
}

RiccatiSequence riccati_general(const RateSchedule& s, const FProducts& fp, DParameter d) {
  RiccatiSequence seq = riccati_particular_sequence(s);
  if (d.is_infinite()) return seq;
  const double anchor = riccati_anchor(fp, d);
  for (int n = 0; n < s.last_state(); ++n) {
    const double denom = anchor - fp.partial_sum(n - 1);
    if (denom == 0.0 || !std::isfinite(denom)) throw NonpositiveDenominator(n, denom);
    seq.y[n] += fp.f(n - 1) / denom;
  }
  return seq;
}

RiccatiSequence riccati_general_unshifted(const RateSchedule& s, DParameter d) {
  RiccatiSequence seq = riccati_particular_sequence(s);
  if (d.is_infinite()) return seq;
  const FProducts fp(s);
  for (int n = 0; n < s.last_state(); ++n) {
    const double denom = d.value() - fp.partial_sum(n);
    if (denom == 0.0) throw NonpositiveDenominator(n, denom);
    seq.y[n] += fp.f(n) / denom;
  }
  return seq;
}

double riccati_residual(const RateSchedule& s, const RiccatiSequence& y, int n) {
  if (n < 1 || n > s.last_state() - 1 || static_cast<std::size_t>(n) >= y.size()) {
    throw std::out_of_range("riccati residual index " + std::to_string(n));
  }
  const double prev_birth = s.birth(n - 1);
  const double birth = s.birth(n);
  const double one_minus_sigma = 1.0 - s.sigma(n + 1);
  const double rhs = prev_birth * y[n] * y[n - 1] - (prev_birth / birth) * one_minus_sigma * y[n - 1] +
                     s.death(n + 1) + one_minus_sigma / birth;
  return y[n] - rhs;
}

double max_riccati_residual(const RateSchedule& s, const RiccatiSequence& y) {
  double worst = 0.0;
  for (int n = 1; n <= s.last_state() - 1; ++n) worst = std::max(worst, std::abs(riccati_residual(s, y, n)));
  return worst;
}

RiccatiSequence distribution_to_riccati(const Distribution& p, const RateSchedule& s) {
  if (p.last_state() != s.last_state()) {
    throw std::invalid_argument("distribution and schedule have different state counts");
  }
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (!(p[n] > 0.0)) {
      throw std::domain_error("distribution_to_riccati: p_" + std::to_string(n) + " is not strictly positive");
    }
  }
  RiccatiSequence seq{std::vector<double>(static_cast<std::size_t>(s.last_state())), s.label()};
  for (int n = 1; n <= s.last_state(); ++n) {
    seq.y[n - 1] = p[n - 1] / p[n] + (1.0 - s.sigma(n)) / s.birth(n - 1);
  }
  return seq;
}

Distribution riccati_to_distribution(const RiccatiSequence& y, const RateSchedule& s) {
  if (static_cast<int>(y.size()) != s.last_state()) {
    throw std::invalid_argument("riccati sequence length must equal N");
  }
  std::vector<double> weights(static_cast<std::size_t>(s.num_states()));
  weights[0] = 1.0;
  for (int n = 0; n < s.last_state(); ++n) {
    const double pivot = y[n] + (s.sigma(n + 1) - 1.0) / s.birth(n);
    if (!(pivot > 0.0)) throw NonpositiveDenominator(n, pivot);
    weights[n + 1] = weights[n] / pivot;
  }
  return Distribution::from_weights(std::move(weights), Provenance{Source::riccati, std::nullopt});
}

}  // namespace mastereq
