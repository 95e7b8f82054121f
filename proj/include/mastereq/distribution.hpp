#ifndef MASTEREQ_DISTRIBUTION_HPP
#define MASTEREQ_DISTRIBUTION_HPP

#include <cmath>
#include <compare>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mastereq {

/// The free constant D of the parametric family. Finite values must be
/// strictly negative; D -> -infinity is a distinguished value rather than a
/// large float so that the limiting branch is exact.
class DParameter {
 public:
  static DParameter finite(double value) {
    if (!std::isfinite(value) || !(value < 0.0)) {
      throw std::invalid_argument("D must be a finite negative number or -infinity");
    }
    return DParameter(value);
  }
  static DParameter negative_infinity() { return DParameter(-std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(value_); }
  /// D itself; -inf for the sentinel.
  double value() const { return value_; }
  /// |D|; +inf for the sentinel.
  double magnitude() const { return -value_; }

  /// "inf" for the sentinel, otherwise D with 17 significant digits.
  std::string to_string() const;

  friend auto operator<=>(const DParameter&, const DParameter&) = default;

 private:
  explicit DParameter(double v) : value_(v) {}
  double value_;
};

enum class Source { classical, parametric, closed_form_constant, closed_form_asymmetric, oracle, empirical, riccati };

struct Provenance {
  Source source;
  std::optional<DParameter> d;

  std::string to_string() const;
};

/// Normalised probability vector over states 0..N.
struct Distribution {
  std::vector<double> p;
  /// Prefactor that turns the unnormalised weights (w_0 = 1 convention) into p.
  double norm_constant = 1.0;
  Provenance provenance{Source::oracle, std::nullopt};

  int last_state() const { return static_cast<int>(p.size()) - 1; }
  std::size_t size() const { return p.size(); }
  double operator[](std::size_t n) const { return p[n]; }

  /// Normalises nonnegative weights by a compensated sum. norm_constant is
  /// 1/sum(weights).
  static Distribution from_weights(std::vector<double> weights, Provenance provenance);
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

/// 1/2 * sum |p_n - q_n|.
double total_variation(const Distribution& p, const Distribution& q);

double max_abs_difference(const Distribution& p, const Distribution& q);

}  // namespace mastereq

#endif  // MASTEREQ_DISTRIBUTION_HPP
