#ifndef MASTEREQ_RICCATI_HPP
#define MASTEREQ_RICCATI_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "mastereq/distribution.hpp"
#include "mastereq/rate_schedule.hpp"

namespace mastereq {

/// A factor or pivot that must be positive is not. Carries the first
/// offending index; for a parametric solution this means the (schedule, D)
/// pair has no positive stationary distribution.
class NonpositiveDenominator : public std::domain_error {
 public:
  NonpositiveDenominator(int index, double value);

  int index() const { return index_; }
  double value() const { return value_; }

 private:
  int index_;
  double value_;
};

/// Products f_n = prod_{i=0..n} b_i d_{i+2} / b_{i+1}^2 and partial sums
/// S_n = sum_{k=0..n} f_k b_{k+1} / d_{k+2}, for n in [-1, N-1] with
/// f_{-1} = 1 and S_{-1} = 0. Built once per schedule by recurrence; S is
/// accumulated with compensated summation.
class FProducts {
 public:
  explicit FProducts(const RateSchedule& s);

  int last_state() const { return last_state_; }
  double f(int n) const { return f_.at(static_cast<std::size_t>(n + 1)); }
  double partial_sum(int n) const { return sum_.at(static_cast<std::size_t>(n + 1)); }
  double max_f() const;

 private:
  int last_state_;
  std::vector<double> f_;
  std::vector<double> sum_;
};

inline FProducts f_products(const RateSchedule& s) { return FProducts(s); }

/// y_0..y_{N-1}.
struct RiccatiSequence {
  std::vector<double> y;
  std::string schedule_label;

  std::size_t size() const { return y.size(); }
  double operator[](std::size_t n) const { return y[n]; }
};

/// Particular solution y0_n = (1 - b_{n+1}) / b_n, 0 <= n <= N-1. It maps
/// to the detailed-balance stationary distribution.
double riccati_particular(const RateSchedule& s, int n);
RiccatiSequence riccati_particular_sequence(const RateSchedule& s);

/// Constant E in the one-parameter correction
///
///   y_n = y0_n + f_{n-1} / (E - S_{n-1}),   E = (D - S_0) / f_0.
///
/// Linearising the recurrence about y0 shows that the correction term at n
/// carries f_{n-1} and S_{n-1}. E is pinned so that y_0 equals
/// y0_0 + f_0 / (D - S_0). When f is geometric (constant-ratio rates) the
/// whole sequence then coincides with y0_n + f_n / (D - S_n).
/// Returns -inf for the sentinel.
double riccati_anchor(const FProducts& fp, DParameter d);

/// General one-parameter solution; exactly y0 for the -infinity sentinel.
RiccatiSequence riccati_general(const RateSchedule& s, DParameter d);
RiccatiSequence riccati_general(const RateSchedule& s, const FProducts& fp, DParameter d);

/// y0_n + f_n / (D - S_n) with both indices taken at n. Only solves the
/// recurrence when f is geometric; kept as a diagnostic.
RiccatiSequence riccati_general_unshifted(const RateSchedule& s, DParameter d);

/// LHS - RHS of
///   y_n = b_{n-1} y_n y_{n-1} - (b_{n-1}/b_n)(1 - sigma_{n+1}) y_{n-1}
///         + d_{n+1} + (1 - sigma_{n+1}) / b_n
/// for 1 <= n <= N-1.
double riccati_residual(const RateSchedule& s, const RiccatiSequence& y, int n);

/// max_n |riccati_residual| over 1..N-1.
double max_riccati_residual(const RateSchedule& s, const RiccatiSequence& y);

/// y_{n-1} = p_{n-1}/p_n + (1 - sigma_n)/b_{n-1}, n = 1..N. Requires p > 0.
RiccatiSequence distribution_to_riccati(const Distribution& p, const RateSchedule& s);

/// Inverse map: p_{n+1} = p_n / (y_n + (sigma_{n+1} - 1)/b_n) from p_0 = 1,
/// then normalised. Throws NonpositiveDenominator on a nonpositive pivot.
Distribution riccati_to_distribution(const RiccatiSequence& y, const RateSchedule& s);

}  // namespace mastereq

#endif  // MASTEREQ_RICCATI_HPP
