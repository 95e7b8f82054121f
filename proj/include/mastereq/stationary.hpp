#ifndef MASTEREQ_STATIONARY_HPP
#define MASTEREQ_STATIONARY_HPP

#include <vector>

#include "mastereq/distribution.hpp"
#include "mastereq/rate_schedule.hpp"
#include "mastereq/riccati.hpp"

namespace mastereq {

/// p_n = P_0 prod_{j<n} b_j / d_{j+1}, the detailed-balance solution.
Distribution classical_stationary(const RateSchedule& s);

/// Multiplicative correction to the ratio b_i/d_{i+1} carried by the
/// parametric solution, 0 <= i <= N-1:
///
///   r_i(D) = 1 + a_i / (|E| + S_{i-1} - a_i),   a_i = f_{i-1} b_i / d_{i+1},
///
/// with E = riccati_anchor(D). This is exactly the ratio
/// P_{i+1}(D)/P_i(D) divided by b_i/d_{i+1} implied by riccati_general.
/// Exactly 1 for the sentinel. Throws NonpositiveDenominator(i) when the
/// denominator is not positive.
double renormalization_factor(const RateSchedule& s, DParameter d, int i);

/// r_0..r_{N-1}, validated front to back; the first bad index is reported.
std::vector<double> renormalization_factors(const RateSchedule& s, const FProducts& fp, DParameter d);

/// p_n(D) = P~_0 prod_{i<n} (b_i / d_{i+1}) r_i(D), accumulated left to right.
/// The sentinel returns classical_stationary relabelled as parametric(-inf).
Distribution parametric_stationary(const RateSchedule& s, DParameter d);
Distribution parametric_stationary(const RateSchedule& s, const FProducts& fp, DParameter d);

/// Schedule with b'_i = b_i r_i(D) on 0..N-1 and d unchanged; parametric
/// stationary(s, D) is its detailed-balance distribution.
RateSchedule effective_schedule(const RateSchedule& s, DParameter d);

/// Equal-rate chain: p_k = (1 + k/|D|) / ((N+1)(1 + N/(2|D|))).
Distribution constant_case_closed_form(double rate, int last_state, DParameter d);

/// b = (1+eps)/2, d = (1-eps)/2, q = (1-eps)/(1+eps):
///   p_n ~ q^{-n} prod_{i<n} ((1-q)(|D| + q^i) + 1 - q^i) / ((1-q)|D| + 1 - q^i)
/// normalised by direct summation.
Distribution asymmetric_closed_form(double epsilon, int last_state, DParameter d);

}  // namespace mastereq

#endif  // MASTEREQ_STATIONARY_HPP
