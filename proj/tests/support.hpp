#ifndef MASTEREQ_TESTS_SUPPORT_HPP
#define MASTEREQ_TESTS_SUPPORT_HPP

// Shared fixtures and brute-force oracles. Nothing here calls into the
// library's numeric routines; it only reads rates through the schedule
// accessors.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mastereq/distribution.hpp"
#include "mastereq/rate_schedule.hpp"

namespace mastereq::testing {

inline RateSchedule random_explicit(int last_state, std::uint64_t seed, double lo = 0.4, double hi = 0.6) {
  std::mt19937_64 rng(seed);
  auto draw = [&] { return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  std::vector<double> b(last_state + 2);
  std::vector<double> d(last_state + 3);
  for (auto& x : b) x = draw();
  for (auto& x : d) x = draw();
  return make_explicit(last_state, b, d, "random(seed=" + std::to_string(seed) + ")");
}

struct NamedSchedule {
  std::string name;
  RateSchedule schedule;
};

/// constant, asymmetric, three offset-exponential figure schedules, and one
/// random explicit schedule.
inline std::vector<NamedSchedule> builtin_schedules() {
  return {
      {"constant", make_constant(0.5, 20)},
      {"asymmetric", make_asymmetric(0.02, 100)},
      {"figure3", make_offset_exponential(0.1, 0.12, 0.1, 0.15, 1.0, 100)},
      {"figure4", make_offset_exponential(0.0, 0.12, 0.0, 0.15, 0.5, 100)},
      {"figure5", make_offset_exponential(0.01, 0.15, 0.01, 0.12, 1.0, 100)},
      {"random", random_explicit(50, 12345)},
  };
}

inline std::vector<DParameter> d_grid() {
  return {DParameter::finite(-4), DParameter::finite(-40), DParameter::finite(-1000), DParameter::finite(-4000),
          DParameter::finite(-1e6)};
}

/// f_n from scratch in long double.
inline long double direct_f(const RateSchedule& s, int n) {
  long double f = 1.0L;
  for (int i = 0; i <= n; ++i) {
    const long double b_next = s.birth(i + 1);
    f *= static_cast<long double>(s.birth(i)) * s.death(i + 2) / (b_next * b_next);
  }
  return f;
}

/// S_n from scratch in long double.
inline long double direct_partial_sum(const RateSchedule& s, int n) {
  long double sum = 0.0L;
  for (int k = 0; k <= n; ++k) sum += direct_f(s, k) * s.birth(k + 1) / s.death(k + 2);
  return sum;
}

/// prod_{j<n} b_j/d_{j+1}, normalised, in long double.
inline std::vector<double> direct_classical(const RateSchedule& s) {
  std::vector<long double> w(s.num_states());
  long double total = 0.0L;
  for (int n = 0; n <= s.last_state(); ++n) {
    long double v = 1.0L;
    for (int j = 0; j < n; ++j) v *= static_cast<long double>(s.birth(j)) / s.death(j + 1);
    w[n] = v;
    total += v;
  }
  std::vector<double> p(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) p[n] = static_cast<double>(w[n] / total);
  return p;
}

inline Distribution point_mass(int last_state, int at) {
  std::vector<double> p(last_state + 1, 0.0);
  p[at] = 1.0;
  return Distribution{p, 1.0, Provenance{Source::oracle, std::nullopt}};
}

inline Distribution uniform(int last_state) {
  return Distribution{std::vector<double>(last_state + 1, 1.0 / (last_state + 1)), 1.0,
                      Provenance{Source::oracle, std::nullopt}};
}

inline Distribution random_positive(int last_state, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> w(last_state + 1);
  for (auto& x : w) x = 0.05 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return Distribution::from_weights(w, Provenance{Source::oracle, std::nullopt});
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace mastereq::testing

#endif  // MASTEREQ_TESTS_SUPPORT_HPP
