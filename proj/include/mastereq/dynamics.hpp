#ifndef MASTEREQ_DYNAMICS_HPP
#define MASTEREQ_DYNAMICS_HPP

#include <functional>
#include <span>
#include <vector>

#include "mastereq/distribution.hpp"
#include "mastereq/rate_schedule.hpp"

namespace mastereq {

/// Tridiagonal master-equation generator on states 0..N with a reflecting
/// upper boundary (no birth out of N) and b_{-1} = d_0 = 0:
///
///   dp_n/dt = up(n-1) p_{n-1} - outflow(n) p_n + down(n+1) p_{n+1}
class Generator {
 public:
  explicit Generator(const RateSchedule& s);
  /// Raw rates: up[n] for n -> n+1 (0 <= n < N), down[n-1] for n -> n-1
  /// (1 <= n <= N). Outflow is their sum per state.
  Generator(std::vector<double> up, std::vector<double> down);

  int last_state() const { return last_state_; }
  /// Rate of n -> n+1, for 0 <= n <= N-1.
  double up(int n) const { return up_.at(static_cast<std::size_t>(n)); }
  /// Rate of n -> n-1, for 1 <= n <= N.
  double down(int n) const { return down_.at(static_cast<std::size_t>(n - 1)); }
  /// Total outflow of state n.
  double outflow(int n) const { return outflow_.at(static_cast<std::size_t>(n)); }
  double max_outflow() const;

  /// dp/dt for the given p.
  std::vector<double> apply(std::span<const double> p) const;

 private:
  int last_state_;
  std::vector<double> up_;
  std::vector<double> down_;
  std::vector<double> outflow_;
};

inline Generator build_generator(const RateSchedule& s) { return Generator(s); }

/// max_n |dp_n/dt|.
double stationarity_residual(const Generator& g, const Distribution& p);

/// Unique stationary vector by backward tridiagonal elimination of rows
/// 1..N with p_0 pinned to 1, then normalised. Throws on a reducible chain.
Distribution null_space_stationary(const Generator& g);

/// J_n = b_{n-1} p_{n-1} - d_n p_n across the bond (n-1, n), 1 <= n <= N.
double probability_current(const RateSchedule& s, const Distribution& p, int n);
/// J_1..J_N.
std::vector<double> current_profile(const RateSchedule& s, const Distribution& p);

using EvolveObserver = std::function<void(double t, std::span<const double> p)>;

/// Largest step evolve accepts: 0.1 / max outflow.
double max_stable_step(const Generator& g);

/// Fixed-step classical Runge-Kutta on dp/dt = Q p up to t_final. The step
/// actually taken is t_final / ceil(t_final / dt). The observer, if any, sees
/// the state at t = 0 and after every step.
Distribution evolve(const Generator& g, const Distribution& p0, double t_final, double dt,
                    const EvolveObserver& observer = {});

}  // namespace mastereq

#endif  // MASTEREQ_DYNAMICS_HPP
