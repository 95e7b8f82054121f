#include "mastereq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mastereq {

Generator::Generator(const RateSchedule& s) : last_state_(s.last_state()) {
  const int n_last = last_state_;
  up_.resize(static_cast<std::size_t>(n_last));
  down_.resize(static_cast<std::size_t>(n_last));
  outflow_.resize(static_cast<std::size_t>(n_last) + 1);
  for (int n = 0; n < n_last; ++n) up_[n] = s.birth(n);
  for (int n = 1; n <= n_last; ++n) down_[n - 1] = s.death(n);
  for (int n = 0; n <= n_last; ++n) {
    const double birth = n < n_last ? s.birth(n) : 0.0;
    outflow_[n] = birth + s.death(n);
  }
}

Generator::Generator(std::vector<double> up, std::vector<double> down)
    : last_state_(static_cast<int>(up.size())), up_(std::move(up)), down_(std::move(down)) {
  if (up_.empty() || up_.size() != down_.size()) throw std::invalid_argument("generator: need N up and N down rates");
  outflow_.assign(up_.size() + 1, 0.0);
  for (std::size_t n = 0; n < up_.size(); ++n) {
    if (up_[n] < 0.0 || down_[n] < 0.0) throw std::invalid_argument("generator: negative rate");
    outflow_[n] += up_[n];
    outflow_[n + 1] += down_[n];
  }
}

double Generator::max_outflow() const { return *std::max_element(outflow_.begin(), outflow_.end()); }

std::vector<double> Generator::apply(std::span<const double> p) const {
  if (p.size() != outflow_.size()) throw std::invalid_argument("generator: dimension mismatch");
  const int n_last = last_state_;
  std::vector<double> dp(p.size());
  for (int n = 0; n <= n_last; ++n) {
    double v = -outflow_[n] * p[n];
    if (n > 0) v += up_[n - 1] * p[n - 1];
    if (n < n_last) v += down_[n] * p[n + 1];
    dp[n] = v;
  }
  return dp;
}

double stationarity_residual(const Generator& g, const Distribution& p) {
  const std::vector<double> dp = g.apply(p.p);
  double worst = 0.0;
  for (double v : dp) worst = std::max(worst, std::abs(v));
  return worst;
}

Distribution null_space_stationary(const Generator& g) {
  const int n_last = g.last_state();
  for (int n = 0; n < n_last; ++n) {
    if (!(g.up(n) > 0.0) || !(g.down(n + 1) > 0.0)) {
      throw std::domain_error("null_space_stationary: chain is reducible at bond " + std::to_string(n) + "-" +
                              std::to_string(n + 1));
    }
  }
  // Row n (1 <= n <= N): up(n-1) p_{n-1} - outflow(n) p_n + down(n+1) p_{n+1} = 0.
  // Eliminating from the bottom row gives p_n = c_n p_{n-1}.
  std::vector<double> ratio(static_cast<std::size_t>(n_last) + 1, 0.0);
  ratio[n_last] = g.up(n_last - 1) / g.outflow(n_last);
  for (int n = n_last - 1; n >= 1; --n) {
    const double pivot = g.outflow(n) - g.down(n + 1) * ratio[n + 1];
    if (!(pivot > 0.0)) throw std::domain_error("null_space_stationary: elimination broke down");
    ratio[n] = g.up(n - 1) / pivot;
  }
  std::vector<double> w(static_cast<std::size_t>(n_last) + 1);
  w[0] = 1.0;
  for (int n = 1; n <= n_last; ++n) w[n] = w[n - 1] * ratio[n];
  return Distribution::from_weights(std::move(w), Provenance{Source::oracle, std::nullopt});
}

double probability_current(const RateSchedule& s, const Distribution& p, int n) {
  if (p.last_state() != s.last_state()) throw std::invalid_argument("probability_current: dimension mismatch");
  if (n < 1 || n > s.last_state()) throw std::out_of_range("bond index " + std::to_string(n));
  return s.birth(n - 1) * p[n - 1] - s.death(n) * p[n];
}

std::vector<double> current_profile(const RateSchedule& s, const Distribution& p) {
  std::vector<double> j(static_cast<std::size_t>(s.last_state()));
  for (int n = 1; n <= s.last_state(); ++n) j[n - 1] = probability_current(s, p, n);
  return j;
}

double max_stable_step(const Generator& g) { return 0.1 / g.max_outflow(); }

Distribution evolve(const Generator& g, const Distribution& p0, double t_final, double dt,
                    const EvolveObserver& observer) {
  if (p0.last_state() != g.last_state()) throw std::invalid_argument("evolve: dimension mismatch");
  if (!(t_final >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("evolve: need t_final >= 0 and dt > 0");
  if (dt > max_stable_step(g)) throw std::invalid_argument("evolve: dt exceeds 0.1 / max outflow");

  const auto steps = static_cast<long long>(std::ceil(t_final / dt));
  const double h = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
  const std::size_t size = p0.size();

  std::vector<double> p = p0.p;
  std::vector<double> stage(size);
  if (observer) observer(0.0, p);
  for (long long step = 0; step < steps; ++step) {
    const std::vector<double> k1 = g.apply(p);
    for (std::size_t i = 0; i < size; ++i) stage[i] = p[i] + 0.5 * h * k1[i];
    const std::vector<double> k2 = g.apply(stage);
    for (std::size_t i = 0; i < size; ++i) stage[i] = p[i] + 0.5 * h * k2[i];
    const std::vector<double> k3 = g.apply(stage);
    for (std::size_t i = 0; i < size; ++i) stage[i] = p[i] + h * k3[i];
    const std::vector<double> k4 = g.apply(stage);
    for (std::size_t i = 0; i < size; ++i) p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (observer) observer(static_cast<double>(step + 1) * h, p);
  }
  return Distribution{std::move(p), p0.norm_constant, p0.provenance};
}

}  // namespace mastereq
