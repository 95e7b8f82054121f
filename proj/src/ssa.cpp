#include "mastereq/ssa.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mastereq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double RandomStream::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

RandomStream RandomStream::split(std::uint64_t stream) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(stream)));
}

Trajectory gillespie_run(const RateSchedule& s, int initial_state, double t_max, std::uint64_t seed) {
  const int n_last = s.last_state();
  if (initial_state < 0 || initial_state > n_last) throw std::out_of_range("initial state outside 0..N");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  Trajectory tr;
  tr.seed = seed;
  tr.rng_algorithm = RandomStream::algorithm;
  tr.schedule_label = s.label();
  tr.events.push_back({0.0, initial_state});

  RandomStream rng(seed);
  double t = 0.0;
  int state = initial_state;
  while (true) {
    const double up = state < n_last ? s.birth(state) : 0.0;
    const double down = s.death(state);
    const double total = up + down;
    if (total <= 0.0) {
      tr.frozen = true;
      break;
    }
    const double wait = rng.exponential(total);
    if (t + wait >= t_max) break;
    t += wait;
    state += rng.uniform() * total < up ? 1 : -1;
    tr.events.push_back({t, state});
  }
  tr.end_time = tr.frozen ? t : t_max;
  return tr;
}

Distribution empirical_stationary(const Trajectory& tr, int last_state, double burn_in) {
  if (tr.events.empty()) throw std::invalid_argument("empirical_stationary: empty trajectory");
  if (!(burn_in >= 0.0) || burn_in >= tr.end_time) {
    throw std::invalid_argument("empirical_stationary: burn-in leaves an empty window");
  }
  std::vector<double> occupancy(static_cast<std::size_t>(last_state) + 1, 0.0);
  for (std::size_t i = 0; i < tr.events.size(); ++i) {
    const double start = std::max(tr.events[i].time, burn_in);
    const double stop = i + 1 < tr.events.size() ? tr.events[i + 1].time : tr.end_time;
    if (stop <= start) continue;
    const int state = tr.events[i].state;
    if (state < 0 || state > last_state) throw std::out_of_range("trajectory state outside 0..N");
    occupancy[static_cast<std::size_t>(state)] += stop - start;
  }
  return Distribution::from_weights(std::move(occupancy), Provenance{Source::empirical, std::nullopt});
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  const auto old_precision = out.precision(17);
  out << "time,state\n";
  for (const Jump& j : tr.events) out << j.time << ',' << j.state << '\n';
  out.precision(old_precision);
}

}  // namespace mastereq
