#ifndef MASTEREQ_SSA_HPP
#define MASTEREQ_SSA_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "mastereq/distribution.hpp"
#include "mastereq/rate_schedule.hpp"

namespace mastereq {

/// Seedable stream with a fixed algorithm (mt19937_64). Uniform draws use the
/// raw 64-bit output, so sequences do not depend on the standard library's
/// distribution implementations. split() derives independent child streams
/// through SplitMix64.
class RandomStream {
 public:
  static constexpr const char* algorithm = "mt19937_64/splitmix64";

  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Exponential with the given rate.
  double exponential(double rate);
  RandomStream split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct Jump {
  double time;
  int state;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Piecewise-constant path. The first record is (0, n0); each later record
/// is a jump. The path holds its last state until end_time.
struct Trajectory {
  std::vector<Jump> events;
  double end_time = 0.0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::string schedule_label;
  /// Set when the chain reached a state with zero total rate.
  bool frozen = false;

  std::size_t jump_count() const { return events.empty() ? 0 : events.size() - 1; }
};

/// Exact SSA of the birth-death chain on 0..N (no birth out of N).
Trajectory gillespie_run(const RateSchedule& s, int initial_state, double t_max, std::uint64_t seed);

/// Time-weighted occupation fractions over [burn_in, end_time].
Distribution empirical_stationary(const Trajectory& tr, int last_state, double burn_in);

/// CSV with header "time,state".
void write_trajectory_csv(std::ostream& out, const Trajectory& tr);

}  // namespace mastereq

#endif  // MASTEREQ_SSA_HPP
