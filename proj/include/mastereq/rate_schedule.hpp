#ifndef MASTEREQ_RATE_SCHEDULE_HPP
#define MASTEREQ_RATE_SCHEDULE_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mastereq {

/// Raised when a schedule (or the document describing one) is unusable.
/// `index()` names the offending rate index when there is one.
class InvalidSchedule : public std::invalid_argument {
 public:
  explicit InvalidSchedule(const std::string& what, std::optional<int> index = std::nullopt)
      : std::invalid_argument(what), index_(index) {}

  std::optional<int> index() const { return index_; }

 private:
  std::optional<int> index_;
};

namespace family {

struct Constant {
  double rate;
};

struct Asymmetric {
  double epsilon;
  /// q = (1 - epsilon) / (1 + epsilon)
  double q() const { return (1.0 - epsilon) / (1.0 + epsilon); }
};

/// b_i = birth_offset + exp(-birth_decay * i^power), likewise for d.
struct OffsetExponential {
  double birth_offset;
  double birth_decay;
  double death_offset;
  double death_decay;
  double power;
};

struct Explicit {};

}  // namespace family

using ScheduleFamily =
    std::variant<family::Constant, family::Asymmetric, family::OffsetExponential, family::Explicit>;

/// Birth and death rates of a finite birth-death chain on states 0..N.
///
/// Birth rates are stored for indices 0..N+1 and death rates for 0..N+2, so
/// that every product and partial sum over the chain (which reaches b_{i+1}
/// and d_{i+2}) is defined. The accessors apply the boundary convention
/// b_{-1} = d_0 = 0 regardless of what is stored at death index 0.
///
/// Immutable after construction.
class RateSchedule {
 public:
  /// Validates and takes ownership of the arrays. Arrays longer than
  /// required are truncated; shorter arrays, negative or non-finite entries,
  /// and zero rates inside the chain raise InvalidSchedule.
  RateSchedule(int last_state, std::vector<double> birth, std::vector<double> death,
               std::string label, ScheduleFamily family = family::Explicit{});

  int last_state() const { return last_state_; }
  int num_states() const { return last_state_ + 1; }

  /// b_i for i in [-1, N+1]; b_{-1} = 0.
  double birth(int i) const;
  /// d_i for i in [0, N+2]; d_0 = 0.
  double death(int i) const;
  /// sigma_n = b_n + d_n with the accessor conventions.
  double sigma(int n) const { return birth(n) + death(n); }

  /// Value the family formula (or explicit array) holds at death index 0.
  /// Not part of the master equation.
  double stored_death_at_zero() const { return death_[0]; }

  std::span<const double> birth_rates() const { return birth_; }
  std::span<const double> death_rates() const { return death_; }

  const std::string& label() const { return label_; }
  const ScheduleFamily& family() const { return family_; }

  friend bool operator==(const RateSchedule& a, const RateSchedule& b) {
    return a.last_state_ == b.last_state_ && a.birth_ == b.birth_ && a.death_ == b.death_;
  }

 private:
  int last_state_;
  std::vector<double> birth_;
  std::vector<double> death_;
  std::string label_;
  ScheduleFamily family_;
};

/// b_i = d_i = rate everywhere, 0 < rate < 1.
RateSchedule make_constant(double rate, int last_state);

/// b = (1 + epsilon)/2, d = (1 - epsilon)/2, 0 < epsilon < 1.
RateSchedule make_asymmetric(double epsilon, int last_state);

/// Offset-exponential family; `power` must be 1 or 1/2.
RateSchedule make_offset_exponential(double birth_offset, double birth_decay, double death_offset,
                                     double death_decay, double power, int last_state);

RateSchedule make_explicit(int last_state, std::vector<double> birth, std::vector<double> death,
                           std::string label = "explicit");

struct PositivityCheck {
  int index;
  double current_ratio;   // b_i / d_{i+1}
  double previous_ratio;  // b_{i-1} / d_i
  bool holds;
};

/// Monotone-ratio condition b_i/d_{i+1} >= b_{i-1}/d_i for 1 <= i <= N-1.
/// Advisory only: a failure here does not by itself rule out a positive
/// parametric solution.
struct PositivityReport {
  std::vector<PositivityCheck> checks;
  bool verdict = true;
  bool advisory = true;
};

PositivityReport check_positivity_condition(const RateSchedule& s);

}  // namespace mastereq

#endif  // MASTEREQ_RATE_SCHEDULE_HPP
