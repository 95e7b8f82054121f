#include "mastereq/rate_schedule.hpp"

#include <cmath>
#include <sstream>

namespace mastereq {

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void validate_entries(const std::vector<double>& rates, const char* name) {
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!std::isfinite(rates[i]) || rates[i] < 0.0) {
      throw InvalidSchedule(std::string(name) + " rate at index " + std::to_string(i) +
                                " is negative or not finite (" + format_number(rates[i]) + ")",
                            static_cast<int>(i));
    }
  }
}

}  // namespace

RateSchedule::RateSchedule(int last_state, std::vector<double> birth, std::vector<double> death,
                           std::string label, ScheduleFamily family)
    : last_state_(last_state),
      birth_(std::move(birth)),
      death_(std::move(death)),
      label_(std::move(label)),
      family_(family) {
  if (last_state_ < 1) {
    throw InvalidSchedule("last state N must be >= 1, got " + std::to_string(last_state_));
  }
  const auto birth_len = static_cast<std::size_t>(last_state_) + 2;
  const auto death_len = static_cast<std::size_t>(last_state_) + 3;
  if (birth_.size() < birth_len) {
    throw InvalidSchedule("birth array needs " + std::to_string(birth_len) + " entries (indices 0..N+1), got " +
                          std::to_string(birth_.size()));
  }
  if (death_.size() < death_len) {
    throw InvalidSchedule("death array needs " + std::to_string(death_len) + " entries (indices 0..N+2), got " +
                          std::to_string(death_.size()));
  }
  birth_.resize(birth_len);
  death_.resize(death_len);
  validate_entries(birth_, "birth");
  validate_entries(death_, "death");
  for (int i = 0; i < last_state_; ++i) {
    if (birth_[i] == 0.0) throw InvalidSchedule("birth rate b_" + std::to_string(i) + " must be positive", i);
  }
  for (int i = 1; i <= last_state_; ++i) {
    if (death_[i] == 0.0) throw InvalidSchedule("death rate d_" + std::to_string(i) + " must be positive", i);
  }
}

double RateSchedule::birth(int i) const {
  if (i == -1) return 0.0;
  if (i < -1 || i > last_state_ + 1) throw std::out_of_range("birth index " + std::to_string(i));
  return birth_[static_cast<std::size_t>(i)];
}

double RateSchedule::death(int i) const {
  if (i == 0) return 0.0;
  if (i < 0 || i > last_state_ + 2) throw std::out_of_range("death index " + std::to_string(i));
  return death_[static_cast<std::size_t>(i)];
}

RateSchedule make_constant(double rate, int last_state) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw InvalidSchedule("constant rate must lie in (0, 1), got " + format_number(rate));
  }
  if (last_state < 1) throw InvalidSchedule("last state N must be >= 1");
  return RateSchedule(last_state, std::vector<double>(last_state + 2, rate),
                      std::vector<double>(last_state + 3, rate), "constant", family::Constant{rate});
}

RateSchedule make_asymmetric(double epsilon, int last_state) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidSchedule("epsilon must lie in (0, 1), got " + format_number(epsilon));
  }
  if (last_state < 1) throw InvalidSchedule("last state N must be >= 1");
  const family::Asymmetric fam{epsilon};
  const double b = 0.5 * (1.0 + epsilon);
  const double d = 0.5 * (1.0 - epsilon);
  return RateSchedule(last_state, std::vector<double>(last_state + 2, b),
                      std::vector<double>(last_state + 3, d),
                      "asymmetric(epsilon=" + format_number(epsilon) + ", q=" + format_number(fam.q()) + ")",
                      fam);
}

RateSchedule make_offset_exponential(double birth_offset, double birth_decay, double death_offset,
                                     double death_decay, double power, int last_state) {
  if (power != 1.0 && power != 0.5) {
    throw InvalidSchedule("power must be 1 or 1/2, got " + format_number(power));
  }
  if (!(birth_decay > 0.0) || !(death_decay > 0.0)) throw InvalidSchedule("decay constants must be positive");
  if (!(birth_offset >= 0.0) || !(death_offset >= 0.0)) throw InvalidSchedule("offsets must be nonnegative");
  if (last_state < 1) throw InvalidSchedule("last state N must be >= 1");

  auto rate = [power](double offset, double decay, int i) {
    const double x = power == 1.0 ? static_cast<double>(i) : std::sqrt(static_cast<double>(i));
    return offset + std::exp(-decay * x);
  };
  std::vector<double> birth(last_state + 2);
  std::vector<double> death(last_state + 3);
  for (int i = 0; i < static_cast<int>(birth.size()); ++i) {
    birth[i] = rate(birth_offset, birth_decay, i);
    if (birth[i] == 0.0) throw InvalidSchedule("birth rate underflows to zero at index " + std::to_string(i), i);
  }
  for (int i = 0; i < static_cast<int>(death.size()); ++i) {
    death[i] = rate(death_offset, death_decay, i);
    if (death[i] == 0.0) throw InvalidSchedule("death rate underflows to zero at index " + std::to_string(i), i);
  }
  const std::string x = power == 1.0 ? "i" : "i^(1/2)";
  std::string label = "offset_exponential(b_i=" + format_number(birth_offset) + "+exp(-" +
                      format_number(birth_decay) + "*" + x + "), d_i=" + format_number(death_offset) + "+exp(-" +
                      format_number(death_decay) + "*" + x + "))";
  return RateSchedule(last_state, std::move(birth), std::move(death), std::move(label),
                      family::OffsetExponential{birth_offset, birth_decay, death_offset, death_decay, power});
}

RateSchedule make_explicit(int last_state, std::vector<double> birth, std::vector<double> death,
                           std::string label) {
  return RateSchedule(last_state, std::move(birth), std::move(death), std::move(label), family::Explicit{});
}

PositivityReport check_positivity_condition(const RateSchedule& s) {
  PositivityReport report;
  for (int i = 1; i <= s.last_state() - 1; ++i) {
    PositivityCheck c{i, s.birth(i) / s.death(i + 1), s.birth(i - 1) / s.death(i), false};
    c.holds = c.current_ratio >= c.previous_ratio;
    report.verdict = report.verdict && c.holds;
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace mastereq
