#include "mastereq/distribution.hpp"

#include <sstream>

namespace mastereq {

std::string DParameter::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

std::string Provenance::to_string() const {
  std::string name;
  switch (source) {
    case Source::classical: name = "classical"; break;
    case Source::parametric: name = "parametric"; break;
    case Source::closed_form_constant: name = "closed_form_constant"; break;
    case Source::closed_form_asymmetric: name = "closed_form_asymmetric"; break;
    case Source::oracle: name = "oracle"; break;
    case Source::empirical: name = "empirical"; break;
    case Source::riccati: name = "riccati"; break;
  }
  if (d) name += "(D=" + d->to_string() + ")";
  return name;
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

Distribution Distribution::from_weights(std::vector<double> weights, Provenance provenance) {
  const double total = compensated_sum(weights);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::domain_error("weights do not have a positive finite sum");
  }
  const double scale = 1.0 / total;
  for (double& w : weights) w /= total;
  return Distribution{std::move(weights), scale, provenance};
}

double total_variation(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: distributions differ in size");
  std::vector<double> diffs(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) diffs[n] = std::abs(p[n] - q[n]);
  return 0.5 * compensated_sum(diffs);
}

double max_abs_difference(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("max_abs_difference: distributions differ in size");
  double worst = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) worst = std::max(worst, std::abs(p[n] - q[n]));
  return worst;
}

}  // namespace mastereq
