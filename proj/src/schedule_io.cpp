#include "mastereq/schedule_io.hpp"

#include <fstream>

namespace mastereq {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidSchedule(std::string("schedule document is missing \"") + key + "\"");
  return doc.at(key);
}

double number(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_number()) throw InvalidSchedule(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

int last_state(const json& doc) {
  const json& v = require(doc, "N");
  if (!v.is_number_integer()) throw InvalidSchedule("\"N\" must be an integer");
  return v.get<int>();
}

std::vector<double> array(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_array()) throw InvalidSchedule(std::string("\"") + key + "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw InvalidSchedule(std::string("\"") + key + "\" entry " + std::to_string(i) + " is not a number",
                            static_cast<int>(i));
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

RateSchedule load_schedule(const json& doc) {
  if (!doc.is_object()) throw InvalidSchedule("schedule document must be an object");
  const json& kind_node = require(doc, "kind");
  if (!kind_node.is_string()) throw InvalidSchedule("\"kind\" must be a string");
  const auto kind = kind_node.get<std::string>();

  if (kind == "constant") return make_constant(number(doc, "b"), last_state(doc));
  if (kind == "asymmetric") return make_asymmetric(number(doc, "epsilon"), last_state(doc));
  if (kind == "offset_exponential") {
    return make_offset_exponential(number(doc, "c_b"), number(doc, "alpha_b"), number(doc, "c_d"),
                                   number(doc, "alpha_d"), number(doc, "power"), last_state(doc));
  }
  if (kind == "explicit") {
    std::string label = doc.contains("label") && doc["label"].is_string() ? doc["label"].get<std::string>()
                                                                          : "explicit";
    return make_explicit(last_state(doc), array(doc, "b"), array(doc, "d"), std::move(label));
  }
  throw InvalidSchedule("unknown schedule kind \"" + kind + "\"");
}

RateSchedule load_schedule_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSchedule("cannot open schedule file " + path.string());
  try {
    return load_schedule(json::parse(in));
  } catch (const json::exception& e) {
    throw InvalidSchedule("malformed schedule document " + path.string() + ": " + e.what());
  }
}

json save_schedule(const RateSchedule& s) {
  const int n = s.last_state();
  return std::visit(
      [&](const auto& fam) -> json {
        using F = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<F, family::Constant>) {
          return {{"kind", "constant"}, {"b", fam.rate}, {"N", n}};
        } else if constexpr (std::is_same_v<F, family::Asymmetric>) {
          return {{"kind", "asymmetric"}, {"epsilon", fam.epsilon}, {"N", n}};
        } else if constexpr (std::is_same_v<F, family::OffsetExponential>) {
          return {{"kind", "offset_exponential"},
                  {"c_b", fam.birth_offset},
                  {"alpha_b", fam.birth_decay},
                  {"c_d", fam.death_offset},
                  {"alpha_d", fam.death_decay},
                  {"power", fam.power},
                  {"N", n}};
        } else {
          auto b = s.birth_rates();
          auto d = s.death_rates();
          return {{"kind", "explicit"},
                  {"label", s.label()},
                  {"N", n},
                  {"b", std::vector<double>(b.begin(), b.end())},
                  {"d", std::vector<double>(d.begin(), d.end())}};
        }
      },
      s.family());
}

}  // namespace mastereq
