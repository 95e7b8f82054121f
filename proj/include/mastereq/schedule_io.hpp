#ifndef MASTEREQ_SCHEDULE_IO_HPP
#define MASTEREQ_SCHEDULE_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "mastereq/rate_schedule.hpp"

namespace mastereq {

// Schedule documents are JSON objects keyed by "kind":
//
//   {"kind": "constant", "b": 0.5, "N": 20}
//   {"kind": "asymmetric", "epsilon": 0.02, "N": 100}
//   {"kind": "offset_exponential", "c_b": 0.1, "alpha_b": 0.12,
//    "c_d": 0.1, "alpha_d": 0.15, "power": 1, "N": 100}
//   {"kind": "explicit", "b": [...], "d": [...], "N": 5, "label": "..."}
//
// Explicit arrays are indexed from 0 and need N+2 birth and N+3 death
// entries. All failures surface as InvalidSchedule.

RateSchedule load_schedule(const nlohmann::json& doc);
RateSchedule load_schedule_file(const std::filesystem::path& path);

/// Family schedules are saved by parameters, everything else as explicit
/// arrays. load_schedule(save_schedule(s)) == s.
nlohmann::json save_schedule(const RateSchedule& s);

}  // namespace mastereq

#endif  // MASTEREQ_SCHEDULE_IO_HPP
