#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace wittlab {

// One verification outcome, suitable for JSON reports. `anchor` is the
// human-readable label of the statement being checked, as used in reports.
struct CheckResult {
    std::string check;
    std::string anchor;
    bool pass = false;
    std::string evidence;
    long millis = 0;
};

inline nlohmann::json to_json(const CheckResult& r) {
    return nlohmann::json{
        {"check", r.check}, {"anchor", r.anchor}, {"outcome", r.pass ? "pass" : "fail"},
        {"evidence", r.evidence}, {"millis", r.millis},
    };
}

inline nlohmann::json to_json(const std::vector<CheckResult>& rs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    return arr;
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long millis() const {
        return static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace wittlab
