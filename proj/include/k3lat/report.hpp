#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace k3lat {

// warn marks a documented discrepancy in the source material; it never
// changes the exit code.
enum class Status { pass, fail, warn };
const char* status_name(Status s);

struct Check {
    std::string id;
    std::string claim;
    Status status = Status::fail;
    std::string details;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0;

    void add(std::string id, std::string claim, bool ok, std::string details);
    void add(std::string id, std::string claim, Status status, std::string details);
    // Appends another report's checks, keeping ids unique.
    void append(const SuiteReport& other);

    std::size_t count(Status s) const;
    bool ok() const { return count(Status::fail) == 0; }
    int exit_code() const { return ok() ? 0 : 1; }
};

// Deterministic unless with_time is set.
nlohmann::ordered_json to_json(const SuiteReport& r, bool with_time = false);
std::string to_text(const SuiteReport& r, bool with_time = false);

}  // namespace k3lat
