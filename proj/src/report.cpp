#include "k3lat/report.hpp"

#include <iomanip>
#include <sstream>

#include "k3lat/error.hpp"

namespace k3lat {

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::warn: return "warn";
    }
    return "?";
}

void SuiteReport::add(std::string id, std::string claim, bool ok, std::string details) {
    add(std::move(id), std::move(claim), ok ? Status::pass : Status::fail, std::move(details));
}

void SuiteReport::add(std::string id, std::string claim, Status status, std::string details) {
    for (const auto& c : checks) require(c.id != id, Errc::invalid_argument, "duplicate check id " + id);
    checks.push_back({std::move(id), std::move(claim), status, std::move(details)});
}

void SuiteReport::append(const SuiteReport& other) {
    for (const auto& c : other.checks) add(c.id, c.claim, c.status, c.details);
    seconds += other.seconds;
}

std::size_t SuiteReport::count(Status s) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == s;
    return n;
}

nlohmann::ordered_json to_json(const SuiteReport& r, bool with_time) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["id"] = c.id;
        cj["claim"] = c.claim;
        cj["status"] = status_name(c.status);
        cj["details"] = c.details;
        arr.push_back(cj);
    }
    j["checks"] = arr;
    nlohmann::ordered_json summary;
    summary["pass"] = r.count(Status::pass);
    summary["warn"] = r.count(Status::warn);
    summary["fail"] = r.count(Status::fail);
    j["summary"] = summary;
    if (with_time) j["wall_time_s"] = r.seconds;
    return j;
}

std::string to_text(const SuiteReport& r, bool with_time) {
    std::ostringstream os;
    os << "suite " << r.suite << "\n";
    for (const auto& c : r.checks) {
        os << std::left << std::setw(5) << status_name(c.status) << c.id << ": " << c.claim << "\n";
        if (!c.details.empty()) os << "      " << c.details << "\n";
    }
    os << "summary: " << r.count(Status::pass) << " pass, " << r.count(Status::warn) << " warn, "
       << r.count(Status::fail) << " fail";
    if (with_time) os << " in " << std::fixed << std::setprecision(2) << r.seconds << " s";
    os << "\n";
    return os.str();
}

}  // namespace k3lat
