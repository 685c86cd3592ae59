#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k3lat/report.hpp"

namespace k3lat {

struct SuiteOptions {
    std::int64_t box_bound = 2;           // |t_i| bound of the Heegner box scan
    std::size_t closure_cap = 1u << 22;   // 0 skips the Weyl closure
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Throws invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace k3lat
