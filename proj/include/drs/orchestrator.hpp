#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drs/config.hpp"

namespace drs {

struct OracleResult {
    std::string check;
    bool passed = true;
    long long cases = 0;
    Json counterexamples = Json::array();

    Json to_json() const;
};

struct Report {
    std::optional<Verdict> verdict;
    std::optional<Json> cohomology;
    Json timings = Json::object(); // stage -> milliseconds
    std::vector<OracleResult> oracle_results;
    Json input_echo;
    int exit_code = 0;

    // timings left out when with_timings is false
    Json to_json(bool with_timings = true) const;
};

// checks applicable to a config when none are requested explicitly
std::vector<std::string> default_checks(const JobConfig& c);

OracleResult run_check(const JobConfig& c, const std::string& name);
Json cohomology_dump(const Bicharacter& w);
Report run(const JobConfig& c);

} // namespace drs
