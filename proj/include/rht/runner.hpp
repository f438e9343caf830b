#ifndef RHT_RUNNER_HPP
#define RHT_RUNNER_HPP

#include <optional>
#include <string>

#include "rht/specfile.hpp"

namespace rht {

struct RunOptions {
    std::string command;
    std::string example;                         /* catalog entry name */
    std::string file;                            /* or a spec file path */
    std::optional<std::pair<int, int>> window;
    std::string coefficients = "self";           /* hh: self | dual */
    bool hodge = false;
    bool verbose = false;
};

struct RunReport {
    int exit_code = 0;
    std::string text;
    nlohmann::ordered_json json;
};

/* Executes one verifier pipeline. Throws SpecParseError (exit 2),
 * HypothesisError (exit 1) or BrokenComplexError (exit 3) on failures that
 * prevent a report; verification verdicts land in the report itself. */
RunReport run_command(const RunOptions& opt);

int exit_code_for(const std::exception& e);

}  // namespace rht

#endif
