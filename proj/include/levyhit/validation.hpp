#pragma once

// Validation suites: the acceptance criteria as named checks, plus generic checks
// that run on any spec. Reports are JSON with no timings, so the same seed gives
// byte-identical output.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyhit/hitting.hpp"
#include "levyhit/symbols.hpp"

namespace levyhit {

enum class Suite { quick, mc, full };
std::string to_string(Suite s);
Suite suite_from_string(const std::string& s);

enum class CheckStatus { pass, fail, skip };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    int criterion = 0;      // acceptance criterion 1..10, 0 for generic checks
    std::string anchor;     // the statement being checked, in words
    std::string spec;       // spec name for generic checks
    bool mc = false;
    CheckStatus status = CheckStatus::fail;
    nlohmann::json measured = nlohmann::json::object();
    nlohmann::json tolerances = nlohmann::json::object();
    std::string message;
    double seconds = 0.0;   // wall time; kept out of the JSON report

    nlohmann::json to_json() const;
};

struct ValidationOptions {
    Suite suite = Suite::full;
    std::uint64_t seed = 1;
    ProvenConstants constants;
    bool acceptance = true;          // run the criterion checks (fixed specs)
    double mc_scale = 1.0;           // multiplies every path count (smoke runs)
    std::vector<std::string> only;   // restrict to these check names (empty: all)
    std::function<void(const CheckResult&)> on_result;  // progress callback
};

struct ValidationReport {
    Suite suite = Suite::full;
    std::uint64_t seed = 1;
    std::vector<std::string> specs;
    std::vector<CheckResult> checks;

    bool all_passed() const;  // skips count as passed
    nlohmann::json to_json() const;
    std::string summary() const;
    /// Per criterion: true iff every check of that criterion passed (and at least one ran).
    std::map<int, bool> criteria() const;
};

struct CheckInfo {
    std::string name;
    int criterion = 0;
    std::string anchor;
    bool mc = false;
    bool per_spec = false;
};

/// Every registered check, in execution order.
std::vector<CheckInfo> check_catalog();

ValidationReport run_validation(const std::vector<SymbolSpec>& specs, const ValidationOptions& opt = {});

}  // namespace levyhit
