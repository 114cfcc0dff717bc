// Runs the full validation suite on the fixed specs and prints one line per
// acceptance criterion. Exit status 0 iff every criterion passed.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>

#include "levyhit/io.hpp"
#include "levyhit/validation.hpp"

int main(int argc, char** argv) {
    using namespace levyhit;
    ValidationOptions opt;
    opt.suite = Suite::full;
    opt.on_result = [](const CheckResult& r) {
        std::fprintf(stderr, "  [%d] %-34s %s (%.1f s)%s%s\n", r.criterion, r.name.c_str(),
                     to_string(r.status).c_str(), r.seconds, r.message.empty() ? "" : "  ", r.message.c_str());
    };
    ValidationReport rep;
    try {
        rep = run_validation({}, opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 1;
    }
    if (argc > 1) write_file_atomic(std::filesystem::path(argv[1]), rep.to_json().dump(2) + "\n");

    bool ok = true;
    const auto crit = rep.criteria();
    for (int k = 1; k <= 10; ++k) {
        auto it = crit.find(k);
        bool pass = it != crit.end() && it->second;
        ok = ok && pass;
        std::cout << "criterion " << k << ": " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}
