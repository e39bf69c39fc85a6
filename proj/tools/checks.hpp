#pragma once

// Named invariant checks shared by `spinor-qi selftest` and the acceptance
// binary. Criteria 1-11 are the acceptance set; the rest are module invariants.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinor_qi::checks {

struct Options {
    std::uint64_t seed = 1;
    std::optional<double> tol;  ///< replaces every upper-bound tolerance when set
};

struct Result {
    bool pass = false;
    std::string detail;
};

struct Check {
    int criterion = 0;  ///< 1..11 for acceptance criteria, 0 otherwise
    std::string module;
    std::string name;
    std::function<Result(const Options&)> run;
};

struct Outcome {
    const Check* check = nullptr;
    Result result;
    double seconds = 0.0;
};

const std::vector<Check>& registry();

/// Runs one check; exceptions become failures carrying the message.
Outcome run(const Check& c, const Options& opt);

const Check* find_criterion(int id);

} // namespace spinor_qi::checks
