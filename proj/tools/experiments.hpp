#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinor_qi::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::optional<std::string> out;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
};

struct ExperimentInfo {
    std::string kind;
    std::string summary;
};

const std::vector<ExperimentInfo>& experiments();

// Returns the paths written. Throws ConfigError or spinor_qi::error.
std::vector<std::string> run_config(const std::string& path, const RunOptions& opt);

} // namespace spinor_qi::cli
