#pragma once

#include <cstdint>
#include <optional>

namespace spinor_qi::cli {

// Runs every registered check; returns true when all pass.
bool selftest(std::uint64_t seed, std::optional<double> tol);

} // namespace spinor_qi::cli
