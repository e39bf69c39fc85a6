#include "selftest.hpp"

#include "checks.hpp"

#include <cstdio>

namespace spinor_qi::cli {

bool selftest(std::uint64_t seed, std::optional<double> tol) {
    const checks::Options opt{seed, tol};
    int failed = 0, total = 0;
    double seconds = 0.0;
    for (const checks::Check& c : checks::registry()) {
        const checks::Outcome o = checks::run(c, opt);
        ++total;
        failed += !o.result.pass;
        seconds += o.seconds;
        std::printf("[%s] %s/%s: %s\n", o.result.pass ? "PASS" : "FAIL", c.module.c_str(), c.name.c_str(),
                    o.result.detail.c_str());
    }
    std::printf("%d/%d passed in %.2f s\n", total - failed, total, seconds);
    return failed == 0;
}

} // namespace spinor_qi::cli
