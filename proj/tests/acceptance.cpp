// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
//   acceptance                 all criteria
//   acceptance --criterion N   one criterion

#include "checks.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    using namespace spinor_qi::checks;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
            return 2;
        }
    }
    if (ids.empty())
        for (int n = 1; n <= 11; ++n) ids.push_back(n);

    const Options opt;
    bool all = true;
    for (int id : ids) {
        const Check* c = find_criterion(id);
        if (c == nullptr) {
            std::fprintf(stderr, "no criterion %d\n", id);
            return 2;
        }
        const Outcome o = run(*c, opt);
        std::printf("criterion %2d %s  %s: %s\n", id, o.result.pass ? "PASS" : "FAIL", c->name.c_str(),
                    o.result.detail.c_str());
        all = all && o.result.pass;
    }
    return all ? 0 : 1;
}
