#pragma once
// Small shared result types: named pass/fail checks bundled into certificates.
// Every verifier returns one of these so the CLI can serialize uniformly.

#include <string>
#include <vector>

namespace rlop {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Certificate {
    bool ok = true;
    std::vector<Check> checks;

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
        ok = ok && pass;
    }
};

} // namespace rlop
