// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <iostream>

#include "k2local/verify.hpp"

int main() {
    auto results = k2local::run_acceptance();
    bool all = true;
    for (const auto& c : results) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "\n";
        std::cout << "      " << c.detail << "\n";
        all = all && c.pass;
    }
    std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILURES") << " ("
              << results.size() << " criteria)\n";
    return all ? 0 : 1;
}
