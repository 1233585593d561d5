// End-to-end walkthrough: run the two main fixed-point pages, split off the
// V(1) table, verify its duality, and solve for the dualizing word.

#include <iostream>

#include "k2local/verify.hpp"

using namespace k2local;

int main() {
    Window win{-150, 310, 0, 26};
    auto g20 = run_declared_page("g20", rules_from_text(g20_rules_text()), win, "E^{hG2^0} ^ V(1)");
    if (!g20.report.ok) {
        std::cerr << "run failed: " << g20.report.first() << "\n";
        return 1;
    }
    auto [v1, minus] = split_table_by_parity(g20.table);

    std::cout << "V(1) homotopy near zero:\n";
    for (int n = -4; n <= 12; ++n) {
        std::cout << "  pi_" << n << " has dimension " << v1.dim(n);
        auto it = v1.classes.find(n);
        if (it != v1.classes.end()) {
            std::cout << " :";
            for (const auto& c : it->second) std::cout << " " << c.label;
        }
        std::cout << "\n";
    }

    auto dual = check_self_duality(v1, 28, Window{-120, 148, 0, 40});
    std::cout << "\nduality against stem 28 - n: " << (dual.ok ? "holds" : "fails") << "\n";

    auto sol = solve_brown_comenetz();
    std::cout << "dualizing word: " << sol.word.str() << "\n";
    std::cout << "suspension on V(1): " << center_mod(v1_shift(sol.word), 144) << " (mod 144)\n";
    return 0;
}
