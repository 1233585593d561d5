#include <catch2/catch_amalgamated.hpp>

#include "k2local/picard.hpp"

using namespace k2local;

TEST_CASE("smash is coordinate addition on the nine classes") {
    CHECK(smash(ExoticClass{1, 2}, ExoticClass{2, 1}).is_trivial());
    CHECK(smash(ExoticClass{1, 0}, ExoticClass::trivial()) == ExoticClass{1, 0});
    // the full table, against an independently computed sum
    for (int p1 = 0; p1 < 3; ++p1)
        for (int q1 = 0; q1 < 3; ++q1)
            for (int p2 = 0; p2 < 3; ++p2)
                for (int q2 = 0; q2 < 3; ++q2)
                    CHECK(smash(ExoticClass{p1, q1}, ExoticClass{p2, q2}) ==
                          ExoticClass{(p1 + p2) % 3, (q1 + q2) % 3});
    // 3-torsion
    auto ppp = smash(smash(ExoticClass::P(), ExoticClass::P()), ExoticClass::P());
    CHECK(ppp.is_trivial());
}

TEST_CASE("fixed-point shift is a homomorphism with the truly exotic kernel") {
    CHECK(g24_shift(ExoticClass::P()) == 48);
    CHECK(g24_shift(ExoticClass::Q()) == 0);
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            ExoticClass x{p, q};
            CHECK((g24_shift(x) == 0) == x.truly_exotic());
            for (int p2 = 0; p2 < 3; ++p2)
                for (int q2 = 0; q2 < 3; ++q2) {
                    ExoticClass y{p2, q2};
                    CHECK(g24_shift(smash(x, y)) == (g24_shift(x) + g24_shift(y)) % 72);
                }
        }
    // the kernel is exactly the Q-line: a split short exact sequence of
    // three-element groups on both sides
    int kernel = 0;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            if (ExoticClass{p, q}.truly_exotic()) ++kernel;
    CHECK(kernel == 3);
}

TEST_CASE("suspension shift of invertible words") {
    CHECK(v1_shift(PicardWord{2, 1, 1, 0}) == 122);  // = -22 mod 144
    CHECK(center_mod(v1_shift(PicardWord{2, 1, 1, 0}), 144) == -22);
    CHECK(v1_shift(PicardWord{0, 0, 0, 0}) == 0);
    CHECK(v1_shift(PicardWord{0, 1, 0, 0}) == 72);
    CHECK(v1_shift(PicardWord{48, 0, 2, 0}) == 0);   // 48 + 96 = 144
    CHECK(v1_shift(PicardWord{144, 0, 0, 0}) == 0);  // periodicity
    CHECK_THROWS_AS(v1_shift(PicardWord{0, 0, 0, 1}), std::domain_error);

    // homomorphism on words without a Q component
    for (int m = -2; m <= 2; ++m)
        for (int d = -1; d <= 1; ++d)
            for (int a = 0; a < 3; ++a) {
                PicardWord w1{m, d, a, 0}, w2{3 - m, d, (a + 1) % 3, 0};
                PicardWord sum{w1.sphere + w2.sphere, w1.det + w2.det, w1.p + w2.p, 0};
                CHECK(v1_shift(sum) == (v1_shift(w1) + v1_shift(w2)) % 144);
            }
}

TEST_CASE("the dualizing word is unique among the nine candidates") {
    auto sol = solve_brown_comenetz();
    CHECK(sol.word.sphere == 2);
    CHECK(sol.word.det == 1);
    CHECK(sol.word.p == 1);
    CHECK(sol.word.q == 0);
    CHECK(sol.word.str() == "S^2 ^ S<det> ^ P");
    CHECK(v1_shift(sol.word) == sol.target);

    // the enumeration: b != 0 excluded, a = 0 gives 74, a = 1 gives 122, a = 2 gives 170 = 26
    int excluded = 0;
    for (const auto& step : sol.enumeration) {
        if (!step.free_over_zeta) {
            ++excluded;
            CHECK(step.b != 0);
            continue;
        }
        long want = step.a == 0 ? 74 : step.a == 1 ? 122 : 26;
        CHECK(step.shift == want);
        CHECK(step.matches == (step.a == 1));
    }
    CHECK(excluded == 6);

    // the duality ladder: -22 = -28 + 6
    CHECK(center_mod(-28 + 6, 144) == center_mod(2 + 72 + 48, 144));
}

TEST_CASE("determinant twist fixes the 4 mod 8 lines") {
    auto eight = f9_units();
    REQUIRE(eight.size() == 8);

    // om^8 = 1 is the e = 4 instance for the first unit
    CHECK(F9::om().pow(4) * F9::om().pow(4) == F9::one());

    auto exps = exponents_4_mod_8(-36, 36);
    CHECK(exps.front() == -36);
    CHECK(exps.back() == 36);
    CHECK(exps.size() == 10);

    auto rep = det_twist_invariance_check(eight, exps);
    CHECK(rep.ok);
    CHECK(rep.checked == 80);

    // negative control: exponent 0 picks up the nontrivial det coefficient om^4
    auto spot = det_twist_invariance_check({F9::om()}, {0});
    CHECK(!spot.ok);
    CHECK(spot.first_failure.find("exponent 0") != std::string::npos);
}

TEST_CASE("exponents off the 4 mod 8 line are moved by some unit") {
    // complementary control for the invariance statement
    for (long e = -12; e <= 12; ++e) {
        bool fixed_by_all = true;
        for (const auto& a : f9_units())
            if (a.pow(e) * a.pow(4) != F9::one()) fixed_by_all = false;
        CHECK(fixed_by_all == (((e % 8) + 8) % 8 == 4));
    }
}
