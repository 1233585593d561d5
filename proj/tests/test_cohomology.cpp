#include <catch2/catch_amalgamated.hpp>

#include "k2local/cohomology.hpp"

using namespace k2local;

TEST_CASE("centralizer cohomology buckets") {
    Window win{-20, 20, 0, 6};
    auto c = build_centralizer_cohomology(win);
    REQUIRE(c.dim({0, 0}) == 1);
    CHECK(c.dim_f3({0, 0}) == 2);

    // degree (1,0): x1, a1, zeta1
    auto* b = c.bucket({1, 0});
    REQUIRE(b);
    CHECK(b->size() == 3);
    std::set<std::string> names;
    for (const auto& v : *b) names.insert(v.str(c.ring));
    CHECK(names == std::set<std::string>{"x1", "a1", "zeta1"});

    // degree (3,0): y1 times each single exterior class, plus x1*a1*zeta1
    CHECK(c.dim({3, 0}) == 4);
}

TEST_CASE("the action tables satisfy the group presentation") {
    auto ring = product_ring();
    auto om = actions::omega();
    auto ph = actions::phi();

    // phi * omega = omega^3 * phi on every product generator
    auto lhs = compose(ph, om, ring);
    auto rhs = compose(compose(om, compose(om, om, ring), ring), ph, ring);
    Window win{-8, 8, 0, 3};
    auto img = build_centralizer_product(win);
    for (const auto& [d, basis] : img.buckets)
        for (const auto& v : basis) CHECK(lhs.apply(v, ring) == rhs.apply(v, ring));

    // omega has order 8: omega^4 is scalar -1 on u-degree-2 parts, omega^8 = id
    ActionOp om8 = om;
    for (int k = 1; k < 8; ++k) om8 = compose(om8, om, ring);
    for (const auto& [d, basis] : img.buckets)
        for (const auto& v : basis) CHECK(om8.apply(v, ring) == v);

    // phi^2 = id
    auto ph2 = compose(ph, ph, ring);
    for (const auto& [d, basis] : img.buckets)
        for (const auto& v : basis) CHECK(ph2.apply(v, ring) == v);
}

TEST_CASE("detection classes are closed under the semidihedral action") {
    auto ring = product_ring();
    auto om = actions::omega();
    auto ph = actions::phi();

    // omega sends x1 to the listed generator x2
    Vec x1 = parse_vec("c1*x1", ring);
    Vec x2 = parse_vec("c2*x2", ring);
    CHECK(om.apply(x1, ring) == x2);

    // omega sends x1a1 - x2a2 to minus itself
    Vec mixed = parse_vec("c1*x1*a1", ring) - parse_vec("c2*x2*a2", ring);
    CHECK(same_line(om.apply(mixed, ring), mixed));
    CHECK(om.apply(mixed, ring) == F9(-1) * mixed);

    // phi sends y1a1 to y2a2
    Vec y1a1 = parse_vec("c1*y1*a1", ring);
    Vec y2a2 = parse_vec("c2*y2*a2", ring);
    CHECK(ph.apply(y1a1, ring) == y2a2);

    auto rep = verify_rho_image(Window{-40, 40, 0, 8});
    CHECK(rep.ok);
}

TEST_CASE("semidihedral invariants of the coefficients are the v2 line") {
    Window win{-64, 64, 0, 0};
    auto inv = invariants(build_f9u_module(win), {actions::omega(), actions::phi()}, win);
    for (const auto& [d, basis] : inv.buckets) {
        CHECK(d.t % 16 == 0);
        CHECK(basis.size() == 1);
    }
    REQUIRE(inv.bucket({0, 16}));
    Monomial v2 = mono({{Gen::u, -8}});
    CHECK(same_line((*inv.bucket({0, 16}))[0], Vec::of(v2)));
}

TEST_CASE("quaternion invariants contain the named classes") {
    Window win{-40, 40, 0, 8};
    auto ring = centralizer_ring();
    auto inv = invariants(build_c3_cohomology(win), {actions::omega_sq(ring), actions::omega_phi(ring)}, win);

    auto contains = [&](Bidegree d, const Vec& v) {
        auto* b = inv.bucket(d);
        REQUIRE(b);
        BucketCoords coords;
        for (const auto& x : *b) coords.absorb(x);
        Vec vv = v;
        coords.absorb(vv);
        coords.freeze();
        F3Matrix B(0, coords.cols());
        for (const auto& x : *b) B.append_row(coords.row(x));
        return RowSpace(B).contains(coords.row(vv));
    };
    CHECK(contains({1, 4}, expand_g24(mono({{Gen::alpha, 1}}))));
    CHECK(contains({2, 12}, expand_g24(mono({{Gen::beta, 1}}))));
    CHECK(contains({0, 8}, expand_g24(mono({{Gen::w, 1}}))));
    CHECK(contains({0, -8}, expand_g24(mono({{Gen::w, -1}}))));
    // u^-4 alone is not invariant: the (0,8) bucket is one-dimensional
    CHECK(inv.dim({0, 8}) == 1);
}

TEST_CASE("index-two fixed points double the quaternion ones") {
    Window win{-60, 60, 0, 10};
    auto ring = centralizer_ring();
    auto c3 = build_c3_cohomology(win);
    auto g24 = invariants(c3, {actions::omega_sq(ring), actions::omega_phi(ring)}, win);
    auto g12 = invariants(c3, {actions::omega_sq(ring)}, win);
    for (const auto& [d, basis] : g12.buckets) CHECK(basis.size() == 2 * g24.dim(d));
    for (const auto& [d, basis] : g24.buckets) CHECK(g12.dim(d) == 2 * basis.size());
}

TEST_CASE("normalizer cohomology matches its product normal form") {
    Window win{-50, 90, 0, 9};
    auto n = subgroup_cohomology("N", win);
    auto span = declared_module("n", win);
    std::map<Bidegree, std::vector<Vec>> expected;
    for (const auto& [d, basis] : span.buckets)
        for (const auto& v : basis) {
            Vec e = expand_single(v.terms.begin()->first);
            expected[d].push_back(e);
            expected[d].push_back(F9::om() * e);  // F9-module: two F3-lines per monomial
        }
    auto rep = compare_f3_span(n, expected, win);
    INFO(rep.detail);
    CHECK(rep.ok);
}

TEST_CASE("smaller groups have bigger invariant rings") {
    Window win{-40, 40, 0, 8};
    auto img = build_detection_image(win);
    auto sd16 = invariants(img, {actions::omega(), actions::phi()}, win);
    auto d8 = invariants(img, {actions::omega_sq(product_ring()), actions::phi()}, win);
    for (const auto& [d, basis] : sd16.buckets) {
        auto* big = d8.bucket(d);
        REQUIRE(big);
        REQUIRE(big->size() >= basis.size());
        BucketCoords coords;
        for (const auto& v : *big) coords.absorb(v);
        for (const auto& v : basis) coords.absorb(const_cast<Vec&>(v));
        coords.freeze();
        F3Matrix B(0, coords.cols());
        for (const auto& v : *big) B.append_row(coords.row(v));
        RowSpace rs(B);
        for (const auto& v : basis) CHECK(rs.contains(coords.row(v)));
    }
}

TEST_CASE("full-group invariants drop the odd half-powers") {
    Window win{-40, 40, 0, 6};
    auto img = build_detection_image(win);
    auto g2 = invariants(img, {actions::omega(), actions::phi()}, win);
    auto span = declared_module("g2", win);
    std::map<Bidegree, std::vector<Vec>> expected;
    for (const auto& [d, basis] : span.buckets)
        for (const auto& v : basis) expected[d].push_back(expand_pair(v.terms.begin()->first));
    auto rep = compare_f3_span(g2, expected, win);
    INFO(rep.detail);
    CHECK(rep.ok);
}

TEST_CASE("eigenspace split: identity and dimension bookkeeping") {
    Window win{-24, 24, 0, 5};
    auto img = build_detection_image(win);
    auto inv = invariants(img, {actions::omega_sq(product_ring()), actions::phi()}, win);

    auto id_split = eigenspace_split(inv, actions::identity(), win);
    for (const auto& [d, basis] : inv.buckets) {
        CHECK(id_split.plus.dim(d) == basis.size());
        CHECK(id_split.minus.dim(d) == 0);
    }

    auto split = eigenspace_split(inv, actions::omega(), win);
    for (const auto& [d, basis] : inv.buckets)
        CHECK(split.plus.dim(d) + split.minus.dim(d) == basis.size());
}

TEST_CASE("eigenspace split rejects non-involutions") {
    Window win{-8, 8, 0, 2};
    auto mod = build_f9u_module(win);
    CHECK_THROWS_AS(eigenspace_split(mod, actions::omega(), win), InvariantsError);
}

TEST_CASE("invariants under no operators return the module") {
    Window win{-12, 12, 0, 4};
    auto mod = build_c3_cohomology(win);
    auto inv = invariants(mod, {}, win);
    for (const auto& [d, basis] : mod.buckets) CHECK(inv.dim(d) == mod.dim_f3(d));
}

TEST_CASE("operators must preserve bidegrees") {
    Window win{-12, 12, 0, 4};
    auto mod = build_c3_cohomology(win);
    ActionOp bad;
    bad.name = "degree-breaking";
    bad.images[Gen::x1] = Vec::of(mono({{Gen::y1, 1}}));
    CHECK_THROWS_AS(invariants(mod, {bad}, win), InvariantsError);
}

TEST_CASE("cohomology rings carry their actions") {
    Window win{-12, 12, 0, 4};
    auto c = centralizer_with_actions(win);
    CHECK(c.subgroup == "C");
    REQUIRE(!c.actions.empty());
    // the attached generator acts bucketwise on the module
    for (const auto& [d, basis] : c.module.buckets)
        for (const auto& v : basis) {
            Vec img = c.actions[0].apply(v, c.module.ring);
            for (const auto& [m, coeff] : img.terms) CHECK(m.bidegree() == d);
        }

    auto pair = centralizer_pair_with_actions(win);
    CHECK(pair.actions.size() == 2);
    CHECK(pair.module.dim({0, 0}) == 2);  // the two factor units
}

TEST_CASE("the order-four antilinear generator squares to the central element") {
    auto ring = centralizer_ring();
    auto omphi = actions::omega_phi(ring);
    auto sq = compose(omphi, omphi, ring);     // = omega^4, central
    auto fourth = compose(sq, sq, ring);       // = identity
    Window win{-12, 12, 0, 4};
    auto mod = build_c3_cohomology(win);
    for (const auto& [d, basis] : mod.buckets)
        for (const auto& v : basis) {
            CHECK(fourth.apply(v, ring) == v);
            // omega^4 = -1 on u, so it scales u^j by (-1)^j
            const Monomial& m = v.terms.begin()->first;
            F9 scale = (m.exp(Gen::u) % 2 == 0) ? F9::one() : F9(-1);
            CHECK(sq.apply(v, ring) == scale * v);
        }
}

TEST_CASE("the conjugate centralizer mirrors the first factor") {
    Window win{-20, 20, 0, 6};
    auto c = build_centralizer_cohomology(win);
    auto cc = build_conjugate_centralizer(win);
    for (const auto& [d, basis] : c.buckets) CHECK(cc.dim(d) == basis.size());
    REQUIRE(cc.bucket({1, 0}));
    std::set<std::string> names;
    for (const auto& v : *cc.bucket({1, 0})) names.insert(v.str(cc.ring));
    CHECK(names == std::set<std::string>{"x2", "a2", "zeta2"});
}
