#include "doctest.h"

#include "fixtures.hpp"
#include "geometric.hpp"

#include "qpfix/picard.hpp"
#include "qpfix/search.hpp"

using namespace qpfix;
using namespace qpfix::test;

TEST_CASE("iterate") {
    const auto t = t3();
    const Orbit o = iterate(t, t3_f(), 0, 10);
    CHECK(o.entries == std::vector<std::size_t>{0, 1, 2});
    CHECK(o.step_dists == std::vector<Rational>{Rational(1), q("1/10")});
    REQUIRE(std::holds_alternative<FixedPoint>(o.terminated));
    CHECK(std::get<FixedPoint>(o.terminated).index == 2);
    CHECK(*o.fixed_point() == 2);
    CHECK(o.closing_step == 0);
    REQUIRE(o.decay_ratios.size() == 2);
    CHECK(o.decay_ratios[0].ratio == q("1/10"));
    CHECK(o.decay_ratios[1].ratio == 0);

    const Orbit fixed = iterate(t, t3_f(), 2, 1);
    CHECK(std::get<FixedPoint>(fixed.terminated).index == 0);
    CHECK(fixed.entries == std::vector<std::size_t>{2});

    const Orbit cyc = iterate(t, t3_swap(), 0, 10);
    REQUIRE(std::holds_alternative<Cycle>(cyc.terminated));
    CHECK(std::get<Cycle>(cyc.terminated).length == 2);
    CHECK(std::get<Cycle>(cyc.terminated).start == 0);
    CHECK_FALSE(cyc.fixed_point());
    CHECK(cyc.periodic_tail() == std::vector<std::size_t>{0, 1});

    const Orbit short_budget = iterate(t, t3_f(), 0, 1);
    CHECK(std::holds_alternative<BudgetExhausted>(short_budget.terminated));
    CHECK(short_budget.entries == std::vector<std::size_t>{0, 1});

    CHECK_THROWS_AS(iterate(t, t3_f(), 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(iterate(t, t3_f(), 0, 0), std::invalid_argument);
}

TEST_CASE("verify_decay") {
    const auto t = t3();
    const Orbit o = iterate(t, t3_f(), 0, 10);
    CHECK(verify_decay(o, q("1/10")).holds());
    const auto tight = verify_decay(o, q("1/20"));
    REQUIRE_FALSE(tight.holds());
    CHECK(*tight.violating_index == 1);

    const Orbit fixed = iterate(t, t3_f(), 2, 1);
    CHECK(verify_decay(fixed, Rational(0)).holds());
    CHECK_THROWS_AS(verify_decay(o, Rational(-1)), std::invalid_argument);
}

TEST_CASE("verify_chain_bound") {
    const auto t = t3();
    const auto rows = verify_chain_bound(t, iterate(t, t3_f(), 0, 10));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 1);
    CHECK(rows[0].lhs == 1);
    CHECK(rows[0].rhs == 1);
    CHECK(rows[0].slack == 0);
    CHECK(rows[1].lhs == q("3/2"));
    CHECK(rows[1].rhs == q("33/20"));
    CHECK(rows[1].slack == q("3/20"));

    const std::vector<std::size_t> constant{2, 2, 2, 2};
    for (const auto& r : verify_chain_bound(t, constant)) {
        CHECK(r.lhs == 0);
        CHECK(r.slack == r.rhs);
        CHECK(r.slack >= 0);
    }
    CHECK_THROWS_AS(verify_chain_bound(t, std::vector<std::size_t>{0}), std::invalid_argument);
}

TEST_CASE("check_sequential_continuity") {
    const auto t = t3();
    for (auto mode : {ConvergenceMode::d, ConvergenceMode::dinv, ConvergenceMode::ds}) {
        CHECK(check_sequential_continuity(t, t3_f(), mode).holds());
        CHECK(check_sequential_continuity(t, t3_swap(), mode).holds());
    }
    // D(u,v) = 0 but D(fu, fv) = D(u, w) = 1
    const QPSpace uvw({"u", "v", "w"}, matrix({{"0", "0", "1"}, {"1", "0", "1"}, {"1", "1", "0"}}),
                      Rational(1));
    const auto r = check_sequential_continuity(uvw, SelfMap({0, 2, 2}), ConvergenceMode::d);
    REQUIRE_FALSE(r.holds());
    CHECK(*r.witness == PointPair{0, 1});
    // the zero relation is the same under D and its conjugate
    CHECK_FALSE(check_sequential_continuity(uvw, SelfMap({0, 2, 2}), ConvergenceMode::dinv).holds());
    CHECK(check_sequential_continuity(uvw, SelfMap({1, 1, 2}), ConvergenceMode::dinv).holds());
    CHECK(check_sequential_continuity(uvw, SelfMap::identity(3), ConvergenceMode::ds).holds());
}

TEST_CASE("picard properties on random instances") {
    GenConfig cfg;
    cfg.value_grid = {Rational(0), Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(1)};
    for (std::uint64_t trial = 0; trial < 150; ++trial) {
        auto rng = trial_rng(17, trial);
        cfg.point_count = 1 + trial % 8;
        const QPSpace s = gen_space(cfg, rng);
        const std::size_t n = s.size();
        std::vector<std::size_t> images(n);
        for (auto& y : images) y = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        const SelfMap f(images);
        const std::size_t seed = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);

        // finite spaces close the orbit within |X| + 1 steps
        const Orbit o = iterate(s, f, seed, n + 1);
        CHECK_FALSE(std::holds_alternative<BudgetExhausted>(o.terminated));
        CHECK(o.entries.size() <= n);

        // chain bound holds on every orbit of a space passing D2 at its K
        if (o.entries.size() >= 2)
            for (const auto& r : verify_chain_bound(s, o)) CHECK(r.slack >= 0);

        // under a verified constant-weight contraction the ratios stay below C_beta / C_alpha
        const auto pair = AdmissiblePair::constant(n, Rational(1), Rational(1, 4));
        if (check_contraction(s, f, pair, ContractionForm::d).holds()) {
            for (const auto& r : o.decay_ratios) CHECK(r.ratio <= Rational(1, 4));
            CHECK(verify_decay(o, Rational(1, 4)).holds());
        }

        // right-oriented decay equals left decay read on the conjugate
        const QPSpace c = conjugate(s);
        std::vector<Rational> backward;
        for (std::size_t i = 0; i + 1 < o.entries.size(); ++i)
            backward.push_back(s.d(o.entries[i + 1], o.entries[i]));
        const Orbit oc = iterate(c, f, seed, n + 1);
        CHECK(oc.step_dists == backward);
        for (const Rational lambda : {Rational(0), Rational(1, 4), Rational(1)})
            CHECK(verify_decay(std::span<const Rational>(backward), lambda).holds() ==
                  verify_decay(std::span<const Rational>(oc.step_dists), lambda).holds());
    }
}

TEST_CASE("chain bound holds on random walks, not just orbits") {
    GenConfig cfg;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto rng = trial_rng(23, trial);
        cfg.point_count = 2 + trial % 6;
        const QPSpace s = gen_space(cfg, rng);
        std::vector<std::size_t> walk(2 + trial % 9);
        for (auto& x : walk) x = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
        for (const auto& r : verify_chain_bound(s, walk)) CHECK(r.slack >= 0);
    }
}

TEST_CASE("synthetic geometric orbits") {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto rng = trial_rng(29, trial);
        const GeometricOrbit g = random_geometric_orbit(rng);
        CHECK(check_d2(g.space, g.space.coeff_k()).holds());
        const Orbit o = iterate(g.space, g.shift, 0, g.space.size() + 1);
        CHECK(o.fixed_point() == g.space.size() - 1);
        CHECK(verify_decay(o, g.lambda).holds());
        CHECK(g.lambda * g.space.coeff_k() < 1);
        for (const auto& r : o.decay_ratios)
            if (r.n + 1 < o.entries.size()) CHECK(r.ratio == g.lambda);
    }
}
