#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"

#include "qpfix/io.hpp"
#include "qpfix/search.hpp"

using namespace qpfix;
using namespace qpfix::test;

TEST_CASE("gen_space") {
    GenConfig cfg;
    cfg.point_count = 1;
    const QPSpace one = gen_space(cfg);
    CHECK(one.size() == 1);
    CHECK(one.coeff_k() == 1);

    cfg.point_count = 5;
    cfg.seed = 42;
    CHECK(gen_space(cfg) == gen_space(cfg));
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto rng = trial_rng(42, t);
        const QPSpace s = gen_space(cfg, rng);
        CHECK(check_d1(s).holds());
        CHECK(check_d2(s, s.coeff_k()).holds());
        const MinimalK mk = minimal_k(s);
        REQUIRE(mk.finite);
        CHECK(s.coeff_k() == (*mk.finite > 0 ? *mk.finite : Rational(1)));
        CHECK(mk.finite == brute_minimal_k(s));
    }

    cfg.value_grid = {Rational(0)};
    const QPSpace zero = gen_space(cfg);
    CHECK(*minimal_k(zero).finite == 0);
    CHECK(zero.coeff_k() == 1);

    cfg.point_count = 9;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.point_count = 3;
    cfg.value_grid = {Rational(1)};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("gen_problem produces valid problems") {
    GenConfig cfg;
    cfg.point_count = 5;
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto rng = trial_rng(3, t);
        const Problem p = gen_problem(cfg, rng);
        CHECK_NOTHROW(p.validate());
        CHECK(p.space.size() <= 5);
    }
}

TEST_CASE("d2_oracle") {
    CHECK_FALSE(d2_oracle(p3(), Rational(1), 3));
    CHECK(d2_oracle(p3(), Rational(2), 3));
    CHECK(d2_oracle(p3(), Rational(10, 9), 3));
    CHECK_FALSE(d2_oracle(p3(), Rational(10, 9) - Rational(1, 1000), 3));
    CHECK(d2_oracle(t3(), Rational(15, 11), 4));
    CHECK_FALSE(d2_oracle(t3(), Rational(15, 11) - Rational(1, 1000), 4));
    CHECK_THROWS_AS(d2_oracle(p3(), Rational(1), 0), std::invalid_argument);
    CHECK_THROWS_AS(d2_oracle(p3(), Rational(0), 2), std::invalid_argument);
}

TEST_CASE("oracle search agrees with check_d2") {
    GenConfig cfg;
    cfg.point_count = 5;
    cfg.seed = 11;
    cfg.trials = 100;
    const OracleReport r = oracle_search(cfg);
    CHECK(r.comparisons == 200);
    CHECK(r.agreements == 200);
    CHECK(r.mismatches.empty());

    cfg.point_count = 1;
    CHECK_THROWS_AS(oracle_search(cfg), std::invalid_argument);
}

TEST_CASE("soundness search") {
    GenConfig cfg;
    cfg.point_count = 5;
    cfg.seed = 7;
    cfg.trials = 1000;
    const SoundnessReport r = soundness_search(cfg);
    CHECK(r.trials == 1000);
    CHECK(r.certified > 0);
    CHECK(r.counterexamples.empty());

    const SoundnessReport again = soundness_search(cfg);
    CHECK(io::dump(io::to_json(again)) == io::dump(io::to_json(r)));

    cfg.trials = 0;
    const SoundnessReport empty = soundness_search(cfg);
    CHECK(empty.trials == 0);
    CHECK(empty.certified == 0);
    CHECK(empty.counterexamples.empty());
}

TEST_CASE("mutated certifier is caught") {
    GenConfig cfg;
    cfg.point_count = 5;
    cfg.seed = 7;
    cfg.trials = 1000;
    const SoundnessReport r = soundness_search(cfg, {.invert_contraction = true});
    CHECK_FALSE(r.counterexamples.empty());
}
