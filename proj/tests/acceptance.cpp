#include "cli.hpp"
#include "duality.hpp"
#include "fixtures.hpp"
#include "geometric.hpp"
#include "oracles.hpp"

#include "qpfix/certifier.hpp"
#include "qpfix/io.hpp"
#include "qpfix/picard.hpp"
#include "qpfix/search.hpp"
#include "qpfix/sequence.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qpfix;
using namespace qpfix::test;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string data(const std::string& file) { return std::string(QPFIX_DATA_DIR) + "/" + file; }

int call(const std::vector<std::string>& args, std::string& out) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    out = o.str();
    return code;
}

Outcome criterion1() {
    Outcome r;
    std::string out;
    r.require(call({"verify", data("P3.json"), "--k", "1", "--json"}, out) == 1,
              "verify --k 1 should exit 1");
    const auto j = nlohmann::json::parse(out);
    r.require(j["d2_holds"] == false, "D2 should fail at k = 1");
    r.require(j["d2_witness"]["direct"] == "1/2", "left side should be 1/2");
    r.require(j["d2_witness"]["chain_sum"] == "9/20", "chain sum should be 9/20");
    r.require(j["d2_witness"]["chain"] == nlohmann::json::array({"a", "b", "c"}),
              "binding chain should be a -> b -> c");

    r.require(call({"verify", data("P3.json"), "--k", "2", "--json"}, out) == 0,
              "verify --k 2 should exit 0");
    r.require(nlohmann::json::parse(out)["axioms_hold"] == true, "axioms should hold at k = 2");

    r.require(call({"verify", data("P3.json"), "--minimal-k", "--json"}, out) == 0,
              "verify --minimal-k should exit 0");
    r.require(nlohmann::json::parse(out)["minimal_k"] == "10/9", "minimal K should be 10/9");
    r.require(brute_minimal_k(p3()) == Rational(10, 9), "oracle minimal K should be 10/9");
    return r;
}

Outcome criterion2() {
    Outcome r;
    const Orbit orbit = iterate(t3(), t3_f(), 0, 4);
    r.require(orbit.entries == std::vector<std::size_t>{0, 1, 2}, "T3 orbit should be p q r");
    const auto rows = verify_chain_bound(t3(), orbit);
    r.require(rows.size() == 2, "two chain-bound rows expected");
    if (rows.size() == 2) {
        r.require(rows[1].lhs == Rational(3, 2), "lhs should be 3/2");
        r.require(rows[1].rhs == Rational(33, 20), "rhs should be 33/20");
        r.require(rows[1].slack == Rational(3, 20), "slack should be 3/20");
    }

    GenConfig cfg;
    cfg.point_count = 6;
    std::size_t checked = 0;
    for (std::uint64_t t = 0; checked < 100; ++t) {
        auto rng = trial_rng(2, t);
        const QPSpace s = gen_space(cfg, rng);
        r.require(check_d2(s, s.coeff_k()).holds(), "generated space should pass D2");
        std::vector<std::size_t> images(s.size());
        std::uniform_int_distribution<std::size_t> pt(0, s.size() - 1);
        for (auto& i : images) i = pt(rng);
        const Orbit o = iterate(s, SelfMap(images), pt(rng), s.size() + 1);
        if (o.entries.size() < 2) continue;
        ++checked;
        for (const auto& row : verify_chain_bound(s, o))
            r.require(row.slack >= 0, "negative slack on random orbit " + std::to_string(t));
    }
    return r;
}

Outcome criterion3() {
    Outcome r;
    const std::vector<Rational> eps{Rational(1, 10), Rational(1, 100)};
    auto check_prefixes = [&](const QPSpace& s, const std::vector<std::size_t>& seq,
                              const std::string& label) {
        for (std::size_t len = 20; len <= seq.size(); ++len) {
            const std::span<const std::size_t> prefix(seq.data(), len);
            for (const auto& e : eps)
                r.require(classify_cauchy(s, prefix, CauchyKind::left_k, e).holds_on_prefix(),
                          label + ": prefix " + std::to_string(len) + " at epsilon " +
                              to_string(e));
        }
    };
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto rng = trial_rng(3, t);
        const GeometricOrbit g = random_geometric_orbit(rng);
        const Orbit o = iterate(g.space, g.shift, 0, g.space.size() + 1);
        r.require(g.lambda * g.space.coeff_k() < 1, "lambda should be below 1/K");
        r.require(check_d2(g.space, g.space.coeff_k()).holds(), "orbit space should pass D2");
        r.require(verify_decay(std::span<const Rational>(o.step_dists), g.lambda).holds(),
                  "decay should verify on orbit " + std::to_string(t));
        check_prefixes(g.space, o.entries, "orbit " + std::to_string(t));
    }
    std::vector<std::size_t> t3_seq{0, 1};
    t3_seq.resize(30, 2);
    check_prefixes(t3(), t3_seq, "T3 orbit");
    return r;
}

Outcome criterion4() {
    Outcome r;
    const Certificate c = certify(t3_problem(), Profile::fix1);
    for (const auto& h : c.hypotheses) {
        const bool expect_asserted = h.name == "left_complete";
        r.require(h.verdict == (expect_asserted ? Verdict::asserted : Verdict::verified),
                  h.name + " has the wrong verdict");
    }
    for (const char* name : {"C1", "C2", "C3", "contraction", "seed_left", "hausdorff",
                             "continuity_D"}) {
        const bool present = std::any_of(c.hypotheses.begin(), c.hypotheses.end(),
                                         [&](const HypothesisResult& h) { return h.name == name; });
        r.require(present, std::string(name) + " missing from the certificate");
    }
    r.require(c.fixed_point == std::optional<std::size_t>{2}, "fixed point should be r");
    r.require(c.orbit.step_dists.size() == 2, "fixed point should be reached in 2 steps");
    for (const auto& d : c.orbit.decay_ratios)
        r.require(d.ratio <= Rational(1, 10), "decay ratio above 1/10");
    for (const auto& b : c.bounds) r.require(b.holds, b.name + " bound fails");
    const std::string first = io::dump(io::to_json(c));
    const std::string second = io::dump(io::to_json(certify(t3_problem(), Profile::fix1)));
    r.require(first == second, "certificate is not byte-identical across runs");
    std::string out1, out2;
    call({"certify", data("T3-problem.json"), "--json"}, out1);
    call({"certify", data("T3-problem.json"), "--json"}, out2);
    r.require(out1 == out2 && out1 == first, "CLI certificate differs");
    return r;
}

Outcome criterion5() {
    Outcome r;
    GenConfig cfg;
    cfg.point_count = 5;
    cfg.seed = 5;
    cfg.trials = 200;
    const OracleReport rep = oracle_search(cfg);
    r.require(rep.comparisons == 400, "expected 400 comparisons");
    r.require(rep.agreements == 400,
              std::to_string(rep.agreements) + "/" + std::to_string(rep.comparisons) + " agree");
    r.detail = r.pass ? "400/400 agreements" : r.detail;
    return r;
}

Outcome criterion6() {
    Outcome r;
    GenConfig cfg;
    cfg.point_count = 5;
    cfg.seed = 7;
    cfg.trials = 1000;
    const SoundnessReport rep = soundness_search(cfg);
    r.require(rep.trials == 1000, "expected 1000 trials");
    r.require(rep.counterexamples.empty(),
              std::to_string(rep.counterexamples.size()) + " counterexamples");
    const SoundnessReport mutant = soundness_search(cfg, {.invert_contraction = true});
    r.require(!mutant.counterexamples.empty(), "mutant produced no counterexample");
    if (r.pass)
        r.detail = std::to_string(rep.certified) + " certified, 0 counterexamples; mutant found " +
                   std::to_string(mutant.counterexamples.size());
    return r;
}

Outcome criterion7() {
    Outcome r;
    const std::vector<Rational> eps{Rational(1, 20), Rational(1, 4), Rational(1)};
    auto cauchy_dual = [&](const QPSpace& s, const std::vector<std::size_t>& seq) {
        const QPSpace c = conjugate(s);
        for (const auto& e : eps) {
            r.require(same_verdict(classify_cauchy(s, seq, CauchyKind::left_k, e),
                                   classify_cauchy(c, seq, CauchyKind::right_k, e)),
                      "left/right Cauchy duality fails");
            r.require(same_verdict(classify_cauchy(s, seq, CauchyKind::right_k, e),
                                   classify_cauchy(c, seq, CauchyKind::left_k, e)),
                      "right/left Cauchy duality fails");
        }
    };
    cauchy_dual(p3(), {0, 1, 2, 1, 2, 2, 2});
    cauchy_dual(t3(), {0, 1, 2, 2, 2});
    cauchy_dual(t3(), {0, 1, 0, 1, 0, 1});
    cauchy_dual(asym2(), {0, 1, 0, 1, 1, 1});
    r.require(profiles_dual(t3_problem()), "profile duality fails on T3");
    r.require(profiles_dual(Problem{t3(), t3_swap(), t3_pair(), std::nullopt}),
              "profile duality fails on the swap map");
    r.require(profiles_dual(Problem{p3(), SelfMap({1, 2, 2}),
                                    AdmissiblePair::constant(3, Rational(1), Rational(1, 4)),
                                    std::nullopt}),
              "profile duality fails on P3");

    GenConfig cfg;
    cfg.point_count = 5;
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto rng = trial_rng(17, t);
        const Problem p = gen_problem(cfg, rng);
        r.require(profiles_dual(p), "profile duality fails on instance " + std::to_string(t));
        std::uniform_int_distribution<std::size_t> pt(0, p.space.size() - 1);
        std::vector<std::size_t> seq(2 + t % 10);
        for (auto& x : seq) x = pt(rng);
        cauchy_dual(p.space, seq);
    }
    return r;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::string title;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "P3 example values and minimal K", 1.0, criterion1},
        {2, "chain bound residuals", 5.0, criterion2},
        {3, "geometric decay gives left K-Cauchy prefixes", 60.0, criterion3},
        {4, "fix1 certificate on T3", 60.0, criterion4},
        {5, "d2_oracle agrees with check_d2", 60.0, criterion5},
        {6, "soundness search and mutation self-test", 600.0, criterion6},
        {7, "conjugate and profile duality", 600.0, criterion7},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= c.limit_seconds) {
            o.pass = false;
            o.detail = "took " + std::to_string(secs) + " s";
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << " [" << static_cast<int>(secs * 1000) << " ms]\n";
    }
    return failures == 0 ? 0 : 1;
}
