#include "cli.hpp"

#include "qpfix/io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace qpfix::cli {

namespace {

using io::json;

struct Options {
    bool json_out = false;

    // verify
    std::string space_path;
    std::string k_text;
    bool minimal = false;

    // derive
    bool conjugate = false;
    bool symmetrize = false;
    std::string output;

    // classify
    std::string seq_path;
    std::string kind;
    std::string epsilon = "";
    std::string limit;
    std::string mode;

    // solve
    std::string map_path;
    std::string x0;
    std::size_t max_steps = 0;

    // certify
    std::string problem_path;
    std::string profile;

    // search
    std::string search_mode = "soundness";
    std::size_t points = 5;
    std::size_t trials = 1000;
    std::uint64_t seed = 7;
    bool mutate = false;
    std::string grid = "0,1/4,1/2,1";
};

Rational rational_option(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw io::InputError(std::string(flag) + ": " + e.what());
    }
}

std::string chain_text(const QPSpace& s, const Chain& c) {
    std::string out = s.name(c.from);
    for (std::size_t z : c.intermediates) out += " -> " + s.name(z);
    return out + " -> " + s.name(c.to);
}

int do_verify(const Options& o, std::ostream& out) {
    const QPSpace space = io::load_space(o.space_path);
    const Rational k = o.k_text.empty() ? space.coeff_k() : rational_option(o.k_text, "--k");
    if (k <= 0) throw io::InputError("--k: must be positive");
    const AxiomReport r = axiom_report(space, k);
    if (o.json_out) {
        out << io::dump(io::to_json(r, space));
    } else {
        out << "space: " << space.size() << " points, checked at K = " << to_string(k) << "\n";
        out << "D1         " << (r.d1 ? "holds" : "fails at " + space.name(*r.d1.witness)) << "\n";
        out << "D2         ";
        if (!r.d2) {
            out << "not evaluated (requires D1)\n";
        } else if (r.d2->holds()) {
            out << "holds\n";
        } else {
            const auto& w = *r.d2->witness;
            out << "fails: D(" << space.name(w.pair.x) << "," << space.name(w.pair.y)
                << ") = " << to_string(w.direct) << " > " << to_string(k) << " * "
                << to_string(w.chain.total) << " via chain " << chain_text(space, w.chain)
                << " (chain sum " << to_string(w.chain.total) << ")\n";
        }
        out << "T0         "
            << (r.t0 ? std::string("holds")
                     : "fails at (" + space.name(r.t0.witness->x) + "," +
                           space.name(r.t0.witness->y) + ")")
            << "\n";
        out << "hausdorff  ";
        if (!r.hausdorff) {
            out << "not evaluated (requires D1)\n";
        } else if (r.hausdorff->holds()) {
            out << "holds (finite-space criterion)\n";
        } else {
            const auto& w = *r.hausdorff->witness;
            out << "fails: z=" << space.name(w.z) << " is at distance 0 from " << space.name(w.x)
                << " and " << space.name(w.y) << "\n";
        }
        if (o.minimal) {
            out << "minimal K: " << (r.minimal_k ? to_string(*r.minimal_k) : "not evaluated")
                << "\n";
        }
        out << (r.axioms_hold() ? "axioms hold\n" : "axioms fail\n");
    }
    return r.axioms_hold() ? ok : property_failed;
}

int do_derive(const Options& o, std::ostream& out) {
    if (o.conjugate == o.symmetrize)
        throw io::InputError("derive: pass exactly one of --conjugate, --symmetrize");
    const QPSpace space = io::load_space(o.space_path);
    const QPSpace derived = o.conjugate ? conjugate(space) : symmetrize(space);
    if (o.output.empty()) {
        out << io::dump(io::to_json(derived));
    } else {
        io::write_json_file(o.output, io::to_json(derived));
    }
    return ok;
}

int do_classify(const Options& o, std::ostream& out) {
    const io::SequenceInput in = io::load_sequence(o.seq_path);
    if (o.epsilon.empty()) throw io::InputError("classify: --epsilon is required");
    const Rational eps = rational_option(o.epsilon, "--epsilon");
    if (eps <= 0) throw io::InputError("--epsilon: must be positive");

    if (!o.kind.empty()) {
        const auto kind = parse_cauchy_kind(o.kind);
        if (!kind) throw io::InputError("--kind: expected left_k, right_k or ds");
        const CauchyVerdict v = classify_cauchy(in.space, in.entries, *kind, eps);
        if (o.json_out) {
            out << io::dump(io::to_json(v));
        } else if (v.holds_on_prefix()) {
            out << to_string(v.kind) << " holds on prefix at epsilon " << to_string(eps)
                << " from n0 = " << *v.witness_n0 << "\n";
        } else {
            out << to_string(v.kind) << " fails on prefix at epsilon " << to_string(eps);
            if (v.violation)
                out << ": (k, n) = (" << v.violation->k << ", " << v.violation->n
                    << "), distance " << to_string(v.violation->distance);
            out << "\n";
        }
        return v.holds_on_prefix() ? ok : property_failed;
    }

    const auto mode = parse_convergence_mode(o.mode.empty() ? "D" : o.mode);
    if (!mode) throw io::InputError("--mode: expected D, Dinv or Ds");
    if (!o.limit.empty()) {
        const auto limit = in.space.find(o.limit);
        if (!limit) throw io::InputError("--limit: unknown point \"" + o.limit + "\"");
        const ConvergenceResult r = check_convergence(in.space, in.entries, *limit, *mode, eps);
        if (o.json_out) {
            out << io::dump(json{{"limit", o.limit},
                                 {"mode", std::string(to_string(*mode))},
                                 {"epsilon", to_string(eps)},
                                 {"converges", r.holds()},
                                 {"from_index", r.from_index ? json(*r.from_index) : json(nullptr)}});
        } else if (r.holds()) {
            out << to_string(*mode) << "-converges to " << o.limit << " from index "
                << *r.from_index << "\n";
        } else {
            out << "does not " << to_string(*mode) << "-converge to " << o.limit << "\n";
        }
        return r.holds() ? ok : property_failed;
    }

    const auto limits = find_limits(in.space, in.entries, *mode, eps);
    json names = json::array();
    for (std::size_t z : limits) names.push_back(in.space.name(z));
    if (o.json_out) {
        out << io::dump(json{{"mode", std::string(to_string(*mode))},
                             {"epsilon", to_string(eps)},
                             {"limits", names}});
    } else {
        out << to_string(*mode) << "-limits on prefix:";
        for (std::size_t z : limits) out << " " << in.space.name(z);
        out << (limits.empty() ? " none\n" : "\n");
    }
    return limits.empty() ? property_failed : ok;
}

int do_solve(const Options& o, std::ostream& out) {
    const QPSpace space = io::load_space(o.space_path);
    const SelfMap f = io::map_from_json(io::read_json_file(o.map_path), space, o.map_path);
    std::size_t x0 = 0;
    if (!o.x0.empty()) {
        auto idx = space.find(o.x0);
        if (!idx) throw io::InputError("--x0: unknown point \"" + o.x0 + "\"");
        x0 = *idx;
    }
    const std::size_t budget = o.max_steps == 0 ? space.size() + 1 : o.max_steps;
    const Orbit orbit = iterate(space, f, x0, budget);
    if (o.json_out) {
        out << io::dump(io::to_json(orbit, space));
    } else {
        out << "orbit:";
        for (std::size_t e : orbit.entries) out << " " << space.name(e);
        out << "\nstep distances:";
        for (const auto& d : orbit.step_dists) out << " " << to_string(d);
        out << "\n";
        if (const auto* fp = std::get_if<FixedPoint>(&orbit.terminated)) {
            out << "fixed point " << space.name(orbit.entries[fp->index]) << " at index "
                << fp->index << "\n";
        } else if (const auto* c = std::get_if<Cycle>(&orbit.terminated)) {
            out << "cycle of length " << c->length << " from index " << c->start << "\n";
        } else {
            out << "step budget exhausted\n";
        }
        if (orbit.entries.size() >= 2) {
            out << "chain bound (n: lhs <= rhs, slack):\n";
            for (const auto& r : verify_chain_bound(space, orbit))
                out << "  " << r.n << ": " << to_string(r.lhs) << " <= " << to_string(r.rhs)
                    << ", " << to_string(r.slack) << "\n";
        }
    }
    return orbit.fixed_point() ? ok : property_failed;
}

int do_certify(const Options& o, std::ostream& out) {
    const io::ProblemInput in = io::load_problem(o.problem_path);
    Profile profile = in.profile.value_or(Profile::fix1);
    if (!o.profile.empty()) {
        auto p = parse_profile(o.profile);
        if (!p) throw io::InputError("--profile: unknown profile \"" + o.profile + "\"");
        profile = *p;
    }
    const Certificate cert = certify(in.problem, profile);
    out << (o.json_out ? io::dump(io::to_json(cert)) : explain(cert));
    return cert.fixed_point ? ok : property_failed;
}

std::vector<Rational> parse_grid(const std::string& text) {
    std::vector<Rational> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(rational_option(item, "--grid"));
    return grid;
}

int do_search(const Options& o, std::ostream& out) {
    GenConfig config;
    config.point_count = o.points;
    config.trials = o.trials;
    config.seed = o.seed;
    config.value_grid = parse_grid(o.grid);
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw io::InputError(std::string("search: ") + e.what());
    }
    if (o.search_mode == "soundness") {
        const SoundnessReport r = soundness_search(config, {.invert_contraction = o.mutate});
        if (o.json_out) {
            out << io::dump(io::to_json(r));
        } else {
            out << "soundness search: " << r.trials << " trials, " << r.certified
                << " certified, " << r.counterexamples.size() << " counterexamples\n";
        }
        return r.counterexamples.empty() ? ok : property_failed;
    }
    if (o.search_mode == "d2-oracle") {
        OracleReport r;
        try {
            r = oracle_search(config);
        } catch (const std::invalid_argument& e) {
            throw io::InputError(std::string("search: ") + e.what());
        }
        if (o.json_out) {
            out << io::dump(io::to_json(r));
        } else {
            out << "d2 oracle: " << r.agreements << "/" << r.comparisons << " agreements\n";
        }
        return r.mismatches.empty() ? ok : property_failed;
    }
    throw io::InputError("--mode: expected d2-oracle or soundness");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fixed-point certifier for finite quasi-pseudometric type spaces", "qpfix"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json_out, "Machine-readable JSON output");

    auto* verify = app.add_subcommand("verify", "Check D1, D2, T0 and limit uniqueness");
    verify->add_option("space", o.space_path, "Space file")->required();
    verify->add_option("--k", o.k_text, "Check D2 at this K instead of the declared one");
    verify->add_flag("--minimal-k", o.minimal, "Report the smallest valid K");
    verify->add_flag("--json", o.json_out);

    auto* derive = app.add_subcommand("derive", "Write the conjugate or symmetrized space");
    derive->add_option("space", o.space_path, "Space file")->required();
    derive->add_flag("--conjugate", o.conjugate);
    derive->add_flag("--symmetrize", o.symmetrize);
    derive->add_option("-o,--output", o.output, "Output file (default: stdout)");

    auto* classify = app.add_subcommand("classify", "Cauchy and convergence checks on a prefix");
    classify->add_option("sequence", o.seq_path, "Sequence file")->required();
    classify->add_option("--kind", o.kind, "left_k, right_k or ds");
    classify->add_option("--epsilon", o.epsilon, "Tolerance, e.g. 1/20");
    classify->add_option("--limit", o.limit, "Candidate limit point");
    classify->add_option("--mode", o.mode, "D, Dinv or Ds");
    classify->add_flag("--json", o.json_out);

    auto* solve = app.add_subcommand("solve", "Run the Picard iteration");
    solve->add_option("space", o.space_path, "Space file")->required();
    solve->add_option("map", o.map_path, "Map file")->required();
    solve->add_option("--x0", o.x0, "Seed point (default: first point)");
    solve->add_option("--max-steps", o.max_steps, "Step budget (default: |X| + 1)");
    solve->add_flag("--json", o.json_out);

    auto* cert = app.add_subcommand("certify", "Certify a fixed point under a theorem profile");
    cert->add_option("problem", o.problem_path, "Problem file")->required();
    cert->add_option("--profile", o.profile,
                     "fix1, fix1_right, bicomplete, bicomplete_min, subseq or fix2");
    cert->add_flag("--json", o.json_out);

    auto* search = app.add_subcommand("search", "Random oracle and soundness searches");
    search->add_option("--mode", o.search_mode, "d2-oracle or soundness");
    search->add_option("--points", o.points, "Maximum points per space (1..8)");
    search->add_option("--trials", o.trials, "Number of random instances");
    search->add_option("--seed", o.seed, "RNG seed");
    search->add_option("--grid", o.grid, "Comma-separated distance values, must include 0");
    search->add_flag("--mutate", o.mutate, "Invert the contraction check (harness self-test)");
    search->add_flag("--json", o.json_out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }

    try {
        if (*verify) return do_verify(o, out);
        if (*derive) return do_derive(o, out);
        if (*classify) return do_classify(o, out);
        if (*solve) return do_solve(o, out);
        if (*cert) return do_certify(o, out);
        if (*search) return do_search(o, out);
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}

}  // namespace qpfix::cli
