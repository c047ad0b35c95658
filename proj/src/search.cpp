#include "qpfix/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace qpfix {

void GenConfig::validate() const {
    if (point_count < 1 || point_count > 8)
        throw std::invalid_argument("point_count must be in 1..8");
    if (std::find(value_grid.begin(), value_grid.end(), Rational(0)) == value_grid.end())
        throw std::invalid_argument("value grid must contain 0");
    for (const auto& v : value_grid)
        if (v < 0) throw std::invalid_argument("value grid must be nonnegative");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

namespace {

template <class T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
    return items[dist(rng)];
}

std::size_t uniform(std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

QPSpace gen_space_sized(std::size_t n, const std::vector<Rational>& grid, std::mt19937_64& rng) {
    for (;;) {
        RationalMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) m(i, j) = pick(grid, rng);
        QPSpace space(default_names(n), m, Rational(1));
        const MinimalK mk = minimal_k(space);
        if (mk.infinite()) continue;
        return *mk.finite > 0 ? space.with_k(*mk.finite) : space;
    }
}

}  // namespace

QPSpace gen_space(const GenConfig& config, std::mt19937_64& rng) {
    config.validate();
    return gen_space_sized(config.point_count, config.value_grid, rng);
}

QPSpace gen_space(const GenConfig& config) {
    std::mt19937_64 rng(config.seed);
    return gen_space(config, rng);
}

Problem gen_problem(const GenConfig& config, std::mt19937_64& rng) {
    config.validate();
    const std::size_t n = uniform(1, config.point_count, rng);
    QPSpace space = gen_space_sized(n, config.value_grid, rng).with_asserted(
        {Completeness::left_complete, Completeness::right_complete, Completeness::bicomplete});

    std::vector<std::size_t> images(n);
    switch (uniform(0, 3, rng)) {
        case 0: std::fill(images.begin(), images.end(), uniform(0, n - 1, rng)); break;
        case 1: {
            const std::size_t a = uniform(0, n - 1, rng);
            const std::size_t b = uniform(0, n - 1, rng);
            for (auto& y : images) y = uniform(0, 1, rng) ? a : b;
            break;
        }
        default:
            for (auto& y : images) y = uniform(0, n - 1, rng);
    }

    static const std::vector<Rational> c_alphas{Rational(1), Rational(2), Rational(1, 2)};
    static const std::vector<Rational> ratios{Rational(0), Rational(1, 10), Rational(1, 4),
                                              Rational(1, 2), Rational(1)};
    const Rational c_alpha = pick(c_alphas, rng);
    const Rational c_beta = c_alpha * pick(ratios, rng);

    AdmissiblePair pair = AdmissiblePair::constant(n, c_alpha, c_beta);
    if (uniform(0, 1, rng)) {
        const std::vector<Rational> alpha_vals{Rational(0), c_alpha / 2, c_alpha, c_alpha * 2};
        const std::vector<Rational> beta_vals{Rational(0), c_beta / 2, c_beta, c_beta + 1};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                pair.alpha(i, j) = pick(alpha_vals, rng);
                pair.beta(i, j) = pick(beta_vals, rng);
            }
        }
    }
    return Problem{std::move(space), SelfMap(std::move(images)), std::move(pair), std::nullopt};
}

bool d2_oracle(const QPSpace& space, const Rational& k, std::size_t max_chain_len) {
    if (max_chain_len < 1) throw std::invalid_argument("max_chain_len must be at least 1");
    if (k <= 0) throw std::invalid_argument("k must be positive");
    const std::size_t n = space.size();

    // Depth-first over x -> z1 -> ... -> zm; at every depth m >= 1 close the
    // chain to each y and test D(x,y) <= k * (partial + D(zm, y)).
    struct Frame {
        std::size_t at;
        Rational partial;
        std::size_t depth;
    };
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<Frame> stack;
        for (std::size_t z = 0; z < n; ++z) stack.push_back({z, space.d(x, z), 1});
        while (!stack.empty()) {
            Frame fr = std::move(stack.back());
            stack.pop_back();
            for (std::size_t y = 0; y < n; ++y) {
                if (space.d(x, y) > k * (fr.partial + space.d(fr.at, y))) return false;
            }
            if (fr.depth < max_chain_len) {
                for (std::size_t z = 0; z < n; ++z)
                    stack.push_back({z, fr.partial + space.d(fr.at, z), fr.depth + 1});
            }
        }
    }
    return true;
}

namespace {

template <class Fn>
void run_trials(std::size_t trials, Fn&& fn) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t t = w; t < trials; t += workers) fn(t);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SoundnessReport soundness_search(const GenConfig& config, const CertifyOptions& options) {
    config.validate();
    struct Outcome {
        bool certified = false;
        std::optional<Problem> counterexample;
    };
    std::vector<Outcome> outcomes(config.trials);
    run_trials(config.trials, [&](std::size_t t) {
        auto rng = trial_rng(config.seed, t);
        Problem problem = gen_problem(config, rng);
        const Certificate cert = certify(problem, Profile::fix1, options);
        if (cert.first_failure() != nullptr) return;
        outcomes[t].certified = true;
        if (!cert.orbit.fixed_point()) outcomes[t].counterexample = std::move(problem);
    });

    SoundnessReport report;
    report.trials = config.trials;
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        if (outcomes[t].certified) ++report.certified;
        if (outcomes[t].counterexample)
            report.counterexamples.push_back({t, std::move(*outcomes[t].counterexample)});
    }
    return report;
}

OracleReport oracle_search(const GenConfig& config) {
    config.validate();
    if (config.point_count < 2) throw std::invalid_argument("oracle search needs point_count >= 2");
    if (std::all_of(config.value_grid.begin(), config.value_grid.end(),
                    [](const Rational& v) { return v == 0; }))
        throw std::invalid_argument("oracle search needs a positive grid value");
    struct Outcome {
        std::vector<OracleMismatch> mismatches;
        std::size_t comparisons = 0;
    };
    std::vector<Outcome> outcomes(config.trials);
    run_trials(config.trials, [&](std::size_t t) {
        auto rng = trial_rng(config.seed, t);
        const std::size_t n = uniform(2, config.point_count, rng);
        QPSpace space = gen_space_sized(n, config.value_grid, rng);
        while (*minimal_k(space).finite == 0)
            space = gen_space_sized(n, config.value_grid, rng);
        const Rational mk = *minimal_k(space).finite;
        std::vector<Rational> ks{mk};
        if (mk - Rational(1, 1000) > 0) ks.push_back(mk - Rational(1, 1000));
        for (const auto& k : ks) {
            const bool fast = check_d2(space, k).holds();
            const bool slow = d2_oracle(space, k, space.size());
            ++outcomes[t].comparisons;
            if (fast != slow) outcomes[t].mismatches.push_back({t, space, k, fast, slow});
        }
    });
    OracleReport report;
    for (auto& o : outcomes) {
        report.comparisons += o.comparisons;
        report.agreements += o.comparisons - o.mismatches.size();
        for (auto& m : o.mismatches) report.mismatches.push_back(std::move(m));
    }
    return report;
}

}  // namespace qpfix
