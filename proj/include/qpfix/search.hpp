#pragma once

#include "qpfix/certifier.hpp"
#include "qpfix/space.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace qpfix {

/// Parameters for random instance generation. Desk scale: at most 8 points.
struct GenConfig {
    std::size_t point_count = 3;
    std::vector<Rational> value_grid{Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)};
    std::uint64_t seed = 0;
    std::size_t trials = 1;

    /// Throws std::invalid_argument unless 1 <= point_count <= 8 and 0 is in the grid.
    void validate() const;
};

/// Deterministic generator for trial `trial` of a run seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Random space: zero diagonal, off-diagonals from the grid, K = minimal_k
/// (resampled while minimal_k is infinite; K = 1 when the matrix is all zero).
QPSpace gen_space(const GenConfig& config);
QPSpace gen_space(const GenConfig& config, std::mt19937_64& rng);

/// Random fix1 problem on `point_count` points (completeness flags asserted).
Problem gen_problem(const GenConfig& config, std::mt19937_64& rng);

/// Checks D(x,y) <= k * sum over every chain with 1..max_chain_len
/// intermediates (repeats allowed) by explicit enumeration.
bool d2_oracle(const QPSpace& space, const Rational& k, std::size_t max_chain_len);

struct Counterexample {
    std::size_t trial = 0;
    Problem problem;
};

struct SoundnessReport {
    std::size_t trials = 0;
    std::size_t certified = 0;  // all non-asserted fix1 hypotheses verified
    std::vector<Counterexample> counterexamples;
};

/// Runs `config.trials` random problems through certify(fix1); a
/// counterexample is a certified instance whose orbit ends without a fixed
/// point. Trials run in parallel and are merged by trial index.
SoundnessReport soundness_search(const GenConfig& config, const CertifyOptions& options = {});

struct OracleMismatch {
    std::size_t trial = 0;
    QPSpace space;
    Rational k;
    bool check_d2_verdict = false;
    bool oracle_verdict = false;
};

struct OracleReport {
    std::size_t comparisons = 0;
    std::size_t agreements = 0;
    std::vector<OracleMismatch> mismatches;
};

/// Compares check_d2 with d2_oracle at k = minimal_k and minimal_k - 1/1000
/// on random spaces with a positive entry. Point counts vary over 2..point_count.
OracleReport oracle_search(const GenConfig& config);

}  // namespace qpfix
