#pragma once

#include "qpfix/admissibility.hpp"
#include "qpfix/picard.hpp"
#include "qpfix/space.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qpfix {

/// Fixed-point theorem variants a problem can be certified against.
///
///  fix1            left-complete, D-continuous map, seed alpha(x0,fx0) / beta(x0,fx0)
///  fix1_right      right-complete, D^-1-continuous map, mirrored seed
///  bicomplete      bicomplete, D^s-continuous map, symmetric alpha and beta
///  bicomplete_min  bicomplete, min-form seed and min-form limit condition
///  subseq          left-complete, subsequence limit condition instead of continuity
///  fix2            bicomplete, contraction in D^s, limit condition on (x_n, x)
enum class Profile { fix1, fix1_right, bicomplete, bicomplete_min, subseq, fix2 };

std::string_view to_string(Profile p);
std::optional<Profile> parse_profile(std::string_view text);
const std::vector<Profile>& all_profiles();

struct Problem {
    QPSpace space;
    SelfMap f;
    AdmissiblePair pair;
    std::optional<std::size_t> seed;

    /// Throws std::invalid_argument when the components disagree in shape.
    void validate() const;
};

enum class Verdict { verified, asserted, failed };
std::string_view to_string(Verdict v);

/// Ordered key/value detail, already rendered (point names, rationals).
using Witness = std::vector<std::pair<std::string, std::string>>;

struct HypothesisResult {
    std::string name;
    Verdict verdict = Verdict::failed;
    Witness witness;
};

/// An intermediate bound from the existence proof, evaluated on the orbit.
struct BoundCheck {
    std::string name;
    bool holds = false;
    Witness witness;
};

struct Certificate {
    Profile profile = Profile::fix1;
    std::vector<std::string> points;  // names, for rendering
    std::vector<HypothesisResult> hypotheses;
    Orbit orbit;
    std::optional<std::size_t> fixed_point;
    Rational lambda;
    std::vector<ChainBoundRow> bound_residuals;
    std::vector<BoundCheck> bounds;
    std::vector<std::string> notes;

    /// First hypothesis with verdict failed, if any.
    const HypothesisResult* first_failure() const;
};

struct CertifyOptions {
    /// Harness self-test: inverts the contraction verdict.
    bool invert_contraction = false;
};

/// Checks the profile's hypotheses, runs the Picard iteration and records
/// the proof's intermediate bounds. fixed_point is set only when every
/// non-asserted hypothesis is verified and the orbit reaches a fixed point.
Certificate certify(const Problem& problem, Profile profile, const CertifyOptions& options = {});

/// Deterministic human-readable rendering.
std::string explain(const Certificate& certificate);

}  // namespace qpfix
