#pragma once

#include "qpfix/space.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qpfix {

// Classification of a finite prefix x_0, ..., x_{N-1}.
//
// A verdict "holds on the prefix" when the tail starting at some n0 meets the
// tolerance, with the tail required to cover at least half of the prefix:
// n0 <= floor(N / 2). Without that floor the empty tail would satisfy every
// condition. The smallest admissible n0 is reported.

enum class CauchyKind { left_k, right_k, ds };
enum class ConvergenceMode { d, dinv, ds };

std::string_view to_string(CauchyKind kind);
std::string_view to_string(ConvergenceMode mode);
std::optional<CauchyKind> parse_cauchy_kind(std::string_view text);
std::optional<ConvergenceMode> parse_convergence_mode(std::string_view text);

/// Largest n0 (or start index) a prefix of length n may report.
constexpr std::size_t max_tail_start(std::size_t n) noexcept { return n / 2; }

struct CauchyViolation {
    std::size_t k = 0;
    std::size_t n = 0;
    Rational distance;
};

struct CauchyVerdict {
    CauchyKind kind = CauchyKind::left_k;
    Rational epsilon;
    std::optional<std::size_t> witness_n0;
    std::optional<CauchyViolation> violation;

    bool holds_on_prefix() const noexcept { return witness_n0.has_value(); }
};

/// Throws std::invalid_argument on an empty sequence, epsilon <= 0 or an
/// entry outside the space.
CauchyVerdict classify_cauchy(const QPSpace& space, std::span<const std::size_t> seq,
                              CauchyKind kind, const Rational& epsilon);

struct ConvergenceResult {
    std::optional<std::size_t> from_index;
    bool holds() const noexcept { return from_index.has_value(); }
};

ConvergenceResult check_convergence(const QPSpace& space, std::span<const std::size_t> seq,
                                    std::size_t limit, ConvergenceMode mode,
                                    const Rational& epsilon);

/// Every point for which check_convergence holds, in point order.
std::vector<std::size_t> find_limits(const QPSpace& space, std::span<const std::size_t> seq,
                                     ConvergenceMode mode, const Rational& epsilon);

/// Exact limits of a sequence that eventually cycles through `tail` forever:
/// the points at distance zero (in the mode's orientation) from every tail point.
std::vector<std::size_t> eventual_limits(const QPSpace& space, std::span<const std::size_t> tail,
                                         ConvergenceMode mode);

}  // namespace qpfix
