#pragma once

#include "qpfix/admissibility.hpp"
#include "qpfix/sequence.hpp"
#include "qpfix/space.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace qpfix {

struct FixedPoint {
    std::size_t index = 0;
};
struct Cycle {
    std::size_t length = 0;
    std::size_t start = 0;
};
struct BudgetExhausted {};

using Termination = std::variant<FixedPoint, Cycle, BudgetExhausted>;

struct DecayRatio {
    std::size_t n = 0;  // D(x_n, x_{n+1}) / D(x_{n-1}, x_n)
    Rational ratio;
};

/// Picard orbit x_0, f x_0, f^2 x_0, ... up to the first repeated state.
///
/// `entries` holds distinct states only. `closing_step` is the distance from
/// the last entry to its image: 0 at a fixed point, the distance back into the
/// cycle otherwise.
struct Orbit {
    std::size_t seed = 0;
    std::vector<std::size_t> entries;
    std::vector<Rational> step_dists;
    Rational closing_step;
    std::vector<DecayRatio> decay_ratios;
    Termination terminated = BudgetExhausted{};

    std::optional<std::size_t> fixed_point() const;

    /// step_dists followed by closing_step.
    std::vector<Rational> trace() const;

    /// The states the infinite sequence eventually repeats.
    std::vector<std::size_t> periodic_tail() const;
};

/// Throws std::invalid_argument for an unknown seed or max_steps == 0.
Orbit iterate(const QPSpace& space, const SelfMap& f, std::size_t x0, std::size_t max_steps);

struct DecayCheck {
    std::optional<std::size_t> violating_index;
    bool holds() const noexcept { return !violating_index; }
};

/// steps[n] <= lambda * steps[n-1] for every n >= 1.
DecayCheck verify_decay(std::span<const Rational> steps, const Rational& lambda);
DecayCheck verify_decay(const Orbit& orbit, const Rational& lambda);

struct ChainBoundRow {
    std::size_t n = 0;
    Rational lhs;
    Rational rhs;
    Rational slack;
};

/// D(x_0, x_n) against K D(x_0,x_1) + ... + K^{n-1} D(x_{n-2},x_{n-1}) + K^{n-1} D(x_{n-1},x_n)
/// for n = 1 .. |points| - 1. For n = 1 the bound is D(x_0, x_1) itself.
std::vector<ChainBoundRow> verify_chain_bound(const QPSpace& space,
                                              std::span<const std::size_t> points);
std::vector<ChainBoundRow> verify_chain_bound(const QPSpace& space, const Orbit& orbit);

/// Zero-relation preservation: D(x,z) = 0 => D(fx,fz) = 0 (mode d), mirrored
/// for dinv, both for ds. Requires D1.
CheckResult<PointPair> check_sequential_continuity(const QPSpace& space, const SelfMap& f,
                                                   ConvergenceMode mode);

}  // namespace qpfix
