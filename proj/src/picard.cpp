#include "qpfix/picard.hpp"

#include <stdexcept>

namespace qpfix {

std::optional<std::size_t> Orbit::fixed_point() const {
    if (const auto* fp = std::get_if<FixedPoint>(&terminated)) return entries.at(fp->index);
    return std::nullopt;
}

std::vector<Rational> Orbit::trace() const {
    std::vector<Rational> out = step_dists;
    out.push_back(closing_step);
    return out;
}

std::vector<std::size_t> Orbit::periodic_tail() const {
    if (const auto* fp = std::get_if<FixedPoint>(&terminated)) return {entries.at(fp->index)};
    if (const auto* c = std::get_if<Cycle>(&terminated))
        return {entries.begin() + static_cast<std::ptrdiff_t>(c->start), entries.end()};
    return {};
}

Orbit iterate(const QPSpace& space, const SelfMap& f, std::size_t x0, std::size_t max_steps) {
    f.validate(space);
    if (x0 >= space.size()) throw std::invalid_argument("unknown seed point");
    if (max_steps == 0) throw std::invalid_argument("max_steps must be at least 1");

    Orbit orbit;
    orbit.seed = x0;
    orbit.entries.push_back(x0);
    std::vector<std::optional<std::size_t>> first_visit(space.size());
    first_visit[x0] = 0;

    for (std::size_t n = 0;; ++n) {
        const std::size_t x = orbit.entries[n];
        const std::size_t y = f(x);
        if (y == x) {
            orbit.closing_step = 0;
            orbit.terminated = FixedPoint{n};
            break;
        }
        if (first_visit[y]) {
            orbit.closing_step = space.d(x, y);
            orbit.terminated = Cycle{n + 1 - *first_visit[y], *first_visit[y]};
            break;
        }
        if (n + 1 > max_steps) {
            orbit.closing_step = space.d(x, y);
            orbit.terminated = BudgetExhausted{};
            break;
        }
        first_visit[y] = n + 1;
        orbit.entries.push_back(y);
        orbit.step_dists.push_back(space.d(x, y));
    }

    const auto steps = orbit.trace();
    for (std::size_t n = 1; n < steps.size(); ++n)
        if (steps[n - 1] != 0) orbit.decay_ratios.push_back({n, steps[n] / steps[n - 1]});
    return orbit;
}

DecayCheck verify_decay(std::span<const Rational> steps, const Rational& lambda) {
    if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
    for (std::size_t n = 1; n < steps.size(); ++n)
        if (steps[n] > lambda * steps[n - 1]) return {n};
    return {};
}

DecayCheck verify_decay(const Orbit& orbit, const Rational& lambda) {
    const auto steps = orbit.trace();
    return verify_decay(std::span<const Rational>(steps), lambda);
}

std::vector<ChainBoundRow> verify_chain_bound(const QPSpace& space,
                                              std::span<const std::size_t> points) {
    if (points.size() < 2) throw std::invalid_argument("chain bound needs at least two points");
    const Rational& k = space.coeff_k();
    std::vector<ChainBoundRow> rows;
    // prefix = sum_{i=1}^{n-1} K^i D(x_{i-1}, x_i)
    Rational prefix = 0;
    Rational k_pow = 1;  // K^{n-1}
    for (std::size_t n = 1; n < points.size(); ++n) {
        const Rational& last = space.d(points[n - 1], points[n]);
        ChainBoundRow row{n, space.d(points[0], points[n]), {}, {}};
        row.rhs = n == 1 ? last : Rational(prefix + k_pow * last);
        row.slack = row.rhs - row.lhs;
        rows.push_back(std::move(row));
        k_pow *= k;
        prefix += k_pow * last;
    }
    return rows;
}

std::vector<ChainBoundRow> verify_chain_bound(const QPSpace& space, const Orbit& orbit) {
    return verify_chain_bound(space, std::span<const std::size_t>(orbit.entries));
}

CheckResult<PointPair> check_sequential_continuity(const QPSpace& space, const SelfMap& f,
                                                   ConvergenceMode mode) {
    if (!check_d1(space)) throw std::invalid_argument("continuity check requires D1");
    f.validate(space);
    const bool fwd = mode != ConvergenceMode::dinv;
    const bool bwd = mode != ConvergenceMode::d;
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t z = 0; z < space.size(); ++z) {
            if (fwd && space.d(x, z) == 0 && space.d(f(x), f(z)) != 0) return {PointPair{x, z}};
            if (bwd && space.d(z, x) == 0 && space.d(f(z), f(x)) != 0) return {PointPair{x, z}};
        }
    }
    return {};
}

}  // namespace qpfix
