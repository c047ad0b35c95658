#include "qpfix/space.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace qpfix {

std::string_view to_string(Completeness c) {
    switch (c) {
        case Completeness::left_complete: return "left_complete";
        case Completeness::right_complete: return "right_complete";
        case Completeness::bicomplete: return "bicomplete";
    }
    return "?";
}

std::optional<Completeness> parse_completeness(std::string_view name) {
    if (name == "left_complete") return Completeness::left_complete;
    if (name == "right_complete") return Completeness::right_complete;
    if (name == "bicomplete") return Completeness::bicomplete;
    return std::nullopt;
}

QPSpace::QPSpace(std::vector<std::string> points, RationalMatrix dist, Rational coeff_k,
                 std::set<Completeness> asserted)
    : points_(std::move(points)),
      dist_(std::move(dist)),
      coeff_k_(std::move(coeff_k)),
      asserted_(std::move(asserted)) {
    if (points_.empty()) throw std::invalid_argument("space has no points");
    if (dist_.side() != points_.size())
        throw std::invalid_argument("distance matrix side does not match point count");
    if (coeff_k_ <= 0) throw std::invalid_argument("K must be positive");
    std::unordered_set<std::string> seen;
    for (const auto& p : points_) {
        if (!seen.insert(p).second) throw std::invalid_argument("duplicate point \"" + p + "\"");
    }
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (dist_(i, j) < 0)
                throw std::invalid_argument("negative distance D(" + points_[i] + "," +
                                            points_[j] + ")");
}

std::optional<std::size_t> QPSpace::find(std::string_view name) const {
    auto it = std::find(points_.begin(), points_.end(), name);
    if (it == points_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

std::size_t QPSpace::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw std::out_of_range("unknown point \"" + std::string(name) + "\"");
}

QPSpace QPSpace::with_k(Rational k) const {
    return QPSpace(points_, dist_, std::move(k), asserted_);
}

QPSpace QPSpace::with_asserted(std::set<Completeness> flags) const {
    return QPSpace(points_, dist_, coeff_k_, std::move(flags));
}

std::string to_string(const MinimalK& k) {
    return k.infinite() ? std::string("inf") : to_string(*k.finite);
}

CheckResult<std::size_t> check_d1(const QPSpace& space) {
    for (std::size_t i = 0; i < space.size(); ++i)
        if (space.d(i, i) != 0) return {i};
    return {};
}

WalkTable shortest_walk(const QPSpace& space) {
    if (!check_d1(space)) throw std::invalid_argument("shortest_walk requires D1");
    const std::size_t n = space.size();
    WalkTable table;
    table.lengths_ = space.matrix();
    table.next_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table.next_[i * n + j] = j;

    auto& len = table.lengths_;
    Rational through;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == m) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == m || j == i) continue;
                through = len(i, m) + len(m, j);
                // strict improvement keeps the next-hop graph acyclic under zero weights
                if (through < len(i, j)) {
                    len(i, j) = through;
                    table.next_[i * n + j] = table.next_[i * n + m];
                }
            }
        }
    }
    return table;
}

Chain WalkTable::chain(std::size_t x, std::size_t y) const {
    const std::size_t n = lengths_.side();
    Chain c{x, y, {}, lengths_(x, y)};
    if (x == y) {
        c.intermediates.push_back(x);
        return c;
    }
    for (std::size_t at = next_[x * n + y]; at != y; at = next_[at * n + y]) {
        c.intermediates.push_back(at);
    }
    if (c.intermediates.empty()) c.intermediates.push_back(x);
    return c;
}

namespace {

// Largest D(x,y)/walk(x,y) over pairs with D(x,y) > 0; pair with walk 0 wins outright.
struct Binding {
    std::optional<PointPair> pair;
    bool infinite = false;
    Rational ratio;
};

Binding binding_pair(const QPSpace& space, const WalkTable& walks) {
    Binding best;
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t y = 0; y < space.size(); ++y) {
            const Rational& direct = space.d(x, y);
            if (direct == 0) continue;
            const Rational& walk = walks.length(x, y);
            if (walk == 0) {
                if (!best.infinite) best = Binding{PointPair{x, y}, true, Rational(0)};
                continue;
            }
            if (best.infinite) continue;
            Rational ratio = direct / walk;
            if (!best.pair || ratio > best.ratio) best = Binding{PointPair{x, y}, false, ratio};
        }
    }
    return best;
}

}  // namespace

CheckResult<D2Witness> check_d2(const QPSpace& space, const Rational& k) {
    if (k <= 0) throw std::invalid_argument("check_d2 requires k > 0");
    const WalkTable walks = shortest_walk(space);
    const Binding b = binding_pair(space, walks);
    if (!b.pair) return {};
    if (!b.infinite && b.ratio <= k) return {};
    const auto [x, y] = *b.pair;
    return {D2Witness{*b.pair, space.d(x, y), walks.chain(x, y)}};
}

MinimalK minimal_k(const QPSpace& space) {
    const Binding b = binding_pair(space, shortest_walk(space));
    if (!b.pair) return {Rational(0)};
    if (b.infinite) return {};
    return {b.ratio};
}

CheckResult<PointPair> check_t0(const QPSpace& space) {
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = x + 1; y < space.size(); ++y)
            if (space.d(x, y) == 0 && space.d(y, x) == 0) return {PointPair{x, y}};
    return {};
}

CheckResult<HausdorffWitness> check_hausdorff_finite(const QPSpace& space) {
    if (!check_d1(space)) throw std::invalid_argument("check_hausdorff_finite requires D1");
    for (std::size_t z = 0; z < space.size(); ++z) {
        for (std::size_t x = 0; x < space.size(); ++x) {
            if (space.d(x, z) != 0) continue;
            for (std::size_t y = x + 1; y < space.size(); ++y)
                if (space.d(y, z) == 0) return {HausdorffWitness{z, x, y}};
        }
    }
    return {};
}

QPSpace conjugate(const QPSpace& space) {
    return QPSpace(space.points(), space.matrix().transposed(), space.coeff_k(),
                   space.asserted());
}

QPSpace symmetrize(const QPSpace& space) {
    RationalMatrix m = space.matrix();
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j) m(i, j) = std::max(space.d(i, j), space.d(j, i));
    return QPSpace(space.points(), std::move(m), space.coeff_k(), space.asserted());
}

bool check_metric_type(const QPSpace& space, const Rational& k) {
    if (!space.matrix().is_symmetric() || !check_d1(space)) return false;
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            if (x != y && space.d(x, y) == 0) return false;
    return check_d2(space, k).holds();
}

bool AxiomReport::axioms_hold() const {
    return d1.holds() && d2 && d2->holds() && t0.holds();
}

AxiomReport axiom_report(const QPSpace& space, const Rational& k) {
    AxiomReport report{k, check_d1(space), std::nullopt, check_t0(space), std::nullopt,
                       std::nullopt};
    if (report.d1.holds()) {
        report.d2 = check_d2(space, k);
        report.hausdorff = check_hausdorff_finite(space);
        report.minimal_k = minimal_k(space);
    }
    return report;
}

}  // namespace qpfix
