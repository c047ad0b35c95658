#include "qpfix/admissibility.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpfix {

SelfMap SelfMap::identity(std::size_t n) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = i;
    return SelfMap(std::move(images));
}

SelfMap SelfMap::constant(std::size_t n, std::size_t target) {
    return SelfMap(std::vector<std::size_t>(n, target));
}

void SelfMap::validate(const QPSpace& space) const {
    if (images_.size() != space.size())
        throw std::invalid_argument("map is not total on the space");
    for (std::size_t y : images_)
        if (y >= space.size()) throw std::invalid_argument("map image outside the space");
}

AdmissiblePair AdmissiblePair::constant(std::size_t n, Rational c_alpha, Rational c_beta) {
    return AdmissiblePair{RationalMatrix(n, c_alpha), RationalMatrix(n, c_beta), c_alpha, c_beta};
}

AdmissiblePair AdmissiblePair::transposed() const {
    return AdmissiblePair{alpha.transposed(), beta.transposed(), c_alpha, c_beta};
}

void AdmissiblePair::validate(std::size_t n) const {
    if (alpha.side() != n || beta.side() != n)
        throw std::invalid_argument("alpha/beta shape does not match the space");
    if (c_alpha <= 0) throw std::invalid_argument("C_alpha must be positive");
    if (c_beta < 0) throw std::invalid_argument("C_beta must be nonnegative");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (alpha(i, j) < 0 || beta(i, j) < 0)
                throw std::invalid_argument("alpha/beta entries must be nonnegative");
}

std::string_view to_string(Condition c) { return c == Condition::c1 ? "C1" : "C2"; }

std::string_view to_string(SeedOrientation o) {
    switch (o) {
        case SeedOrientation::left: return "left";
        case SeedOrientation::right: return "right";
        case SeedOrientation::min: return "min";
    }
    return "?";
}

namespace {

void validate_all(const QPSpace& space, const SelfMap& f, const AdmissiblePair& pair) {
    f.validate(space);
    pair.validate(space.size());
}

}  // namespace

CheckResult<PointPair> check_c1(const QPSpace& space, const SelfMap& f,
                                 const AdmissiblePair& pair) {
    validate_all(space, f, pair);
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            if (pair.alpha(x, y) >= pair.c_alpha && pair.alpha(f(x), f(y)) < pair.c_alpha)
                return {PointPair{x, y}};
    return {};
}

CheckResult<PointPair> check_c2(const QPSpace& space, const SelfMap& f,
                                 const AdmissiblePair& pair) {
    validate_all(space, f, pair);
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            if (pair.beta(x, y) <= pair.c_beta && pair.beta(f(x), f(y)) > pair.c_beta)
                return {PointPair{x, y}};
    return {};
}

CheckResult<AdmissibilityWitness> check_c1_c2(const QPSpace& space, const SelfMap& f,
                                              const AdmissiblePair& pair) {
    if (auto c1 = check_c1(space, f, pair); !c1)
        return {AdmissibilityWitness{Condition::c1, *c1.witness}};
    if (auto c2 = check_c2(space, f, pair); !c2)
        return {AdmissibilityWitness{Condition::c2, *c2.witness}};
    return {};
}

bool check_c3(const QPSpace& space, const AdmissiblePair& pair) {
    if (pair.c_alpha <= 0) throw std::invalid_argument("C_alpha must be positive");
    // C_beta / C_alpha < 1 / K  <=>  K * C_beta < C_alpha
    return pair.c_beta >= 0 && space.coeff_k() * pair.c_beta < pair.c_alpha;
}

CheckResult<ContractionWitness> check_contraction(const QPSpace& space, const SelfMap& f,
                                                  const AdmissiblePair& pair,
                                                  ContractionForm form) {
    validate_all(space, f, pair);
    auto dist = [&](std::size_t a, std::size_t b) -> Rational {
        if (form == ContractionForm::d) return space.d(a, b);
        return std::max(space.d(a, b), space.d(b, a));
    };
    const std::size_t n = space.size();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            Rational lhs = pair.alpha(x, y) * dist(f(x), f(y));
            Rational rhs = pair.beta(x, y) * dist(x, y);
            if (lhs > rhs) return {ContractionWitness{{x, y}, std::move(lhs), std::move(rhs)}};
        }
    }
    return {};
}

bool seed_condition_holds(const SelfMap& f, const AdmissiblePair& pair, std::size_t x0,
                          SeedOrientation orientation) {
    const std::size_t fx = f(x0);
    switch (orientation) {
        case SeedOrientation::left:
            return pair.alpha(x0, fx) >= pair.c_alpha && pair.beta(x0, fx) <= pair.c_beta;
        case SeedOrientation::right:
            return pair.alpha(fx, x0) >= pair.c_alpha && pair.beta(fx, x0) <= pair.c_beta;
        case SeedOrientation::min:
            return std::min(pair.alpha(x0, fx), pair.alpha(fx, x0)) >= pair.c_alpha &&
                   std::min(pair.beta(x0, fx), pair.beta(fx, x0)) <= pair.c_beta;
    }
    return false;
}

std::vector<std::size_t> find_seed_points(const QPSpace& space, const SelfMap& f,
                                          const AdmissiblePair& pair,
                                          SeedOrientation orientation) {
    validate_all(space, f, pair);
    std::vector<std::size_t> seeds;
    for (std::size_t x = 0; x < space.size(); ++x)
        if (seed_condition_holds(f, pair, x, orientation)) seeds.push_back(x);
    return seeds;
}

}  // namespace qpfix
