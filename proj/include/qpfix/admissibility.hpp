#pragma once

#include "qpfix/space.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace qpfix {

/// A total self-map of a finite space, stored as image indices.
class SelfMap {
public:
    SelfMap() = default;
    explicit SelfMap(std::vector<std::size_t> images) : images_(std::move(images)) {}

    static SelfMap identity(std::size_t n);
    static SelfMap constant(std::size_t n, std::size_t target);

    std::size_t operator()(std::size_t x) const { return images_.at(x); }
    std::size_t size() const noexcept { return images_.size(); }
    const std::vector<std::size_t>& images() const noexcept { return images_; }

    /// Throws std::invalid_argument unless the map is total on `space`.
    void validate(const QPSpace& space) const;

    friend bool operator==(const SelfMap&, const SelfMap&) = default;

private:
    std::vector<std::size_t> images_;
};

/// Weight matrices alpha, beta with their thresholds.
struct AdmissiblePair {
    RationalMatrix alpha;
    RationalMatrix beta;
    Rational c_alpha;
    Rational c_beta;

    /// Constant alpha = c_alpha, beta = c_beta.
    static AdmissiblePair constant(std::size_t n, Rational c_alpha, Rational c_beta);

    AdmissiblePair transposed() const;

    /// Throws std::invalid_argument on shape mismatch, c_alpha <= 0, c_beta < 0
    /// or a negative weight.
    void validate(std::size_t n) const;
};

enum class Condition { c1, c2 };
std::string_view to_string(Condition c);

struct AdmissibilityWitness {
    Condition condition = Condition::c1;
    PointPair pair;
};

CheckResult<PointPair> check_c1(const QPSpace& space, const SelfMap& f,
                                 const AdmissiblePair& pair);
CheckResult<PointPair> check_c2(const QPSpace& space, const SelfMap& f,
                                 const AdmissiblePair& pair);

/// (C1) alpha(x,y) >= C_alpha => alpha(fx,fy) >= C_alpha and
/// (C2) beta(x,y) <= C_beta => beta(fx,fy) <= C_beta, for all ordered pairs.
CheckResult<AdmissibilityWitness> check_c1_c2(const QPSpace& space, const SelfMap& f,
                                              const AdmissiblePair& pair);

/// (C3) C_beta / C_alpha < 1 / K with the space's declared K.
bool check_c3(const QPSpace& space, const AdmissiblePair& pair);

enum class ContractionForm { d, ds };

struct ContractionWitness {
    PointPair pair;
    Rational lhs;  // alpha(x,y) * D(fx,fy)
    Rational rhs;  // beta(x,y) * D(x,y)
};

/// alpha(x,y) D(fx,fy) <= beta(x,y) D(x,y), with D^s in place of D for form ds.
CheckResult<ContractionWitness> check_contraction(const QPSpace& space, const SelfMap& f,
                                                  const AdmissiblePair& pair,
                                                  ContractionForm form);

enum class SeedOrientation { left, right, min };
std::string_view to_string(SeedOrientation o);

bool seed_condition_holds(const SelfMap& f, const AdmissiblePair& pair, std::size_t x0,
                          SeedOrientation orientation);

/// Points x0 meeting the seed condition of the given orientation, in point order.
std::vector<std::size_t> find_seed_points(const QPSpace& space, const SelfMap& f,
                                          const AdmissiblePair& pair,
                                          SeedOrientation orientation);

}  // namespace qpfix
