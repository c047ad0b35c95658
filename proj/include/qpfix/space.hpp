#pragma once

#include "qpfix/rational.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qpfix {

/// Completeness properties a user may assert for a space. They are never
/// decided from the matrix.
enum class Completeness { left_complete, right_complete, bicomplete };

std::string_view to_string(Completeness c);
std::optional<Completeness> parse_completeness(std::string_view name);

/// Result of a check: holds iff no witness was produced.
template <class Witness>
struct CheckResult {
    std::optional<Witness> witness;

    bool holds() const noexcept { return !witness.has_value(); }
    explicit operator bool() const noexcept { return holds(); }
};

struct PointPair {
    std::size_t x = 0;
    std::size_t y = 0;
    friend bool operator==(const PointPair&, const PointPair&) = default;
};

/// A finite set X with distance matrix D and relaxation coefficient K.
///
/// Construction enforces only the structural invariants (square nonnegative
/// matrix, distinct names, K > 0). The axioms are checked by the free
/// functions below.
class QPSpace {
public:
    QPSpace(std::vector<std::string> points, RationalMatrix dist, Rational coeff_k,
            std::set<Completeness> asserted = {});

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<std::string>& points() const noexcept { return points_; }
    const std::string& name(std::size_t i) const { return points_.at(i); }

    /// Throws std::out_of_range for unknown identifiers.
    std::size_t index_of(std::string_view name) const;
    std::optional<std::size_t> find(std::string_view name) const;

    const Rational& d(std::size_t x, std::size_t y) const { return dist_(x, y); }
    const RationalMatrix& matrix() const noexcept { return dist_; }
    const Rational& coeff_k() const noexcept { return coeff_k_; }

    const std::set<Completeness>& asserted() const noexcept { return asserted_; }
    bool is_asserted(Completeness c) const { return asserted_.contains(c); }

    QPSpace with_k(Rational k) const;
    QPSpace with_asserted(std::set<Completeness> flags) const;

    friend bool operator==(const QPSpace&, const QPSpace&) = default;

private:
    std::vector<std::string> points_;
    RationalMatrix dist_;
    Rational coeff_k_;
    std::set<Completeness> asserted_;
};

/// x, z1, ..., zn, y with n >= 1 and the sum of its consecutive distances.
struct Chain {
    std::size_t from = 0;
    std::size_t to = 0;
    std::vector<std::size_t> intermediates;
    Rational total;
};

/// Shortest walks over chains with at least one intermediate point.
class WalkTable {
public:
    const RationalMatrix& lengths() const noexcept { return lengths_; }
    const Rational& length(std::size_t x, std::size_t y) const { return lengths_(x, y); }

    /// A chain attaining length(x, y). A direct edge is reported as the
    /// degenerate chain x -> x -> y.
    Chain chain(std::size_t x, std::size_t y) const;

private:
    friend WalkTable shortest_walk(const QPSpace& space);

    RationalMatrix lengths_;
    std::vector<std::size_t> next_;  // next hop on a shortest path, row-major
};

struct D2Witness {
    PointPair pair;
    Rational direct;  // D(x, y)
    Chain chain;      // binding chain, chain.total == shortest walk
};

struct HausdorffWitness {
    std::size_t z = 0;
    std::size_t x = 0;
    std::size_t y = 0;
};

/// Infimum of the admissible K (attained); empty means no finite K exists.
struct MinimalK {
    std::optional<Rational> finite;
    bool infinite() const noexcept { return !finite.has_value(); }
};

std::string to_string(const MinimalK& k);

/// D(x, x) = 0 for every x; witness is the first offending point.
CheckResult<std::size_t> check_d1(const QPSpace& space);

/// Floyd-Warshall over the distance matrix. Requires D1.
WalkTable shortest_walk(const QPSpace& space);

/// D(x, y) <= k * (chain sum) for every chain. Requires D1 and k > 0.
/// The witness is the pair with the largest violation ratio.
CheckResult<D2Witness> check_d2(const QPSpace& space, const Rational& k);

/// Requires D1. Returns 0 for the all-zero matrix.
MinimalK minimal_k(const QPSpace& space);

CheckResult<PointPair> check_t0(const QPSpace& space);

/// Finite-space limit uniqueness: no z with D(x, z) = 0 = D(y, z) for x != y.
/// Requires D1.
CheckResult<HausdorffWitness> check_hausdorff_finite(const QPSpace& space);

QPSpace conjugate(const QPSpace& space);
QPSpace symmetrize(const QPSpace& space);

/// Symmetric, D1, D2 at k and D(x, y) = 0 only for x = y.
bool check_metric_type(const QPSpace& space, const Rational& k);

struct AxiomReport {
    Rational k;  // the coefficient D2 was checked at
    CheckResult<std::size_t> d1;
    std::optional<CheckResult<D2Witness>> d2;  // empty when D1 fails
    CheckResult<PointPair> t0;
    std::optional<CheckResult<HausdorffWitness>> hausdorff;  // empty when D1 fails
    std::optional<MinimalK> minimal_k;                       // empty when D1 fails

    /// D1, D2 at k and T0 all hold.
    bool axioms_hold() const;
};

AxiomReport axiom_report(const QPSpace& space, const Rational& k);

}  // namespace qpfix
