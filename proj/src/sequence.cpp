#include "qpfix/sequence.hpp"

#include <stdexcept>

namespace qpfix {

std::string_view to_string(CauchyKind kind) {
    switch (kind) {
        case CauchyKind::left_k: return "left_k";
        case CauchyKind::right_k: return "right_k";
        case CauchyKind::ds: return "ds";
    }
    return "?";
}

std::string_view to_string(ConvergenceMode mode) {
    switch (mode) {
        case ConvergenceMode::d: return "D";
        case ConvergenceMode::dinv: return "Dinv";
        case ConvergenceMode::ds: return "Ds";
    }
    return "?";
}

std::optional<CauchyKind> parse_cauchy_kind(std::string_view text) {
    if (text == "left_k") return CauchyKind::left_k;
    if (text == "right_k") return CauchyKind::right_k;
    if (text == "ds") return CauchyKind::ds;
    return std::nullopt;
}

std::optional<ConvergenceMode> parse_convergence_mode(std::string_view text) {
    if (text == "D") return ConvergenceMode::d;
    if (text == "Dinv") return ConvergenceMode::dinv;
    if (text == "Ds") return ConvergenceMode::ds;
    return std::nullopt;
}

namespace {

void validate(const QPSpace& space, std::span<const std::size_t> seq, const Rational& epsilon) {
    if (seq.empty()) throw std::invalid_argument("empty sequence");
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    for (std::size_t p : seq)
        if (p >= space.size()) throw std::invalid_argument("sequence entry outside the space");
}

}  // namespace

CauchyVerdict classify_cauchy(const QPSpace& space, std::span<const std::size_t> seq,
                              CauchyKind kind, const Rational& epsilon) {
    validate(space, seq, epsilon);
    const std::size_t n_len = seq.size();

    // The blocking violation is the one with the largest lower index k; any
    // admissible n0 must exceed it.
    std::optional<CauchyViolation> blocking;
    for (std::size_t k = n_len; k-- > 0;) {
        for (std::size_t n = k + 1; n < n_len; ++n) {
            const Rational& fwd = space.d(seq[k], seq[n]);
            const Rational& bwd = space.d(seq[n], seq[k]);
            const Rational* hit = nullptr;
            switch (kind) {
                case CauchyKind::left_k:
                    if (fwd >= epsilon) hit = &fwd;
                    break;
                case CauchyKind::right_k:
                    if (bwd >= epsilon) hit = &bwd;
                    break;
                case CauchyKind::ds:
                    if (fwd >= epsilon) hit = &fwd;
                    else if (bwd >= epsilon) hit = &bwd;
                    break;
            }
            if (hit) {
                blocking = CauchyViolation{k, n, *hit};
                break;
            }
        }
        if (blocking) break;
    }

    CauchyVerdict verdict{kind, epsilon, std::nullopt, std::nullopt};
    const std::size_t n0 = blocking ? blocking->k + 1 : 0;
    if (n0 <= max_tail_start(n_len)) {
        verdict.witness_n0 = n0;
    } else {
        verdict.violation = blocking;
    }
    return verdict;
}

namespace {

bool within(const QPSpace& space, std::size_t limit, std::size_t x, ConvergenceMode mode,
            const Rational& epsilon) {
    switch (mode) {
        case ConvergenceMode::d: return space.d(limit, x) < epsilon;
        case ConvergenceMode::dinv: return space.d(x, limit) < epsilon;
        case ConvergenceMode::ds:
            return space.d(limit, x) < epsilon && space.d(x, limit) < epsilon;
    }
    return false;
}

}  // namespace

ConvergenceResult check_convergence(const QPSpace& space, std::span<const std::size_t> seq,
                                    std::size_t limit, ConvergenceMode mode,
                                    const Rational& epsilon) {
    validate(space, seq, epsilon);
    if (limit >= space.size()) throw std::invalid_argument("limit outside the space");
    std::size_t start = 0;
    for (std::size_t n = seq.size(); n-- > 0;) {
        if (!within(space, limit, seq[n], mode, epsilon)) {
            start = n + 1;
            break;
        }
    }
    if (start > max_tail_start(seq.size())) return {};
    return {start};
}

std::vector<std::size_t> find_limits(const QPSpace& space, std::span<const std::size_t> seq,
                                     ConvergenceMode mode, const Rational& epsilon) {
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < space.size(); ++z)
        if (check_convergence(space, seq, z, mode, epsilon).holds()) out.push_back(z);
    return out;
}

std::vector<std::size_t> eventual_limits(const QPSpace& space, std::span<const std::size_t> tail,
                                         ConvergenceMode mode) {
    if (tail.empty()) throw std::invalid_argument("empty tail");
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < space.size(); ++z) {
        bool all_zero = true;
        for (std::size_t t : tail) {
            const bool fwd = space.d(z, t) == 0;
            const bool bwd = space.d(t, z) == 0;
            const bool ok = mode == ConvergenceMode::d      ? fwd
                            : mode == ConvergenceMode::dinv ? bwd
                                                            : fwd && bwd;
            if (!ok) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) out.push_back(z);
    }
    return out;
}

}  // namespace qpfix
