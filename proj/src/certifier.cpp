#include "qpfix/certifier.hpp"

#include "qpfix/sequence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qpfix {

std::string_view to_string(Profile p) {
    switch (p) {
        case Profile::fix1: return "fix1";
        case Profile::fix1_right: return "fix1_right";
        case Profile::bicomplete: return "bicomplete";
        case Profile::bicomplete_min: return "bicomplete_min";
        case Profile::subseq: return "subseq";
        case Profile::fix2: return "fix2";
    }
    return "?";
}

const std::vector<Profile>& all_profiles() {
    static const std::vector<Profile> profiles{Profile::fix1,       Profile::fix1_right,
                                               Profile::bicomplete, Profile::bicomplete_min,
                                               Profile::subseq,     Profile::fix2};
    return profiles;
}

std::optional<Profile> parse_profile(std::string_view text) {
    for (Profile p : all_profiles())
        if (to_string(p) == text) return p;
    return std::nullopt;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::asserted: return "asserted";
        case Verdict::failed: return "failed";
    }
    return "?";
}

void Problem::validate() const {
    f.validate(space);
    pair.validate(space.size());
    if (seed && *seed >= space.size()) throw std::invalid_argument("seed outside the space");
}

const HypothesisResult* Certificate::first_failure() const {
    for (const auto& h : hypotheses)
        if (h.verdict == Verdict::failed) return &h;
    return nullptr;
}

namespace {

// How a profile orients each ingredient.
struct ProfileSpec {
    enum class Hausdorff { d, conjugate, ds };
    enum class Limit { none, subseq, min_form, fix2 };

    Hausdorff hausdorff;
    Completeness completeness;
    ContractionForm contraction;
    std::optional<ConvergenceMode> continuity;
    SeedOrientation seed;
    bool symmetric_weights;
    Limit limit;
    ConvergenceMode limit_mode;
    ConvergenceMode decay_mode;  // orientation of the step trace that contracts
};

ProfileSpec spec_for(Profile p) {
    using H = ProfileSpec::Hausdorff;
    using L = ProfileSpec::Limit;
    using M = ConvergenceMode;
    switch (p) {
        case Profile::fix1:
            return {H::d, Completeness::left_complete, ContractionForm::d, M::d,
                    SeedOrientation::left, false, L::none, M::d, M::d};
        case Profile::fix1_right:
            return {H::conjugate, Completeness::right_complete, ContractionForm::d, M::dinv,
                    SeedOrientation::right, false, L::none, M::dinv, M::dinv};
        case Profile::bicomplete:
            return {H::ds, Completeness::bicomplete, ContractionForm::d, M::ds,
                    SeedOrientation::left, true, L::none, M::ds, M::ds};
        case Profile::bicomplete_min:
            return {H::ds, Completeness::bicomplete, ContractionForm::d, std::nullopt,
                    SeedOrientation::min, false, L::min_form, M::ds, M::ds};
        case Profile::subseq:
            return {H::d, Completeness::left_complete, ContractionForm::d, std::nullopt,
                    SeedOrientation::left, false, L::subseq, M::d, M::d};
        case Profile::fix2:
            return {H::ds, Completeness::bicomplete, ContractionForm::ds, std::nullopt,
                    SeedOrientation::left, false, L::fix2, M::ds, M::ds};
    }
    throw std::invalid_argument("unknown profile");
}

class Builder {
public:
    Builder(const Problem& problem, Certificate& cert) : problem_(problem), cert_(cert) {}

    const std::string& name(std::size_t i) const { return problem_.space.name(i); }

    Witness pair_witness(const PointPair& p) const { return {{"x", name(p.x)}, {"y", name(p.y)}}; }

    void add(std::string hyp, bool ok, Witness witness = {}) {
        cert_.hypotheses.push_back(
            {std::move(hyp), ok ? Verdict::verified : Verdict::failed,
             ok ? Witness{} : std::move(witness)});
    }

    void add_asserted(Completeness c) {
        const bool present = problem_.space.is_asserted(c);
        cert_.hypotheses.push_back(
            {std::string(to_string(c)), present ? Verdict::asserted : Verdict::failed,
             present ? Witness{} : Witness{{"reason", "flag not asserted on the space"}}});
        if (present)
            cert_.notes.push_back(std::string(to_string(c)) +
                                  ": asserted on the input space, not verified");
    }

    void note(std::string text) { cert_.notes.push_back(std::move(text)); }

private:
    const Problem& problem_;
    Certificate& cert_;
};

Rational dist_in_mode(const QPSpace& s, std::size_t a, std::size_t b, ConvergenceMode mode) {
    switch (mode) {
        case ConvergenceMode::d: return s.d(a, b);
        case ConvergenceMode::dinv: return s.d(b, a);
        case ConvergenceMode::ds: return std::max(s.d(a, b), s.d(b, a));
    }
    return 0;
}

// The infinite Picard sequence is entries followed by its periodic tail
// forever; its consecutive pairs are the entry steps plus the closing step.
std::vector<PointPair> consecutive_pairs(const Orbit& orbit, const SelfMap& f) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i + 1 < orbit.entries.size(); ++i)
        out.push_back({orbit.entries[i], orbit.entries[i + 1]});
    const std::size_t last = orbit.entries.back();
    out.push_back({last, f(last)});
    return out;
}

struct LimitOutcome {
    bool ok = true;
    bool vacuous = false;
    Witness witness;
};

LimitOutcome check_limit_condition(const Problem& pb, const Orbit& orbit, ProfileSpec::Limit kind,
                                   ConvergenceMode mode) {
    const auto& s = pb.space;
    const auto& w = pb.pair;
    LimitOutcome out;
    const auto tail = orbit.periodic_tail();
    if (tail.empty()) {
        out.ok = false;
        out.witness = {{"reason", "orbit did not close within the step budget"}};
        return out;
    }

    auto alpha_ok = [&](std::size_t a, std::size_t b) { return w.alpha(a, b) >= w.c_alpha; };
    auto beta_ok = [&](std::size_t a, std::size_t b) { return w.beta(a, b) <= w.c_beta; };
    auto min_ok = [&](std::size_t a, std::size_t b) {
        return std::min(w.alpha(a, b), w.alpha(b, a)) >= w.c_alpha &&
               std::min(w.beta(a, b), w.beta(b, a)) <= w.c_beta;
    };

    // premise on the sequence itself
    bool premise = true;
    const auto steps = consecutive_pairs(orbit, pb.f);
    switch (kind) {
        case ProfileSpec::Limit::subseq:
            // n = 1, 2, ...
            for (std::size_t i = 1; i < steps.size(); ++i)
                premise = premise && alpha_ok(steps[i].x, steps[i].y) &&
                          beta_ok(steps[i].x, steps[i].y);
            if (steps.size() == 1)
                premise = alpha_ok(steps[0].y, steps[0].y) && beta_ok(steps[0].y, steps[0].y);
            break;
        case ProfileSpec::Limit::fix2:
            for (const auto& st : steps) premise = premise && alpha_ok(st.y, st.x) && beta_ok(st.y, st.x);
            break;
        case ProfileSpec::Limit::min_form:
            for (std::size_t a : orbit.entries)
                for (std::size_t b : orbit.entries) premise = premise && min_ok(a, b);
            break;
        case ProfileSpec::Limit::none: break;
    }

    const auto limits = eventual_limits(s, tail, mode);
    if (!premise || limits.empty()) {
        out.vacuous = true;
        return out;
    }

    for (std::size_t x : limits) {
        bool good = false;
        switch (kind) {
            case ProfileSpec::Limit::subseq:
                good = std::any_of(tail.begin(), tail.end(),
                                   [&](std::size_t t) { return alpha_ok(x, t) && beta_ok(x, t); });
                break;
            case ProfileSpec::Limit::min_form:
                good = std::any_of(tail.begin(), tail.end(),
                                   [&](std::size_t t) { return min_ok(x, t); });
                break;
            case ProfileSpec::Limit::fix2: {
                good = true;
                for (std::size_t e : orbit.entries) {
                    if (!(alpha_ok(e, x) && beta_ok(e, x))) {
                        out.ok = false;
                        out.witness = {{"limit", s.name(x)}, {"x_n", s.name(e)}};
                        return out;
                    }
                }
                break;
            }
            case ProfileSpec::Limit::none: good = true; break;
        }
        if (!good) {
            out.ok = false;
            out.witness = {{"limit", s.name(x)},
                           {"reason", "no recurring orbit point meets the threshold relation"}};
            return out;
        }
    }
    return out;
}

}  // namespace

Certificate certify(const Problem& problem, Profile profile, const CertifyOptions& options) {
    problem.validate();
    const ProfileSpec ps = spec_for(profile);
    const QPSpace& space = problem.space;
    const SelfMap& f = problem.f;
    const AdmissiblePair& w = problem.pair;

    Certificate cert;
    cert.profile = profile;
    cert.points = space.points();
    cert.lambda = w.c_beta / w.c_alpha;
    Builder b(problem, cert);

    // axioms
    const auto d1 = check_d1(space);
    b.add("D1", d1.holds(), d1 ? Witness{} : Witness{{"x", b.name(*d1.witness)}});
    if (d1) {
        const auto d2 = check_d2(space, space.coeff_k());
        Witness wit;
        if (!d2) {
            const auto& dw = *d2.witness;
            wit = {{"x", b.name(dw.pair.x)},
                   {"y", b.name(dw.pair.y)},
                   {"direct", to_string(dw.direct)},
                   {"chain_sum", to_string(dw.chain.total)},
                   {"K", to_string(space.coeff_k())}};
        }
        b.add("D2", d2.holds(), std::move(wit));
    } else {
        b.add("D2", false, {{"reason", "requires D1"}});
    }
    const auto t0 = check_t0(space);
    b.add("T0", t0.holds(), t0 ? Witness{} : b.pair_witness(*t0.witness));

    // limit uniqueness
    {
        const char* label = ps.hausdorff == ProfileSpec::Hausdorff::d           ? "hausdorff"
                            : ps.hausdorff == ProfileSpec::Hausdorff::conjugate ? "hausdorff_conjugate"
                                                                                : "hausdorff_ds";
        if (d1) {
            const QPSpace view = ps.hausdorff == ProfileSpec::Hausdorff::d ? space
                                 : ps.hausdorff == ProfileSpec::Hausdorff::conjugate
                                     ? conjugate(space)
                                     : symmetrize(space);
            const auto h = check_hausdorff_finite(view);
            Witness wit;
            if (!h) {
                wit = {{"z", b.name(h.witness->z)},
                       {"x", b.name(h.witness->x)},
                       {"y", b.name(h.witness->y)}};
            }
            b.add(label, h.holds(), std::move(wit));
        } else {
            b.add(label, false, {{"reason", "requires D1"}});
        }
        b.note(std::string(label) +
               ": finite-space surrogate, limits in the finite space are unique");
    }

    b.add_asserted(ps.completeness);

    // admissibility
    const auto c1 = check_c1(space, f, w);
    b.add("C1", c1.holds(), c1 ? Witness{} : b.pair_witness(*c1.witness));
    const auto c2 = check_c2(space, f, w);
    b.add("C2", c2.holds(), c2 ? Witness{} : b.pair_witness(*c2.witness));
    const bool c3 = check_c3(space, w);
    b.add("C3", c3,
          {{"C_beta/C_alpha", to_string(cert.lambda)}, {"1/K", to_string(1 / space.coeff_k())}});

    {
        const auto con = check_contraction(space, f, w, ps.contraction);
        bool ok = con.holds();
        Witness wit;
        if (con.witness) {
            wit = b.pair_witness(con.witness->pair);
            wit.emplace_back("lhs", to_string(con.witness->lhs));
            wit.emplace_back("rhs", to_string(con.witness->rhs));
        }
        if (options.invert_contraction) ok = !ok;
        b.add(ps.contraction == ContractionForm::d ? "contraction" : "contraction_ds", ok,
              std::move(wit));
    }

    if (ps.continuity) {
        const std::string label = "continuity_" + std::string(to_string(*ps.continuity));
        if (d1) {
            const auto cont = check_sequential_continuity(space, f, *ps.continuity);
            b.add(label, cont.holds(), cont ? Witness{} : b.pair_witness(*cont.witness));
        } else {
            b.add(label, false, {{"reason", "requires D1"}});
        }
        b.note(label + ": finite-space surrogate, zero relations are preserved by f");
    }

    if (ps.symmetric_weights) {
        const bool sym = w.alpha.is_symmetric() && w.beta.is_symmetric();
        b.add("symmetric_alpha_beta", sym);
    }

    // seed
    std::optional<std::size_t> seed;
    {
        const std::string label = "seed_" + std::string(to_string(ps.seed));
        if (problem.seed) {
            const bool ok = seed_condition_holds(f, w, *problem.seed, ps.seed);
            b.add(label, ok, {{"x0", b.name(*problem.seed)}});
            seed = problem.seed;
        } else {
            const auto seeds = find_seed_points(space, f, w, ps.seed);
            b.add(label, !seeds.empty(), {{"reason", "no point satisfies the seed condition"}});
            if (!seeds.empty()) seed = seeds.front();
        }
        if (!seed) b.note("orbit: no admissible seed, iterated from the first point instead");
    }

    cert.orbit = iterate(space, f, seed.value_or(0), space.size() + 1);

    if (ps.limit != ProfileSpec::Limit::none) {
        const auto lim = check_limit_condition(problem, cert.orbit, ps.limit, ps.limit_mode);
        b.add("limit_condition", lim.ok, lim.witness);
        b.note(std::string("limit_condition: verified on the produced orbit and its limits only") +
               (lim.vacuous ? " (premise not met on the orbit, holds vacuously)" : ""));
    }

    // intermediate bounds along the orbit
    {
        std::vector<Rational> trace;
        const auto pairs = consecutive_pairs(cert.orbit, f);
        for (const auto& p : pairs) trace.push_back(dist_in_mode(space, p.x, p.y, ps.decay_mode));
        const auto decay = verify_decay(std::span<const Rational>(trace), cert.lambda);
        Witness wit{{"mode", std::string(to_string(ps.decay_mode))}};
        if (!decay.holds()) wit.emplace_back("step", std::to_string(*decay.violating_index));
        cert.bounds.push_back({"decay", decay.holds(), std::move(wit)});
    }
    if (cert.orbit.entries.size() >= 2) {
        cert.bound_residuals = verify_chain_bound(space, cert.orbit);
        const bool nonneg = std::all_of(cert.bound_residuals.begin(), cert.bound_residuals.end(),
                                        [](const ChainBoundRow& r) { return r.slack >= 0; });
        cert.bounds.push_back({"chain_bound", nonneg, {}});
    }
    if (profile == Profile::fix2) {
        // D^s(x*, fx*) <= K D^s(x*, x_{n+1}) + (K C_beta / C_alpha) D^s(x_n, x*)
        const auto tail = cert.orbit.periodic_tail();
        const auto limits = tail.empty() ? std::vector<std::size_t>{}
                                         : eventual_limits(space, tail, ConvergenceMode::ds);
        bool ok = true;
        Witness wit;
        const Rational& k = space.coeff_k();
        for (std::size_t x : limits) {
            const Rational lhs = dist_in_mode(space, x, f(x), ConvergenceMode::ds);
            for (std::size_t xn : cert.orbit.entries) {
                const Rational rhs = k * dist_in_mode(space, x, f(xn), ConvergenceMode::ds) +
                                     k * cert.lambda * dist_in_mode(space, xn, x, ConvergenceMode::ds);
                if (lhs > rhs && ok) {
                    ok = false;
                    wit = {{"limit", b.name(x)}, {"x_n", b.name(xn)}, {"lhs", to_string(lhs)},
                           {"rhs", to_string(rhs)}};
                }
            }
        }
        cert.bounds.push_back({"fix2_inequality", ok, std::move(wit)});
        b.note("fix2_inequality: re-checked along the orbit with C_beta in place of beta(x_n, x*)");
        b.note("fix2: applied to a type space with the declared K");
    }

    const bool all_ok = cert.first_failure() == nullptr;
    if (all_ok) cert.fixed_point = cert.orbit.fixed_point();
    if (all_ok && !cert.fixed_point)
        b.note("hypotheses verified but the orbit did not reach a fixed point");
    return cert;
}

namespace {

std::string render_witness(const Witness& w) {
    std::string out;
    for (const auto& [k, v] : w) {
        if (!out.empty()) out += ", ";
        out += k + "=" + v;
    }
    return out;
}

}  // namespace

std::string explain(const Certificate& c) {
    std::ostringstream os;
    auto nm = [&](std::size_t i) { return i < c.points.size() ? c.points[i] : std::to_string(i); };

    os << "profile: " << to_string(c.profile) << "\n\n";
    os << "hypotheses:\n";
    for (const auto& h : c.hypotheses) {
        os << "  " << h.name;
        for (std::size_t pad = h.name.size(); pad < 22; ++pad) os << ' ';
        os << to_string(h.verdict);
        if (!h.witness.empty()) os << "  (" << render_witness(h.witness) << ")";
        os << "\n";
    }

    os << "\norbit from " << nm(c.orbit.seed) << ":";
    for (std::size_t e : c.orbit.entries) os << " " << nm(e);
    os << "\n";
    if (const auto* fp = std::get_if<FixedPoint>(&c.orbit.terminated)) {
        os << "  terminated: fixed point at index " << fp->index << "\n";
    } else if (const auto* cy = std::get_if<Cycle>(&c.orbit.terminated)) {
        os << "  terminated: cycle of length " << cy->length << " from index " << cy->start << "\n";
    } else {
        os << "  terminated: step budget exhausted\n";
    }
    os << "  step distances:";
    for (const auto& d : c.orbit.step_dists) os << " " << to_string(d);
    os << "\n";

    os << "\nλ = " << to_string(c.lambda) << "\n";

    if (!c.bound_residuals.empty()) {
        os << "\nchain bound (n: lhs <= rhs, slack):\n";
        for (const auto& r : c.bound_residuals)
            os << "  " << r.n << ": " << to_string(r.lhs) << " <= " << to_string(r.rhs) << ", "
               << to_string(r.slack) << "\n";
    }
    if (!c.bounds.empty()) {
        os << "\nbounds:\n";
        for (const auto& bc : c.bounds) {
            os << "  " << bc.name << ": " << (bc.holds ? "holds" : "fails");
            if (!bc.witness.empty()) os << "  (" << render_witness(bc.witness) << ")";
            os << "\n";
        }
    }

    if (!c.notes.empty()) {
        os << "\nsurrogate and asserted checks:\n";
        for (const auto& n : c.notes) os << "  - " << n << "\n";
    }

    os << "\n";
    if (c.fixed_point) {
        os << "fixed point: " << nm(*c.fixed_point) << "\n";
    } else if (const auto* failed = c.first_failure()) {
        os << "no fixed point certified: " << failed->name << " failed";
        if (!failed->witness.empty()) os << " (" << render_witness(failed->witness) << ")";
        os << "\n";
    } else {
        os << "no fixed point certified: orbit did not reach a fixed point\n";
    }
    return os.str();
}

}  // namespace qpfix
