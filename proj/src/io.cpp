#include "qpfix/io.hpp"

#include <fstream>
#include <sstream>

namespace qpfix::io {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
    throw InputError(origin + ": " + (where.empty() ? "" : where + ": ") + what);
}

Rational rational_at(const json& v, const std::string& origin, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (!v.is_string()) fail(origin, where, "expected a rational string \"p/q\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(origin, where, e.what());
    }
}

const json& member(const json& doc, const char* key, const std::string& origin) {
    if (!doc.is_object()) fail(origin, "", "expected a JSON object");
    auto it = doc.find(key);
    if (it == doc.end()) fail(origin, "", std::string("missing key \"") + key + "\"");
    return *it;
}

RationalMatrix matrix_at(const json& v, std::size_t n, const std::string& origin,
                         const std::string& key) {
    if (!v.is_array() || v.size() != n)
        fail(origin, key, "expected " + std::to_string(n) + " rows");
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = v[i];
        const std::string where = key + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != n)
            fail(origin, where, "expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = rational_at(row[j], origin, where + "[" + std::to_string(j) + "]");
    }
    return m;
}

std::size_t point_at(const json& v, const QPSpace& space, const std::string& origin,
                     const std::string& where) {
    if (!v.is_string()) fail(origin, where, "expected a point identifier");
    auto idx = space.find(v.get<std::string>());
    if (!idx) fail(origin, where, "unknown point \"" + v.get<std::string>() + "\"");
    return *idx;
}

json matrix_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.side(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.side(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json witness_json(const Witness& w) {
    json out = json::object();
    for (const auto& [k, v] : w) out[k] = v;
    return out;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
    const std::string origin = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(origin + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t end = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < end; ++i)
            if (text[i] == '\n') ++line;
        throw InputError(origin + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
    }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path.string() + ": cannot write file");
    out << dump(doc);
}

QPSpace space_from_json(const json& doc, const std::string& origin) {
    const json& pts = member(doc, "points", origin);
    if (!pts.is_array() || pts.empty()) fail(origin, "points", "expected a nonempty array");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i].is_string())
            fail(origin, "points[" + std::to_string(i) + "]", "expected a string");
        names.push_back(pts[i].get<std::string>());
    }
    RationalMatrix dist = matrix_at(member(doc, "D", origin), names.size(), origin, "D");
    Rational k = rational_at(member(doc, "K", origin), origin, "K");
    std::set<Completeness> flags;
    if (auto it = doc.find("asserted"); it != doc.end()) {
        if (!it->is_array()) fail(origin, "asserted", "expected an array");
        for (const auto& tag : *it) {
            auto c = tag.is_string() ? parse_completeness(tag.get<std::string>()) : std::nullopt;
            if (!c) fail(origin, "asserted", "unknown completeness tag " + tag.dump());
            flags.insert(*c);
        }
    }
    try {
        return QPSpace(std::move(names), std::move(dist), std::move(k), std::move(flags));
    } catch (const std::invalid_argument& e) {
        fail(origin, "", e.what());
    }
}

json to_json(const QPSpace& space) {
    json flags = json::array();
    for (Completeness c : space.asserted()) flags.push_back(std::string(to_string(c)));
    return json{{"points", space.points()},
                {"K", to_string(space.coeff_k())},
                {"D", matrix_json(space.matrix())},
                {"asserted", flags}};
}

QPSpace load_space(const std::filesystem::path& path) {
    return space_from_json(read_json_file(path), path.string());
}

SelfMap map_from_json(const json& doc, const QPSpace& space, const std::string& origin) {
    const json& f = member(doc, "f", origin);
    if (!f.is_object()) fail(origin, "f", "expected an object mapping point -> point");
    std::vector<std::optional<std::size_t>> images(space.size());
    for (const auto& [from, to] : f.items()) {
        auto x = space.find(from);
        if (!x) fail(origin, "f", "unknown point \"" + from + "\"");
        images[*x] = point_at(to, space, origin, "f." + from);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i]) fail(origin, "f", "no image for point \"" + space.name(i) + "\"");
        out.push_back(*images[i]);
    }
    return SelfMap(std::move(out));
}

json to_json(const SelfMap& f, const QPSpace& space) {
    json m = json::object();
    for (std::size_t i = 0; i < f.size(); ++i) m[space.name(i)] = space.name(f(i));
    return json{{"f", m}};
}

AdmissiblePair pair_from_json(const json& doc, const QPSpace& space, const std::string& origin) {
    const std::size_t n = space.size();
    AdmissiblePair pair{matrix_at(member(doc, "alpha", origin), n, origin, "alpha"),
                        matrix_at(member(doc, "beta", origin), n, origin, "beta"),
                        rational_at(member(doc, "C_alpha", origin), origin, "C_alpha"),
                        rational_at(member(doc, "C_beta", origin), origin, "C_beta")};
    try {
        pair.validate(n);
    } catch (const std::invalid_argument& e) {
        fail(origin, "", e.what());
    }
    return pair;
}

json to_json(const AdmissiblePair& pair) {
    return json{{"alpha", matrix_json(pair.alpha)},
                {"beta", matrix_json(pair.beta)},
                {"C_alpha", to_string(pair.c_alpha)},
                {"C_beta", to_string(pair.c_beta)}};
}

namespace {

// A component given as a path (relative to the referencing file) or inline.
json component(const json& doc, const char* key, const std::filesystem::path& base,
               const std::string& origin, std::string& component_origin) {
    const json& v = member(doc, key, origin);
    if (v.is_string()) {
        std::filesystem::path p = v.get<std::string>();
        if (p.is_relative()) p = base / p;
        component_origin = p.string();
        return read_json_file(p);
    }
    if (!v.is_object()) fail(origin, key, "expected a path or an inline object");
    component_origin = origin + ":" + key;
    return v;
}

}  // namespace

SequenceInput load_sequence(const std::filesystem::path& path) {
    const std::string origin = path.string();
    const json doc = read_json_file(path);
    std::string space_origin;
    const json space_doc = component(doc, "space", path.parent_path(), origin, space_origin);
    QPSpace space = space_from_json(space_doc, space_origin);
    const json& entries = member(doc, "entries", origin);
    if (!entries.is_array() || entries.empty())
        fail(origin, "entries", "expected a nonempty array");
    std::vector<std::size_t> seq;
    for (std::size_t i = 0; i < entries.size(); ++i)
        seq.push_back(point_at(entries[i], space, origin, "entries[" + std::to_string(i) + "]"));
    return {std::move(space), std::move(seq)};
}

ProblemInput load_problem(const std::filesystem::path& path) {
    const std::string origin = path.string();
    const json doc = read_json_file(path);
    const auto base = path.parent_path();
    std::string so, mo, po;
    QPSpace space = space_from_json(component(doc, "space", base, origin, so), so);
    SelfMap f = map_from_json(component(doc, "map", base, origin, mo), space, mo);
    AdmissiblePair pair = pair_from_json(component(doc, "pair", base, origin, po), space, po);
    std::optional<std::size_t> seed;
    if (auto it = doc.find("seed"); it != doc.end() && !it->is_null())
        seed = point_at(*it, space, origin, "seed");
    std::optional<Profile> profile;
    if (auto it = doc.find("profile"); it != doc.end()) {
        if (!it->is_string() || !(profile = parse_profile(it->get<std::string>())))
            fail(origin, "profile", "unknown profile " + it->dump());
    }
    return {Problem{std::move(space), std::move(f), std::move(pair), seed}, profile};
}

json to_json(const Problem& problem, Profile profile) {
    json doc{{"space", to_json(problem.space)},
             {"map", to_json(problem.f, problem.space)},
             {"pair", to_json(problem.pair)},
             {"profile", std::string(to_string(profile))}};
    if (problem.seed) doc["seed"] = problem.space.name(*problem.seed);
    return doc;
}

json to_json(const AxiomReport& r, const QPSpace& space) {
    json doc;
    doc["k"] = to_string(r.k);
    doc["d1_holds"] = r.d1.holds();
    doc["d1_witness"] = r.d1 ? json(nullptr) : json(space.name(*r.d1.witness));
    doc["t0_holds"] = r.t0.holds();
    doc["t0_witness"] = r.t0 ? json(nullptr)
                             : json::array({space.name(r.t0.witness->x), space.name(r.t0.witness->y)});
    doc["d2_holds"] = r.d2 ? json(r.d2->holds()) : json(nullptr);
    doc["d2_witness"] = nullptr;
    if (r.d2 && r.d2->witness) {
        const auto& w = *r.d2->witness;
        json chain = json::array({space.name(w.chain.from)});
        for (std::size_t z : w.chain.intermediates) chain.push_back(space.name(z));
        chain.push_back(space.name(w.chain.to));
        doc["d2_witness"] = json{{"pair", json::array({space.name(w.pair.x), space.name(w.pair.y)})},
                                 {"direct", to_string(w.direct)},
                                 {"chain", chain},
                                 {"chain_sum", to_string(w.chain.total)}};
    }
    doc["hausdorff_finite"] = r.hausdorff ? json(r.hausdorff->holds()) : json(nullptr);
    doc["hausdorff_witness"] = nullptr;
    if (r.hausdorff && r.hausdorff->witness) {
        const auto& w = *r.hausdorff->witness;
        doc["hausdorff_witness"] =
            json::array({space.name(w.z), space.name(w.x), space.name(w.y)});
    }
    doc["minimal_k"] = r.minimal_k ? json(to_string(*r.minimal_k)) : json(nullptr);
    doc["axioms_hold"] = r.axioms_hold();
    return doc;
}

json to_json(const Orbit& orbit, const QPSpace& space) {
    json entries = json::array();
    for (std::size_t e : orbit.entries) entries.push_back(space.name(e));
    json steps = json::array();
    for (const auto& d : orbit.step_dists) steps.push_back(to_string(d));
    json ratios = json::array();
    for (const auto& r : orbit.decay_ratios) ratios.push_back({{"n", r.n}, {"ratio", to_string(r.ratio)}});
    json term;
    if (const auto* fp = std::get_if<FixedPoint>(&orbit.terminated)) {
        term = {{"kind", "fixed_point"}, {"index", fp->index}};
    } else if (const auto* c = std::get_if<Cycle>(&orbit.terminated)) {
        term = {{"kind", "cycle"}, {"length", c->length}, {"start", c->start}};
    } else {
        term = {{"kind", "budget_exhausted"}};
    }
    return json{{"seed", space.name(orbit.seed)},
                {"entries", entries},
                {"step_dists", steps},
                {"closing_step", to_string(orbit.closing_step)},
                {"decay_ratios", ratios},
                {"terminated", term}};
}

json to_json(const CauchyVerdict& v) {
    json doc{{"kind", std::string(to_string(v.kind))},
             {"epsilon", to_string(v.epsilon)},
             {"holds_on_prefix", v.holds_on_prefix()},
             {"witness_n0", v.witness_n0 ? json(*v.witness_n0) : json(nullptr)},
             {"violation", nullptr}};
    if (v.violation)
        doc["violation"] = {{"k", v.violation->k},
                            {"n", v.violation->n},
                            {"distance", to_string(v.violation->distance)}};
    return doc;
}

json to_json(const std::vector<ChainBoundRow>& rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"n", r.n},
                       {"lhs", to_string(r.lhs)},
                       {"rhs", to_string(r.rhs)},
                       {"slack", to_string(r.slack)}});
    return out;
}

json to_json(const Certificate& c) {
    // Orbit rendering only needs point names.
    const QPSpace names(c.points, RationalMatrix(c.points.size()), Rational(1));
    json hyps = json::array();
    for (const auto& h : c.hypotheses)
        hyps.push_back({{"name", h.name},
                        {"verdict", std::string(to_string(h.verdict))},
                        {"witness", witness_json(h.witness)}});
    json bounds = json::array();
    for (const auto& b : c.bounds)
        bounds.push_back({{"name", b.name}, {"holds", b.holds}, {"witness", witness_json(b.witness)}});
    return json{{"profile", std::string(to_string(c.profile))},
                {"hypotheses", hyps},
                {"orbit", to_json(c.orbit, names)},
                {"fixed_point", c.fixed_point ? json(c.points.at(*c.fixed_point)) : json(nullptr)},
                {"lambda", to_string(c.lambda)},
                {"bound_residuals", to_json(c.bound_residuals)},
                {"bounds", bounds},
                {"notes", c.notes}};
}

json to_json(const SoundnessReport& r) {
    json findings = json::array();
    for (const auto& ce : r.counterexamples)
        findings.push_back({{"trial", ce.trial}, {"problem", to_json(ce.problem, Profile::fix1)}});
    return json{{"mode", "soundness"},
                {"trials", r.trials},
                {"certified", r.certified},
                {"findings", findings}};
}

json to_json(const OracleReport& r) {
    json findings = json::array();
    for (const auto& m : r.mismatches)
        findings.push_back({{"trial", m.trial},
                            {"space", to_json(m.space)},
                            {"k", to_string(m.k)},
                            {"check_d2", m.check_d2_verdict},
                            {"oracle", m.oracle_verdict}});
    return json{{"mode", "d2-oracle"},
                {"comparisons", r.comparisons},
                {"agreements", r.agreements},
                {"findings", findings}};
}

}  // namespace qpfix::io
