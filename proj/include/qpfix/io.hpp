#pragma once

#include "qpfix/admissibility.hpp"
#include "qpfix/certifier.hpp"
#include "qpfix/picard.hpp"
#include "qpfix/search.hpp"
#include "qpfix/sequence.hpp"
#include "qpfix/space.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpfix::io {

using nlohmann::json;

/// Unreadable file, malformed JSON or a schema violation. The message starts
/// with "<file>:<line>:" when a position is known, "<file>:" otherwise.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

/// Canonical serialization: two-space indent, sorted keys, trailing newline.
std::string dump(const json& doc);

// Space file: {"points": [...], "K": "2", "D": [[...]], "asserted": [...]}
QPSpace space_from_json(const json& doc, const std::string& origin);
json to_json(const QPSpace& space);
QPSpace load_space(const std::filesystem::path& path);

// Map file: {"f": {"p": "q", ...}}
SelfMap map_from_json(const json& doc, const QPSpace& space, const std::string& origin);
json to_json(const SelfMap& f, const QPSpace& space);

// Pair file: {"alpha": [[...]], "beta": [[...]], "C_alpha": "1", "C_beta": "1/10"}
AdmissiblePair pair_from_json(const json& doc, const QPSpace& space, const std::string& origin);
json to_json(const AdmissiblePair& pair);

// Sequence file: {"space": "<path>", "entries": [...]}
struct SequenceInput {
    QPSpace space;
    std::vector<std::size_t> entries;
};
SequenceInput load_sequence(const std::filesystem::path& path);

// Problem file: {"space": ..., "map": ..., "pair": ..., "profile": "fix1", "seed": "p"}
// where each component is a path relative to the problem file or an inline object.
struct ProblemInput {
    Problem problem;
    std::optional<Profile> profile;
};
ProblemInput load_problem(const std::filesystem::path& path);
json to_json(const Problem& problem, Profile profile);

json to_json(const AxiomReport& report, const QPSpace& space);
json to_json(const Orbit& orbit, const QPSpace& space);
json to_json(const CauchyVerdict& verdict);
json to_json(const std::vector<ChainBoundRow>& rows);
json to_json(const Certificate& certificate);
json to_json(const SoundnessReport& report);
json to_json(const OracleReport& report);

}  // namespace qpfix::io
