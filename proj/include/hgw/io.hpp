#pragma once

#include "hgw/derivations.hpp"
#include "hgw/hypercore.hpp"
#include "hgw/moments.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace hgw::io {

using Json = nlohmann::ordered_json;

/// "p/q", a decimal string, or a bare JSON number. Throws StructuralError.
double parse_weight(std::string_view text);

/// Shortest exact-looking form: "p/q" when a denominator <= 1e6 reproduces
/// the value to 1e-15, otherwise a round-trip decimal.
std::string format_weight(double w);

Json to_json(const Hypergroup& h);
Hypergroup hypergroup_from_json(const Json& j);

/// Array of [re, im] pairs; reads also accept decimal strings and numbers.
Json to_json(const Func& f);
Func func_from_json(const Json& j, std::size_t expected_size);

/// {"rank", "order", "entries": [{"alpha": [...], "values": [...]}]} in
/// graded order.
Json to_json(const MomentSequence& seq);
MomentSequence sequence_from_json(const Json& j, std::size_t expected_size);

/// A moment sequence plus {"strength": "scalar" | "measure"}.
Json to_json(const DerivationFamily& fam, Strength strength);
std::pair<DerivationFamily, Strength> family_from_json(const Json& j, std::size_t expected_size);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

Hypergroup load_hypergroup(const std::filesystem::path& path);
void save_hypergroup(const Hypergroup& h, const std::filesystem::path& path);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string content_hash(const Hypergroup& h);

}  // namespace hgw::io
