#pragma once

// JSON descriptors, verdict serialization and the on-disk formats for fields
// and radial profiles.

#include "powemb/lpengine.hpp"
#include "powemb/oracle.hpp"
#include "powemb/params.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace powemb {

/// {"family","s","p","q","gamma","dim"}; numbers may be JSON numbers or
/// strings such as "3/4" and "inf". Throws ParseError.
SpaceSpec spec_from_json(const nlohmann::json& j);
/// Rationals are written as "a/b" strings (integers as numbers) so that a
/// round trip is lossless.
nlohmann::json spec_to_json(const SpaceSpec& s);

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a of the text.
std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t h);

/// One JSON header line, then the samples as little-endian complex128.
void write_field(const std::filesystem::path& path, const Field& f, const nlohmann::json& extra = {});
Field read_field(const std::filesystem::path& path);

/// Two-column CSV (r,value) sampled on a log-spaced mesh over the profile's range.
void write_profile_csv(const std::filesystem::path& path, const RadialProfile& prof, std::size_t samples,
                       const std::string& config_hash);
RadialProfile read_profile_csv(const std::filesystem::path& path, int d);

/// Plain decimal text with round-trip precision and no locale.
std::string format_double(double x);

}  // namespace powemb
