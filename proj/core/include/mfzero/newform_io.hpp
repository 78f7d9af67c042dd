#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "mfzero/newform_data.hpp"

namespace mfzero {

inline constexpr int kNewformFormatVersion = 1;

/// Canonical JSON text of a newform file.  Byte-stable for equal forms.
std::string serialize_form(const NewformData& form);

/// Parses and re-validates.  FormatError on schema problems, InvariantError
/// when the coefficients break a NewformData invariant.
NewformData parse_form(std::string_view text);

NewformData load_form(const std::filesystem::path& path);
void save_form(const NewformData& form, const std::filesystem::path& path);

/// 64-bit FNV-1a of the canonical serialization.
std::uint64_t form_fingerprint(const NewformData& form);

}  // namespace mfzero
