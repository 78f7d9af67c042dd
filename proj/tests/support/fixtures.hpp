#pragma once

#include <string>
#include <vector>

#include "mfzero/lfunction.hpp"
#include "mfzero/newform_data.hpp"

namespace fixture {

/// Conductor-11 and conductor-37 curves.
inline constexpr mfzero::AInvariants k11a = {0, -1, 1, -10, -20};
inline constexpr mfzero::AInvariants k37a = {0, 0, 1, -1, 0};

/// "1.12", "1.16", ..., "1.26", "11a", "37a".  Memoized; generated once per
/// process with `terms` coefficients (a longer request regenerates).
const mfzero::NewformData& form(const std::string& key, std::size_t terms = 2000);

/// The six level-one forms followed by 11a.
std::vector<std::string> builtin_keys();

/// Root number w, detected once per key.
mfzero::Sign sign_of(const std::string& key);

/// Zeros up to 40 with default options, memoized.
const mfzero::ZeroList& zeros(const std::string& key);

}  // namespace fixture
