#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mgtd {

// 64-bit FNV-1a. Identifies datasets and configs in table metadata; not a
// cryptographic hash.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex_digest(std::uint64_t value);

}  // namespace mgtd
