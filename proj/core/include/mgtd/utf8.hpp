#pragma once

#include <string>
#include <string_view>

namespace mgtd::utf8 {

// Throws FormatError on malformed input, overlong forms or surrogates.
std::u32string decode(std::string_view bytes);
std::string encode(std::u32string_view code_points);

}  // namespace mgtd::utf8
