#pragma once

#include <string_view>

namespace rougekit {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

// Keyword files carry this schema version; loaders reject anything else.
inline constexpr std::string_view kKeywordFileVersion = "1";

}  // namespace rougekit
