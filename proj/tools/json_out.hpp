#pragma once

#include <string>

#include <json.hpp>

namespace gegtau::cli {

using Json = nlohmann::ordered_json;

/// Serializes with insertion-ordered keys and every floating-point value
/// printed as %.17g; non-finite numbers become null.
std::string dump(const Json& j, int indent = 2);

/// Single-line form, used for manifest comment lines in CSV output.
std::string dump_compact(const Json& j);

/// %.17g, or the empty string for non-finite values.
std::string format_double(double v);

}  // namespace gegtau::cli
