#pragma once

// Strict-schema helpers shared by the scenario and state readers. Every error
// carries a JSON-pointer style path to the offending field.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pcstore/errors.hpp"

namespace pcstore::detail {

using json = nlohmann::json;

/// Parses text, reporting syntax errors as "line L, column C: ...".
json parse_document(std::string_view text, std::string_view source_name);

std::string child_path(const std::string& path, std::string_view key);
std::string child_path(const std::string& path, std::size_t index);

[[noreturn]] void fail(const std::string& path, const std::string& message);

const json& require_object(const json& j, const std::string& path);
const json& require_array(const json& j, const std::string& path);

/// Rejects keys outside allowed.
void reject_unknown_fields(const json& object, const std::string& path,
                           std::initializer_list<std::string_view> allowed);

const json& require_field(const json& object, const std::string& path, std::string_view key);

double as_number(const json& j, const std::string& path);
std::uint64_t as_unsigned(const json& j, const std::string& path);
std::string as_string(const json& j, const std::string& path);
bool as_bool(const json& j, const std::string& path);

}  // namespace pcstore::detail
