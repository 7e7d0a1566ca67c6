#include "json_util.hpp"

#include <algorithm>

namespace pcstore::detail {

json parse_document(std::string_view text, std::string_view source_name) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (const auto pos = what.find("syntax error"); pos != std::string::npos) {
            what = what.substr(pos);
        }
        throw ValidationError(std::string(source_name) + ": line " + std::to_string(line) +
                              ", column " + std::to_string(column) + ": " + what);
    }
}

std::string child_path(const std::string& path, std::string_view key) {
    return path + "/" + std::string(key);
}

std::string child_path(const std::string& path, std::size_t index) {
    return path + "/" + std::to_string(index);
}

void fail(const std::string& path, const std::string& message) {
    throw ValidationError((path.empty() ? std::string("/") : path) + ": " + message);
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

const json& require_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

void reject_unknown_fields(const json& object, const std::string& path,
                           std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(child_path(path, key), "unknown field");
        }
    }
}

const json& require_field(const json& object, const std::string& path, std::string_view key) {
    const auto it = object.find(std::string(key));
    if (it == object.end()) fail(child_path(path, key), "missing required field");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::uint64_t as_unsigned(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

}  // namespace pcstore::detail
