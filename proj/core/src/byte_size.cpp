#include "pcstore/byte_size.hpp"

#include <array>
#include <cctype>
#include <limits>
#include <utility>

#include "pcstore/errors.hpp"

namespace pcstore {

namespace {

__extension__ using Wide = unsigned __int128;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

Bytes multiplier_for(std::string_view suffix, SizeUnits units, std::string_view original) {
    const bool binary = units == SizeUnits::Binary;
    const std::array<std::pair<std::string_view, Bytes>, 14> table{{
        {"", 1},
        {"B", 1},
        {"KB", binary ? kKiB : kKB},
        {"MB", binary ? kMiB : kMB},
        {"GB", binary ? kGiB : kGB},
        {"TB", binary ? kTiB : kTB},
        {"KiB", kKiB},
        {"MiB", kMiB},
        {"GiB", kGiB},
        {"TiB", kTiB},
        {"K", binary ? kKiB : kKB},
        {"M", binary ? kMiB : kMB},
        {"G", binary ? kGiB : kGB},
        {"T", binary ? kTiB : kTB},
    }};
    for (const auto& [name, mult] : table) {
        if (iequals(name, suffix)) return mult;
    }
    throw InvalidArgument("unknown size unit '" + std::string(suffix) + "' in '" +
                          std::string(original) + "'");
}

}  // namespace

Bytes parse_byte_size(std::string_view text, SizeUnits units) {
    const std::string_view s = trim(text);
    std::size_t pos = 0;
    Bytes whole = 0;
    Bytes frac_num = 0;
    Bytes frac_den = 1;
    bool any_digit = false;
    constexpr Bytes kMax = std::numeric_limits<Bytes>::max();

    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        const Bytes digit = static_cast<Bytes>(s[pos] - '0');
        if (whole > (kMax - digit) / 10) {
            throw InvalidArgument("size overflows 64 bits: '" + std::string(text) + "'");
        }
        whole = whole * 10 + digit;
        any_digit = true;
        ++pos;
    }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            if (frac_den >= kMax / 10) {
                throw InvalidArgument("too many fractional digits: '" + std::string(text) + "'");
            }
            frac_num = frac_num * 10 + static_cast<Bytes>(s[pos] - '0');
            frac_den *= 10;
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit) {
        throw InvalidArgument("expected a number in size '" + std::string(text) + "'");
    }

    const Bytes mult = multiplier_for(trim(s.substr(pos)), units, text);
    if (whole != 0 && mult > kMax / whole) {
        throw InvalidArgument("size overflows 64 bits: '" + std::string(text) + "'");
    }
    Bytes total = whole * mult;
    if (frac_num != 0) {
        // frac_num / frac_den * mult must be a whole number of bytes.
        const Wide scaled = static_cast<Wide>(frac_num) * mult;
        if (scaled % frac_den != 0) {
            throw InvalidArgument("size is not a whole number of bytes: '" + std::string(text) +
                                  "'");
        }
        const auto extra = static_cast<Bytes>(scaled / frac_den);
        if (total > kMax - extra) {
            throw InvalidArgument("size overflows 64 bits: '" + std::string(text) + "'");
        }
        total += extra;
    }
    return total;
}

}  // namespace pcstore
