#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pcstore {

using Bytes = std::uint64_t;

inline constexpr Bytes kKB = 1'000;
inline constexpr Bytes kMB = 1'000'000;
inline constexpr Bytes kGB = 1'000'000'000;
inline constexpr Bytes kTB = 1'000'000'000'000;
inline constexpr Bytes kKiB = Bytes{1} << 10;
inline constexpr Bytes kMiB = Bytes{1} << 20;
inline constexpr Bytes kGiB = Bytes{1} << 30;
inline constexpr Bytes kTiB = Bytes{1} << 40;

/// How bare "KB"/"MB"/"GB"/"TB" suffixes are read. "KiB"/"MiB"/... are always binary.
enum class SizeUnits { Decimal, Binary };

/// Parses "80 GB", "64MiB", "1000 MB", "512" (bytes) into an exact byte count.
/// A fractional mantissa is accepted only if it yields a whole number of bytes.
/// Throws InvalidArgument on malformed text or overflow.
[[nodiscard]] Bytes parse_byte_size(std::string_view text, SizeUnits units = SizeUnits::Decimal);

}  // namespace pcstore
