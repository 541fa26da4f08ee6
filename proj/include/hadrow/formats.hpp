#ifndef HADROW_FORMATS_HPP_
#define HADROW_FORMATS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hadrow/ordering.hpp"
#include "hadrow/sign_vector.hpp"

namespace hadrow {

// HADP pattern file layout (all multi-byte integers little-endian):
//
//   offset  size  field
//   0       4     magic "HADP"
//   4       1     version (0x01)
//   5       1     order exponent n
//   6       1     scheme byte (0 natural, 1 sequency, 2 dyadic)
//   7       8     row count, at most 2^n
//   15      1     reserved (0x00)
//
// followed by `count` 8-byte ordered indices (strictly increasing) and then
// `count` packed rows of ceil(2^n / 8) bytes each.

inline constexpr std::size_t kPatternHeaderSize = 16;
inline constexpr std::uint8_t kPatternVersion = 0x01;

struct PatternFileHeader {
    unsigned order = 0;
    OrderingScheme scheme = OrderingScheme::natural;
    std::uint64_t count = 0;

    friend bool operator==(const PatternFileHeader&, const PatternFileHeader&) = default;
};

struct PatternRow {
    std::uint64_t index = 0;
    SignVector row;

    friend bool operator==(const PatternRow&, const PatternRow&) = default;
};

struct PatternFile {
    PatternFileHeader header;
    std::vector<PatternRow> rows;
};

std::array<std::uint8_t, kPatternHeaderSize> encode_header(const PatternFileHeader& header);

/// Incremental HADP writer: the header and index table go out on
/// construction, rows are appended one at a time in index order.
class PatternWriter {
public:
    PatternWriter(std::ostream& out, unsigned order, OrderingScheme scheme,
                  std::span<const std::uint64_t> indices);

    void append(const SignVector& row);

    /// Throws inconsistent_length unless every announced row was appended.
    void finish() const;

    std::uint64_t remaining() const noexcept { return count_ - written_; }

private:
    std::ostream& out_;
    unsigned order_;
    std::uint64_t count_;
    std::uint64_t written_ = 0;
};

void write_patterns(std::ostream& out, unsigned order, OrderingScheme scheme,
                    std::span<const PatternRow> rows);
std::vector<std::uint8_t> encode_patterns(unsigned order, OrderingScheme scheme,
                                          std::span<const PatternRow> rows);

/// Inverse of write_patterns. Distinguishes bad_magic, unsupported_version,
/// truncated_stream and malformed_header.
PatternFile read_patterns(std::istream& in);
PatternFile decode_patterns(std::span<const std::uint8_t> bytes);

enum class TextFormat { csv, pbm };

/// csv: "1,-1,..." plus a trailing newline.
/// pbm: plain P1 bitmap of the row reshaped into a square, +1 -> 0 (white)
/// and -1 -> 1 (black). Requires an even order.
std::string export_row_text(const SignVector& row, TextFormat format);

SignVector parse_row_csv(std::string_view text);
SignVector parse_row_pbm(std::string_view text);

}  // namespace hadrow

#endif  // HADROW_FORMATS_HPP_
