#include "hadrow/formats.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "hadrow/error.hpp"
#include "hadrow/hadcore.hpp"

namespace hadrow {

namespace {

constexpr char kMagic[4] = {'H', 'A', 'D', 'P'};
constexpr std::size_t kPbmLineWidth = 64;

void put_u64(std::uint8_t* dst, std::uint64_t value) {
    for (int i = 0; i < 8; ++i) dst[i] = static_cast<std::uint8_t>(value >> (8 * i));
}

std::uint64_t get_u64(const std::uint8_t* src) {
    std::uint64_t value = 0;
    for (int i = 7; i >= 0; --i) value = (value << 8) | src[i];
    return value;
}

void read_exact(std::istream& in, std::uint8_t* dst, std::size_t size, const char* what) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size) {
        throw Error(Errc::truncated_stream, std::string("pattern stream ends inside ") + what);
    }
}

void require_pattern_order(unsigned order) {
    if (order < 1 || order > kMaxRowOrder) {
        throw Error(Errc::invalid_order, "pattern order " + std::to_string(order) +
                                             " outside [1, " + std::to_string(kMaxRowOrder) + "]");
    }
}

}  // namespace

std::array<std::uint8_t, kPatternHeaderSize> encode_header(const PatternFileHeader& header) {
    std::array<std::uint8_t, kPatternHeaderSize> bytes{};
    std::memcpy(bytes.data(), kMagic, 4);
    bytes[4] = kPatternVersion;
    bytes[5] = static_cast<std::uint8_t>(header.order);
    bytes[6] = static_cast<std::uint8_t>(header.scheme);
    put_u64(bytes.data() + 7, header.count);
    bytes[15] = 0x00;
    return bytes;
}

PatternWriter::PatternWriter(std::ostream& out, unsigned order, OrderingScheme scheme,
                             std::span<const std::uint64_t> indices)
    : out_(out), order_(order), count_(indices.size()) {
    require_pattern_order(order);
    const std::uint64_t limit = std::uint64_t{1} << order;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= limit) {
            throw Error(Errc::index_out_of_range, "pattern index " + std::to_string(indices[i]) +
                                                      " outside [0, " + std::to_string(limit) +
                                                      ")");
        }
        if (i > 0 && indices[i] <= indices[i - 1]) {
            throw Error(Errc::unsorted_indices, "pattern indices must be strictly increasing");
        }
    }

    const auto header = encode_header({order, scheme, count_});
    out_.write(reinterpret_cast<const char*>(header.data()), header.size());
    std::uint8_t word[8];
    for (const auto index : indices) {
        put_u64(word, index);
        out_.write(reinterpret_cast<const char*>(word), 8);
    }
}

void PatternWriter::append(const SignVector& row) {
    if (written_ == count_) {
        throw Error(Errc::inconsistent_length,
                    "more rows appended than the " + std::to_string(count_) + " announced");
    }
    if (row.order() != order_) {
        throw Error(Errc::inconsistent_length, "row of length " + std::to_string(row.size()) +
                                                   " in a pattern file of order " +
                                                   std::to_string(order_));
    }
    const auto bytes = row.bytes();
    out_.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    ++written_;
}

void PatternWriter::finish() const {
    if (written_ != count_) {
        throw Error(Errc::inconsistent_length, "pattern file announced " + std::to_string(count_) +
                                                   " rows but " + std::to_string(written_) +
                                                   " were written");
    }
}

void write_patterns(std::ostream& out, unsigned order, OrderingScheme scheme,
                    std::span<const PatternRow> rows) {
    require_pattern_order(order);
    for (const auto& r : rows) {
        if (r.row.order() != order) {
            throw Error(Errc::inconsistent_length, "row " + std::to_string(r.index) +
                                                       " has length " +
                                                       std::to_string(r.row.size()));
        }
    }
    std::vector<std::uint64_t> indices;
    indices.reserve(rows.size());
    for (const auto& r : rows) indices.push_back(r.index);

    PatternWriter writer(out, order, scheme, indices);
    for (const auto& r : rows) writer.append(r.row);
    writer.finish();
}

std::vector<std::uint8_t> encode_patterns(unsigned order, OrderingScheme scheme,
                                          std::span<const PatternRow> rows) {
    std::ostringstream out(std::ios::binary);
    write_patterns(out, order, scheme, rows);
    const std::string s = std::move(out).str();
    return {s.begin(), s.end()};
}

PatternFile read_patterns(std::istream& in) {
    std::array<std::uint8_t, kPatternHeaderSize> header{};
    // Magic first, so a short foreign stream still reports bad-magic.
    in.read(reinterpret_cast<char*>(header.data()), 4);
    const auto got = static_cast<std::size_t>(in.gcount());
    if (std::memcmp(header.data(), kMagic, got) != 0) {
        throw Error(Errc::bad_magic, "stream does not start with HADP");
    }
    if (got != 4) throw Error(Errc::truncated_stream, "pattern stream ends inside the magic");
    read_exact(in, header.data() + 4, kPatternHeaderSize - 4, "the header");

    if (header[4] != kPatternVersion) {
        throw Error(Errc::unsupported_version,
                    "unsupported pattern format version " + std::to_string(header[4]));
    }
    PatternFile file;
    file.header.order = header[5];
    if (file.header.order < 1 || file.header.order > kMaxRowOrder) {
        throw Error(Errc::malformed_header,
                    "pattern order " + std::to_string(file.header.order) + " is not supported");
    }
    const auto scheme = ordering_from_byte(header[6]);
    if (!scheme) {
        throw Error(Errc::malformed_header, "unknown scheme byte " + std::to_string(header[6]));
    }
    file.header.scheme = *scheme;
    file.header.count = get_u64(header.data() + 7);
    const std::uint64_t limit = std::uint64_t{1} << file.header.order;
    if (file.header.count > limit) {
        throw Error(Errc::malformed_header, "row count " + std::to_string(file.header.count) +
                                                " exceeds 2^" +
                                                std::to_string(file.header.order));
    }
    if (header[15] != 0) throw Error(Errc::malformed_header, "reserved header byte is not zero");

    const auto count = static_cast<std::size_t>(file.header.count);
    std::vector<std::uint64_t> indices;
    std::uint8_t word[8];
    for (std::size_t i = 0; i < count; ++i) {
        read_exact(in, word, 8, "the index table");
        const std::uint64_t index = get_u64(word);
        if (index >= limit) {
            throw Error(Errc::malformed_header, "pattern index " + std::to_string(index) +
                                                    " outside [0, " + std::to_string(limit) +
                                                    ")");
        }
        if (!indices.empty() && index <= indices.back()) {
            throw Error(Errc::unsorted_indices, "pattern indices are not strictly increasing");
        }
        indices.push_back(index);
    }

    const std::size_t row_bytes = packed_size(std::size_t{1} << file.header.order);
    std::vector<std::uint8_t> buffer(row_bytes);
    file.rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        read_exact(in, buffer.data(), row_bytes, "the row payload");
        file.rows.push_back({indices[i], SignVector::from_packed(limit, buffer)});
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw Error(Errc::malformed_header, "trailing bytes after the last pattern row");
    }
    return file;
}

PatternFile decode_patterns(std::span<const std::uint8_t> bytes) {
    std::istringstream in(std::string(bytes.begin(), bytes.end()), std::ios::binary);
    return read_patterns(in);
}

std::string export_row_text(const SignVector& row, TextFormat format) {
    std::string out;
    if (format == TextFormat::csv) {
        out.reserve(row.size() * 3);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) out.push_back(',');
            out += row.is_negative(i) ? "-1" : "1";
        }
        out.push_back('\n');
        return out;
    }

    if (row.order() % 2 != 0) {
        throw Error(Errc::pbm_odd_order, "bitmap export needs an even order, row has 2^" +
                                             std::to_string(row.order()) + " entries");
    }
    const std::size_t side = std::size_t{1} << (row.order() / 2);
    out = "P1\n" + std::to_string(side) + ' ' + std::to_string(side) + '\n';
    out.reserve(out.size() + row.size() + row.size() / kPbmLineWidth + side);
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            out.push_back(row.is_negative(r * side + c) ? '1' : '0');
            // Plain PBM lines stay within 70 characters.
            if ((c + 1) % kPbmLineWidth == 0 && c + 1 != side) out.push_back('\n');
        }
        out.push_back('\n');
    }
    return out;
}

SignVector parse_row_csv(std::string_view text) {
    if (text.ends_with("\r\n")) {
        text.remove_suffix(2);
    } else if (text.ends_with('\n')) {
        text.remove_suffix(1);
    }
    std::vector<int> signs;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const auto token = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
        if (token == "1") {
            signs.push_back(1);
        } else if (token == "-1") {
            signs.push_back(-1);
        } else {
            throw Error(Errc::parse_error, "CSV entry '" + std::string(token) + "' is not 1 or -1");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return SignVector::from_signs(signs);
}

SignVector parse_row_pbm(std::string_view text) {
    std::size_t pos = 0;
    const auto skip_space = [&] {
        while (pos < text.size()) {
            if (text[pos] == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    const auto number = [&](const char* what) {
        skip_space();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            throw Error(Errc::parse_error, std::string("bitmap ") + what + " missing");
        }
        std::size_t value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + static_cast<std::size_t>(text[pos++] - '0');
            if (value > (std::size_t{1} << 31)) {
                throw Error(Errc::parse_error, std::string("bitmap ") + what + " too large");
            }
        }
        return value;
    };

    if (!text.starts_with("P1")) throw Error(Errc::bad_magic, "not a plain P1 bitmap");
    pos = 2;
    const std::size_t width = number("width");
    const std::size_t height = number("height");
    const std::size_t size = width * height;
    if (size == 0 || !std::has_single_bit(size)) {
        throw Error(Errc::invalid_length, "bitmap holds " + std::to_string(size) +
                                              " pixels, not a power of two");
    }
    SignVectorBuilder builder(static_cast<unsigned>(std::countr_zero(size)));
    for (std::size_t i = 0; i < size; ++i) {
        skip_space();
        if (pos >= text.size()) throw Error(Errc::truncated_stream, "bitmap raster is truncated");
        const char c = text[pos++];
        if (c == '1') {
            builder.set_negative(i);
        } else if (c != '0') {
            throw Error(Errc::parse_error, std::string("bitmap pixel '") + c + "' is not 0 or 1");
        }
    }
    skip_space();
    if (pos != text.size()) throw Error(Errc::parse_error, "trailing data after bitmap raster");
    return std::move(builder).build();
}

}  // namespace hadrow
