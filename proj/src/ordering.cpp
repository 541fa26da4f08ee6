#include "hadrow/ordering.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hadrow/error.hpp"
#include "hadrow/hadcore.hpp"

namespace hadrow {

std::string_view to_string(OrderingScheme scheme) noexcept {
    switch (scheme) {
        case OrderingScheme::natural: return "natural";
        case OrderingScheme::sequency: return "sequency";
        case OrderingScheme::dyadic: return "dyadic";
    }
    return "natural";
}

std::optional<OrderingScheme> parse_ordering(std::string_view token) noexcept {
    if (token == "natural") return OrderingScheme::natural;
    if (token == "sequency") return OrderingScheme::sequency;
    if (token == "dyadic") return OrderingScheme::dyadic;
    return std::nullopt;
}

std::optional<OrderingScheme> ordering_from_byte(std::uint8_t value) noexcept {
    if (value > static_cast<std::uint8_t>(OrderingScheme::dyadic)) return std::nullopt;
    return static_cast<OrderingScheme>(value);
}

std::uint64_t gray_code(std::uint64_t value) noexcept { return value ^ (value >> 1); }

std::uint64_t bit_reverse(std::uint64_t value, unsigned bits) noexcept {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < bits; ++i) {
        out = (out << 1) | (value & 1U);
        value >>= 1;
    }
    return out;
}

std::uint64_t to_natural(std::uint64_t k, unsigned order, OrderingScheme scheme) {
    if (order < 1 || order > kMaxIndexOrder) {
        throw Error(Errc::invalid_order, "order exponent " + std::to_string(order) +
                                             " outside [1, " + std::to_string(kMaxIndexOrder) +
                                             "]");
    }
    const std::uint64_t limit = std::uint64_t{1} << order;
    if (k >= limit) {
        throw Error(Errc::index_out_of_range, "ordered index " + std::to_string(k) +
                                                  " outside [0, " + std::to_string(limit) + ")");
    }
    switch (scheme) {
        case OrderingScheme::natural: return k;
        case OrderingScheme::sequency: return bit_reverse(gray_code(k), order);
        case OrderingScheme::dyadic: return bit_reverse(k, order);
    }
    return k;
}

SignVector generate_ordered_row(std::uint64_t k, unsigned order, OrderingScheme scheme) {
    return generate_row(to_natural(k, order, scheme), order).row;
}

std::size_t sign_changes(const SignVector& row) {
    // Bit t of (x ^ (x << 1)) flags a change between entries t and t+1.
    const auto bytes = row.bytes();
    std::size_t changes = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const unsigned cur = bytes[i];
        const unsigned next_msb = i + 1 < bytes.size() ? (bytes[i + 1] >> 7) : 0U;
        unsigned flips = (cur ^ ((cur << 1) | next_msb)) & 0xFFU;
        // Pairs that run past the last entry do not count.
        const std::size_t first = i * 8;
        const std::size_t pairs_here =
            row.size() - 1 > first ? std::min<std::size_t>(8, row.size() - 1 - first) : 0;
        flips &= (0xFF00U >> pairs_here) & 0xFFU;
        changes += static_cast<std::size_t>(std::popcount(flips));
    }
    return changes;
}

}  // namespace hadrow
