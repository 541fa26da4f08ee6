#ifndef HADROW_ORDERING_HPP_
#define HADROW_ORDERING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "hadrow/sign_vector.hpp"

namespace hadrow {

/// Row orderings. The numeric values are the scheme byte of the HADP header.
enum class OrderingScheme : std::uint8_t {
    natural = 0,
    sequency = 1,
    dyadic = 2,
};

std::string_view to_string(OrderingScheme scheme) noexcept;
std::optional<OrderingScheme> parse_ordering(std::string_view token) noexcept;
std::optional<OrderingScheme> ordering_from_byte(std::uint8_t value) noexcept;

std::uint64_t gray_code(std::uint64_t value) noexcept;
std::uint64_t bit_reverse(std::uint64_t value, unsigned bits) noexcept;

/// Natural (Sylvester) row index realizing ordered index `k` under `scheme`.
///   natural:  k
///   sequency: bit_reverse(gray_code(k))
///   dyadic:   bit_reverse(k)
/// Computed in O(order) bit operations; no permutation table is built.
std::uint64_t to_natural(std::uint64_t k, unsigned order, OrderingScheme scheme);

SignVector generate_ordered_row(std::uint64_t k, unsigned order, OrderingScheme scheme);

/// Number of adjacent entry pairs whose signs differ.
std::size_t sign_changes(const SignVector& row);

}  // namespace hadrow

#endif  // HADROW_ORDERING_HPP_
