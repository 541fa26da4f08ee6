#ifndef HADROW_HADCORE_HPP_
#define HADROW_HADCORE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hadrow/sign_vector.hpp"

namespace hadrow {

/// Largest order exponent accepted by index arithmetic (dec2bin, predicted_cost).
inline constexpr unsigned kMaxIndexOrder = 62;
/// Largest order exponent for row generation: 2^30 entries, 128 MiB packed.
inline constexpr unsigned kMaxRowOrder = 30;
/// Largest order exponent for the dense full-matrix oracle.
inline constexpr unsigned kMaxOracleOrder = 13;

/// n-digit binary expansion of a row index, most significant digit first.
struct BitString {
    std::vector<std::uint8_t> digits;
    std::uint64_t source_index = 0;

    unsigned width() const noexcept { return static_cast<unsigned>(digits.size()); }
};

/// Scalar multiplications performed by one generation call.
struct OpCounter {
    std::uint64_t multiplications = 0;
};

/// Rows of the order-two Hadamard matrix: row0 = (+1, +1), row1 = (+1, -1).
struct BaseMatrix {
    static const SignVector& row(unsigned digit);
};

struct GeneratedRow {
    SignVector row;
    OpCounter counter;
    /// Largest number of packed bytes held live by the generation loop
    /// (final row plus one partial product).
    std::size_t peak_working_bytes = 0;
};

BitString dec2bin(std::uint64_t index, unsigned order);

/// Kronecker product. Charges |a|*|b| multiplications to the counter no
/// matter how the bits are actually combined.
SignVector kron(const SignVector& a, const SignVector& b, OpCounter& counter);

/// Order exponent of a Kronecker product of vectors with orders a and b,
/// throwing overflow_order when 2^(a+b) is not representable.
unsigned kron_order(unsigned a, unsigned b);

/// Row `index` of the natural-order Sylvester matrix of order 2^order, built
/// as a cumulative Kronecker product of base-matrix rows selected by the
/// binary digits of the index.
GeneratedRow generate_row(std::uint64_t index, unsigned order);

/// Same row as generate_row, evaluated entry by entry as
/// (-1)^popcount(index & j).
SignVector direct_row(std::uint64_t index, unsigned order);

/// Dense Sylvester matrix built by block doubling. Quadratic memory, so the
/// order is capped at kMaxOracleOrder.
std::vector<SignVector> full_matrix(unsigned order);

/// 2^(order+1) - 2, the multiplication count of generate_row.
std::uint64_t predicted_cost(unsigned order);

}  // namespace hadrow

#endif  // HADROW_HADCORE_HPP_
