#ifndef HADROW_SIGN_VECTOR_HPP_
#define HADROW_SIGN_VECTOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hadrow {

/// A length-2^k vector over {+1, -1}, stored one bit per entry.
///
/// Bit 0 encodes +1 and bit 1 encodes -1. Entries are packed most
/// significant bit first within each byte and the final byte is zero-padded,
/// so the packed form is exactly ceil(size / 8) bytes and the all-(+1)
/// vector packs to zero bytes.
class SignVector {
public:
    /// Length-1 vector (+1), the identity of the Kronecker product.
    SignVector();

    /// All-(+1) vector of length 2^order.
    explicit SignVector(unsigned order);

    /// Builds from logical entries; each must be exactly +1 or -1 and the
    /// length must be a power of two.
    static SignVector from_signs(std::span<const int> signs);

    /// Inverse of bytes(): validates the byte count and the zero padding.
    static SignVector from_packed(std::size_t size, std::span<const std::uint8_t> bytes);

    std::size_t size() const noexcept { return size_; }
    unsigned order() const noexcept { return order_; }

    int operator[](std::size_t i) const noexcept { return is_negative(i) ? -1 : 1; }

    bool is_negative(std::size_t i) const noexcept {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U;
    }

    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
    std::size_t storage_capacity() const noexcept { return bytes_.capacity(); }

    std::vector<int> to_signs() const;

    /// Number of -1 entries.
    std::size_t negative_count() const noexcept;

    SignVector negated() const;

    friend bool operator==(const SignVector&, const SignVector&) = default;

private:
    friend class SignVectorBuilder;

    SignVector(unsigned order, std::vector<std::uint8_t> bytes);

    std::size_t size_;
    unsigned order_;
    std::vector<std::uint8_t> bytes_;
};

/// Mutable construction buffer; the finished SignVector is immutable.
class SignVectorBuilder {
public:
    explicit SignVectorBuilder(unsigned order);

    void set_negative(std::size_t i) noexcept {
        bytes_[i >> 3] |= static_cast<std::uint8_t>(0x80U >> (i & 7));
    }

    std::span<std::uint8_t> bytes() noexcept { return bytes_; }
    std::size_t size() const noexcept { return std::size_t{1} << order_; }

    SignVector build() &&;

private:
    unsigned order_;
    std::vector<std::uint8_t> bytes_;
};

/// Exact inner product; lengths must match.
std::int64_t dot(const SignVector& a, const SignVector& b);

inline std::size_t packed_size(std::size_t entries) { return (entries + 7) / 8; }

}  // namespace hadrow

#endif  // HADROW_SIGN_VECTOR_HPP_
