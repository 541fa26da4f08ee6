#include "hadrow/sign_vector.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "hadrow/error.hpp"

namespace hadrow {

namespace {

constexpr unsigned kMaxVectorOrder = 62;

unsigned checked_order(unsigned order) {
    if (order > kMaxVectorOrder) {
        throw Error(Errc::overflow_order,
                    "sign vector order " + std::to_string(order) + " exceeds 2^" +
                        std::to_string(kMaxVectorOrder));
    }
    return order;
}

// Mask of the bits that carry entries in the final byte.
std::uint8_t tail_mask(std::size_t size) {
    const auto used = size & 7;
    return used == 0 ? std::uint8_t{0xFF} : static_cast<std::uint8_t>(0xFF00U >> used);
}

}  // namespace

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::index_out_of_range: return "index-out-of-range";
        case Errc::invalid_order: return "invalid-order";
        case Errc::overflow_order: return "overflow-order";
        case Errc::oracle_order_too_large: return "oracle-order-too-large";
        case Errc::invalid_length: return "invalid-length";
        case Errc::invalid_sign: return "invalid-sign";
        case Errc::inexact_inverse: return "inexact-inverse";
        case Errc::dimension_mismatch: return "dimension-mismatch";
        case Errc::duplicate_index: return "duplicate-index";
        case Errc::inconsistent_length: return "inconsistent-length";
        case Errc::unsorted_indices: return "unsorted-indices";
        case Errc::bad_magic: return "bad-magic";
        case Errc::unsupported_version: return "unsupported-version";
        case Errc::truncated_stream: return "truncated-stream";
        case Errc::malformed_header: return "malformed-header";
        case Errc::pbm_odd_order: return "pbm-odd-order";
        case Errc::parse_error: return "parse-error";
    }
    return "unknown";
}

SignVector::SignVector() : SignVector(0U) {}

SignVector::SignVector(unsigned order)
    : size_(std::size_t{1} << checked_order(order)),
      order_(order),
      bytes_(packed_size(size_), 0) {}

SignVector::SignVector(unsigned order, std::vector<std::uint8_t> bytes)
    : size_(std::size_t{1} << order), order_(order), bytes_(std::move(bytes)) {}

SignVector SignVector::from_signs(std::span<const int> signs) {
    if (signs.empty() || !std::has_single_bit(signs.size())) {
        throw Error(Errc::invalid_length,
                    "sign vector length " + std::to_string(signs.size()) +
                        " is not a power of two");
    }
    SignVectorBuilder builder(static_cast<unsigned>(std::countr_zero(signs.size())));
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == -1) {
            builder.set_negative(i);
        } else if (signs[i] != 1) {
            throw Error(Errc::invalid_sign, "entry " + std::to_string(i) + " is " +
                                                std::to_string(signs[i]) + ", expected +1 or -1");
        }
    }
    return std::move(builder).build();
}

SignVector SignVector::from_packed(std::size_t size, std::span<const std::uint8_t> bytes) {
    if (size == 0 || !std::has_single_bit(size)) {
        throw Error(Errc::invalid_length,
                    "sign vector length " + std::to_string(size) + " is not a power of two");
    }
    if (bytes.size() != packed_size(size)) {
        throw Error(Errc::inconsistent_length,
                    "expected " + std::to_string(packed_size(size)) + " packed bytes, got " +
                        std::to_string(bytes.size()));
    }
    if ((bytes.back() & static_cast<std::uint8_t>(~tail_mask(size))) != 0) {
        throw Error(Errc::parse_error, "non-zero padding bits in packed sign vector");
    }
    return SignVector(checked_order(static_cast<unsigned>(std::countr_zero(size))),
                      std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
}

std::vector<int> SignVector::to_signs() const {
    std::vector<int> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
    return out;
}

std::size_t SignVector::negative_count() const noexcept {
    std::size_t count = 0;
    for (auto b : bytes_) count += static_cast<std::size_t>(std::popcount(b));
    return count;
}

SignVector SignVector::negated() const {
    std::vector<std::uint8_t> out(bytes_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(~bytes_[i]);
    out.back() &= tail_mask(size_);
    return SignVector(order_, std::move(out));
}

SignVectorBuilder::SignVectorBuilder(unsigned order)
    : order_(checked_order(order)), bytes_(packed_size(std::size_t{1} << order), 0) {}

SignVector SignVectorBuilder::build() && {
    bytes_.back() &= tail_mask(size());
    return SignVector(order_, std::move(bytes_));
}

namespace {

#if defined(__x86_64__) && defined(__GNUC__)
__attribute__((target_clones("popcnt", "default")))
#endif
std::int64_t count_differing(const std::uint8_t* x, const std::uint8_t* y, std::size_t size) {
    std::int64_t differing = 0;
    std::size_t i = 0;
    for (; i + 8 <= size; i += 8) {
        std::uint64_t wx = 0;
        std::uint64_t wy = 0;
        std::memcpy(&wx, x + i, 8);
        std::memcpy(&wy, y + i, 8);
        differing += std::popcount(wx ^ wy);
    }
    for (; i < size; ++i) differing += std::popcount(static_cast<std::uint8_t>(x[i] ^ y[i]));
    return differing;
}

}  // namespace

std::int64_t dot(const SignVector& a, const SignVector& b) {
    if (a.size() != b.size()) {
        throw Error(Errc::inconsistent_length, "dot of vectors with lengths " +
                                                   std::to_string(a.size()) + " and " +
                                                   std::to_string(b.size()));
    }
    const std::int64_t differing = count_differing(a.bytes().data(), b.bytes().data(),
                                                   a.bytes().size());
    return static_cast<std::int64_t>(a.size()) - 2 * differing;
}

}  // namespace hadrow
