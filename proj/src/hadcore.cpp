#include "hadrow/hadcore.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "hadrow/error.hpp"

namespace hadrow {

namespace {

void require_order(unsigned order, unsigned max_order) {
    if (order < 1 || order > max_order) {
        throw Error(Errc::invalid_order, "order exponent " + std::to_string(order) +
                                             " outside [1, " + std::to_string(max_order) + "]");
    }
}

void require_index(std::uint64_t index, unsigned order) {
    const std::uint64_t limit = std::uint64_t{1} << order;
    if (index >= limit) {
        throw Error(Errc::index_out_of_range, "row index " + std::to_string(index) +
                                                  " outside [0, " + std::to_string(limit) + ")");
    }
}

// Each input bit duplicated into two adjacent output bits, MSB first.
constexpr std::array<std::uint16_t, 256> make_spread_table() {
    std::array<std::uint16_t, 256> table{};
    for (unsigned v = 0; v < 256; ++v) {
        std::uint16_t out = 0;
        for (unsigned bit = 0; bit < 8; ++bit) {
            if ((v >> bit) & 1U) out = static_cast<std::uint16_t>(out | (3U << (2 * bit)));
        }
        table[v] = out;
    }
    return table;
}

constexpr auto kSpread = make_spread_table();

}  // namespace

const SignVector& BaseMatrix::row(unsigned digit) {
    static const SignVector row0 = SignVector::from_signs(std::array{1, 1});
    static const SignVector row1 = SignVector::from_signs(std::array{1, -1});
    if (digit > 1) {
        throw Error(Errc::index_out_of_range,
                    "base matrix has rows 0 and 1, requested " + std::to_string(digit));
    }
    return digit == 0 ? row0 : row1;
}

BitString dec2bin(std::uint64_t index, unsigned order) {
    require_order(order, kMaxIndexOrder);
    require_index(index, order);
    BitString bits;
    bits.source_index = index;
    bits.digits.resize(order);
    for (unsigned k = 0; k < order; ++k) {
        bits.digits[order - 1 - k] = static_cast<std::uint8_t>((index >> k) & 1U);
    }
    return bits;
}

unsigned kron_order(unsigned a, unsigned b) {
    if (a + b > kMaxIndexOrder) {
        throw Error(Errc::overflow_order, "Kronecker product length 2^" + std::to_string(a + b) +
                                              " exceeds 2^" + std::to_string(kMaxIndexOrder));
    }
    return a + b;
}

SignVector kron(const SignVector& a, const SignVector& b, OpCounter& counter) {
    SignVectorBuilder out(kron_order(a.order(), b.order()));
    auto dst = out.bytes();
    const auto src_a = a.bytes();
    const auto src_b = b.bytes();

    if (b.size() % 8 == 0) {
        // Whole-byte blocks: block p is b, inverted when a[p] = -1.
        const std::size_t block = src_b.size();
        for (std::size_t p = 0; p < a.size(); ++p) {
            const std::uint8_t flip = a.is_negative(p) ? 0xFF : 0x00;
            auto* row = dst.data() + p * block;
            for (std::size_t t = 0; t < block; ++t) {
                row[t] = static_cast<std::uint8_t>(src_b[t] ^ flip);
            }
        }
    } else if (b.size() == 2) {
        // Entry p of a becomes the pair (a[p]*b[0], a[p]*b[1]).
        const std::uint8_t flip = static_cast<std::uint8_t>((b.is_negative(0) ? 0xAA : 0x00) |
                                                            (b.is_negative(1) ? 0x55 : 0x00));
        for (std::size_t t = 0; t < src_a.size(); ++t) {
            const std::uint16_t spread = kSpread[src_a[t]];
            dst[2 * t] = static_cast<std::uint8_t>((spread >> 8) ^ flip);
            if (2 * t + 1 < dst.size()) {
                dst[2 * t + 1] = static_cast<std::uint8_t>((spread & 0xFF) ^ flip);
            }
        }
    } else {
        for (std::size_t p = 0; p < a.size(); ++p) {
            for (std::size_t q = 0; q < b.size(); ++q) {
                if (a.is_negative(p) != b.is_negative(q)) out.set_negative(p * b.size() + q);
            }
        }
    }

    counter.multiplications += static_cast<std::uint64_t>(a.size()) * b.size();
    return std::move(out).build();
}

GeneratedRow generate_row(std::uint64_t index, unsigned order) {
    require_order(order, kMaxRowOrder);
    const BitString bits = dec2bin(index, order);

    GeneratedRow result;
    SignVector row;  // (+1), the Kronecker identity
    for (const auto digit : bits.digits) {
        SignVector next = kron(row, BaseMatrix::row(digit), result.counter);
        result.peak_working_bytes = std::max(result.peak_working_bytes,
                                             row.storage_capacity() + next.storage_capacity());
        row = std::move(next);
    }
    result.row = std::move(row);
    return result;
}

SignVector direct_row(std::uint64_t index, unsigned order) {
    require_order(order, kMaxRowOrder);
    require_index(index, order);
    SignVectorBuilder out(order);
    const std::uint64_t size = std::uint64_t{1} << order;
    for (std::uint64_t j = 0; j < size; ++j) {
        if (std::popcount(index & j) & 1) out.set_negative(j);
    }
    return std::move(out).build();
}

std::vector<SignVector> full_matrix(unsigned order) {
    if (order > kMaxOracleOrder) {
        throw Error(Errc::oracle_order_too_large,
                    "full-matrix oracle is limited to order 2^" + std::to_string(kMaxOracleOrder) +
                        ", requested 2^" + std::to_string(order));
    }
    require_order(order, kMaxOracleOrder);

    // Dense block doubling: [[H, H], [H, -H]].
    std::vector<std::vector<signed char>> dense{{1, 1}, {1, -1}};
    for (unsigned level = 2; level <= order; ++level) {
        const std::size_t half = dense.size();
        std::vector<std::vector<signed char>> next(2 * half);
        for (std::size_t r = 0; r < half; ++r) {
            auto& top = next[r];
            auto& bottom = next[r + half];
            top.reserve(2 * half);
            bottom.reserve(2 * half);
            top.insert(top.end(), dense[r].begin(), dense[r].end());
            top.insert(top.end(), dense[r].begin(), dense[r].end());
            bottom.insert(bottom.end(), dense[r].begin(), dense[r].end());
            for (const auto v : dense[r]) bottom.push_back(static_cast<signed char>(-v));
        }
        dense = std::move(next);
    }

    std::vector<SignVector> rows;
    rows.reserve(dense.size());
    for (const auto& r : dense) {
        SignVectorBuilder builder(order);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] < 0) builder.set_negative(j);
        }
        rows.push_back(std::move(builder).build());
    }
    return rows;
}

std::uint64_t predicted_cost(unsigned order) {
    require_order(order, kMaxIndexOrder);
    return (std::uint64_t{1} << (order + 1)) - 2;
}

}  // namespace hadrow
