#ifndef HADROW_TRANSFORM_HPP_
#define HADROW_TRANSFORM_HPP_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hadrow/error.hpp"

namespace hadrow {

/// Natural-order Walsh-Hadamard coefficients of a length-2^order signal.
struct Spectrum {
    std::vector<std::int64_t> coefficients;
    unsigned order = 0;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

inline unsigned require_power_of_two_length(std::size_t length) {
    if (length == 0 || !std::has_single_bit(length)) {
        throw Error(Errc::invalid_length,
                    "transform length " + std::to_string(length) + " is not a power of two");
    }
    return static_cast<unsigned>(std::countr_zero(length));
}

/// In-place butterfly: data <- H * data, natural order, unnormalized.
/// O(order * 2^order) additions and subtractions.
template <typename T>
    requires std::is_arithmetic_v<T>
void fwht_inplace(std::span<T> data) {
    require_power_of_two_length(data.size());
    const std::size_t size = data.size();
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t j = block; j < block + half; ++j) {
                const T u = data[j];
                const T v = data[j + half];
                data[j] = u + v;
                data[j + half] = u - v;
            }
        }
    }
}

Spectrum fwht(std::span<const std::int64_t> signal);

/// Exact inverse; throws inexact_inverse when some entry of H * s is not
/// divisible by 2^order.
std::vector<std::int64_t> ifwht(const Spectrum& spectrum);

/// Inverse in double precision, for spectra that need not invert to integers.
std::vector<double> ifwht_real(const Spectrum& spectrum);

}  // namespace hadrow

#endif  // HADROW_TRANSFORM_HPP_
