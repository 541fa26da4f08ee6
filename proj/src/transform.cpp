#include "hadrow/transform.hpp"

namespace hadrow {

namespace {

void require_spectrum(const Spectrum& spectrum) {
    const unsigned order = require_power_of_two_length(spectrum.coefficients.size());
    if (order != spectrum.order) {
        throw Error(Errc::invalid_length, "spectrum has " +
                                              std::to_string(spectrum.coefficients.size()) +
                                              " coefficients but order " +
                                              std::to_string(spectrum.order));
    }
}

}  // namespace

Spectrum fwht(std::span<const std::int64_t> signal) {
    Spectrum out;
    out.order = require_power_of_two_length(signal.size());
    out.coefficients.assign(signal.begin(), signal.end());
    fwht_inplace(std::span<std::int64_t>(out.coefficients));
    return out;
}

std::vector<std::int64_t> ifwht(const Spectrum& spectrum) {
    require_spectrum(spectrum);
    std::vector<std::int64_t> out = spectrum.coefficients;
    fwht_inplace(std::span<std::int64_t>(out));
    const std::int64_t scale = std::int64_t{1} << spectrum.order;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] % scale != 0) {
            throw Error(Errc::inexact_inverse, "inverse entry " + std::to_string(i) +
                                                   " is not an integer");
        }
        out[i] /= scale;
    }
    return out;
}

std::vector<double> ifwht_real(const Spectrum& spectrum) {
    require_spectrum(spectrum);
    // Integer butterfly first so the only rounding is the final division.
    std::vector<std::int64_t> sums = spectrum.coefficients;
    fwht_inplace(std::span<std::int64_t>(sums));
    const double scale = static_cast<double>(std::uint64_t{1} << spectrum.order);
    std::vector<double> out(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) out[i] = static_cast<double>(sums[i]) / scale;
    return out;
}

}  // namespace hadrow
