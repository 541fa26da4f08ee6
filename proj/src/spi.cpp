#include "hadrow/spi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "hadrow/error.hpp"
#include "hadrow/hadcore.hpp"
#include "hadrow/transform.hpp"

namespace hadrow {

namespace {

void require_indices(std::span<const std::uint64_t> indices, unsigned order) {
    const std::uint64_t limit = std::uint64_t{1} << order;
    for (const auto k : indices) {
        if (k >= limit) {
            throw Error(Errc::index_out_of_range, "pattern index " + std::to_string(k) +
                                                      " outside [0, " + std::to_string(limit) +
                                                      ")");
        }
    }
    if (std::adjacent_find(indices.begin(), indices.end(), std::greater_equal<>()) ==
        indices.end()) {
        return;  // strictly increasing
    }
    // One bit per possible index: no larger than a single packed row.
    std::vector<bool> seen(limit, false);
    for (const auto k : indices) {
        if (seen[k]) {
            throw Error(Errc::duplicate_index,
                        "pattern index " + std::to_string(k) + " requested twice");
        }
        seen[k] = true;
    }
}

}  // namespace

unsigned Scene::order() const {
    if (width == 0 || height == 0 || !std::has_single_bit(width) || !std::has_single_bit(height)) {
        throw Error(Errc::dimension_mismatch, "scene dimensions " + std::to_string(width) + "x" +
                                                  std::to_string(height) +
                                                  " are not powers of two");
    }
    if (pixels.size() != width * height) {
        throw Error(Errc::dimension_mismatch,
                    "scene holds " + std::to_string(pixels.size()) + " pixels, expected " +
                        std::to_string(width * height));
    }
    const auto order = static_cast<unsigned>(std::countr_zero(width * height));
    if (order < 1 || order > kMaxRowOrder) {
        throw Error(Errc::dimension_mismatch, "scene of " + std::to_string(width * height) +
                                                  " pixels is outside the supported range [2, 2^" +
                                                  std::to_string(kMaxRowOrder) + "]");
    }
    return order;
}

std::int64_t measure_row(const SignVector& row, std::span<const std::uint16_t> pixels) {
    if (row.size() != pixels.size()) {
        throw Error(Errc::dimension_mismatch, "pattern length " + std::to_string(row.size()) +
                                                  " does not match " +
                                                  std::to_string(pixels.size()) + " pixels");
    }
    // y = sum(pixels) - 2 * sum(pixels under -1 entries)
    std::int64_t total = 0;
    std::int64_t negative = 0;
    const auto bytes = row.bytes();
    for (std::size_t b = 0; b < bytes.size(); ++b) {
        const std::size_t base = b * 8;
        const std::size_t end = std::min(base + 8, pixels.size());
        for (std::size_t j = base; j < end; ++j) {
            total += pixels[j];
            if ((bytes[b] >> (7 - (j - base))) & 1U) negative += pixels[j];
        }
    }
    return total - 2 * negative;
}

void simulate_each(const Scene& scene, std::span<const std::uint64_t> indices,
                   OrderingScheme scheme, const std::function<void(const Measurement&)>& sink) {
    const unsigned order = scene.order();
    require_indices(indices, order);
    for (const auto k : indices) {
        const SignVector row = generate_ordered_row(k, order, scheme);
        sink(Measurement{k, measure_row(row, scene.pixels)});
    }
}

MeasurementSet simulate(const Scene& scene, std::span<const std::uint64_t> indices,
                        OrderingScheme scheme, unsigned jobs) {
    const unsigned order = scene.order();
    require_indices(indices, order);

    MeasurementSet out;
    out.order = order;
    out.scheme = scheme;
    out.entries.resize(indices.size());

    const auto measure_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const SignVector row = generate_ordered_row(indices[i], order, scheme);
            out.entries[i] = Measurement{indices[i], measure_row(row, scene.pixels)};
        }
    };

    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(indices.size())));
    if (jobs <= 1) {
        measure_range(0, indices.size());
        return out;
    }
    std::vector<std::jthread> workers;
    const std::size_t chunk = (indices.size() + jobs - 1) / jobs;
    for (std::size_t begin = 0; begin < indices.size(); begin += chunk) {
        workers.emplace_back(measure_range, begin, std::min(begin + chunk, indices.size()));
    }
    workers.clear();
    return out;
}

SceneEstimate reconstruct(const MeasurementSet& m, std::size_t width, std::size_t height) {
    if (m.order < 1 || m.order > kMaxRowOrder) {
        throw Error(Errc::invalid_order, "measurement order " + std::to_string(m.order) +
                                             " outside [1, " + std::to_string(kMaxRowOrder) + "]");
    }
    const std::size_t size = std::size_t{1} << m.order;
    if (width == 0 || height == 0 || !std::has_single_bit(width) ||
        !std::has_single_bit(height) || width * height != size) {
        throw Error(Errc::dimension_mismatch, "shape " + std::to_string(width) + "x" +
                                                  std::to_string(height) + " does not hold " +
                                                  std::to_string(size) + " pixels");
    }

    Spectrum spectrum;
    spectrum.order = m.order;
    spectrum.coefficients.assign(size, 0);
    std::vector<bool> seen(size, false);
    for (const auto& entry : m.entries) {
        const std::uint64_t natural = to_natural(entry.index, m.order, m.scheme);
        if (seen[natural]) {
            throw Error(Errc::duplicate_index,
                        "pattern index " + std::to_string(entry.index) + " measured twice");
        }
        seen[natural] = true;
        spectrum.coefficients[natural] = entry.value;
    }

    SceneEstimate estimate;
    estimate.width = width;
    estimate.height = height;
    estimate.pixels = ifwht_real(spectrum);
    return estimate;
}

SceneEstimate reconstruct(const MeasurementSet& m) {
    if (m.order >= 1 && m.order % 2 == 0) {
        const std::size_t side = std::size_t{1} << (m.order / 2);
        return reconstruct(m, side, side);
    }
    return reconstruct(m, m.order <= kMaxRowOrder ? std::size_t{1} << m.order : 0, 1);
}

Scene SceneEstimate::to_scene() const {
    Scene scene;
    scene.width = width;
    scene.height = height;
    scene.pixels.resize(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        const double v = std::clamp(std::round(pixels[i]), 0.0, 65535.0);
        scene.pixels[i] = static_cast<std::uint16_t>(v);
    }
    return scene;
}

}  // namespace hadrow
