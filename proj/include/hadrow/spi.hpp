#ifndef HADROW_SPI_HPP_
#define HADROW_SPI_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hadrow/ordering.hpp"

namespace hadrow {

/// Row-major grayscale image with power-of-two width and height.
struct Scene {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint16_t> pixels;

    /// log2(width * height); throws dimension_mismatch if the scene is
    /// not a valid measurement target.
    unsigned order() const;

    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Detector reading for one pattern: value = dot(pattern row, pixels).
struct Measurement {
    std::uint64_t index = 0;
    std::int64_t value = 0;

    friend bool operator==(const Measurement&, const Measurement&) = default;
};

struct MeasurementSet {
    unsigned order = 0;
    OrderingScheme scheme = OrderingScheme::natural;
    std::vector<Measurement> entries;

    friend bool operator==(const MeasurementSet&, const MeasurementSet&) = default;
};

/// Reconstruction in real arithmetic. Exact whenever the full index set was
/// measured; otherwise the zero-filled linear estimate.
struct SceneEstimate {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;

    /// Rounds to nearest and clamps into [0, 65535].
    Scene to_scene() const;
};

/// Streams one pattern row at a time and hands each reading to `sink` in
/// index order. Working memory is one row (plus its partial product)
/// regardless of how many indices are requested.
void simulate_each(const Scene& scene, std::span<const std::uint64_t> indices,
                   OrderingScheme scheme, const std::function<void(const Measurement&)>& sink);

/// Measures `scene` with the given ordered pattern indices. With jobs > 1,
/// disjoint index chunks are measured on separate threads; the result does
/// not depend on `jobs`.
MeasurementSet simulate(const Scene& scene, std::span<const std::uint64_t> indices,
                        OrderingScheme scheme, unsigned jobs = 1);

/// Places readings at their natural-order coefficients, zero-fills the rest
/// and inverts the transform. width * height must equal 2^m.order.
SceneEstimate reconstruct(const MeasurementSet& m, std::size_t width, std::size_t height);

/// As above with a square shape for even orders and a single row otherwise.
SceneEstimate reconstruct(const MeasurementSet& m);

/// Dot product of a sign row with pixel intensities.
std::int64_t measure_row(const SignVector& row, std::span<const std::uint16_t> pixels);

enum class PgmVariant { ascii, binary };

/// Reads a P2 or P5 graymap with maxval <= 65535.
Scene read_pgm(std::istream& in);

/// Writes with maxval 255 when every pixel fits in a byte, else 65535.
void write_pgm(std::ostream& out, const Scene& scene, PgmVariant variant = PgmVariant::binary);

}  // namespace hadrow

#endif  // HADROW_SPI_HPP_
