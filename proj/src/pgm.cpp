#include <algorithm>
#include <bit>
#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "hadrow/error.hpp"
#include "hadrow/spi.hpp"

namespace hadrow {

namespace {

// Skips whitespace and '#' comments, then reads one unsigned decimal token.
std::uint64_t read_header_number(std::istream& in, const char* what) {
    int c = in.peek();
    while (c != std::char_traits<char>::eof()) {
        if (c == '#') {
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
        c = in.peek();
    }
    if (c == std::char_traits<char>::eof()) {
        throw Error(Errc::truncated_stream, std::string("graymap ended before ") + what);
    }
    if (!std::isdigit(c)) {
        throw Error(Errc::parse_error, std::string("graymap ") + what + " is not a number");
    }
    std::uint64_t value = 0;
    while (c != std::char_traits<char>::eof() && std::isdigit(c)) {
        value = value * 10 + static_cast<std::uint64_t>(in.get() - '0');
        if (value > std::numeric_limits<std::uint32_t>::max()) {
            throw Error(Errc::parse_error, std::string("graymap ") + what + " is too large");
        }
        c = in.peek();
    }
    return value;
}

}  // namespace

Scene read_pgm(std::istream& in) {
    char magic[2] = {};
    if (!in.read(magic, 2)) throw Error(Errc::truncated_stream, "graymap is empty");
    if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
        throw Error(Errc::bad_magic, "not a P2/P5 graymap");
    }
    const bool binary = magic[1] == '5';

    Scene scene;
    scene.width = read_header_number(in, "width");
    scene.height = read_header_number(in, "height");
    const std::uint64_t maxval = read_header_number(in, "maxval");
    if (maxval == 0 || maxval > 65535) {
        throw Error(Errc::parse_error, "graymap maxval " + std::to_string(maxval) +
                                           " outside [1, 65535]");
    }
    if (scene.width == 0 || scene.height == 0 || !std::has_single_bit(scene.width) ||
        !std::has_single_bit(scene.height)) {
        throw Error(Errc::dimension_mismatch, "graymap dimensions " +
                                                  std::to_string(scene.width) + "x" +
                                                  std::to_string(scene.height) +
                                                  " are not powers of two");
    }

    const std::size_t count = scene.width * scene.height;
    scene.pixels.resize(count);
    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        if (!std::isspace(in.get())) throw Error(Errc::parse_error, "graymap header not terminated");
        const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
        std::string raster(count * sample_bytes, '\0');
        if (!in.read(raster.data(), static_cast<std::streamsize>(raster.size()))) {
            throw Error(Errc::truncated_stream, "graymap raster is truncated");
        }
        for (std::size_t i = 0; i < count; ++i) {
            const auto hi = static_cast<unsigned char>(raster[i * sample_bytes]);
            const unsigned v =
                sample_bytes == 2 ? (hi << 8) | static_cast<unsigned char>(raster[i * 2 + 1]) : hi;
            if (v > maxval) throw Error(Errc::parse_error, "graymap sample exceeds maxval");
            scene.pixels[i] = static_cast<std::uint16_t>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = read_header_number(in, "sample");
            if (v > maxval) throw Error(Errc::parse_error, "graymap sample exceeds maxval");
            scene.pixels[i] = static_cast<std::uint16_t>(v);
        }
    }
    scene.order();
    return scene;
}

void write_pgm(std::ostream& out, const Scene& scene, PgmVariant variant) {
    if (scene.pixels.size() != scene.width * scene.height) {
        throw Error(Errc::dimension_mismatch, "scene pixel count does not match its shape");
    }
    const std::uint16_t peak =
        scene.pixels.empty() ? 0 : *std::max_element(scene.pixels.begin(), scene.pixels.end());
    const unsigned maxval = peak > 255 ? 65535 : 255;

    out << (variant == PgmVariant::binary ? "P5" : "P2") << '\n'
        << scene.width << ' ' << scene.height << '\n'
        << maxval << '\n';
    if (variant == PgmVariant::binary) {
        std::string raster;
        raster.reserve(scene.pixels.size() * (maxval > 255 ? 2 : 1));
        for (const auto v : scene.pixels) {
            if (maxval > 255) raster.push_back(static_cast<char>(v >> 8));
            raster.push_back(static_cast<char>(v & 0xFF));
        }
        out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
    } else {
        for (std::size_t r = 0; r < scene.height; ++r) {
            for (std::size_t c = 0; c < scene.width; ++c) {
                if (c != 0) out << ' ';
                out << scene.pixels[r * scene.width + c];
            }
            out << '\n';
        }
    }
}

}  // namespace hadrow
