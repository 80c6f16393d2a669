#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rdh/image.hpp"

namespace rdh {

enum class PgmFlavor { Binary /* P5 */, Ascii /* P2 */ };

/// Decodes a P5 or P2 image with maxval <= 255. Pixel values are kept as
/// stored (no rescaling to 255). Errors carry the byte offset of the fault.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Canonical header "P5\n<w> <h>\n255\n" (or P2). ASCII rasters put one
/// image row per line.
std::vector<std::uint8_t> write_pgm(const GrayImage& img, PgmFlavor flavor = PgmFlavor::Binary);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img,
                    PgmFlavor flavor = PgmFlavor::Binary);

/// Whole-file helpers; failures raise ErrorKind::Io.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace rdh
