#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace gibbscut {

/// Gray-scale raster, row-major.
struct ImageBuffer {
  std::size_t width = 0;
  std::size_t height = 0;
  int max_value = 255;
  std::vector<int> pixels;

  int at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

enum class PgmFormat { Plain /* P2 */, Raw /* P5 */ };

ImageBuffer parse_pgm(const std::string& bytes);
std::string emit_pgm(const ImageBuffer& image, PgmFormat format = PgmFormat::Raw);

ImageBuffer read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const ImageBuffer& image,
               PgmFormat format = PgmFormat::Raw);

/// Rectangular sub-image.
ImageBuffer crop(const ImageBuffer& image, std::size_t x0, std::size_t y0, std::size_t w,
                 std::size_t h);

}  // namespace gibbscut
