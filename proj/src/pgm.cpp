#include "gibbscut/pgm.hpp"

#include <cctype>
#include <sstream>

#include "gibbscut/error.hpp"
#include "gibbscut/poly_io.hpp"

namespace gibbscut {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

  long next_int() {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) throw InvalidInput("PGM: expected a number at byte " + std::to_string(pos_));
    if (pos_ - start > 9) throw InvalidInput("PGM: number too large");
    return std::stol(bytes_.substr(start, pos_ - start));
  }

  // The single whitespace byte separating the header from raster data.
  void consume_one_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
      throw InvalidInput("PGM: missing whitespace before raster");
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

ImageBuffer parse_pgm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw InvalidInput("not a P2/P5 PGM file");
  const bool raw = bytes[1] == '5';
  HeaderReader r(bytes);
  ImageBuffer img;
  long w = r.next_int(), h = r.next_int(), maxv = r.next_int();
  if (w <= 0 || h <= 0) throw InvalidInput("PGM: empty image");
  if (maxv <= 0 || maxv > 65535) throw InvalidInput("PGM: max value out of range");
  img.width = static_cast<std::size_t>(w);
  img.height = static_cast<std::size_t>(h);
  img.max_value = static_cast<int>(maxv);
  const std::size_t count = img.width * img.height;
  img.pixels.reserve(count);
  if (raw) {
    r.consume_one_space();
    const std::size_t bpp = maxv < 256 ? 1 : 2;
    if (bytes.size() < r.pos() + count * bpp) throw InvalidInput("PGM: truncated raster");
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + r.pos());
    for (std::size_t k = 0; k < count; ++k) {
      int v = bpp == 1 ? data[k] : (data[2 * k] << 8) | data[2 * k + 1];
      if (v > maxv) throw InvalidInput("PGM: pixel exceeds max value");
      img.pixels.push_back(v);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      long v = r.next_int();
      if (v > maxv) throw InvalidInput("PGM: pixel exceeds max value");
      img.pixels.push_back(static_cast<int>(v));
    }
  }
  return img;
}

std::string emit_pgm(const ImageBuffer& image, PgmFormat format) {
  if (image.pixels.size() != image.width * image.height)
    throw InvalidInput("image buffer size mismatch");
  if (image.max_value <= 0 || image.max_value > 65535) throw InvalidInput("PGM: max value out of range");
  for (int v : image.pixels)
    if (v < 0 || v > image.max_value) throw InvalidInput("PGM: pixel outside 0..max value");
  std::ostringstream out;
  if (format == PgmFormat::Raw) {
    out << "P5\n" << image.width << " " << image.height << "\n" << image.max_value << "\n";
    std::string raster;
    for (int v : image.pixels) {
      if (image.max_value < 256) {
        raster.push_back(static_cast<char>(v));
      } else {
        raster.push_back(static_cast<char>((v >> 8) & 0xff));
        raster.push_back(static_cast<char>(v & 0xff));
      }
    }
    out << raster;
  } else {
    out << "P2\n" << image.width << " " << image.height << "\n" << image.max_value << "\n";
    for (std::size_t y = 0; y < image.height; ++y) {
      for (std::size_t x = 0; x < image.width; ++x) out << (x ? " " : "") << image.at(x, y);
      out << "\n";
    }
  }
  return out.str();
}

ImageBuffer read_pgm(const std::filesystem::path& path) { return parse_pgm(read_text_file(path)); }

void write_pgm(const std::filesystem::path& path, const ImageBuffer& image, PgmFormat format) {
  write_text_file(path, emit_pgm(image, format));
}

ImageBuffer crop(const ImageBuffer& image, std::size_t x0, std::size_t y0, std::size_t w,
                 std::size_t h) {
  if (x0 + w > image.width || y0 + h > image.height || w == 0 || h == 0)
    throw InvalidInput("crop rectangle outside image");
  ImageBuffer out{w, h, image.max_value, {}};
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) out.pixels.push_back(image.at(x0 + x, y0 + y));
  return out;
}

}  // namespace gibbscut
