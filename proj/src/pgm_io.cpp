#include "rdh/pgm_io.hpp"

#include <fstream>
#include <iterator>
#include <string>

namespace rdh {

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Tokenizer {
public:
  explicit Tokenizer(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  /// Decimal token. `what` names the field for error messages.
  unsigned long number(const char* what, unsigned long limit) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    if (pos_ >= bytes_.size()) throw PgmError(std::string("missing ") + what, pos_);
    unsigned long v = 0;
    while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      const std::uint8_t c = bytes_[pos_];
      if (c < '0' || c > '9')
        throw PgmError(std::string("non-numeric ") + what + " token", start);
      v = v * 10 + static_cast<unsigned long>(c - '0');
      if (v > limit) throw PgmError(std::string(what) + " out of range", start);
      ++pos_;
    }
    return v;
  }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

constexpr unsigned long kMaxDim = 1ul << 20;

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
    throw PgmError("malformed magic (expected P5 or P2)", 0);
  const bool binary = bytes[1] == '5';

  Tokenizer tok(bytes);
  tok.seek(2);
  if (tok.pos() < bytes.size() && !is_space(bytes[tok.pos()]) && bytes[tok.pos()] != '#')
    throw PgmError("malformed magic (expected P5 or P2)", 0);

  const auto width = tok.number("width", kMaxDim);
  const std::size_t height_at = tok.pos();
  const auto height = tok.number("height", kMaxDim);
  if (width == 0 || height == 0) throw PgmError("zero image dimension", height_at);
  tok.skip_space_and_comments();
  const std::size_t maxval_at = tok.pos();
  const auto maxval = tok.number("maxval", 65535);
  if (maxval == 0) throw PgmError("maxval must be positive", maxval_at);
  if (maxval > 255) throw PgmError("unsupported maxval " + std::to_string(maxval) +
                                       " (only 8-bit images)", maxval_at);

  const std::size_t count = width * height;
  std::vector<std::uint8_t> pixels(count);

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t p = tok.pos();
    if (p >= bytes.size() || !is_space(bytes[p]))
      throw PgmError("missing whitespace after maxval", p);
    ++p;
    if (bytes.size() - p < count)
      throw PgmError("truncated raster: expected " + std::to_string(count) + " bytes, found " +
                         std::to_string(bytes.size() - p), bytes.size());
    for (std::size_t k = 0; k < count; ++k) {
      const std::uint8_t v = bytes[p + k];
      if (v > maxval) throw PgmError("pixel exceeds maxval", p + k);
      pixels[k] = v;
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      tok.skip_space_and_comments();
      if (tok.pos() >= bytes.size())
        throw PgmError("truncated raster: " + std::to_string(k) + " of " +
                           std::to_string(count) + " samples", tok.pos());
      const std::size_t at = tok.pos();
      const auto v = tok.number("sample", 65535);
      if (v > maxval) throw PgmError("pixel exceeds maxval", at);
      pixels[k] = static_cast<std::uint8_t>(v);
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img, PgmFlavor flavor) {
  const bool binary = flavor == PgmFlavor::Binary;
  std::string header = std::string(binary ? "P5" : "P2") + "\n" + std::to_string(img.width()) +
                       " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  if (binary) {
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
  }
  for (int i = 0; i < img.height(); ++i) {
    std::string row;
    for (int j = 0; j < img.width(); ++j) {
      if (j) row += ' ';
      row += std::to_string(img.at(i, j));
    }
    row += '\n';
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorKind::Io, "read error on " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::Io, "write error on " + path.string());
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return read_pgm(bytes);
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img, PgmFlavor flavor) {
  write_file(path, write_pgm(img, flavor));
}

}  // namespace rdh
