#include "hoflow/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

namespace hoflow {

namespace {

[[noreturn]] void fail_decode(std::size_t offset, const std::string& what) {
  throw DecodeError("decode error at byte " + std::to_string(offset) + ": " + what);
}

// ---------------------------------------------------------------------------
// PGM (P2 ascii / P5 binary)
// ---------------------------------------------------------------------------

struct PgmCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  std::uint8_t peek() const { return bytes[pos]; }
  std::uint8_t take() { return bytes[pos++]; }

  // Skip whitespace and '#' comments between header tokens.
  void skip_separators() {
    while (!eof()) {
      const std::uint8_t c = peek();
      if (c == '#') {
        while (!eof() && take() != '\n') {
        }
      } else if (std::isspace(c)) {
        ++pos;
      } else {
        return;
      }
    }
  }

  long next_int(const char* what) {
    skip_separators();
    if (eof() || !std::isdigit(peek())) {
      fail_decode(pos, std::string("expected ") + what + " in pgm header");
    }
    long value = 0;
    while (!eof() && std::isdigit(peek())) {
      value = value * 10 + (take() - '0');
      if (value > 1 << 30) fail_decode(pos, std::string(what) + " out of range");
    }
    return value;
  }
};

RawImage decode_pgm(std::span<const std::uint8_t> bytes) {
  PgmCursor cur{bytes};
  const bool binary = bytes[1] == '5';
  cur.pos = 2;
  const long w = cur.next_int("width");
  const long h = cur.next_int("height");
  const long maxval = cur.next_int("maxval");
  if (w == 0 || h == 0) {
    throw DimensionError("pgm declares zero dimension " + std::to_string(w) + "x" +
                         std::to_string(h));
  }
  if (maxval < 1 || maxval > 65535) {
    fail_decode(cur.pos, "pgm maxval must be in [1,65535], got " + std::to_string(maxval));
  }

  RawImage out;
  out.width = static_cast<int>(w);
  out.height = static_cast<int>(h);
  out.channels = 1;
  out.max_value = static_cast<int>(maxval);
  out.bit_depth = maxval > 255 ? 16 : 8;
  out.samples.resize(static_cast<std::size_t>(w) * h);

  if (binary) {
    if (cur.eof() || !std::isspace(cur.peek())) {
      fail_decode(cur.pos, "expected single whitespace before pgm raster");
    }
    cur.take();
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t need = out.samples.size() * bytes_per_sample;
    if (bytes.size() - cur.pos < need) {
      fail_decode(bytes.size(), "pgm raster truncated, need " + std::to_string(need) +
                                    " bytes after header");
    }
    for (std::uint16_t& s : out.samples) {
      if (bytes_per_sample == 2) {
        const std::uint16_t hi = cur.take();
        s = static_cast<std::uint16_t>((hi << 8) | cur.take());
      } else {
        s = cur.take();
      }
      if (s > maxval) fail_decode(cur.pos, "pgm sample exceeds maxval");
    }
  } else {
    for (std::uint16_t& s : out.samples) {
      const long v = cur.next_int("sample");
      if (v > maxval) fail_decode(cur.pos, "pgm sample exceeds maxval");
      s = static_cast<std::uint16_t>(v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PNG via libpng, reading from and writing to memory
// ---------------------------------------------------------------------------

struct PngReadState {
  const std::uint8_t* data = nullptr;
  std::size_t size = 0;
  std::size_t offset = 0;
  char message[192] = "unknown libpng error";
};

void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (st->offset + n > st->size) {
    png_error(png, "unexpected end of stream");
  }
  std::memcpy(out, st->data + st->offset, n);
  st->offset += n;
}

void png_read_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngReadState*>(png_get_error_ptr(png));
  std::snprintf(st->message, sizeof(st->message), "%s", msg);
  longjmp(png_jmpbuf(png), 1);
}

void png_quiet_warning(png_structp, png_const_charp) {}

struct PngReadGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadGuard() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

RawImage decode_png_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 33) {
    fail_decode(bytes.size(), "png shorter than signature + IHDR");
  }
  // IHDR is mandated to be the first chunk; reject zero dimensions before
  // libpng turns them into a generic error.
  if (std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
    fail_decode(12, "first chunk is not IHDR");
  }
  const std::uint32_t ihdr_w = be32(bytes.data() + 16);
  const std::uint32_t ihdr_h = be32(bytes.data() + 20);
  if (ihdr_w == 0 || ihdr_h == 0) {
    throw DimensionError("png declares zero dimension " + std::to_string(ihdr_w) + "x" +
                         std::to_string(ihdr_h));
  }

  PngReadState st;
  st.data = bytes.data();
  st.size = bytes.size();

  PngReadGuard g;
  g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &st, png_read_error,
                                 png_quiet_warning);
  if (!g.png) throw Error("png_create_read_struct failed");
  g.info = png_create_info_struct(g.png);
  if (!g.info) throw Error("png_create_info_struct failed");

  RawImage out;
  std::vector<std::uint8_t> rowbuf;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(g.png))) {
    fail_decode(st.offset, st.message);
  }

  png_set_read_fn(g.png, &st, png_mem_read);
  png_read_info(g.png, g.info);

  const png_uint_32 w = png_get_image_width(g.png, g.info);
  const png_uint_32 h = png_get_image_height(g.png, g.info);
  const int depth = png_get_bit_depth(g.png, g.info);
  const int color = png_get_color_type(g.png, g.info);

  if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB) {
    fail_decode(st.offset, "unsupported png color type " + std::to_string(color) +
                               " (gray and rgb only)");
  }
  if (depth != 8 && depth != 16) {
    fail_decode(st.offset,
                "unsupported png bit depth " + std::to_string(depth) + " (8 or 16 only)");
  }

  png_set_interlace_handling(g.png);
  png_read_update_info(g.png, g.info);

  out.width = static_cast<int>(w);
  out.height = static_cast<int>(h);
  out.channels = color == PNG_COLOR_TYPE_RGB ? 3 : 1;
  out.bit_depth = depth;
  out.max_value = depth == 16 ? 65535 : 255;

  const std::size_t rowbytes = png_get_rowbytes(g.png, g.info);
  rowbuf.resize(rowbytes * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = rowbuf.data() + y * rowbytes;
  png_read_image(g.png, rows.data());

  // PNG multi-byte samples are big-endian.
  out.samples.resize(out.sample_count());
  const std::size_t per_row = static_cast<std::size_t>(out.width) * out.channels;
  for (png_uint_32 y = 0; y < h; ++y) {
    const std::uint8_t* src = rows[y];
    std::uint16_t* dst = out.samples.data() + y * per_row;
    if (depth == 16) {
      for (std::size_t i = 0; i < per_row; ++i) {
        dst[i] = static_cast<std::uint16_t>((src[2 * i] << 8) | src[2 * i + 1]);
      }
    } else {
      for (std::size_t i = 0; i < per_row; ++i) dst[i] = src[i];
    }
  }
  return out;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void png_mem_flush(png_structp) {}

void png_write_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngReadState*>(png_get_error_ptr(png));
  std::snprintf(st->message, sizeof(st->message), "%s", msg);
  longjmp(png_jmpbuf(png), 1);
}

struct PngWriteGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteGuard() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

}  // namespace

RawImage decode_image(std::span<const std::uint8_t> bytes) {
  static const std::uint8_t png_sig[4] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), png_sig, 4) == 0) {
    return decode_png_bytes(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
    return decode_pgm(bytes);
  }
  fail_decode(0, "unrecognized image magic (png and pgm P2/P5 only)");
}

GrayImage decode_gray(std::span<const std::uint8_t> bytes) {
  const RawImage raw = decode_image(bytes);
  GrayImage out(raw.width, raw.height);
  const double scale = 1.0 / raw.max_value;
  if (raw.channels == 1) {
    for (std::size_t i = 0; i < out.data.size(); ++i) {
      out.data[i] = raw.samples[i] * scale;
    }
  } else {
    for (std::size_t i = 0; i < out.data.size(); ++i) {
      const double r = raw.samples[3 * i + 0];
      const double g = raw.samples[3 * i + 1];
      const double b = raw.samples[3 * i + 2];
      out.data[i] = (0.299 * r + 0.587 * g + 0.114 * b) * scale;
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img, int max_value) {
  if (max_value < 1 || max_value > 65535) {
    throw ParameterError("pgm max value must be in [1,65535]");
  }
  std::string header = "P5\n" + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n" + std::to_string(max_value) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.data.size() * (max_value > 255 ? 2 : 1));
  for (const double v : img.data) {
    const double c = std::clamp(v, 0.0, 1.0);
    const auto q = static_cast<std::uint16_t>(std::lround(c * max_value));
    if (max_value > 255) out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xff));
  }
  return out;
}

std::vector<std::uint8_t> encode_png(const RawImage& img) {
  if (img.width <= 0 || img.height <= 0) {
    throw DimensionError("png dimensions must be positive");
  }
  if ((img.channels != 1 && img.channels != 3) ||
      (img.bit_depth != 8 && img.bit_depth != 16)) {
    throw ParameterError("png encoder supports gray/rgb at 8 or 16 bits");
  }
  if (img.samples.size() != img.sample_count()) {
    throw ShapeError("png sample buffer does not match dimensions");
  }

  PngReadState st;
  PngWriteGuard g;
  g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &st, png_write_error,
                                  png_quiet_warning);
  if (!g.png) throw Error("png_create_write_struct failed");
  g.info = png_create_info_struct(g.png);
  if (!g.info) throw Error("png_create_info_struct failed");

  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> rowbuf;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(g.png))) {
    throw Error(std::string("png encode error: ") + st.message);
  }

  png_set_write_fn(g.png, &out, png_mem_write, png_mem_flush);
  png_set_IHDR(g.png, g.info, img.width, img.height, img.bit_depth,
               img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(g.png, g.info);

  const std::size_t per_row = static_cast<std::size_t>(img.width) * img.channels;
  const std::size_t bytes_per_sample = img.bit_depth == 16 ? 2 : 1;
  rowbuf.resize(per_row * bytes_per_sample * img.height);
  rows.resize(img.height);
  for (int y = 0; y < img.height; ++y) {
    std::uint8_t* dst = rowbuf.data() + static_cast<std::size_t>(y) * per_row * bytes_per_sample;
    rows[y] = dst;
    const std::uint16_t* src = img.samples.data() + static_cast<std::size_t>(y) * per_row;
    if (img.bit_depth == 16) {
      for (std::size_t i = 0; i < per_row; ++i) {
        dst[2 * i] = static_cast<std::uint8_t>(src[i] >> 8);
        dst[2 * i + 1] = static_cast<std::uint8_t>(src[i] & 0xff);
      }
    } else {
      for (std::size_t i = 0; i < per_row; ++i) {
        dst[i] = static_cast<std::uint8_t>(src[i] & 0xff);
      }
    }
  }
  png_write_image(g.png, rows.data());
  png_write_end(g.png, g.info);
  return out;
}

std::vector<std::uint8_t> encode_gray_png(const GrayImage& img, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) {
    throw ParameterError("gray png bit depth must be 8 or 16");
  }
  RawImage raw;
  raw.width = img.width;
  raw.height = img.height;
  raw.channels = 1;
  raw.bit_depth = bit_depth;
  raw.max_value = bit_depth == 16 ? 65535 : 255;
  raw.samples.resize(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const double c = std::clamp(img.data[i], 0.0, 1.0);
    raw.samples[i] = static_cast<std::uint16_t>(std::lround(c * raw.max_value));
  }
  return encode_png(raw);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

GrayImage load_gray(const std::filesystem::path& path) {
  return decode_gray(read_file(path));
}

}  // namespace hoflow
