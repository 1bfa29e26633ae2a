#include <random>
#include <string>

#include "doctest.h"
#include "hoflow/image_io.hpp"
#include "test_helpers.hpp"

using hoflow::GrayImage;
using hoflow::RawImage;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("binary pgm round-trips 8-bit samples") {
  GrayImage img(5, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 5; ++x) img.at(x, y) = (y * 5 + x) / 19.0;
  }
  const auto pgm = hoflow::encode_pgm(img);
  const RawImage raw = hoflow::decode_image(pgm);
  CHECK(raw.width == 5);
  CHECK(raw.height == 4);
  CHECK(raw.channels == 1);
  CHECK(raw.bit_depth == 8);
  CHECK(raw.max_value == 255);
  for (int i = 0; i < 20; ++i) {
    CHECK(raw.samples[i] == std::lround(i / 19.0 * 255.0));
  }
  // Normalization divides by the container's max value.
  const GrayImage back = hoflow::decode_gray(pgm);
  for (int i = 0; i < 20; ++i) {
    CHECK(back.data[i] == testutil::near(img.data[i], 0.5 / 255.0 + 1e-12));
  }
}

TEST_CASE("pgm with max value above 255 uses big-endian 16-bit samples") {
  GrayImage img(2, 1);
  img.at(0, 0) = 1.0;
  img.at(1, 0) = 258.0 / 65535.0;
  const auto pgm = hoflow::encode_pgm(img, 65535);
  const RawImage raw = hoflow::decode_image(pgm);
  CHECK(raw.bit_depth == 16);
  CHECK(raw.max_value == 65535);
  CHECK(raw.samples[0] == 65535);
  CHECK(raw.samples[1] == 258);
  // Raster bytes after the "P5\n2 1\n65535\n" header: hi byte first.
  const std::size_t header = std::string("P5\n2 1\n65535\n").size();
  CHECK(pgm[header] == 0xff);
  CHECK(pgm[header + 1] == 0xff);
  CHECK(pgm[header + 2] == 0x01);
  CHECK(pgm[header + 3] == 0x02);
}

TEST_CASE("encoder clamps out-of-range intensities") {
  GrayImage img(2, 1);
  img.at(0, 0) = -0.25;
  img.at(1, 0) = 1.75;
  const RawImage raw = hoflow::decode_image(hoflow::encode_pgm(img));
  CHECK(raw.samples[0] == 0);
  CHECK(raw.samples[1] == 255);
}

TEST_CASE("ascii pgm parses whitespace and comments") {
  const auto pgm = bytes_of(
      "P2 # ascii variant\n"
      "# dimensions follow\n"
      "3 2\n255\n"
      "0 10 20\n30 40 255\n");
  const RawImage raw = hoflow::decode_image(pgm);
  CHECK(raw.width == 3);
  CHECK(raw.height == 2);
  CHECK(raw.samples == std::vector<std::uint16_t>{0, 10, 20, 30, 40, 255});
}

TEST_CASE("pgm decode failures carry the byte offset") {
  CHECK_THROWS_WITH_AS(hoflow::decode_image(bytes_of("P2 0 4 255\n")),
                       doctest::Contains("zero dimension"),
                       hoflow::DimensionError);
  CHECK_THROWS_WITH_AS(hoflow::decode_image(bytes_of("P2 2 1 255\n1 999\n")),
                       doctest::Contains("exceeds maxval"), hoflow::DecodeError);
  CHECK_THROWS_WITH_AS(hoflow::decode_image(bytes_of("P2 2 1 70000\n0 0\n")),
                       doctest::Contains("maxval must be in"),
                       hoflow::DecodeError);
  CHECK_THROWS_WITH_AS(hoflow::decode_image(bytes_of("P5 4 4 255\nab")),
                       doctest::Contains("raster truncated"),
                       hoflow::DecodeError);
  CHECK_THROWS_WITH_AS(hoflow::decode_image(bytes_of("P2 2 x")),
                       doctest::Contains("decode error at byte"),
                       hoflow::DecodeError);
}

TEST_CASE("unknown magic is rejected") {
  CHECK_THROWS_WITH_AS(hoflow::decode_image(bytes_of("BM0000")),
                       doctest::Contains("unrecognized image magic"),
                       hoflow::DecodeError);
}

TEST_CASE("gray png round trip at both depths") {
  std::mt19937 rng(51);
  const GrayImage img = testutil::random_plane(rng, 9, 7, 0.0, 1.0);

  const RawImage raw8 = hoflow::decode_image(hoflow::encode_gray_png(img, 8));
  CHECK(raw8.bit_depth == 8);
  CHECK(raw8.channels == 1);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    CHECK(raw8.samples[i] == std::lround(img.data[i] * 255.0));
  }

  const RawImage raw16 = hoflow::decode_image(hoflow::encode_gray_png(img, 16));
  CHECK(raw16.bit_depth == 16);
  CHECK(raw16.max_value == 65535);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    CHECK(raw16.samples[i] == std::lround(img.data[i] * 65535.0));
  }

  CHECK_THROWS_AS(hoflow::encode_gray_png(img, 12), hoflow::ParameterError);
}

TEST_CASE("16-bit rgb png round trip preserves samples") {
  RawImage img;
  img.width = 3;
  img.height = 2;
  img.channels = 3;
  img.bit_depth = 16;
  img.max_value = 65535;
  img.samples.resize(img.sample_count());
  std::mt19937 rng(52);
  std::uniform_int_distribution<int> dist(0, 65535);
  for (auto& s : img.samples) s = static_cast<std::uint16_t>(dist(rng));

  const RawImage back = hoflow::decode_image(hoflow::encode_png(img));
  CHECK(back.channels == 3);
  CHECK(back.bit_depth == 16);
  CHECK(back.samples == img.samples);
}

TEST_CASE("multi-channel input reduces by the luma combination") {
  RawImage img;
  img.width = 3;
  img.height = 1;
  img.channels = 3;
  img.bit_depth = 8;
  img.max_value = 255;
  img.samples = {255, 0, 0, /**/ 0, 255, 0, /**/ 0, 0, 255};
  const GrayImage g = hoflow::decode_gray(hoflow::encode_png(img));
  CHECK(g.at(0, 0) == testutil::near(0.299, 1e-12));
  CHECK(g.at(1, 0) == testutil::near(0.587, 1e-12));
  CHECK(g.at(2, 0) == testutil::near(0.114, 1e-12));
}

TEST_CASE("png decode failures") {
  const GrayImage img(8, 8, 0.5);
  std::vector<std::uint8_t> png = hoflow::encode_gray_png(img);

  SUBCASE("shorter than signature plus IHDR") {
    png.resize(20);
    CHECK_THROWS_WITH_AS(hoflow::decode_image(png),
                         doctest::Contains("shorter than signature"),
                         hoflow::DecodeError);
  }
  SUBCASE("first chunk is not IHDR") {
    png[12] = 'I';
    png[13] = 'D';
    png[14] = 'A';
    png[15] = 'T';
    CHECK_THROWS_WITH_AS(hoflow::decode_image(png),
                         doctest::Contains("first chunk is not IHDR"),
                         hoflow::DecodeError);
  }
  SUBCASE("zero dimensions are rejected before the decoder proper") {
    png[16] = png[17] = png[18] = png[19] = 0;  // width field
    CHECK_THROWS_WITH_AS(hoflow::decode_image(png),
                         doctest::Contains("zero dimension"),
                         hoflow::DimensionError);
  }
  SUBCASE("truncated stream") {
    png.resize(png.size() / 2);
    CHECK_THROWS_WITH_AS(hoflow::decode_image(png),
                         doctest::Contains("decode error at byte"),
                         hoflow::DecodeError);
  }
  SUBCASE("corrupted payload") {
    for (std::size_t i = 40; i < png.size() - 8; ++i) png[i] ^= 0xa5;
    CHECK_THROWS_AS(hoflow::decode_image(png), hoflow::DecodeError);
  }
}

TEST_CASE("png encoder validates its input") {
  RawImage bad;
  bad.width = 0;
  bad.height = 4;
  bad.channels = 1;
  bad.bit_depth = 8;
  CHECK_THROWS_AS(hoflow::encode_png(bad), hoflow::DimensionError);

  RawImage chans;
  chans.width = 2;
  chans.height = 2;
  chans.channels = 2;
  chans.bit_depth = 8;
  chans.samples.resize(8);
  CHECK_THROWS_AS(hoflow::encode_png(chans), hoflow::ParameterError);

  RawImage short_buf;
  short_buf.width = 2;
  short_buf.height = 2;
  short_buf.channels = 1;
  short_buf.bit_depth = 8;
  short_buf.samples.resize(3);
  CHECK_THROWS_AS(hoflow::encode_png(short_buf), hoflow::ShapeError);

  CHECK_THROWS_AS(hoflow::encode_pgm(GrayImage(2, 2, 0.0), 0),
                  hoflow::ParameterError);
}

TEST_CASE("file io errors name the path") {
  CHECK_THROWS_WITH_AS(hoflow::read_file("no_such_file_here.png"),
                       doctest::Contains("cannot open"), hoflow::IoError);
  const std::vector<std::uint8_t> data{1, 2, 3};
  CHECK_THROWS_WITH_AS(
      hoflow::write_file("no_such_dir_xyz/out.bin", data),
      doctest::Contains("for writing"), hoflow::IoError);
}

TEST_CASE("load_gray reads a file from disk") {
  testutil::ScratchDir dir("scratch_load_gray");
  GrayImage img(4, 3);
  for (int i = 0; i < 12; ++i) img.data[i] = i / 11.0;
  hoflow::write_file(dir / "img.png", hoflow::encode_gray_png(img, 16));
  const GrayImage back = hoflow::load_gray(dir / "img.png");
  REQUIRE(back.width == 4);
  for (int i = 0; i < 12; ++i) {
    CHECK(back.data[i] == testutil::near(img.data[i], 1e-4));
  }
}
