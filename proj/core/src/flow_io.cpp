#include "hoflow/flow_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "hoflow/image_io.hpp"

namespace hoflow {

namespace {

constexpr float kFloSentinel = 202021.25f;
constexpr double kUnknownFlowThreshold = 1e9;
constexpr float kUnknownFlowWrite = 1e10f;

// All container I/O is little-endian regardless of host.
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
         (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

float get_f32(const std::uint8_t* p) {
  return std::bit_cast<float>(get_u32(p));
}

}  // namespace

FlowField read_flo(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) {
    throw TruncationError("flo file has " + std::to_string(bytes.size()) +
                          " bytes, header needs 12");
  }
  const float sentinel = get_f32(bytes.data());
  if (sentinel != kFloSentinel) {
    throw FormatError("flo sentinel mismatch: expected 202021.25, got " +
                      std::to_string(sentinel));
  }
  const auto w = static_cast<std::int32_t>(get_u32(bytes.data() + 4));
  const auto h = static_cast<std::int32_t>(get_u32(bytes.data() + 8));
  if (w <= 0 || h <= 0 || w > (1 << 20) || h > (1 << 20)) {
    throw FormatError("flo declares implausible dimensions " + std::to_string(w) + "x" +
                      std::to_string(h));
  }
  const std::size_t expected = 12 + 8 * static_cast<std::size_t>(w) * h;
  if (bytes.size() != expected) {
    throw TruncationError("flo byte count " + std::to_string(bytes.size()) +
                          " != expected " + std::to_string(expected) + " for " +
                          std::to_string(w) + "x" + std::to_string(h));
  }

  FlowField f(w, h);
  const std::uint8_t* p = bytes.data() + 12;
  for (std::size_t i = 0; i < f.pixel_count(); ++i, p += 8) {
    const float u = get_f32(p);
    const float v = get_f32(p + 4);
    const bool known = std::isfinite(u) && std::isfinite(v) &&
                       std::fabs(u) <= kUnknownFlowThreshold &&
                       std::fabs(v) <= kUnknownFlowThreshold;
    if (known) {
      f.u[i] = u;
      f.v[i] = v;
      f.valid[i] = 1;
    }
  }
  return f;
}

std::vector<std::uint8_t> write_flo(const FlowField& f) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + 8 * f.pixel_count());
  put_f32(out, kFloSentinel);
  put_u32(out, static_cast<std::uint32_t>(f.width));
  put_u32(out, static_cast<std::uint32_t>(f.height));
  for (std::size_t i = 0; i < f.pixel_count(); ++i) {
    if (f.valid[i]) {
      put_f32(out, static_cast<float>(f.u[i]));
      put_f32(out, static_cast<float>(f.v[i]));
    } else {
      put_f32(out, kUnknownFlowWrite);
      put_f32(out, kUnknownFlowWrite);
    }
  }
  return out;
}

GroundTruth read_kitti_flow(std::span<const std::uint8_t> png_bytes) {
  const RawImage raw = decode_image(png_bytes);
  if (raw.channels != 3) {
    throw FormatError("kitti flow png must have 3 channels, got " +
                      std::to_string(raw.channels));
  }
  if (raw.bit_depth != 16) {
    throw FormatError("kitti flow png must be 16-bit, got " +
                      std::to_string(raw.bit_depth) + "-bit");
  }
  FlowField f(raw.width, raw.height);
  for (std::size_t i = 0; i < f.pixel_count(); ++i) {
    const std::uint16_t cu = raw.samples[3 * i + 0];
    const std::uint16_t cv = raw.samples[3 * i + 1];
    const std::uint16_t cm = raw.samples[3 * i + 2];
    if (cm == 1) {
      f.u[i] = (static_cast<double>(cu) - 32768.0) / 64.0;
      f.v[i] = (static_cast<double>(cv) - 32768.0) / 64.0;
      f.valid[i] = 1;
    }
  }
  return GroundTruth{std::move(f), GroundTruthSource::kitti};
}

std::vector<std::uint8_t> write_kitti_flow(const FlowField& f) {
  RawImage raw;
  raw.width = f.width;
  raw.height = f.height;
  raw.channels = 3;
  raw.bit_depth = 16;
  raw.max_value = 65535;
  raw.samples.assign(raw.sample_count(), 0);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      const std::size_t i = f.index(x, y);
      if (!f.valid[i]) continue;  // stays (0, 0, 0)
      const double u = f.u[i];
      const double v = f.v[i];
      if (!(std::fabs(u) < 512.0) || !(std::fabs(v) < 512.0)) {
        throw RangeError("flow at pixel (" + std::to_string(x) + ", " +
                         std::to_string(y) + ") is (" + std::to_string(u) + ", " +
                         std::to_string(v) + "), outside the encodable |value| < 512");
      }
      const long qu = std::lround(u * 64.0 + 32768.0);
      const long qv = std::lround(v * 64.0 + 32768.0);
      raw.samples[3 * i + 0] = static_cast<std::uint16_t>(std::clamp(qu, 0L, 65535L));
      raw.samples[3 * i + 1] = static_cast<std::uint16_t>(std::clamp(qv, 0L, 65535L));
      raw.samples[3 * i + 2] = 1;
    }
  }
  return encode_png(raw);
}

namespace {

namespace fs = std::filesystem;

std::vector<DatasetPair> enumerate_kitti(const fs::path& root, KittiGtKind gt_kind) {
  const fs::path image_dir = root / "image_2";
  const fs::path gt_dir =
      root / (gt_kind == KittiGtKind::occ ? "flow_occ" : "flow_noc");
  std::vector<DatasetPair> pairs;
  if (!fs::exists(image_dir)) return pairs;
  for (const auto& entry : fs::directory_iterator(image_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const std::string suffix = "_10.png";
    if (name.size() <= suffix.size() ||
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
      continue;
    }
    const std::string scene = name.substr(0, name.size() - suffix.size());
    const fs::path frame1 = image_dir / (scene + "_11.png");
    if (!fs::exists(frame1)) continue;
    DatasetPair p;
    p.scene_id = scene;
    p.frame0 = entry.path();
    p.frame1 = frame1;
    const fs::path gt = gt_dir / (scene + "_10.png");
    if (fs::exists(gt)) p.gt = gt;
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<DatasetPair> enumerate_middlebury(const fs::path& root) {
  std::vector<DatasetPair> pairs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const fs::path dir = entry.path();
    DatasetPair p;
    p.scene_id = dir.filename().string();
    if (fs::exists(dir / "frame10.png") && fs::exists(dir / "frame11.png")) {
      p.frame0 = dir / "frame10.png";
      p.frame1 = dir / "frame11.png";
      if (fs::exists(dir / "flow10.flo")) p.gt = dir / "flow10.flo";
    } else if (fs::exists(dir / "frame0.png") && fs::exists(dir / "frame1.png")) {
      p.frame0 = dir / "frame0.png";
      p.frame1 = dir / "frame1.png";
      if (fs::exists(dir / "gt.flo")) p.gt = dir / "gt.flo";
    } else {
      continue;
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace

std::vector<DatasetPair> enumerate_pairs(const std::filesystem::path& root,
                                         DatasetKind kind, KittiGtKind gt_kind) {
  if (!std::filesystem::exists(root)) {
    throw IoError("dataset root does not exist: " + root.string());
  }
  std::vector<DatasetPair> pairs = kind == DatasetKind::kitti
                                       ? enumerate_kitti(root, gt_kind)
                                       : enumerate_middlebury(root);
  std::sort(pairs.begin(), pairs.end(),
            [](const DatasetPair& a, const DatasetPair& b) {
              return a.scene_id < b.scene_id;
            });
  return pairs;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "\x89PNG", 4) == 0) {
    return read_kitti_flow(bytes);
  }
  return GroundTruth{read_flo(bytes), GroundTruthSource::middlebury};
}

FlowField load_flo(const std::filesystem::path& path) {
  return read_flo(read_file(path));
}

}  // namespace hoflow
