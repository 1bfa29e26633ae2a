#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoflow/solver.hpp"

namespace hoflow {

enum class GroundTruthSource { kitti, middlebury };

/// A reference flow field whose mask comes from the dataset's validity channel
/// (KITTI third channel; Middlebury "unknown" sentinel magnitudes > 1e9).
struct GroundTruth {
  FlowField flow;
  GroundTruthSource source = GroundTruthSource::middlebury;
};

/// Middlebury .flo container: little-endian float sentinel 202021.25, then
/// int32 width and height, then row-major interleaved (u, v) float pairs.
FlowField read_flo(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_flo(const FlowField& f);

/// KITTI flow png: 3-channel 16-bit, u = (ch1 - 2^15)/64, v = (ch2 - 2^15)/64,
/// valid = (ch3 == 1). The writer requires |u|, |v| < 512 and emits invalid
/// pixels as (0, 0, 0).
GroundTruth read_kitti_flow(std::span<const std::uint8_t> png_bytes);
std::vector<std::uint8_t> write_kitti_flow(const FlowField& f);

enum class DatasetKind { kitti, middlebury };
enum class KittiGtKind { occ, noc };  // flow_occ (all pixels) vs flow_noc

struct DatasetPair {
  std::string scene_id;
  std::filesystem::path frame0;
  std::filesystem::path frame1;
  std::optional<std::filesystem::path> gt;
};

/// Enumerate frame pairs under a dataset root, ordered by scene_id.
///   kitti:      root/image_2/{scene}_10.png + {scene}_11.png,
///               ground truth root/flow_{occ,noc}/{scene}_10.png
///   middlebury: root/{scene}/frame10.png + frame11.png + flow10.flo,
///               falling back to frame0.png + frame1.png + gt.flo
/// Pairs lacking ground truth are included with gt absent.
std::vector<DatasetPair> enumerate_pairs(const std::filesystem::path& root,
                                         DatasetKind kind,
                                         KittiGtKind gt_kind = KittiGtKind::occ);

/// Load ground truth by content: .flo -> middlebury, png -> kitti.
GroundTruth load_ground_truth(const std::filesystem::path& path);

/// read_file + read_flo.
FlowField load_flo(const std::filesystem::path& path);

}  // namespace hoflow
