#pragma once

#include "odg/scene.hpp"
#include "odg/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace odg {

/// Binary voxel grid format "ODGGRID1": magic, u16 H, W, Z, u16 free_label,
/// f32 voxel_size, 3x f32 origin (all little-endian), then H*W*Z label bytes
/// in z-fastest order.
void save_grid(const VoxelGrid& grid, const std::string& path);
VoxelGrid load_grid(const std::string& path);

/// Named-tensor container: `<path>.json` manifest (name, shape, offset in
/// floats) plus `<path>.bin` little-endian f32 blob in manifest order.
void save_params(const ParamStore& store, const std::string& path_stem);
ParamStore load_params(const std::string& path_stem);

/// 16-bit binary PGM, depth in millimeters (clamped to [0, 65535]),
/// big-endian sample bytes per the Netpbm convention.
void save_depth_pgm(const std::vector<double>& depth_m, int width, int height,
                    const std::string& path);
std::vector<double> load_depth_pgm(const std::string& path, int& width, int& height);

/// Binary PPM of per-pixel class ids mapped through a fixed palette;
/// class = num_classes renders as black (background).
void save_class_ppm(const std::vector<int>& class_ids, int width, int height, int num_classes,
                    const std::string& path);

/// f32 little-endian blob helpers used by the packet format.
void save_f32_blob(const std::vector<double>& data, const std::string& path);
std::vector<double> load_f32_blob(const std::string& path, std::size_t expected_count);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace odg
