/*
Copyright 2026 The liotkit Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef LIOTKIT_DATASETS_HPP
#define LIOTKIT_DATASETS_HPP

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liotkit/image.hpp"

namespace liotkit {

struct ResizeTarget {
	int width;
	int height;
	friend bool operator==(const ResizeTarget&, const ResizeTarget&) = default;
};

struct DatasetSpec {
	std::string name = "custom";
	std::filesystem::path image_dir;
	std::filesystem::path gt_dir;
	std::optional<std::filesystem::path> fov_dir;
	/// DRIVE ships FOV masks with every image; missing ones are an error there.
	bool fov_required = false;
	std::optional<ResizeTarget> resize_target;
	GrayMode gray_mode = GrayMode::GreenChannel;
	bool invert = false;
	int gt_dilation_radius = 0;
	/// Number of ids (in sorted order) that go to the training split.
	std::size_t train_count = 0;
	/// Take the training ids from the end of the sorted list instead of the start.
	bool train_from_end = false;
};

// Presets: drive, stare, chasedb1, cracktree. Directories are <root>/images,
// <root>/gt and, when it exists, <root>/fov.
DatasetSpec builtin_spec(std::string_view name, const std::filesystem::path& root = ".");

// Flat key=value text, '#' comments. Keys: name, preset, image_dir, gt_dir,
// fov_dir, resize (WxH or none), gray (green|luma), invert, dilation,
// train_count, train_from_end. A preset, when given, seeds the other keys.
// Relative directories resolve against the config file's directory.
DatasetSpec parse_dataset_config(const std::filesystem::path& path);
DatasetSpec parse_dataset_config_text(std::string_view text, const std::filesystem::path& base_dir = ".");

struct SamplePair {
	std::string id;
	GrayImage image;
	BinaryMask gt;
	std::optional<BinaryMask> fov;
};

/// Disk structuring element {(dx,dy) : dx^2 + dy^2 <= radius^2}.
BinaryMask dilate(const BinaryMask& mask, int radius);

/// Sorted sample ids (file stems in image_dir with a readable raster extension).
std::vector<std::string> list_sample_ids(const DatasetSpec& spec);

/// load -> resize -> gray -> invert -> binarize gt (>127) -> dilate gt.
SamplePair prepare_sample(const DatasetSpec& spec, const std::string& id);

/// Calls `sink` once per sample in id order. Samples may be built in parallel.
void prepare(const DatasetSpec& spec, const std::function<void(const SamplePair&)>& sink);

struct PreparedDataset {
	std::vector<std::string> ids;
	std::vector<std::string> train_ids;
	std::vector<std::string> test_ids;
};

std::pair<std::vector<std::string>, std::vector<std::string>> split_ids(
	const DatasetSpec& spec, const std::vector<std::string>& ids);

// Writes <out>/images/<id>.png, <out>/gt/<id>.png, <out>/fov/<id>.png (when an
// FOV exists) and manifest.txt, train.txt, test.txt with one id per line.
PreparedDataset write_prepared(const DatasetSpec& spec, const std::filesystem::path& out_dir);

} // namespace liotkit

#endif // LIOTKIT_DATASETS_HPP
