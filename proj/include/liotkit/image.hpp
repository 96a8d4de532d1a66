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

#ifndef LIOTKIT_IMAGE_HPP
#define LIOTKIT_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "liotkit/error.hpp"

namespace liotkit {

// Rasters are row-major with the origin at the top-left corner; x grows to
// the right and y grows downward. Every direction-dependent operation in the
// library ("left", "top", raster scan order) is defined against this layout.

struct GrayTag {};
struct ColorTag {};
struct MaskTag {};
struct ProbabilityTag {};

template <typename T, int Channels, typename Tag>
class Raster {
public:
	using value_type = T;
	static constexpr int channels = Channels;

	Raster(int width, int height, T fill = T{})
		: width_(width), height_(height), data_(checked_size(width, height), fill) {}

	Raster(int width, int height, std::vector<T> data)
		: width_(width), height_(height), data_(std::move(data))
	{
		if (data_.size() != checked_size(width, height))
			throw Error(ErrorCode::DimensionMismatch,
				"raster data length " + std::to_string(data_.size()) + " does not match "
				+ std::to_string(width) + "x" + std::to_string(height) + "x" + std::to_string(Channels));
		normalize();
	}

	int width() const noexcept { return width_; }
	int height() const noexcept { return height_; }
	std::size_t pixel_count() const noexcept { return std::size_t(width_) * std::size_t(height_); }

	std::span<const T> data() const noexcept { return data_; }
	std::span<T> data() noexcept { return data_; }

	std::span<const T> row(int y) const noexcept
	{
		return std::span<const T>(data_).subspan(std::size_t(y) * width_ * Channels, std::size_t(width_) * Channels);
	}
	std::span<T> row(int y) noexcept
	{
		return std::span<T>(data_).subspan(std::size_t(y) * width_ * Channels, std::size_t(width_) * Channels);
	}

	const T& at(int x, int y, int c = 0) const noexcept
	{
		return data_[(std::size_t(y) * width_ + x) * Channels + c];
	}
	T& at(int x, int y, int c = 0) noexcept
	{
		return data_[(std::size_t(y) * width_ + x) * Channels + c];
	}

	bool same_size(int width, int height) const noexcept
	{
		return width_ == width && height_ == height;
	}
	template <typename Other>
	bool same_size(const Other& other) const noexcept
	{
		return same_size(other.width(), other.height());
	}

	friend bool operator==(const Raster&, const Raster&) = default;

private:
	static std::size_t checked_size(int width, int height)
	{
		if (width <= 0 || height <= 0)
			throw Error(ErrorCode::ZeroDimension,
				"raster dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
		return std::size_t(width) * std::size_t(height) * Channels;
	}

	void normalize()
	{
		if constexpr (std::is_same_v<Tag, MaskTag>) {
			for (auto& v : data_)
				v = v ? 1 : 0;
		} else if constexpr (std::is_same_v<Tag, ProbabilityTag>) {
			for (T v : data_)
				if (!(v >= T(0) && v <= T(1)))
					throw Error(ErrorCode::InvalidArgument, "probability values must lie in [0,1]");
		}
	}

	int width_;
	int height_;
	std::vector<T> data_;
};

/// Single-channel 8-bit intensity image.
using GrayImage = Raster<std::uint8_t, 1, GrayTag>;
/// Interleaved 8-bit R,G,B.
using ColorImage = Raster<std::uint8_t, 3, ColorTag>;
/// Boolean raster stored as 0/1 bytes. Any non-zero input byte becomes 1.
using BinaryMask = Raster<std::uint8_t, 1, MaskTag>;
/// Per-pixel prediction scores in [0,1].
using ProbabilityMap = Raster<double, 1, ProbabilityTag>;

enum class GrayMode { GreenChannel, Luma };

GrayMode parse_gray_mode(const std::string& name);
const char* to_string(GrayMode mode) noexcept;

GrayImage to_gray(const ColorImage& img, GrayMode mode);
GrayImage invert(const GrayImage& img);

// Bilinear with pixel-center alignment: src = (dst + 0.5) * (src_size / dst_size) - 0.5,
// clamped to the source extent, rounded to nearest.
GrayImage resize(const GrayImage& img, int target_width, int target_height);
ColorImage resize(const ColorImage& img, int target_width, int target_height);
// Nearest neighbour: src = floor((dst + 0.5) * src_size / dst_size).
BinaryMask resize(const BinaryMask& mask, int target_width, int target_height);

/// Foreground where value > threshold.
BinaryMask binarize(const GrayImage& img, std::uint8_t threshold = 127);
/// Scales 0..255 to [0,1].
ProbabilityMap to_probability(const GrayImage& img);
/// 0 -> 0, 1 -> 255.
GrayImage to_gray(const BinaryMask& mask);

BinaryMask operator&(const BinaryMask& a, const BinaryMask& b);

} // namespace liotkit

#endif // LIOTKIT_IMAGE_HPP
