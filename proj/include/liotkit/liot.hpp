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

#ifndef LIOTKIT_LIOT_HPP
#define LIOTKIT_LIOT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "liotkit/image.hpp"
#include "liotkit/image_io.hpp"

namespace liotkit {

/// Plane order of a LiotImage. The numeric values are the on-disk order.
enum class Side : std::uint8_t { Left = 0, Right = 1, Top = 2, Bottom = 3 };

inline constexpr std::array<Side, 4> kSides{Side::Left, Side::Right, Side::Top, Side::Bottom};

const char* to_string(Side side) noexcept;

// Neighbours of p on side s sit at p + i * step(s) for i = 1..8, and the
// comparison against the i-th one lands in bit i-1.
struct NeighborScheme {
	static constexpr int max_distance = 8;

	struct Step {
		int dx;
		int dy;
	};

	static constexpr Step step(Side side) noexcept
	{
		constexpr std::array<Step, 4> steps{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
		return steps[static_cast<int>(side)];
	}

	static constexpr std::uint8_t bit_weight(int distance) noexcept
	{
		return static_cast<std::uint8_t>(1u << (distance - 1));
	}
};

/// Four directional 8-bit code planes with the dimensions of the source image.
class LiotImage {
public:
	LiotImage(int width, int height);
	LiotImage(int width, int height, std::array<std::vector<std::uint8_t>, 4> planes);

	int width() const noexcept { return width_; }
	int height() const noexcept { return height_; }

	std::span<const std::uint8_t> plane(Side side) const noexcept
	{
		return planes_[static_cast<int>(side)];
	}
	std::span<std::uint8_t> plane(Side side) noexcept
	{
		return planes_[static_cast<int>(side)];
	}

	GrayImage plane_image(Side side) const;

	friend bool operator==(const LiotImage&, const LiotImage&) = default;

private:
	int width_;
	int height_;
	std::array<std::vector<std::uint8_t>, 4> planes_;
};

struct ExecutionOptions {
	/// Worker count. 0 defers to LIOTKIT_THREADS, then to the hardware.
	unsigned threads = 0;
};

// f'_s(p) = sum_{i=1..8} [f(p) > f(p + i*step(s))] * 2^(i-1).
// Neighbours outside the image contribute 0, and ties contribute 0.
LiotImage liot_transform(const GrayImage& img, const ExecutionOptions& options = {});

/// Literal per-pixel, per-side, per-distance evaluation. Reference for liot_transform.
LiotImage liot_transform_naive(const GrayImage& img);

/// Gray conversion (colour input only), optional inversion for bright
/// structures, then liot_transform.
LiotImage prepare_and_transform(const AnyImage& img, GrayMode mode, bool invert_input,
	const ExecutionOptions& options = {});

} // namespace liotkit

#endif // LIOTKIT_LIOT_HPP
