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

#include "liotkit/liot.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace liotkit {

const char* to_string(Side side) noexcept
{
	switch (side) {
	case Side::Left: return "l";
	case Side::Right: return "r";
	case Side::Top: return "t";
	case Side::Bottom: return "b";
	}
	return "?";
}

LiotImage::LiotImage(int width, int height) : width_(width), height_(height)
{
	if (width <= 0 || height <= 0)
		throw Error(ErrorCode::ZeroDimension, "LIOT image dimensions must be positive");
	for (auto& p : planes_)
		p.assign(std::size_t(width) * std::size_t(height), 0);
}

LiotImage::LiotImage(int width, int height, std::array<std::vector<std::uint8_t>, 4> planes)
	: width_(width), height_(height), planes_(std::move(planes))
{
	if (width <= 0 || height <= 0)
		throw Error(ErrorCode::ZeroDimension, "LIOT image dimensions must be positive");
	for (const auto& p : planes_)
		if (p.size() != std::size_t(width) * std::size_t(height))
			throw Error(ErrorCode::DimensionMismatch, "LIOT plane length does not match dimensions");
}

GrayImage LiotImage::plane_image(Side side) const
{
	const auto p = plane(side);
	return GrayImage(width_, height_, std::vector<std::uint8_t>(p.begin(), p.end()));
}

namespace {

// Horizontal codes of one row. For distance i the comparison row[x] > row[x-i]
// (left) or row[x] > row[x+i] (right) is evaluated for the whole valid range at
// once, which keeps the inner loops branch-free.
void horizontal_codes(const std::uint8_t* row, int width, std::uint8_t* left, std::uint8_t* right)
{
	std::fill_n(left, width, std::uint8_t{0});
	std::fill_n(right, width, std::uint8_t{0});
	const int reach = std::min(NeighborScheme::max_distance, width - 1);
	for (int i = 1; i <= reach; ++i) {
		const int shift = i - 1;
		const int n = width - i;
		const std::uint8_t* near = row;
		const std::uint8_t* far = row + i;
		std::uint8_t* l = left + i;
		std::uint8_t* r = right;
		for (int x = 0; x < n; ++x) {
			l[x] |= static_cast<std::uint8_t>((far[x] > near[x]) << shift);
			r[x] |= static_cast<std::uint8_t>((near[x] > far[x]) << shift);
		}
	}
}

// Vertical codes of row y: compare against rows y-i (top) and y+i (bottom).
void vertical_codes(const GrayImage& img, int y, std::uint8_t* top, std::uint8_t* bottom)
{
	const int width = img.width();
	const int height = img.height();
	const std::uint8_t* center = img.row(y).data();
	std::fill_n(top, width, std::uint8_t{0});
	std::fill_n(bottom, width, std::uint8_t{0});
	for (int i = 1; i <= NeighborScheme::max_distance; ++i) {
		const int shift = i - 1;
		if (y - i >= 0) {
			const std::uint8_t* above = img.row(y - i).data();
			for (int x = 0; x < width; ++x)
				top[x] |= static_cast<std::uint8_t>((center[x] > above[x]) << shift);
		}
		if (y + i < height) {
			const std::uint8_t* below = img.row(y + i).data();
			for (int x = 0; x < width; ++x)
				bottom[x] |= static_cast<std::uint8_t>((center[x] > below[x]) << shift);
		}
	}
}

} // namespace

LiotImage liot_transform(const GrayImage& img, const ExecutionOptions& options)
{
	const int width = img.width();
	const int height = img.height();
	LiotImage out(width, height);
	std::uint8_t* left = out.plane(Side::Left).data();
	std::uint8_t* right = out.plane(Side::Right).data();
	std::uint8_t* top = out.plane(Side::Top).data();
	std::uint8_t* bottom = out.plane(Side::Bottom).data();

	// Tiny images are not worth a thread.
	const unsigned threads = std::size_t(width) * height < (1u << 15) ? 1 : detail::resolve_threads(options.threads);
	detail::parallel_for_chunks(height, threads, [&](int y0, int y1) {
		for (int y = y0; y < y1; ++y) {
			const std::size_t offset = std::size_t(y) * width;
			horizontal_codes(img.row(y).data(), width, left + offset, right + offset);
			vertical_codes(img, y, top + offset, bottom + offset);
		}
	});
	return out;
}

LiotImage liot_transform_naive(const GrayImage& img)
{
	const int width = img.width();
	const int height = img.height();
	LiotImage out(width, height);
	for (int y = 0; y < height; ++y) {
		for (int x = 0; x < width; ++x) {
			const int center = img.at(x, y);
			for (Side side : kSides) {
				const auto step = NeighborScheme::step(side);
				int code = 0;
				for (int i = 1; i <= NeighborScheme::max_distance; ++i) {
					const int nx = x + i * step.dx;
					const int ny = y + i * step.dy;
					if (nx < 0 || nx >= width || ny < 0 || ny >= height)
						continue;
					if (center > img.at(nx, ny))
						code += NeighborScheme::bit_weight(i);
				}
				out.plane(side)[std::size_t(y) * width + x] = static_cast<std::uint8_t>(code);
			}
		}
	}
	return out;
}

LiotImage prepare_and_transform(const AnyImage& img, GrayMode mode, bool invert_input,
	const ExecutionOptions& options)
{
	GrayImage gray = std::visit(
		[mode](const auto& src) -> GrayImage {
			if constexpr (std::is_same_v<std::decay_t<decltype(src)>, ColorImage>)
				return to_gray(src, mode);
			else
				return src;
		},
		img);
	if (invert_input)
		gray = invert(gray);
	return liot_transform(gray, options);
}

} // namespace liotkit
