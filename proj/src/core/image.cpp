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

#include "liotkit/image.hpp"

#include <algorithm>
#include <cmath>

namespace liotkit {

namespace {

template <typename RasterT>
RasterT resize_bilinear(const RasterT& src, int target_width, int target_height)
{
	if (target_width <= 0 || target_height <= 0)
		throw Error(ErrorCode::ZeroDimension, "resize target must be positive");
	constexpr int C = RasterT::channels;
	RasterT dst(target_width, target_height);

	const double scale_x = double(src.width()) / target_width;
	const double scale_y = double(src.height()) / target_height;

	struct Tap {
		int i0;
		int i1;
		double w;
	};
	auto taps = [](int n, int src_n, double scale) {
		std::vector<Tap> out(n);
		for (int d = 0; d < n; ++d) {
			double s = (d + 0.5) * scale - 0.5;
			s = std::clamp(s, 0.0, double(src_n - 1));
			const int i0 = static_cast<int>(std::floor(s));
			const int i1 = std::min(i0 + 1, src_n - 1);
			out[d] = {i0, i1, s - i0};
		}
		return out;
	};
	const auto xs = taps(target_width, src.width(), scale_x);
	const auto ys = taps(target_height, src.height(), scale_y);

	for (int y = 0; y < target_height; ++y) {
		const auto r0 = src.row(ys[y].i0);
		const auto r1 = src.row(ys[y].i1);
		const double wy = ys[y].w;
		auto out = dst.row(y);
		for (int x = 0; x < target_width; ++x) {
			const Tap& t = xs[x];
			for (int c = 0; c < C; ++c) {
				const double top = r0[t.i0 * C + c] * (1.0 - t.w) + r0[t.i1 * C + c] * t.w;
				const double bottom = r1[t.i0 * C + c] * (1.0 - t.w) + r1[t.i1 * C + c] * t.w;
				const double v = top * (1.0 - wy) + bottom * wy;
				out[x * C + c] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
			}
		}
	}
	return dst;
}

} // namespace

GrayMode parse_gray_mode(const std::string& name)
{
	if (name == "green" || name == "green-channel")
		return GrayMode::GreenChannel;
	if (name == "luma")
		return GrayMode::Luma;
	throw Error(ErrorCode::InvalidArgument, "unknown gray mode '" + name + "' (expected green or luma)");
}

const char* to_string(GrayMode mode) noexcept
{
	return mode == GrayMode::GreenChannel ? "green" : "luma";
}

GrayImage to_gray(const ColorImage& img, GrayMode mode)
{
	GrayImage out(img.width(), img.height());
	const auto src = img.data();
	auto dst = out.data();
	if (mode == GrayMode::GreenChannel) {
		for (std::size_t i = 0; i < dst.size(); ++i)
			dst[i] = src[3 * i + 1];
	} else {
		for (std::size_t i = 0; i < dst.size(); ++i) {
			const double y = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
			dst[i] = static_cast<std::uint8_t>(std::clamp(std::floor(y + 0.5), 0.0, 255.0));
		}
	}
	return out;
}

GrayImage invert(const GrayImage& img)
{
	GrayImage out(img.width(), img.height());
	std::transform(img.data().begin(), img.data().end(), out.data().begin(),
		[](std::uint8_t v) { return static_cast<std::uint8_t>(255 - v); });
	return out;
}

GrayImage resize(const GrayImage& img, int target_width, int target_height)
{
	return resize_bilinear(img, target_width, target_height);
}

ColorImage resize(const ColorImage& img, int target_width, int target_height)
{
	return resize_bilinear(img, target_width, target_height);
}

BinaryMask resize(const BinaryMask& mask, int target_width, int target_height)
{
	if (target_width <= 0 || target_height <= 0)
		throw Error(ErrorCode::ZeroDimension, "resize target must be positive");
	BinaryMask out(target_width, target_height);
	std::vector<int> xs(target_width);
	for (int x = 0; x < target_width; ++x)
		xs[x] = std::min(mask.width() - 1,
			static_cast<int>((2LL * x + 1) * mask.width() / (2LL * target_width)));
	for (int y = 0; y < target_height; ++y) {
		const int sy = std::min(mask.height() - 1,
			static_cast<int>((2LL * y + 1) * mask.height() / (2LL * target_height)));
		const auto src = mask.row(sy);
		auto dst = out.row(y);
		for (int x = 0; x < target_width; ++x)
			dst[x] = src[xs[x]];
	}
	return out;
}

BinaryMask binarize(const GrayImage& img, std::uint8_t threshold)
{
	BinaryMask out(img.width(), img.height());
	std::transform(img.data().begin(), img.data().end(), out.data().begin(),
		[threshold](std::uint8_t v) { return static_cast<std::uint8_t>(v > threshold); });
	return out;
}

ProbabilityMap to_probability(const GrayImage& img)
{
	ProbabilityMap out(img.width(), img.height());
	std::transform(img.data().begin(), img.data().end(), out.data().begin(),
		[](std::uint8_t v) { return v / 255.0; });
	return out;
}

GrayImage to_gray(const BinaryMask& mask)
{
	GrayImage out(mask.width(), mask.height());
	std::transform(mask.data().begin(), mask.data().end(), out.data().begin(),
		[](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
	return out;
}

BinaryMask operator&(const BinaryMask& a, const BinaryMask& b)
{
	if (!a.same_size(b))
		throw Error(ErrorCode::DimensionMismatch, "mask dimensions differ");
	BinaryMask out(a.width(), a.height());
	std::transform(a.data().begin(), a.data().end(), b.data().begin(), out.data().begin(),
		[](std::uint8_t x, std::uint8_t y) { return static_cast<std::uint8_t>(x & y); });
	return out;
}

} // namespace liotkit
