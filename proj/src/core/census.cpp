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

#include "liotkit/census.hpp"

#include <array>

namespace liotkit {

CensusImage census_transform(const GrayImage& img)
{
	struct Offset {
		int dx;
		int dy;
	};
	static constexpr std::array<Offset, 8> kRaster{{
		{-1, -1}, {0, -1}, {1, -1},
		{-1, 0}, {1, 0},
		{-1, 1}, {0, 1}, {1, 1},
	}};

	const int width = img.width();
	const int height = img.height();
	CensusImage out(width, height);
	for (int y = 0; y < height; ++y) {
		for (int x = 0; x < width; ++x) {
			const std::uint8_t center = img.at(x, y);
			unsigned code = 0;
			for (std::size_t k = 0; k < kRaster.size(); ++k) {
				const int nx = x + kRaster[k].dx;
				const int ny = y + kRaster[k].dy;
				if (nx < 0 || nx >= width || ny < 0 || ny >= height)
					continue;
				code |= unsigned(center > img.at(nx, ny)) << k;
			}
			out.at(x, y) = static_cast<std::uint8_t>(code);
		}
	}
	return out;
}

GrayImage to_gray(const CensusImage& codes)
{
	return GrayImage(codes.width(), codes.height(),
		std::vector<std::uint8_t>(codes.data().begin(), codes.data().end()));
}

} // namespace liotkit
