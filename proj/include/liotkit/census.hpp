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

#ifndef LIOTKIT_CENSUS_HPP
#define LIOTKIT_CENSUS_HPP

#include "liotkit/image.hpp"

namespace liotkit {

struct CensusTag {};
using CensusImage = Raster<std::uint8_t, 1, CensusTag>;

/// Classical 3x3 census transform. Neighbours are visited in raster order
/// (NW, N, NE, W, E, SW, S, SE), the first one landing in the LSB; a bit is set
/// when the centre is strictly greater. Out-of-image neighbours give 0.
CensusImage census_transform(const GrayImage& img);

GrayImage to_gray(const CensusImage& codes);

} // namespace liotkit

#endif // LIOTKIT_CENSUS_HPP
