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

#ifndef LIOTKIT_CONTAINER_HPP
#define LIOTKIT_CONTAINER_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "liotkit/liot.hpp"

namespace liotkit {

// LIOT1 layout:
//   offset 0   "LIOT"
//   offset 4   version byte, 0x01
//   offset 5   width,  uint32 little-endian
//   offset 9   height, uint32 little-endian
//   offset 13  planes l, r, t, b, each width*height bytes, row-major
inline constexpr std::size_t kLiotHeaderSize = 13;
inline constexpr std::uint8_t kLiotVersion = 0x01;

std::vector<std::uint8_t> encode_liot(const LiotImage& img);
/// Throws UnsupportedFormat on a bad magic, version or length.
LiotImage decode_liot(std::span<const std::uint8_t> bytes);

void write_liot(const LiotImage& img, const std::filesystem::path& path);
LiotImage read_liot(const std::filesystem::path& path);

} // namespace liotkit

#endif // LIOTKIT_CONTAINER_HPP
