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

#ifndef LIOTKIT_IMAGE_IO_HPP
#define LIOTKIT_IMAGE_IO_HPP

#include <filesystem>
#include <variant>

#include "liotkit/image.hpp"

namespace liotkit {

using AnyImage = std::variant<GrayImage, ColorImage>;

// Reads 8-bit PNG (gray, RGB; an alpha channel is dropped) and binary PGM/PPM.
// The format is detected from the file signature, not the extension.
// Palette, sub-byte and 16-bit sources raise UnsupportedFormat.
AnyImage load_image(const std::filesystem::path& path);

/// Loads any supported raster and reduces colour input with `mode`.
GrayImage load_gray(const std::filesystem::path& path, GrayMode mode);

// Writers pick PNG or PGM/PPM from the extension (.pgm/.ppm/.pnm, otherwise PNG).
// Output bytes depend only on the pixels.
void save_image(const GrayImage& img, const std::filesystem::path& path);
void save_image(const ColorImage& img, const std::filesystem::path& path);
/// Masks are written as 8-bit {0,255}.
void save_image(const BinaryMask& mask, const std::filesystem::path& path);

} // namespace liotkit

#endif // LIOTKIT_IMAGE_IO_HPP
