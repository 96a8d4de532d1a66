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

#include "liotkit/container.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

namespace liotkit {

namespace {

constexpr char kMagic[4] = {'L', 'I', 'O', 'T'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
	for (int i = 0; i < 4; ++i)
		out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p)
{
	return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

} // namespace

std::vector<std::uint8_t> encode_liot(const LiotImage& img)
{
	const std::size_t plane = std::size_t(img.width()) * img.height();
	std::vector<std::uint8_t> out;
	out.reserve(kLiotHeaderSize + 4 * plane);
	out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
	out.push_back(kLiotVersion);
	put_u32(out, static_cast<std::uint32_t>(img.width()));
	put_u32(out, static_cast<std::uint32_t>(img.height()));
	for (Side s : kSides) {
		const auto p = img.plane(s);
		out.insert(out.end(), p.begin(), p.end());
	}
	return out;
}

LiotImage decode_liot(std::span<const std::uint8_t> bytes)
{
	if (bytes.size() < kLiotHeaderSize || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
		throw Error(ErrorCode::UnsupportedFormat, "not a LIOT container");
	if (bytes[4] != kLiotVersion)
		throw Error(ErrorCode::UnsupportedFormat, "unsupported LIOT container version " + std::to_string(bytes[4]));
	const std::uint32_t w = get_u32(bytes.data() + 5);
	const std::uint32_t h = get_u32(bytes.data() + 9);
	if (w == 0 || h == 0 || w > 0x7fffffffu || h > 0x7fffffffu)
		throw Error(ErrorCode::UnsupportedFormat, "invalid LIOT container dimensions");
	const std::size_t plane = std::size_t(w) * h;
	if ((bytes.size() - kLiotHeaderSize) / 4 != plane || (bytes.size() - kLiotHeaderSize) % 4 != 0)
		throw Error(ErrorCode::UnsupportedFormat, "LIOT container length does not match its header");
	std::array<std::vector<std::uint8_t>, 4> planes;
	auto it = bytes.begin() + kLiotHeaderSize;
	for (auto& p : planes) {
		p.assign(it, it + plane);
		it += plane;
	}
	return LiotImage(int(w), int(h), std::move(planes));
}

void write_liot(const LiotImage& img, const std::filesystem::path& path)
{
	const auto bytes = encode_liot(img);
	std::ofstream os(path, std::ios::binary);
	if (!os)
		throw Error(ErrorCode::Io, "cannot open " + path.string());
	os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
	if (!os)
		throw Error(ErrorCode::Io, "write failed: " + path.string());
}

LiotImage read_liot(const std::filesystem::path& path)
{
	std::ifstream is(path, std::ios::binary);
	if (!is) {
		if (!std::filesystem::exists(path))
			throw Error(ErrorCode::FileNotFound, "file not found: " + path.string());
		throw Error(ErrorCode::Io, "cannot open " + path.string());
	}
	std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
	return decode_liot(bytes);
}

} // namespace liotkit
