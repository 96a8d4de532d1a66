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

#include "liotkit/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace liotkit {

namespace fs = std::filesystem;

namespace {

struct FileCloser {
	void operator()(std::FILE* f) const noexcept
	{
		if (f)
			std::fclose(f);
	}
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode)
{
	FilePtr f(std::fopen(path.c_str(), mode));
	if (!f) {
		if (mode[0] == 'r' && !fs::exists(path))
			throw Error(ErrorCode::FileNotFound, "file not found: " + path.string());
		throw Error(ErrorCode::Io, "cannot open " + path.string());
	}
	return f;
}

std::vector<std::uint8_t> read_all(const fs::path& path)
{
	auto f = open_file(path, "rb");
	std::vector<std::uint8_t> bytes;
	std::uint8_t buf[65536];
	std::size_t n;
	while ((n = std::fread(buf, 1, sizeof buf, f.get())) > 0)
		bytes.insert(bytes.end(), buf, buf + n);
	if (std::ferror(f.get()))
		throw Error(ErrorCode::Io, "read error on " + path.string());
	return bytes;
}

// ---- PNG ------------------------------------------------------------------

struct PngReadResult {
	int width = 0;
	int height = 0;
	int channels = 0;
	std::vector<std::uint8_t> pixels;
};

struct PngMemSource {
	const std::uint8_t* data;
	std::size_t size;
	std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len)
{
	auto* src = static_cast<PngMemSource*>(png_get_io_ptr(png));
	if (src->pos + len > src->size)
		png_error(png, "truncated PNG stream");
	std::copy_n(src->data + src->pos, len, out);
	src->pos += len;
}

// Rejection reasons detected inside the setjmp region are reported through
// `reject` so no C++ exception crosses libpng frames.
enum class PngStatus { Ok, Corrupt, Unsupported };

PngStatus decode_png(const std::vector<std::uint8_t>& bytes, PngReadResult& out, std::string& reject)
{
	PngMemSource src{bytes.data(), bytes.size(), 0};
	std::vector<png_bytep> rows;

	png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
	if (!png)
		return PngStatus::Corrupt;
	png_infop info = png_create_info_struct(png);
	if (!info) {
		png_destroy_read_struct(&png, nullptr, nullptr);
		return PngStatus::Corrupt;
	}
	if (setjmp(png_jmpbuf(png))) {
		png_destroy_read_struct(&png, &info, nullptr);
		return PngStatus::Corrupt;
	}
	png_set_read_fn(png, &src, png_mem_read);
	png_read_info(png, info);

	const png_uint_32 w = png_get_image_width(png, info);
	const png_uint_32 h = png_get_image_height(png, info);
	const int depth = png_get_bit_depth(png, info);
	const int color = png_get_color_type(png, info);

	PngStatus status = PngStatus::Ok;
	if (depth != 8) {
		reject = "PNG bit depth " + std::to_string(depth) + " is not supported (8-bit only)";
		status = PngStatus::Unsupported;
	} else if (color == PNG_COLOR_TYPE_PALETTE) {
		reject = "palette PNG is not supported";
		status = PngStatus::Unsupported;
	} else if (w == 0 || h == 0 || w > 0x7fffffffu || h > 0x7fffffffu) {
		reject = "PNG dimensions out of range";
		status = PngStatus::Unsupported;
	}
	if (status != PngStatus::Ok) {
		png_destroy_read_struct(&png, &info, nullptr);
		return status;
	}

	if (color & PNG_COLOR_MASK_ALPHA)
		png_set_strip_alpha(png);
	if (png_get_valid(png, info, PNG_INFO_tRNS))
		png_set_strip_alpha(png);
	png_read_update_info(png, info);

	out.width = static_cast<int>(w);
	out.height = static_cast<int>(h);
	out.channels = (color & PNG_COLOR_MASK_COLOR) ? 3 : 1;
	const std::size_t rowbytes = png_get_rowbytes(png, info);
	if (rowbytes != std::size_t(w) * out.channels) {
		png_destroy_read_struct(&png, &info, nullptr);
		reject = "unexpected PNG row layout";
		return PngStatus::Unsupported;
	}
	out.pixels.resize(rowbytes * h);
	rows.resize(h);
	for (png_uint_32 y = 0; y < h; ++y)
		rows[y] = out.pixels.data() + y * rowbytes;
	png_read_image(png, rows.data());
	png_read_end(png, nullptr);
	png_destroy_read_struct(&png, &info, nullptr);
	return PngStatus::Ok;
}

bool write_png(std::FILE* f, int width, int height, int channels, const std::uint8_t* pixels)
{
	std::vector<png_const_bytep> rows(height);
	for (int y = 0; y < height; ++y)
		rows[y] = pixels + std::size_t(y) * width * channels;

	png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
	if (!png)
		return false;
	png_infop info = png_create_info_struct(png);
	if (!info) {
		png_destroy_write_struct(&png, nullptr);
		return false;
	}
	if (setjmp(png_jmpbuf(png))) {
		png_destroy_write_struct(&png, &info);
		return false;
	}
	png_init_io(png, f);
	png_set_IHDR(png, info, width, height, 8, channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
		PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
	png_write_info(png, info);
	png_write_rows(png, const_cast<png_bytepp>(rows.data()), static_cast<png_uint_32>(height));
	png_write_end(png, nullptr);
	png_destroy_write_struct(&png, &info);
	return true;
}

// ---- PGM / PPM --------------------------------------------------------------

AnyImage decode_pnm(const std::vector<std::uint8_t>& bytes, const fs::path& path)
{
	std::size_t pos = 2;
	auto next_token = [&]() -> long {
		while (pos < bytes.size()) {
			if (bytes[pos] == '#') {
				while (pos < bytes.size() && bytes[pos] != '\n')
					++pos;
			} else if (std::isspace(bytes[pos])) {
				++pos;
			} else {
				break;
			}
		}
		long v = 0;
		std::size_t digits = 0;
		while (pos < bytes.size() && std::isdigit(bytes[pos]) && digits < 10) {
			v = v * 10 + (bytes[pos++] - '0');
			++digits;
		}
		if (digits == 0)
			throw Error(ErrorCode::UnsupportedFormat, "malformed PNM header in " + path.string());
		return v;
	};
	const bool color = bytes[1] == '6';
	const long w = next_token();
	const long h = next_token();
	const long maxval = next_token();
	if (pos >= bytes.size() || !std::isspace(bytes[pos]))
		throw Error(ErrorCode::UnsupportedFormat, "malformed PNM header in " + path.string());
	++pos;
	if (maxval > 255)
		throw Error(ErrorCode::UnsupportedFormat, "PNM maxval " + std::to_string(maxval) + " is not 8-bit");
	if (maxval <= 0 || w <= 0 || h <= 0 || w > 0x7fffffff || h > 0x7fffffff)
		throw Error(ErrorCode::UnsupportedFormat, "invalid PNM header in " + path.string());
	const std::size_t count = std::size_t(w) * std::size_t(h) * (color ? 3 : 1);
	if (bytes.size() - pos < count)
		throw Error(ErrorCode::UnsupportedFormat, "truncated PNM data in " + path.string());
	std::vector<std::uint8_t> pixels(bytes.begin() + pos, bytes.begin() + pos + count);
	if (color)
		return ColorImage(int(w), int(h), std::move(pixels));
	return GrayImage(int(w), int(h), std::move(pixels));
}

bool is_pnm_extension(const fs::path& path)
{
	std::string ext = path.extension().string();
	std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
	return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

void save_raw(const fs::path& path, int width, int height, int channels, const std::uint8_t* pixels)
{
	auto f = open_file(path, "wb");
	if (is_pnm_extension(path)) {
		const std::string header = std::string(channels == 3 ? "P6" : "P5") + "\n" + std::to_string(width)
			+ " " + std::to_string(height) + "\n255\n";
		const std::size_t n = std::size_t(width) * height * channels;
		if (std::fwrite(header.data(), 1, header.size(), f.get()) != header.size()
			|| std::fwrite(pixels, 1, n, f.get()) != n)
			throw Error(ErrorCode::Io, "write failed: " + path.string());
	} else if (!write_png(f.get(), width, height, channels, pixels)) {
		throw Error(ErrorCode::Io, "PNG encode failed: " + path.string());
	}
	if (std::fflush(f.get()) != 0)
		throw Error(ErrorCode::Io, "write failed: " + path.string());
}

} // namespace

AnyImage load_image(const fs::path& path)
{
	const auto bytes = read_all(path);
	static constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
	if (bytes.size() >= 8 && std::equal(kPngSig, kPngSig + 8, bytes.begin())) {
		PngReadResult raw;
		std::string reject;
		switch (decode_png(bytes, raw, reject)) {
		case PngStatus::Ok:
			break;
		case PngStatus::Unsupported:
			throw Error(ErrorCode::UnsupportedFormat, reject + ": " + path.string());
		case PngStatus::Corrupt:
			throw Error(ErrorCode::UnsupportedFormat, "corrupt PNG: " + path.string());
		}
		if (raw.channels == 3)
			return ColorImage(raw.width, raw.height, std::move(raw.pixels));
		return GrayImage(raw.width, raw.height, std::move(raw.pixels));
	}
	if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
		return decode_pnm(bytes, path);
	throw Error(ErrorCode::UnsupportedFormat, "unrecognised raster format: " + path.string());
}

GrayImage load_gray(const fs::path& path, GrayMode mode)
{
	auto img = load_image(path);
	if (auto* gray = std::get_if<GrayImage>(&img))
		return std::move(*gray);
	return to_gray(std::get<ColorImage>(img), mode);
}

void save_image(const GrayImage& img, const fs::path& path)
{
	save_raw(path, img.width(), img.height(), 1, img.data().data());
}

void save_image(const ColorImage& img, const fs::path& path)
{
	save_raw(path, img.width(), img.height(), 3, img.data().data());
}

void save_image(const BinaryMask& mask, const fs::path& path)
{
	save_image(to_gray(mask), path);
}

} // namespace liotkit
