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

#include "liotkit/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

namespace liotkit {

LevelSet levels_present(const GrayImage& img)
{
	LevelSet levels;
	for (std::uint8_t v : img.data())
		levels.set(v);
	return levels;
}

MonotoneLut MonotoneLut::identity()
{
	Table t;
	std::iota(t.begin(), t.end(), std::uint8_t{0});
	return MonotoneLut(t);
}

MonotoneLut MonotoneLut::strict(const Table& table)
{
	MonotoneLut lut(table);
	if (!lut.is_strict())
		throw Error(ErrorCode::InvalidArgument, "LUT is not strictly increasing");
	return lut;
}

bool MonotoneLut::is_monotone() const noexcept
{
	return std::is_sorted(table_.begin(), table_.end());
}

bool MonotoneLut::is_strict() const noexcept
{
	return std::adjacent_find(table_.begin(), table_.end(),
		[](std::uint8_t a, std::uint8_t b) { return a >= b; }) == table_.end();
}

bool MonotoneLut::is_strict_on(const LevelSet& levels) const noexcept
{
	int previous = -1;
	for (int v = 0; v < 256; ++v) {
		if (!levels.test(v))
			continue;
		if (int(table_[v]) <= previous)
			return false;
		previous = table_[v];
	}
	return true;
}

MonotoneLut gamma_lut(double gamma)
{
	if (!(gamma > 0) || !std::isfinite(gamma))
		throw Error(ErrorCode::NonPositiveGamma, "gamma must be a positive finite number");
	MonotoneLut::Table t;
	for (int i = 0; i < 256; ++i)
		t[i] = static_cast<std::uint8_t>(std::clamp(std::floor(255.0 * std::pow(i / 255.0, gamma) + 0.5), 0.0, 255.0));
	return MonotoneLut(t);
}

namespace {

// Uniform in [0, n) from raw engine output. std::uniform_int_distribution is
// implementation-defined, which would make seeded tables differ across
// standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n)
{
	const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
	std::uint64_t r;
	do {
		r = rng();
	} while (r >= limit);
	return r % n;
}

} // namespace

MonotoneLut random_strict_lut(std::uint64_t seed, const LevelSet& support)
{
	const std::size_t k = support.count();
	std::mt19937_64 rng(seed);

	std::array<std::uint8_t, 256> pool;
	std::iota(pool.begin(), pool.end(), std::uint8_t{0});
	for (std::size_t i = 0; i < k; ++i)
		std::swap(pool[i], pool[i + bounded(rng, 256 - i)]);
	std::sort(pool.begin(), pool.begin() + k);

	MonotoneLut::Table t{};
	std::size_t next = 0;
	std::uint8_t current = 0;
	for (int v = 0; v < 256; ++v) {
		if (support.test(v))
			current = pool[next++];
		t[v] = current;
	}
	return MonotoneLut(t);
}

MonotoneLut swap_lut(std::uint8_t a, std::uint8_t b)
{
	auto t = MonotoneLut::identity().table();
	std::swap(t[a], t[b]);
	return MonotoneLut(t);
}

GrayImage apply_lut(const GrayImage& img, const MonotoneLut& lut)
{
	GrayImage out(img.width(), img.height());
	std::transform(img.data().begin(), img.data().end(), out.data().begin(), lut);
	return out;
}

void write_lut(const MonotoneLut& lut, const std::filesystem::path& path)
{
	std::ofstream os(path, std::ios::binary);
	if (!os)
		throw Error(ErrorCode::Io, "cannot open " + path.string());
	for (std::uint8_t v : lut.table())
		os << int(v) << '\n';
	if (!os)
		throw Error(ErrorCode::Io, "write failed: " + path.string());
}

MonotoneLut read_lut(const std::filesystem::path& path)
{
	std::ifstream is(path);
	if (!is) {
		if (!std::filesystem::exists(path))
			throw Error(ErrorCode::FileNotFound, "file not found: " + path.string());
		throw Error(ErrorCode::Io, "cannot open " + path.string());
	}
	MonotoneLut::Table t{};
	std::string line;
	std::size_t n = 0;
	while (std::getline(is, line)) {
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (line.empty())
			continue;
		std::istringstream ls(line);
		int v;
		std::string rest;
		if (!(ls >> v) || (ls >> rest) || v < 0 || v > 255 || n >= 256)
			throw Error(ErrorCode::UnsupportedFormat, "malformed LUT line " + std::to_string(n + 1) + " in " + path.string());
		t[n++] = static_cast<std::uint8_t>(v);
	}
	if (n != 256)
		throw Error(ErrorCode::UnsupportedFormat, "LUT file must have 256 entries, found " + std::to_string(n));
	return MonotoneLut(t);
}

} // namespace liotkit
