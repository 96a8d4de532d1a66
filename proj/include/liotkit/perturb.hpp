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

#ifndef LIOTKIT_PERTURB_HPP
#define LIOTKIT_PERTURB_HPP

#include <array>
#include <bitset>
#include <cstdint>
#include <filesystem>

#include "liotkit/image.hpp"

namespace liotkit {

/// Set of intensity levels, bit v set when level v is present.
using LevelSet = std::bitset<256>;

LevelSet levels_present(const GrayImage& img);

/// 256-entry intensity remapping. Any table is representable (the swap
/// negative control is not monotone); the predicates below say what it is.
class MonotoneLut {
public:
	using Table = std::array<std::uint8_t, 256>;

	explicit MonotoneLut(const Table& table) : table_(table) {}

	static MonotoneLut identity();
	/// Throws InvalidArgument unless the table is strictly increasing.
	static MonotoneLut strict(const Table& table);

	std::uint8_t operator()(std::uint8_t v) const noexcept { return table_[v]; }
	const Table& table() const noexcept { return table_; }

	bool is_monotone() const noexcept;
	bool is_strict() const noexcept;
	/// True when the order restricted to `levels` is strictly increasing,
	/// i.e. applying the table cannot create or reverse any comparison
	/// between values in `levels`.
	bool is_strict_on(const LevelSet& levels) const noexcept;

	friend bool operator==(const MonotoneLut&, const MonotoneLut&) = default;

private:
	Table table_;
};

/// table[i] = round(255 * (i/255)^gamma). Low levels can merge; check is_strict().
MonotoneLut gamma_lut(double gamma);

// Strictly increasing on `support`, non-decreasing everywhere else, chosen by
// sampling |support| distinct outputs in [0,255]. With the full support the
// only such table is the identity, so pass the levels actually present in the
// image to get a non-trivial contrast change. Deterministic in `seed`.
MonotoneLut random_strict_lut(std::uint64_t seed, const LevelSet& support = LevelSet{}.set());

/// Exchanges two levels. Not monotone; negative control for invariance tests.
MonotoneLut swap_lut(std::uint8_t a, std::uint8_t b);

GrayImage apply_lut(const GrayImage& img, const MonotoneLut& lut);

/// 256 lines, one decimal output value per line.
void write_lut(const MonotoneLut& lut, const std::filesystem::path& path);
MonotoneLut read_lut(const std::filesystem::path& path);

} // namespace liotkit

#endif // LIOTKIT_PERTURB_HPP
