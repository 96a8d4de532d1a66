#include <random>

#include "doctest.h"
#include "liotkit/census.hpp"
#include "liotkit/perturb.hpp"
#include "support/generators.hpp"

using namespace liotkit;

TEST_CASE("3x3 ramp centre code")
{
	const GrayImage patch(3, 3, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6, 7, 8, 9});
	const CensusImage codes = census_transform(patch);
	// 5 beats NW=1, N=2, NE=3, W=4: bits 0..3.
	CHECK(codes.at(1, 1) == 15);
	// Corner (0,0) = 1 beats nobody; corner (2,2) = 9 beats its 3 in-image neighbours
	// NW=5 (bit 0), N=6 (bit 1), W=8 (bit 3).
	CHECK(codes.at(0, 0) == 0);
	CHECK(codes.at(2, 2) == 0b1011);
}

TEST_CASE("census degenerate and constant inputs")
{
	CHECK(census_transform(GrayImage(1, 1, 200)).at(0, 0) == 0);
	const CensusImage flat = census_transform(GrayImage(9, 4, 31));
	for (std::uint8_t v : flat.data())
		REQUIRE(v == 0);
}

TEST_CASE("census is invariant to strictly increasing contrast changes")
{
	std::mt19937_64 rng(42);
	for (int t = 0; t < 40; ++t) {
		const GrayImage img = liotkit::testing::random_gray(rng, liotkit::testing::uniform(rng, 1, 30),
			liotkit::testing::uniform(rng, 1, 30), liotkit::testing::uniform(rng, 2, 100));
		const auto lut = random_strict_lut(rng(), levels_present(img));
		REQUIRE(census_transform(apply_lut(img, lut)) == census_transform(img));
		REQUIRE(census_transform(img) == census_transform(img));
	}
	const GrayImage pair(2, 1, std::vector<std::uint8_t>{3, 5});
	CHECK(census_transform(apply_lut(pair, swap_lut(3, 5))) != census_transform(pair));
}
