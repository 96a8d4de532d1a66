// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liotkit/census.hpp"
#include "liotkit/container.hpp"
#include "liotkit/datasets.hpp"
#include "liotkit/image_io.hpp"
#include "liotkit/liot.hpp"
#include "liotkit/metrics.hpp"
#include "liotkit/perturb.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace liotkit;
using liotkit::testing::TempDir;
using liotkit::testing::uniform;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

namespace {

struct Outcome {
	bool pass;
	std::string detail;
};

double ms_since(Clock::time_point t0)
{
	return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class Encode>
Outcome invariance_suite(Encode encode, std::uint64_t seed)
{
	std::mt19937_64 rng(seed);
	int failures = 0;
	int non_identity = 0;
	const auto t0 = Clock::now();
	for (int i = 0; i < 100; ++i) {
		const int w = uniform(rng, 1, 128);
		const int h = uniform(rng, 1, 128);
		const GrayImage img = liotkit::testing::random_gray(rng, w, h, uniform(rng, 1, 200));
		const auto base = encode(img);
		const LevelSet support = levels_present(img);
		for (int k = 0; k < 10; ++k) {
			const MonotoneLut lut = random_strict_lut(rng(), support);
			const GrayImage mapped = apply_lut(img, lut);
			non_identity += mapped != img;
			failures += encode(mapped) != base;
		}
	}
	const double ms = ms_since(t0);
	std::ostringstream os;
	os << "1000 trials, " << failures << " failures, " << non_identity << " changed the image, " << ms << " ms";
	return {failures == 0 && ms < 60000.0, os.str()};
}

Outcome monotone_invariance()
{
	return invariance_suite([](const GrayImage& g) { return liot_transform(g, {1}); }, 101);
}

Outcome oracle_equivalence()
{
	std::mt19937_64 rng(202);
	std::size_t mismatched = 0;
	for (int i = 0; i < 200; ++i) {
		// The first half covers every width/height from 1 to 10.
		const int w = i < 100 ? 1 + i % 10 : uniform(rng, 1, 96);
		const int h = i < 100 ? 1 + i / 10 : uniform(rng, 1, 96);
		const GrayImage img = liotkit::testing::random_gray(rng, w, h, uniform(rng, 1, 256));
		const LiotImage fast = liot_transform(img, {static_cast<unsigned>(1 + i % 3)});
		const LiotImage naive = liot_transform_naive(img);
		for (Side s : kSides) {
			const auto a = fast.plane(s);
			const auto b = naive.plane(s);
			for (std::size_t p = 0; p < a.size(); ++p)
				mismatched += a[p] != b[p];
		}
	}
	return {mismatched == 0, "200 images, " + std::to_string(mismatched) + " mismatched bytes"};
}

Outcome hand_example()
{
	const LiotImage out = liot_transform(GrayImage(3, 1, std::vector<std::uint8_t>{5, 3, 9}));
	auto is = [&](Side s, std::vector<std::uint8_t> v) {
		const auto p = out.plane(s);
		return std::equal(p.begin(), p.end(), v.begin(), v.end());
	};
	const bool ok = is(Side::Left, {0, 0, 3}) && is(Side::Right, {1, 0, 0}) && is(Side::Top, {0, 0, 0})
		&& is(Side::Bottom, {0, 0, 0});
	return {ok, "l=[0,0,3] r=[1,0,0] t=b=[0,0,0]"};
}

Outcome census_conformance()
{
	const CensusImage c = census_transform(GrayImage(3, 3, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
	const int centre = c.at(1, 1);
	const Outcome inv = invariance_suite([](const GrayImage& g) { return census_transform(g); }, 303);
	return {centre == 15 && inv.pass, "centre code " + std::to_string(centre) + "; invariance: " + inv.detail};
}

Outcome auc_oracle()
{
	std::mt19937_64 rng(404);
	double worst = 0;
	int evaluated = 0;
	for (int i = 0; i < 100; ++i) {
		// At least two pixels so both classes fit.
		const int w = uniform(rng, 2, 8);
		const int h = uniform(rng, 1, 8);
		const int n = w * h;
		std::vector<double> scores(n);
		std::vector<std::uint8_t> labels(n);
		const int grid = uniform(rng, 1, 12);
		for (int p = 0; p < n; ++p) {
			scores[p] = double(uniform(rng, 0, grid)) / grid;
			labels[p] = uniform(rng, 0, 1);
		}
		// Guarantee both classes.
		labels[0] = 1;
		labels[n - 1] = 0;
		worst = std::max(worst, std::abs(auc(scores, labels) - liotkit::testing::brute_force_auc(scores, labels)));
		++evaluated;
	}
	const std::vector<std::uint8_t> lab{0, 1, 0, 1, 1};
	const double tied = auc(std::vector<double>(5, 0.3), lab);
	const double separated = auc(std::vector<double>{0.1, 0.9, 0.2, 0.7, 0.8}, lab);
	std::ostringstream os;
	os << evaluated << " maps, max |diff| " << worst << ", all-tied " << tied << ", separated " << separated;
	return {worst <= 1e-12 && tied == 0.5 && separated == 1.0, os.str()};
}

Outcome connectivity_formula()
{
	// Ground truth: two 50-pixel lines. Prediction: the same lines cut into 3 + 2 pieces.
	BinaryMask gt(50, 3);
	for (int x = 0; x < 50; ++x)
		gt.at(x, 0) = gt.at(x, 2) = 1;
	BinaryMask pred = gt;
	pred.at(16, 0) = pred.at(33, 0) = pred.at(25, 2) = 0;
	const double same = connectivity(gt, gt);
	const double cut = connectivity(pred, gt);

	BinaryMask tiny(7, 1);
	tiny.at(0, 0) = 1;
	const BinaryMask scattered(7, 1, std::vector<std::uint8_t>{1, 0, 1, 0, 1, 0, 1});
	const double clamped = connectivity(scattered, tiny);

	std::ostringstream os;
	os.precision(17);
	os << "identical " << same << ", 2-vs-5 " << cut << ", clamped " << clamped;
	return {same == 1.0 && std::abs(cut - 0.97) <= 1e-12 && clamped == 0.0, os.str()};
}

Outcome components_oracle()
{
	std::mt19937_64 rng(505);
	int mismatches = 0;
	for (int i = 0; i < 100; ++i) {
		const BinaryMask m = liotkit::testing::random_mask(rng, 32, 32, 0.2 + 0.5 * (i % 5) / 4.0);
		for (bool eight : {false, true}) {
			const Components c = connected_components(m, eight ? Connectivity::Eight : Connectivity::Four);
			const auto o = liotkit::testing::flood_fill_components(m, eight);
			mismatches += c.count != o.count || c.labels != o.labels;
		}
	}
	return {mismatches == 0, "100 masks x {4,8}, " + std::to_string(mismatches) + " mismatches"};
}

std::string slurp(const fs::path& p)
{
	std::ifstream is(p, std::ios::binary);
	std::stringstream ss;
	ss << is.rdbuf();
	return ss.str();
}

bool same_tree(const fs::path& a, const fs::path& b)
{
	std::vector<fs::path> files;
	for (const auto& e : fs::recursive_directory_iterator(a))
		if (e.is_regular_file())
			files.push_back(fs::relative(e.path(), a));
	std::size_t other = 0;
	for (const auto& e : fs::recursive_directory_iterator(b))
		other += e.is_regular_file();
	if (files.size() != other)
		return false;
	return std::all_of(files.begin(), files.end(), [&](const fs::path& f) { return slurp(a / f) == slurp(b / f); });
}

Outcome preprocessing()
{
	TempDir dir("acceptance_prep");
	std::mt19937_64 rng(606);
	fs::create_directories(dir / "raw/images");
	fs::create_directories(dir / "raw/gt");
	for (const char* id : {"im01", "im02"}) {
		save_image(liotkit::testing::random_color(rng, 70, 60), dir / ("raw/images/" + std::string(id) + ".png"));
		save_image(liotkit::testing::random_mask(rng, 70, 60, 0.05), dir / ("raw/gt/" + std::string(id) + ".png"));
	}

	std::ostringstream os;
	bool ok = true;
	const struct {
		const char* preset;
		int w, h;
	} expected[] = {{"stare", 554, 479}, {"chasedb1", 584, 561}, {"cracktree", 512, 512}};
	for (const auto& e : expected) {
		const DatasetSpec spec = builtin_spec(e.preset, dir / "raw");
		const SamplePair s = prepare_sample(spec, "im01");
		const bool sized = s.image.width() == e.w && s.image.height() == e.h && s.gt.same_size(s.image);
		const fs::path out1 = dir / (std::string(e.preset) + "_1");
		const fs::path out2 = dir / (std::string(e.preset) + "_2");
		write_prepared(spec, out1);
		write_prepared(spec, out2);
		write_prepared(spec, out1);
		const bool idempotent = same_tree(out1, out2);
		ok = ok && sized && idempotent;
		os << e.preset << " " << s.image.width() << "x" << s.image.height() << (idempotent ? " idempotent" : " DIFFERS")
		   << "; ";
	}

	BinaryMask dot(31, 31);
	dot.at(15, 15) = 1;
	const BinaryMask disk = dilate(dot, builtin_spec("cracktree").gt_dilation_radius);
	const auto n = std::count(disk.data().begin(), disk.data().end(), 1);
	os << "radius-4 disk " << n << " pixels";
	return {ok && n == 49, os.str()};
}

Outcome container_round_trip()
{
	TempDir dir("acceptance_container");
	std::mt19937_64 rng(707);
	int failures = 0;
	for (int i = 0; i < 50; ++i) {
		const int w = uniform(rng, 1, 100);
		const int h = uniform(rng, 1, 100);
		const LiotImage code = liot_transform(liotkit::testing::random_gray(rng, w, h));
		const fs::path p = dir / ("c" + std::to_string(i) + ".liot");
		write_liot(code, p);
		const std::string bytes = slurp(p);
		const LiotImage back = read_liot(p);
		write_liot(back, dir / "again.liot");
		failures += !(back == code) || bytes != slurp(dir / "again.liot")
			|| bytes.size() != kLiotHeaderSize + 4 * std::size_t(w) * h;
	}
	return {failures == 0, "50 containers, " + std::to_string(failures) + " failures"};
}

Outcome performance()
{
	std::mt19937_64 rng(808);
	const GrayImage img = liotkit::testing::random_gray(rng, 565, 584);
	auto time_of = [&](const std::function<LiotImage()>& f, int iters) {
		std::vector<double> t;
		for (int i = 0; i < iters; ++i) {
			const auto t0 = Clock::now();
			const LiotImage r = f();
			t.push_back(ms_since(t0));
			if (r.width() != img.width())
				std::abort();
		}
		std::sort(t.begin(), t.end());
		return t[t.size() / 2];
	};
	(void)liot_transform(img, {1});
	const double fast = time_of([&] { return liot_transform(img, {1}); }, 21);
	const double naive = time_of([&] { return liot_transform_naive(img); }, 5);
	std::ostringstream os;
	os << "565x584 single-threaded: fast " << fast << " ms (median of 21), naive " << naive << " ms";
	return {fast < 50.0 && fast <= naive, os.str()};
}

} // namespace

int main()
{
	const struct {
		const char* name;
		Outcome (*run)();
	} criteria[] = {
		{"monotone-invariance", monotone_invariance},
		{"oracle-equivalence", oracle_equivalence},
		{"hand-example", hand_example},
		{"census-conformance", census_conformance},
		{"auc-oracle", auc_oracle},
		{"connectivity-formula", connectivity_formula},
		{"components-oracle", components_oracle},
		{"preprocessing", preprocessing},
		{"container-round-trip", container_round_trip},
		{"performance", performance},
	};
	int failed = 0;
	for (const auto& c : criteria) {
		Outcome o{false, ""};
		try {
			o = c.run();
		} catch (const std::exception& e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		failed += !o.pass;
		std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
		std::fflush(stdout);
	}
	std::printf("%d/%zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
	return failed == 0 ? 0 : 1;
}
