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

// liotkit command-line tool. Talks to the library through the C API only.
//
// Exit codes: 0 ok, 1 I/O, 2 format or dimensions, 3 invariance failure,
// 4 degenerate metrics.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liotkit/liotkit.h"

namespace {

enum Exit : int { kOk = 0, kIo = 1, kFormat = 2, kInvariance = 3, kDegenerate = 4 };

template <typename T, void (*Free)(T*)>
struct Deleter {
	void operator()(T* p) const noexcept { Free(p); }
};
using Image = std::unique_ptr<lk_image, Deleter<lk_image, lk_image_free>>;
using Liot = std::unique_ptr<lk_liot, Deleter<lk_liot, lk_liot_free>>;
using Lut = std::unique_ptr<lk_lut, Deleter<lk_lut, lk_lut_free>>;
using Prob = std::unique_ptr<lk_prob, Deleter<lk_prob, lk_prob_free>>;
using Dataset = std::unique_ptr<lk_dataset, Deleter<lk_dataset, lk_dataset_free>>;

struct Failure {
	int exit_code;
	std::string message;
};

int exit_code_for(lk_status s)
{
	switch (s) {
	case LK_OK: return kOk;
	case LK_ERR_FILE_NOT_FOUND:
	case LK_ERR_IO:
	case LK_ERR_MISSING_PAIR: return kIo;
	case LK_ERR_DEGENERATE_LABELS:
	case LK_ERR_EMPTY_REGION:
	case LK_ERR_EMPTY_GROUND_TRUTH: return kDegenerate;
	default: return kFormat;
	}
}

void check(lk_status s, const std::string& context)
{
	if (s != LK_OK)
		throw Failure{exit_code_for(s), context + ": " + lk_last_error()};
}

template <typename Handle, typename Fn>
Handle make(Fn&& fn, const std::string& context)
{
	typename Handle::pointer raw = nullptr;
	check(fn(&raw), context);
	return Handle(raw);
}

Image load(const std::string& path)
{
	return make<Image>([&](lk_image** out) { return lk_image_load(path.c_str(), out); }, path);
}

lk_gray_mode gray_mode(const std::string& name)
{
	return name == "luma" ? LK_GRAY_LUMA : LK_GRAY_GREEN;
}

Image to_gray(const lk_image* img, lk_gray_mode mode)
{
	return make<Image>([&](lk_image** out) { return lk_to_gray(img, mode, out); }, "gray conversion");
}

Image load_mask(const std::string& path)
{
	Image raw = load(path);
	return make<Image>([&](lk_image** out) { return lk_binarize(raw.get(), 127, out); }, path);
}

// ---- transform ---------------------------------------------------------------

struct TransformArgs {
	std::string input;
	std::string output;
	std::string gray = "green";
	bool invert = false;
	std::string method = "liot";
	std::string dump_dir;
};

int run_transform(const TransformArgs& a)
{
	Image src = load(a.input);
	Image gray = to_gray(src.get(), gray_mode(a.gray));
	if (a.invert)
		gray = make<Image>([&](lk_image** out) { return lk_invert(gray.get(), out); }, "invert");

	if (a.method == "census") {
		Image codes = make<Image>([&](lk_image** out) { return lk_census_transform(gray.get(), out); }, "census");
		check(lk_image_save(codes.get(), a.output.c_str()), a.output);
		if (!a.dump_dir.empty()) {
			std::filesystem::create_directories(a.dump_dir);
			const std::string p = (std::filesystem::path(a.dump_dir) / "census.png").string();
			check(lk_image_save(codes.get(), p.c_str()), p);
		}
		return kOk;
	}

	const lk_method method = a.method == "naive" ? LK_METHOD_NAIVE : LK_METHOD_FAST;
	Liot liot = make<Liot>([&](lk_liot** out) { return lk_liot_transform(gray.get(), method, 0, out); }, "transform");
	check(lk_liot_write(liot.get(), a.output.c_str()), a.output);

	if (!a.dump_dir.empty()) {
		std::error_code ec;
		std::filesystem::create_directories(a.dump_dir, ec);
		if (ec)
			throw Failure{kIo, "cannot create " + a.dump_dir + ": " + ec.message()};
		static constexpr std::pair<lk_side, const char*> kPlanes[] = {
			{LK_SIDE_LEFT, "l.png"}, {LK_SIDE_RIGHT, "r.png"}, {LK_SIDE_TOP, "t.png"}, {LK_SIDE_BOTTOM, "b.png"}};
		for (const auto& [side, name] : kPlanes) {
			Image plane = make<Image>([&](lk_image** out) { return lk_liot_plane_image(liot.get(), side, out); }, name);
			const std::string p = (std::filesystem::path(a.dump_dir) / name).string();
			check(lk_image_save(plane.get(), p.c_str()), p);
		}
	}
	return kOk;
}

// ---- invariance ----------------------------------------------------------------

struct InvarianceArgs {
	std::string input;
	std::uint64_t seed = 1;
	int trials = 10;
	std::string gray = "green";
	std::string method = "liot";
	std::vector<std::string> luts;
	bool inject_swap = false;
};

int run_invariance(const InvarianceArgs& a)
{
	if (a.trials < 0)
		throw Failure{kFormat, "--trials must be non-negative"};
	Image src = load(a.input);
	Image gray = to_gray(src.get(), gray_mode(a.gray));
	const bool census = a.method == "census";

	auto encode = [&](const lk_image* img) {
		if (census)
			return std::pair<Image, Liot>(
				make<Image>([&](lk_image** out) { return lk_census_transform(img, out); }, "census"), nullptr);
		return std::pair<Image, Liot>(nullptr,
			make<Liot>([&](lk_liot** out) { return lk_liot_transform(img, LK_METHOD_FAST, 0, out); }, "transform"));
	};
	const auto reference = encode(gray.get());

	int passed = 0;
	int failed = 0;
	int skipped = 0;
	int index = 0;
	auto run_trial = [&](const std::string& label, const lk_lut* lut, bool require_strict) {
		++index;
		std::cout << "trial " << index << " " << label << " ";
		if (require_strict && !lk_lut_is_strict_on(lut, gray.get())) {
			std::cout << "SKIP (not strictly increasing on image levels)\n";
			++skipped;
			return;
		}
		Image changed = make<Image>([&](lk_image** out) { return lk_lut_apply(gray.get(), lut, out); }, "apply LUT");
		const auto encoded = encode(changed.get());
		const bool same = census ? lk_image_equal(encoded.first.get(), reference.first.get())
		                         : lk_liot_equal(encoded.second.get(), reference.second.get());
		std::cout << (same ? "PASS" : "FAIL") << "\n";
		++(same ? passed : failed);
	};

	for (int k = 0; k < a.trials; ++k) {
		const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(k);
		Lut lut = make<Lut>([&](lk_lut** out) { return lk_lut_random_strict(seed, gray.get(), out); }, "random LUT");
		run_trial("random seed=" + std::to_string(seed), lut.get(), true);
	}
	for (const char* g : {"0.5", "1", "2"}) {
		Lut lut = make<Lut>([&](lk_lut** out) { return lk_lut_gamma(std::stod(g), out); }, "gamma LUT");
		run_trial(std::string("gamma=") + g, lut.get(), true);
	}
	for (const auto& path : a.luts) {
		Lut lut = make<Lut>([&](lk_lut** out) { return lk_lut_read(path.c_str(), out); }, path);
		run_trial("lut=" + path, lut.get(), true);
	}
	if (a.inject_swap) {
		// Exchange the darkest and brightest levels: reverses every comparison between them.
		size_t n = 0;
		const uint8_t* px = lk_image_data(gray.get(), &n);
		uint8_t lo = 255, hi = 0;
		for (size_t i = 0; i < n; ++i) {
			lo = std::min(lo, px[i]);
			hi = std::max(hi, px[i]);
		}
		Lut lut = make<Lut>([&](lk_lut** out) { return lk_lut_swap(lo, hi, out); }, "swap LUT");
		run_trial("swap=" + std::to_string(lo) + "<->" + std::to_string(hi), lut.get(), false);
	}

	std::cout << "summary: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
	return failed ? kInvariance : kOk;
}

// ---- metrics -------------------------------------------------------------------

struct MetricsArgs {
	std::string pred;
	std::string gt;
	std::string fov;
	bool prob = false;
	int connectivity = 8;
	bool json = false;
};

int run_metrics(const MetricsArgs& a)
{
	Image gt = load_mask(a.gt);
	Image fov = a.fov.empty() ? nullptr : load_mask(a.fov);

	lk_metrics_report report{};
	if (a.prob) {
		Image raw = load(a.pred);
		Image gray = to_gray(raw.get(), LK_GRAY_LUMA);
		Prob prob = make<Prob>([&](lk_prob** out) { return lk_prob_from_image(gray.get(), out); }, a.pred);
		check(lk_best_threshold_by_f1(prob.get(), gt.get(), fov.get(), a.connectivity, &report), "metrics");
	} else {
		Image pred = load_mask(a.pred);
		check(lk_binary_report(pred.get(), gt.get(), fov.get(), a.connectivity, &report), "metrics");
	}

	auto render = a.json ? lk_report_json : lk_report_table;
	size_t needed = 0;
	check(render(&report, nullptr, 0, &needed), "report");
	std::string text(needed + 1, '\0');
	check(render(&report, text.data(), text.size(), &needed), "report");
	text.resize(needed);
	std::cout << text << (a.json ? "\n" : "");
	return kOk;
}

// ---- dataset -------------------------------------------------------------------

struct DatasetArgs {
	std::string name;
	std::string config;
	std::string root = ".";
	std::string out;
};

int run_dataset(const DatasetArgs& a)
{
	if (a.name.empty() == a.config.empty())
		throw Failure{kFormat, "give exactly one of a dataset name or --config"};
	Dataset ds = a.config.empty()
		? make<Dataset>([&](lk_dataset** o) { return lk_dataset_builtin(a.name.c_str(), a.root.c_str(), o); }, a.name)
		: make<Dataset>([&](lk_dataset** o) { return lk_dataset_from_config(a.config.c_str(), o); }, a.config);
	size_t count = 0;
	check(lk_dataset_prepare(ds.get(), a.out.c_str(), &count), "dataset");
	std::cout << "prepared " << count << " samples in " << a.out << "\n";
	return kOk;
}

// ---- bench ---------------------------------------------------------------------

struct BenchArgs {
	std::string size = "565x584";
	int iters = 10;
	std::uint64_t seed = 1;
	unsigned threads = 1;
};

int run_bench(const BenchArgs& a)
{
	int w = 0, h = 0;
	char sep = 0;
	std::istringstream is(a.size);
	if (!(is >> w >> sep >> h) || (sep != 'x' && sep != 'X') || w <= 0 || h <= 0)
		throw Failure{kFormat, "--size expects WxH with positive dimensions"};
	if (a.iters <= 0)
		throw Failure{kFormat, "--iters must be positive"};

	std::mt19937_64 rng(a.seed);
	std::vector<std::uint8_t> pixels(std::size_t(w) * h);
	for (auto& p : pixels)
		p = static_cast<std::uint8_t>(rng() >> 56);
	Image img = make<Image>([&](lk_image** out) { return lk_image_new(LK_IMAGE_GRAY, w, h, pixels.data(), out); },
		"bench image");

	using clock = std::chrono::steady_clock;
	auto time_method = [&](lk_method method) {
		const auto start = clock::now();
		for (int i = 0; i < a.iters; ++i) {
			Liot out = make<Liot>(
				[&](lk_liot** o) { return lk_liot_transform(img.get(), method, a.threads, o); }, "transform");
		}
		const double seconds = std::chrono::duration<double>(clock::now() - start).count();
		return std::max(seconds, 1e-9) / a.iters;
	};
	const double fast = time_method(LK_METHOD_FAST);
	const double naive = time_method(LK_METHOD_NAIVE);

	std::cout << "bench " << w << "x" << h << " iters=" << a.iters << " seed=" << a.seed << " threads=" << a.threads
			  << "\n";
	const double px = double(w) * h;
	std::fprintf(stderr, "liot   %10.3f ms/image %14.0f px/s\n", fast * 1e3, px / fast);
	std::fprintf(stderr, "naive  %10.3f ms/image %14.0f px/s\n", naive * 1e3, px / naive);
	std::fprintf(stderr, "speedup %.2fx\n", naive / fast);
	return kOk;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"liotkit: local intensity order transform, census baseline and segmentation metrics"};
	app.require_subcommand(1);
	app.set_version_flag("--version", std::string(lk_version()));

	TransformArgs ta;
	auto* transform = app.add_subcommand("transform", "Encode an image as a 4-plane LIOT container (or census codes)");
	transform->add_option("input", ta.input, "Input raster (PNG/PGM/PPM)")->required();
	transform->add_option("output", ta.output, "Output LIOT1 container, or PNG for --method census")->required();
	transform->add_option("--gray", ta.gray, "Colour reduction")->check(CLI::IsMember({"green", "luma"}));
	transform->add_flag("--invert", ta.invert, "Invert intensities first (bright structures)");
	transform->add_option("--method", ta.method, "Encoder")->check(CLI::IsMember({"liot", "naive", "census"}));
	transform->add_option("--dump-planes", ta.dump_dir, "Also write l.png, r.png, t.png, b.png here");

	InvarianceArgs ia;
	auto* invariance = app.add_subcommand("invariance", "Check code invariance under monotone contrast changes");
	invariance->add_option("input", ia.input, "Input raster")->required();
	invariance->add_option("--seed", ia.seed, "First random LUT seed");
	invariance->add_option("--trials", ia.trials, "Number of random strict LUT trials");
	invariance->add_option("--gray", ia.gray, "Colour reduction")->check(CLI::IsMember({"green", "luma"}));
	invariance->add_option("--method", ia.method, "Encoder")->check(CLI::IsMember({"liot", "census"}));
	invariance->add_option("--lut", ia.luts, "Extra LUT file (256 lines), repeatable");
	invariance->add_flag("--inject-swap-lut", ia.inject_swap)->group("");

	MetricsArgs ma;
	auto* metrics = app.add_subcommand("metrics", "Evaluate a prediction against ground truth");
	metrics->add_option("pred", ma.pred, "Prediction (binary, or 8-bit probability with --prob)")->required();
	metrics->add_option("gt", ma.gt, "Ground-truth mask")->required();
	metrics->add_option("--fov", ma.fov, "Field-of-view mask");
	metrics->add_flag("--prob", ma.prob, "Treat pred as a probability map and pick the F1-optimal threshold");
	metrics->add_option("--connectivity", ma.connectivity, "Component adjacency")->check(CLI::IsMember({4, 8}));
	metrics->add_flag("--json", ma.json, "Single-line JSON record");

	DatasetArgs da;
	auto* dataset = app.add_subcommand("dataset", "Prepare a dataset (drive, stare, chasedb1, cracktree or --config)");
	dataset->add_option("name", da.name, "Preset name");
	dataset->add_option("--config", da.config, "key=value dataset description");
	dataset->add_option("--root", da.root, "Preset root holding images/, gt/ and optional fov/");
	dataset->add_option("--out", da.out, "Output directory")->required();

	BenchArgs ba;
	auto* bench = app.add_subcommand("bench", "Time the fast transform against the naive reference");
	bench->add_option("--size", ba.size, "Image size WxH");
	bench->add_option("--iters", ba.iters, "Iterations per method");
	bench->add_option("--seed", ba.seed, "Image seed");
	bench->add_option("--threads", ba.threads, "Worker threads for the fast path (0 = auto)");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForVersion& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return kFormat;
	}

	try {
		if (*transform)
			return run_transform(ta);
		if (*invariance)
			return run_invariance(ia);
		if (*metrics)
			return run_metrics(ma);
		if (*dataset)
			return run_dataset(da);
		if (*bench)
			return run_bench(ba);
	} catch (const Failure& f) {
		std::cerr << "liotkit: " << f.message << "\n";
		return f.exit_code;
	} catch (const std::exception& e) {
		std::cerr << "liotkit: " << e.what() << "\n";
		return kIo;
	}
	return kOk;
}
