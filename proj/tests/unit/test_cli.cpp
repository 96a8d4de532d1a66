#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "liotkit/container.hpp"
#include "liotkit/image_io.hpp"
#include "liotkit/liot.hpp"
#include "support/generators.hpp"

#ifndef LIOTKIT_CLI_PATH
#error "LIOTKIT_CLI_PATH must point at the liotkit executable"
#endif

using namespace liotkit;
using liotkit::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
	int code;
	std::string out;
};

Run cli(const std::string& args)
{
	const std::string cmd = std::string("\"") + LIOTKIT_CLI_PATH + "\" " + args + " 2>/dev/null";
	FILE* pipe = popen(cmd.c_str(), "r");
	REQUIRE(pipe != nullptr);
	std::string out;
	std::array<char, 4096> buf{};
	while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
		out.append(buf.data(), n);
	const int status = pclose(pipe);
	return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string q(const fs::path& p)
{
	return "\"" + p.string() + "\"";
}

std::string slurp(const fs::path& p)
{
	std::ifstream is(p, std::ios::binary);
	std::stringstream ss;
	ss << is.rdbuf();
	return ss.str();
}

} // namespace

TEST_CASE("transform writes a container")
{
	TempDir dir("cli");
	std::mt19937_64 rng(1);
	const auto img = liotkit::testing::random_color(rng, 37, 23);
	save_image(img, dir / "in.png");

	REQUIRE(cli("transform " + q(dir / "in.png") + " " + q(dir / "fast.liot") + " --dump-planes " + q(dir / "planes")).code == 0);
	REQUIRE(cli("transform " + q(dir / "in.png") + " " + q(dir / "naive.liot") + " --method naive").code == 0);
	CHECK(fs::file_size(dir / "fast.liot") == 13 + 4 * 37 * 23);
	CHECK(slurp(dir / "fast.liot") == slurp(dir / "naive.liot"));

	const LiotImage decoded = read_liot(dir / "fast.liot");
	CHECK(decoded == liot_transform_naive(to_gray(img, GrayMode::GreenChannel)));
	for (const char* name : {"l.png", "r.png", "t.png", "b.png"})
		CHECK(fs::exists(dir / "planes" / name));
	CHECK(load_gray(dir / "planes/t.png", GrayMode::GreenChannel) == decoded.plane_image(Side::Top));

	save_image(GrayImage(9, 4, 77), dir / "flat.pgm");
	REQUIRE(cli("transform " + q(dir / "flat.pgm") + " " + q(dir / "flat.liot")).code == 0);
	const std::string flat = slurp(dir / "flat.liot");
	CHECK(flat.size() == 13 + 4 * 36);
	CHECK(flat.find_first_not_of('\0', 13) == std::string::npos);

	REQUIRE(cli("transform " + q(dir / "flat.pgm") + " " + q(dir / "census.png") + " --method census").code == 0);
	CHECK(load_gray(dir / "census.png", GrayMode::GreenChannel) == GrayImage(9, 4, 0));
}

TEST_CASE("transform errors")
{
	TempDir dir("cli");
	CHECK(cli("transform " + q(dir / "missing.png") + " " + q(dir / "o.liot")).code == 1);
	std::ofstream(dir / "junk.png") << "not an image";
	CHECK(cli("transform " + q(dir / "junk.png") + " " + q(dir / "o.liot")).code == 2);
	CHECK(cli("transform").code == 2);
	CHECK(cli("transform a b --method fancy").code == 2);
}

TEST_CASE("invariance")
{
	TempDir dir("cli");
	std::mt19937_64 rng(2);
	save_image(liotkit::testing::random_gray(rng, 24, 18, 60), dir / "in.png");

	const Run ok = cli("invariance " + q(dir / "in.png") + " --seed 5 --trials 6");
	CHECK(ok.code == 0);
	CHECK(ok.out.find("FAIL") == std::string::npos);
	CHECK(ok.out.find("summary: ") != std::string::npos);
	CHECK(ok.out.find("trial 1 ") != std::string::npos);

	CHECK(cli("invariance " + q(dir / "in.png") + " --method census --trials 3").code == 0);
	CHECK(cli("invariance " + q(dir / "in.png") + " --trials 0").code == 0);

	const Run bad = cli("invariance " + q(dir / "in.png") + " --trials 2 --inject-swap-lut");
	CHECK(bad.code == 3);
	CHECK(bad.out.find("FAIL") != std::string::npos);

	std::ofstream lut(dir / "double.lut");
	for (int i = 0; i < 256; ++i)
		lut << std::min(255, 2 * i) << "\n";
	lut.close();
	CHECK(cli("invariance " + q(dir / "in.png") + " --trials 0 --lut " + q(dir / "double.lut")).code != 2);
	std::ofstream(dir / "short.lut") << "1\n2\n";
	CHECK(cli("invariance " + q(dir / "in.png") + " --lut " + q(dir / "short.lut")).code == 2);
}

TEST_CASE("metrics")
{
	TempDir dir("cli");
	BinaryMask gt(6, 5);
	gt.at(1, 1) = gt.at(2, 1) = gt.at(4, 3) = 1;
	save_image(gt, dir / "gt.png");

	const Run same = cli("metrics " + q(dir / "gt.png") + " " + q(dir / "gt.png") + " --json");
	CHECK(same.code == 0);
	CHECK(same.out.find("\"f1\":1,") != std::string::npos);
	CHECK(same.out.find("\"connectivity\":1,") != std::string::npos);
	CHECK(same.out.find("\"auc\":null") != std::string::npos);

	save_image(GrayImage(4, 1, {26, 102, 89, 204}), dir / "prob.png");
	save_image(BinaryMask(4, 1, {0, 0, 1, 1}), dir / "labels.png");
	const Run prob = cli("metrics " + q(dir / "prob.png") + " " + q(dir / "labels.png") + " --prob --json");
	CHECK(prob.code == 0);
	CHECK(prob.out.find("\"auc\":0.75") != std::string::npos);
	CHECK(prob.out.find("\"f1\":0.8") != std::string::npos);

	const Run table = cli("metrics " + q(dir / "gt.png") + " " + q(dir / "gt.png"));
	CHECK(table.code == 0);
	CHECK(table.out.find("f1") != std::string::npos);

	save_image(BinaryMask(5, 5), dir / "small.png");
	CHECK(cli("metrics " + q(dir / "small.png") + " " + q(dir / "gt.png")).code == 2);
	save_image(BinaryMask(6, 5), dir / "empty.png");
	CHECK(cli("metrics " + q(dir / "gt.png") + " " + q(dir / "empty.png") + " --prob").code == 4);
	CHECK(cli("metrics " + q(dir / "gt.png") + " " + q(dir / "nope.png")).code == 1);
}

TEST_CASE("dataset")
{
	TempDir dir("cli");
	fs::create_directories(dir / "src/images");
	fs::create_directories(dir / "src/gt");
	std::mt19937_64 rng(3);
	for (const char* id : {"a", "b"}) {
		save_image(liotkit::testing::random_color(rng, 30, 20), dir / ("src/images/" + std::string(id) + ".png"));
		save_image(liotkit::testing::random_mask(rng, 30, 20, 0.1), dir / ("src/gt/" + std::string(id) + ".png"));
	}
	const Run first = cli("dataset stare --root " + q(dir / "src") + " --out " + q(dir / "out1"));
	CHECK(first.code == 0);
	CHECK(first.out.find("prepared 2 samples") != std::string::npos);
	REQUIRE(cli("dataset stare --root " + q(dir / "src") + " --out " + q(dir / "out2")).code == 0);
	for (const char* f : {"manifest.txt", "train.txt", "test.txt", "images/a.png", "gt/b.png"})
		CHECK(slurp(dir / "out1" / f) == slurp(dir / "out2" / f));

	std::ofstream(dir / "cfg.txt") << "image_dir=src/images\ngt_dir=src/gt\nresize=16x8\n";
	REQUIRE(cli("dataset --config " + q(dir / "cfg.txt") + " --out " + q(dir / "out3")).code == 0);
	CHECK(load_gray(dir / "out3/images/a.png", GrayMode::GreenChannel).width() == 16);

	std::ofstream(dir / "bad.txt") << "image_dir=src/images\ncolour=blue\n";
	CHECK(cli("dataset --config " + q(dir / "bad.txt") + " --out " + q(dir / "out4")).code == 2);
	CHECK(cli("dataset unknownset --out " + q(dir / "out5")).code == 2);
	CHECK(cli("dataset drive --root " + q(dir / "src") + " --out " + q(dir / "out6")).code == 1);
}

TEST_CASE("bench")
{
	const Run r = cli("bench --size 16x9 --iters 1 --seed 4");
	CHECK(r.code == 0);
	CHECK(r.out.find("bench 16x9 iters=1 seed=4") != std::string::npos);
	CHECK(cli("bench --size 1x1 --iters 1").code == 0);
	CHECK(cli("bench --size 0x3").code == 2);
}
