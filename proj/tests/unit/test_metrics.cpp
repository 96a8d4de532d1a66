#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "liotkit/metrics.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace liotkit;
using Bytes = std::vector<std::uint8_t>;

namespace {

ErrorCode error_of(const std::function<void()>& fn)
{
	try {
		fn();
	} catch (const Error& e) {
		return e.code();
	}
	FAIL("expected an liotkit::Error");
	return ErrorCode::Io;
}

} // namespace

TEST_CASE("confusion")
{
	const BinaryMask gt(2, 2, Bytes{1, 0, 0, 1});
	CHECK(confusion(gt, gt) == ConfusionCounts{2, 0, 0, 2});
	CHECK(confusion(BinaryMask(2, 2, 1), BinaryMask(2, 2, 0)) == ConfusionCounts{0, 4, 0, 0});

	// pred disagrees at (1,0) (fp) and (1,1) (fn); the FOV drops (1,0).
	const BinaryMask pred(2, 2, Bytes{1, 1, 0, 0});
	CHECK(confusion(pred, gt) == ConfusionCounts{1, 1, 1, 1});
	const BinaryMask fov(2, 2, Bytes{1, 0, 1, 1});
	CHECK(confusion(pred, gt, &fov) == ConfusionCounts{1, 0, 1, 1});

	CHECK(error_of([&] { confusion(BinaryMask(3, 1), gt); }) == ErrorCode::DimensionMismatch);
	CHECK(error_of([&] {
		const BinaryMask small(1, 1);
		confusion(gt, gt, &small);
	}) == ErrorCode::DimensionMismatch);
}

TEST_CASE("confusion is invariant under a shared pixel permutation")
{
	std::mt19937_64 rng(4);
	for (int t = 0; t < 20; ++t) {
		const int n = liotkit::testing::uniform(rng, 1, 200);
		const auto pred = liotkit::testing::random_mask(rng, n, 1);
		const auto gt = liotkit::testing::random_mask(rng, n, 1);
		const auto fov = liotkit::testing::random_mask(rng, n, 1, 0.7);
		std::vector<int> perm(n);
		std::iota(perm.begin(), perm.end(), 0);
		std::shuffle(perm.begin(), perm.end(), rng);
		Bytes pp(n), gp(n), fp(n);
		for (int i = 0; i < n; ++i) {
			pp[i] = pred.data()[perm[i]];
			gp[i] = gt.data()[perm[i]];
			fp[i] = fov.data()[perm[i]];
		}
		const BinaryMask fov_p(n, 1, fp);
		REQUIRE(confusion(pred, gt, &fov) == confusion(BinaryMask(n, 1, pp), BinaryMask(n, 1, gp), &fov_p));
	}
}

TEST_CASE("scalar metrics")
{
	const auto m = scalar_metrics({8, 2, 2, 88});
	CHECK(m.se == doctest::Approx(0.8).epsilon(1e-15));
	CHECK(m.f1 == doctest::Approx(0.8).epsilon(1e-15));
	CHECK(m.sp == doctest::Approx(88.0 / 90.0));
	CHECK(m.acc == doctest::Approx(0.96));
	CHECK(m.degenerate == 0);

	const auto perfect = scalar_metrics({5, 0, 0, 7});
	CHECK(perfect.se == 1.0);
	CHECK(perfect.sp == 1.0);
	CHECK(perfect.acc == 1.0);
	CHECK(perfect.f1 == 1.0);

	const auto no_pos = scalar_metrics({0, 3, 0, 5});
	CHECK(no_pos.se == 0.0);
	CHECK((no_pos.degenerate & kDegenerateSe));
	CHECK_FALSE((no_pos.degenerate & kDegenerateSp));

	const auto all_neg = scalar_metrics({0, 0, 0, 5});
	CHECK((all_neg.degenerate & kDegenerateF1));
	CHECK(all_neg.f1 == 0.0);

	CHECK(error_of([] { scalar_metrics({}); }) == ErrorCode::EmptyEvaluationRegion);
}

TEST_CASE("auc")
{
	const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
	const Bytes l{0, 0, 1, 1};
	CHECK(auc(s, l) == 0.75);
	CHECK(auc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, Bytes{0, 0, 1, 1}) == 1.0);
	CHECK(auc(std::vector<double>{0.3, 0.3, 0.3}, Bytes{0, 1, 1}) == 0.5);
	CHECK(auc(std::vector<double>{0.9, 0.1}, Bytes{0, 1}) == 0.0);
	CHECK(error_of([] { auc(std::vector<double>{0.2, 0.3}, Bytes{1, 1}); }) == ErrorCode::DegenerateLabels);
	CHECK(error_of([] { auc(std::vector<double>{0.2}, Bytes{1, 1}); }) == ErrorCode::DimensionMismatch);

	const ProbabilityMap map(4, 1, s);
	CHECK(auc(map, BinaryMask(4, 1, l)) == 0.75);
	// Restricting to the FOV drops the misordered negative 0.4.
	const BinaryMask fov(4, 1, Bytes{1, 0, 1, 1});
	CHECK(auc(map, BinaryMask(4, 1, l), &fov) == 1.0);
}

TEST_CASE("auc matches brute-force pair counting")
{
	std::mt19937_64 rng(1234);
	for (int t = 0; t < 200; ++t) {
		const int n = liotkit::testing::uniform(rng, 2, 64);
		std::vector<double> s(n);
		Bytes l(n);
		const int distinct = liotkit::testing::uniform(rng, 1, 10);
		for (int i = 0; i < n; ++i) {
			s[i] = double(rng() % distinct) / distinct;
			l[i] = rng() & 1;
		}
		l[0] = 1;
		l[1] = 0;
		REQUIRE(std::abs(auc(s, l) - liotkit::testing::brute_force_auc(s, l)) <= 1e-12);
	}
}

TEST_CASE("connected components")
{
	const BinaryMask diagonal(2, 2, Bytes{1, 0, 0, 1});
	CHECK(connected_components(diagonal, Connectivity::Eight).count == 1);
	CHECK(connected_components(diagonal, Connectivity::Four).count == 2);
	CHECK(connected_components(BinaryMask(5, 5), Connectivity::Eight).count == 0);

	// U shape: two arms joined at the bottom merge only after the second pass.
	const BinaryMask u(3, 3, Bytes{1, 0, 1, 1, 0, 1, 1, 1, 1});
	const auto cu = connected_components(u, Connectivity::Four);
	CHECK(cu.count == 1);
	for (std::size_t i = 0; i < cu.labels.size(); ++i)
		CHECK(cu.labels[i] == (u.data()[i] ? 1 : 0));

	std::mt19937_64 rng(55);
	for (int t = 0; t < 50; ++t) {
		const auto m = liotkit::testing::random_mask(rng, 32, 32, 0.1 + 0.05 * (t % 10));
		for (auto conn : {Connectivity::Four, Connectivity::Eight}) {
			const auto c = connected_components(m, conn);
			const auto oracle = liotkit::testing::flood_fill_components(m, conn == Connectivity::Eight);
			REQUIRE(c.count == oracle.count);
			REQUIRE(c.labels == oracle.labels);
			std::set<std::int32_t> used(c.labels.begin(), c.labels.end());
			used.erase(0);
			REQUIRE(used.size() == c.count);
		}
	}
}

TEST_CASE("connectivity")
{
	const BinaryMask gt(4, 4, Bytes{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0});
	CHECK(connectivity(gt, gt) == 1.0);
	CHECK(connectivity_score(2, 5, 100) == doctest::Approx(0.97).epsilon(1e-14));
	CHECK(connectivity_score(5, 2, 100) == connectivity_score(2, 5, 100));
	CHECK(connectivity_score(1, 20, 10) == 0.0);
	CHECK(error_of([&] { connectivity(gt, BinaryMask(4, 4)); }) == ErrorCode::EmptyGroundTruth);
	CHECK(error_of([] { connectivity_score(1, 1, 0); }) == ErrorCode::EmptyGroundTruth);

	// gt: 4 pixels in 2 components; an empty prediction has 0 components:
	// 1 - min(1, 2/4) = 0.5.
	CHECK(connectivity(BinaryMask(4, 4), gt) == 0.5);
}

TEST_CASE("best_threshold_by_f1")
{
	const BinaryMask gt(2, 1, Bytes{0, 1});
	const auto r = best_threshold_by_f1(ProbabilityMap(2, 1, std::vector<double>{0.2, 0.9}), gt);
	CHECK(r.threshold == doctest::Approx(0.55).epsilon(1e-15));
	CHECK(r.f1 == 1.0);
	CHECK(r.auc.value() == 1.0);
	CHECK(r.connectivity == 1.0);
	CHECK(r.degenerate_flags == 0);

	const BinaryMask labels(4, 1, Bytes{0, 1, 1, 0});
	const auto exact = best_threshold_by_f1(ProbabilityMap(4, 1, std::vector<double>{0, 1, 1, 0}), labels);
	CHECK(exact.threshold == 0.5);
	CHECK(exact.f1 == 1.0);

	const auto flat = best_threshold_by_f1(ProbabilityMap(3, 1, std::vector<double>{0.4, 0.4, 0.4}),
		BinaryMask(3, 1, Bytes{0, 1, 0}));
	CHECK((flat.degenerate_flags & kDegenerateThresholdSweep));
	CHECK(flat.threshold == 0.4);
	CHECK(flat.auc.value() == 0.5);

	CHECK(error_of([] {
		best_threshold_by_f1(ProbabilityMap(2, 1, std::vector<double>{0.1, 0.2}), BinaryMask(2, 1, Bytes{1, 1}));
	}) == ErrorCode::DegenerateLabels);
	CHECK(error_of([] {
		const BinaryMask none(2, 1);
		best_threshold_by_f1(ProbabilityMap(2, 1, std::vector<double>{0.1, 0.2}), BinaryMask(2, 1, Bytes{1, 0}), &none);
	}) == ErrorCode::EmptyEvaluationRegion);
}

TEST_CASE("best_threshold_by_f1 beats every other candidate")
{
	std::mt19937_64 rng(808);
	for (int t = 0; t < 100; ++t) {
		const int n = liotkit::testing::uniform(rng, 2, 40);
		std::vector<double> s(n);
		Bytes l(n);
		const int levels = liotkit::testing::uniform(rng, 2, 12);
		for (int i = 0; i < n; ++i) {
			s[i] = double(rng() % levels) / (levels - 1);
			l[i] = rng() % 3 == 0;
		}
		l[0] = 1;
		l[1] = 0;
		const auto r = best_threshold_by_f1(ProbabilityMap(n, 1, s), BinaryMask(n, 1, l));

		std::vector<double> distinct = s;
		std::sort(distinct.begin(), distinct.end());
		distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
		REQUIRE(std::abs(r.f1 - liotkit::testing::f1_at(s, l, r.threshold)) < 1e-15);
		for (std::size_t k = 1; k < distinct.size(); ++k) {
			const double cand = (distinct[k - 1] + distinct[k]) / 2;
			const double f1 = liotkit::testing::f1_at(s, l, cand);
			REQUIRE(r.f1 >= f1);
			// Lower cuts must be strictly worse; the chosen cut may differ from cand by rounding.
			if (cand < r.threshold - 1e-12)
				REQUIRE(f1 < r.f1);
		}
	}
}

TEST_CASE("binary report and FOV-restricted connectivity")
{
	const BinaryMask gt(4, 1, Bytes{1, 0, 1, 0});
	const BinaryMask pred(4, 1, Bytes{1, 0, 1, 1});
	const auto r = binary_report(pred, gt);
	CHECK_FALSE(r.auc.has_value());
	CHECK(r.counts == ConfusionCounts{2, 1, 0, 1});
	// gt 2 components, pred 2 components (1 and 3..4 joined).
	CHECK(r.connectivity == 1.0);

	const BinaryMask fov(4, 1, Bytes{1, 1, 1, 0});
	const auto rf = binary_report(pred, gt, &fov);
	CHECK(rf.counts == ConfusionCounts{2, 0, 0, 1});
	CHECK(rf.f1 == 1.0);

	const auto empty_gt = binary_report(pred, BinaryMask(4, 1));
	CHECK((empty_gt.degenerate_flags & kDegenerateConnectivity));
	CHECK((empty_gt.degenerate_flags & kDegenerateSe));
}

TEST_CASE("report serialization")
{
	MetricsReport r;
	r.threshold = 0.5;
	r.counts = {1, 2, 3, 4};
	r.se = 0.25;
	r.sp = 0.5;
	r.acc = 0.5;
	r.f1 = 0.25;
	r.auc = 0.75;
	r.connectivity = 1;
	r.degenerate_flags = kDegenerateSp | kDegenerateThresholdSweep;
	CHECK(to_json(r)
		== "{\"threshold\":0.5,\"tp\":1,\"fp\":2,\"fn\":3,\"tn\":4,\"se\":0.25,\"sp\":0.5,\"acc\":0.5,\"auc\":0.75,"
		   "\"f1\":0.25,\"connectivity\":1,\"degenerate_flags\":[\"sp\",\"threshold_sweep\"]}");
	r.auc.reset();
	r.degenerate_flags = 0;
	CHECK(to_json(r).find("\"auc\":null") != std::string::npos);
	CHECK(to_json(r).find("\"degenerate_flags\":[]") != std::string::npos);

	const std::string table = to_table(r);
	CHECK(table.find("connectivity") != std::string::npos);
	CHECK(table.find("n/a") != std::string::npos);
}
