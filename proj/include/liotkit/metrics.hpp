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

#ifndef LIOTKIT_METRICS_HPP
#define LIOTKIT_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liotkit/image.hpp"

namespace liotkit {

struct ConfusionCounts {
	std::uint64_t tp = 0;
	std::uint64_t fp = 0;
	std::uint64_t fn = 0;
	std::uint64_t tn = 0;

	std::uint64_t total() const noexcept { return tp + fp + fn + tn; }

	ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept
	{
		tp += o.tp;
		fp += o.fp;
		fn += o.fn;
		tn += o.tn;
		return *this;
	}

	friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Metrics whose denominator is zero are reported as 0 with the matching bit set.
enum DegenerateFlag : unsigned {
	kDegenerateSe = 1u << 0,
	kDegenerateSp = 1u << 1,
	kDegenerateAcc = 1u << 2,
	kDegenerateF1 = 1u << 3,
	kDegenerateAuc = 1u << 4,
	kDegenerateConnectivity = 1u << 5,
	kDegenerateThresholdSweep = 1u << 6,
};

std::vector<std::string> degenerate_flag_names(unsigned flags);

struct ScalarMetrics {
	double se = 0;
	double sp = 0;
	double acc = 0;
	double f1 = 0;
	unsigned degenerate = 0;
};

struct MetricsReport {
	double threshold = 0;
	ConfusionCounts counts;
	double se = 0;
	double sp = 0;
	double acc = 0;
	double f1 = 0;
	/// Absent for binary predictions.
	std::optional<double> auc;
	double connectivity = 0;
	unsigned degenerate_flags = 0;
};

enum class Connectivity { Four = 4, Eight = 8 };

/// Counts only pixels where `fov` is set; the whole raster when `fov` is null.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask* fov = nullptr);

/// Throws EmptyEvaluationRegion when the counts are all zero.
ScalarMetrics scalar_metrics(const ConfusionCounts& counts);

/// Mann-Whitney AUC with ties counted as 1/2. Throws DegenerateLabels unless
/// both classes are present.
double auc(std::span<const double> scores, std::span<const std::uint8_t> labels);
double auc(const ProbabilityMap& pred, const BinaryMask& gt, const BinaryMask* fov = nullptr);

struct Components {
	int width = 0;
	int height = 0;
	/// 0 for background, 1..count for foreground, numbered in raster order of first pixel.
	std::vector<std::int32_t> labels;
	std::size_t count = 0;
};

Components connected_components(const BinaryMask& mask, Connectivity conn = Connectivity::Eight);

/// 1 - min(1, |gt_components - pred_components| / gt_pixels).
double connectivity_score(std::size_t gt_components, std::size_t pred_components, std::size_t gt_pixels);

/// Throws EmptyGroundTruth when gt has no foreground.
double connectivity(const BinaryMask& pred, const BinaryMask& gt, Connectivity conn = Connectivity::Eight);

/// Foreground where score >= threshold.
BinaryMask binarize(const ProbabilityMap& pred, double threshold);

// Candidate thresholds are the midpoints between consecutive distinct scores in
// the evaluated region. The lowest threshold reaching the maximal F1 wins. With
// a single distinct score the candidate is that score itself and the sweep is
// flagged degenerate. Connectivity is measured inside the FOV.
MetricsReport best_threshold_by_f1(const ProbabilityMap& pred, const BinaryMask& gt,
	const BinaryMask* fov = nullptr, Connectivity conn = Connectivity::Eight);

/// Report for an already binarized prediction; auc stays empty, threshold is 0.5.
MetricsReport binary_report(const BinaryMask& pred, const BinaryMask& gt,
	const BinaryMask* fov = nullptr, Connectivity conn = Connectivity::Eight);

/// Single-line record: threshold, tp, fp, fn, tn, se, sp, acc, auc, f1,
/// connectivity, degenerate_flags.
std::string to_json(const MetricsReport& report);
std::string to_table(const MetricsReport& report);

} // namespace liotkit

#endif // LIOTKIT_METRICS_HPP
