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

#include "liotkit/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>

namespace liotkit {

namespace {

void require_same_size(const BinaryMask& a, const BinaryMask& b, const char* what)
{
	if (!a.same_size(b))
		throw Error(ErrorCode::DimensionMismatch,
			std::string(what) + " dimensions differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height())
				+ " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
}

double ratio(std::uint64_t num, std::uint64_t den, unsigned flag, unsigned& degenerate)
{
	if (den == 0) {
		degenerate |= flag;
		return 0.0;
	}
	return double(num) / double(den);
}

struct UnionFind {
	std::vector<std::int32_t> parent;

	std::int32_t make()
	{
		parent.push_back(static_cast<std::int32_t>(parent.size()));
		return parent.back();
	}
	std::int32_t find(std::int32_t x)
	{
		while (parent[x] != x) {
			parent[x] = parent[parent[x]];
			x = parent[x];
		}
		return x;
	}
	void unite(std::int32_t a, std::int32_t b)
	{
		a = find(a);
		b = find(b);
		if (a != b)
			parent[std::max(a, b)] = std::min(a, b);
	}
};

std::string format_double(double v)
{
	char buf[64];
	auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, end);
}

} // namespace

std::vector<std::string> degenerate_flag_names(unsigned flags)
{
	static constexpr std::pair<unsigned, const char*> kNames[] = {
		{kDegenerateSe, "se"},
		{kDegenerateSp, "sp"},
		{kDegenerateAcc, "acc"},
		{kDegenerateF1, "f1"},
		{kDegenerateAuc, "auc"},
		{kDegenerateConnectivity, "connectivity"},
		{kDegenerateThresholdSweep, "threshold_sweep"},
	};
	std::vector<std::string> out;
	for (const auto& [bit, name] : kNames)
		if (flags & bit)
			out.emplace_back(name);
	return out;
}

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask* fov)
{
	require_same_size(pred, gt, "prediction and ground truth");
	if (fov)
		require_same_size(gt, *fov, "ground truth and FOV");
	const auto p = pred.data();
	const auto g = gt.data();
	ConfusionCounts c;
	for (std::size_t i = 0; i < p.size(); ++i) {
		if (fov && !fov->data()[i])
			continue;
		if (p[i])
			++(g[i] ? c.tp : c.fp);
		else
			++(g[i] ? c.fn : c.tn);
	}
	return c;
}

ScalarMetrics scalar_metrics(const ConfusionCounts& c)
{
	if (c.total() == 0)
		throw Error(ErrorCode::EmptyEvaluationRegion, "no pixels in the evaluation region");
	ScalarMetrics m;
	m.se = ratio(c.tp, c.tp + c.fn, kDegenerateSe, m.degenerate);
	m.sp = ratio(c.tn, c.tn + c.fp, kDegenerateSp, m.degenerate);
	m.acc = ratio(c.tp + c.tn, c.total(), kDegenerateAcc, m.degenerate);
	m.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn, kDegenerateF1, m.degenerate);
	return m;
}

double auc(std::span<const double> scores, std::span<const std::uint8_t> labels)
{
	if (scores.size() != labels.size())
		throw Error(ErrorCode::DimensionMismatch, "scores and labels differ in length");
	std::vector<std::size_t> order(scores.size());
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

	// Twice the Mann-Whitney U, accumulated per tie group in integers:
	// every positive beats the negatives below its group and ties with the
	// negatives inside it.
	std::uint64_t positives = 0;
	std::uint64_t negatives = 0;
	std::uint64_t twice_u = 0;
	for (std::size_t i = 0; i < order.size();) {
		std::size_t j = i;
		std::uint64_t group_pos = 0;
		std::uint64_t group_neg = 0;
		while (j < order.size() && scores[order[j]] == scores[order[i]]) {
			++(labels[order[j]] ? group_pos : group_neg);
			++j;
		}
		twice_u += group_pos * (2 * negatives + group_neg);
		positives += group_pos;
		negatives += group_neg;
		i = j;
	}
	if (positives == 0 || negatives == 0)
		throw Error(ErrorCode::DegenerateLabels, "AUC needs both positive and negative pixels");
	return double(twice_u) / (2.0 * double(positives) * double(negatives));
}

double auc(const ProbabilityMap& pred, const BinaryMask& gt, const BinaryMask* fov)
{
	if (!pred.same_size(gt))
		throw Error(ErrorCode::DimensionMismatch, "prediction and ground truth dimensions differ");
	if (fov)
		require_same_size(gt, *fov, "ground truth and FOV");
	if (!fov)
		return auc(pred.data(), gt.data());
	std::vector<double> scores;
	std::vector<std::uint8_t> labels;
	for (std::size_t i = 0; i < gt.pixel_count(); ++i) {
		if (!fov->data()[i])
			continue;
		scores.push_back(pred.data()[i]);
		labels.push_back(gt.data()[i]);
	}
	return auc(scores, labels);
}

Components connected_components(const BinaryMask& mask, Connectivity conn)
{
	const int w = mask.width();
	const int h = mask.height();
	Components out;
	out.width = w;
	out.height = h;
	out.labels.assign(mask.pixel_count(), 0);

	UnionFind uf;
	uf.make(); // label 0 is background
	auto label_at = [&](int x, int y) -> std::int32_t {
		if (x < 0 || x >= w || y < 0)
			return 0;
		return out.labels[std::size_t(y) * w + x];
	};
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			if (!mask.at(x, y))
				continue;
			std::int32_t neighbors[4];
			int n = 0;
			neighbors[n++] = label_at(x - 1, y);
			neighbors[n++] = label_at(x, y - 1);
			if (conn == Connectivity::Eight) {
				neighbors[n++] = label_at(x - 1, y - 1);
				neighbors[n++] = label_at(x + 1, y - 1);
			}
			std::int32_t label = 0;
			for (int k = 0; k < n; ++k) {
				if (!neighbors[k])
					continue;
				if (!label)
					label = neighbors[k];
				else
					uf.unite(label, neighbors[k]);
			}
			if (!label)
				label = uf.make();
			out.labels[std::size_t(y) * w + x] = label;
		}
	}

	std::vector<std::int32_t> remap(uf.parent.size(), 0);
	std::int32_t next = 0;
	for (auto& l : out.labels) {
		if (!l)
			continue;
		const std::int32_t root = uf.find(l);
		if (!remap[root])
			remap[root] = ++next;
		l = remap[root];
	}
	out.count = static_cast<std::size_t>(next);
	return out;
}

double connectivity_score(std::size_t gt_components, std::size_t pred_components, std::size_t gt_pixels)
{
	if (gt_pixels == 0)
		throw Error(ErrorCode::EmptyGroundTruth, "ground truth has no foreground pixels");
	const double diff = gt_components > pred_components ? double(gt_components - pred_components)
	                                                    : double(pred_components - gt_components);
	return 1.0 - std::min(1.0, diff / double(gt_pixels));
}

double connectivity(const BinaryMask& pred, const BinaryMask& gt, Connectivity conn)
{
	require_same_size(pred, gt, "prediction and ground truth");
	const std::size_t gt_pixels = static_cast<std::size_t>(std::count(gt.data().begin(), gt.data().end(), 1));
	if (gt_pixels == 0)
		throw Error(ErrorCode::EmptyGroundTruth, "ground truth has no foreground pixels");
	return connectivity_score(connected_components(gt, conn).count, connected_components(pred, conn).count, gt_pixels);
}

BinaryMask binarize(const ProbabilityMap& pred, double threshold)
{
	BinaryMask out(pred.width(), pred.height());
	std::transform(pred.data().begin(), pred.data().end(), out.data().begin(),
		[threshold](double v) { return static_cast<std::uint8_t>(v >= threshold); });
	return out;
}

namespace {

MetricsReport report_for(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask* fov, Connectivity conn)
{
	MetricsReport r;
	r.counts = confusion(pred, gt, fov);
	const ScalarMetrics m = scalar_metrics(r.counts);
	r.se = m.se;
	r.sp = m.sp;
	r.acc = m.acc;
	r.f1 = m.f1;
	r.degenerate_flags = m.degenerate;
	if (r.counts.tp + r.counts.fn == 0) {
		r.degenerate_flags |= kDegenerateConnectivity;
		r.connectivity = 0.0;
	} else if (fov) {
		r.connectivity = connectivity(pred & *fov, gt & *fov, conn);
	} else {
		r.connectivity = connectivity(pred, gt, conn);
	}
	return r;
}

} // namespace

MetricsReport best_threshold_by_f1(const ProbabilityMap& pred, const BinaryMask& gt, const BinaryMask* fov,
	Connectivity conn)
{
	if (!pred.same_size(gt))
		throw Error(ErrorCode::DimensionMismatch, "prediction and ground truth dimensions differ");
	if (fov)
		require_same_size(gt, *fov, "ground truth and FOV");

	struct Sample {
		double score;
		std::uint8_t label;
	};
	std::vector<Sample> samples;
	samples.reserve(gt.pixel_count());
	for (std::size_t i = 0; i < gt.pixel_count(); ++i)
		if (!fov || fov->data()[i])
			samples.push_back({pred.data()[i], gt.data()[i]});
	if (samples.empty())
		throw Error(ErrorCode::EmptyEvaluationRegion, "no pixels in the evaluation region");
	std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.score < b.score; });

	struct Group {
		double score;
		std::uint64_t pos;
		std::uint64_t neg;
	};
	std::vector<Group> groups;
	std::uint64_t total_pos = 0;
	for (const Sample& s : samples) {
		if (groups.empty() || groups.back().score != s.score)
			groups.push_back({s.score, 0, 0});
		++(s.label ? groups.back().pos : groups.back().neg);
		total_pos += s.label;
	}
	if (total_pos == 0 || total_pos == samples.size())
		throw Error(ErrorCode::DegenerateLabels, "threshold selection needs both positive and negative pixels");

	double threshold = groups.front().score;
	bool degenerate_sweep = groups.size() == 1;
	if (!degenerate_sweep) {
		// Predicted positives for the cut below group k are groups k..end.
		std::vector<std::uint64_t> suffix_pos(groups.size() + 1, 0);
		std::vector<std::uint64_t> suffix_neg(groups.size() + 1, 0);
		for (std::size_t k = groups.size(); k-- > 0;) {
			suffix_pos[k] = suffix_pos[k + 1] + groups[k].pos;
			suffix_neg[k] = suffix_neg[k + 1] + groups[k].neg;
		}
		double best_f1 = -1.0;
		for (std::size_t k = 1; k < groups.size(); ++k) {
			const std::uint64_t tp = suffix_pos[k];
			const std::uint64_t fp = suffix_neg[k];
			const double f1 = double(2 * tp) / double(tp + fp + total_pos);
			if (f1 > best_f1) {
				best_f1 = f1;
				threshold = groups[k - 1].score + (groups[k].score - groups[k - 1].score) / 2.0;
			}
		}
	}

	MetricsReport r = report_for(binarize(pred, threshold), gt, fov, conn);
	r.threshold = threshold;
	r.auc = auc(pred, gt, fov);
	if (degenerate_sweep)
		r.degenerate_flags |= kDegenerateThresholdSweep;
	return r;
}

MetricsReport binary_report(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask* fov, Connectivity conn)
{
	MetricsReport r = report_for(pred, gt, fov, conn);
	r.threshold = 0.5;
	return r;
}

std::string to_json(const MetricsReport& r)
{
	std::string s = "{";
	s += "\"threshold\":" + format_double(r.threshold);
	s += ",\"tp\":" + std::to_string(r.counts.tp);
	s += ",\"fp\":" + std::to_string(r.counts.fp);
	s += ",\"fn\":" + std::to_string(r.counts.fn);
	s += ",\"tn\":" + std::to_string(r.counts.tn);
	s += ",\"se\":" + format_double(r.se);
	s += ",\"sp\":" + format_double(r.sp);
	s += ",\"acc\":" + format_double(r.acc);
	s += ",\"auc\":" + (r.auc ? format_double(*r.auc) : std::string("null"));
	s += ",\"f1\":" + format_double(r.f1);
	s += ",\"connectivity\":" + format_double(r.connectivity);
	s += ",\"degenerate_flags\":[";
	const auto names = degenerate_flag_names(r.degenerate_flags);
	for (std::size_t i = 0; i < names.size(); ++i)
		s += (i ? ",\"" : "\"") + names[i] + "\"";
	s += "]}";
	return s;
}

std::string to_table(const MetricsReport& r)
{
	char buf[128];
	std::string s;
	auto row = [&](const char* name, const std::string& value) {
		std::snprintf(buf, sizeof buf, "%-14s %s\n", name, value.c_str());
		s += buf;
	};
	auto fixed = [&](double v) {
		char b[32];
		std::snprintf(b, sizeof b, "%.6f", v);
		return std::string(b);
	};
	row("threshold", fixed(r.threshold));
	row("tp", std::to_string(r.counts.tp));
	row("fp", std::to_string(r.counts.fp));
	row("fn", std::to_string(r.counts.fn));
	row("tn", std::to_string(r.counts.tn));
	row("se", fixed(r.se));
	row("sp", fixed(r.sp));
	row("acc", fixed(r.acc));
	row("auc", r.auc ? fixed(*r.auc) : std::string("n/a"));
	row("f1", fixed(r.f1));
	row("connectivity", fixed(r.connectivity));
	std::string flags;
	for (const auto& n : degenerate_flag_names(r.degenerate_flags))
		flags += (flags.empty() ? "" : ",") + n;
	row("degenerate", flags.empty() ? "-" : flags);
	return s;
}

} // namespace liotkit
