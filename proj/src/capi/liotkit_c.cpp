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

#include "liotkit/liotkit.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <variant>

#include "liotkit/census.hpp"
#include "liotkit/container.hpp"
#include "liotkit/datasets.hpp"
#include "liotkit/image_io.hpp"
#include "liotkit/liot.hpp"
#include "liotkit/metrics.hpp"
#include "liotkit/perturb.hpp"

using namespace liotkit;

struct lk_image {
	std::variant<GrayImage, ColorImage, BinaryMask> value;
};
struct lk_liot {
	LiotImage value;
};
struct lk_lut {
	MonotoneLut value;
};
struct lk_prob {
	ProbabilityMap value;
};
struct lk_dataset {
	DatasetSpec value;
};

namespace {

thread_local std::string g_last_error;

lk_status status_of(ErrorCode code)
{
	switch (code) {
	case ErrorCode::FileNotFound: return LK_ERR_FILE_NOT_FOUND;
	case ErrorCode::Io: return LK_ERR_IO;
	case ErrorCode::UnsupportedFormat: return LK_ERR_UNSUPPORTED_FORMAT;
	case ErrorCode::ZeroDimension: return LK_ERR_ZERO_DIMENSION;
	case ErrorCode::DimensionMismatch: return LK_ERR_DIMENSION_MISMATCH;
	case ErrorCode::InvalidArgument: return LK_ERR_INVALID_ARGUMENT;
	case ErrorCode::NonPositiveGamma: return LK_ERR_NON_POSITIVE_GAMMA;
	case ErrorCode::EmptyEvaluationRegion: return LK_ERR_EMPTY_REGION;
	case ErrorCode::DegenerateLabels: return LK_ERR_DEGENERATE_LABELS;
	case ErrorCode::EmptyGroundTruth: return LK_ERR_EMPTY_GROUND_TRUTH;
	case ErrorCode::UnknownDataset: return LK_ERR_UNKNOWN_DATASET;
	case ErrorCode::MissingPair: return LK_ERR_MISSING_PAIR;
	case ErrorCode::MalformedConfig: return LK_ERR_MALFORMED_CONFIG;
	}
	return LK_ERR_INTERNAL;
}

lk_status fail(lk_status status, std::string message)
{
	g_last_error = std::move(message);
	return status;
}

// Runs body and converts exceptions to status codes at the ABI boundary.
template <typename Body>
lk_status guard(Body&& body) noexcept
{
	try {
		body();
		g_last_error.clear();
		return LK_OK;
	} catch (const Error& e) {
		return fail(status_of(e.code()), e.what());
	} catch (const std::bad_alloc&) {
		return fail(LK_ERR_INTERNAL, "out of memory");
	} catch (const std::exception& e) {
		return fail(LK_ERR_INTERNAL, e.what());
	} catch (...) {
		return fail(LK_ERR_INTERNAL, "unknown error");
	}
}

template <typename R>
R make_raster(int width, int height, const uint8_t* data)
{
	R r(width, height);
	if (!data)
		return r;
	return R(width, height, std::vector<std::uint8_t>(data, data + r.data().size()));
}

const GrayImage& gray_of(const lk_image* img, const char* what)
{
	if (const auto* g = std::get_if<GrayImage>(&img->value))
		return *g;
	throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a GRAY image");
}

const BinaryMask& mask_of(const lk_image* img, const char* what)
{
	if (const auto* m = std::get_if<BinaryMask>(&img->value))
		return *m;
	throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a MASK image");
}

const BinaryMask* optional_mask(const lk_image* img)
{
	return img ? &mask_of(img, "fov") : nullptr;
}

Connectivity connectivity_of(int c)
{
	if (c == 4)
		return Connectivity::Four;
	if (c == 8)
		return Connectivity::Eight;
	throw Error(ErrorCode::InvalidArgument, "connectivity must be 4 or 8");
}

GrayMode mode_of(lk_gray_mode mode)
{
	if (mode == LK_GRAY_GREEN)
		return GrayMode::GreenChannel;
	if (mode == LK_GRAY_LUMA)
		return GrayMode::Luma;
	throw Error(ErrorCode::InvalidArgument, "unknown gray mode");
}

template <typename T, typename V>
void emit(T** out, V&& value)
{
	*out = new T{std::forward<V>(value)};
}

lk_metrics_report to_c(const MetricsReport& r)
{
	lk_metrics_report c{};
	c.threshold = r.threshold;
	c.counts = {r.counts.tp, r.counts.fp, r.counts.fn, r.counts.tn};
	c.se = r.se;
	c.sp = r.sp;
	c.acc = r.acc;
	c.f1 = r.f1;
	c.has_auc = r.auc.has_value();
	c.auc = r.auc.value_or(0.0);
	c.connectivity = r.connectivity;
	c.degenerate_flags = r.degenerate_flags;
	return c;
}

MetricsReport from_c(const lk_metrics_report& c)
{
	MetricsReport r;
	r.threshold = c.threshold;
	r.counts = {c.counts.tp, c.counts.fp, c.counts.fn, c.counts.tn};
	r.se = c.se;
	r.sp = c.sp;
	r.acc = c.acc;
	r.f1 = c.f1;
	if (c.has_auc)
		r.auc = c.auc;
	r.connectivity = c.connectivity;
	r.degenerate_flags = c.degenerate_flags;
	return r;
}

lk_status copy_string(const std::string& s, char* buffer, std::size_t capacity, std::size_t* needed)
{
	if (needed)
		*needed = s.size();
	if (buffer && capacity > 0) {
		const std::size_t n = std::min(capacity - 1, s.size());
		std::memcpy(buffer, s.data(), n);
		buffer[n] = '\0';
		if (n < s.size())
			return fail(LK_ERR_INVALID_ARGUMENT, "buffer too small");
	}
	return LK_OK;
}

} // namespace

extern "C" {

const char* lk_version(void)
{
	return LIOTKIT_VERSION_STRING;
}

const char* lk_last_error(void)
{
	return g_last_error.c_str();
}

const char* lk_status_string(lk_status status)
{
	switch (status) {
	case LK_OK: return "ok";
	case LK_ERR_FILE_NOT_FOUND: return "file not found";
	case LK_ERR_IO: return "I/O error";
	case LK_ERR_UNSUPPORTED_FORMAT: return "unsupported format";
	case LK_ERR_ZERO_DIMENSION: return "zero dimension";
	case LK_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
	case LK_ERR_INVALID_ARGUMENT: return "invalid argument";
	case LK_ERR_NON_POSITIVE_GAMMA: return "non-positive gamma";
	case LK_ERR_EMPTY_REGION: return "empty evaluation region";
	case LK_ERR_DEGENERATE_LABELS: return "degenerate labels";
	case LK_ERR_EMPTY_GROUND_TRUTH: return "empty ground truth";
	case LK_ERR_UNKNOWN_DATASET: return "unknown dataset";
	case LK_ERR_MISSING_PAIR: return "missing pair";
	case LK_ERR_MALFORMED_CONFIG: return "malformed config";
	case LK_ERR_NULL_ARGUMENT: return "null argument";
	case LK_ERR_INTERNAL: return "internal error";
	}
	return "unknown status";
}

// ---- images ----------------------------------------------------------------

lk_status lk_image_new(lk_image_kind kind, int width, int height, const uint8_t* data, lk_image** out)
{
	if (!out)
		return fail(LK_ERR_NULL_ARGUMENT, "out is NULL");
	return guard([&] {
		switch (kind) {
		case LK_IMAGE_GRAY: emit(out, make_raster<GrayImage>(width, height, data)); break;
		case LK_IMAGE_COLOR: emit(out, make_raster<ColorImage>(width, height, data)); break;
		case LK_IMAGE_MASK: emit(out, make_raster<BinaryMask>(width, height, data)); break;
		default: throw Error(ErrorCode::InvalidArgument, "unknown image kind");
		}
	});
}

lk_status lk_image_load(const char* path, lk_image** out)
{
	if (!path || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "path or out is NULL");
	return guard([&] {
		AnyImage img = load_image(path);
		if (auto* g = std::get_if<GrayImage>(&img))
			emit(out, std::move(*g));
		else
			emit(out, std::move(std::get<ColorImage>(img)));
	});
}

lk_status lk_image_save(const lk_image* img, const char* path)
{
	if (!img || !path)
		return fail(LK_ERR_NULL_ARGUMENT, "img or path is NULL");
	return guard([&] { std::visit([&](const auto& v) { save_image(v, path); }, img->value); });
}

void lk_image_free(lk_image* img)
{
	delete img;
}

lk_image_kind lk_image_kind_of(const lk_image* img)
{
	if (!img)
		return LK_IMAGE_GRAY;
	switch (img->value.index()) {
	case 1: return LK_IMAGE_COLOR;
	case 2: return LK_IMAGE_MASK;
	default: return LK_IMAGE_GRAY;
	}
}

int lk_image_width(const lk_image* img)
{
	return img ? std::visit([](const auto& v) { return v.width(); }, img->value) : 0;
}

int lk_image_height(const lk_image* img)
{
	return img ? std::visit([](const auto& v) { return v.height(); }, img->value) : 0;
}

const uint8_t* lk_image_data(const lk_image* img, size_t* length)
{
	if (!img)
		return nullptr;
	return std::visit(
		[&](const auto& v) {
			if (length)
				*length = v.data().size();
			return v.data().data();
		},
		img->value);
}

int lk_image_equal(const lk_image* a, const lk_image* b)
{
	return a && b && a->value == b->value;
}

lk_status lk_to_gray(const lk_image* img, lk_gray_mode mode, lk_image** out)
{
	if (!img || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "img or out is NULL");
	return guard([&] {
		const GrayMode m = mode_of(mode);
		if (const auto* c = std::get_if<ColorImage>(&img->value))
			emit(out, to_gray(*c, m));
		else
			emit(out, gray_of(img, "input"));
	});
}

lk_status lk_invert(const lk_image* gray, lk_image** out)
{
	if (!gray || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "gray or out is NULL");
	return guard([&] { emit(out, invert(gray_of(gray, "input"))); });
}

lk_status lk_resize(const lk_image* img, int width, int height, lk_image** out)
{
	if (!img || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "img or out is NULL");
	return guard([&] {
		std::visit([&](const auto& v) { *out = new lk_image{resize(v, width, height)}; }, img->value);
	});
}

lk_status lk_binarize(const lk_image* img, uint8_t threshold, lk_image** out)
{
	if (!img || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "img or out is NULL");
	return guard([&] {
		if (const auto* c = std::get_if<ColorImage>(&img->value))
			emit(out, binarize(to_gray(*c, GrayMode::Luma), threshold));
		else if (const auto* m = std::get_if<BinaryMask>(&img->value))
			emit(out, *m);
		else
			emit(out, binarize(gray_of(img, "input"), threshold));
	});
}

lk_status lk_dilate(const lk_image* mask, int radius, lk_image** out)
{
	if (!mask || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "mask or out is NULL");
	return guard([&] { emit(out, dilate(mask_of(mask, "input"), radius)); });
}

// ---- LIOT ------------------------------------------------------------------

lk_status lk_liot_transform(const lk_image* gray, lk_method method, unsigned threads, lk_liot** out)
{
	if (!gray || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "gray or out is NULL");
	return guard([&] {
		const GrayImage& g = gray_of(gray, "input");
		if (method == LK_METHOD_NAIVE)
			emit(out, liot_transform_naive(g));
		else if (method == LK_METHOD_FAST)
			emit(out, liot_transform(g, ExecutionOptions{threads}));
		else
			throw Error(ErrorCode::InvalidArgument, "unknown LIOT method");
	});
}

lk_status lk_prepare_and_transform(const lk_image* img, lk_gray_mode mode, int invert_input, unsigned threads,
	lk_liot** out)
{
	if (!img || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "img or out is NULL");
	return guard([&] {
		const GrayMode m = mode_of(mode);
		AnyImage any = std::get_if<ColorImage>(&img->value) ? AnyImage(std::get<ColorImage>(img->value))
		                                                     : AnyImage(gray_of(img, "input"));
		emit(out, prepare_and_transform(any, m, invert_input != 0, ExecutionOptions{threads}));
	});
}

void lk_liot_free(lk_liot* liot)
{
	delete liot;
}

int lk_liot_width(const lk_liot* liot)
{
	return liot ? liot->value.width() : 0;
}

int lk_liot_height(const lk_liot* liot)
{
	return liot ? liot->value.height() : 0;
}

const uint8_t* lk_liot_plane(const lk_liot* liot, lk_side side, size_t* length)
{
	if (!liot || side < LK_SIDE_LEFT || side > LK_SIDE_BOTTOM)
		return nullptr;
	const auto p = liot->value.plane(static_cast<Side>(side));
	if (length)
		*length = p.size();
	return p.data();
}

lk_status lk_liot_copy_planes(const lk_liot* liot, uint8_t* dst, size_t capacity)
{
	if (!liot || !dst)
		return fail(LK_ERR_NULL_ARGUMENT, "liot or dst is NULL");
	const std::size_t plane = std::size_t(liot->value.width()) * liot->value.height();
	if (capacity < 4 * plane)
		return fail(LK_ERR_INVALID_ARGUMENT, "destination buffer too small");
	for (Side s : kSides) {
		const auto p = liot->value.plane(s);
		std::copy(p.begin(), p.end(), dst + static_cast<int>(s) * plane);
	}
	return LK_OK;
}

lk_status lk_liot_plane_image(const lk_liot* liot, lk_side side, lk_image** out)
{
	if (!liot || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "liot or out is NULL");
	if (side < LK_SIDE_LEFT || side > LK_SIDE_BOTTOM)
		return fail(LK_ERR_INVALID_ARGUMENT, "unknown side");
	return guard([&] { emit(out, liot->value.plane_image(static_cast<Side>(side))); });
}

int lk_liot_equal(const lk_liot* a, const lk_liot* b)
{
	return a && b && a->value == b->value;
}

lk_status lk_liot_write(const lk_liot* liot, const char* path)
{
	if (!liot || !path)
		return fail(LK_ERR_NULL_ARGUMENT, "liot or path is NULL");
	return guard([&] { write_liot(liot->value, path); });
}

lk_status lk_liot_read(const char* path, lk_liot** out)
{
	if (!path || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "path or out is NULL");
	return guard([&] { emit(out, read_liot(path)); });
}

// ---- census ----------------------------------------------------------------

lk_status lk_census_transform(const lk_image* gray, lk_image** out)
{
	if (!gray || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "gray or out is NULL");
	return guard([&] { emit(out, to_gray(census_transform(gray_of(gray, "input")))); });
}

// ---- LUTs ------------------------------------------------------------------

lk_status lk_lut_from_table(const uint8_t table[256], lk_lut** out)
{
	if (!table || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "table or out is NULL");
	return guard([&] {
		MonotoneLut::Table t;
		std::copy_n(table, 256, t.begin());
		emit(out, MonotoneLut(t));
	});
}

lk_status lk_lut_gamma(double gamma, lk_lut** out)
{
	if (!out)
		return fail(LK_ERR_NULL_ARGUMENT, "out is NULL");
	return guard([&] { emit(out, gamma_lut(gamma)); });
}

lk_status lk_lut_random_strict(uint64_t seed, const lk_image* support, lk_lut** out)
{
	if (!out)
		return fail(LK_ERR_NULL_ARGUMENT, "out is NULL");
	return guard([&] {
		const LevelSet levels = support ? levels_present(gray_of(support, "support")) : LevelSet{}.set();
		emit(out, random_strict_lut(seed, levels));
	});
}

lk_status lk_lut_swap(uint8_t a, uint8_t b, lk_lut** out)
{
	if (!out)
		return fail(LK_ERR_NULL_ARGUMENT, "out is NULL");
	return guard([&] { emit(out, swap_lut(a, b)); });
}

lk_status lk_lut_read(const char* path, lk_lut** out)
{
	if (!path || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "path or out is NULL");
	return guard([&] { emit(out, read_lut(path)); });
}

lk_status lk_lut_write(const lk_lut* lut, const char* path)
{
	if (!lut || !path)
		return fail(LK_ERR_NULL_ARGUMENT, "lut or path is NULL");
	return guard([&] { write_lut(lut->value, path); });
}

void lk_lut_free(lk_lut* lut)
{
	delete lut;
}

const uint8_t* lk_lut_table(const lk_lut* lut)
{
	return lut ? lut->value.table().data() : nullptr;
}

int lk_lut_is_strict(const lk_lut* lut)
{
	return lut && lut->value.is_strict();
}

int lk_lut_is_strict_on(const lk_lut* lut, const lk_image* img)
{
	if (!lut || !img)
		return 0;
	const auto* g = std::get_if<GrayImage>(&img->value);
	return g && lut->value.is_strict_on(levels_present(*g));
}

lk_status lk_lut_apply(const lk_image* gray, const lk_lut* lut, lk_image** out)
{
	if (!gray || !lut || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "gray, lut or out is NULL");
	return guard([&] { emit(out, apply_lut(gray_of(gray, "input"), lut->value)); });
}

// ---- metrics ---------------------------------------------------------------

lk_status lk_prob_new(int width, int height, const double* scores, lk_prob** out)
{
	if (!scores || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "scores or out is NULL");
	return guard([&] {
		ProbabilityMap probe(width, height);
		emit(out, ProbabilityMap(width, height, std::vector<double>(scores, scores + probe.pixel_count())));
	});
}

lk_status lk_prob_from_image(const lk_image* gray, lk_prob** out)
{
	if (!gray || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "gray or out is NULL");
	return guard([&] { emit(out, to_probability(gray_of(gray, "input"))); });
}

void lk_prob_free(lk_prob* prob)
{
	delete prob;
}

lk_status lk_confusion(const lk_image* pred, const lk_image* gt, const lk_image* fov, lk_confusion_counts* out)
{
	if (!pred || !gt || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "pred, gt or out is NULL");
	return guard([&] {
		const ConfusionCounts c = confusion(mask_of(pred, "pred"), mask_of(gt, "gt"), optional_mask(fov));
		*out = {c.tp, c.fp, c.fn, c.tn};
	});
}

lk_status lk_scalar_metrics(const lk_confusion_counts* counts, lk_metrics_report* out)
{
	if (!counts || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "counts or out is NULL");
	return guard([&] {
		const ScalarMetrics m = scalar_metrics({counts->tp, counts->fp, counts->fn, counts->tn});
		*out = lk_metrics_report{};
		out->counts = *counts;
		out->se = m.se;
		out->sp = m.sp;
		out->acc = m.acc;
		out->f1 = m.f1;
		out->degenerate_flags = m.degenerate;
	});
}

lk_status lk_auc(const lk_prob* pred, const lk_image* gt, const lk_image* fov, double* out)
{
	if (!pred || !gt || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "pred, gt or out is NULL");
	return guard([&] { *out = auc(pred->value, mask_of(gt, "gt"), optional_mask(fov)); });
}

lk_status lk_connectivity(const lk_image* pred, const lk_image* gt, int conn, double* out)
{
	if (!pred || !gt || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "pred, gt or out is NULL");
	return guard([&] { *out = connectivity(mask_of(pred, "pred"), mask_of(gt, "gt"), connectivity_of(conn)); });
}

lk_status lk_connected_components(const lk_image* mask, int conn, size_t* count, int32_t* labels)
{
	if (!mask || !count)
		return fail(LK_ERR_NULL_ARGUMENT, "mask or count is NULL");
	return guard([&] {
		const Components c = connected_components(mask_of(mask, "mask"), connectivity_of(conn));
		*count = c.count;
		if (labels)
			std::copy(c.labels.begin(), c.labels.end(), labels);
	});
}

lk_status lk_best_threshold_by_f1(const lk_prob* pred, const lk_image* gt, const lk_image* fov, int conn,
	lk_metrics_report* out)
{
	if (!pred || !gt || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "pred, gt or out is NULL");
	return guard([&] {
		*out = to_c(best_threshold_by_f1(pred->value, mask_of(gt, "gt"), optional_mask(fov), connectivity_of(conn)));
	});
}

lk_status lk_binary_report(const lk_image* pred, const lk_image* gt, const lk_image* fov, int conn,
	lk_metrics_report* out)
{
	if (!pred || !gt || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "pred, gt or out is NULL");
	return guard([&] {
		*out = to_c(binary_report(mask_of(pred, "pred"), mask_of(gt, "gt"), optional_mask(fov), connectivity_of(conn)));
	});
}

lk_status lk_report_json(const lk_metrics_report* report, char* buffer, size_t capacity, size_t* needed)
{
	if (!report)
		return fail(LK_ERR_NULL_ARGUMENT, "report is NULL");
	return copy_string(to_json(from_c(*report)), buffer, capacity, needed);
}

lk_status lk_report_table(const lk_metrics_report* report, char* buffer, size_t capacity, size_t* needed)
{
	if (!report)
		return fail(LK_ERR_NULL_ARGUMENT, "report is NULL");
	return copy_string(to_table(from_c(*report)), buffer, capacity, needed);
}

// ---- datasets --------------------------------------------------------------

lk_status lk_dataset_builtin(const char* name, const char* root, lk_dataset** out)
{
	if (!name || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "name or out is NULL");
	return guard([&] { emit(out, builtin_spec(name, root ? root : ".")); });
}

lk_status lk_dataset_from_config(const char* path, lk_dataset** out)
{
	if (!path || !out)
		return fail(LK_ERR_NULL_ARGUMENT, "path or out is NULL");
	return guard([&] { emit(out, parse_dataset_config(path)); });
}

void lk_dataset_free(lk_dataset* dataset)
{
	delete dataset;
}

lk_status lk_dataset_prepare(const lk_dataset* dataset, const char* out_dir, size_t* sample_count)
{
	if (!dataset || !out_dir)
		return fail(LK_ERR_NULL_ARGUMENT, "dataset or out_dir is NULL");
	return guard([&] {
		const PreparedDataset p = write_prepared(dataset->value, out_dir);
		if (sample_count)
			*sample_count = p.ids.size();
	});
}

} // extern "C"
