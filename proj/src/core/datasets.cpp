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

#include "liotkit/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "liotkit/image_io.hpp"
#include "parallel.hpp"

namespace liotkit {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string_view s)
{
	std::string out(s);
	std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
	return out;
}

std::string trim(std::string_view s)
{
	const auto b = s.find_first_not_of(" \t\r\n");
	if (b == std::string_view::npos)
		return {};
	const auto e = s.find_last_not_of(" \t\r\n");
	return std::string(s.substr(b, e - b + 1));
}

bool is_raster_extension(const fs::path& p)
{
	const std::string ext = lower(p.extension().string());
	return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

std::optional<fs::path> find_by_stem(const fs::path& dir, const std::string& id)
{
	std::optional<fs::path> found;
	for (const auto& entry : fs::directory_iterator(dir)) {
		if (!entry.is_regular_file() || !is_raster_extension(entry.path()) || entry.path().stem().string() != id)
			continue;
		if (found)
			throw Error(ErrorCode::MissingPair, "ambiguous files for sample '" + id + "' in " + dir.string());
		found = entry.path();
	}
	return found;
}

std::pair<int, int> dims_of(const AnyImage& img)
{
	return std::visit([](const auto& i) { return std::pair{i.width(), i.height()}; }, img);
}

BinaryMask load_mask(const fs::path& path, const std::optional<ResizeTarget>& target)
{
	BinaryMask mask = binarize(load_gray(path, GrayMode::Luma));
	if (target)
		mask = resize(mask, target->width, target->height);
	return mask;
}

bool parse_bool(const std::string& key, const std::string& value)
{
	const std::string v = lower(value);
	if (v == "true" || v == "1" || v == "yes")
		return true;
	if (v == "false" || v == "0" || v == "no")
		return false;
	throw Error(ErrorCode::MalformedConfig, "key '" + key + "' expects a boolean, got '" + value + "'");
}

long parse_count(const std::string& key, const std::string& value)
{
	std::size_t used = 0;
	long v = -1;
	try {
		v = std::stol(value, &used);
	} catch (const std::exception&) {
		used = 0;
	}
	if (used != value.size() || v < 0)
		throw Error(ErrorCode::MalformedConfig, "key '" + key + "' expects a non-negative integer, got '" + value + "'");
	return v;
}

std::optional<ResizeTarget> parse_resize(const std::string& value)
{
	const std::string v = lower(value);
	if (v == "none" || v.empty())
		return std::nullopt;
	const auto x = v.find('x');
	if (x == std::string::npos)
		throw Error(ErrorCode::MalformedConfig, "resize expects WxH or none, got '" + value + "'");
	const long w = parse_count("resize", v.substr(0, x));
	const long h = parse_count("resize", v.substr(x + 1));
	if (w <= 0 || h <= 0)
		throw Error(ErrorCode::MalformedConfig, "resize dimensions must be positive");
	return ResizeTarget{int(w), int(h)};
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines)
{
	std::ofstream os(path, std::ios::binary);
	if (!os)
		throw Error(ErrorCode::Io, "cannot open " + path.string());
	for (const auto& l : lines)
		os << l << '\n';
	if (!os)
		throw Error(ErrorCode::Io, "write failed: " + path.string());
}

} // namespace

DatasetSpec builtin_spec(std::string_view name, const fs::path& root)
{
	DatasetSpec spec;
	spec.name = lower(name);
	spec.image_dir = root / "images";
	spec.gt_dir = root / "gt";
	if (fs::is_directory(root / "fov"))
		spec.fov_dir = root / "fov";

	if (spec.name == "drive") {
		spec.fov_dir = root / "fov";
		spec.fov_required = true;
		spec.train_count = 20;
		spec.train_from_end = true;
	} else if (spec.name == "stare") {
		spec.resize_target = ResizeTarget{554, 479};
		spec.train_count = 10;
	} else if (spec.name == "chasedb1") {
		spec.resize_target = ResizeTarget{584, 561};
		spec.train_count = 20;
	} else if (spec.name == "cracktree") {
		spec.resize_target = ResizeTarget{512, 512};
		spec.gray_mode = GrayMode::Luma;
		spec.invert = false;
		spec.gt_dilation_radius = 4;
		spec.train_count = 160;
	} else {
		throw Error(ErrorCode::UnknownDataset, "unknown dataset '" + std::string(name) + "'");
	}
	return spec;
}

DatasetSpec parse_dataset_config_text(std::string_view text, const fs::path& base_dir)
{
	std::map<std::string, std::string> kv;
	std::istringstream is{std::string(text)};
	std::string line;
	int lineno = 0;
	while (std::getline(is, line)) {
		++lineno;
		const auto hash = line.find('#');
		const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
		if (body.empty())
			continue;
		const auto eq = body.find('=');
		if (eq == std::string::npos)
			throw Error(ErrorCode::MalformedConfig, "line " + std::to_string(lineno) + ": expected key=value");
		const std::string key = lower(trim(body.substr(0, eq)));
		if (kv.count(key))
			throw Error(ErrorCode::MalformedConfig, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
		kv[key] = trim(body.substr(eq + 1));
	}

	DatasetSpec spec;
	if (auto it = kv.find("preset"); it != kv.end()) {
		try {
			spec = builtin_spec(it->second, base_dir);
		} catch (const Error& e) {
			throw Error(ErrorCode::MalformedConfig, e.what());
		}
	}
	auto resolve = [&](const std::string& v) { return fs::path(v).is_absolute() ? fs::path(v) : base_dir / v; };
	for (const auto& [key, value] : kv) {
		if (key == "preset") {
			continue;
		} else if (key == "name") {
			spec.name = value;
		} else if (key == "image_dir") {
			spec.image_dir = resolve(value);
		} else if (key == "gt_dir") {
			spec.gt_dir = resolve(value);
		} else if (key == "fov_dir") {
			if (value.empty() || lower(value) == "none")
				spec.fov_dir.reset();
			else
				spec.fov_dir = resolve(value);
		} else if (key == "resize") {
			spec.resize_target = parse_resize(value);
		} else if (key == "gray") {
			try {
				spec.gray_mode = parse_gray_mode(value);
			} catch (const Error& e) {
				throw Error(ErrorCode::MalformedConfig, e.what());
			}
		} else if (key == "invert") {
			spec.invert = parse_bool(key, value);
		} else if (key == "dilation") {
			spec.gt_dilation_radius = static_cast<int>(parse_count(key, value));
		} else if (key == "train_count") {
			spec.train_count = static_cast<std::size_t>(parse_count(key, value));
		} else if (key == "train_from_end") {
			spec.train_from_end = parse_bool(key, value);
		} else {
			throw Error(ErrorCode::MalformedConfig, "unknown key '" + key + "'");
		}
	}
	if (spec.image_dir.empty() || spec.gt_dir.empty())
		throw Error(ErrorCode::MalformedConfig, "config must set image_dir and gt_dir (or a preset)");
	return spec;
}

DatasetSpec parse_dataset_config(const fs::path& path)
{
	std::ifstream is(path);
	if (!is) {
		if (!fs::exists(path))
			throw Error(ErrorCode::FileNotFound, "file not found: " + path.string());
		throw Error(ErrorCode::Io, "cannot open " + path.string());
	}
	std::stringstream ss;
	ss << is.rdbuf();
	return parse_dataset_config_text(ss.str(), path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

BinaryMask dilate(const BinaryMask& mask, int radius)
{
	if (radius < 0)
		throw Error(ErrorCode::InvalidArgument, "dilation radius must be non-negative");
	if (radius == 0)
		return mask;
	const int w = mask.width();
	const int h = mask.height();
	// Half-width of the disk on each row offset.
	std::vector<int> span(radius + 1);
	for (int dy = 0; dy <= radius; ++dy) {
		int dx = 0;
		while ((dx + 1) * (dx + 1) + dy * dy <= radius * radius)
			++dx;
		span[dy] = dx;
	}
	BinaryMask out(w, h);
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			if (!mask.at(x, y))
				continue;
			for (int dy = -radius; dy <= radius; ++dy) {
				const int ny = y + dy;
				if (ny < 0 || ny >= h)
					continue;
				const int half = span[std::abs(dy)];
				auto row = out.row(ny);
				const int x0 = std::max(0, x - half);
				const int x1 = std::min(w - 1, x + half);
				std::fill(row.begin() + x0, row.begin() + x1 + 1, std::uint8_t{1});
			}
		}
	}
	return out;
}

std::vector<std::string> list_sample_ids(const DatasetSpec& spec)
{
	if (!fs::is_directory(spec.image_dir))
		throw Error(ErrorCode::FileNotFound, "image directory not found: " + spec.image_dir.string());
	std::vector<std::string> ids;
	for (const auto& entry : fs::directory_iterator(spec.image_dir))
		if (entry.is_regular_file() && is_raster_extension(entry.path()))
			ids.push_back(entry.path().stem().string());
	std::sort(ids.begin(), ids.end());
	if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end())
		throw Error(ErrorCode::MissingPair, "ambiguous files for sample '" + *dup + "' in " + spec.image_dir.string());
	return ids;
}

SamplePair prepare_sample(const DatasetSpec& spec, const std::string& id)
{
	const auto image_path = find_by_stem(spec.image_dir, id);
	if (!image_path)
		throw Error(ErrorCode::MissingPair, "no image for sample '" + id + "'");
	if (!fs::is_directory(spec.gt_dir))
		throw Error(ErrorCode::FileNotFound, "ground-truth directory not found: " + spec.gt_dir.string());
	const auto gt_path = find_by_stem(spec.gt_dir, id);
	if (!gt_path)
		throw Error(ErrorCode::MissingPair, "no ground truth for sample '" + id + "' in " + spec.gt_dir.string());
	std::optional<fs::path> fov_path;
	if (spec.fov_dir && fs::is_directory(*spec.fov_dir))
		fov_path = find_by_stem(*spec.fov_dir, id);
	if (spec.fov_required && !fov_path)
		throw Error(ErrorCode::MissingPair, "no FOV mask for sample '" + id + "'");

	AnyImage raw = load_image(*image_path);
	const auto [src_w, src_h] = dims_of(raw);

	const auto check_dims = [&, src_w = src_w, src_h = src_h](const fs::path& p) {
		const auto [w, h] = dims_of(load_image(p));
		if (w != src_w || h != src_h)
			throw Error(ErrorCode::DimensionMismatch, "sample '" + id + "': " + p.filename().string() + " is "
				+ std::to_string(w) + "x" + std::to_string(h) + ", image is " + std::to_string(src_w) + "x"
				+ std::to_string(src_h));
	};
	check_dims(*gt_path);
	if (fov_path)
		check_dims(*fov_path);

	GrayImage gray = std::visit(
		[&](auto& img) -> GrayImage {
			using T = std::decay_t<decltype(img)>;
			T sized = spec.resize_target ? resize(img, spec.resize_target->width, spec.resize_target->height) : img;
			if constexpr (std::is_same_v<T, ColorImage>)
				return to_gray(sized, spec.gray_mode);
			else
				return sized;
		},
		raw);
	if (spec.invert)
		gray = invert(gray);

	BinaryMask gt = load_mask(*gt_path, spec.resize_target);
	if (spec.gt_dilation_radius > 0)
		gt = dilate(gt, spec.gt_dilation_radius);

	std::optional<BinaryMask> fov;
	if (fov_path)
		fov = load_mask(*fov_path, spec.resize_target);

	return SamplePair{id, std::move(gray), std::move(gt), std::move(fov)};
}

void prepare(const DatasetSpec& spec, const std::function<void(const SamplePair&)>& sink)
{
	const auto ids = list_sample_ids(spec);
	const unsigned threads = detail::resolve_threads(0);
	const std::size_t batch = std::max<std::size_t>(1, threads);
	for (std::size_t start = 0; start < ids.size(); start += batch) {
		const std::size_t n = std::min(batch, ids.size() - start);
		std::vector<std::optional<SamplePair>> results(n);
		detail::parallel_for_chunks(static_cast<int>(n), threads, [&](int b, int e) {
			for (int i = b; i < e; ++i)
				results[i] = prepare_sample(spec, ids[start + i]);
		});
		for (auto& r : results)
			sink(*r);
	}
}

std::pair<std::vector<std::string>, std::vector<std::string>> split_ids(
	const DatasetSpec& spec, const std::vector<std::string>& ids)
{
	const std::size_t n = std::min(spec.train_count, ids.size());
	std::vector<std::string> train;
	std::vector<std::string> test;
	if (spec.train_from_end) {
		test.assign(ids.begin(), ids.end() - n);
		train.assign(ids.end() - n, ids.end());
	} else {
		train.assign(ids.begin(), ids.begin() + n);
		test.assign(ids.begin() + n, ids.end());
	}
	return {train, test};
}

PreparedDataset write_prepared(const DatasetSpec& spec, const fs::path& out_dir)
{
	std::error_code ec;
	for (const char* sub : {"images", "gt"}) {
		fs::create_directories(out_dir / sub, ec);
		if (ec)
			throw Error(ErrorCode::Io, "cannot create " + (out_dir / sub).string() + ": " + ec.message());
	}
	PreparedDataset result;
	prepare(spec, [&](const SamplePair& s) {
		save_image(s.image, out_dir / "images" / (s.id + ".png"));
		save_image(s.gt, out_dir / "gt" / (s.id + ".png"));
		if (s.fov) {
			fs::create_directories(out_dir / "fov");
			save_image(*s.fov, out_dir / "fov" / (s.id + ".png"));
		}
		result.ids.push_back(s.id);
	});
	auto [train, test] = split_ids(spec, result.ids);
	result.train_ids = std::move(train);
	result.test_ids = std::move(test);
	write_lines(out_dir / "manifest.txt", result.ids);
	write_lines(out_dir / "train.txt", result.train_ids);
	write_lines(out_dir / "test.txt", result.test_ids);
	return result;
}

} // namespace liotkit
