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

#ifndef LIOTKIT_ERROR_HPP
#define LIOTKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace liotkit {

enum class ErrorCode {
	FileNotFound,
	Io,
	UnsupportedFormat,
	ZeroDimension,
	DimensionMismatch,
	InvalidArgument,
	NonPositiveGamma,
	EmptyEvaluationRegion,
	DegenerateLabels,
	EmptyGroundTruth,
	UnknownDataset,
	MissingPair,
	MalformedConfig,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
	Error(ErrorCode code, const std::string& what)
		: std::runtime_error(what), code_(code) {}

	ErrorCode code() const noexcept { return code_; }

private:
	ErrorCode code_;
};

} // namespace liotkit

#endif // LIOTKIT_ERROR_HPP
