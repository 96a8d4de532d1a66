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

#include "liotkit/error.hpp"

namespace liotkit {

const char* to_string(ErrorCode code) noexcept
{
	switch (code) {
	case ErrorCode::FileNotFound: return "FileNotFound";
	case ErrorCode::Io: return "Io";
	case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
	case ErrorCode::ZeroDimension: return "ZeroDimension";
	case ErrorCode::DimensionMismatch: return "DimensionMismatch";
	case ErrorCode::InvalidArgument: return "InvalidArgument";
	case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
	case ErrorCode::EmptyEvaluationRegion: return "EmptyEvaluationRegion";
	case ErrorCode::DegenerateLabels: return "DegenerateLabels";
	case ErrorCode::EmptyGroundTruth: return "EmptyGroundTruth";
	case ErrorCode::UnknownDataset: return "UnknownDataset";
	case ErrorCode::MissingPair: return "MissingPair";
	case ErrorCode::MalformedConfig: return "MalformedConfig";
	}
	return "Unknown";
}

} // namespace liotkit
