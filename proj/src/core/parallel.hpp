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

#ifndef LIOTKIT_SRC_PARALLEL_HPP
#define LIOTKIT_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace liotkit::detail {

// requested > 0 wins; otherwise LIOTKIT_THREADS (0 = auto), otherwise hardware.
inline unsigned resolve_threads(unsigned requested)
{
	if (requested > 0)
		return requested;
	if (const char* env = std::getenv("LIOTKIT_THREADS")) {
		char* end = nullptr;
		const unsigned long v = std::strtoul(env, &end, 10);
		if (end != env && *end == '\0' && v > 0)
			return static_cast<unsigned>(std::min<unsigned long>(v, 256));
	}
	return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end) over [0, n) split into contiguous chunks.
template <typename Body>
void parallel_for_chunks(int n, unsigned threads, Body&& body)
{
	const int workers = static_cast<int>(std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1))));
	if (workers <= 1) {
		body(0, n);
		return;
	}
	std::vector<std::thread> pool;
	std::vector<std::exception_ptr> errors(workers);
	pool.reserve(workers);
	for (int w = 0; w < workers; ++w) {
		const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
		const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
		pool.emplace_back([&, w, begin, end] {
			try {
				body(begin, end);
			} catch (...) {
				errors[w] = std::current_exception();
			}
		});
	}
	for (auto& t : pool)
		t.join();
	for (auto& e : errors)
		if (e)
			std::rethrow_exception(e);
}

} // namespace liotkit::detail

#endif // LIOTKIT_SRC_PARALLEL_HPP
