#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace polar {

// Runs fn(lane, begin, end) over contiguous chunks of [0, count) on up to
// `workers` threads. Callers must touch disjoint state per index or per lane;
// chunk boundaries are a pure function of (count, workers), so results stay
// deterministic.
template <class Fn>
void parallel_chunks(std::size_t count, int workers, Fn&& fn)
{
	if (count == 0)
		return;
	const std::size_t lanes =
	    workers <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(workers), count);
	if (lanes == 1) {
		fn(std::size_t{0}, std::size_t{0}, count);
		return;
	}
	std::vector<std::thread> pool;
	pool.reserve(lanes);
	const std::size_t chunk = (count + lanes - 1) / lanes;
	for (std::size_t w = 0; w < lanes; ++w) {
		const std::size_t begin = w * chunk;
		const std::size_t end = std::min(count, begin + chunk);
		if (begin >= end)
			break;
		pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
	}
	for (auto& th : pool)
		th.join();
}

} // namespace polar
