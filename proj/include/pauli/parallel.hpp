#ifndef PAULI_PARALLEL_HPP
#define PAULI_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pauli {

/// Worker count: hardware concurrency capped by PAULI_LAB_THREADS.
inline std::size_t worker_count()
{
	std::size_t n = std::max(1u, std::thread::hardware_concurrency());
	if (const char *cap = std::getenv("PAULI_LAB_THREADS")) {
		long v = std::strtol(cap, nullptr, 10);
		if (v >= 1)
			n = std::min(n, static_cast<std::size_t>(v));
	}
	return n;
}

/// Runs body(i) for i in [0, n). Each index writes only its own output, so
/// results do not depend on the schedule.
template <typename Body>
void parallel_for(std::size_t n, Body &&body)
{
	std::size_t workers = std::min(worker_count(), n);
	if (workers <= 1 || n < 8) {
		for (std::size_t i = 0; i < n; ++i)
			body(i);
		return;
	}
	std::exception_ptr failure;
	std::mutex failure_mutex;
	std::vector<std::thread> pool;
	pool.reserve(workers);
	for (std::size_t w = 0; w < workers; ++w) {
		pool.emplace_back([&, w] {
			try {
				for (std::size_t i = w; i < n; i += workers)
					body(i);
			} catch (...) {
				std::lock_guard lock(failure_mutex);
				if (!failure)
					failure = std::current_exception();
			}
		});
	}
	for (auto &t : pool)
		t.join();
	if (failure)
		std::rethrow_exception(failure);
}

} // namespace pauli

#endif
