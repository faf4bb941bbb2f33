#pragma once

#include <cstdint>

namespace polar {

// Counter-based pseudo-random stream (SplitMix64). A stream is cheap to
// construct, so Monte Carlo code derives one stream per trial from
// (seed, trial) and gets results that do not depend on how trials are
// distributed over workers.
class RngStream {
public:
	explicit RngStream(std::uint64_t key) : state_(key) {}

	std::uint64_t next_u64()
	{
		std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
		return z ^ (z >> 31);
	}

	// uniform in [0, 1), 53-bit resolution
	double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

	// uniform in [0, bound); modulo bias is negligible for the small bounds
	// used here (alphabet sizes, shuffle indices)
	std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

	bool next_bit() { return next_u64() >> 63; }

private:
	std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z)
{
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return z ^ (z >> 31);
}

// Stream for one trial of a seeded experiment; avalanche both inputs so
// neighbouring trials are uncorrelated.
inline RngStream trial_stream(std::uint64_t seed, std::uint64_t trial)
{
	return RngStream(mix64(mix64(seed + 0x632be59bd9b4e019ull) + trial));
}

} // namespace polar
