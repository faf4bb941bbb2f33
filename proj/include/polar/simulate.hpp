#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "polar/channel.hpp"
#include "polar/construct.hpp"

namespace polar {

struct SimParams {
	std::uint64_t trials = 10000;
	std::uint64_t seed = 1;
	int workers = 1;
};

struct SimReport {
	std::uint64_t trials = 0;
	std::uint64_t block_errors = 0;
	std::uint64_t bit_errors = 0; // wrong message bits, summed over trials
	double bler = 0.0;
	double wilson_low = 0.0; // 95% Wilson score interval for the BLER
	double wilson_high = 1.0;
	double z_bound = 0.0;
	std::uint64_t seed = 0;
	int workers = 1;
	double wall_seconds = 0.0;
};

// Runs encode -> sample -> decode trials. Each trial draws its randomness
// from a counter-based stream keyed by (seed, trial index), so block/bit
// error counts are identical for any worker count. When decode_with is set,
// the decoder deliberately uses that channel instead of the transmission
// channel (mismatched-decoding experiments).
SimReport simulate(const CodeSpec& spec, const Channel& channel, const SimParams& params,
                   const std::optional<Channel>& decode_with = std::nullopt);

struct GenieReport {
	std::uint64_t trials = 0;
	std::vector<std::uint64_t> error_counts; // per input index, over all trials
};

// Genie-aided runs: per-index counts of wrong raw decisions, estimating each
// synthetic channel's error rate.
GenieReport simulate_genie(const CodeSpec& spec, const Channel& channel, const SimParams& params);

// Single JSON object with a schema_version field.
void write_sim_report_json(std::ostream& out, const SimReport& report);

} // namespace polar
