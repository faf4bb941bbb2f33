#include "polar/simulate.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "polar/codec.hpp"
#include "polar/error.hpp"
#include "polar/parallel.hpp"
#include "polar/rng.hpp"

#include <json.hpp>

namespace polar {

namespace {

struct Tally {
	std::uint64_t blocks = 0;
	std::uint64_t bits = 0;
};

void wilson_interval(std::uint64_t errors, std::uint64_t trials, double& low, double& high)
{
	if (trials == 0) {
		low = 0.0;
		high = 1.0;
		return;
	}
	const double z = 1.959963984540054; // 95%
	const double t = static_cast<double>(trials);
	const double p = static_cast<double>(errors) / t;
	const double denom = 1.0 + z * z / t;
	const double center = (p + z * z / (2.0 * t)) / denom;
	const double half =
	    z * std::sqrt(p * (1.0 - p) / t + z * z / (4.0 * t * t)) / denom;
	// at the extremes center and half coincide exactly; keep the endpoints
	// free of rounding residue
	low = errors == 0 ? 0.0 : std::max(0.0, center - half);
	high = errors == trials ? 1.0 : std::min(1.0, center + half);
}

} // namespace

SimReport simulate(const CodeSpec& spec, const Channel& channel, const SimParams& params,
                   const std::optional<Channel>& decode_with)
{
	check_code_spec(spec);
	require(params.workers >= 1, errc::invalid_parameter, "worker count must be positive");
	require(!decode_with || decode_with->output_size() == channel.output_size(),
	        errc::invalid_parameter, "decode channel must share the output alphabet");
	const auto t0 = std::chrono::steady_clock::now();

	const std::uint64_t N = spec.block_length();
	const std::size_t K = spec.message_length();
	const Channel& decoder_channel = decode_with ? *decode_with : channel;

	const int lanes = static_cast<int>(
	    std::min<std::uint64_t>(static_cast<std::uint64_t>(params.workers),
	                            std::max<std::uint64_t>(params.trials, 1)));
	std::vector<Tally> partial(static_cast<std::size_t>(lanes));

	parallel_chunks(params.trials, lanes, [&](std::size_t lane, std::size_t begin, std::size_t end) {
		Tally& tally = partial[lane];
		ScDecoder decoder(spec, decoder_channel);
		std::vector<std::uint8_t> message(K);
		std::vector<int> received(N);
		for (std::size_t trial = begin; trial < end; ++trial) {
			RngStream rng = trial_stream(params.seed, trial);
			for (auto& b : message)
				b = rng.next_bit();
			std::vector<std::uint8_t> codeword = encode(spec, message);
			for (std::uint64_t j = 0; j < N; ++j)
				received[j] = channel.sample(codeword[j], rng);
			const std::vector<std::uint8_t> decoded = decoder.decode(received);
			std::uint64_t wrong = 0;
			for (std::size_t j = 0; j < K; ++j)
				wrong += decoded[j] != message[j];
			tally.bits += wrong;
			tally.blocks += wrong != 0;
		}
	});

	SimReport report;
	report.trials = params.trials;
	for (const Tally& tally : partial) {
		report.block_errors += tally.blocks;
		report.bit_errors += tally.bits;
	}
	report.bler = params.trials
	                  ? static_cast<double>(report.block_errors) / static_cast<double>(params.trials)
	                  : 0.0;
	wilson_interval(report.block_errors, params.trials, report.wilson_low, report.wilson_high);
	report.z_bound = spec.z_bound;
	report.seed = params.seed;
	report.workers = params.workers;
	report.wall_seconds =
	    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return report;
}

GenieReport simulate_genie(const CodeSpec& spec, const Channel& channel, const SimParams& params)
{
	check_code_spec(spec);
	require(params.workers >= 1, errc::invalid_parameter, "worker count must be positive");
	const std::uint64_t N = spec.block_length();
	const std::size_t K = spec.message_length();

	const int lanes = static_cast<int>(
	    std::min<std::uint64_t>(static_cast<std::uint64_t>(params.workers),
	                            std::max<std::uint64_t>(params.trials, 1)));
	std::vector<std::vector<std::uint64_t>> partial(
	    static_cast<std::size_t>(lanes), std::vector<std::uint64_t>(N, 0));

	parallel_chunks(params.trials, lanes, [&](std::size_t lane, std::size_t begin, std::size_t end) {
		std::vector<std::uint64_t>& counts = partial[lane];
		ScDecoder decoder(spec, channel);
		std::vector<std::uint8_t> message(K);
		std::vector<int> received(N);
		for (std::size_t trial = begin; trial < end; ++trial) {
			RngStream rng = trial_stream(params.seed, trial);
			for (auto& b : message)
				b = rng.next_bit();
			std::vector<std::uint8_t> word = scatter_message(spec, message);
			std::vector<std::uint8_t> codeword = word;
			polar_transform_inplace(codeword);
			for (std::uint64_t j = 0; j < N; ++j)
				received[j] = channel.sample(codeword[j], rng);
			const std::vector<std::uint8_t> flags = decoder.decode_genie(received, word);
			for (std::uint64_t j = 0; j < N; ++j)
				counts[j] += flags[j];
		}
	});

	GenieReport report;
	report.trials = params.trials;
	report.error_counts.assign(N, 0);
	for (const auto& counts : partial)
		for (std::uint64_t j = 0; j < N; ++j)
			report.error_counts[j] += counts[j];
	return report;
}

void write_sim_report_json(std::ostream& out, const SimReport& report)
{
	nlohmann::json j{
	    {"schema_version", 1},
	    {"trials", report.trials},
	    {"block_errors", report.block_errors},
	    {"bit_errors", report.bit_errors},
	    {"bler", report.bler},
	    {"bler_interval_95", {report.wilson_low, report.wilson_high}},
	    {"interval_method", "wilson"},
	    {"z_bound", report.z_bound},
	    {"seed", report.seed},
	    {"workers", report.workers},
	    {"wall_seconds", report.wall_seconds},
	};
	out << j.dump(2) << "\n";
}

} // namespace polar
