#include "polar/degrade.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include "polar/error.hpp"
#include "polar/parallel.hpp"
#include "polar/text.hpp"
#include "polar/transform.hpp"

namespace polar {

Channel bin_channel(const Channel& ch, const BinningConfig& cfg)
{
	const int k = cfg.bin_count;
	require(k >= 2, errc::invalid_parameter, "bin count must be at least 2");
	std::vector<double> acc0(static_cast<std::size_t>(k) + 1, 0.0), acc1(acc0.size(), 0.0);
	for (int y = 0; y < ch.output_size(); ++y) {
		const double a = ch.prob(0, y), b = ch.prob(1, y);
		const double mass = a + b;
		if (mass <= 0.0)
			continue; // zero-mass symbol: posterior undefined, carries nothing
		const double p0 = a / mass;
		int idx = static_cast<int>(static_cast<double>(k) * p0);
		if (idx > k)
			idx = k;
		acc0[static_cast<std::size_t>(idx)] += a;
		acc1[static_cast<std::size_t>(idx)] += b;
	}
	std::vector<double> w0, w1;
	w0.reserve(acc0.size());
	w1.reserve(acc0.size());
	for (std::size_t j = 0; j < acc0.size(); ++j) {
		if (acc0[j] + acc1[j] <= 0.0)
			continue;
		w0.push_back(acc0[j]);
		w1.push_back(acc1[j]);
	}
	return Channel::unchecked(std::move(w0), std::move(w1));
}

namespace {

std::uint64_t transform_cost(const Channel& ch)
{
	const auto y = static_cast<std::uint64_t>(ch.output_size());
	// minus fill + plus fill + binning scans of both children
	return 6 * y * y;
}

SubchannelStats stats_of_level(const std::vector<Channel>& level_channels, int level, int bin_count,
                               int workers)
{
	SubchannelStats stats;
	stats.level = level;
	stats.bin_count = bin_count;
	stats.entropy.resize(level_channels.size());
	stats.bhattacharyya.resize(level_channels.size());
	parallel_chunks(level_channels.size(), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
		for (std::size_t i = begin; i < end; ++i) {
			const ChannelMetrics m = metrics(level_channels[i]);
			stats.entropy[i] = m.entropy;
			stats.bhattacharyya[i] = m.bhattacharyya;
		}
	});
	return stats;
}

} // namespace

void sweep_subchannel_stats(const Channel& ch, int level, const BinningConfig& cfg,
                            const EstimateOptions& opt,
                            const std::function<bool(const SubchannelStats&)>& visit)
{
	require(level >= 0 && level < 30, errc::invalid_parameter, "level out of range");
	require(cfg.bin_count >= 2, errc::invalid_parameter, "bin count must be at least 2");

	std::vector<Channel> current;
	current.push_back(bin_channel(ch, cfg));
	std::uint64_t spent = static_cast<std::uint64_t>(ch.output_size());
	if (!visit(stats_of_level(current, 0, cfg.bin_count, opt.workers)))
		return;

	for (int l = 1; l <= level; ++l) {
		std::uint64_t projected = 0;
		for (const Channel& parent : current)
			projected += transform_cost(parent);
		require(spent + projected <= opt.work_budget, errc::budget_exceeded,
		        "work budget exhausted at level " + std::to_string(l - 1) + " of " +
		            std::to_string(level));
		spent += projected;

		std::vector<std::optional<Channel>> next(2 * current.size());
		parallel_chunks(current.size(), opt.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
			for (std::size_t i = begin; i < end; ++i) {
				next[2 * i] = bin_channel(transform_minus(current[i]), cfg);
				next[2 * i + 1] = bin_channel(transform_plus(current[i]), cfg);
			}
		});
		current.clear();
		current.reserve(next.size());
		for (auto& c : next)
			current.push_back(std::move(*c));
		if (!visit(stats_of_level(current, l, cfg.bin_count, opt.workers)))
			return;
	}
}

SubchannelStats estimate_all_subchannels(const Channel& ch, int level, const BinningConfig& cfg,
                                         const EstimateOptions& opt)
{
	SubchannelStats out;
	sweep_subchannel_stats(ch, level, cfg, opt, [&](const SubchannelStats& stats) {
		if (stats.level == level)
			out = stats;
		return true;
	});
	return out;
}

void write_stats_csv(std::ostream& out, const SubchannelStats& stats)
{
	out << "# schema: polar-stats-1\n";
	out << "index,H_hat,Z_hat\n";
	for (std::size_t i = 0; i < stats.entropy.size(); ++i)
		out << i << "," << format_double(stats.entropy[i]) << ","
		    << format_double(stats.bhattacharyya[i]) << "\n";
}

} // namespace polar
