#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "polar/channel.hpp"

namespace polar {

// Output-symbol binning: symbols are grouped by the posterior
// p(0|y) = W(y|0) / (W(y|0)+W(y|1)) into k intervals plus the p=1 endpoint,
// which degrades the channel while raising H by at most 2 lg(k)/k.
struct BinningConfig {
	int bin_count = 256; // k; output alphabet is at most k+1
};

// Per-index estimates for the 2^level synthetic channels, computed on binned
// tables. bin_count 0 marks exact values (the BEC oracle path).
struct SubchannelStats {
	int level = 0;
	int bin_count = 0;
	std::vector<double> entropy;       // H_hat[i]
	std::vector<double> bhattacharyya; // Z_hat[i]
};

struct EstimateOptions {
	// Accumulated table work (cell writes) allowed for a sweep. The a-priori
	// worst case is level * 2^level * (k+1)^2; the sweep charges actual table
	// sizes instead, which is what makes erasure-like channels cheap at
	// levels the worst-case formula would reject.
	std::uint64_t work_budget = 2'000'000'000;
	int workers = 1;
};

// Drops zero-mass symbols, assigns each survivor to bin floor(k * p(0|y))
// (posterior exactly 1 goes to bin k), accumulates mass per bin and prunes
// empty bins. The result loses the symmetry witness: the bin map is not
// exactly mirror-symmetric at interval boundaries.
Channel bin_channel(const Channel& ch, const BinningConfig& cfg);

// Level-by-level sweep: the base channel is first reduced to the bin
// alphabet, then every channel at each level is transformed by minus and
// plus and immediately binned; only one level of tables is alive at a time.
// Stats come from the final binned tables. Child 2i is the minus transform
// of parent i, matching the index path convention.
SubchannelStats estimate_all_subchannels(const Channel& ch, int level, const BinningConfig& cfg,
                                         const EstimateOptions& opt = {});

// Same sweep, but visit(stats_l) runs after every level l = 0..level with
// that level's estimates; return false to stop early. Lets one pass serve
// both the rough-polarization snapshot and the final selection.
void sweep_subchannel_stats(const Channel& ch, int level, const BinningConfig& cfg,
                            const EstimateOptions& opt,
                            const std::function<bool(const SubchannelStats&)>& visit);

// CSV columns: index, H_hat, Z_hat (one leading schema comment line).
void write_stats_csv(std::ostream& out, const SubchannelStats& stats);

} // namespace polar
