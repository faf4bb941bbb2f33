#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polar/degrade.hpp"

namespace polar {

inline const std::string kModeSort = "sort";
inline const std::string kModeTwoStep = "two-step";
inline const std::string kModeBecExact = "bec-exact";

// A constructed code: which input indices are frozen to zero.
struct CodeSpec {
	int level = 0;                     // N = 2^level
	std::vector<std::uint32_t> frozen; // sorted, unique, in [0, N)
	std::string mode = kModeSort;
	double z_bound = 0.0; // sum of the Z estimates over unfrozen indices

	std::uint64_t block_length() const { return 1ull << level; }
	std::size_t message_length() const
	{
		return static_cast<std::size_t>(block_length()) - frozen.size();
	}
	double rate() const
	{
		return 1.0 - static_cast<double>(frozen.size()) / static_cast<double>(block_length());
	}
};

// Throws errc::invalid_parameter if indices are out of range, unsorted or
// duplicated.
void check_code_spec(const CodeSpec& spec);

// Parameters of the two-step (rough + fine) construction rule.
// gamma is fixed by delta and beta; consistency with the level split
// (rough_levels ~ n/(1+gamma)) is enforced when constructing.
struct TheoryParams {
	double rho = 0.9;    // rough-polarization rate, in (0,1)
	double delta = 0.15; // target error-exponent parameter, in (0,1/2)
	double beta = 0.3;   // ones-density threshold, in (delta,1/2)
	int rough_levels = 0;

	double gamma() const { return delta / (beta - delta); }
	// number of fine-bit blocks: ceil(fine / (2 m lg(2/rho)))
	int block_count(int fine_levels) const;
	// the construction-grade bin count (2/rho)^(2m); astronomically
	// conservative at desk scale, exposed for completeness
	double theory_bin_count() const;
};

// Unfreezes the ceil(N * target_rate) indices with smallest Z_hat, ties by
// lower index.
CodeSpec construct_by_sort(const SubchannelStats& stats, double target_rate,
                           const std::string& mode = kModeSort);

// The two-step rule: index i is unfrozen iff its level-m ancestor (the high
// m bits of i, which the path convention reaches after m steps) has
// H_hat <= 3 rho^m, and every block of its n-m fine bits (low bits, blocks
// addressed from the least significant end) carries at least a beta fraction
// of ones. One estimation sweep serves both levels; z_bound sums the final
// Z_hat over unfrozen indices.
CodeSpec construct_two_step(const Channel& ch, int level, const TheoryParams& params,
                            const BinningConfig& cfg, const EstimateOptions& opt = {});

// Exact construction for erasure channels via the scalar recursion.
CodeSpec construct_bec_exact(double erasure_prob, int level, double target_rate);

// Exact per-index BEC Z values at a level (index order = path convention).
std::vector<double> bec_exact_z(double erasure_prob, int level);

// Text format: n=<int> / frozen=<comma list> / mode=<tag> / z_bound=<decimal>
void save_code_spec(std::ostream& out, const CodeSpec& spec);
CodeSpec load_code_spec(std::istream& in);
void save_code_spec_file(const std::string& path, const CodeSpec& spec);
CodeSpec load_code_spec_file(const std::string& path);

} // namespace polar
