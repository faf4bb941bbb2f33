#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polar/rng.hpp"

namespace polar {

inline constexpr double kRowSumTol = 1e-12;

using Permutation = std::vector<std::uint32_t>;

// Binary-input channel over a finite output alphabet, stored as the two rows
// W(y|0), W(y|1). Immutable once built; metric computations are pure, so
// channels can be shared freely across worker threads.
//
// An optional output permutation sigma witnesses symmetry:
// sigma is an involution with W(y|0) = W(sigma(y)|1). It is metadata only;
// nothing downstream requires it.
class Channel {
public:
	// Validates rows (nonnegative, sums within kRowSumTol of 1) and sigma;
	// throws errc::invalid_parameter on violation.
	Channel(std::vector<double> w0, std::vector<double> w1,
	        std::optional<Permutation> sigma = std::nullopt);

	// Skips validation. For tables that are valid by construction but carry
	// accumulated rounding in their row sums (transform/binning outputs), and
	// for building deliberately broken tables to exercise validate().
	static Channel unchecked(std::vector<double> w0, std::vector<double> w1,
	                         std::optional<Permutation> sigma = std::nullopt);

	int output_size() const { return static_cast<int>(w_[0].size()); }
	double prob(int input, int symbol) const { return w_[input][symbol]; }
	const std::vector<double>& row(int input) const { return w_[input]; }
	const std::optional<Permutation>& symmetry() const { return sigma_; }

	// Draws one output symbol by inverse CDF; deterministic given the stream.
	int sample(int input, RngStream& rng) const;

private:
	Channel() = default;
	std::array<std::vector<double>, 2> w_;
	std::optional<Permutation> sigma_;
};

struct ChannelMetrics {
	double entropy;           // H(W) = H(X|Y) under uniform X
	double mutual_info;       // I(W) = 1 - H(W)
	double bhattacharyya;     // Z(W) = sum_y sqrt(W(y|0) W(y|1))
	double ml_error;          // P_e(W); a tie counts as a full error
	double symmetric_entropy; // T(W) = H(W) (1 - H(W))
};

// Erasure channel with symbols {0, erasure, 1} (erasure is index 1).
Channel make_bec(double erasure_prob);

// Crossover channel on symbols {0, 1}.
Channel make_bsc(double crossover);

ChannelMetrics metrics(const Channel& ch);

struct ValidationIssue {
	std::string what;
	double magnitude;
};

struct ChannelDiagnostics {
	std::array<double, 2> row_sum_drift{{0.0, 0.0}}; // |sum - 1| per row
	double most_negative = 0.0;                      // magnitude of worst negative entry
	double symmetry_deviation = 0.0;                 // max |W(y|0) - W(sigma(y)|1)|
	std::vector<ValidationIssue> issues;
	bool ok() const { return issues.empty(); }
};

// Reports violations instead of throwing; accepts any table.
ChannelDiagnostics validate(const Channel& ch);

// Scales each row to sum exactly 1; rejects rows with nonpositive mass.
Channel renormalize(const Channel& ch);

// Text format:
//   outputs: <|Y|>
//   <row of W(y|0)>
//   <row of W(y|1)>
//   sigma: <index list>        (optional)
void save_channel(std::ostream& out, const Channel& ch);
Channel load_channel(std::istream& in);
void save_channel_file(const std::string& path, const Channel& ch);
Channel load_channel_file(const std::string& path);

} // namespace polar
