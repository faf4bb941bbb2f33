#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polar/channel.hpp"
#include "polar/degrade.hpp"
#include "polar/rng.hpp"

namespace polar {

// One numeric check of an analytic claim: an extremum measured on a grid or
// sample, the bound it must respect, and where the extremum occurred.
struct BoundReport {
	std::string quantity;
	double claimed = 0.0;
	double measured = 0.0;
	double location = 0.0; // argument (or sample index) of the extremum
	std::string detail;    // grid / sample description
	bool pass = false;
};

// One JSON object per line.
void write_bound_report(std::ostream& out, const BoundReport& report);
void write_bound_reports(std::ostream& out, const std::vector<BoundReport>& reports);

// Upsilon(x) = (h(2x(1-x)) - h(x)) / (h(x) (1-h(x))) on (0, 1/2). Near 1/2
// the numerator is evaluated through entropy deficits to dodge cancellation.
double upsilon(double x);

// Grid minimum of Upsilon over (0, 1/2); must stay above 0.799.
BoundReport minimize_upsilon(std::size_t grid_points = 100'000);

// The three-regime lower bounds on Upsilon for a split parameter a in
// (0, 1/4), plus the entropy sandwich 1-4g^2 <= h(1/2-g) <= 1-2g^2 that the
// near-half regime leans on. The near-zero regime is checked as an
// implication: wherever h(2x(1-x))/h(x) >= 3/2 holds on the grid, Upsilon
// must be >= 1/2 there (the premise picks the valid a; it fails for large a
// and those grid points are simply outside the regime).
std::vector<BoundReport> verify_upsilon_regimes(double a = 0.1, std::size_t grid_points = 100'000);

// max over z in [0,1] of sqrt(z(1+z)) + sqrt((1-z)(2-z)) <= sqrt(3),
// attained at z = 1/2.
BoundReport verify_sqrt3_bound(std::size_t grid_points = 100'000);

// (sqrt(T-) + sqrt(T+)) / (2 sqrt(T)) for an erasure channel, from the exact
// scalar evolution; T = H (1-H) with H = erasure_prob.
double bec_contraction_ratio(double erasure_prob);

// Random symmetric channel: row 0 sampled uniformly, row 1 its mirror under
// a random involution on the outputs, shared normalizer.
Channel random_symmetric_channel(RngStream& rng, std::uint32_t output_size);

// Sampled contraction factor of sqrt(T) under one polarization step: the
// maximum of (sqrt(T-)+sqrt(T+))/(2 sqrt(T)) over random symmetric channels
// with |Y| in {2,4,6,8} must sit strictly below 1, and the exact erasure
// ratio at p = 1/2 must land on sqrt(3)/2. Channels with T below 1e-12 are
// skipped as polarized fixed points.
std::vector<BoundReport> estimate_contraction(std::size_t samples = 1000, std::uint64_t seed = 1);

// Fraction of level-<level> erasure subchannels with exact Z <= 2 rho^level;
// checked against I(W) - slack. The slack is a desk-scale allowance: the
// polarization statement is asymptotic and level 20 is not.
BoundReport verify_rough_polarization(double erasure_prob = 0.5, int level = 20, double rho = 0.9,
                                      double slack = 0.05);

struct ScalingPoint {
	double epsilon = 0.0; // gap to capacity
	int level = -1;       // smallest n reaching the target, -1 if none
	std::uint64_t block_length = 0;
	double rate = 0.0;
	double z_bound = 0.0;
	bool reached = false;
};

struct ScalingFit {
	std::vector<ScalingPoint> points;
	bool fitted = false;
	double mu_hat = 0.0; // slope of ln N against ln(1/epsilon)
};

// For each gap find the smallest level whose rate-(I - gap) sorted
// construction meets z_bound <= target_bler, then fit ln N ~ mu ln(1/gap).
// Gaps must be strictly decreasing and inside (0, I). Erasure-like channels
// use the exact scalar evolution; everything else runs one binned sweep and
// reports partially if the work budget runs out first. The fitted slope is
// informational, never asserted.
ScalingFit fit_scaling_exponent(const Channel& ch, const std::vector<double>& gaps,
                                double target_bler, int max_level = 24,
                                const BinningConfig& cfg = {}, const EstimateOptions& opt = {});

// CSV columns: epsilon, n, N, rate, z_bound (schema comment first; unreached
// gaps become comment lines; fitted slope appended as a comment).
void write_scaling_csv(std::ostream& out, const ScalingFit& fit);

} // namespace polar
