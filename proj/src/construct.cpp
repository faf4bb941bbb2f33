#include "polar/construct.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "polar/error.hpp"
#include "polar/text.hpp"

namespace polar {

void check_code_spec(const CodeSpec& spec)
{
	require(spec.level >= 0 && spec.level < 31, errc::invalid_parameter, "level out of range");
	const std::uint64_t N = spec.block_length();
	require(spec.frozen.size() <= N, errc::invalid_parameter, "more frozen indices than positions");
	for (std::size_t j = 0; j < spec.frozen.size(); ++j) {
		require(spec.frozen[j] < N, errc::invalid_parameter, "frozen index out of range");
		require(j == 0 || spec.frozen[j - 1] < spec.frozen[j], errc::invalid_parameter,
		        "frozen indices must be sorted and unique");
	}
}

int TheoryParams::block_count(int fine_levels) const
{
	const double denom = 2.0 * rough_levels * std::log2(2.0 / rho);
	return static_cast<int>(std::ceil(static_cast<double>(fine_levels) / denom));
}

double TheoryParams::theory_bin_count() const
{
	return std::pow(2.0 / rho, 2.0 * rough_levels);
}

CodeSpec construct_by_sort(const SubchannelStats& stats, double target_rate,
                           const std::string& mode)
{
	require(!stats.bhattacharyya.empty(), errc::invalid_parameter, "empty stats");
	require(target_rate > 0.0 && target_rate <= 1.0, errc::invalid_parameter,
	        "target rate must be in (0,1]");
	const std::size_t N = stats.bhattacharyya.size();
	require(N == (std::size_t{1} << stats.level), errc::invalid_parameter,
	        "stats size does not match level");

	const auto keep =
	    static_cast<std::size_t>(std::ceil(static_cast<double>(N) * target_rate));
	std::vector<std::uint32_t> order(N);
	std::iota(order.begin(), order.end(), 0u);
	std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
		return stats.bhattacharyya[a] < stats.bhattacharyya[b];
	});

	CodeSpec spec;
	spec.level = stats.level;
	spec.mode = mode;
	spec.frozen.assign(order.begin() + static_cast<std::ptrdiff_t>(keep), order.end());
	std::sort(spec.frozen.begin(), spec.frozen.end());
	for (std::size_t j = 0; j < keep; ++j)
		spec.z_bound += stats.bhattacharyya[order[j]];
	return spec;
}

CodeSpec construct_two_step(const Channel& ch, int level, const TheoryParams& params,
                            const BinningConfig& cfg, const EstimateOptions& opt)
{
	require(params.rho > 0.0 && params.rho < 1.0, errc::invalid_parameter, "rho must be in (0,1)");
	require(params.delta > 0.0 && params.delta < 0.5, errc::invalid_parameter,
	        "delta must be in (0,1/2)");
	require(params.beta > params.delta && params.beta < 0.5, errc::invalid_parameter,
	        "beta must be in (delta,1/2)");
	const int m = params.rough_levels;
	require(m >= 1 && m < level, errc::invalid_parameter, "rough level count must be in [1,n)");
	const double split = static_cast<double>(level) / (1.0 + params.gamma());
	require(std::fabs(static_cast<double>(m) - split) <= 1.0, errc::invalid_parameter,
	        "inconsistent split: m must be n/(1+gamma) up to rounding");

	const int fine = level - m;
	const int blocks = params.block_count(fine);
	const double block_len = static_cast<double>(fine) / blocks;
	require(block_len >= 1.0, errc::invalid_parameter,
	        "infeasible params: fine block length " + format_double(block_len) + " is below 1");

	SubchannelStats rough, full;
	sweep_subchannel_stats(ch, level, cfg, opt, [&](const SubchannelStats& stats) {
		if (stats.level == m)
			rough = stats;
		if (stats.level == level)
			full = stats;
		return true;
	});

	const double threshold = 3.0 * std::pow(params.rho, m);
	// minimum ones per fine block; the required count is ceil(beta * fine/blocks)
	// up to a small epsilon against products like 0.3*8
	const double need = params.beta * block_len - 1e-9;

	CodeSpec spec;
	spec.level = level;
	spec.mode = kModeTwoStep;
	const std::uint64_t N = spec.block_length();
	for (std::uint64_t i = 0; i < N; ++i) {
		bool good = rough.entropy[i >> fine] <= threshold;
		if (good) {
			int ones[64] = {};
			for (int bit = 0; bit < fine; ++bit)
				ones[(bit * blocks) / fine] += static_cast<int>((i >> bit) & 1u);
			for (int j = 0; good && j < blocks; ++j)
				good = static_cast<double>(ones[j]) >= need;
		}
		if (good)
			spec.z_bound += full.bhattacharyya[i];
		else
			spec.frozen.push_back(static_cast<std::uint32_t>(i));
	}
	return spec;
}

std::vector<double> bec_exact_z(double erasure_prob, int level)
{
	require(erasure_prob >= 0.0 && erasure_prob <= 1.0, errc::invalid_parameter,
	        "erasure probability must be in [0,1]");
	require(level >= 0 && level < 31, errc::invalid_parameter, "level out of range");
	std::vector<double> z{erasure_prob};
	for (int l = 0; l < level; ++l) {
		std::vector<double> next(z.size() * 2);
		for (std::size_t i = 0; i < z.size(); ++i) {
			next[2 * i] = z[i] * (2.0 - z[i]);
			next[2 * i + 1] = z[i] * z[i];
		}
		z = std::move(next);
	}
	return z;
}

CodeSpec construct_bec_exact(double erasure_prob, int level, double target_rate)
{
	SubchannelStats stats;
	stats.level = level;
	stats.bin_count = 0; // exact, no binning
	stats.bhattacharyya = bec_exact_z(erasure_prob, level);
	// erasure subchannels are erasure channels again, so H equals Z
	stats.entropy = stats.bhattacharyya;
	return construct_by_sort(stats, target_rate, kModeBecExact);
}

void save_code_spec(std::ostream& out, const CodeSpec& spec)
{
	out << "n=" << spec.level << "\n";
	out << "frozen=";
	for (std::size_t j = 0; j < spec.frozen.size(); ++j)
		out << (j ? "," : "") << spec.frozen[j];
	out << "\n";
	out << "mode=" << spec.mode << "\n";
	out << "z_bound=" << format_double(spec.z_bound) << "\n";
}

CodeSpec load_code_spec(std::istream& in)
{
	CodeSpec spec;
	bool saw_n = false, saw_frozen = false, saw_mode = false, saw_z = false;
	std::string line;
	while (std::getline(in, line)) {
		auto body = trim(line);
		if (body.empty())
			continue;
		const auto eq = body.find('=');
		require(eq != std::string_view::npos, errc::io_error, "malformed code spec line");
		const auto key = body.substr(0, eq);
		const auto value = body.substr(eq + 1);
		if (key == "n") {
			spec.level = static_cast<int>(parse_int(value));
			saw_n = true;
		} else if (key == "frozen") {
			saw_frozen = true;
			std::string token;
			std::istringstream fields{std::string(value)};
			while (std::getline(fields, token, ','))
				if (!trim(token).empty())
					spec.frozen.push_back(static_cast<std::uint32_t>(parse_int(trim(token))));
		} else if (key == "mode") {
			spec.mode = std::string(value);
			saw_mode = true;
		} else if (key == "z_bound") {
			spec.z_bound = parse_double(value);
			saw_z = true;
		} else {
			fail(errc::io_error, "unknown code spec key '" + std::string(key) + "'");
		}
	}
	require(saw_n && saw_frozen && saw_mode && saw_z, errc::io_error,
	        "code spec file is missing required keys");
	try {
		check_code_spec(spec);
	} catch (const error& e) {
		fail(errc::io_error, std::string("invalid code spec: ") + e.what());
	}
	return spec;
}

void save_code_spec_file(const std::string& path, const CodeSpec& spec)
{
	std::ofstream out(path);
	require(static_cast<bool>(out), errc::io_error, "cannot open '" + path + "' for writing");
	save_code_spec(out, spec);
	require(static_cast<bool>(out), errc::io_error, "write failed for '" + path + "'");
}

CodeSpec load_code_spec_file(const std::string& path)
{
	std::ifstream in(path);
	require(static_cast<bool>(in), errc::io_error, "cannot open '" + path + "'");
	return load_code_spec(in);
}

} // namespace polar
