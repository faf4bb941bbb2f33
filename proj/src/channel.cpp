#include "polar/channel.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "polar/entropy.hpp"
#include "polar/error.hpp"
#include "polar/text.hpp"

namespace polar {

namespace {

void check_sigma(const Permutation& sigma, std::size_t n)
{
	require(sigma.size() == n, errc::invalid_parameter, "sigma size does not match alphabet");
	for (std::size_t y = 0; y < n; ++y) {
		require(sigma[y] < n, errc::invalid_parameter, "sigma index out of range");
		require(sigma[sigma[y]] == y, errc::invalid_parameter, "sigma is not an involution");
	}
}

} // namespace

Channel::Channel(std::vector<double> w0, std::vector<double> w1, std::optional<Permutation> sigma)
{
	require(!w0.empty() && w0.size() == w1.size(), errc::invalid_parameter,
	        "channel rows must be nonempty and equal-sized");
	const std::vector<double>* rows[2] = {&w0, &w1};
	for (int x = 0; x < 2; ++x) {
		double sum = 0.0;
		for (double v : *rows[x]) {
			require(v >= 0.0, errc::invalid_parameter, "negative transition probability");
			sum += v;
		}
		require(std::fabs(sum - 1.0) <= kRowSumTol, errc::invalid_parameter,
		        "channel row does not sum to 1 (drift " + format_double(std::fabs(sum - 1.0)) + ")");
	}
	if (sigma) {
		check_sigma(*sigma, w0.size());
		for (std::size_t y = 0; y < w0.size(); ++y)
			require(std::fabs(w0[y] - w1[(*sigma)[y]]) <= kRowSumTol, errc::invalid_parameter,
			        "sigma does not witness symmetry");
	}
	w_[0] = std::move(w0);
	w_[1] = std::move(w1);
	sigma_ = std::move(sigma);
}

Channel Channel::unchecked(std::vector<double> w0, std::vector<double> w1,
                           std::optional<Permutation> sigma)
{
	Channel ch;
	ch.w_[0] = std::move(w0);
	ch.w_[1] = std::move(w1);
	ch.sigma_ = std::move(sigma);
	return ch;
}

int Channel::sample(int input, RngStream& rng) const
{
	const auto& row = w_[input];
	const double u = rng.next_double();
	double acc = 0.0;
	int last_positive = 0;
	for (std::size_t y = 0; y < row.size(); ++y) {
		if (row[y] <= 0.0)
			continue;
		acc += row[y];
		last_positive = static_cast<int>(y);
		if (u < acc)
			return last_positive;
	}
	// u fell into the rounding residue past the accumulated sum
	return last_positive;
}

Channel make_bec(double erasure_prob)
{
	require(erasure_prob >= 0.0 && erasure_prob <= 1.0, errc::invalid_parameter,
	        "erasure probability must be in [0,1]");
	const double q = 1.0 - erasure_prob;
	return Channel({q, erasure_prob, 0.0}, {0.0, erasure_prob, q}, Permutation{2, 1, 0});
}

Channel make_bsc(double crossover)
{
	require(crossover >= 0.0 && crossover <= 0.5, errc::invalid_parameter,
	        "crossover must be in [0,1/2]");
	const double q = 1.0 - crossover;
	return Channel({q, crossover}, {crossover, q}, Permutation{1, 0});
}

ChannelMetrics metrics(const Channel& ch)
{
	double H = 0.0, Z = 0.0, Pe = 0.0;
	for (int y = 0; y < ch.output_size(); ++y) {
		const double a = ch.prob(0, y), b = ch.prob(1, y);
		const double mass = 0.5 * (a + b);
		if (mass > 0.0)
			H += mass * binary_entropy(0.5 * a / mass);
		Z += std::sqrt(a * b);
		// ML decision on y is wrong for input x whenever W(y|x) <= W(y|x^1);
		// equality (a tie) counts as an error for both inputs.
		if (a > 0.0 && a <= b)
			Pe += 0.5 * a;
		if (b > 0.0 && b <= a)
			Pe += 0.5 * b;
	}
	ChannelMetrics m;
	m.entropy = H;
	m.mutual_info = 1.0 - H;
	m.bhattacharyya = Z;
	m.ml_error = Pe;
	m.symmetric_entropy = H * (1.0 - H);
	return m;
}

ChannelDiagnostics validate(const Channel& ch)
{
	ChannelDiagnostics d;
	for (int x = 0; x < 2; ++x) {
		double sum = 0.0;
		for (double v : ch.row(x)) {
			sum += v;
			if (v < 0.0 && -v > d.most_negative)
				d.most_negative = -v;
		}
		d.row_sum_drift[x] = std::fabs(sum - 1.0);
		if (d.row_sum_drift[x] > kRowSumTol)
			d.issues.push_back({"row " + std::to_string(x) + " sum drift", d.row_sum_drift[x]});
	}
	if (d.most_negative > 0.0)
		d.issues.push_back({"negative entry", d.most_negative});
	if (ch.symmetry()) {
		const auto& sigma = *ch.symmetry();
		const std::size_t n = ch.row(0).size();
		bool shape_ok = sigma.size() == n;
		for (std::size_t y = 0; shape_ok && y < n; ++y)
			shape_ok = sigma[y] < n && sigma[sigma[y]] == y;
		if (!shape_ok) {
			d.issues.push_back({"sigma is not an involution on the alphabet", 0.0});
		} else {
			for (std::size_t y = 0; y < n; ++y) {
				const double dev = std::fabs(ch.prob(0, static_cast<int>(y)) -
				                             ch.prob(1, static_cast<int>(sigma[y])));
				if (dev > d.symmetry_deviation)
					d.symmetry_deviation = dev;
			}
			if (d.symmetry_deviation > kRowSumTol)
				d.issues.push_back({"symmetry deviation", d.symmetry_deviation});
		}
	}
	return d;
}

Channel renormalize(const Channel& ch)
{
	std::array<std::vector<double>, 2> rows = {ch.row(0), ch.row(1)};
	for (auto& row : rows) {
		double sum = std::accumulate(row.begin(), row.end(), 0.0);
		require(sum > 0.0, errc::invalid_parameter, "cannot renormalize a row with no mass");
		for (double& v : row)
			v /= sum;
	}
	return Channel(std::move(rows[0]), std::move(rows[1]), ch.symmetry());
}

void save_channel(std::ostream& out, const Channel& ch)
{
	out << "outputs: " << ch.output_size() << "\n";
	for (int x = 0; x < 2; ++x) {
		for (int y = 0; y < ch.output_size(); ++y)
			out << (y ? " " : "") << format_double(ch.prob(x, y));
		out << "\n";
	}
	if (ch.symmetry()) {
		out << "sigma:";
		for (auto v : *ch.symmetry())
			out << " " << v;
		out << "\n";
	}
}

Channel load_channel(std::istream& in)
{
	std::string line;
	require(static_cast<bool>(std::getline(in, line)), errc::io_error, "empty channel file");
	auto head = trim(line);
	require(head.substr(0, 8) == "outputs:", errc::io_error, "channel file must start with 'outputs:'");
	const auto count = parse_int(trim(head.substr(8)));
	require(count > 0, errc::io_error, "output alphabet must be nonempty");

	std::array<std::vector<double>, 2> rows;
	for (int x = 0; x < 2; ++x) {
		require(static_cast<bool>(std::getline(in, line)), errc::io_error, "missing probability row");
		std::istringstream fields{std::string(trim(line))};
		std::string tok;
		while (fields >> tok)
			rows[x].push_back(parse_double(tok));
		require(rows[x].size() == static_cast<std::size_t>(count), errc::io_error,
		        "probability row has wrong length");
	}

	std::optional<Permutation> sigma;
	while (std::getline(in, line)) {
		auto body = trim(line);
		if (body.empty())
			continue;
		require(body.substr(0, 6) == "sigma:", errc::io_error, "unexpected line in channel file");
		sigma.emplace();
		std::istringstream fields{std::string(body.substr(6))};
		std::string tok;
		while (fields >> tok)
			sigma->push_back(static_cast<std::uint32_t>(parse_int(tok)));
	}
	try {
		return Channel(std::move(rows[0]), std::move(rows[1]), std::move(sigma));
	} catch (const error& e) {
		fail(errc::io_error, std::string("invalid channel table: ") + e.what());
	}
}

void save_channel_file(const std::string& path, const Channel& ch)
{
	std::ofstream out(path);
	require(static_cast<bool>(out), errc::io_error, "cannot open '" + path + "' for writing");
	save_channel(out, ch);
	require(static_cast<bool>(out), errc::io_error, "write failed for '" + path + "'");
}

Channel load_channel_file(const std::string& path)
{
	std::ifstream in(path);
	require(static_cast<bool>(in), errc::io_error, "cannot open '" + path + "'");
	return load_channel(in);
}

} // namespace polar
