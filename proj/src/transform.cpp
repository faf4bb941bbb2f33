#include "polar/transform.hpp"

#include <string>

#include "polar/error.hpp"

namespace polar {

namespace {

std::size_t checked_square(const Channel& ch, std::size_t factor, std::size_t cap)
{
	const auto n = static_cast<std::size_t>(ch.output_size());
	const std::size_t out = factor * n * n;
	require(n <= cap / factor / n, errc::size_limit,
	        "transform output alphabet exceeds cap (" + std::to_string(cap) + " symbols)");
	require(out <= cap, errc::size_limit,
	        "transform output alphabet exceeds cap (" + std::to_string(cap) + " symbols)");
	return out;
}

} // namespace

Channel transform_minus(const Channel& ch, std::size_t cap)
{
	const int n = ch.output_size();
	checked_square(ch, 1, cap);
	std::vector<double> w0(static_cast<std::size_t>(n) * n), w1(w0.size());
	for (int y1 = 0; y1 < n; ++y1) {
		for (int y2 = 0; y2 < n; ++y2) {
			const std::size_t idx = static_cast<std::size_t>(y1) * n + y2;
			// x2 summed out with a uniform prior on the partner input
			w0[idx] = 0.5 * (ch.prob(0, y1) * ch.prob(0, y2) + ch.prob(1, y1) * ch.prob(1, y2));
			w1[idx] = 0.5 * (ch.prob(1, y1) * ch.prob(0, y2) + ch.prob(0, y1) * ch.prob(1, y2));
		}
	}
	std::optional<Permutation> sigma;
	if (ch.symmetry()) {
		// flipping x1 alone is undone by mirroring y1 alone
		const auto& s = *ch.symmetry();
		sigma.emplace(w0.size());
		for (int y1 = 0; y1 < n; ++y1)
			for (int y2 = 0; y2 < n; ++y2)
				(*sigma)[static_cast<std::size_t>(y1) * n + y2] =
				    s[static_cast<std::size_t>(y1)] * n + y2;
	}
	return Channel::unchecked(std::move(w0), std::move(w1), std::move(sigma));
}

Channel transform_plus(const Channel& ch, std::size_t cap)
{
	const int n = ch.output_size();
	const std::size_t half = checked_square(ch, 2, cap) / 2;
	std::vector<double> w0(2 * half), w1(2 * half);
	for (int x1 = 0; x1 < 2; ++x1) {
		for (int y1 = 0; y1 < n; ++y1) {
			for (int y2 = 0; y2 < n; ++y2) {
				const std::size_t idx =
				    static_cast<std::size_t>(x1) * half + static_cast<std::size_t>(y1) * n + y2;
				w0[idx] = 0.5 * ch.prob(x1, y1) * ch.prob(0, y2);
				w1[idx] = 0.5 * ch.prob(x1 ^ 1, y1) * ch.prob(1, y2);
			}
		}
	}
	std::optional<Permutation> sigma;
	if (ch.symmetry()) {
		// flipping x2 flips both uses; x1 is part of the output and stays put
		const auto& s = *ch.symmetry();
		sigma.emplace(w0.size());
		for (int x1 = 0; x1 < 2; ++x1)
			for (int y1 = 0; y1 < n; ++y1)
				for (int y2 = 0; y2 < n; ++y2)
					(*sigma)[static_cast<std::size_t>(x1) * half +
					         static_cast<std::size_t>(y1) * n + y2] =
					    static_cast<std::uint32_t>(x1) * half + s[static_cast<std::size_t>(y1)] * n +
					    s[static_cast<std::size_t>(y2)];
	}
	return Channel::unchecked(std::move(w0), std::move(w1), std::move(sigma));
}

Channel evolve_path(const Channel& ch, const IndexPath& path, const Binner& binner, std::size_t cap)
{
	require(path.level >= 0 && (path.level >= 64 || path.index < (1ull << path.level)),
	        errc::invalid_parameter, "index out of range for path level");
	Channel cur = ch;
	for (int j = 0; j < path.level; ++j) {
		cur = path.step(j) == TransformSign::minus ? transform_minus(cur, cap)
		                                           : transform_plus(cur, cap);
		if (binner)
			cur = binner(cur);
	}
	return cur;
}

double bec_evolve(double z, const IndexPath& path)
{
	require(z >= 0.0 && z <= 1.0, errc::invalid_parameter, "erasure rate must be in [0,1]");
	for (int j = 0; j < path.level; ++j)
		z = path.step(j) == TransformSign::minus ? z * (2.0 - z) : z * z;
	return z;
}

} // namespace polar
