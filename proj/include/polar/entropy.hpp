#pragma once

#include <cmath>

namespace polar {

// h(x) = -x lg x - (1-x) lg(1-x), with 0 lg 0 = 0.
inline double binary_entropy(double x)
{
	if (x <= 0.0 || x >= 1.0)
		return 0.0;
	return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

// 1 - h(1/2 - g) evaluated without cancellation for small g.
// Power series: (1/(2 ln 2)) * sum_{j>=1} (2g)^(2j) / (j(2j-1)).
inline double entropy_deficit(double g)
{
	if (g < 0.0)
		g = -g;
	if (g >= 0.5)
		return 1.0;
	if (g > 1e-3)
		return 1.0 - binary_entropy(0.5 - g);
	const double s = 4.0 * g * g; // (2g)^2
	double term = s;              // (2g)^(2j) at j=1
	double acc = 0.0;
	for (int j = 1; j < 40; ++j) {
		const double add = term / (j * (2 * j - 1));
		acc += add;
		if (add < 1e-30 * acc)
			break;
		term *= s;
	}
	return acc / (2.0 * std::log(2.0));
}

} // namespace polar
