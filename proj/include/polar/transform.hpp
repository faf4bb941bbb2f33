#pragma once

#include <cstdint>
#include <functional>

#include "polar/channel.hpp"

namespace polar {

enum class TransformSign { minus, plus };

// Address of one synthetic channel: W_n^(i) for i in [0, 2^n).
//
// Sign convention: the recursion halves the index, so unrolling it applies
// the sign of the MOST significant bit first and bit 0 last; a 0 bit means
// minus, a 1 bit means plus. step(j) is the j-th sign in application order.
// The decoder consistency tests pin this convention end to end.
struct IndexPath {
	int level = 0;
	std::uint64_t index = 0;

	TransformSign step(int j) const
	{
		return ((index >> (level - 1 - j)) & 1u) ? TransformSign::plus : TransformSign::minus;
	}
};

// Growth guard for un-binned evolution; tables beyond the cap raise
// errc::size_limit instead of exhausting memory.
inline constexpr std::size_t kAlphabetCap = 1'000'000;

// W-(y1,y2|x1) = 1/2 sum_x2 W(y1|x1^x2) W(y2|x2), alphabet Y x Y.
// Output symbol (y1,y2) is indexed y1*|Y| + y2.
Channel transform_minus(const Channel& ch, std::size_t cap = kAlphabetCap);

// W+(y1,y2,x1|x2) = 1/2 W(y1|x1^x2) W(y2|x2), alphabet Y x Y x {0,1}.
// Output symbol (y1,y2,x1) is indexed x1*|Y|^2 + y1*|Y| + y2.
Channel transform_plus(const Channel& ch, std::size_t cap = kAlphabetCap);

using Binner = std::function<Channel(const Channel&)>;

// Applies the path's signs in order; when a binner is supplied each transform
// is followed by a binning step (the nested approximation the estimator also
// uses, except that evolve_path never bins the input channel itself).
Channel evolve_path(const Channel& ch, const IndexPath& path, const Binner& binner = {},
                    std::size_t cap = kAlphabetCap);

// Exact scalar recursion for erasure channels: z -> 2z - z^2 on minus,
// z -> z^2 on plus. The oracle for every BEC test.
double bec_evolve(double z, const IndexPath& path);

} // namespace polar
