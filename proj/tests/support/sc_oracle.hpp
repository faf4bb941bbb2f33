#pragma once

// Exhaustive successive-cancellation oracle for tiny block lengths: the
// posterior of each bit is computed by enumerating every input word, so the
// fast decoder's divide-and-conquer answers can be checked bit for bit.
//
// Exact ties are detected combinatorially, not through floats: each product
// of channel factors is keyed by the sorted multiset of its factor values
// (zero-product terms are dropped outright), and the two hypothesis masses
// are mathematically equal whenever their multisets of keys coincide. Note
// the (input, symbol) pair alone would be too coarse: a crossover channel
// has equal entries in different cells. On a tie the expected decision is 0.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "polar/channel.hpp"
#include "polar/codec.hpp"
#include "polar/construct.hpp"

namespace polar::testing {

struct OracleDecision {
	std::uint8_t bit = 0;
	bool tie = false;
};

// Decision for the bit at position prefix.size(), conditioned on the given
// earlier decisions; later bits (frozen or not) marginalize uniformly, which
// is exactly what the sequential decoder's metric does.
inline OracleDecision oracle_decide(const Channel& ch, const std::vector<int>& received,
                                    const std::vector<std::uint8_t>& prefix)
{
	const std::size_t block = received.size();
	const std::size_t target = prefix.size();
	using Profile = std::vector<double>; // sorted factor values
	std::array<std::map<Profile, int>, 2> profiles;
	std::array<long double, 2> mass{0.0L, 0.0L};
	std::vector<std::uint8_t> word(block);
	for (std::uint64_t bits = 0; bits < (1ull << block); ++bits) {
		for (std::size_t j = 0; j < block; ++j)
			word[j] = (bits >> j) & 1;
		bool matches = true;
		for (std::size_t j = 0; j < target && matches; ++j)
			matches = word[j] == prefix[j];
		if (!matches)
			continue;
		std::vector<std::uint8_t> code = word;
		polar_transform_inplace(code);
		Profile key(block);
		bool dead = false;
		for (std::size_t j = 0; j < block && !dead; ++j) {
			key[j] = ch.prob(code[j], received[j]);
			dead = key[j] == 0.0;
		}
		if (dead)
			continue; // a zero factor kills the whole term
		std::sort(key.begin(), key.end());
		long double p = 1.0L;
		for (double factor : key)
			p *= factor; // canonical order: equal keys give equal floats
		profiles[word[target]][key]++;
		mass[word[target]] += p;
	}
	OracleDecision decision;
	decision.tie = profiles[0] == profiles[1];
	decision.bit = decision.tie ? 0 : (mass[0] >= mass[1] ? 0 : 1);
	return decision;
}

// Full sequential decode feeding the oracle its own decisions; frozen
// positions are forced to zero exactly like the real decoder.
inline std::vector<std::uint8_t> oracle_decode(const CodeSpec& spec, const Channel& ch,
                                               const std::vector<int>& received,
                                               std::size_t* ties = nullptr)
{
	const std::uint64_t block = spec.block_length();
	std::vector<bool> frozen(block, false);
	for (std::uint32_t index : spec.frozen)
		frozen[index] = true;
	std::vector<std::uint8_t> u;
	u.reserve(block);
	for (std::uint64_t i = 0; i < block; ++i) {
		if (frozen[i]) {
			u.push_back(0);
			continue;
		}
		const OracleDecision d = oracle_decide(ch, received, u);
		if (ties && d.tie)
			++*ties;
		u.push_back(d.bit);
	}
	return u;
}

// Genie decisions: bit i's posterior is conditioned on the true prefix.
// Frozen positions yield 0 to mirror the decoder's forced output.
inline std::vector<std::uint8_t> oracle_genie(const CodeSpec& spec, const Channel& ch,
                                              const std::vector<int>& received,
                                              const std::vector<std::uint8_t>& true_u,
                                              std::size_t* ties = nullptr)
{
	const std::uint64_t block = spec.block_length();
	std::vector<bool> frozen(block, false);
	for (std::uint32_t index : spec.frozen)
		frozen[index] = true;
	std::vector<std::uint8_t> decisions(block, 0);
	for (std::uint64_t i = 0; i < block; ++i) {
		if (frozen[i])
			continue;
		const std::vector<std::uint8_t> prefix(true_u.begin(),
		                                       true_u.begin() + static_cast<std::ptrdiff_t>(i));
		const OracleDecision d = oracle_decide(ch, received, prefix);
		if (ties && d.tie)
			++*ties;
		decisions[i] = d.bit;
	}
	return decisions;
}

} // namespace polar::testing
