#pragma once

#include <cstdint>
#include <vector>

#include "polar/channel.hpp"
#include "polar/construct.hpp"

namespace polar {

// In-place x = G u over GF(2): bit-reversal permutation followed by the
// Kronecker-power butterfly (N/2 XORs per stage). G is an involution, so the
// same call inverts it.
void polar_transform_inplace(std::vector<std::uint8_t>& bits);

// Message bits -> full input word (zeros on frozen positions) and back.
std::vector<std::uint8_t> scatter_message(const CodeSpec& spec,
                                          const std::vector<std::uint8_t>& message);
std::vector<std::uint8_t> extract_message(const CodeSpec& spec, const std::vector<std::uint8_t>& u);

// encode = scatter + transform; message length must be N - |F|.
std::vector<std::uint8_t> encode(const CodeSpec& spec, const std::vector<std::uint8_t>& message);

// Successive cancellation decoder. An instance owns its scratch buffers:
// one decode in flight per instance, independent instances may run
// concurrently on the shared spec/channel.
//
// Probabilities are kept as pairs renormalized to sum 1 at every merge;
// decisions are p(0) >= p(1) -> 0, so exact ties go to 0. Evidence that
// contradicts earlier decisions (possible only when decoding with the wrong
// channel model) zeroes both masses, and later decisions fall back to 0.
class ScDecoder {
public:
	ScDecoder(CodeSpec spec, Channel channel);

	// received[j] is the output symbol of channel use j; returns message bits.
	std::vector<std::uint8_t> decode(const std::vector<int>& received);

	// Genie-aided pass: every decision is recorded against the true input
	// word and then corrected, so flag i estimates the error rate of the
	// i-th synthetic channel in isolation.
	std::vector<std::uint8_t> decode_genie(const std::vector<int>& received,
	                                       const std::vector<std::uint8_t>& true_u);

	// bookkeeping from the most recent decode
	std::uint64_t last_node_evals() const { return node_evals_; }
	double last_min_top() const { return min_top_; } // smallest winning probability

	const CodeSpec& spec() const { return spec_; }
	const Channel& channel() const { return channel_; }

private:
	struct ProbPair {
		double q0, q1;
	};

	void run(const std::vector<int>& received, const std::uint8_t* true_u,
	         std::vector<std::uint8_t>& u_hat, std::vector<std::uint8_t>* flags);
	void push_decision(std::uint64_t i, std::uint8_t bit);

	CodeSpec spec_;
	Channel channel_;
	std::vector<std::uint8_t> frozen_mask_;
	std::vector<std::vector<ProbPair>> val_;      // per depth, one pair per segment
	std::vector<std::vector<std::uint8_t>> even_; // stored even-branch decisions
	std::vector<std::uint8_t> cur_, nxt_;         // decision propagation scratch
	std::uint64_t node_evals_ = 0;
	double min_top_ = 1.0;
};

// One-shot conveniences over ScDecoder.
std::vector<std::uint8_t> decode_sc(const CodeSpec& spec, const Channel& channel,
                                    const std::vector<int>& received);
std::vector<std::uint8_t> decode_sc_genie(const CodeSpec& spec, const Channel& channel,
                                          const std::vector<int>& received,
                                          const std::vector<std::uint8_t>& true_u);

// Packed little-endian bit files: bit j of a byte is (byte >> j) & 1.
std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t bit_count);

} // namespace polar
