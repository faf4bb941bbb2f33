#include "polar/codec.hpp"

#include <bit>
#include <string>

#include "polar/error.hpp"

namespace polar {

void polar_transform_inplace(std::vector<std::uint8_t>& bits)
{
	const std::size_t N = bits.size();
	require(N > 0 && (N & (N - 1)) == 0, errc::invalid_parameter,
	        "input length must be a power of two");
	const int n = std::countr_zero(N);
	for (std::size_t i = 0; i < N; ++i) {
		std::size_t j = 0;
		for (int b = 0; b < n; ++b)
			j |= ((i >> b) & 1u) << (n - 1 - b);
		if (i < j)
			std::swap(bits[i], bits[j]);
	}
	for (std::size_t stride = 1; stride < N; stride <<= 1)
		for (std::size_t i = 0; i < N; ++i)
			if (!(i & stride))
				bits[i] ^= bits[i | stride];
}

std::vector<std::uint8_t> scatter_message(const CodeSpec& spec,
                                          const std::vector<std::uint8_t>& message)
{
	require(message.size() == spec.message_length(), errc::invalid_parameter,
	        "message length must be " + std::to_string(spec.message_length()));
	std::vector<std::uint8_t> u(spec.block_length(), 0);
	std::size_t next_frozen = 0, src = 0;
	for (std::uint64_t i = 0; i < spec.block_length(); ++i) {
		if (next_frozen < spec.frozen.size() && spec.frozen[next_frozen] == i) {
			++next_frozen;
			continue;
		}
		u[i] = message[src++] & 1u;
	}
	return u;
}

std::vector<std::uint8_t> extract_message(const CodeSpec& spec, const std::vector<std::uint8_t>& u)
{
	require(u.size() == spec.block_length(), errc::invalid_parameter,
	        "input word length must be " + std::to_string(spec.block_length()));
	std::vector<std::uint8_t> message;
	message.reserve(spec.message_length());
	std::size_t next_frozen = 0;
	for (std::uint64_t i = 0; i < spec.block_length(); ++i) {
		if (next_frozen < spec.frozen.size() && spec.frozen[next_frozen] == i) {
			++next_frozen;
			continue;
		}
		message.push_back(u[i]);
	}
	return message;
}

std::vector<std::uint8_t> encode(const CodeSpec& spec, const std::vector<std::uint8_t>& message)
{
	check_code_spec(spec);
	std::vector<std::uint8_t> word = scatter_message(spec, message);
	polar_transform_inplace(word);
	return word;
}

ScDecoder::ScDecoder(CodeSpec spec, Channel channel)
    : spec_(std::move(spec)), channel_(std::move(channel))
{
	check_code_spec(spec_);
	const int n = spec_.level;
	frozen_mask_.assign(spec_.block_length(), 0);
	for (auto f : spec_.frozen)
		frozen_mask_[f] = 1;
	val_.resize(n + 1);
	even_.resize(n + 1);
	for (int d = 0; d <= n; ++d) {
		val_[d].resize(std::size_t{1} << d);
		even_[d].assign(std::size_t{1} << d, 0);
	}
	cur_.resize(spec_.block_length());
	nxt_.resize(spec_.block_length());
}

namespace {

inline void normalize(double& q0, double& q1)
{
	const double sum = q0 + q1;
	if (sum > 0.0) {
		q0 /= sum;
		q1 /= sum;
	}
	// a (0,0) pair means the evidence contradicts earlier decisions; keep
	// the zeros so the contradiction propagates and every remaining
	// decision degrades to the tie rule. Matched-channel decoding never
	// reaches this state.
}

} // namespace

void ScDecoder::push_decision(std::uint64_t i, std::uint8_t bit)
{
	// Walk the decision down: while the sub-index at this depth is odd, the
	// pair (stored even decision, current odd decision) fixes both child
	// decisions one level deeper.
	const int n = spec_.level;
	cur_[0] = bit;
	int d = 0;
	std::uint64_t width = 1;
	while (d < n && ((i >> d) & 1u)) {
		for (std::uint64_t s = 0; s < width; ++s) {
			nxt_[2 * s] = even_[d][s] ^ cur_[s];
			nxt_[2 * s + 1] = cur_[s];
		}
		std::swap(cur_, nxt_);
		++d;
		width <<= 1;
	}
	if (d < n)
		for (std::uint64_t s = 0; s < width; ++s)
			even_[d][s] = cur_[s];
}

void ScDecoder::run(const std::vector<int>& received, const std::uint8_t* true_u,
                    std::vector<std::uint8_t>& u_hat, std::vector<std::uint8_t>* flags)
{
	const int n = spec_.level;
	const std::uint64_t N = spec_.block_length();
	require(received.size() == N, errc::invalid_parameter,
	        "received word length must be " + std::to_string(N));
	for (int y : received)
		require(y >= 0 && y < channel_.output_size(), errc::invalid_parameter,
		        "received symbol out of channel alphabet");

	node_evals_ = 0;
	min_top_ = 1.0;
	for (std::uint64_t i = 0; i < N; ++i) {
		const int t = i == 0 ? n : std::countr_zero(i);
		if (t == n) {
			for (std::uint64_t s = 0; s < N; ++s) {
				double q0 = channel_.prob(0, received[s]);
				double q1 = channel_.prob(1, received[s]);
				normalize(q0, q1);
				val_[n][s] = {q0, q1};
			}
			node_evals_ += N;
		}
		// Re-derive depths t..0. All segments of one depth sit at the same
		// sub-index i >> d, odd exactly at depth t (plus branch), even below
		// (minus branch).
		for (int d = std::min(t, n - 1); d >= 0; --d) {
			const std::uint64_t segs = std::uint64_t{1} << d;
			const bool odd = (i >> d) & 1u;
			for (std::uint64_t s = 0; s < segs; ++s) {
				const ProbPair& a = val_[d + 1][2 * s];
				const ProbPair& b = val_[d + 1][2 * s + 1];
				double q0, q1;
				if (odd) {
					const std::uint8_t known = even_[d][s];
					q0 = (known ? a.q1 : a.q0) * b.q0;
					q1 = (known ? a.q0 : a.q1) * b.q1;
				} else {
					q0 = a.q0 * b.q0 + a.q1 * b.q1;
					q1 = a.q0 * b.q1 + a.q1 * b.q0;
				}
				normalize(q0, q1);
				val_[d][s] = {q0, q1};
			}
			node_evals_ += segs;
		}

		const ProbPair& root = val_[0][0];
		std::uint8_t decision = frozen_mask_[i] ? 0 : (root.q0 >= root.q1 ? 0 : 1);
		const double top = decision ? root.q1 : root.q0;
		if (!frozen_mask_[i] && top < min_top_)
			min_top_ = top;
		if (flags)
			(*flags)[i] = decision != true_u[i];
		if (true_u)
			decision = true_u[i]; // genie correction
		u_hat[i] = decision;
		push_decision(i, decision);
	}
}

std::vector<std::uint8_t> ScDecoder::decode(const std::vector<int>& received)
{
	std::vector<std::uint8_t> u_hat(spec_.block_length());
	run(received, nullptr, u_hat, nullptr);
	return extract_message(spec_, u_hat);
}

std::vector<std::uint8_t> ScDecoder::decode_genie(const std::vector<int>& received,
                                                  const std::vector<std::uint8_t>& true_u)
{
	require(true_u.size() == spec_.block_length(), errc::invalid_parameter,
	        "true input word length must be " + std::to_string(spec_.block_length()));
	std::vector<std::uint8_t> u_hat(spec_.block_length());
	std::vector<std::uint8_t> flags(spec_.block_length());
	run(received, true_u.data(), u_hat, &flags);
	return flags;
}

std::vector<std::uint8_t> decode_sc(const CodeSpec& spec, const Channel& channel,
                                    const std::vector<int>& received)
{
	ScDecoder dec(spec, channel);
	return dec.decode(received);
}

std::vector<std::uint8_t> decode_sc_genie(const CodeSpec& spec, const Channel& channel,
                                          const std::vector<int>& received,
                                          const std::vector<std::uint8_t>& true_u)
{
	ScDecoder dec(spec, channel);
	return dec.decode_genie(received, true_u);
}

std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& bits)
{
	std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
	for (std::size_t i = 0; i < bits.size(); ++i)
		bytes[i / 8] |= static_cast<std::uint8_t>((bits[i] & 1u) << (i % 8));
	return bytes;
}

std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t bit_count)
{
	require(bit_count <= bytes.size() * 8, errc::invalid_parameter,
	        "bit count exceeds packed data");
	std::vector<std::uint8_t> bits(bit_count);
	for (std::size_t i = 0; i < bit_count; ++i)
		bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
	return bits;
}

} // namespace polar
