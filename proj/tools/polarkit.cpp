// Command-line front end: code construction, Monte Carlo simulation,
// file-level encode/transmit/decode, and the analytic bound checks.
//
// Exit codes: 0 success, 1 usage, 2 contract violation, 3 a checked bound
// failed.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polar/channel.hpp"
#include "polar/codec.hpp"
#include "polar/construct.hpp"
#include "polar/degrade.hpp"
#include "polar/error.hpp"
#include "polar/rng.hpp"
#include "polar/simulate.hpp"
#include "polar/text.hpp"
#include "polar/theory.hpp"

namespace {

using namespace polar;

Channel parse_channel(const std::string& text)
{
	if (text.rfind("bec:", 0) == 0)
		return make_bec(parse_double(text.substr(4)));
	if (text.rfind("bsc:", 0) == 0)
		return make_bsc(parse_double(text.substr(4)));
	return load_channel_file(text);
}

std::vector<std::string> split_fields(const std::string& text, char sep)
{
	std::vector<std::string> fields;
	std::size_t start = 0;
	while (true) {
		const std::size_t pos = text.find(sep, start);
		if (pos == std::string::npos) {
			fields.push_back(text.substr(start));
			return fields;
		}
		fields.push_back(text.substr(start, pos - start));
		start = pos + 1;
	}
}

std::vector<std::uint8_t> read_bytes(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	require(in.good(), errc::io_error, "cannot open " + path);
	return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes)
{
	std::ofstream out(path, std::ios::binary);
	require(out.good(), errc::io_error, "cannot open " + path);
	out.write(reinterpret_cast<const char*>(bytes.data()),
	          static_cast<std::streamsize>(bytes.size()));
	require(out.good(), errc::io_error, "short write to " + path);
}

struct ConstructArgs {
	std::string channel;
	int level = 0;
	double rate = std::nan("");
	std::string theory; // rho,delta,beta,m
	int bins = 256;
	std::string mode = kModeSort;
	std::string out = "code.spec";
	std::string stats;
	std::uint64_t budget = EstimateOptions{}.work_budget;
	int workers = 1;
};

int run_construct(const ConstructArgs& args)
{
	const BinningConfig cfg{args.bins};
	EstimateOptions opt;
	opt.work_budget = args.budget;
	opt.workers = args.workers;
	const bool need_rate = args.mode != kModeTwoStep;
	require(!need_rate || std::isfinite(args.rate), errc::invalid_parameter,
	        "--rate is required for mode " + args.mode);

	CodeSpec spec;
	std::optional<SubchannelStats> stats;
	if (args.mode == kModeBecExact) {
		require(args.channel.rfind("bec:", 0) == 0, errc::invalid_parameter,
		        "bec-exact mode needs a bec:<p> channel");
		const double p = parse_double(args.channel.substr(4));
		spec = construct_bec_exact(p, args.level, args.rate);
		if (!args.stats.empty()) {
			SubchannelStats exact;
			exact.level = args.level;
			exact.bin_count = 0;
			exact.bhattacharyya = bec_exact_z(p, args.level);
			exact.entropy = exact.bhattacharyya; // H = Z on erasure channels
			stats = std::move(exact);
		}
	} else if (args.mode == kModeTwoStep) {
		require(!args.theory.empty(), errc::invalid_parameter,
		        "two-step mode needs --theory-params rho,delta,beta,m");
		const auto fields = split_fields(args.theory, ',');
		require(fields.size() == 4, errc::invalid_parameter,
		        "--theory-params wants four fields: rho,delta,beta,m");
		TheoryParams params;
		params.rho = parse_double(fields[0]);
		params.delta = parse_double(fields[1]);
		params.beta = parse_double(fields[2]);
		params.rough_levels = static_cast<int>(parse_int(fields[3]));
		const Channel ch = parse_channel(args.channel);
		spec = construct_two_step(ch, args.level, params, cfg, opt);
		if (!args.stats.empty())
			stats = estimate_all_subchannels(ch, args.level, cfg, opt);
	} else {
		const Channel ch = parse_channel(args.channel);
		SubchannelStats estimated = estimate_all_subchannels(ch, args.level, cfg, opt);
		spec = construct_by_sort(estimated, args.rate);
		stats = std::move(estimated);
	}

	save_code_spec_file(args.out, spec);
	if (!args.stats.empty()) {
		std::ofstream out(args.stats);
		require(out.good(), errc::io_error, "cannot open " + args.stats);
		write_stats_csv(out, *stats);
	}
	std::cout << "rate=" << format_double(spec.rate())
	          << " z_bound=" << format_double(spec.z_bound) << "\n";
	return 0;
}

struct SimulateArgs {
	std::string code;
	std::string channel;
	std::string decode_channel;
	std::string report;
	std::uint64_t trials = 10000;
	std::uint64_t seed = 1;
	int workers = 1;
};

int run_simulate(const SimulateArgs& args)
{
	const CodeSpec spec = load_code_spec_file(args.code);
	const Channel ch = parse_channel(args.channel);
	std::optional<Channel> decode_with;
	if (!args.decode_channel.empty())
		decode_with = parse_channel(args.decode_channel);
	SimParams params;
	params.trials = args.trials;
	params.seed = args.seed;
	params.workers = args.workers;
	const SimReport report = simulate(spec, ch, params, decode_with);
	if (args.report.empty()) {
		write_sim_report_json(std::cout, report);
	} else {
		std::ofstream out(args.report);
		require(out.good(), errc::io_error, "cannot open " + args.report);
		write_sim_report_json(out, report);
		std::cout << "trials=" << report.trials << " block_errors=" << report.block_errors
		          << " bler=" << format_double(report.bler) << "\n";
	}
	return 0;
}

struct VerifyArgs {
	std::string suite = "all";
	std::size_t samples = 1000;
	std::uint64_t seed = 1;
	std::string channel = "bec:0.5";
	std::vector<double> gaps{0.2, 0.1, 0.05, 0.025};
	double target = 1e-3;
	int max_level = 24;
	std::string out;
};

int run_verify(const VerifyArgs& args)
{
	bool failed = false;
	const auto emit = [&](const std::vector<BoundReport>& reports) {
		write_bound_reports(std::cout, reports);
		for (const auto& report : reports)
			failed = failed || !report.pass;
	};
	const bool all = args.suite == "all";
	if (all || args.suite == "constants") {
		emit({minimize_upsilon()});
		emit(verify_upsilon_regimes());
		emit({verify_sqrt3_bound()});
		emit({verify_rough_polarization()});
	}
	if (all || args.suite == "contraction")
		emit(estimate_contraction(args.samples, args.seed));
	if (all || args.suite == "scaling") {
		// informational: the fitted slope carries no pass/fail weight
		const Channel ch = parse_channel(args.channel);
		const ScalingFit fit =
		    fit_scaling_exponent(ch, args.gaps, args.target, args.max_level);
		if (args.out.empty()) {
			write_scaling_csv(std::cout, fit);
		} else {
			std::ofstream out(args.out);
			require(out.good(), errc::io_error, "cannot open " + args.out);
			write_scaling_csv(out, fit);
		}
	}
	return failed ? 3 : 0;
}

struct CodecArgs {
	bool encode = false;
	bool decode = false;
	bool transmit = false;
	bool hard_input = false;
	std::string code;
	std::string channel;
	std::string in;
	std::string out;
	std::uint64_t seed = 1;
};

// Framing: packed bit files carry ceil(K/8) bytes per message frame and
// ceil(N/8) per codeword frame; symbol files carry N bytes per frame.
int run_codec(const CodecArgs& args)
{
	const CodeSpec spec = load_code_spec_file(args.code);
	const std::uint64_t N = spec.block_length();
	const std::size_t K = spec.message_length();
	require(K >= 1, errc::invalid_parameter, "code has no message positions");
	const std::size_t msg_bytes = (K + 7) / 8;
	const std::size_t word_bytes = (static_cast<std::size_t>(N) + 7) / 8;

	const auto input = read_bytes(args.in);
	const auto frame_count = [&](std::size_t frame_bytes) {
		require(input.size() % frame_bytes == 0, errc::invalid_parameter,
		        "input length " + std::to_string(input.size()) +
		            " is not a multiple of the " + std::to_string(frame_bytes) +
		            "-byte frame");
		return input.size() / frame_bytes;
	};
	const auto frame = [&](std::size_t index, std::size_t frame_bytes) {
		const auto begin = input.begin() + static_cast<std::ptrdiff_t>(index * frame_bytes);
		return std::vector<std::uint8_t>(begin, begin + static_cast<std::ptrdiff_t>(frame_bytes));
	};
	std::vector<std::uint8_t> output;

	if (args.encode) {
		const std::size_t frames = frame_count(msg_bytes);
		for (std::size_t f = 0; f < frames; ++f) {
			const auto message = unpack_bits(frame(f, msg_bytes), K);
			const auto packed = pack_bits(encode(spec, message));
			output.insert(output.end(), packed.begin(), packed.end());
		}
		std::cout << "frames=" << frames << " message_bits=" << frames * K
		          << " codeword_bits=" << frames * N << "\n";
	} else if (args.transmit) {
		const Channel ch = parse_channel(args.channel);
		require(ch.output_size() <= 256, errc::invalid_parameter,
		        "symbol files carry one byte per symbol");
		const std::size_t frames = frame_count(word_bytes);
		output.reserve(frames * N);
		for (std::size_t f = 0; f < frames; ++f) {
			const auto word = unpack_bits(frame(f, word_bytes), N);
			RngStream rng = trial_stream(args.seed, f);
			for (std::uint64_t j = 0; j < N; ++j)
				output.push_back(static_cast<std::uint8_t>(ch.sample(word[j], rng)));
		}
		std::cout << "frames=" << frames << " symbols=" << frames * N << "\n";
	} else {
		const Channel ch = parse_channel(args.channel);
		// with --hard-input, a packed bit b stands for the symbol a
		// noiseless pass would emit: the most likely output given b
		std::array<int, 2> hard{0, 0};
		if (args.hard_input) {
			for (int x = 0; x < 2; ++x)
				for (int y = 1; y < ch.output_size(); ++y)
					if (ch.prob(x, y) > ch.prob(x, hard[x]))
						hard[x] = y;
		}
		const std::size_t frame_bytes =
		    args.hard_input ? word_bytes : static_cast<std::size_t>(N);
		const std::size_t frames = frame_count(frame_bytes);
		ScDecoder decoder(spec, ch);
		std::vector<int> received(N);
		for (std::size_t f = 0; f < frames; ++f) {
			const auto raw = frame(f, frame_bytes);
			if (args.hard_input) {
				const auto word = unpack_bits(raw, N);
				for (std::uint64_t j = 0; j < N; ++j)
					received[j] = hard[word[j]];
			} else {
				for (std::uint64_t j = 0; j < N; ++j)
					received[j] = raw[j];
			}
			const auto packed = pack_bits(decoder.decode(received));
			output.insert(output.end(), packed.begin(), packed.end());
		}
		std::cout << "frames=" << frames << " message_bits=" << frames * K << "\n";
	}

	write_bytes(args.out, output);
	return 0;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"polar coding toolkit"};
	app.require_subcommand(1);

	ConstructArgs cons;
	CLI::App* cmd_construct =
	    app.add_subcommand("construct", "build a code spec for a channel");
	cmd_construct->add_option("--channel", cons.channel, "bec:<p>, bsc:<p>, or a channel file")
	    ->required();
	cmd_construct->add_option("--n", cons.level, "number of polarization levels")->required();
	cmd_construct->add_option("--rate", cons.rate, "target rate (sort and bec-exact modes)");
	cmd_construct->add_option("--theory-params", cons.theory,
	                          "rho,delta,beta,m for two-step mode");
	cmd_construct->add_option("--bins", cons.bins, "output bins per estimated channel");
	cmd_construct->add_option("--mode", cons.mode, "selection rule")
	    ->check(CLI::IsMember({kModeSort, kModeTwoStep, kModeBecExact}));
	cmd_construct->add_option("--out", cons.out, "code spec output path");
	cmd_construct->add_option("--stats", cons.stats, "also write per-index stats CSV here");
	cmd_construct->add_option("--budget", cons.budget, "table-work budget for the sweep");
	cmd_construct->add_option("--workers", cons.workers, "threads for the sweep");

	SimulateArgs sim;
	CLI::App* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo block error run");
	cmd_simulate->add_option("--code", sim.code, "code spec file")->required();
	cmd_simulate->add_option("--channel", sim.channel, "transmission channel")->required();
	cmd_simulate->add_option("--decode-channel", sim.decode_channel,
	                         "decode with this channel instead (mismatch experiment)");
	cmd_simulate->add_option("--trials", sim.trials, "number of codeword trials");
	cmd_simulate->add_option("--seed", sim.seed, "stream seed");
	cmd_simulate->add_option("--workers", sim.workers, "worker threads");
	cmd_simulate->add_option("--report", sim.report, "write the JSON report here");

	VerifyArgs ver;
	CLI::App* cmd_verify = app.add_subcommand("verify", "run the numeric bound checks");
	cmd_verify->add_option("--suite", ver.suite, "which checks to run")
	    ->check(CLI::IsMember({"all", "constants", "contraction", "scaling"}));
	cmd_verify->add_option("--samples", ver.samples, "random channels for contraction");
	cmd_verify->add_option("--seed", ver.seed, "sampling seed");
	cmd_verify->add_option("--channel", ver.channel, "channel for the scaling fit");
	cmd_verify->add_option("--gaps", ver.gaps, "capacity gaps for the scaling fit")
	    ->expected(-1);
	cmd_verify->add_option("--target", ver.target, "z_bound target for the scaling fit");
	cmd_verify->add_option("--max-level", ver.max_level, "level budget for the scaling fit");
	cmd_verify->add_option("--out", ver.out, "write the scaling CSV here instead of stdout");

	CodecArgs cod;
	CLI::App* cmd_codec = app.add_subcommand("codec", "encode, transmit or decode bit files");
	cmd_codec->add_flag("--encode", cod.encode, "packed message bits -> packed codeword bits");
	cmd_codec->add_flag("--transmit", cod.transmit,
	                    "packed codeword bits -> sampled symbol bytes");
	cmd_codec->add_flag("--decode", cod.decode, "symbol bytes -> packed message bits");
	cmd_codec->add_flag("--hard-input", cod.hard_input,
	                    "decode reads packed bits as noiseless symbols");
	cmd_codec->add_option("--code", cod.code, "code spec file")->required();
	cmd_codec->add_option("--channel", cod.channel, "channel (transmit and decode)");
	cmd_codec->add_option("--in", cod.in, "input file")->required();
	cmd_codec->add_option("--out", cod.out, "output file")->required();
	cmd_codec->add_option("--seed", cod.seed, "transmit sampling seed");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 1;
	}

	try {
		if (app.got_subcommand(cmd_construct))
			return run_construct(cons);
		if (app.got_subcommand(cmd_simulate))
			return run_simulate(sim);
		if (app.got_subcommand(cmd_verify))
			return run_verify(ver);
		if (app.got_subcommand(cmd_codec)) {
			if (cod.encode + cod.decode + cod.transmit != 1) {
				std::cerr << "codec needs exactly one of --encode, --decode, "
				             "--transmit\n";
				return 1;
			}
			if (!cod.encode)
				require(!cod.channel.empty(), errc::invalid_parameter,
				        "--channel is required for transmit and decode");
			return run_codec(cod);
		}
	} catch (const polar::error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
