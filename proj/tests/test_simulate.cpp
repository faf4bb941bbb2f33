#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "polar/channel.hpp"
#include "polar/construct.hpp"
#include "polar/error.hpp"
#include "polar/simulate.hpp"

using namespace polar;

TEST_CASE("zero trials yield an empty but well-formed report")
{
	const CodeSpec spec = construct_bec_exact(0.5, 4, 0.5);
	SimParams params;
	params.trials = 0;
	const SimReport report = simulate(spec, make_bec(0.5), params);
	CHECK(report.trials == 0);
	CHECK(report.block_errors == 0);
	CHECK(report.bler == 0.0);
	CHECK(report.wilson_low == 0.0);
	CHECK(report.wilson_high == 1.0);

	std::ostringstream out;
	CHECK_NOTHROW(write_sim_report_json(out, report));
	CHECK_NOTHROW(nlohmann::json::parse(out.str()));
}

TEST_CASE("error counts do not depend on the worker count")
{
	const CodeSpec spec = construct_bec_exact(0.5, 6, 0.5);
	const Channel ch = make_bec(0.5);
	SimParams one;
	one.trials = 2000;
	one.seed = 11;
	one.workers = 1;
	SimParams three = one;
	three.workers = 3;

	const SimReport a = simulate(spec, ch, one);
	const SimReport b = simulate(spec, ch, three);
	CHECK(a.block_errors == b.block_errors);
	CHECK(a.bit_errors == b.bit_errors);
	CHECK(a.bler == b.bler);
	CHECK(a.workers == 1);
	CHECK(b.workers == 3);
	CHECK(a.z_bound == spec.z_bound);
	CHECK(a.wall_seconds >= 0.0);

	// more lanes than trials is fine
	SimParams many = one;
	many.trials = 2;
	many.workers = 8;
	CHECK_NOTHROW(simulate(spec, ch, many));
}

TEST_CASE("a clean channel never errs")
{
	const CodeSpec spec = construct_bec_exact(0.5, 6, 0.5);
	SimParams params;
	params.trials = 500;
	const SimReport report = simulate(spec, make_bec(0.0), params);
	CHECK(report.block_errors == 0);
	CHECK(report.bit_errors == 0);
	CHECK(report.wilson_low == 0.0);
	// frozen interval for 0 errors in 500 would differ; recheck the 10000 case below
}

TEST_CASE("frozen reference run on the half erasure channel")
{
	const CodeSpec spec = construct_bec_exact(0.5, 10, 0.3);
	SimParams params;
	params.trials = 10000;
	params.seed = 7;
	const SimReport report = simulate(spec, make_bec(0.5), params);
	CHECK(report.block_errors == 3);
	CHECK(report.bit_errors >= report.block_errors);
	CHECK(report.bler == doctest::Approx(3e-4).epsilon(1e-12));
	CHECK(report.wilson_low == doctest::Approx(0.00010203219941781012).epsilon(1e-12));
	CHECK(report.wilson_high == doctest::Approx(0.0008817357722363795).epsilon(1e-12));

	// the union bound with three-sigma sampling slack holds comfortably
	const double zb = report.z_bound;
	const double sigma = std::sqrt(zb * (1.0 - zb) / static_cast<double>(report.trials));
	CHECK(report.bler <= zb + 3.0 * sigma);
}

TEST_CASE("an adversarial decoding model fails every block")
{
	CodeSpec spec;
	spec.level = 1;
	spec.frozen = {0};

	// transmissions are clean; the decoding model swaps the two revealing
	// symbols, so every decision comes out inverted
	const Channel truth = make_bec(0.0);
	const Channel upside_down({0.01, 0.0, 0.99}, {0.99, 0.0, 0.01}, Permutation{2, 1, 0});

	SimParams params;
	params.trials = 10000;
	const SimReport report = simulate(spec, truth, params, upside_down);
	CHECK(report.block_errors == report.trials);
	CHECK(report.bler == 1.0);
	CHECK(report.wilson_low == doctest::Approx(0.9996160016293234).epsilon(1e-12));
	CHECK(report.wilson_high == 1.0);
}

TEST_CASE("simulation parameter validation")
{
	const CodeSpec spec = construct_bec_exact(0.5, 4, 0.5);
	SimParams params;
	params.trials = 10;
	params.workers = 0;
	CHECK_THROWS_AS(simulate(spec, make_bec(0.5), params), error);

	params.workers = 1;
	try {
		// two-symbol decoding model against a three-symbol channel
		simulate(spec, make_bec(0.5), params, make_bsc(0.1));
		FAIL("expected a throw");
	} catch (const error& e) {
		CHECK(e.code() == errc::invalid_parameter);
	}

	CodeSpec broken = spec;
	broken.frozen = {5, 1};
	CHECK_THROWS_AS(simulate(broken, make_bec(0.5), params), error);
}

TEST_CASE("genie counts per index")
{
	{
		const CodeSpec spec = construct_bec_exact(0.5, 4, 0.5);
		SimParams params;
		params.trials = 200;
		const GenieReport clean = simulate_genie(spec, make_bec(0.0), params);
		CHECK(clean.trials == 200);
		REQUIRE(clean.error_counts.size() == 16);
		for (auto count : clean.error_counts)
			CHECK(count == 0);
	}
	{
		const CodeSpec spec = construct_bec_exact(0.5, 6, 0.5);
		const Channel ch = make_bec(0.5);
		SimParams one;
		one.trials = 5000;
		one.seed = 21;
		SimParams four = one;
		four.workers = 4;
		const GenieReport a = simulate_genie(spec, ch, one);
		const GenieReport b = simulate_genie(spec, ch, four);
		REQUIRE(a.error_counts.size() == 64);
		CHECK(a.error_counts == b.error_counts);

		std::vector<bool> frozen(64, false);
		for (auto i : spec.frozen)
			frozen[i] = true;
		for (std::size_t i = 0; i < 64; ++i) {
			CHECK(a.error_counts[i] <= a.trials);
			if (frozen[i])
				CHECK(a.error_counts[i] == 0);
		}
	}
}

TEST_CASE("report json carries the full summary")
{
	const CodeSpec spec = construct_bec_exact(0.5, 6, 0.5);
	SimParams params;
	params.trials = 300;
	params.seed = 9;
	params.workers = 2;
	const SimReport report = simulate(spec, make_bec(0.5), params);

	std::ostringstream out;
	write_sim_report_json(out, report);
	const auto j = nlohmann::json::parse(out.str());
	CHECK(j["schema_version"] == 1);
	CHECK(j["trials"] == 300);
	CHECK(j["block_errors"] == report.block_errors);
	CHECK(j["bit_errors"] == report.bit_errors);
	CHECK(j["bler"] == report.bler);
	CHECK(j["interval_method"] == "wilson");
	REQUIRE(j["bler_interval_95"].size() == 2);
	CHECK(j["bler_interval_95"][0] == report.wilson_low);
	CHECK(j["bler_interval_95"][1] == report.wilson_high);
	CHECK(j["z_bound"] == report.z_bound);
	CHECK(j["seed"] == 9);
	CHECK(j["workers"] == 2);
	CHECK(j["wall_seconds"].is_number());
}
