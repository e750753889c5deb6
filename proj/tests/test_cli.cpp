#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include "oracle_helpers.hpp"

using json = nlohmann::json;
using oracle::run_cli;

static const std::string kData = NCC_TEST_DATA_DIR;

TEST_CASE("version flag") {
    auto r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ncc") != std::string::npos);
}

TEST_CASE("stats envelope on a triangle") {
    auto r = run_cli("stats " + kData + "/triangle.edges");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["version"] == "0.1.0");
    CHECK(j["command"] == "stats");
    CHECK(j["seed"].is_null());
    CHECK(j["result"]["n"] == 3);
    CHECK(j["result"]["edges"] == 3);
    CHECK(j["result"]["wedges"] == 3);
    CHECK(j["result"]["triangles"] == 1);
    CHECK(j["result"]["rho_hat"] == 1.0);
    CHECK(j["result"]["cc_hat"] == 1.0);
    CHECK(j["result"]["cc_ratio"] == 3.0);
}

TEST_CASE("stats reads stdin and flags degenerate graphs") {
    auto r = run_cli("stats -", kData + "/matching.edges");
    CHECK(r.exit_code == 2);
    auto j = json::parse(r.out);
    CHECK(j["result"]["rho_hat"].is_null());
    CHECK(j["result"]["wedges"] == 0);
    CHECK(j["result"]["edges"] == 2);
}

TEST_CASE("stats on a missing file fails cleanly") {
    auto r = run_cli("stats /no/such/file.edges");
    CHECK(r.exit_code == 1);
}

TEST_CASE("generated graphs are reproducible and worker independent") {
    const std::string args = "gen er --n 500 --p 0.02 --seed 31";
    auto a = run_cli(args);
    auto b = run_cli(args);
    auto c = run_cli(args + " --workers 8");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.substr(0, 7) == "%n=500\n");
    auto d = run_cli("gen er --n 500 --p 0.02 --seed 32");
    CHECK(a.out != d.out);
}

TEST_CASE("generated graph feeds back into stats") {
    auto gen = run_cli("gen er --n 200 --p 0.1 --seed 7 --out /tmp/cli_er.edges");
    REQUIRE(gen.exit_code == 0);
    auto st = run_cli("stats /tmp/cli_er.edges");
    REQUIRE(st.exit_code == 0);
    auto j = json::parse(st.out);
    CHECK(j["result"]["n"] == 200);
    double rho = j["result"]["rho_hat"].get<double>();
    CHECK(rho > 0.5);
    CHECK(rho < 1.5);
}

TEST_CASE("dcbm generation writes a sidecar") {
    auto r = run_cli(
        "gen dcbm --n 200 --k 3 --r 10 --lambda 15 --seed 5 "
        "--out /tmp/cli_dcbm.edges --sidecar /tmp/cli_dcbm.meta.json");
    REQUIRE(r.exit_code == 0);
    auto meta = json::parse(oracle::read_whole_file("/tmp/cli_dcbm.meta.json"));
    CHECK(meta["command"] == "gen dcbm");
    CHECK(meta["seed"] == 5);
    CHECK(meta["params"]["p"].get<double>() ==
          Catch::Approx(450.0 / 2388.0).epsilon(1e-12));
    CHECK(meta["params"]["q"].get<double>() ==
          Catch::Approx(45.0 / 2388.0).epsilon(1e-12));
    CHECK(meta["result"]["labels"].size() == 200);
    CHECK(meta["result"]["theta"].size() == 200);
    CHECK(meta["result"]["clamped_pairs"] == 0);
}

TEST_CASE("dcbm rejects conflicting parameterizations") {
    auto r = run_cli("gen dcbm --n 100 --k 2 --p 0.2 --q 0.1 --r 4 --lambda 10");
    CHECK(r.exit_code == 1);
    auto missing = run_cli("gen dcbm --n 100 --k 2");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("lcd generation with a raw draft") {
    auto r = run_cli(
        "gen lcd --n 300 --m 2 --seed 9 --out /tmp/cli_lcd.edges "
        "--draft-out /tmp/cli_lcd.draft");
    REQUIRE(r.exit_code == 0);
    auto draft = oracle::read_whole_file("/tmp/cli_lcd.draft");
    std::size_t lines = std::count(draft.begin(), draft.end(), '\n');
    CHECK(lines == 601);  // %n header plus m*n edges
    CHECK(draft.substr(0, 7) == "%n=300\n");
    CHECK(draft.substr(7, 4) == "0 0\n");  // the process opens with a loop
    auto st = run_cli("stats /tmp/cli_lcd.edges");
    auto j = json::parse(st.out);
    CHECK(j["result"]["n"] == 300);
}

TEST_CASE("theory commands return closed forms") {
    auto rho = json::parse(run_cli("theory rho-of-r --r 10 --k 3").out);
    CHECK(rho["result"]["rho"].get<double>() == Catch::Approx(1.84375).epsilon(1e-13));

    auto r = json::parse(run_cli("theory r-of-rho --rho 1.84375 --k 3").out);
    CHECK(r["result"]["r"].get<double>() == Catch::Approx(10.0).epsilon(1e-9));

    auto lcd = json::parse(run_cli("theory lcd-rho --m 3").out);
    CHECK(lcd["result"]["rho"].get<double>() == Catch::Approx(0.28125).epsilon(1e-13));

    auto m = json::parse(run_cli("theory lcd-m --rho 0.28125").out);
    CHECK(m["result"]["m"] == 3);

    auto cls = json::parse(run_cli("theory classify --rho 1.5").out);
    CHECK(cls["result"]["class"] == "community");

    auto pop = json::parse(run_cli("theory dcbm --p 0.25 --q 0.25 --k 4").out);
    CHECK(pop["result"]["rho"].get<double>() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(pop["result"]["cc_hat"].get<double>() == Catch::Approx(0.25).epsilon(1e-12));

    auto bad = run_cli("theory r-of-rho --rho 5 --k 3");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("two-sample test via files") {
    run_cli("gen er --n 300 --p 0.1 --seed 41 --out /tmp/cli_a.edges");
    run_cli("gen er --n 300 --p 0.1 --seed 42 --out /tmp/cli_b.edges");
    auto r = run_cli("test two-sample /tmp/cli_a.edges /tmp/cli_b.edges --k 2 --alpha 0.05");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["result"]["reject"].is_boolean());
    CHECK(j["result"]["statistic"].get<double>() >= 0.0);
    CHECK(j["result"]["threshold"].get<double>() > 0.0);
    CHECK(j["result"]["d1"].get<double>() > 20.0);
    // identical inputs: statistic exactly zero
    auto same = json::parse(
        run_cli("test two-sample /tmp/cli_a.edges /tmp/cli_a.edges --k 2").out);
    CHECK(same["result"]["statistic"] == 0.0);
    CHECK(same["result"]["reject"] == false);
}

TEST_CASE("power experiment from a config file") {
    oracle::write_text("/tmp/cli_power.json", R"({
        "g1": {"n": 150, "k": 3, "r": 1.0, "lambda": 10},
        "g2": {"n": 150, "k": 3, "r": 8.0, "lambda": 10},
        "reps": 5, "alpha": 0.05, "seed": 77
    })");
    auto a = run_cli("test power --config /tmp/cli_power.json");
    auto b = run_cli("test power --config /tmp/cli_power.json --workers 8");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto j = json::parse(a.out);
    CHECK(j["params"]["k"] == 3);
    CHECK(j["result"]["reps"] == 5);
    CHECK(j["result"]["rows"].size() == 5);
    double power = j["result"]["power"].get<double>();
    CHECK(power >= 0.0);
    CHECK(power <= 1.0);
}

TEST_CASE("sampler study output and subset consistency") {
    run_cli("gen er --n 400 --p 0.06 --seed 13 --out /tmp/cli_sample.edges");
    auto full = run_cli(
        "sample /tmp/cli_sample.edges --method all --fraction 0.25 --reps 3 --seed 99");
    REQUIRE(full.exit_code == 0);
    auto j = json::parse(full.out);
    REQUIRE(j["result"]["methods"].size() == 7);
    for (const auto& m : j["result"]["methods"]) {
        CHECK(m["reps"] == 3);
        CHECK(m["defined"].get<int>() + m["undefined"].get<int>() == 3);
        CHECK(m["rho"].size() == 3);
    }
    // a subset run must reproduce the full run's numbers for that method
    auto sub = run_cli(
        "sample /tmp/cli_sample.edges --method rws --fraction 0.25 --reps 3 --seed 99");
    auto js = json::parse(sub.out);
    REQUIRE(js["result"]["methods"].size() == 1);
    CHECK(js["result"]["methods"][0]["rho"] == j["result"]["methods"][2]["rho"]);

    auto csv = run_cli(
        "sample /tmp/cli_sample.edges --method ns,es --fraction 0.25 --reps 2 "
        "--seed 1 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.substr(0, 7) == "method,");
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);
}

TEST_CASE("sampler study can write each subsample") {
    run_cli("gen er --n 100 --p 0.1 --seed 2 --out /tmp/cli_sdir.edges");
    auto r = run_cli(
        "sample /tmp/cli_sdir.edges --method ns --fraction 0.2 --reps 2 --seed 4 "
        "--out-dir /tmp/cli_sdir_out");
    REQUIRE(r.exit_code == 0);
    auto rep0 = oracle::read_whole_file("/tmp/cli_sdir_out/ns_rep0.edges");
    auto rep1 = oracle::read_whole_file("/tmp/cli_sdir_out/ns_rep1.edges");
    CHECK(rep0.find("# node 0 = ") != std::string::npos);
    CHECK(rep0.find("%n=20") != std::string::npos);
    CHECK(rep0 != rep1);
}

TEST_CASE("series over a manifest") {
    auto r = run_cli("series --manifest " + kData + "/series/manifest.txt");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.substr(0, 4) == "tag,");
    CHECK(r.out.find("\nt0,6,4,") != std::string::npos);
    CHECK(r.out.find("\nt1,6,7,") != std::string::npos);
    auto j = json::parse(
        run_cli("series --manifest " + kData + "/series/manifest.txt --format json").out);
    REQUIRE(j["result"]["snapshots"].size() == 2);
    CHECK(j["result"]["snapshots"][0]["tag"] == "t0");
    CHECK(j["result"]["snapshots"][0]["in_out_ratio"].is_null());
    CHECK(j["result"]["snapshots"][1]["in_out_ratio"].is_number());
}

TEST_CASE("cosponsorship network from csv") {
    auto r = run_cli("wpc " + kData + "/bills.csv --threshold 0.3");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "%n=3\ns1 s2\ns1 s3\n");
    auto tight = run_cli("wpc " + kData + "/bills.csv --threshold 0.34");
    CHECK(tight.out == "%n=3\ns1 s2\n");
    auto both = run_cli("wpc " + kData + "/bills.csv --threshold 0.3 --require-both");
    CHECK(both.out == "%n=3\n");
    auto stats = run_cli("wpc " + kData + "/bills.csv --threshold 0.3 --stats");
    auto j = json::parse(stats.out);
    CHECK(j["params"]["senators"] == 3);
    CHECK(j["params"]["bills"] == 2);
    CHECK(j["result"]["edges"] == 2);
}

TEST_CASE("ego networks print annotated subgraphs") {
    auto r = run_cli("ego " + kData + "/friends.edges --center bob");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("# node 0 = ada") != std::string::npos);
    CHECK(r.out.find("%n=3") != std::string::npos);
    auto st = run_cli("ego " + kData + "/friends.edges --center bob --stats");
    auto j = json::parse(st.out);
    CHECK(j["result"]["n"] == 3);
    CHECK(j["result"]["triangles"] == 1);
    auto missing = run_cli("ego " + kData + "/friends.edges --center zoe");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("unknown commands and options fail with a nonzero code") {
    CHECK(run_cli("frobnicate").exit_code != 0);
    CHECK(run_cli("stats").exit_code != 0);  // missing input
    CHECK(run_cli("gen er --n 10").exit_code != 0);  // missing --p
    CHECK(run_cli("sample /tmp/cli_sample.edges --method bogus --fraction 0.2").exit_code != 0);
}
