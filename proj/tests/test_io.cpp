#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <ncc/generators.hpp>
#include <ncc/io.hpp>

using namespace ncc;

static LoadedGraph load(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

TEST_CASE("integer edge lists keep literal ids") {
    auto lg = load("# a comment\n0 1\n\n2 3\n1 2\n");
    CHECK_FALSE(lg.symbolic());
    CHECK(lg.graph().num_nodes() == 4);
    CHECK(lg.graph().num_edges() == 3);
    CHECK(lg.resolve("2") == node_t(2));
    CHECK_FALSE(lg.resolve("9").has_value());
    CHECK_FALSE(lg.resolve("x").has_value());
    CHECK(lg.display(3) == "3");
}

TEST_CASE("node count directive pads and validates") {
    auto lg = load("%n=7\n0 1\n");
    CHECK(lg.graph().num_nodes() == 7);
    CHECK(lg.forced_n == 7u);
    CHECK(lg.graph().degree(6) == 0);

    CHECK_THROWS_AS(load("%n=2\n0 5\n"), ParseError);
    CHECK_THROWS_AS(load("%n=3\n%n=3\n0 1\n"), ParseError);
    CHECK_THROWS_AS(load("%m=3\n0 1\n"), ParseError);
    CHECK_THROWS_AS(load("%n=x\n0 1\n"), ParseError);
}

TEST_CASE("named edge lists intern in first-seen order") {
    auto lg = load("alice bob\nbob carol\ncarol alice\n");
    CHECK(lg.symbolic());
    CHECK(lg.graph().num_nodes() == 3);
    CHECK(lg.names == std::vector<std::string>{"alice", "bob", "carol"});
    REQUIRE(lg.resolve("carol").has_value());
    CHECK(*lg.resolve("carol") == 2);
    CHECK(lg.display(0) == "alice");
    CHECK_FALSE(lg.resolve("dan").has_value());
    // one non-integer token switches the whole file to symbolic mode
    auto mixed = load("7 x\nx 7\n");
    CHECK(mixed.symbolic());
    CHECK(mixed.graph().num_nodes() == 2);
    CHECK(mixed.graph().num_edges() == 1);
}

TEST_CASE("edge list parse errors carry line numbers") {
    try {
        load("0 1\n0 1 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line_no == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(load("4294967295 1\n"), ParseError);
}

TEST_CASE("duplicate edges and self-loops are normalized away on read") {
    auto lg = load("0 1\n1 0\n2 2\n");
    CHECK(lg.graph().num_edges() == 1);
    CHECK(lg.build.duplicates_dropped == 1);
    CHECK(lg.build.self_loops_dropped == 1);
}

TEST_CASE("write and read round-trips a graph exactly") {
    auto g = gen_er({60, 0.08, 123});
    std::ostringstream out;
    write_edge_list(out, g);
    auto lg = load(out.str());
    CHECK(lg.graph().num_nodes() == 60);
    CHECK(lg.graph().edge_list() == g.edge_list());
    CHECK(out.str().substr(0, 6) == "%n=60\n");
}

TEST_CASE("write with names round-trips a symbolic graph") {
    auto lg = load("ada bob\nbob cyd\nada cyd\ncyd eve\n");
    std::ostringstream out;
    write_edge_list(out, lg.graph(), &lg.names);
    auto back = load(out.str());
    REQUIRE(back.symbolic());
    CHECK(back.graph().num_edges() == 4);
    for (auto [u, v] : lg.graph().edge_list()) {
        auto bu = back.resolve(lg.display(u));
        auto bv = back.resolve(lg.display(v));
        REQUIRE(bu.has_value());
        REQUIRE(bv.has_value());
        CHECK(back.graph().has_edge(*bu, *bv));
    }
}

TEST_CASE("labels parse, validate coverage and intern") {
    auto lg = load("0 1\n1 2\n");
    std::istringstream ok("0 7\n1 7\n2 9\n");
    auto lab = read_labels(ok, lg);
    CHECK(lab.k == 10);  // literal integer labels
    CHECK(lab.labels == std::vector<std::uint32_t>{7, 7, 9});

    std::istringstream named("0 red\n1 blue\n2 red\n");
    auto lab2 = read_labels(named, lg);
    CHECK(lab2.k == 2);
    CHECK(lab2.labels == std::vector<std::uint32_t>{0, 1, 0});

    std::istringstream missing("0 1\n1 1\n");
    CHECK_THROWS_AS(read_labels(missing, lg), ParseError);
    std::istringstream twice("0 1\n0 2\n1 1\n2 1\n");
    CHECK_THROWS_AS(read_labels(twice, lg), ParseError);
    std::istringstream unknown("0 1\n1 1\n9 1\n");
    CHECK_THROWS_AS(read_labels(unknown, lg), ParseError);
    std::istringstream wide("0 1 2\n");
    CHECK_THROWS_AS(read_labels(wide, lg), ParseError);
}

TEST_CASE("labels resolve symbolic node names") {
    auto lg = load("ada bob\nbob cyd\n");
    std::istringstream in("bob left\nada right\ncyd left\n");
    auto lab = read_labels(in, lg);
    CHECK(lab.k == 2);
    // ada=0 bob=1 cyd=2; left interned first (bob's row)
    CHECK(lab.labels == std::vector<std::uint32_t>{1, 0, 0});
}

TEST_CASE("manifest parsing and path resolution") {
    std::istringstream in(
        "# snapshots\n"
        "t0, a.edges\n"
        "t1, /abs/b.edges, b.labels\n");
    auto entries = read_manifest(in, "/base");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].tag == "t0");
    CHECK(entries[0].edge_path == "/base/a.edges");
    CHECK(entries[0].labels_path.empty());
    CHECK(entries[1].edge_path == "/abs/b.edges");
    CHECK(entries[1].labels_path == "/base/b.labels");

    std::istringstream bad("just-one-field\n");
    CHECK_THROWS_AS(read_manifest(bad, ""), ParseError);
    std::istringstream empty_tag(", x.edges\n");
    CHECK_THROWS_AS(read_manifest(empty_tag, ""), ParseError);
}

TEST_CASE("sponsorship csv grouping, header and dedup") {
    std::istringstream in(
        "sponsor,bill,cosponsor\n"
        "s1,b1,s2\n"
        "s1,b1,s3\n"
        "s1,b1,s2\n"  // duplicate cosponsor row
        "s1,b2,s2\n"
        "s2,b9,s1\n"
        "s3,b3,s3\n"  // self row
        "# trailing comment\n");
    auto data = read_sponsorship_csv(in);
    CHECK(data.n == 3);
    CHECK(data.names == std::vector<std::string>{"s1", "s2", "s3"});
    CHECK(data.self_rows_dropped == 1);
    REQUIRE(data.records.size() == 3);
    CHECK(data.records[0].sponsor == 0);
    CHECK(data.records[0].cosponsors == std::vector<node_t>{1, 2});
    CHECK(data.records[1].cosponsors == std::vector<node_t>{1});
    CHECK(data.records[2].sponsor == 1);

    std::istringstream bad("a,b\n");
    CHECK_THROWS_AS(read_sponsorship_csv(bad), ParseError);
    std::istringstream blank("a,,c\n");
    CHECK_THROWS_AS(read_sponsorship_csv(blank), ParseError);
}

TEST_CASE("same bill name under different sponsors stays separate") {
    std::istringstream in(
        "s1,hr1,s2\n"
        "s2,hr1,s1\n");
    auto data = read_sponsorship_csv(in);
    CHECK(data.records.size() == 2);
}

TEST_CASE("missing files raise an error with the path in it") {
    CHECK_THROWS_AS(read_edge_list_file("/nonexistent/x.edges"), Error);
    try {
        read_edge_list_file("/nonexistent/x.edges");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/nonexistent/x.edges") != std::string::npos);
    }
}
