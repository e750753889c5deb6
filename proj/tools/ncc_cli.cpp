// ncc: command-line front end for the clustering statistic library.
//
// Exit codes: 0 success, 1 I/O, parse or usage failure, 2 degenerate
// statistic (too few nodes, or a vanishing denominator).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <ncc/ncc.hpp>

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

json make_envelope(const std::string& command, std::optional<std::uint64_t> seed, json params) {
    json env;
    env["version"] = kVersion;
    env["command"] = command;
    if (seed)
        env["seed"] = *seed;
    else
        env["seed"] = nullptr;
    env["params"] = std::move(params);
    return env;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ncc::Error("cannot open '" + out_path + "' for writing");
    out << content;
}

void emit_json(const std::string& out_path, const json& j) {
    emit(out_path, j.dump(2) + "\n");
}

json opt_num(std::optional<double> v) {
    return v ? json(*v) : json(nullptr);
}

// Statistics JSON that degrades gracefully: counts are always present,
// normalized values appear when their denominators exist.
json stats_json(const ncc::Graph& g, unsigned workers) {
    auto counts = ncc::count_subgraphs(g, workers);
    json r;
    r["n"] = g.num_nodes();
    r["edges"] = counts.edges;
    r["wedges"] = counts.wedges;
    r["triangles"] = counts.triangles;
    if (g.num_nodes() >= 3) {
        ncc::GraphStats s = ncc::graph_stats(g, workers);
        r["e_hat"] = s.e_hat;
        r["v_hat"] = s.v_hat;
        r["t_hat"] = s.t_hat;
        r["rho_hat"] = opt_num(s.rho_hat);
        r["cc_hat"] = opt_num(s.cc_hat);
        r["cc_ratio"] = opt_num(s.cc_ratio);
    } else {
        double nn = g.num_nodes();
        r["e_hat"] = g.num_nodes() >= 2 ? json(counts.edges / (nn * (nn - 1.0) / 2.0)) : json(nullptr);
        r["v_hat"] = nullptr;
        r["t_hat"] = nullptr;
        r["rho_hat"] = nullptr;
        r["cc_hat"] = nullptr;
        r["cc_ratio"] = nullptr;
    }
    return r;
}

bool stats_degenerate(const json& r) {
    return r["rho_hat"].is_null();
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ncc::Error("cannot parse '" + item + "' as a number");
        }
    }
    return out;
}

struct ThetaFlags {
    std::string kind = "constant";
    std::string values;
    std::string probs;
    double alpha = 4.2;
    double lower = 1.0;
    bool normalize = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--theta", kind, "weight law: constant, discrete or power-law")
            ->check(CLI::IsMember({"constant", "discrete", "power-law"}));
        cmd->add_option("--theta-values", values, "discrete law support, comma separated");
        cmd->add_option("--theta-probs", probs, "discrete law probabilities, comma separated");
        cmd->add_option("--theta-alpha", alpha, "power-law exponent (density ~ x^-alpha)");
        cmd->add_option("--theta-lower", lower, "power-law lower bound");
        cmd->add_flag("--normalize-theta", normalize, "rescale so E[theta^2] = 1");
    }

    ncc::ThetaLaw build() const {
        if (kind == "constant") return ncc::ThetaLaw::constant();
        if (kind == "discrete")
            return ncc::ThetaLaw::discrete(parse_double_list(values), parse_double_list(probs),
                                           normalize);
        return ncc::ThetaLaw::power_law(alpha, lower, normalize);
    }
};

json theta_json(const ncc::ThetaLaw& law) {
    json j;
    switch (law.kind) {
        case ncc::ThetaLaw::Kind::Constant:
            j["kind"] = "constant";
            break;
        case ncc::ThetaLaw::Kind::Discrete:
            j["kind"] = "discrete";
            j["values"] = law.values;
            j["probs"] = law.probs;
            break;
        case ncc::ThetaLaw::Kind::PowerLaw:
            j["kind"] = "power-law";
            j["alpha"] = law.alpha;
            j["lower"] = law.lower;
            break;
    }
    j["normalize_second_moment"] = law.normalize_second_moment;
    j["mean"] = law.mean();
    j["second_moment"] = law.second_moment();
    return j;
}

ncc::ThetaLaw theta_from_json(const nlohmann::json& j) {
    if (j.is_null()) return {};
    std::string kind = j.value("kind", "constant");
    bool normalize = j.value("normalize", j.value("normalize_second_moment", false));
    if (kind == "constant") return ncc::ThetaLaw::constant();
    if (kind == "discrete")
        return ncc::ThetaLaw::discrete(j.at("values").get<std::vector<double>>(),
                                       j.at("probs").get<std::vector<double>>(), normalize);
    if (kind == "power-law")
        return ncc::ThetaLaw::power_law(j.value("alpha", 4.2), j.value("lower", 1.0), normalize);
    throw ncc::Error("unknown theta kind '" + kind + "'");
}

ncc::DcbmParams dcbm_from_json(const nlohmann::json& j) {
    auto n = j.at("n").get<ncc::node_t>();
    auto k = j.value("k", 2u);
    ncc::ThetaLaw theta = j.contains("theta") ? theta_from_json(j.at("theta")) : ncc::ThetaLaw{};
    ncc::DcbmParams par;
    if (j.contains("p")) {
        par.n = n;
        par.k = k;
        par.p = j.at("p").get<double>();
        par.q = j.at("q").get<double>();
        par.theta = theta;
    } else {
        par = ncc::dcbm_from_degree(n, k, j.at("r").get<double>(), j.at("lambda").get<double>(),
                                    theta);
    }
    if (j.contains("pi")) par.pi = j.at("pi").get<std::vector<double>>();
    par.seed = j.value("seed", 0ull);
    par.validate();
    return par;
}

json dcbm_params_json(const ncc::DcbmParams& par) {
    json j;
    j["n"] = par.n;
    j["k"] = par.k;
    if (!par.pi.empty()) j["pi"] = par.pi;
    j["p"] = par.p;
    j["q"] = par.q;
    j["theta"] = theta_json(par.theta);
    return j;
}

// Edge list of a subgraph, annotated with the original identity of each node.
void write_subgraph(std::ostream& out, const ncc::InducedSubgraph& sub, const ncc::LoadedGraph& lg) {
    for (ncc::node_t v = 0; v < sub.graph.num_nodes(); ++v)
        out << "# node " << v << " = " << lg.display(sub.original_ids[v]) << "\n";
    ncc::write_edge_list(out, sub.graph);
}

std::string format_csv_value(std::optional<double> v) {
    if (!v) return "";
    std::ostringstream ss;
    ss.precision(17);
    ss << *v;
    return ss.str();
}

int run(int argc, char** argv) {
    CLI::App app{"normalized clustering statistics for graphs"};
    app.set_version_flag("--version", std::string("ncc ") + kVersion);
    app.require_subcommand(1);
    unsigned workers = 1;
    app.add_option("--workers", workers, "worker threads (results do not depend on this)")
        ->capture_default_str();
    std::string out_path;
    app.add_option("--out", out_path, "output path, '-' for stdout")->capture_default_str();
    int exit_code = 0;

    // stats -----------------------------------------------------------------
    auto* stats_cmd = app.add_subcommand("stats", "subgraph counts and clustering statistics")->fallthrough();
    static std::string stats_input;
    stats_cmd->add_option("input", stats_input, "edge list file, '-' for stdin")->required();
    stats_cmd->callback([&] {
        ncc::LoadedGraph lg;
        if (stats_input == "-")
            lg = ncc::read_edge_list(std::cin);
        else
            lg = ncc::read_edge_list_file(stats_input);
        json result = stats_json(lg.graph(), workers);
        json env = make_envelope("stats", std::nullopt, {{"input", stats_input}});
        env["result"] = result;
        emit_json(out_path, env);
        if (stats_degenerate(result)) exit_code = 2;
    });

    // ego -------------------------------------------------------------------
    auto* ego_cmd = app.add_subcommand("ego", "induced subgraph on a node and its neighbors")->fallthrough();
    static std::string ego_input, ego_center;
    static bool ego_stats = false;
    ego_cmd->add_option("input", ego_input, "edge list file")->required();
    ego_cmd->add_option("--center", ego_center, "center node id or name")->required();
    ego_cmd->add_flag("--stats", ego_stats, "print statistics of the ego network instead of edges");
    ego_cmd->callback([&] {
        ncc::LoadedGraph lg = ncc::read_edge_list_file(ego_input);
        auto center = lg.resolve(ego_center);
        if (!center) throw ncc::Error("node '" + ego_center + "' not found in '" + ego_input + "'");
        ncc::InducedSubgraph sub = ncc::ego_network(lg.graph(), *center);
        if (ego_stats) {
            json result = stats_json(sub.graph, workers);
            json env = make_envelope("ego", std::nullopt,
                                     {{"input", ego_input}, {"center", ego_center}});
            env["result"] = result;
            emit_json(out_path, env);
            if (stats_degenerate(result)) exit_code = 2;
        } else {
            std::ostringstream ss;
            write_subgraph(ss, sub, lg);
            emit(out_path, ss.str());
        }
    });

    // gen -------------------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("gen", "model samplers")->fallthrough();
    gen_cmd->require_subcommand(1);

    auto* er_cmd = gen_cmd->add_subcommand("er", "independent-edge graph")->fallthrough();
    static ncc::node_t er_n = 0;
    static double er_p = 0.0;
    static std::uint64_t er_seed = 0;
    er_cmd->add_option("--n", er_n, "node count")->required();
    er_cmd->add_option("--p", er_p, "edge probability")->required();
    er_cmd->add_option("--seed", er_seed, "rng seed")->capture_default_str();
    er_cmd->callback([&] {
        ncc::Graph g = ncc::gen_er({er_n, er_p, er_seed});
        std::ostringstream ss;
        ncc::write_edge_list(ss, g);
        emit(out_path, ss.str());
    });

    auto* dcbm_cmd = gen_cmd->add_subcommand("dcbm", "degree-corrected block model graph")->fallthrough();
    static ncc::node_t dcbm_n = 0;
    static std::uint32_t dcbm_k = 2;
    static double dcbm_p = -1.0, dcbm_q = -1.0, dcbm_r = -1.0, dcbm_lambda = -1.0;
    static std::string dcbm_pi, dcbm_sidecar;
    static std::uint64_t dcbm_seed = 0;
    static ThetaFlags dcbm_theta;
    dcbm_cmd->add_option("--n", dcbm_n, "node count")->required();
    dcbm_cmd->add_option("--k", dcbm_k, "block count")->required();
    dcbm_cmd->add_option("--p", dcbm_p, "within-block edge probability");
    dcbm_cmd->add_option("--q", dcbm_q, "between-block edge probability");
    dcbm_cmd->add_option("--r", dcbm_r, "within/between ratio (with --lambda)");
    dcbm_cmd->add_option("--lambda", dcbm_lambda, "expected average degree (with --r)");
    dcbm_cmd->add_option("--pi", dcbm_pi, "block probabilities, comma separated");
    dcbm_cmd->add_option("--seed", dcbm_seed, "rng seed")->capture_default_str();
    dcbm_cmd->add_option("--sidecar", dcbm_sidecar, "path for labels/theta JSON");
    dcbm_theta.attach(dcbm_cmd);
    dcbm_cmd->callback([&] {
        ncc::DcbmParams par;
        if (dcbm_p >= 0.0 || dcbm_q >= 0.0) {
            if (dcbm_r >= 0.0 || dcbm_lambda >= 0.0)
                throw ncc::Error("give either --p/--q or --r/--lambda, not both");
            par.n = dcbm_n;
            par.k = dcbm_k;
            par.p = dcbm_p;
            par.q = dcbm_q;
            par.theta = dcbm_theta.build();
        } else {
            if (dcbm_r < 0.0 || dcbm_lambda < 0.0)
                throw ncc::Error("dcbm needs --p/--q or --r/--lambda");
            par = ncc::dcbm_from_degree(dcbm_n, dcbm_k, dcbm_r, dcbm_lambda, dcbm_theta.build());
        }
        if (!dcbm_pi.empty()) par.pi = parse_double_list(dcbm_pi);
        par.seed = dcbm_seed;
        par.validate();
        ncc::DcbmSample sample = ncc::gen_dcbm(par);
        std::ostringstream ss;
        ncc::write_edge_list(ss, sample.graph);
        emit(out_path, ss.str());
        std::string sidecar = dcbm_sidecar;
        if (sidecar.empty() && !out_path.empty() && out_path != "-")
            sidecar = out_path + ".meta.json";
        if (!sidecar.empty()) {
            json env = make_envelope("gen dcbm", par.seed, dcbm_params_json(par));
            env["result"] = {{"labels", sample.labels.labels},
                             {"theta", sample.theta},
                             {"clamped_pairs", sample.clamped_pairs}};
            emit_json(sidecar, env);
        }
    });

    auto* lcd_cmd = gen_cmd->add_subcommand("lcd", "preferential-attachment graph")->fallthrough();
    static ncc::node_t lcd_n = 0;
    static std::uint32_t lcd_m = 1;
    static std::uint64_t lcd_seed = 0;
    static std::string lcd_draft_out;
    lcd_cmd->add_option("--n", lcd_n, "vertex count")->required();
    lcd_cmd->add_option("--m", lcd_m, "edges per vertex")->required();
    lcd_cmd->add_option("--seed", lcd_seed, "rng seed")->capture_default_str();
    lcd_cmd->add_option("--draft-out", lcd_draft_out, "also write the raw multigraph");
    lcd_cmd->callback([&] {
        ncc::LcdSample sample = ncc::gen_lcd({lcd_n, lcd_m, lcd_seed});
        std::ostringstream ss;
        ncc::write_edge_list(ss, sample.graph);
        emit(out_path, ss.str());
        if (!lcd_draft_out.empty()) {
            std::ostringstream ds;
            ds << "%n=" << sample.draft.n << "\n";
            for (auto [u, v] : sample.draft.edges) ds << u << ' ' << v << '\n';
            emit(lcd_draft_out, ds.str());
        }
    });

    // theory ----------------------------------------------------------------
    auto* theory_cmd = app.add_subcommand("theory", "closed-form population values")->fallthrough();
    theory_cmd->require_subcommand(1);

    auto* ror_cmd = theory_cmd->add_subcommand("rho-of-r", "population rho of a block ratio")->fallthrough();
    static double ror_r = 1.0;
    static std::uint32_t ror_k = 2;
    ror_cmd->add_option("--r", ror_r, "within/between ratio")->required();
    ror_cmd->add_option("--k", ror_k, "block count")->required();
    ror_cmd->callback([&] {
        json env = make_envelope("theory rho-of-r", std::nullopt, {{"r", ror_r}, {"k", ror_k}});
        env["result"] = {{"rho", ncc::rho_of_r(ror_r, ror_k)}};
        emit_json(out_path, env);
    });

    auto* rof_cmd = theory_cmd->add_subcommand("r-of-rho", "block ratio with a given rho")->fallthrough();
    static double rof_rho = 1.5;
    static std::uint32_t rof_k = 2;
    rof_cmd->add_option("--rho", rof_rho, "target rho")->required();
    rof_cmd->add_option("--k", rof_k, "block count")->required();
    rof_cmd->callback([&] {
        json env = make_envelope("theory r-of-rho", std::nullopt, {{"rho", rof_rho}, {"k", rof_k}});
        env["result"] = {{"r", ncc::r_of_rho(rof_rho, rof_k)}};
        emit_json(out_path, env);
    });

    auto* lrho_cmd = theory_cmd->add_subcommand("lcd-rho", "limiting rho of m-attachment growth")->fallthrough();
    static std::uint64_t lrho_m = 1;
    lrho_cmd->add_option("--m", lrho_m, "edges per vertex")->required();
    lrho_cmd->callback([&] {
        json env = make_envelope("theory lcd-rho", std::nullopt, {{"m", lrho_m}});
        env["result"] = {{"rho", ncc::lcd_rho_asymptote(lrho_m)}};
        emit_json(out_path, env);
    });

    auto* lm_cmd = theory_cmd->add_subcommand("lcd-m", "attachment count nearest a target rho")->fallthrough();
    static double lm_rho = 0.0;
    lm_cmd->add_option("--rho", lm_rho, "target rho in [0, 0.75)")->required();
    lm_cmd->callback([&] {
        json env = make_envelope("theory lcd-m", std::nullopt, {{"rho", lm_rho}});
        env["result"] = {{"m", ncc::lcd_m_of_rho(lm_rho)}};
        emit_json(out_path, env);
    });

    auto* cls_cmd = theory_cmd->add_subcommand("classify", "coarse model screen from rho")->fallthrough();
    static double cls_rho = 1.0;
    static double cls_hw = 0.1;
    cls_cmd->add_option("--rho", cls_rho, "observed rho")->required();
    cls_cmd->add_option("--er-halfwidth", cls_hw, "half-width of the band around 1")
        ->capture_default_str();
    cls_cmd->callback([&] {
        json env = make_envelope("theory classify", std::nullopt,
                                 {{"rho", cls_rho}, {"er_halfwidth", cls_hw}});
        env["result"] = {{"class", ncc::to_string(ncc::classify_rho(cls_rho, cls_hw))}};
        emit_json(out_path, env);
    });

    auto* pop_cmd = theory_cmd->add_subcommand("dcbm", "population densities of a block model")->fallthrough();
    static double pop_p = 0.0, pop_q = 0.0, pop_mu = 1.0, pop_s = 1.0;
    static std::uint32_t pop_k = 2;
    pop_cmd->add_option("--p", pop_p, "within-block probability")->required();
    pop_cmd->add_option("--q", pop_q, "between-block probability")->required();
    pop_cmd->add_option("--k", pop_k, "block count")->required();
    pop_cmd->add_option("--mean-theta", pop_mu, "E[theta]")->capture_default_str();
    pop_cmd->add_option("--second-moment-theta", pop_s, "E[theta^2]")->capture_default_str();
    pop_cmd->callback([&] {
        ncc::DcbmClosedForm f = ncc::dcbm_population(pop_p, pop_q, pop_k, pop_mu, pop_s);
        json env = make_envelope("theory dcbm", std::nullopt,
                                 {{"p", pop_p},
                                  {"q", pop_q},
                                  {"k", pop_k},
                                  {"mean_theta", pop_mu},
                                  {"second_moment_theta", pop_s}});
        env["result"] = {{"e", f.e},     {"v", f.v},           {"t", f.t},
                         {"r", f.r},     {"rho", f.rho},       {"cc_hat", f.cc_hat},
                         {"cc_ratio", f.cc_ratio}};
        emit_json(out_path, env);
    });

    // test ------------------------------------------------------------------
    auto* test_cmd = app.add_subcommand("test", "hypothesis tests on rho")->fallthrough();
    test_cmd->require_subcommand(1);

    auto* ts_cmd = test_cmd->add_subcommand("two-sample", "same-population test for two graphs")->fallthrough();
    static std::string ts_a, ts_b;
    static std::uint32_t ts_k = 2;
    static double ts_alpha = 0.05;
    ts_cmd->add_option("a", ts_a, "first edge list")->required();
    ts_cmd->add_option("b", ts_b, "second edge list")->required();
    auto* ts_k_opt = ts_cmd->add_option("--k", ts_k, "block-count bound of the alternative");
    ts_cmd->add_option("--alpha", ts_alpha, "test level")->capture_default_str();
    ts_cmd->callback([&] {
        if (ts_k_opt->count() == 0)
            std::cerr << "warning: --k not given; using the conservative default k=2\n";
        ncc::LoadedGraph a = ncc::read_edge_list_file(ts_a);
        ncc::LoadedGraph b = ncc::read_edge_list_file(ts_b);
        ncc::TwoSampleResult r = ncc::two_sample_test(a.graph(), b.graph(), ts_k, ts_alpha, workers);
        json env = make_envelope("test two-sample", std::nullopt,
                                 {{"a", ts_a}, {"b", ts_b}, {"k", ts_k}, {"alpha", ts_alpha}});
        env["result"] = {{"rho1", r.rho1},       {"rho2", r.rho2},           {"d1", r.d1},
                         {"d2", r.d2},           {"statistic", r.statistic}, {"threshold", r.threshold},
                         {"reject", r.reject},   {"se1", opt_num(r.se1)},    {"se2", opt_num(r.se2)}};
        emit_json(out_path, env);
    });

    auto* pw_cmd = test_cmd->add_subcommand("power", "Monte Carlo rejection rate for two models")->fallthrough();
    static std::string pw_config;
    pw_cmd->add_option("--config", pw_config, "JSON experiment description")->required();
    pw_cmd->callback([&] {
        std::ifstream in(pw_config);
        if (!in) throw ncc::Error("cannot open '" + pw_config + "'");
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ncc::ParseError(pw_config + ": " + e.what());
        }
        ncc::DcbmParams g1 = dcbm_from_json(cfg.at("g1"));
        ncc::DcbmParams g2 = dcbm_from_json(cfg.at("g2"));
        auto reps = cfg.value("reps", 100u);
        auto alpha = cfg.value("alpha", 0.05);
        auto k = cfg.value("k", std::max(g1.k, g2.k));
        auto seed = cfg.value("seed", 0ull);
        ncc::PowerResult res = ncc::power_experiment(g1, g2, k, alpha, reps, seed, workers);
        json env = make_envelope("test power", seed,
                                 {{"g1", dcbm_params_json(g1)},
                                  {"g2", dcbm_params_json(g2)},
                                  {"k", k},
                                  {"alpha", alpha},
                                  {"reps", reps}});
        json rows = json::array();
        for (const auto& row : res.rows)
            rows.push_back({{"rho1", row.rho1},
                            {"rho2", row.rho2},
                            {"statistic", row.statistic},
                            {"threshold", row.threshold},
                            {"reject", row.reject}});
        env["result"] = {{"reps", res.reps},
                         {"rejections", res.rejections},
                         {"power", res.power},
                         {"rows", std::move(rows)}};
        emit_json(out_path, env);
    });

    // sample ----------------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "subsampling accuracy study")->fallthrough();
    static std::string sm_input, sm_methods = "all", sm_out_dir, sm_format = "json";
    static double sm_fraction = 0.1, sm_flyback = 0.15, sm_jump = 0.15, sm_forward = 0.7;
    static std::uint32_t sm_reps = 1;
    static std::uint64_t sm_seed = 0;
    sample_cmd->add_option("input", sm_input, "edge list file")->required();
    sample_cmd->add_option("--method", sm_methods,
                           "comma-separated subset of ns,es,rws,rwfs,rwjs,ff,ss or 'all'")
        ->capture_default_str();
    sample_cmd->add_option("--fraction", sm_fraction, "node fraction to keep")->required();
    sample_cmd->add_option("--reps", sm_reps, "independent repetitions")->capture_default_str();
    sample_cmd->add_option("--seed", sm_seed, "master seed")->capture_default_str();
    sample_cmd->add_option("--flyback-p", sm_flyback, "flyback probability")->capture_default_str();
    sample_cmd->add_option("--jump-p", sm_jump, "jump probability")->capture_default_str();
    sample_cmd->add_option("--forward-p", sm_forward, "forest fire geometric parameter")
        ->capture_default_str();
    sample_cmd->add_option("--out-dir", sm_out_dir, "write each subsample's edge list here");
    sample_cmd->add_option("--format", sm_format, "summary format")
        ->check(CLI::IsMember({"json", "csv"}));
    sample_cmd->callback([&] {
        ncc::LoadedGraph lg = ncc::read_edge_list_file(sm_input);
        std::vector<ncc::SampleMethod> methods;
        if (sm_methods == "all") {
            auto all = ncc::all_sample_methods();
            methods.assign(all.begin(), all.end());
        } else {
            std::stringstream ss(sm_methods);
            std::string item;
            while (std::getline(ss, item, ',')) methods.push_back(ncc::parse_sample_method(item));
        }
        std::vector<ncc::SampleSpec> specs;
        for (ncc::SampleMethod m : methods) {
            ncc::SampleSpec spec;
            spec.method = m;
            spec.fraction = sm_fraction;
            spec.flyback_p = sm_flyback;
            spec.jump_p = sm_jump;
            spec.forward_p = sm_forward;
            // keyed by the method itself, so a subset run matches the full run
            spec.seed = ncc::derive_seed(sm_seed, static_cast<std::uint64_t>(m));
            specs.push_back(spec);
        }
        ncc::SamplerStudy study = ncc::evaluate_samplers(lg.graph(), specs, sm_reps, workers);
        if (!sm_out_dir.empty()) {
            std::filesystem::create_directories(sm_out_dir);
            for (const auto& spec : specs) {
                for (std::uint32_t rep = 0; rep < sm_reps; ++rep) {
                    ncc::SampleSpec one = spec;
                    one.seed = ncc::derive_seed(spec.seed, rep);
                    ncc::InducedSubgraph sub = ncc::sample_subgraph(lg.graph(), one);
                    std::string path = sm_out_dir + "/" + ncc::to_string(spec.method) + "_rep" +
                                       std::to_string(rep) + ".edges";
                    std::ofstream out(path);
                    if (!out) throw ncc::Error("cannot open '" + path + "' for writing");
                    write_subgraph(out, sub, lg);
                }
            }
        }
        json params = {{"input", sm_input},     {"fraction", sm_fraction}, {"reps", sm_reps},
                       {"flyback_p", sm_flyback}, {"jump_p", sm_jump},     {"forward_p", sm_forward}};
        if (sm_format == "csv") {
            std::ostringstream ss;
            ss << "method,fraction,reps,defined,undefined,mean,sd,bias,rho_full\n";
            for (const auto& m : study.methods) {
                ss << ncc::to_string(m.method) << ',' << m.fraction << ',' << m.reps << ','
                   << m.defined << ',' << m.undefined << ',' << format_csv_value(m.mean) << ','
                   << format_csv_value(m.sd) << ',' << format_csv_value(m.bias) << ','
                   << format_csv_value(study.rho_full) << '\n';
            }
            emit(out_path, ss.str());
        } else {
            json env = make_envelope("sample", sm_seed, params);
            json methods_json = json::array();
            for (const auto& m : study.methods) {
                json rho = json::array();
                for (const auto& r : m.rho) rho.push_back(opt_num(r));
                methods_json.push_back({{"method", ncc::to_string(m.method)},
                                        {"fraction", m.fraction},
                                        {"reps", m.reps},
                                        {"defined", m.defined},
                                        {"undefined", m.undefined},
                                        {"mean", opt_num(m.mean)},
                                        {"sd", opt_num(m.sd)},
                                        {"bias", opt_num(m.bias)},
                                        {"rho", std::move(rho)}});
            }
            env["result"] = {{"rho_full", opt_num(study.rho_full)},
                             {"methods", std::move(methods_json)}};
            emit_json(out_path, env);
        }
    });

    // series ----------------------------------------------------------------
    auto* series_cmd = app.add_subcommand("series", "statistics over a manifest of snapshots")->fallthrough();
    static std::string se_manifest, se_format = "csv";
    series_cmd->add_option("--manifest", se_manifest, "snapshot manifest file")->required();
    series_cmd->add_option("--format", se_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    series_cmd->callback([&] {
        auto entries = ncc::read_manifest_file(se_manifest);
        std::vector<ncc::Snapshot> snaps;
        for (const auto& e : entries) {
            ncc::LoadedGraph lg = ncc::read_edge_list_file(e.edge_path);
            ncc::Snapshot snap;
            snap.tag = e.tag;
            snap.graph = lg.graph();
            if (!e.labels_path.empty()) snap.labels = ncc::read_labels_file(e.labels_path, lg);
            snaps.push_back(std::move(snap));
        }
        auto rows = ncc::series_stats(snaps, workers);
        if (se_format == "csv") {
            std::ostringstream ss;
            ss << "tag,n,edges,rho_hat,cc_hat,in_out_ratio\n";
            for (const auto& r : rows) {
                ss << r.tag << ',' << r.n << ',' << r.edges << ',' << format_csv_value(r.rho_hat)
                   << ',' << format_csv_value(r.cc_hat) << ',' << format_csv_value(r.in_out_ratio)
                   << '\n';
            }
            emit(out_path, ss.str());
        } else {
            json env = make_envelope("series", std::nullopt, {{"manifest", se_manifest}});
            json jrows = json::array();
            for (const auto& r : rows)
                jrows.push_back({{"tag", r.tag},
                                 {"n", r.n},
                                 {"edges", r.edges},
                                 {"rho_hat", opt_num(r.rho_hat)},
                                 {"cc_hat", opt_num(r.cc_hat)},
                                 {"in_out_ratio", opt_num(r.in_out_ratio)}});
            env["result"] = {{"snapshots", std::move(jrows)}};
            emit_json(out_path, env);
        }
    });

    // wpc -------------------------------------------------------------------
    auto* wpc_cmd = app.add_subcommand("wpc", "cosponsorship network from a sponsorship table")->fallthrough();
    static std::string wpc_input;
    static double wpc_threshold = 0.1;
    static bool wpc_both = false, wpc_stats = false;
    wpc_cmd->add_option("input", wpc_input, "CSV with sponsor,bill,cosponsor rows")->required();
    wpc_cmd->add_option("--threshold", wpc_threshold, "propensity cutoff")->capture_default_str();
    wpc_cmd->add_flag("--require-both", wpc_both, "connect only when both directions clear");
    wpc_cmd->add_flag("--stats", wpc_stats, "print network statistics instead of edges");
    wpc_cmd->callback([&] {
        ncc::SponsorshipData data = ncc::read_sponsorship_csv_file(wpc_input);
        ncc::WpcOptions opt;
        opt.threshold = wpc_threshold;
        opt.require_both_directions = wpc_both;
        opt.n = data.n;
        ncc::Graph g = ncc::build_wpc_network(data.records, opt);
        if (wpc_stats) {
            json result = stats_json(g, workers);
            json env = make_envelope("wpc", std::nullopt,
                                     {{"input", wpc_input},
                                      {"threshold", wpc_threshold},
                                      {"require_both", wpc_both},
                                      {"senators", data.n},
                                      {"bills", data.records.size()},
                                      {"self_rows_dropped", data.self_rows_dropped}});
            env["result"] = result;
            emit_json(out_path, env);
            if (stats_degenerate(result)) exit_code = 2;
        } else {
            std::ostringstream ss;
            ncc::write_edge_list(ss, g, &data.names);
            emit(out_path, ss.str());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ncc::DegenerateStatistic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ncc::DegenerateGraph& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
