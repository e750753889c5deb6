#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace ncc {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string_view> split_char(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view tok) {
    if (tok.empty()) return std::nullopt;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

}  // namespace detail

// A graph read from disk together with its id space. For files whose tokens
// are all nonnegative integers the ids are used literally and names is
// empty; otherwise ids are assigned densely in first-seen order and names
// maps them back.
struct LoadedGraph {
    BuildResult build;
    std::vector<std::string> names;
    std::unordered_map<std::string, node_t> index;
    std::optional<std::uint64_t> forced_n;  // value of a %n= directive, if present

    const Graph& graph() const { return build.graph; }
    bool symbolic() const { return !names.empty(); }

    std::optional<node_t> resolve(const std::string& token) const {
        if (symbolic()) {
            auto it = index.find(token);
            if (it == index.end()) return std::nullopt;
            return it->second;
        }
        auto v = detail::parse_u64(token);
        if (!v || *v >= build.graph.num_nodes()) return std::nullopt;
        return static_cast<node_t>(*v);
    }

    std::string display(node_t v) const {
        return symbolic() && v < names.size() ? names[v] : std::to_string(v);
    }
};

// Whitespace-separated edge list: two tokens per line, '#' comment lines, an
// optional %n=<count> directive that fixes the node count (it may only add
// isolated nodes, never cut off seen ids).
inline LoadedGraph read_edge_list(std::istream& in) {
    LoadedGraph lg;
    struct RawEdge {
        std::string a, b;
        std::size_t line;
    };
    std::vector<RawEdge> raw;
    bool all_integer = true;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        if (sv.front() == '%') {
            if (sv.substr(0, 3) != "%n=")
                throw ParseError("unknown directive '" + std::string(sv) + "'", line_no);
            auto v = detail::parse_u64(detail::trim(sv.substr(3)));
            if (!v) throw ParseError("bad node count in directive", line_no);
            if (lg.forced_n) throw ParseError("duplicate %n directive", line_no);
            lg.forced_n = *v;
            continue;
        }
        auto toks = detail::split_ws(sv);
        if (toks.size() != 2)
            throw ParseError("expected two tokens, got " + std::to_string(toks.size()), line_no);
        if (all_integer)
            for (auto t : toks)
                if (!detail::parse_u64(t)) all_integer = false;
        raw.push_back({std::string(toks[0]), std::string(toks[1]), line_no});
    }
    std::vector<edge_pair> edges;
    edges.reserve(raw.size());
    node_t n_hint = 0;
    if (all_integer) {
        std::uint64_t max_id = 0;
        for (const auto& e : raw) {
            auto a = *detail::parse_u64(e.a);
            auto b = *detail::parse_u64(e.b);
            if (a >= std::numeric_limits<node_t>::max() || b >= std::numeric_limits<node_t>::max())
                throw ParseError("node id too large", e.line);
            max_id = std::max({max_id, a, b});
            edges.emplace_back(static_cast<node_t>(a), static_cast<node_t>(b));
        }
        std::uint64_t n = raw.empty() ? 0 : max_id + 1;
        if (lg.forced_n) {
            if (*lg.forced_n < n)
                throw ParseError("%n=" + std::to_string(*lg.forced_n) + " is smaller than 1 + max id " +
                                 std::to_string(max_id));
            n = *lg.forced_n;
        }
        if (n >= std::numeric_limits<node_t>::max()) throw ParseError("node count too large");
        n_hint = static_cast<node_t>(n);
    } else {
        auto intern = [&lg](const std::string& tok) {
            auto [it, fresh] = lg.index.try_emplace(tok, static_cast<node_t>(lg.names.size()));
            if (fresh) lg.names.push_back(tok);
            return it->second;
        };
        for (const auto& e : raw) {
            node_t a = intern(e.a);  // fixed order: arguments would not sequence
            node_t b = intern(e.b);
            edges.emplace_back(a, b);
        }
        std::uint64_t n = lg.names.size();
        if (lg.forced_n) {
            if (*lg.forced_n < n)
                throw ParseError("%n=" + std::to_string(*lg.forced_n) + " is smaller than the " +
                                 std::to_string(n) + " distinct node names seen");
            n = *lg.forced_n;
        }
        if (n >= std::numeric_limits<node_t>::max()) throw ParseError("node count too large");
        n_hint = static_cast<node_t>(n);
    }
    lg.build = build_graph(edges, n_hint);
    return lg;
}

inline LoadedGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return read_edge_list(in);
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Writes a canonical edge list: %n header, then one "u v" line per edge in
// ascending order. Rereading reproduces the graph exactly, isolated nodes
// included.
inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<std::string>* names = nullptr) {
    out << "%n=" << g.num_nodes() << "\n";
    for (node_t u = 0; u < g.num_nodes(); ++u) {
        for (node_t v : g.neighbors(u)) {
            if (v < u) continue;
            if (names)
                out << (*names)[u] << ' ' << (*names)[v] << '\n';
            else
                out << u << ' ' << v << '\n';
        }
    }
}

// Label file: one "node label" pair per line, '#' comments. Every graph node
// must receive exactly one label. Integer label tokens are used literally
// (k = 1 + max); otherwise labels are interned in first-seen order.
inline NodeLabeling read_labels(std::istream& in, const LoadedGraph& lg) {
    node_t n = lg.graph().num_nodes();
    struct RawRow {
        node_t node;
        std::string label;
        std::size_t line;
    };
    std::vector<RawRow> rows;
    std::vector<char> seen(n, 0);
    bool all_integer = true;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto toks = detail::split_ws(sv);
        if (toks.size() != 2)
            throw ParseError("expected two tokens, got " + std::to_string(toks.size()), line_no);
        auto node = lg.resolve(std::string(toks[0]));
        if (!node) throw ParseError("unknown node '" + std::string(toks[0]) + "'", line_no);
        if (seen[*node]) throw ParseError("node '" + std::string(toks[0]) + "' labeled twice", line_no);
        seen[*node] = 1;
        if (all_integer && !detail::parse_u64(toks[1])) all_integer = false;
        rows.push_back({*node, std::string(toks[1]), line_no});
    }
    if (rows.size() != n)
        throw ParseError("labels cover " + std::to_string(rows.size()) + " of " + std::to_string(n) +
                         " nodes");
    NodeLabeling lab;
    lab.labels.resize(n);
    if (all_integer) {
        std::uint64_t max_label = 0;
        for (const auto& r : rows) {
            auto v = *detail::parse_u64(r.label);
            if (v >= std::numeric_limits<std::uint32_t>::max())
                throw ParseError("label too large", r.line);
            max_label = std::max(max_label, v);
            lab.labels[r.node] = static_cast<std::uint32_t>(v);
        }
        lab.k = static_cast<std::uint32_t>(max_label + 1);
    } else {
        std::unordered_map<std::string, std::uint32_t> interned;
        for (const auto& r : rows) {
            auto it = interned.try_emplace(r.label, static_cast<std::uint32_t>(interned.size())).first;
            lab.labels[r.node] = it->second;
        }
        lab.k = static_cast<std::uint32_t>(interned.size());
    }
    return lab;
}

inline NodeLabeling read_labels_file(const std::string& path, const LoadedGraph& lg) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return read_labels(in, lg);
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// One snapshot declaration of a series manifest.
struct ManifestEntry {
    std::string tag;
    std::string edge_path;
    std::string labels_path;  // empty when absent
};

// Manifest: "tag, edge-list-path[, labels-path]" per line, '#' comments.
// Relative paths are resolved against the manifest's directory.
inline std::vector<ManifestEntry> read_manifest(std::istream& in, const std::string& base_dir = "") {
    std::vector<ManifestEntry> out;
    std::string line;
    std::size_t line_no = 0;
    auto resolve_path = [&base_dir](std::string_view p) {
        std::filesystem::path fp{std::string(p)};
        if (!base_dir.empty() && fp.is_relative()) fp = std::filesystem::path(base_dir) / fp;
        return fp.string();
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto parts = detail::split_char(sv, ',');
        if (parts.size() != 2 && parts.size() != 3)
            throw ParseError("expected 'tag, edge-path[, labels-path]'", line_no);
        ManifestEntry e;
        e.tag = std::string(parts[0]);
        e.edge_path = resolve_path(parts[1]);
        if (parts.size() == 3) e.labels_path = resolve_path(parts[2]);
        if (e.tag.empty() || e.edge_path.empty()) throw ParseError("empty manifest field", line_no);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<ManifestEntry> read_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::string dir = std::filesystem::path(path).parent_path().string();
    try {
        return read_manifest(in, dir);
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Sponsorship table and its senator id space.
struct SponsorshipData {
    std::vector<SponsorshipRecord> records;  // one per (sponsor, bill), first-seen order
    std::vector<std::string> names;
    std::uint64_t self_rows_dropped = 0;  // rows listing the sponsor as cosponsor
    node_t n = 0;
};

// CSV with columns sponsor,bill,cosponsor; an optional literal header row is
// skipped. Rows sharing (sponsor, bill) accumulate into one record. Fields
// must be comma-free; there is no quoting.
inline SponsorshipData read_sponsorship_csv(std::istream& in) {
    SponsorshipData data;
    std::unordered_map<std::string, node_t> senators;
    auto intern = [&](std::string_view tok) {
        auto [it, fresh] = senators.try_emplace(std::string(tok), static_cast<node_t>(data.names.size()));
        if (fresh) data.names.emplace_back(tok);
        return it->second;
    };
    std::unordered_map<std::string, std::size_t> record_at;  // sponsor \x1f bill -> index
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto parts = detail::split_char(sv, ',');
        if (parts.size() != 3)
            throw ParseError("expected 'sponsor,bill,cosponsor'", line_no);
        if (first_data_line) {
            first_data_line = false;
            std::string h0(parts[0]), h1(parts[1]), h2(parts[2]);
            if (h0 == "sponsor" && h1 == "bill" && h2 == "cosponsor") continue;
        }
        if (parts[0].empty() || parts[1].empty() || parts[2].empty())
            throw ParseError("empty field", line_no);
        if (parts[0] == parts[2]) {
            ++data.self_rows_dropped;
            continue;
        }
        node_t sponsor = intern(parts[0]);
        node_t cosponsor = intern(parts[2]);
        std::string key = std::string(parts[0]) + '\x1f' + std::string(parts[1]);
        auto [it, fresh] = record_at.try_emplace(key, data.records.size());
        if (fresh) data.records.push_back({sponsor, {}});
        auto& rec = data.records[it->second];
        if (std::find(rec.cosponsors.begin(), rec.cosponsors.end(), cosponsor) == rec.cosponsors.end())
            rec.cosponsors.push_back(cosponsor);
    }
    data.n = static_cast<node_t>(data.names.size());
    return data;
}

inline SponsorshipData read_sponsorship_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return read_sponsorship_csv(in);
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace ncc
