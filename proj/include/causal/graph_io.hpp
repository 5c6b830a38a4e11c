#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "causal/graph.hpp"
#include "causal/util.hpp"

namespace causal {

/// Line-oriented graph format:
///
///   # comment
///   n <count>
///   edge <u> <v>      (directed observable edge, 0-based)
///   latent <u> <v>    (unordered latent pair)
///
/// Writing sorts edges lexicographically and latent pairs by their sorted
/// endpoints, so read/write round-trips are byte stable.
inline CausalGraph read_graph(std::istream& in) {
    CausalGraph g;
    bool saw_n = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto fail = [&](const std::string& msg) {
            throw ParseError("graph file line " + std::to_string(lineno) + ": " + msg);
        };
        if (!saw_n) {
            int count;
            if (kw != "n" || !(ls >> count) || count < 0) fail("expected 'n <count>'");
            g.n = count;
            saw_n = true;
            continue;
        }
        int u, v;
        if (!(ls >> u >> v)) fail("expected two node ids");
        if (u < 0 || u >= g.n || v < 0 || v >= g.n) fail("node id out of range");
        if (u == v) fail("endpoints must differ");
        if (kw == "edge")
            g.add_edge(u, v);
        else if (kw == "latent")
            g.add_latent(u, v);
        else
            fail("unknown keyword '" + kw + "'");
    }
    if (!saw_n) throw ParseError("graph file: missing 'n <count>' line");
    return g;
}

inline void write_graph(std::ostream& out, const CausalGraph& g) {
    out << "n " << g.n << "\n";
    for (const auto& [u, v] : g.edges) out << "edge " << u << " " << v << "\n";
    for (const auto& [u, v] : g.latents) out << "latent " << u << " " << v << "\n";
}

inline CausalGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    return read_graph(in);
}

inline void write_graph_file(const std::string& path, const CausalGraph& g) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    write_graph(out, g);
}

}  // namespace causal
