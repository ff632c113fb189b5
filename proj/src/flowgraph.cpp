#include "pfr/flowgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pfr {

void SystemParams::validate() const {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (r < 1 || r > n - 1) throw std::invalid_argument("need 1 <= r <= n-1");
    if (rho.is_negative() || rho > Rational(1)) throw std::invalid_argument("rho must be in [0,1]");
    if (M.is_infinite() || M <= Rational(0)) throw std::invalid_argument("M must be positive and finite");
}

const char* to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Source: return "Source";
        case VertexKind::In: return "In";
        case VertexKind::Mid: return "Mid";
        case VertexKind::Out: return "Out";
        case VertexKind::Failed: return "Failed";
        case VertexKind::Helper: return "Helper";
        case VertexKind::Collector: return "Collector";
    }
    return "?";
}

std::string VertexId::str() const {
    return std::string(to_string(kind)) + ":" + std::to_string(node_label) + ":" +
           std::to_string(round);
}

int FlowGraph::add_vertex(VertexKind kind, int label, int round) {
    verts.push_back({kind, label, round});
    return static_cast<int>(verts.size()) - 1;
}

void FlowGraph::add_edge(int from, int to, Rational cap, CapKind kind) {
    edges.push_back({from, to, std::move(cap), kind});
}

FlowGraph build_initial(const SystemParams& params, const Rational& alpha) {
    // r only constrains repair rounds, so a single-node system still builds
    if (params.n < 1) throw std::invalid_argument("n must be positive");
    if (params.k < 1 || params.k > params.n) throw std::invalid_argument("need 1 <= k <= n");
    if (alpha <= Rational(0) || alpha.is_infinite())
        throw std::invalid_argument("alpha must be positive and finite");
    FlowGraph g;
    g.n = params.n;
    g.active_in.assign(params.n + 1, -1);
    g.active_out.assign(params.n + 1, -1);
    g.source = g.add_vertex(VertexKind::Source, 0, 0);
    for (int j = 1; j <= params.n; j++) {
        int vin = g.add_vertex(VertexKind::In, j, 0);
        int vout = g.add_vertex(VertexKind::Out, j, 0);
        g.add_edge(g.source, vin, Rational::infinity(), CapKind::Infinite);
        g.add_edge(vin, vout, alpha, CapKind::Alpha);
        g.active_in[j] = vin;
        g.active_out[j] = vout;
    }
    return g;
}

FlowGraph apply_repair_round(const FlowGraph& prev, const std::vector<int>& failed,
                             const Rational& alpha, const Rational& alpha1,
                             const Rational& beta) {
    FlowGraph g = prev;
    if (g.collector >= 0) throw std::invalid_argument("cannot repair after collector attached");
    std::set<int> fset(failed.begin(), failed.end());
    if (fset.size() != failed.size()) throw std::invalid_argument("duplicate failed node");
    for (int j : failed)
        if (j < 1 || j > g.n) throw std::invalid_argument("failed node index out of range");
    if (static_cast<int>(fset.size()) >= g.n)
        throw std::invalid_argument("at least one complete node must survive");
    if (alpha1.is_negative() || alpha1 > alpha) throw std::invalid_argument("need 0 <= alpha1 <= alpha");
    if (beta.is_negative() || beta.is_infinite()) throw std::invalid_argument("beta must be finite, >= 0");

    int s = g.rounds_done + 1;
    // rewrite each failing incarnation: In->Mid (alpha), Mid->Out (alpha1),
    // Mid->Failed (alpha - alpha1)
    for (int j : failed) {
        int vin = g.active_in[j];
        int vout = g.active_out[j];
        const VertexId& cur = g.verts[vin];
        int mid = g.add_vertex(VertexKind::Mid, cur.node_label, cur.round);
        int fv = g.add_vertex(VertexKind::Failed, cur.node_label, cur.round);
        bool rewired = false;
        for (auto& e : g.edges) {
            if (e.from == vin && e.to == vout && e.kind == CapKind::Alpha) {
                e.to = mid;
                rewired = true;
                break;
            }
        }
        if (!rewired) throw std::logic_error("active incarnation lost its storage edge");
        g.add_edge(mid, vout, alpha1, CapKind::Alpha1);
        g.add_edge(mid, fv, alpha - alpha1, CapKind::AlphaResidual);
    }
    // helpers: one per complete node, broadcasting beta into this round
    std::vector<int> helper_verts;
    for (int c = 1; c <= g.n; c++) {
        if (fset.count(c)) continue;
        const VertexId& cur = g.verts[g.active_in[c]];
        int h = g.add_vertex(VertexKind::Helper, cur.node_label, s);
        g.add_edge(g.active_out[c], h, beta, CapKind::Beta);
        helper_verts.push_back(h);
    }
    // newcomers for the failed nodes
    for (int j : failed) {
        int vin = g.add_vertex(VertexKind::In, s * g.n + j, s);
        int vout = g.add_vertex(VertexKind::Out, s * g.n + j, s);
        g.add_edge(vin, vout, alpha, CapKind::Alpha);
        g.add_edge(g.active_out[j], vin, Rational::infinity(), CapKind::Infinite);
        for (int h : helper_verts) g.add_edge(h, vin, Rational::infinity(), CapKind::Infinite);
        g.active_in[j] = vin;
        g.active_out[j] = vout;
    }
    // complete nodes are copied into the next round's labels as fresh pairs
    for (int c = 1; c <= g.n; c++) {
        if (fset.count(c)) continue;
        int vin = g.add_vertex(VertexKind::In, s * g.n + c, s);
        int vout = g.add_vertex(VertexKind::Out, s * g.n + c, s);
        g.add_edge(g.active_out[c], vin, Rational::infinity(), CapKind::Infinite);
        g.add_edge(vin, vout, alpha, CapKind::Alpha);
        g.active_in[c] = vin;
        g.active_out[c] = vout;
    }
    g.rounds_done = s;
    return g;
}

FlowGraph attach_collector(const FlowGraph& prev, const std::vector<int>& nodes) {
    FlowGraph g = prev;
    if (g.collector >= 0) throw std::invalid_argument("collector already attached");
    std::set<int> chosen(nodes.begin(), nodes.end());
    if (chosen.size() != nodes.size()) throw std::invalid_argument("duplicate collector node");
    for (int j : nodes)
        if (j < 1 || j > g.n || g.active_out[j] < 0)
            throw std::invalid_argument("collector must attach to active nodes");
    int dc = g.add_vertex(VertexKind::Collector, 0, g.rounds_done);
    for (int j : nodes)
        g.add_edge(g.active_out[j], dc, Rational::infinity(), CapKind::Infinite);
    g.collector = dc;
    return g;
}

bool FailurePattern::has_repeated_failure() const {
    std::set<int> seen;
    for (const auto& round : rounds)
        for (int j : round)
            if (!seen.insert(j).second) return true;
    return false;
}

FailurePattern canonical_pattern(const SystemParams& params) {
    params.validate();
    FailurePattern p;
    int rounds = params.min_rounds();
    for (int s = 1; s <= rounds; s++) {
        std::vector<int> f;
        int lo = (s - 1) * params.r + 1;
        if (lo + params.r - 1 > params.n) lo = params.n - params.r + 1;  // wrap on small n
        for (int j = 0; j < params.r; j++) f.push_back(lo + j);
        p.rounds.push_back(f);
    }
    return p;
}

FlowGraph build_graph(const SystemParams& params, const FailurePattern& pattern,
                      const Rational& alpha, const Rational& alpha1, const Rational& beta,
                      const std::vector<int>& dc_nodes) {
    FlowGraph g = build_initial(params, alpha);
    for (const auto& round : pattern.rounds) {
        if (static_cast<int>(round.size()) != params.r)
            throw std::invalid_argument("each round must fail exactly r nodes");
        g = apply_repair_round(g, round, alpha, alpha1, beta);
    }
    return attach_collector(g, dc_nodes);
}

FlowGraph canonical_worst_case(const SystemParams& params, const Rational& alpha,
                               const Rational& beta) {
    std::vector<int> dc(params.k);
    for (int j = 0; j < params.k; j++) dc[j] = j + 1;
    return build_graph(params, canonical_pattern(params), alpha, params.rho * alpha, beta, dc);
}

std::optional<std::vector<int>> topological_order(const FlowGraph& g) {
    size_t n = g.verts.size();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.from].push_back(e.to);
        indeg[e.to]++;
    }
    std::vector<int> order;
    std::vector<int> stack;
    for (size_t v = 0; v < n; v++)
        if (indeg[v] == 0) stack.push_back(static_cast<int>(v));
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int w : adj[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

std::string export_edges(const FlowGraph& g) {
    std::ostringstream os;
    for (const auto& e : g.edges) {
        os << g.verts[e.from].str() << " → " << g.verts[e.to].str()
           << " cap=" << e.cap.str() << "\n";
    }
    return os.str();
}

}  // namespace pfr
