#include "pfr/mincut.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <thread>

#include <json.hpp>

namespace pfr {

namespace {

// ---------------------------------------------------------------- Dinic ----

struct Dinic {
    struct E {
        int to;
        int64_t cap;
        int rev;
    };
    std::vector<std::vector<E>> adj;
    std::vector<int> level, it;

    explicit Dinic(int n) : adj(n), level(n), it(n) {}

    void add(int u, int v, int64_t cap) {
        adj[u].push_back({v, cap, static_cast<int>(adj[v].size())});
        adj[v].push_back({u, 0, static_cast<int>(adj[u].size()) - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const E& e : adj[v]) {
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level[t] >= 0;
    }

    int64_t dfs(int v, int t, int64_t f) {
        if (v == t) return f;
        for (int& i = it[v]; i < static_cast<int>(adj[v].size()); i++) {
            E& e = adj[v][i];
            if (e.cap > 0 && level[v] < level[e.to]) {
                int64_t d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    adj[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    int64_t run(int s, int t) {
        int64_t flow = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            int64_t f;
            while ((f = dfs(s, t, INT64_MAX)) > 0) flow += f;
        }
        return flow;
    }

    std::vector<bool> reachable(int s) const {
        std::vector<bool> vis(adj.size(), false);
        std::queue<int> q;
        vis[s] = true;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const E& e : adj[v]) {
                if (e.cap > 0 && !vis[e.to]) {
                    vis[e.to] = true;
                    q.push(e.to);
                }
            }
        }
        return vis;
    }
};

// topological connectivity: zero-capacity edges still connect
bool original_reachable(const FlowGraph& g, int s, int t) {
    std::vector<std::vector<int>> adj(g.verts.size());
    for (const auto& e : g.edges) adj[e.from].push_back(e.to);
    std::vector<bool> vis(g.verts.size(), false);
    std::queue<int> q;
    vis[s] = true;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == t) return true;
        for (int w : adj[v])
            if (!vis[w]) {
                vis[w] = true;
                q.push(w);
            }
    }
    return false;
}

// ------------------------------------------------------------ combos -------

bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k; i-- > 0;) {
        if (c[i] < n - k + i + 1) {
            c[i]++;
            for (int j = i + 1; j < k; j++) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 1);
    do {
        out.push_back(c);
    } while (next_combination(c, n));
    return out;
}

std::string pattern_key(const FailurePattern& p) {
    std::string s;
    for (const auto& round : p.rounds) {
        for (int j : round) s += static_cast<char>('0' + j);
        s += '|';
    }
    return s;
}

FailurePattern relabel(const FailurePattern& p, const std::vector<int>& perm) {
    FailurePattern q = p;
    for (auto& round : q.rounds) {
        for (int& j : round) j = perm[j];
        std::sort(round.begin(), round.end());
    }
    return q;
}

FailurePattern canonical_form(const FailurePattern& p, int n, int r) {
    if (r == 1) {
        // relabel by order of first appearance
        std::vector<int> map(n + 1, 0);
        int next = 1;
        FailurePattern q = p;
        for (auto& round : q.rounds)
            for (int& j : round) {
                if (!map[j]) map[j] = next++;
                j = map[j];
            }
        return q;
    }
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 1);
    FailurePattern best;
    std::string best_key;
    std::vector<int> perm(n + 1);
    do {
        for (int i = 0; i < n; i++) perm[i + 1] = ids[i];
        FailurePattern q = relabel(p, perm);
        std::string key = pattern_key(q);
        if (best_key.empty() || key < best_key) {
            best_key = key;
            best = q;
        }
    } while (std::next_permutation(ids.begin(), ids.end()));
    return best;
}

struct CatalogKey {
    int n, r, rounds;
    bool operator<(const CatalogKey& o) const {
        return std::tie(n, r, rounds) < std::tie(o.n, o.r, o.rounds);
    }
};

}  // namespace

const std::vector<FailurePattern>& pattern_catalog(int n, int r, int max_rounds) {
    static std::mutex mu;
    static std::map<CatalogKey, std::unique_ptr<std::vector<FailurePattern>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, r, max_rounds}];
    if (slot) return *slot;
    if (r > 1 && n > 8)
        throw BudgetExceeded("pattern canonicalization supports n <= 8 for r > 1");

    auto subsets = k_subsets(n, r);
    auto out = std::make_unique<std::vector<FailurePattern>>();
    out->push_back(FailurePattern{});  // no repairs at all
    std::vector<FailurePattern> frontier = {FailurePattern{}};
    for (int len = 1; len <= max_rounds; len++) {
        std::map<std::string, FailurePattern> next;
        for (const auto& base : frontier) {
            for (const auto& s : subsets) {
                FailurePattern p = base;
                p.rounds.push_back(s);
                FailurePattern c = canonical_form(p, n, r);
                next.emplace(pattern_key(c), c);
            }
        }
        frontier.clear();
        for (auto& [key, p] : next) {
            frontier.push_back(p);
            out->push_back(std::move(p));
        }
    }
    slot = std::move(out);
    return *slot;
}

// --------------------------------------------------------------- max flow --

void set_capacities(FlowGraph& g, const Rational& alpha, const Rational& rho,
                    const Rational& beta) {
    Rational alpha1 = rho * alpha;
    Rational residual = alpha - alpha1;
    for (auto& e : g.edges) {
        switch (e.kind) {
            case CapKind::Alpha: e.cap = alpha; break;
            case CapKind::Alpha1: e.cap = alpha1; break;
            case CapKind::AlphaResidual: e.cap = residual; break;
            case CapKind::Beta: e.cap = beta; break;
            case CapKind::Infinite: e.cap = Rational::infinity(); break;
        }
    }
}

CutReport max_flow(const FlowGraph& g) {
    if (g.collector < 0) throw std::invalid_argument("no collector attached");
    if (!topological_order(g)) throw std::invalid_argument("flow graph has a cycle");

    CutReport report;
    if (!original_reachable(g, g.source, g.collector)) {
        report.value = Rational(0);
        report.source_side.assign(g.verts.size(), true);
        return report;
    }

    // clear denominators
    int64_t lcm = 1;
    for (const auto& e : g.edges)
        if (!e.cap.is_infinite()) lcm = lcm64(lcm, e.cap.den());
    int64_t finite_sum = 0;
    for (const auto& e : g.edges) {
        if (e.cap.is_infinite()) continue;
        if (e.cap.is_negative()) throw std::invalid_argument("negative capacity");
        finite_sum += checked_mul(e.cap.num(), lcm / e.cap.den());
    }
    int64_t sentinel = finite_sum + 1;

    Dinic din(static_cast<int>(g.verts.size()));
    std::vector<std::pair<int, int>> slot(g.edges.size());  // (vertex, offset) of each edge
    for (size_t i = 0; i < g.edges.size(); i++) {
        const auto& e = g.edges[i];
        int64_t cap = e.cap.is_infinite() ? sentinel : checked_mul(e.cap.num(), lcm / e.cap.den());
        slot[i] = {e.from, static_cast<int>(din.adj[e.from].size())};
        din.add(e.from, e.to, cap);
    }

    int64_t flow = din.run(g.source, g.collector);
    report.value = Rational(flow, lcm);
    report.source_side = din.reachable(g.source);
    for (size_t i = 0; i < g.edges.size(); i++) {
        const auto& e = g.edges[i];
        if (report.source_side[e.from] && !report.source_side[e.to]) {
            if (e.cap.is_infinite())
                throw std::logic_error("infinite edge crossed a minimum cut");
            report.cut_edges.push_back(static_cast<int>(i));
        }
    }
    // the crossing capacities must reproduce the flow value exactly
    Rational check(0);
    for (int i : report.cut_edges) check += g.edges[i].cap;
    if (check != report.value) throw std::logic_error("cut/flow mismatch");
    return report;
}

std::string CutReport::to_json(const FlowGraph& g) const {
    nlohmann::ordered_json j;
    j["value"] = value.str();
    j["cut_edges"] = nlohmann::ordered_json::array();
    for (int i : cut_edges) {
        const auto& e = g.edges[i];
        j["cut_edges"].push_back({{"from", g.verts[e.from].str()},
                                  {"to", g.verts[e.to].str()},
                                  {"cap", e.cap.str()}});
    }
    j["source_side"] = nlohmann::ordered_json::array();
    for (size_t v = 0; v < source_side.size(); v++)
        if (source_side[v]) j["source_side"].push_back(g.verts[v].str());
    return j.dump();
}

CutPiece cut_piece(const FlowGraph& g, const CutReport& cut, const Rational& rho,
                   const Rational& beta) {
    int n_alpha = 0, n_alpha1 = 0, n_resid = 0, n_beta = 0;
    for (int i : cut.cut_edges) {
        switch (g.edges[i].kind) {
            case CapKind::Alpha: n_alpha++; break;
            case CapKind::Alpha1: n_alpha1++; break;
            case CapKind::AlphaResidual: n_resid++; break;
            case CapKind::Beta: n_beta++; break;
            case CapKind::Infinite: throw std::logic_error("infinite edge in cut piece");
        }
    }
    CutPiece piece;
    piece.alpha_coef = Rational(n_alpha) + rho * Rational(n_alpha1) +
                       (Rational(1) - rho) * Rational(n_resid);
    piece.constant = beta * Rational(n_beta);
    return piece;
}

Rational graph_alpha_threshold(FlowGraph g, const Rational& rho, const Rational& beta,
                               const Rational& M, Rational start) {
    Rational alpha = std::move(start);
    for (int iter = 0; iter < 500; iter++) {
        set_capacities(g, alpha, rho, beta);
        CutReport cut = max_flow(g);
        if (cut.value >= M) return alpha;
        CutPiece piece = cut_piece(g, cut, rho, beta);
        if (piece.alpha_coef.is_zero()) return Rational::infinity();  // saturates below M
        Rational next = (M - piece.constant) / piece.alpha_coef;
        if (!(next > alpha)) throw std::logic_error("threshold iteration failed to advance");
        alpha = next;
    }
    throw std::logic_error("threshold iteration did not converge");
}

namespace {

void parallel_for(size_t count, unsigned jobs, const std::function<void(size_t)>& fn) {
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = static_cast<unsigned>(std::min<size_t>(jobs, count));
    if (jobs <= 1) {
        for (size_t i = 0; i < count; i++) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned t = 0; t < jobs; t++) {
        pool.emplace_back([&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<std::string> regime_notes(const SystemParams& params, const FailurePattern& witness) {
    std::vector<std::string> notes;
    if (params.r > params.n - params.k)
        notes.push_back("outside proof regime (r > n-k)");
    if (witness.has_repeated_failure())
        notes.push_back("worst case uses a repeated-failure pattern (beyond paper's proof)");
    return notes;
}

}  // namespace

WorstCaseSearch worst_case_mincut(const SystemParams& params, const Rational& alpha,
                                  const Rational& beta, const OracleOptions& opts) {
    params.validate();
    int rounds = opts.max_rounds < 0 ? params.min_rounds() : opts.max_rounds;
    const auto& patterns = pattern_catalog(params.n, params.r, rounds);
    auto collectors = k_subsets(params.n, params.k);
    uint64_t total = static_cast<uint64_t>(patterns.size()) * collectors.size();
    if (total > opts.budget)
        throw BudgetExceeded("worst-case search needs " + std::to_string(total) +
                             " graphs, budget " + std::to_string(opts.budget));

    Rational alpha1 = params.rho * alpha;
    struct Best {
        Rational value = Rational::infinity();
        size_t pattern = 0, dc = 0;
    };
    std::mutex mu;
    Best best;
    parallel_for(patterns.size(), opts.jobs, [&](size_t pi) {
        Best local;
        for (size_t ci = 0; ci < collectors.size(); ci++) {
            FlowGraph g = build_graph(params, patterns[pi], alpha, alpha1, beta, collectors[ci]);
            Rational v = max_flow(g).value;
            if (v < local.value) local = {v, pi, ci};
        }
        std::lock_guard<std::mutex> lock(mu);
        if (local.value < best.value ||
            (local.value == best.value &&
             std::tie(local.pattern, local.dc) < std::tie(best.pattern, best.dc)))
            best = local;
    });

    WorstCaseSearch out;
    out.worst_pattern = patterns[best.pattern];
    out.worst_dc = collectors[best.dc];
    FlowGraph g =
        build_graph(params, out.worst_pattern, alpha, alpha1, beta, out.worst_dc);
    out.worst = max_flow(g);
    out.canonical_value = max_flow(canonical_worst_case(params, alpha, beta)).value;
    out.notes = regime_notes(params, out.worst_pattern);
    out.graphs_examined = total;
    return out;
}

Rational oracle_alpha_star(const SystemParams& params, const Rational& gamma,
                           const OracleOptions& opts) {
    params.validate();
    if (gamma.is_negative()) throw std::invalid_argument("gamma must be >= 0");
    int rounds = opts.max_rounds < 0 ? params.min_rounds() : opts.max_rounds;
    Rational beta = gamma / Rational(params.helpers());
    const auto& patterns = pattern_catalog(params.n, params.r, rounds);
    auto collectors = k_subsets(params.n, params.k);
    uint64_t total = static_cast<uint64_t>(patterns.size()) * collectors.size();
    if (total > opts.budget)
        throw BudgetExceeded("oracle search needs " + std::to_string(total) +
                             " graphs, budget " + std::to_string(opts.budget));

    // Seed with the canonical graph: most other graphs are already feasible
    // at its threshold and cost a single max-flow each.
    Rational best = graph_alpha_threshold(canonical_worst_case(params, Rational(1), beta),
                                          params.rho, beta, params.M);
    if (best.is_infinite()) return best;

    std::mutex mu;
    bool infeasible = false;
    parallel_for(patterns.size(), opts.jobs, [&](size_t pi) {
        Rational start;
        {
            std::lock_guard<std::mutex> lock(mu);
            if (infeasible) return;
            start = best;
        }
        Rational local = start;
        for (const auto& dc : collectors) {
            FlowGraph g = build_graph(params, patterns[pi], Rational(1),
                                      params.rho, beta, dc);
            local = graph_alpha_threshold(std::move(g), params.rho, beta, params.M, local);
            if (local.is_infinite()) break;
        }
        std::lock_guard<std::mutex> lock(mu);
        if (local.is_infinite())
            infeasible = true;
        else if (local > best)
            best = local;
    });
    if (infeasible) return Rational::infinity();
    return best;
}

}  // namespace pfr
