#ifndef PFR_FLOWGRAPH_HPP
#define PFR_FLOWGRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "pfr/rational.hpp"

namespace pfr {

/// Cache system instance: n nodes, any k reconstruct, r partial failures per
/// repair round, surviving fraction rho (alpha1 = rho * alpha), file size M.
struct SystemParams {
    int n = 0;
    int k = 0;
    int r = 0;
    Rational rho;
    Rational M = Rational(1);

    void validate() const;
    int helpers() const { return n - r; }
    /// Minimum rounds so every collector node can have seen a repair.
    int min_rounds() const { return (k + r - 1) / r; }
};

enum class VertexKind { Source, In, Mid, Out, Failed, Helper, Collector };

const char* to_string(VertexKind k);

/// Storage incarnations follow the time-evolving labeling: the incarnation of
/// node j active after round s carries label s*n + j. Mid/Failed vertices
/// attach to the incarnation being failed; a Helper carries the label of the
/// incarnation it broadcasts from and the round it serves.
struct VertexId {
    VertexKind kind;
    int node_label;
    int round;

    std::string str() const;
};

enum class CapKind { Alpha, Alpha1, AlphaResidual, Beta, Infinite };

/// Directed acyclic capacitated information flow graph.
///
/// Each repair round rewrites the r failing incarnations in place
/// (In->Mid alpha, Mid->Out alpha1, Mid->Failed alpha-alpha1), adds r fresh
/// newcomer pairs fed by the faulty Out and by every helper, and copies each
/// surviving complete node into a fresh pair for the next round. The fresh
/// copies matter: a node's past broadcasts hang off its older incarnations,
/// so a later partial failure cannot retroactively throttle them.
struct FlowGraph {
    struct Edge {
        int from;
        int to;
        Rational cap;  // Rational::infinity() for unconstrained links
        CapKind kind;
    };

    std::vector<VertexId> verts;
    std::vector<Edge> edges;
    int source = -1;
    int collector = -1;
    int n = 0;
    int rounds_done = 0;
    // current incarnation vertex indices, 1-based node -> vertex
    std::vector<int> active_in;
    std::vector<int> active_out;

    int add_vertex(VertexKind kind, int label, int round);
    void add_edge(int from, int to, Rational cap, CapKind kind);
};

/// n storage nodes seeded from the source with infinite links; per-node
/// capacity alpha.
FlowGraph build_initial(const SystemParams& params, const Rational& alpha);

/// One repair round: `failed` is the set of 1-based node indices (size r).
FlowGraph apply_repair_round(const FlowGraph& g, const std::vector<int>& failed,
                             const Rational& alpha, const Rational& alpha1,
                             const Rational& beta);

/// Attach the data collector to a k-subset of active nodes (1-based).
FlowGraph attach_collector(const FlowGraph& g, const std::vector<int>& nodes);

/// A failure history: one r-subset of node indices per round.
struct FailurePattern {
    std::vector<std::vector<int>> rounds;

    bool has_repeated_failure() const;
};

/// Worst-case graph of the achievability proof: ceil(k/r) rounds each
/// repairing fresh nodes (wrapping only when n is too small), collector on
/// nodes 1..k.
FlowGraph canonical_worst_case(const SystemParams& params, const Rational& alpha,
                               const Rational& beta);

/// The canonical failure pattern used by canonical_worst_case.
FailurePattern canonical_pattern(const SystemParams& params);

/// Convenience: initial graph + pattern rounds + collector.
FlowGraph build_graph(const SystemParams& params, const FailurePattern& pattern,
                      const Rational& alpha, const Rational& alpha1, const Rational& beta,
                      const std::vector<int>& dc_nodes);

/// Topological order, or nullopt if a cycle exists.
std::optional<std::vector<int>> topological_order(const FlowGraph& g);

/// Plain-text edge list, one line per edge:
/// "from_kind:label:round → to_kind:label:round cap=<rational|inf>"
std::string export_edges(const FlowGraph& g);

}  // namespace pfr

#endif
