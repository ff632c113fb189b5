#ifndef PFR_MINCUT_HPP
#define PFR_MINCUT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pfr/flowgraph.hpp"

namespace pfr {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Exact S->DC min cut: value, the crossing edge indices (into
/// FlowGraph::edges) and the source-side assignment per vertex.
struct CutReport {
    Rational value;
    std::vector<int> cut_edges;
    std::vector<bool> source_side;

    std::string to_json(const FlowGraph& g) const;
};

/// Exact max-flow = min-cut via Dinic on integer capacities (denominators
/// cleared; infinite links use the sentinel sum-of-finite + 1).
CutReport max_flow(const FlowGraph& g);

/// Rewrites every edge capacity from its kind: alpha, rho*alpha,
/// (1-rho)*alpha, beta, or infinity.
void set_capacities(FlowGraph& g, const Rational& alpha, const Rational& rho,
                    const Rational& beta);

/// The linear form A*alpha + B a cut evaluates to, derived from the crossing
/// edges' capacity kinds. Any fixed cut upper-bounds the min cut for every
/// alpha, which drives the exact threshold iteration below.
struct CutPiece {
    Rational alpha_coef;
    Rational constant;
};
CutPiece cut_piece(const FlowGraph& g, const CutReport& cut, const Rational& rho,
                   const Rational& beta);

struct OracleOptions {
    int max_rounds = -1;          // -1: ceil(k/r)
    uint64_t budget = 4'000'000;  // pattern x collector pairs
    unsigned jobs = 0;            // 0: hardware concurrency
};

/// All failure patterns of length <= max_rounds, one representative per
/// node-relabeling class (the collector search below covers all k-subsets, so
/// relabeled patterns are redundant). Includes the empty pattern.
const std::vector<FailurePattern>& pattern_catalog(int n, int r, int max_rounds);

struct WorstCaseSearch {
    CutReport worst;
    FailurePattern worst_pattern;
    std::vector<int> worst_dc;
    Rational canonical_value;  // min cut of the canonical graph at the same point
    std::vector<std::string> notes;
    uint64_t graphs_examined = 0;
};

/// Minimum min-cut over every failure pattern (length <= max_rounds) and
/// every k-subset collector, at fixed (alpha, beta).
WorstCaseSearch worst_case_mincut(const SystemParams& params, const Rational& alpha,
                                  const Rational& beta, const OracleOptions& opts = {});

/// Smallest alpha with worst-case min-cut >= M at repair bandwidth gamma
/// (beta = gamma/(n-r)); +infinity when some graph saturates below M.
/// Exact: per graph the min cut is a concave piecewise-linear function of
/// alpha, so iterating "solve the active cut piece for M" converges to the
/// exact rational root in at most one max-flow per piece.
Rational oracle_alpha_star(const SystemParams& params, const Rational& gamma,
                           const OracleOptions& opts = {});

/// Threshold of a single graph, never below `start` (returns `start`
/// unchanged when the graph is already feasible there).
Rational graph_alpha_threshold(FlowGraph g, const Rational& rho, const Rational& beta,
                               const Rational& M, Rational start = Rational(0));

}  // namespace pfr

#endif
