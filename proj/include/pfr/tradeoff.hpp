#ifndef PFR_TRADEOFF_HPP
#define PFR_TRADEOFF_HPP

#include <ostream>
#include <string>
#include <vector>

#include "pfr/flowgraph.hpp"

namespace pfr {

struct Thm2AssumptionError : std::runtime_error {
    explicit Thm2AssumptionError(const std::string& what) : std::runtime_error(what) {}
};

/// One (alpha, gamma) pair on or off the trade-off; regime names the active
/// branch ("i=2"), a corner ("msr"/"mbr") or "infeasible".
struct TradeoffPoint {
    Rational alpha;
    Rational gamma;
    std::string regime;
};

/// The threshold map gamma -> alpha* as a list of closed segments
/// alpha*(gamma) = (M - coef*gamma) / denom on [gamma_lo, gamma_hi],
/// ordered from the unbounded segment downward. Below gamma_mbr the closed
/// form reports infeasible.
struct CurveSegment {
    Rational gamma_lo;
    Rational gamma_hi;  // +inf on the first segment
    Rational coef;
    Rational denom;
    std::string label;
};

struct ThresholdCurve {
    SystemParams params;
    std::vector<CurveSegment> segments;
    Rational gamma_mbr;
    int z = -1;  // branch selector when r does not divide k

    Rational alpha_star(const Rational& gamma) const;
    Rational gamma_star(const Rational& alpha) const;
    Rational min_storage() const;      // alpha* at unbounded gamma
    Rational msr_bandwidth() const;    // least gamma achieving min_storage
    /// Breakpoints where adjacent segment formulas disagree (exact check).
    /// Empty for every instance the underlying theorems actually cover.
    std::vector<Rational> discontinuities() const;
    std::string segment_label(const Rational& gamma) const;
};

/// Threshold curve for the instance; dispatches on r | k.
/// Throws Thm2AssumptionError when r does not divide k and no branch
/// selector z satisfies the stated assumption.
ThresholdCurve threshold_curve(const SystemParams& params);

/// Round-by-round min-cut sum over the canonical graph, r | k only:
/// sum_{s=1}^{k/r} min{ r*alpha1 + (n - s*r)*beta, r*alpha }.
Rational bound_sum(const SystemParams& params, const Rational& alpha, const Rational& beta);

/// Piecewise-linear capacity C(alpha) at repair bandwidth gamma, r | k only.
Rational capacity_piecewise(const SystemParams& params, const Rational& alpha,
                            const Rational& gamma);
/// Breakpoints b_s, s = 0..k/r (all +inf when rho = 1).
std::vector<Rational> capacity_breakpoints(const SystemParams& params, const Rational& gamma);

Rational alpha_star(const SystemParams& params, const Rational& gamma);
Rational gamma_star(const SystemParams& params, const Rational& alpha);

TradeoffPoint msr_point(const SystemParams& params);
TradeoffPoint mbr_point(const SystemParams& params);

/// Closed forms of the two corner points (r | k).
Rational msr_bandwidth_closed(const SystemParams& params);
Rational mbr_bandwidth_closed(const SystemParams& params);
Rational mbr_storage_closed(const SystemParams& params);

std::vector<TradeoffPoint> sample_curve(const SystemParams& params,
                                        const std::vector<Rational>& gamma_grid);

/// Evenly spaced rational grid over [lo, hi], inclusive.
std::vector<Rational> gamma_grid(const Rational& lo, const Rational& hi, int points);

/// CSV with exact rationals plus decimal twins:
/// gamma,gamma_per_failed_node,alpha,regime,gamma_dec,gamma_per_failed_node_dec,alpha_dec
void write_curve_csv(const SystemParams& params, const std::vector<TradeoffPoint>& points,
                     std::ostream& os);

}  // namespace pfr

#endif
