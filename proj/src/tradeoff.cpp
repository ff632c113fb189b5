#include "pfr/tradeoff.hpp"

#include <algorithm>

namespace pfr {

namespace {

Rational half(int64_t v) { return Rational(v, 2); }

// Theorem 1 breakpoint: f(i) = 2M(1-rho)(n-r) / [(2k - r(i+1)(1-rho))i + (2k/r)(n-k)]
Rational f_div(const SystemParams& p, int i) {
    if (i < 0) return Rational::infinity();
    Rational one_m_rho = Rational(1) - p.rho;
    Rational num = Rational(2) * p.M * one_m_rho * Rational(p.n - p.r);
    Rational den = (Rational(2 * p.k) - Rational(p.r) * Rational(i + 1) * one_m_rho) * Rational(i) +
                   Rational(2 * p.k, p.r) * Rational(p.n - p.k);
    return num / den;
}

// Branch slope: the bandwidth share of the rounds cut behind the helpers,
// g(i) = sum_{j<i} (n - k + j*r) / (n-r) = (2n - 2k + (i-1)r) * i / (2(n-r)).
// This is the exact inverse of the piecewise capacity; the commonly printed
// form carries an extra factor r that breaks continuity for r > 1.
Rational g_div(const SystemParams& p, int i) {
    return half(2 * p.n - 2 * p.k - p.r + int64_t(i) * p.r) * Rational(i, p.n - p.r);
}

ThresholdCurve curve_div(const SystemParams& p) {
    ThresholdCurve c;
    c.params = p;
    int pieces = p.k / p.r;
    Rational one_m_rho = Rational(1) - p.rho;
    c.segments.push_back({f_div(p, 0), Rational::infinity(), Rational(0), Rational(p.k), "i=0"});
    for (int i = 1; i <= pieces - 1; i++) {
        c.segments.push_back({f_div(p, i), f_div(p, i - 1), g_div(p, i),
                              Rational(p.k) - Rational(int64_t(i) * p.r) * one_m_rho,
                              "i=" + std::to_string(i)});
    }
    c.gamma_mbr = f_div(p, pieces - 1);
    return c;
}

struct Thm2Params {
    int p;       // floor(k/r)
    int k0;      // p*r
    Rational kp; // k' = k*rho + (1-rho)*k0
};

// Non-divisible slope term uses k0 in place of k (same r-normalization).
Rational g_nondiv(const SystemParams& p, const Thm2Params& t, int i) {
    return half(2 * p.n - 2 * t.k0 - p.r + int64_t(i) * p.r) * Rational(i, p.n - p.r);
}

Rational f_nondiv(const SystemParams& p, const Thm2Params& t, int z, int i) {
    if (i < 0) return Rational::infinity();
    Rational one_m_rho = Rational(1) - p.rho;
    if (i <= z - 1) return f_div(p, i);
    Rational num = Rational(2) * p.M * one_m_rho * Rational(p.n - p.r);
    Rational den = (Rational(2) * t.kp - Rational(p.r) * Rational(i + 1) * one_m_rho) * Rational(i) +
                   Rational(2) * t.kp * Rational(p.n - t.k0, p.r) + Rational(p.n - t.k0 - p.r);
    return num / den;
}

Rational f_prime(const SystemParams& p, const Thm2Params& t, int z) {
    Rational one_m_rho = Rational(1) - p.rho;
    if (z == 0) {
        Rational num = p.M * Rational(p.k - t.k0) * Rational(p.n - p.r) * one_m_rho;
        Rational den = t.kp * Rational(p.n - t.k0 - p.r);
        return num / den;
    }
    Rational num = Rational(2) * p.M * Rational(p.n - p.r);
    Rational inner = (Rational(2 * (p.n - t.k0) * (p.k - t.k0 - p.r) + 2 * p.r * p.r, p.k - t.k0) +
                      Rational(int64_t(z - 1) * p.r)) *
                     Rational(z);
    Rational tail = Rational(2 * p.k) * Rational(p.n - t.k0 - p.r) /
                    (Rational(p.k - t.k0) * one_m_rho);
    return num / (inner + tail);
}

ThresholdCurve curve_nondiv_for_z(const SystemParams& p, const Thm2Params& t, int z) {
    ThresholdCurve c;
    c.params = p;
    c.z = z;
    Rational one_m_rho = Rational(1) - p.rho;
    Rational corr = Rational(p.n - t.k0 - p.r, p.n - p.r);
    auto f = [&](int i) { return f_nondiv(p, t, z, i); };
    for (int i = 0; i <= z - 1; i++)
        c.segments.push_back({f(i), f(i - 1), g_nondiv(p, t, i),
                              Rational(p.k) - Rational(int64_t(i) * p.r) * one_m_rho,
                              "i=" + std::to_string(i)});
    Rational fp = f_prime(p, t, z);
    c.segments.push_back({fp, f(z - 1), g_nondiv(p, t, z),
                          Rational(p.k) - Rational(int64_t(z) * p.r) * one_m_rho,
                          "z=" + std::to_string(z)});
    c.segments.push_back({f(z), fp, g_nondiv(p, t, z) + corr,
                          t.kp - Rational(int64_t(z) * p.r) * one_m_rho,
                          "z'=" + std::to_string(z)});
    for (int i = z + 1; i <= t.p - 1; i++)
        c.segments.push_back({f(i), f(i - 1), g_nondiv(p, t, i) + corr,
                              t.kp - Rational(int64_t(i) * p.r) * one_m_rho,
                              "i=" + std::to_string(i)});
    // drop empty ranges (e.g. the plain-z segment when f' is infinite)
    std::vector<CurveSegment> kept;
    for (auto& s : c.segments)
        if (!(s.gamma_lo > s.gamma_hi) && !s.gamma_lo.is_infinite()) kept.push_back(s);
    c.segments = std::move(kept);
    c.gamma_mbr = c.segments.back().gamma_lo;
    return c;
}

ThresholdCurve curve_nondiv(const SystemParams& p) {
    Thm2Params t;
    t.p = p.k / p.r;
    t.k0 = t.p * p.r;
    t.kp = Rational(p.k) * p.rho + (Rational(1) - p.rho) * Rational(t.k0);
    // branch selector z: (n-k0+(z-1)r)/r <= (n-k0-r)/(k-k0) <= (n-k0+zr)/r,
    // z in [1:p-2]; or 0 <= (n-k0-r)/(k-k0) <= (n-k0)/r for z = 0
    Rational q(p.n - t.k0 - p.r, p.k - t.k0);
    std::vector<int> candidates;
    if (!q.is_negative() && q <= Rational(p.n - t.k0, p.r)) candidates.push_back(0);
    for (int z = 1; z <= t.p - 2; z++) {
        if (Rational(p.n - t.k0 + (z - 1) * p.r, p.r) <= q &&
            q <= Rational(p.n - t.k0 + int64_t(z) * p.r, p.r))
            candidates.push_back(z);
    }
    if (candidates.empty())
        throw Thm2AssumptionError("no branch selector z satisfies the threshold assumption for (n=" +
                                  std::to_string(p.n) + ",k=" + std::to_string(p.k) + ",r=" +
                                  std::to_string(p.r) + ")");
    ThresholdCurve first = curve_nondiv_for_z(p, t, candidates[0]);
    for (size_t i = 1; i < candidates.size(); i++) {
        ThresholdCurve other = curve_nondiv_for_z(p, t, candidates[i]);
        std::vector<Rational> probes{first.gamma_mbr, other.gamma_mbr};
        for (const auto& s : first.segments) probes.push_back(s.gamma_lo);
        for (const auto& s : other.segments) probes.push_back(s.gamma_lo);
        size_t np = probes.size();
        for (size_t a = 0; a + 1 < np; a++)
            probes.push_back((probes[a] + probes[a + 1]) / Rational(2));
        for (const auto& g : probes)
            if (!g.is_infinite() && first.alpha_star(g) != other.alpha_star(g))
                throw Thm2AssumptionError("tied branch selectors give different thresholds");
    }
    return first;
}

}  // namespace

ThresholdCurve threshold_curve(const SystemParams& p) {
    p.validate();
    return p.k % p.r == 0 ? curve_div(p) : curve_nondiv(p);
}

Rational ThresholdCurve::alpha_star(const Rational& gamma) const {
    if (gamma.is_negative()) throw std::invalid_argument("gamma must be >= 0");
    if (!gamma.is_infinite() && gamma < gamma_mbr) return Rational::infinity();
    for (const auto& s : segments) {
        if (gamma >= s.gamma_lo)
            return (params.M - s.coef * gamma) / s.denom;
    }
    return Rational::infinity();
}

std::string ThresholdCurve::segment_label(const Rational& gamma) const {
    if (!gamma.is_infinite() && gamma < gamma_mbr) return "infeasible";
    for (const auto& s : segments)
        if (gamma >= s.gamma_lo) return s.label;
    return "infeasible";
}

Rational ThresholdCurve::gamma_star(const Rational& alpha) const {
    if (alpha.is_infinite()) return gamma_mbr;
    Rational best = Rational::infinity();
    for (const auto& s : segments) {
        Rational candidate;
        if (s.coef.is_zero()) {
            if (params.M / s.denom > alpha) continue;
            candidate = s.gamma_lo;
        } else {
            candidate = (params.M - s.denom * alpha) / s.coef;
            if (candidate < s.gamma_lo) candidate = s.gamma_lo;
            if (candidate > s.gamma_hi) continue;
            // the clamped point must actually satisfy alpha*(gamma) <= alpha
            if ((params.M - s.coef * candidate) / s.denom > alpha) continue;
        }
        best = min(best, candidate);
    }
    return best;
}

Rational ThresholdCurve::min_storage() const {
    const CurveSegment& top = segments.front();
    if (!top.coef.is_zero())
        throw std::logic_error("unbounded segment must be constant in gamma");
    return params.M / top.denom;
}

Rational ThresholdCurve::msr_bandwidth() const { return segments.front().gamma_lo; }

std::vector<Rational> ThresholdCurve::discontinuities() const {
    std::vector<Rational> out;
    for (size_t i = 0; i + 1 < segments.size(); i++) {
        const auto& hi = segments[i];
        const auto& lo = segments[i + 1];
        const Rational& g = hi.gamma_lo;
        if (lo.gamma_hi != g) {
            out.push_back(g);
            continue;
        }
        Rational a = (params.M - hi.coef * g) / hi.denom;
        Rational b = (params.M - lo.coef * g) / lo.denom;
        if (a != b) out.push_back(g);
    }
    return out;
}

Rational bound_sum(const SystemParams& p, const Rational& alpha, const Rational& beta) {
    p.validate();
    if (p.k % p.r != 0)
        throw std::invalid_argument("bound_sum requires r | k; use the non-divisible threshold");
    Rational alpha1 = p.rho * alpha;
    Rational total(0);
    for (int s = 1; s <= p.k / p.r; s++) {
        Rational behind = Rational(p.r) * alpha1 + Rational(p.n - int64_t(s) * p.r) * beta;
        Rational after = Rational(p.r) * alpha;
        total += min(behind, after);
    }
    return total;
}

std::vector<Rational> capacity_breakpoints(const SystemParams& p, const Rational& gamma) {
    if (p.k % p.r != 0) throw std::invalid_argument("breakpoints defined for r | k");
    Rational beta = gamma / Rational(p.helpers());
    Rational one_m_rho = Rational(1) - p.rho;
    std::vector<Rational> b;
    for (int s = 0; s <= p.k / p.r; s++)
        b.push_back((Rational(p.n - p.k, p.r) + Rational(s)) * beta / one_m_rho);
    return b;
}

Rational capacity_piecewise(const SystemParams& p, const Rational& alpha, const Rational& gamma) {
    p.validate();
    if (p.k % p.r != 0) throw std::invalid_argument("capacity_piecewise requires r | k");
    if (alpha <= Rational(0)) throw std::invalid_argument("alpha must be positive");
    Rational one_m_rho = Rational(1) - p.rho;
    int pieces = p.k / p.r;
    if (p.rho == Rational(1)) return Rational(p.k) * alpha;  // all breakpoints infinite
    auto b = capacity_breakpoints(p, gamma);
    if (alpha <= b[0]) return Rational(p.k) * alpha;
    Rational beta_part(0);
    for (int i = 1; i <= pieces - 1; i++) {
        beta_part += one_m_rho * Rational(p.r) * b[i - 1];
        if (alpha <= b[i])
            return (Rational(p.k) - Rational(int64_t(i) * p.r) * one_m_rho) * alpha + beta_part;
    }
    beta_part += one_m_rho * Rational(p.r) * b[pieces - 1];
    return beta_part;
}

Rational alpha_star(const SystemParams& p, const Rational& gamma) {
    return threshold_curve(p).alpha_star(gamma);
}

Rational gamma_star(const SystemParams& p, const Rational& alpha) {
    return threshold_curve(p).gamma_star(alpha);
}

Rational msr_bandwidth_closed(const SystemParams& p) {
    return p.M * Rational(p.r) * Rational(p.n - p.r) * (Rational(1) - p.rho) /
           (Rational(p.k) * Rational(p.n - p.k));
}

Rational mbr_bandwidth_closed(const SystemParams& p) {
    Rational num = Rational(2) * p.M * Rational(p.r) * Rational(p.n - p.r) * (Rational(1) - p.rho);
    Rational den = Rational(p.k) * (Rational(2 * p.n) - Rational(p.k) * (Rational(1) - p.rho) -
                                    Rational(p.r) * (Rational(1) + p.rho));
    return num / den;
}

Rational mbr_storage_closed(const SystemParams& p) {
    // g' = g(k/r - 1) with the same r-normalization as the branch slopes
    Rational gp = half(p.k - p.r) *
                  Rational(2 * p.n - p.k - 2 * p.r, static_cast<int64_t>(p.r) * (p.n - p.r));
    Rational denom = Rational(p.k) * p.rho + Rational(p.r) * (Rational(1) - p.rho);
    return (p.M - gp * mbr_bandwidth_closed(p)) / denom;
}

TradeoffPoint msr_point(const SystemParams& p) {
    ThresholdCurve c = threshold_curve(p);
    TradeoffPoint pt{c.min_storage(), c.msr_bandwidth(), "msr"};
    if (p.k % p.r == 0 && p.n > p.k) {
        if (pt.gamma != msr_bandwidth_closed(p) || pt.alpha != p.M / Rational(p.k))
            throw std::logic_error("minimum-storage corner disagrees with its closed form");
    }
    return pt;
}

TradeoffPoint mbr_point(const SystemParams& p) {
    ThresholdCurve c = threshold_curve(p);
    TradeoffPoint pt{c.alpha_star(c.gamma_mbr), c.gamma_mbr, "mbr"};
    if (p.k % p.r == 0 && p.n > p.k) {
        if (pt.gamma != mbr_bandwidth_closed(p) || pt.alpha != mbr_storage_closed(p))
            throw std::logic_error("minimum-bandwidth corner disagrees with its closed form");
    }
    return pt;
}

std::vector<Rational> gamma_grid(const Rational& lo, const Rational& hi, int points) {
    if (points < 1) throw std::invalid_argument("grid needs at least one point");
    std::vector<Rational> g;
    if (points == 1 || lo == hi) {
        g.push_back(lo);
        return g;
    }
    Rational step = (hi - lo) / Rational(points - 1);
    for (int i = 0; i < points; i++) g.push_back(lo + step * Rational(i));
    return g;
}

std::vector<TradeoffPoint> sample_curve(const SystemParams& p,
                                        const std::vector<Rational>& grid) {
    ThresholdCurve c = threshold_curve(p);
    std::vector<TradeoffPoint> out;
    for (const auto& g : grid) {
        Rational a = c.alpha_star(g);
        std::string regime = a.is_infinite() ? "infeasible" : c.segment_label(g);
        if (!a.is_infinite()) {
            if (g == c.msr_bandwidth()) regime = "msr";
            if (g == c.gamma_mbr) regime = "mbr";
        }
        out.push_back({a, g, regime});
    }
    return out;
}

void write_curve_csv(const SystemParams& p, const std::vector<TradeoffPoint>& points,
                     std::ostream& os) {
    os << "gamma,gamma_per_failed_node,alpha,regime,"
          "gamma_dec,gamma_per_failed_node_dec,alpha_dec\n";
    for (const auto& pt : points) {
        Rational per_node = pt.gamma / Rational(p.r);
        os << pt.gamma.str() << ',' << per_node.str() << ',' << pt.alpha.str() << ','
           << pt.regime << ',' << pt.gamma.decimal() << ',' << per_node.decimal() << ','
           << pt.alpha.decimal() << '\n';
    }
}

}  // namespace pfr
