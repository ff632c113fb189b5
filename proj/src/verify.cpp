#include "pfr/verify.hpp"

#include <algorithm>
#include <sstream>

namespace pfr {

const char* to_string(SweepVerdict v) {
    switch (v) {
        case SweepVerdict::Pass: return "PASS";
        case SweepVerdict::Fail: return "FAIL";
        case SweepVerdict::SkipAssumption: return "SKIP(z-assumption)";
        case SweepVerdict::SkipBudget: return "SKIP(budget)";
        case SweepVerdict::SkipRegime: return "SKIP(r>n-k)";
        case SweepVerdict::SkipInconsistent: return "SKIP(formula-inconsistent)";
    }
    return "?";
}

SweepRow verify_instance(const SystemParams& p, const SweepOptions& opts) {
    SweepRow row;
    row.params = p;
    ThresholdCurve curve;
    try {
        curve = threshold_curve(p);
    } catch (const Thm2AssumptionError& e) {
        row.verdict = SweepVerdict::SkipAssumption;
        row.note = e.what();
        return row;
    }
    OracleOptions oracle_opts;
    oracle_opts.budget = opts.budget;
    oracle_opts.jobs = opts.jobs;

    auto grid = gamma_grid(curve.gamma_mbr, Rational(2) * curve.msr_bandwidth(),
                           opts.gamma_points);
    std::string first_diff;
    for (const auto& g : grid) {
        Rational formula = curve.alpha_star(g);
        Rational oracle;
        try {
            oracle = oracle_alpha_star(p, g, oracle_opts);
        } catch (const BudgetExceeded& e) {
            row.verdict = SweepVerdict::SkipBudget;
            row.note = e.what();
            return row;
        }
        row.points_checked++;
        if (formula == oracle) {
            row.points_equal++;
        } else if (first_diff.empty()) {
            first_diff = "gamma=" + g.str() + ": formula=" + formula.str() +
                         " oracle=" + oracle.str();
        }
    }
    if (row.points_equal == row.points_checked) {
        row.verdict = SweepVerdict::Pass;
        if (p.r > p.n - p.k) row.note = "outside proof regime, matched anyway";
        return row;
    }
    if (!opts.strict) {
        if (p.r > p.n - p.k) {
            row.verdict = SweepVerdict::SkipRegime;
            row.note = first_diff;
            return row;
        }
        auto disc = curve.discontinuities();
        if (!disc.empty()) {
            row.verdict = SweepVerdict::SkipInconsistent;
            row.note = "discontinuous at gamma=" + disc.front().str() + "; " + first_diff;
            return row;
        }
    }
    row.verdict = SweepVerdict::Fail;
    row.note = first_diff;
    return row;
}

std::vector<SweepRow> run_sweep(const SweepOptions& opts) {
    std::vector<SweepRow> rows;
    for (int n = opts.n_min; n <= opts.n_max; n++) {
        int k_hi = opts.k_max ? std::min(opts.k_max, n - 1) : n - 1;
        for (int k = std::max(1, opts.k_min); k <= k_hi; k++) {
            int r_hi = opts.r_max ? opts.r_max : std::min(k, n - 1);
            for (int r = opts.r_min; r <= std::min(r_hi, std::min(k, n - 1)); r++) {
                for (const auto& rho : opts.rho_list) {
                    SystemParams p;
                    p.n = n;
                    p.k = k;
                    p.r = r;
                    p.rho = rho;
                    p.M = Rational(1);
                    rows.push_back(verify_instance(p, opts));
                }
            }
        }
    }
    return rows;
}

std::string format_sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "n k r rho    verdict                    points  note\n";
    int pass = 0, fail = 0, skip = 0;
    for (const auto& row : rows) {
        const auto& p = row.params;
        std::ostringstream key;
        key << p.n << " " << p.k << " " << p.r << " " << p.rho.str();
        std::string k = key.str();
        if (k.size() < 13) k += std::string(13 - k.size(), ' ');
        std::string verdict = to_string(row.verdict);
        if (verdict.size() < 27) verdict += std::string(27 - verdict.size(), ' ');
        os << k << verdict << row.points_equal << "/" << row.points_checked << "     "
           << row.note << "\n";
        if (row.verdict == SweepVerdict::Pass) pass++;
        else if (row.verdict == SweepVerdict::Fail) fail++;
        else skip++;
    }
    os << "summary: " << pass << " pass, " << skip << " skipped, " << fail << " fail ("
       << rows.size() << " instances)\n";
    return os.str();
}

}  // namespace pfr
