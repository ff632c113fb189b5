#ifndef PFR_VERIFY_HPP
#define PFR_VERIFY_HPP

#include <string>
#include <vector>

#include "pfr/mincut.hpp"
#include "pfr/tradeoff.hpp"

namespace pfr {

/// Closed form vs graph oracle agreement sweep.
///
/// Every instance is checked on a gamma grid spanning [gamma_mbr, 2*f(0)].
/// Instances the closed form provably does not cover are skipped with a
/// reason rather than failed:
///  - no branch selector z satisfies the threshold assumption;
///  - r > n-k, where collectors mixing never-repaired helpers can cut below
///    every newcomer-only bound;
///  - the printed threshold is internally inconsistent (adjacent branches
///    disagree at their shared boundary), which happens together with the
///    helper-heavy collector cuts the closed form does not model.
/// `strict` turns those labeled skips into failures.
struct SweepOptions {
    int n_min = 2;
    int n_max = 6;
    int k_min = 1;
    int k_max = 0;  // 0: n - 1
    int r_min = 1;
    int r_max = 0;  // 0: min(k, n - 1)
    std::vector<Rational> rho_list = {Rational(0), Rational(1, 4), Rational(1, 2),
                                      Rational(3, 4)};
    int gamma_points = 8;
    uint64_t budget = 4'000'000;
    unsigned jobs = 0;
    bool strict = false;
};

enum class SweepVerdict {
    Pass,
    Fail,
    SkipAssumption,      // Theorem-2 z unsatisfiable
    SkipBudget,          // oracle enumeration over budget
    SkipRegime,          // r > n-k
    SkipInconsistent,    // threshold discontinuous at a branch boundary
};

const char* to_string(SweepVerdict v);

struct SweepRow {
    SystemParams params;
    SweepVerdict verdict;
    std::string note;
    int points_checked = 0;
    int points_equal = 0;
};

SweepRow verify_instance(const SystemParams& params, const SweepOptions& opts);
std::vector<SweepRow> run_sweep(const SweepOptions& opts);

std::string format_sweep_table(const std::vector<SweepRow>& rows);

}  // namespace pfr

#endif
