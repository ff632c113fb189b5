#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pfr/mincut.hpp"
#include "pfr/repair_sim.hpp"
#include "pfr/tradeoff.hpp"
#include "pfr/verify.hpp"

using namespace pfr;

namespace {

struct ParamFlags {
    int n = 0, helpers = 0, k = 0, r = 0;
    std::string rho = "0", M = "1";

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "total number of cache nodes");
        cmd->add_option("--helpers", helpers, "number of complete (helper) nodes, n - r");
        cmd->add_option("--k", k, "nodes needed to reconstruct the file")->required();
        cmd->add_option("--r", r, "partial failures repaired per round")->required();
        cmd->add_option("--rho", rho, "surviving fraction, rational or decimal (e.g. 1/2 or 0.5)");
        cmd->add_option("--M", M, "file size (rational)");
    }

    SystemParams build() const {
        SystemParams p;
        if ((n == 0) == (helpers == 0))
            throw std::invalid_argument("give exactly one of --n or --helpers");
        p.n = n ? n : helpers + r;
        p.k = k;
        p.r = r;
        p.rho = Rational::parse(rho);
        p.M = Rational::parse(M);
        p.validate();
        return p;
    }
};

std::string render(const Rational& v) {
    if (v.is_infinite()) return "inf";
    return v.str() + " (" + v.decimal() + ")";
}

int cmd_curve(const ParamFlags& flags, int points, const std::string& gamma_min,
              const std::string& gamma_max, const std::string& out_path) {
    SystemParams p = flags.build();
    ThresholdCurve curve = threshold_curve(p);
    Rational lo = gamma_min.empty() ? curve.gamma_mbr : Rational::parse(gamma_min);
    Rational hi = gamma_max.empty() ? Rational(2) * curve.msr_bandwidth()
                                    : Rational::parse(gamma_max);
    if (hi < lo) throw std::invalid_argument("gamma range is empty");
    auto pts = sample_curve(p, gamma_grid(lo, hi, points));
    if (out_path.empty()) {
        write_curve_csv(p, pts, std::cout);
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::invalid_argument("cannot open " + out_path);
        write_curve_csv(p, pts, os);
    }
    return 0;
}

int cmd_point(const ParamFlags& flags, const std::string& gamma, const std::string& alpha) {
    SystemParams p = flags.build();
    if (gamma.empty() == alpha.empty())
        throw std::invalid_argument("give exactly one of --gamma or --alpha");
    TradeoffPoint msr = msr_point(p);
    TradeoffPoint mbr = mbr_point(p);
    std::cout << "msr: alpha=" << render(msr.alpha) << " gamma=" << render(msr.gamma) << "\n";
    std::cout << "mbr: alpha=" << render(mbr.alpha) << " gamma=" << render(mbr.gamma) << "\n";
    if (!gamma.empty()) {
        Rational g = Rational::parse(gamma);
        Rational a = alpha_star(p, g);
        if (a.is_infinite())
            std::cout << "alpha_star(gamma=" << g.str() << ") = infeasible\n";
        else
            std::cout << "alpha_star(gamma=" << g.str() << ") = " << render(a) << "\n";
    } else {
        Rational a = Rational::parse(alpha);
        Rational g = gamma_star(p, a);
        if (g.is_infinite())
            std::cout << "gamma_star(alpha=" << a.str() << ") = infeasible\n";
        else
            std::cout << "gamma_star(alpha=" << a.str() << ") = " << render(g) << "\n";
    }
    return 0;
}

struct SweepConfig {
    SweepOptions opts;
    std::string out;

    void load(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw std::invalid_argument("cannot open config " + path);
        std::string line;
        while (std::getline(is, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                size_t a = s.find_first_not_of(" \t");
                size_t b = s.find_last_not_of(" \t");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
            if (key == "n_min") opts.n_min = std::stoi(val);
            else if (key == "n_max") opts.n_max = std::stoi(val);
            else if (key == "k_min") opts.k_min = std::stoi(val);
            else if (key == "k_max") opts.k_max = std::stoi(val);
            else if (key == "r_min") opts.r_min = std::stoi(val);
            else if (key == "r_max") opts.r_max = std::stoi(val);
            else if (key == "gamma_points") opts.gamma_points = std::stoi(val);
            else if (key == "budget") opts.budget = std::stoull(val);
            else if (key == "jobs") opts.jobs = static_cast<unsigned>(std::stoul(val));
            else if (key == "strict") opts.strict = (val == "1" || val == "true");
            else if (key == "out") out = val;
            else if (key == "rho_list") {
                opts.rho_list.clear();
                std::stringstream ss(val);
                std::string item;
                while (std::getline(ss, item, ','))
                    opts.rho_list.push_back(Rational::parse(trim(item)));
            } else {
                throw std::invalid_argument("unknown config key: " + key);
            }
        }
    }
};

int cmd_verify(const SweepConfig& cfg) {
    std::vector<SweepRow> rows = run_sweep(cfg.opts);
    std::string table = format_sweep_table(rows);
    if (cfg.out.empty()) {
        std::cout << table;
    } else {
        std::ofstream os(cfg.out);
        os << table;
        std::cout << "wrote " << cfg.out << "\n";
    }
    for (const auto& row : rows)
        if (row.verdict == SweepVerdict::Fail) return 2;
    return 0;
}

int cmd_simulate(const std::string& mode, const ParamFlags& flags, uint64_t seed, int trials,
                 int symbols, int failed_node, const std::string& lost_pair) {
    if (mode == "example2") {
        SystemParams p;
        p.n = 4;
        p.k = 2;
        p.r = 1;
        p.rho = Rational(1, 2);
        p.M = Rational(1);
        std::mt19937_64 rng(seed);
        Field field = Field::prime(257);
        std::vector<uint32_t> file(static_cast<size_t>(symbols));
        for (auto& s : file) s = field.random_element(rng);
        CodedSystemState state = init_system(p, field, file, 4);
        std::vector<std::vector<int>> slots;
        if (!lost_pair.empty()) {
            std::stringstream ss(lost_pair);
            std::string item;
            std::vector<int> pair;
            while (std::getline(ss, item, ',')) pair.push_back(std::stoi(item) - 1);
            if (pair.size() != 2) throw std::invalid_argument("--lost wants two packet indices");
            slots.push_back(pair);
        } else {
            std::vector<int> pair{static_cast<int>(rng() % 4), 0};
            do { pair[1] = static_cast<int>(rng() % 4); } while (pair[1] == pair[0]);
            slots.push_back(pair);
        }
        inject_partial_failure(state, {failed_node}, 2, &slots);
        RepairPlan plan = build_example2_plan(state, failed_node, seed);
        RepairOutcome outcome = execute_broadcast_repair(state, plan);
        std::cout << format_report(state, outcome, mode);
        std::cout << "transmissions: " << plan.symbols_sent() << " packets ("
                  << plan.symbols_sent() << "/" << state.code.k_sym << " of M)\n";
        return 0;
    }
    if (mode == "rlnc") {
        SystemParams p = flags.build();
        SymbolUnits units = msr_symbol_units(p);
        int scale = std::max(1, symbols / units.file_symbols);
        Field field = Field::prime(257);
        std::mt19937_64 rng(seed);
        int failures_ok = 0;
        for (int t = 0; t < trials; t++) {
            std::vector<uint32_t> file(static_cast<size_t>(units.file_symbols) * scale);
            for (auto& s : file) s = field.random_element(rng);
            CodedSystemState state =
                init_system(p, field, file, units.packets_per_node * scale);
            std::vector<int> nodes(p.r);
            for (int i = 0; i < p.r; i++) nodes[i] = i + 1;
            inject_partial_failure(state, nodes, units.lost_per_node * scale, nullptr, &rng);
            std::string warning;
            RepairOutcome outcome =
                rlnc_repair_round(state, units.beta_packets * scale, rng(), &warning);
            if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
            if (outcome.any_k_after) failures_ok++;
            if (t == 0) std::cout << format_report(state, outcome, mode);
        }
        std::cout << "trials: " << trials << ", any-k held in " << failures_ok << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown mode: " + mode);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"storage/repair-bandwidth trade-off toolkit for broadcast-repaired caches"};
    app.require_subcommand(1);

    ParamFlags curve_flags, point_flags, sim_flags;
    int curve_points = 50;
    std::string gamma_min, gamma_max, curve_out;
    CLI::App* curve = app.add_subcommand("curve", "emit a trade-off curve as CSV");
    curve_flags.attach(curve);
    curve->add_option("--points", curve_points, "grid size (default 50)");
    curve->add_option("--gamma-min", gamma_min, "grid start (default: minimum bandwidth)");
    curve->add_option("--gamma-max", gamma_max, "grid end (default: 2x the MSR bandwidth)");
    curve->add_option("--out", curve_out, "output file (default stdout)");

    std::string point_gamma, point_alpha;
    CLI::App* point = app.add_subcommand("point", "threshold and corner points for one instance");
    point_flags.attach(point);
    point->add_option("--gamma", point_gamma, "query alpha*(gamma)");
    point->add_option("--alpha", point_alpha, "query gamma*(alpha)");

    SweepConfig sweep;
    std::string config_path;
    CLI::App* verify = app.add_subcommand("verify", "closed form vs graph oracle sweep");
    verify->add_option("--config", config_path, "key=value sweep configuration file");
    verify->add_option("--n-max", sweep.opts.n_max, "largest n (default 6)");
    verify->add_option("--n-min", sweep.opts.n_min, "smallest n (default 2)");
    verify->add_option("--gamma-points", sweep.opts.gamma_points, "grid points per instance");
    verify->add_option("--budget", sweep.opts.budget,
                       "max pattern x collector graphs per oracle call");
    verify->add_option("--jobs", sweep.opts.jobs, "worker threads (default: hardware)");
    verify->add_option("--out", sweep.out, "write the verdict table to a file");
    verify->add_flag("--strict", sweep.opts.strict,
                     "fail instances outside the proven regime instead of skipping");

    std::string sim_mode, sim_lost;
    uint64_t sim_seed = 1;
    int sim_trials = 100, sim_symbols = 8, sim_failed = 1;
    CLI::App* simulate = app.add_subcommand("simulate", "run the repair simulator");
    simulate->add_option("--mode", sim_mode, "example2 | rlnc")->required();
    sim_flags.attach(simulate);
    simulate->get_option("--k")->required(false);
    simulate->get_option("--r")->required(false);
    simulate->add_option("--seed", sim_seed, "rng seed (recorded in the report)");
    simulate->add_option("--trials", sim_trials, "rlnc trials");
    simulate->add_option("--symbols", sim_symbols, "file size in symbols");
    simulate->add_option("--failed-node", sim_failed, "which node fails (example2)");
    simulate->add_option("--lost", sim_lost, "lost packet pair, e.g. 1,2 (example2)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (curve->parsed())
            return cmd_curve(curve_flags, curve_points, gamma_min, gamma_max, curve_out);
        if (point->parsed()) return cmd_point(point_flags, point_gamma, point_alpha);
        if (verify->parsed()) {
            if (!config_path.empty()) sweep.load(config_path);
            return cmd_verify(sweep);
        }
        if (simulate->parsed())
            return cmd_simulate(sim_mode, sim_flags, sim_seed, sim_trials, sim_symbols,
                                sim_failed, sim_lost);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
