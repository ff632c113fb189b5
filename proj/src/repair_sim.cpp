#include "pfr/repair_sim.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pfr/tradeoff.hpp"

namespace pfr {

namespace {

std::vector<uint32_t> combine(const Field& f, const std::vector<const StoredPacket*>& packets,
                              const std::vector<uint32_t>& weights, bool payload) {
    size_t len = payload ? packets[0]->payload.size() : packets[0]->coeff.size();
    std::vector<uint32_t> acc(len, 0);
    for (size_t i = 0; i < packets.size(); i++) {
        const auto& src = payload ? packets[i]->payload : packets[i]->coeff;
        for (size_t j = 0; j < len; j++)
            acc[j] = f.add(acc[j], f.mul(weights[i], src[j]));
    }
    return acc;
}

}  // namespace

CodedSystemState init_system(const SystemParams& params, const Field& field,
                             const std::vector<uint32_t>& file_symbols, int packets_per_node) {
    params.validate();
    if (file_symbols.empty()) throw std::invalid_argument("empty file");
    int t = packets_per_node;
    if (t <= 0) t = static_cast<int>((file_symbols.size() + params.k - 1) / params.k);
    size_t k_sym = static_cast<size_t>(params.k) * t;

    CodedSystemState st;
    st.params = params;
    st.params.M = Rational(static_cast<int64_t>(k_sym));  // file size in symbols
    st.code = make_mds(k_sym, static_cast<size_t>(params.n) * t, field);
    st.placement = Placement{params.n, t};
    st.true_length = file_symbols.size();

    FileSymbols file = shape_file(field, file_symbols, k_sym);
    st.blocks = file.blocks.rows();
    auto packets = encode(file, st.code);
    st.node_store.resize(params.n);
    for (int node = 1; node <= params.n; node++) {
        for (size_t col : st.placement.columns_of(node)) {
            StoredPacket sp;
            sp.coeff = packets[col].coeff;
            sp.payload = packets[col].payload;
            st.node_store[node - 1].push_back(std::move(sp));
        }
    }
    return st;
}

void inject_partial_failure(CodedSystemState& state, const std::vector<int>& nodes,
                            int lost_per_node, const std::vector<std::vector<int>>* slots,
                            std::mt19937_64* rng) {
    if (static_cast<int>(nodes.size()) != state.params.r)
        throw std::invalid_argument("a repair round loses data on exactly r nodes");
    int t = state.packets_per_node();
    // lost count must equal t*(1-rho) so alpha1 = rho*alpha in packet units
    Rational expect = Rational(t) * (Rational(1) - state.params.rho);
    if (Rational(lost_per_node) != expect)
        throw std::invalid_argument("lost_per_node must equal t*(1-rho): choose rho compatible with t");
    if (lost_per_node == 0) return;
    for (size_t i = 0; i < nodes.size(); i++) {
        int node = nodes[i];
        if (node < 1 || node > state.params.n) throw std::out_of_range("node index");
        std::vector<int> chosen;
        if (slots) {
            chosen = slots->at(i);
            if (static_cast<int>(chosen.size()) != lost_per_node)
                throw std::invalid_argument("slot list size mismatch");
        } else {
            if (!rng) throw std::invalid_argument("need explicit slots or an rng");
            std::vector<int> all(t);
            for (int j = 0; j < t; j++) all[j] = j;
            for (int j = 0; j < lost_per_node; j++)
                std::swap(all[j], all[j + (*rng)() % (t - j)]);
            chosen.assign(all.begin(), all.begin() + lost_per_node);
        }
        for (int slot : chosen) {
            StoredPacket& sp = state.node_store[node - 1].at(slot);
            sp.lost = true;
            std::fill(sp.coeff.begin(), sp.coeff.end(), 0);
            std::fill(sp.payload.begin(), sp.payload.end(), 0);
        }
    }
}

bool node_has_losses(const CodedSystemState& state, int node) {
    for (const auto& sp : state.node_store.at(node - 1))
        if (sp.lost) return true;
    return false;
}

AnyKReport verify_any_k(const CodedSystemState& state) {
    const Field& f = state.code.field;
    int n = state.params.n, k = state.params.k;
    std::vector<int> subset(k);
    for (int i = 0; i < k; i++) subset[i] = i + 1;
    for (;;) {
        std::vector<const std::vector<uint32_t>*> rows;
        for (int node : subset)
            for (const auto& sp : state.node_store[node - 1])
                if (!sp.lost) rows.push_back(&sp.coeff);
        FieldMatrix m(f, rows.size(), state.code.k_sym);
        for (size_t i = 0; i < rows.size(); i++)
            for (size_t j = 0; j < state.code.k_sym; j++) m.at(i, j) = (*rows[i])[j];
        if (m.rank() != state.code.k_sym) return {false, subset};
        // next k-subset
        int i = k - 1;
        while (i >= 0 && subset[i] == n - k + i + 1) i--;
        if (i < 0) break;
        subset[i]++;
        for (int j = i + 1; j < k; j++) subset[j] = subset[j - 1] + 1;
    }
    return {true, {}};
}

RepairPlan build_example2_plan(const CodedSystemState& state, int failed_node, uint64_t seed) {
    const SystemParams& p = state.params;
    if (p.n != 4 || p.k != 2 || p.r != 1 || p.rho != Rational(1, 2) ||
        state.packets_per_node() != 4)
        throw std::invalid_argument(
            "explicit plan needs the 4-node, any-2, single-failure, half-loss system with 4 "
            "packets per node");
    const Field& f = state.code.field;
    int t = 4;

    RepairPlan plan;
    plan.failed_node = failed_node;
    plan.seed = seed;
    for (int node = 1; node <= 4; node++)
        if (node != failed_node) plan.senders.push_back(node);
    int o1 = plan.senders[0], o2 = plan.senders[1], o3 = plan.senders[2];

    auto cols_of = [&](int node) { return state.placement.columns_of(node); };
    std::vector<size_t> p1cols = cols_of(failed_node), p2cols = cols_of(o2);
    for (size_t c : cols_of(o1)) p1cols.push_back(c);
    for (size_t c : cols_of(o3)) p2cols.push_back(c);
    FieldMatrix p1 = state.code.generator.select_columns(p1cols);
    FieldMatrix p2 = state.code.generator.select_columns(p2cols);

    std::mt19937_64 rng(seed);
    const int kMaxResamples = 4096;
    for (int attempt = 0; attempt < kMaxResamples; attempt++) {
        plan.resamples = attempt;
        plan.y1.assign(2 * t, 0);
        for (int i = 0; i < t; i++) plan.y1[i] = f.random_element(rng);
        plan.gamma3 = f.random_element(rng);
        plan.gamma4 = f.random_element(rng);
        if (plan.gamma3 == plan.gamma4) continue;

        FieldMatrix y1(f, 2 * t, 1);
        for (int i = 0; i < 2 * t; i++) y1.at(i, 0) = plan.y1[i];
        FieldMatrix b1 = p1.mul(y1);
        FieldMatrix y2 = p2.solve(b1);
        plan.y2.resize(2 * t);
        for (int i = 0; i < 2 * t; i++) plan.y2[i] = y2.at(i, 0);

        // b2 = gamma3*x3 + gamma4*x4 in coefficient space
        FieldMatrix b2(f, 2 * t, 1);
        for (int i = 0; i < 2 * t; i++) {
            uint32_t scale = i < t ? plan.gamma3 : plan.gamma4;
            b2.at(i, 0) = f.mul(scale, y2.at(i, 0));
        }
        b2 = p2.mul(b2);
        FieldMatrix y3 = p1.solve(b2);
        plan.y3.resize(2 * t);
        for (int i = 0; i < 2 * t; i++) plan.y3[i] = y3.at(i, 0);

        plan.recovery_rows = FieldMatrix(f, 2, t);
        for (int i = 0; i < t; i++) {
            plan.recovery_rows.at(0, i) = plan.y1[i];
            plan.recovery_rows.at(1, i) = plan.y3[i];
        }
        bool good = true;
        for (int a = 0; a < t && good; a++)
            for (int b = a + 1; b < t && good; b++) {
                uint32_t det = f.sub(f.mul(plan.recovery_rows.at(0, a), plan.recovery_rows.at(1, b)),
                                     f.mul(plan.recovery_rows.at(0, b), plan.recovery_rows.at(1, a)));
                if (det == 0) good = false;
            }
        if (good) return plan;
    }
    throw std::runtime_error("field too small to sample a universal repair plan");
}

RepairOutcome execute_broadcast_repair(CodedSystemState& state, const RepairPlan& plan) {
    RepairOutcome out;
    out.seed = plan.seed;
    const Field& f = state.code.field;
    int t = state.packets_per_node();
    int failed = plan.failed_node;

    std::vector<int> lost_slots;
    for (int slot = 0; slot < t; slot++)
        if (state.node_store[failed - 1][slot].lost) lost_slots.push_back(slot);
    if (lost_slots.empty()) {
        out.any_k_after = verify_any_k(state).ok;
        return out;  // nothing lost: no transmissions
    }
    if (lost_slots.size() != 2)
        throw std::invalid_argument("the explicit plan repairs exactly two lost packets");
    for (int node : plan.senders)
        if (node_has_losses(state, node))
            throw std::invalid_argument("plan senders must be complete nodes");

    int o1 = plan.senders[0], o2 = plan.senders[1], o3 = plan.senders[2];
    auto packets_of = [&](int node) {
        std::vector<const StoredPacket*> v;
        for (const auto& sp : state.node_store[node - 1]) v.push_back(&sp);
        return v;
    };
    std::vector<uint32_t> w_o1(plan.y3.begin() + t, plan.y3.end());
    std::vector<uint32_t> w_o2(plan.y2.begin(), plan.y2.begin() + t);
    std::vector<uint32_t> w_o3(plan.y2.begin() + t, plan.y2.end());
    auto x2 = combine(f, packets_of(o1), w_o1, true);
    auto x3 = combine(f, packets_of(o2), w_o2, true);
    auto x4 = combine(f, packets_of(o3), w_o3, true);
    out.symbols_broadcast = 3 * state.blocks;  // one packet from each sender

    // eq1: sum_i y1[i] p_i = x3 + x4
    // eq2: sum_i y3[i] p_i = gamma3*x3 + gamma4*x4 - x2
    size_t blocks = state.blocks;
    std::vector<std::vector<uint32_t>> rhs(2, std::vector<uint32_t>(blocks));
    for (size_t b = 0; b < blocks; b++) {
        rhs[0][b] = f.add(x3[b], x4[b]);
        rhs[1][b] = f.sub(f.add(f.mul(plan.gamma3, x3[b]), f.mul(plan.gamma4, x4[b])), x2[b]);
    }
    // subtract the surviving packets' contributions
    for (int slot = 0; slot < t; slot++) {
        const StoredPacket& sp = state.node_store[failed - 1][slot];
        if (sp.lost) continue;
        for (size_t b = 0; b < blocks; b++) {
            rhs[0][b] = f.sub(rhs[0][b], f.mul(plan.recovery_rows.at(0, slot), sp.payload[b]));
            rhs[1][b] = f.sub(rhs[1][b], f.mul(plan.recovery_rows.at(1, slot), sp.payload[b]));
        }
    }
    // residual 2x2 system over the lost pair; nonsingular by the plan invariant
    FieldMatrix m(f, 2, 2);
    for (int eq = 0; eq < 2; eq++)
        for (int j = 0; j < 2; j++) m.at(eq, j) = plan.recovery_rows.at(eq, lost_slots[j]);
    FieldMatrix rhs_m(f, 2, blocks);
    for (size_t b = 0; b < blocks; b++) {
        rhs_m.at(0, b) = rhs[0][b];
        rhs_m.at(1, b) = rhs[1][b];
    }
    FieldMatrix solved = m.solve(rhs_m);

    auto cols = state.placement.columns_of(failed);
    for (int j = 0; j < 2; j++) {
        StoredPacket& sp = state.node_store[failed - 1][lost_slots[j]];
        sp.lost = false;
        sp.payload.resize(blocks);
        for (size_t b = 0; b < blocks; b++) sp.payload[b] = solved.at(j, b);
        sp.coeff.resize(state.code.k_sym);
        for (size_t i = 0; i < state.code.k_sym; i++)
            sp.coeff[i] = state.code.generator.at(i, cols[lost_slots[j]]);
    }
    AnyKReport rep = verify_any_k(state);
    out.any_k_after = rep.ok;
    out.rank_witness = rep.witness;
    return out;
}

RepairOutcome rlnc_repair_round(CodedSystemState& state, int beta_symbols, uint64_t seed,
                                std::string* warning) {
    RepairOutcome out;
    out.seed = seed;
    const Field& f = state.code.field;
    std::vector<int> faulty, complete;
    for (int node = 1; node <= state.params.n; node++)
        (node_has_losses(state, node) ? faulty : complete).push_back(node);

    // feasibility advisory against the closed-form curve (packet units)
    if (warning) {
        warning->clear();
        try {
            Rational gamma = Rational(static_cast<int64_t>(complete.size())) * Rational(beta_symbols);
            Rational need = alpha_star(state.params, gamma);
            if (Rational(state.packets_per_node()) < need)
                *warning = "operating point is below the trade-off curve: alpha=" +
                           std::to_string(state.packets_per_node()) + " < alpha*=" + need.str();
        } catch (const Thm2AssumptionError&) {
            *warning = "trade-off curve unavailable (threshold assumption unsatisfied)";
        }
    }

    std::mt19937_64 rng(seed);
    std::vector<StoredPacket> received;
    for (int node : complete) {
        std::vector<const StoredPacket*> own;
        for (const auto& sp : state.node_store[node - 1])
            if (!sp.lost) own.push_back(&sp);
        for (int b = 0; b < beta_symbols; b++) {
            std::vector<uint32_t> w(own.size());
            for (auto& x : w) x = f.random_element(rng);
            StoredPacket bc;
            bc.coeff = combine(f, own, w, false);
            bc.payload = combine(f, own, w, true);
            received.push_back(std::move(bc));
        }
    }
    out.symbols_broadcast = received.size() * state.blocks;

    for (int node : faulty) {
        std::vector<const StoredPacket*> pool;
        for (const auto& sp : state.node_store[node - 1])
            if (!sp.lost) pool.push_back(&sp);
        for (const auto& bc : received) pool.push_back(&bc);
        for (auto& sp : state.node_store[node - 1]) {
            if (!sp.lost) continue;
            std::vector<uint32_t> w(pool.size());
            for (auto& x : w) x = f.random_element(rng);
            sp.coeff = combine(f, pool, w, false);
            sp.payload = combine(f, pool, w, true);
            sp.lost = false;
        }
    }
    AnyKReport rep = verify_any_k(state);
    out.any_k_after = rep.ok;
    out.rank_witness = rep.witness;
    return out;
}

std::string format_report(const CodedSystemState& state, const RepairOutcome& outcome,
                          const std::string& mode) {
    std::ostringstream os;
    const SystemParams& p = state.params;
    os << "mode: " << mode << "\n";
    os << "params: n=" << p.n << " k=" << p.k << " r=" << p.r << " rho=" << p.rho.str()
       << " M=" << p.M.str() << " symbols (field q=" << state.code.field.order() << ")\n";
    os << "placement: " << state.packets_per_node() << " packets per node, "
       << state.code.n_sym << " coded packets\n";
    os << "seed: " << outcome.seed << "\n";
    os << "bandwidth: " << outcome.symbols_broadcast << " symbols broadcast this round\n";
    os << "any-k: " << (outcome.any_k_after ? "ok" : "FAILED") << "\n";
    if (!outcome.any_k_after) {
        os << "failing subset:";
        for (int node : outcome.rank_witness) os << " " << node;
        os << "\n";
    }
    return os.str();
}

SymbolUnits msr_symbol_units(const SystemParams& params) {
    SystemParams unit = params;
    unit.M = Rational(1);
    ThresholdCurve curve = threshold_curve(unit);
    Rational alpha1 = curve.min_storage();                       // per unit file
    Rational gamma1 = curve.msr_bandwidth();
    Rational lost1 = alpha1 * (Rational(1) - params.rho);
    Rational beta1 = gamma1 / Rational(params.helpers());
    if (gamma1.is_infinite()) throw std::invalid_argument("minimum-storage point is infeasible");
    int64_t m = lcm64(alpha1.den(), lcm64(lost1.den(), beta1.den()));
    SymbolUnits u;
    u.file_symbols = static_cast<int>(m);
    u.packets_per_node = static_cast<int>((alpha1 * Rational(m)).num());
    u.lost_per_node = static_cast<int>((lost1 * Rational(m)).num());
    u.beta_packets = static_cast<int>((beta1 * Rational(m)).num());
    return u;
}

}  // namespace pfr
