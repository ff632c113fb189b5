#ifndef PFR_REPAIR_SIM_HPP
#define PFR_REPAIR_SIM_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pfr/flowgraph.hpp"
#include "pfr/mds.hpp"

namespace pfr {

/// A stored packet: coefficient vector over the message space plus payload
/// symbols (one per file block). `lost` marks erased content.
struct StoredPacket {
    std::vector<uint32_t> coeff;
    std::vector<uint32_t> payload;
    bool lost = false;
};

/// Live coded cache: n nodes each holding t packets of the placed MDS code.
struct CodedSystemState {
    SystemParams params;
    MdsCode code;
    Placement placement;
    std::vector<std::vector<StoredPacket>> node_store;  // [node-1][slot]
    size_t true_length = 0;
    size_t blocks = 0;

    int packets_per_node() const { return placement.packets_per_node; }
};

/// MDS-encode the file and place columns contiguously on the n nodes.
/// packets_per_node defaults to ceil(file / k) so that k nodes hold exactly
/// one decodable set.
CodedSystemState init_system(const SystemParams& params, const Field& field,
                             const std::vector<uint32_t>& file_symbols,
                             int packets_per_node = 0);

/// Erase `lost_per_node` packets on each listed node; exact slots may be given
/// per node (same order as `nodes`), otherwise they are drawn from rng.
void inject_partial_failure(CodedSystemState& state, const std::vector<int>& nodes,
                            int lost_per_node,
                            const std::vector<std::vector<int>>* slots = nullptr,
                            std::mt19937_64* rng = nullptr);

bool node_has_losses(const CodedSystemState& state, int node);

/// Any-k verdict: every k-subset of nodes must span the message space with
/// its unlost packets. Returns the first failing subset as witness.
struct AnyKReport {
    bool ok;
    std::vector<int> witness;
};
AnyKReport verify_any_k(const CodedSystemState& state);

/// Broadcast repair plan for one partially failed node in the 4-node half-loss
/// single-failure system: two independent combinations of the failed node's
/// own packets are expressed through three one-packet transmissions from the
/// complete nodes, so any lost pair solves a nonsingular 2x2 system.
struct RepairPlan {
    int failed_node;
    std::vector<int> senders;          // the three complete nodes, ascending
    std::vector<uint32_t> y1;          // combination weights, support on failed node
    std::vector<uint32_t> y2;          // P'2^{-1} P'1 y1
    std::vector<uint32_t> y3;          // solves P'1 y3 = gamma3*x3 + gamma4*x4
    uint32_t gamma3, gamma4;           // distinct mixing constants
    // recovery rows: [y1 restricted; y3 restricted] over the failed node's t
    // packets; every 2x2 minor nonsingular
    FieldMatrix recovery_rows;
    uint64_t seed;
    int resamples = 0;
    size_t symbols_sent() const { return senders.size(); }
};

/// Builds the explicit-plan for `failed_node` (params must be the
/// (n=4, k=2, r=1, rho=1/2) system with 4 packets per node).
RepairPlan build_example2_plan(const CodedSystemState& state, int failed_node, uint64_t seed);

struct RepairOutcome {
    size_t symbols_broadcast = 0;  // bandwidth actually used, in packets
    bool any_k_after = true;
    std::vector<int> rank_witness;
    uint64_t seed = 0;
};

/// Runs the explicit plan: three packet transmissions, failed node solves the
/// residual 2x2 system after subtracting its surviving packets. Recovery is
/// exact (restores the original packets). No-op when nothing is lost.
RepairOutcome execute_broadcast_repair(CodedSystemState& state, const RepairPlan& plan);

/// Randomized linear network coding round per the achievability argument:
/// every complete node broadcasts beta_symbols random combinations of its own
/// packets; every faulty node keeps its survivors and refills lost slots with
/// random combinations of survivors plus everything received.
RepairOutcome rlnc_repair_round(CodedSystemState& state, int beta_symbols, uint64_t seed,
                                std::string* warning = nullptr);

/// Human-readable simulation report (parameters, seed, bandwidth, verdicts).
std::string format_report(const CodedSystemState& state, const RepairOutcome& outcome,
                          const std::string& mode);

/// Smallest file size in symbols making alpha, alpha1 and the MSR beta whole
/// numbers of packets for this instance.
struct SymbolUnits {
    int file_symbols;
    int packets_per_node;
    int lost_per_node;
    int beta_packets;
};
SymbolUnits msr_symbol_units(const SystemParams& params);

}  // namespace pfr

#endif
