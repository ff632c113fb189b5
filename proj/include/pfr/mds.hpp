#ifndef PFR_MDS_HPP
#define PFR_MDS_HPP

#include <cstdint>
#include <vector>

#include "pfr/galois.hpp"

namespace pfr {

/// Reed-Solomon style (n_sym, k_sym) code built by polynomial evaluation at
/// distinct nonzero points, optionally row-reduced to systematic form. Every
/// k_sym-column submatrix of the generator is nonsingular by construction.
struct MdsCode {
    size_t k_sym = 0;
    size_t n_sym = 0;
    Field field = Field::prime(257);
    FieldMatrix generator;                  // k_sym x n_sym
    std::vector<uint32_t> evaluation_points;
};

MdsCode make_mds(size_t k_sym, size_t n_sym, const Field& field, bool systematic = true);

/// Spot/exhaustive MDS verification: every k-column submatrix nonsingular.
/// Checks all subsets when C(n_sym, k_sym) <= exhaustive_limit, otherwise
/// `samples` random subsets.
bool verify_mds(const MdsCode& code, uint64_t exhaustive_limit = 20000,
                size_t samples = 1000, uint64_t seed = 1);

/// One coded packet: its coefficient vector over the message space plus the
/// payload symbols (one symbol per message block).
struct Packet {
    std::vector<uint32_t> coeff;    // length k_sym
    std::vector<uint32_t> payload;  // length = number of file blocks
};

/// File = blocks x k_sym symbol matrix plus the unpadded symbol count.
struct FileSymbols {
    FieldMatrix blocks;   // b x k_sym
    size_t true_length;   // symbols before zero padding
};

/// Pads `symbols` with zeros to a multiple of k_sym and shapes it into blocks.
FileSymbols shape_file(const Field& f, const std::vector<uint32_t>& symbols, size_t k_sym);

std::vector<Packet> encode(const FileSymbols& file, const MdsCode& code);

/// Reconstructs the file from exactly k_sym distinct packet columns.
FileSymbols decode_any_k(const std::vector<size_t>& columns,
                         const std::vector<Packet>& packets, const MdsCode& code,
                         size_t true_length);

/// Contiguous column placement: node i (1-based) holds columns
/// [(i-1)*t+1 : i*t], 1-based inclusive.
struct Placement {
    int node_count = 0;
    int packets_per_node = 0;

    /// 0-based column indices held by 1-based node i.
    std::vector<size_t> columns_of(int node) const;
};

}  // namespace pfr

#endif
