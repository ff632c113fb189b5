#include "pfr/mds.hpp"

#include <algorithm>

namespace pfr {

MdsCode make_mds(size_t k_sym, size_t n_sym, const Field& field, bool systematic) {
    if (k_sym == 0 || k_sym > n_sym) throw std::invalid_argument("need 1 <= k_sym <= n_sym");
    if (n_sym > field.order() - 1)
        throw std::invalid_argument("field too small: need n_sym distinct nonzero evaluation points");
    MdsCode code;
    code.k_sym = k_sym;
    code.n_sym = n_sym;
    code.field = field;
    code.evaluation_points.resize(n_sym);
    for (size_t j = 0; j < n_sym; j++) code.evaluation_points[j] = field.nth_element(j + 1);

    FieldMatrix v(code.field, k_sym, n_sym);
    for (size_t j = 0; j < n_sym; j++) {
        uint32_t x = code.evaluation_points[j];
        uint32_t acc = 1;
        for (size_t i = 0; i < k_sym; i++) {
            v.at(i, j) = acc;
            acc = code.field.mul(acc, x);
        }
    }
    if (systematic) {
        std::vector<size_t> head(k_sym);
        for (size_t i = 0; i < k_sym; i++) head[i] = i;
        FieldMatrix lead = v.select_columns(head);
        code.generator = lead.solve(v);  // row ops preserve the MDS property
    } else {
        code.generator = v;
    }
    return code;
}

namespace {

bool next_combination(std::vector<size_t>& c, size_t n) {
    size_t k = c.size();
    for (size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            c[i]++;
            for (size_t j = i + 1; j < k; j++) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
        if (r > (1ull << 62)) return UINT64_MAX;
    }
    return r;
}

}  // namespace

bool verify_mds(const MdsCode& code, uint64_t exhaustive_limit, size_t samples, uint64_t seed) {
    uint64_t total = binomial(code.n_sym, code.k_sym);
    if (total <= exhaustive_limit) {
        std::vector<size_t> c(code.k_sym);
        for (size_t i = 0; i < code.k_sym; i++) c[i] = i;
        do {
            if (code.generator.select_columns(c).rank() != code.k_sym) return false;
        } while (next_combination(c, code.n_sym));
        return true;
    }
    std::mt19937_64 rng(seed);
    std::vector<size_t> all(code.n_sym);
    for (size_t i = 0; i < code.n_sym; i++) all[i] = i;
    for (size_t s = 0; s < samples; s++) {
        for (size_t i = 0; i < code.k_sym; i++)
            std::swap(all[i], all[i + rng() % (code.n_sym - i)]);
        std::vector<size_t> c(all.begin(), all.begin() + code.k_sym);
        if (code.generator.select_columns(c).rank() != code.k_sym) return false;
    }
    return true;
}

FileSymbols shape_file(const Field& f, const std::vector<uint32_t>& symbols, size_t k_sym) {
    size_t b = (symbols.size() + k_sym - 1) / k_sym;
    if (b == 0) b = 1;
    FileSymbols fs{FieldMatrix(f, b, k_sym), symbols.size()};
    for (size_t i = 0; i < symbols.size(); i++)
        fs.blocks.at(i / k_sym, i % k_sym) = f.from_int(symbols[i]);
    return fs;
}

std::vector<Packet> encode(const FileSymbols& file, const MdsCode& code) {
    if (file.blocks.cols() != code.k_sym)
        throw std::invalid_argument("file block width must equal k_sym");
    FieldMatrix p = file.blocks.mul(code.generator);  // b x n_sym
    std::vector<Packet> out(code.n_sym);
    for (size_t j = 0; j < code.n_sym; j++) {
        out[j].coeff.resize(code.k_sym);
        for (size_t i = 0; i < code.k_sym; i++) out[j].coeff[i] = code.generator.at(i, j);
        out[j].payload.resize(file.blocks.rows());
        for (size_t b = 0; b < file.blocks.rows(); b++) out[j].payload[b] = p.at(b, j);
    }
    return out;
}

FileSymbols decode_any_k(const std::vector<size_t>& columns, const std::vector<Packet>& packets,
                         const MdsCode& code, size_t true_length) {
    if (columns.size() != code.k_sym)
        throw std::invalid_argument("need exactly k_sym packet columns");
    {
        std::vector<size_t> s = columns;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("duplicate column indices");
    }
    const Field& f = code.field;
    size_t blocks = packets.at(columns[0]).payload.size();
    // S = k x k coefficient matrix of the chosen packets; W * S = P_sel
    FieldMatrix s(f, code.k_sym, code.k_sym);
    FieldMatrix psel(f, code.k_sym, blocks);
    for (size_t j = 0; j < code.k_sym; j++) {
        const Packet& pk = packets.at(columns[j]);
        for (size_t i = 0; i < code.k_sym; i++) s.at(i, j) = pk.coeff[i];
        for (size_t b = 0; b < blocks; b++) psel.at(j, b) = pk.payload[b];
    }
    // Solve S^T w_b = p_b per block (w row vectors stacked).
    FieldMatrix w = s.transpose().solve(psel);  // k x blocks
    FileSymbols out{FieldMatrix(f, blocks, code.k_sym), true_length};
    for (size_t b = 0; b < blocks; b++)
        for (size_t i = 0; i < code.k_sym; i++) out.blocks.at(b, i) = w.at(i, b);
    return out;
}

std::vector<size_t> Placement::columns_of(int node) const {
    if (node < 1 || node > node_count) throw std::out_of_range("node index");
    std::vector<size_t> c(packets_per_node);
    for (int i = 0; i < packets_per_node; i++)
        c[i] = static_cast<size_t>(node - 1) * packets_per_node + i;
    return c;
}

}  // namespace pfr
