#include "pfr/galois.hpp"

namespace pfr {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; d++)
        if (n % d == 0) return false;
    return true;
}

namespace {

// carry-less product of two GF(2) polynomials
uint64_t clmul(uint32_t a, uint32_t b) {
    uint64_t acc = 0;
    uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    return acc;
}

int poly_degree(uint64_t p) {
    int d = -1;
    while (p) {
        d++;
        p >>= 1;
    }
    return d;
}

uint32_t poly_mod(uint64_t a, uint32_t mod) {
    int dm = poly_degree(mod);
    int da = poly_degree(a);
    while (da >= dm) {
        a ^= static_cast<uint64_t>(mod) << (da - dm);
        da = poly_degree(a);
    }
    return static_cast<uint32_t>(a);
}

// default irreducible polynomials over GF(2), degree 2..16
constexpr uint32_t kDefaultPoly[17] = {
    0, 0,
    0b111,                // x^2+x+1
    0b1011,               // x^3+x+1
    0b10011,              // x^4+x+1
    0b100101,             // x^5+x^2+1
    0b1000011,            // x^6+x+1
    0b10001001,           // x^7+x^3+1
    0b100011101,          // x^8+x^4+x^3+x^2+1
    0b1000010001,         // x^9+x^4+1
    0b10000001001,        // x^10+x^3+1
    0b100000000101,       // x^11+x^2+1
    0b1000001010011,      // x^12+x^6+x^4+x+1
    0b10000000011011,     // x^13+x^4+x^3+x+1
    0b100010000000011,    // x^14+x^10+x+1  (any irreducible works)
    0b1000000000000011,   // x^15+x+1
    0b10001000000001011,  // x^16+x^12+x^3+x+1
};

}  // namespace

bool gf2_poly_irreducible(uint32_t poly, unsigned m) {
    if (poly_degree(poly) != static_cast<int>(m)) return false;
    if ((poly & 1) == 0) return false;  // x divides it
    for (unsigned d = 1; d <= m / 2; d++) {
        for (uint32_t div = (1u << d); div < (2u << d); div++) {
            // long-division remainder of poly by div
            uint64_t rem = poly;
            int dd = static_cast<int>(d);
            int dr = poly_degree(rem);
            while (dr >= dd) {
                rem ^= static_cast<uint64_t>(div) << (dr - dd);
                dr = poly_degree(rem);
            }
            if (rem == 0) return false;
        }
    }
    return true;
}

Field::Field(uint32_t p, unsigned m, uint32_t poly) : p_(p), m_(m), poly_(poly) {
    q_ = 1;
    for (unsigned i = 0; i < m_; i++) q_ *= p_;
}

Field Field::prime(uint32_t p) {
    if (!is_prime_u32(p)) throw std::invalid_argument("field characteristic must be prime");
    return Field(p, 1, 0);
}

Field Field::binary_ext(unsigned m) {
    if (m < 2 || m > 16) throw std::invalid_argument("supported extension degrees: 2..16");
    return binary_ext(m, kDefaultPoly[m]);
}

Field Field::binary_ext(unsigned m, uint32_t red_poly) {
    if (m < 2 || m > 16) throw std::invalid_argument("supported extension degrees: 2..16");
    if (!gf2_poly_irreducible(red_poly, m))
        throw std::invalid_argument("reduction polynomial must be monic irreducible of degree m");
    return Field(2, m, red_poly);
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
    if (m_ == 1) {
        uint64_t s = static_cast<uint64_t>(a) + b;
        return static_cast<uint32_t>(s >= p_ ? s - p_ : s);
    }
    return a ^ b;
}

uint32_t Field::neg(uint32_t a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    return a;  // characteristic 2
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::mul(uint32_t a, uint32_t b) const {
    if (m_ == 1) return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
    return poly_mod(clmul(a, b), poly_);
}

uint32_t Field::pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero field element");
    if (m_ == 1) {
        // extended Euclid on (a, p)
        int64_t t = 0, newt = 1, r = p_, newr = a;
        while (newr != 0) {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<uint32_t>(t);
    }
    return pow(a, q_ - 2);
}

uint32_t Field::div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

uint32_t Field::from_int(uint64_t v) const {
    if (m_ == 1) return static_cast<uint32_t>(v % p_);
    return static_cast<uint32_t>(v & (q_ - 1));
}

uint32_t Field::nth_element(uint64_t i) const {
    if (i >= q_) throw std::out_of_range("element index exceeds field order");
    return static_cast<uint32_t>(i);
}

uint32_t Field::random_element(std::mt19937_64& rng) const {
    return static_cast<uint32_t>(rng() % q_);
}

uint32_t Field::random_nonzero(std::mt19937_64& rng) const {
    return static_cast<uint32_t>(1 + rng() % (q_ - 1));
}

std::vector<uint32_t> Field::coeffs(uint32_t v) const {
    std::vector<uint32_t> c(m_);
    if (m_ == 1) {
        c[0] = v;
    } else {
        for (unsigned i = 0; i < m_; i++) c[i] = (v >> i) & 1;
    }
    return c;
}

FieldMatrix FieldMatrix::identity(const Field& f, size_t n) {
    FieldMatrix m(f, n, n);
    for (size_t i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && field_ == o.field_;
}

FieldMatrix FieldMatrix::mul(const FieldMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
    const Field& f = field_;
    FieldMatrix r(f, rows_, o.cols_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t k = 0; k < cols_; k++) {
            uint32_t v = at(i, k);
            if (v == 0) continue;
            for (size_t j = 0; j < o.cols_; j++)
                r.at(i, j) = f.add(r.at(i, j), f.mul(v, o.at(k, j)));
        }
    return r;
}

size_t FieldMatrix::rank() const {
    FieldMatrix w = *this;
    const Field& f = field_;
    size_t rank = 0;
    for (size_t col = 0; col < cols_ && rank < rows_; col++) {
        // first nonzero pivot in deterministic row order
        size_t piv = rank;
        while (piv < rows_ && w.at(piv, col) == 0) piv++;
        if (piv == rows_) continue;
        for (size_t j = 0; j < cols_; j++) std::swap(w.at(rank, j), w.at(piv, j));
        uint32_t invp = f.inv(w.at(rank, col));
        for (size_t j = col; j < cols_; j++) w.at(rank, j) = f.mul(w.at(rank, j), invp);
        for (size_t i = 0; i < rows_; i++) {
            if (i == rank || w.at(i, col) == 0) continue;
            uint32_t factor = w.at(i, col);
            for (size_t j = col; j < cols_; j++)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(rank, j)));
        }
        rank++;
    }
    return rank;
}

FieldMatrix FieldMatrix::solve(const FieldMatrix& b) const {
    if (rows_ != cols_) throw std::invalid_argument("solve requires a square matrix");
    if (b.rows_ != rows_) throw std::invalid_argument("right-hand side row mismatch");
    const Field& f = field_;
    FieldMatrix w = *this;
    FieldMatrix y = b;
    for (size_t col = 0; col < cols_; col++) {
        size_t piv = col;
        while (piv < rows_ && w.at(piv, col) == 0) piv++;
        if (piv == rows_) throw SingularMatrixError("singular matrix in solve");
        if (piv != col) {
            for (size_t j = 0; j < cols_; j++) std::swap(w.at(col, j), w.at(piv, j));
            for (size_t j = 0; j < y.cols_; j++) std::swap(y.at(col, j), y.at(piv, j));
        }
        uint32_t invp = f.inv(w.at(col, col));
        for (size_t j = 0; j < cols_; j++) w.at(col, j) = f.mul(w.at(col, j), invp);
        for (size_t j = 0; j < y.cols_; j++) y.at(col, j) = f.mul(y.at(col, j), invp);
        for (size_t i = 0; i < rows_; i++) {
            if (i == col || w.at(i, col) == 0) continue;
            uint32_t factor = w.at(i, col);
            for (size_t j = 0; j < cols_; j++)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(col, j)));
            for (size_t j = 0; j < y.cols_; j++)
                y.at(i, j) = f.sub(y.at(i, j), f.mul(factor, y.at(col, j)));
        }
    }
    return y;
}

FieldMatrix FieldMatrix::inverse() const {
    return solve(identity(field_, rows_));
}

FieldMatrix FieldMatrix::select_columns(const std::vector<size_t>& cols) const {
    FieldMatrix r(field_, rows_, cols.size());
    for (size_t j = 0; j < cols.size(); j++) {
        if (cols[j] >= cols_) throw std::out_of_range("column index out of range");
        for (size_t i = 0; i < rows_; i++) r.at(i, j) = at(i, cols[j]);
    }
    return r;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix r(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t j = 0; j < cols_; j++) r.at(j, i) = at(i, j);
    return r;
}

bool FieldMatrix::is_zero() const {
    for (uint32_t v : a_)
        if (v) return false;
    return true;
}

}  // namespace pfr
