#ifndef PFR_GALOIS_HPP
#define PFR_GALOIS_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfr {

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Finite field description: GF(p) for prime p, or GF(2^m) with a monic
/// irreducible reduction polynomial (bit i of red_poly = coefficient of x^i).
/// Elements are canonical uint32 values: the residue for prime fields, the
/// bit-packed polynomial for binary extensions. Fields are immutable; all
/// operations are pure.
class Field {
public:
    static Field prime(uint32_t p);
    static Field binary_ext(unsigned m);                       // default polynomial
    static Field binary_ext(unsigned m, uint32_t red_poly);

    uint32_t characteristic() const { return p_; }
    unsigned extension_degree() const { return m_; }
    uint64_t order() const { return q_; }
    uint32_t reduction_poly() const { return poly_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;  // throws std::domain_error on zero
    uint32_t div(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

    uint32_t from_int(uint64_t v) const;  // reduce an integer into the field
    /// The i-th element in the field's canonical enumeration (i < q).
    uint32_t nth_element(uint64_t i) const;
    uint32_t random_element(std::mt19937_64& rng) const;
    uint32_t random_nonzero(std::mt19937_64& rng) const;

    /// Coefficient vector over GF(p), least significant first, length m.
    std::vector<uint32_t> coeffs(uint32_t v) const;

    bool operator==(const Field& o) const {
        return p_ == o.p_ && m_ == o.m_ && poly_ == o.poly_;
    }

private:
    Field(uint32_t p, unsigned m, uint32_t poly);
    uint32_t p_;
    unsigned m_;
    uint32_t poly_;  // 0 when m == 1
    uint64_t q_;
};

bool is_prime_u32(uint32_t n);
/// Irreducibility of a monic degree-m polynomial over GF(2) by trial division.
bool gf2_poly_irreducible(uint32_t poly, unsigned m);

/// Element handle carrying its field; convenient in tests and small algebra.
struct FieldElement {
    const Field* field = nullptr;
    uint32_t value = 0;

    FieldElement() = default;
    FieldElement(const Field& f, uint32_t v) : field(&f), value(v) {}

    FieldElement operator+(const FieldElement& o) const { return {*check(o), field->add(value, o.value)}; }
    FieldElement operator-(const FieldElement& o) const { return {*check(o), field->sub(value, o.value)}; }
    FieldElement operator*(const FieldElement& o) const { return {*check(o), field->mul(value, o.value)}; }
    FieldElement operator/(const FieldElement& o) const { return {*check(o), field->div(value, o.value)}; }
    bool operator==(const FieldElement& o) const { return value == o.value && *field == *o.field; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    const Field* check(const FieldElement& o) const {
        if (!field || !o.field || !(*field == *o.field))
            throw std::invalid_argument("field elements from different fields");
        return field;
    }
};

/// Dense row-major matrix over one field. The field is stored by value so a
/// matrix never outlives its arithmetic.
class FieldMatrix {
public:
    FieldMatrix() : field_(Field::prime(2)), rows_(0), cols_(0) {}
    FieldMatrix(const Field& f, size_t rows, size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FieldMatrix identity(const Field& f, size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const FieldMatrix& o) const;

    FieldMatrix mul(const FieldMatrix& o) const;           // dimension-checked product
    size_t rank() const;                                   // Gaussian elimination
    FieldMatrix solve(const FieldMatrix& b) const;         // a*y = b, a square; throws SingularMatrixError
    FieldMatrix inverse() const;
    FieldMatrix select_columns(const std::vector<size_t>& cols) const;
    FieldMatrix transpose() const;
    bool is_zero() const;

private:
    Field field_;
    size_t rows_, cols_;
    std::vector<uint32_t> a_;
};

}  // namespace pfr

#endif
