#include <doctest.h>

#include "pfr/galois.hpp"

using namespace pfr;

namespace {

// independent oracle: multiply two GF(2) polynomials and long-divide by the
// reduction polynomial, all on coefficient vectors
uint32_t poly_mulmod_oracle(uint32_t a, uint32_t b, uint32_t red, unsigned m) {
    std::vector<int> prod(2 * m, 0);
    for (unsigned i = 0; i < m; i++)
        for (unsigned j = 0; j < m; j++)
            if (((a >> i) & 1) && ((b >> j) & 1)) prod[i + j] ^= 1;
    for (int d = static_cast<int>(2 * m) - 1; d >= static_cast<int>(m); d--) {
        if (!prod[d]) continue;
        for (unsigned i = 0; i <= m; i++)
            if ((red >> i) & 1) prod[d - m + i] ^= 1;
    }
    uint32_t out = 0;
    for (unsigned i = 0; i < m; i++)
        if (prod[i]) out |= 1u << i;
    return out;
}

// independent schoolbook triple loop with a different accumulation order
FieldMatrix matmul_oracle(const FieldMatrix& a, const FieldMatrix& b) {
    const Field& f = a.field();
    FieldMatrix r(f, a.rows(), b.cols());
    for (size_t j = 0; j < b.cols(); j++)
        for (size_t i = 0; i < a.rows(); i++) {
            uint32_t acc = 0;
            for (size_t k = 0; k < a.cols(); k++)
                acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
            r.at(i, j) = acc;
        }
    return r;
}

FieldMatrix random_matrix(const Field& f, size_t rows, size_t cols, std::mt19937_64& rng) {
    FieldMatrix m(f, rows, cols);
    for (size_t i = 0; i < rows; i++)
        for (size_t j = 0; j < cols; j++) m.at(i, j) = f.random_element(rng);
    return m;
}

}  // namespace

TEST_CASE("prime field basics in GF(31)") {
    Field f = Field::prime(31);
    CHECK(f.mul(13, 3) == 8);  // 39 mod 31
    CHECK(f.inv(1) == 1);
    CHECK(f.add(30, 1) == 0);
    CHECK(f.sub(0, 1) == 30);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("field spec validation") {
    CHECK_THROWS_AS(Field::prime(6), std::invalid_argument);
    CHECK_THROWS_AS(Field::binary_ext(5, 0b100100), std::invalid_argument);  // reducible (even)
    CHECK_THROWS_AS(Field::binary_ext(4, 0b10101), std::invalid_argument);  // (x^2+x+1)^2
    CHECK(Field::binary_ext(5).order() == 32);
    CHECK(is_prime_u32(257));
    CHECK_FALSE(is_prime_u32(255));
}

TEST_CASE("GF(2^5) multiplication matches the long-division oracle") {
    Field f = Field::binary_ext(5);  // x^5 + x^2 + 1
    // x * x^4 = x^5, which reduces mod the polynomial
    CHECK(f.mul(0b10, 0b10000) == poly_mulmod_oracle(0b10, 0b10000, f.reduction_poly(), 5));
    CHECK(f.mul(0b10, 0b10000) == 0b101);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; i++) {
        uint32_t a = f.random_element(rng), b = f.random_element(rng);
        CHECK(f.mul(a, b) == poly_mulmod_oracle(a, b, f.reduction_poly(), 5));
    }
}

TEST_CASE("field axioms hold on random triples") {
    for (Field f : {Field::prime(257), Field::binary_ext(5)}) {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 200; i++) {
            uint32_t a = f.random_element(rng), b = f.random_element(rng),
                     c = f.random_element(rng);
            CHECK(f.sub(f.add(a, b), b) == a);
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            if (b != 0) CHECK(f.mul(f.div(a, b), b) == a);
        }
    }
}

TEST_CASE("coefficient vectors are canonical") {
    Field f = Field::binary_ext(3);
    auto c = f.coeffs(0b101);
    CHECK(c == std::vector<uint32_t>{1, 0, 1});
    Field p = Field::prime(17);
    CHECK(p.coeffs(13) == std::vector<uint32_t>{13});
    CHECK(p.from_int(300) == 300 % 17);
}

TEST_CASE("matrix product: identity and oracle comparison") {
    Field f = Field::prime(257);
    std::mt19937_64 rng(3);
    FieldMatrix g = random_matrix(f, 8, 16, rng);
    CHECK(FieldMatrix::identity(f, 8).mul(g) == g);
    for (int i = 0; i < 20; i++) {
        FieldMatrix a = random_matrix(f, 3, 3, rng), b = random_matrix(f, 3, 3, rng);
        CHECK(a.mul(b) == matmul_oracle(a, b));
    }
    FieldMatrix w = random_matrix(f, 1, 8, rng);
    FieldMatrix p = w.mul(g);
    CHECK(p.rows() == 1);
    CHECK(p.cols() == 16);
    CHECK_THROWS_AS(g.mul(w), std::invalid_argument);
}

TEST_CASE("rank: zero matrix, duplicate rows, product bound") {
    Field f = Field::prime(257);
    FieldMatrix z(f, 4, 6);
    CHECK(z.rank() == 0);
    std::mt19937_64 rng(5);
    FieldMatrix m = random_matrix(f, 5, 5, rng);
    for (size_t j = 0; j < 5; j++) m.at(4, j) = m.at(2, j);  // dependent row
    CHECK(m.rank() <= 4);
    for (int i = 0; i < 20; i++) {
        FieldMatrix a = random_matrix(f, 4, 6, rng), b = random_matrix(f, 6, 5, rng);
        CHECK(a.mul(b).rank() <= std::min(a.rank(), b.rank()));
    }
}

TEST_CASE("solve: identity, round trip, singular error") {
    Field f = Field::prime(257);
    std::mt19937_64 rng(9);
    FieldMatrix v = random_matrix(f, 6, 1, rng);
    CHECK(FieldMatrix::identity(f, 6).solve(v) == v);
    for (int i = 0; i < 20; i++) {
        FieldMatrix a = random_matrix(f, 5, 5, rng);
        if (a.rank() != 5) continue;
        FieldMatrix y0 = random_matrix(f, 5, 2, rng);
        FieldMatrix b = a.mul(y0);
        CHECK(a.solve(b) == y0);
        CHECK(a.mul(a.solve(b)) == b);
    }
    FieldMatrix s(f, 3, 3);  // all zero: singular
    CHECK_THROWS_AS(s.solve(FieldMatrix::identity(f, 3)), SingularMatrixError);
}
