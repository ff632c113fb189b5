#include <doctest.h>

#include <numeric>

#include "pfr/mds.hpp"

using namespace pfr;

namespace {

std::vector<uint32_t> random_file(const Field& f, size_t len, std::mt19937_64& rng) {
    std::vector<uint32_t> v(len);
    for (auto& s : v) s = f.random_element(rng);
    return v;
}

}  // namespace

TEST_CASE("make_mds basics") {
    Field f257 = Field::prime(257);
    MdsCode tiny = make_mds(1, 1, f257);
    CHECK(tiny.generator.at(0, 0) == 1);

    CHECK_THROWS_AS(make_mds(2, 20, Field::prime(17)), std::invalid_argument);  // too few points
    CHECK_THROWS_AS(make_mds(5, 4, f257), std::invalid_argument);

    MdsCode c = make_mds(2, 4, Field::prime(17));
    // exhaustively: all C(4,2)=6 submatrices nonsingular
    CHECK(verify_mds(c));
    // systematic head
    CHECK(c.generator.at(0, 0) == 1);
    CHECK(c.generator.at(1, 0) == 0);
    CHECK(c.generator.at(0, 1) == 0);
    CHECK(c.generator.at(1, 1) == 1);
}

TEST_CASE("the (16,8) code over GF(257) is MDS, exhaustively") {
    MdsCode c = make_mds(8, 16, Field::prime(257));
    CHECK(c.generator.rank() == 8);
    CHECK(verify_mds(c));  // C(16,8) = 12870 subsets, all checked
}

TEST_CASE("encode/decode round trip") {
    Field f = Field::prime(257);
    MdsCode c = make_mds(8, 16, f);
    std::mt19937_64 rng(21);

    SUBCASE("zero file encodes to zero packets") {
        FileSymbols file = shape_file(f, std::vector<uint32_t>(8, 0), 8);
        auto packets = encode(file, c);
        for (const auto& p : packets)
            for (uint32_t s : p.payload) CHECK(s == 0);
    }

    SUBCASE("systematic head reads off directly") {
        auto raw = random_file(f, 8, rng);
        auto packets = encode(shape_file(f, raw, 8), c);
        std::vector<size_t> head(8);
        std::iota(head.begin(), head.end(), 0);
        FileSymbols back = decode_any_k(head, packets, c, 8);
        for (size_t i = 0; i < 8; i++) CHECK(back.blocks.at(0, i) == raw[i]);
    }

    SUBCASE("random k-subsets round trip, multi-block") {
        auto raw = random_file(f, 24, rng);  // 3 blocks
        auto packets = encode(shape_file(f, raw, 8), c);
        for (int trial = 0; trial < 50; trial++) {
            std::vector<size_t> all(16);
            std::iota(all.begin(), all.end(), 0);
            for (size_t i = 0; i < 8; i++) std::swap(all[i], all[i + rng() % (16 - i)]);
            std::vector<size_t> cols(all.begin(), all.begin() + 8);
            FileSymbols back = decode_any_k(cols, packets, c, raw.size());
            for (size_t i = 0; i < raw.size(); i++)
                CHECK(back.blocks.at(i / 8, i % 8) == raw[i]);
        }
    }

    SUBCASE("padding preserves the true length") {
        auto raw = random_file(f, 5, rng);
        FileSymbols file = shape_file(f, raw, 8);
        CHECK(file.true_length == 5);
        CHECK(file.blocks.at(0, 7) == 0);
    }

    SUBCASE("duplicate columns rejected") {
        auto packets = encode(shape_file(f, random_file(f, 8, rng), 8), c);
        std::vector<size_t> cols{0, 1, 2, 3, 4, 5, 6, 6};
        CHECK_THROWS_AS(decode_any_k(cols, packets, c, 8), std::invalid_argument);
    }
}

TEST_CASE("placement partitions columns contiguously") {
    Placement p{4, 4};
    CHECK(p.columns_of(1) == std::vector<size_t>{0, 1, 2, 3});
    CHECK(p.columns_of(4) == std::vector<size_t>{12, 13, 14, 15});
    CHECK_THROWS_AS(p.columns_of(5), std::out_of_range);

    // any two nodes of the (16,8) placement jointly decode
    Field f = Field::prime(257);
    MdsCode c = make_mds(8, 16, f);
    std::mt19937_64 rng(4);
    auto raw = random_file(f, 8, rng);
    auto packets = encode(shape_file(f, raw, 8), c);
    for (int a = 1; a <= 4; a++)
        for (int b = a + 1; b <= 4; b++) {
            std::vector<size_t> cols = p.columns_of(a);
            for (size_t x : p.columns_of(b)) cols.push_back(x);
            FileSymbols back = decode_any_k(cols, packets, c, 8);
            for (size_t i = 0; i < 8; i++) CHECK(back.blocks.at(0, i) == raw[i]);
        }
}

TEST_CASE("binary extension field codes work too") {
    MdsCode c = make_mds(4, 8, Field::binary_ext(5));
    CHECK(verify_mds(c));
}
