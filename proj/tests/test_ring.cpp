#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "rzdg/parse.hpp"
#include "rzdg/ring.hpp"

using rzdg::Error;
using rzdg::RingElement;
using rzdg::RingSpec;

namespace {

std::vector<std::uint64_t> factor_moduli(const RingSpec& r) {
    std::vector<std::uint64_t> out;
    for (const auto& f : r.factors()) out.push_back(f.modulus);
    return out;
}

// independent coset count of R / s, by enumeration
std::uint64_t coset_count(const RingSpec& ring, const std::vector<RingElement>& s) {
    std::set<std::uint64_t> member;
    for (const auto& x : s) member.insert(ring.index_of(x));
    std::set<std::set<std::uint64_t>> cosets;
    for (std::uint64_t i = 0; i < ring.order(); ++i) {
        RingElement x = ring.element_at(i);
        std::set<std::uint64_t> coset;
        for (std::uint64_t m : member)
            coset.insert(ring.index_of(ring.add(x, ring.element_at(m))));
        cosets.insert(std::move(coset));
    }
    return cosets.size();
}

} // namespace

TEST_CASE("modulus factorization") {
    CHECK(factor_moduli(RingSpec::from_modulus(25)) == std::vector<std::uint64_t>{25});
    CHECK(RingSpec::from_modulus(25).factors()[0].p == 5);
    CHECK(RingSpec::from_modulus(25).factors()[0].k == 2);
    CHECK(factor_moduli(RingSpec::from_modulus(12)) == std::vector<std::uint64_t>{4, 3});
    CHECK(factor_moduli(RingSpec::from_modulus(2)) == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(RingSpec::from_modulus(1), Error);
    CHECK_THROWS_AS(RingSpec::from_modulus(0), Error);
    CHECK_THROWS_AS(RingSpec::from_modulus(rzdg::max_ring_order() + 1), Error);
}

TEST_CASE("factor product reproduces the modulus") {
    for (std::uint64_t n = 2; n <= 1000; ++n) {
        RingSpec r = RingSpec::from_modulus(n);
        std::uint64_t prod = 1;
        for (const auto& f : r.factors()) prod *= f.modulus;
        CHECK(prod == n);
    }
}

TEST_CASE("ring products") {
    RingSpec z6 = RingSpec::product({RingSpec::from_modulus(2), RingSpec::from_modulus(3)});
    CHECK(z6.order() == 6);
    CHECK(factor_moduli(z6) == std::vector<std::uint64_t>{2, 3});
    CHECK(z6.notation() == RingSpec::Notation::product);
    CHECK(z6.name() == "Z2xZ3");

    RingSpec z4 = RingSpec::product({RingSpec::from_modulus(4)});
    CHECK(z4.notation() == RingSpec::Notation::modulus);
    CHECK(z4.name() == "Z4");

    RingSpec z8 = RingSpec::product({RingSpec::from_modulus(2), RingSpec::from_modulus(2),
                                     RingSpec::from_modulus(2)});
    CHECK(z8.order() == 8);
    CHECK(z8.factors().size() == 3);

    // order preserved for explicit products
    RingSpec swapped = rzdg::parse_ring("Z3xZ2");
    CHECK(factor_moduli(swapped) == std::vector<std::uint64_t>{3, 2});

    std::vector<RingSpec> big(4, RingSpec::from_modulus(100));
    CHECK_THROWS_AS(RingSpec::product(big), Error);
}

TEST_CASE("arithmetic") {
    RingSpec z25 = RingSpec::from_modulus(25);
    CHECK(z25.index_of(z25.add(z25.element_at(20), z25.element_at(10))) == 5);
    CHECK(z25.index_of(z25.neg(z25.element_at(7))) == 18);

    RingSpec z2z3 = rzdg::parse_ring("Z2xZ3");
    RingElement a{{1, 2}}, b{{0, 0}};
    CHECK(z2z3.is_zero(z2z3.mul(a, b)));

    RingSpec z6 = RingSpec::from_modulus(6);
    RingElement two{{0, 2}}, three{{1, 0}};
    CHECK(z6.index_of(two) == 2);
    CHECK(z6.index_of(three) == 3);
    CHECK(z6.is_zero(z6.mul(two, three)));

    RingElement bad{{1, 2, 3}};
    CHECK_THROWS_AS(z6.add(two, bad), Error);
    CHECK_THROWS_AS(z6.mul(RingElement{{9, 9}}, two), Error);
}

TEST_CASE("element order and labels") {
    RingSpec z6 = RingSpec::from_modulus(6);
    for (std::uint64_t i = 0; i < 6; ++i) CHECK(z6.index_of(z6.element_at(i)) == i);
    CHECK(z6.label(z6.element_at(4)) == "4");
    CHECK(z6.element_at(4).residues == std::vector<std::uint32_t>{0, 1});

    RingSpec z2z3 = rzdg::parse_ring("Z2xZ3");
    for (std::uint64_t i = 0; i < 6; ++i) CHECK(z2z3.index_of(z2z3.element_at(i)) == i);
    CHECK(z2z3.label(z2z3.element_at(1)) == "(0,1)");
    CHECK(z2z3.label(z2z3.element_at(3)) == "(1,0)");

    RingSpec z4z9 = rzdg::parse_ring("Z4xZ9");
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint64_t i = rng() % z4z9.order();
        CHECK(z4z9.index_of(z4z9.element_at(i)) == i);
    }
}

TEST_CASE("zero-divisor classification matches the definition") {
    RingSpec z25 = RingSpec::from_modulus(25);
    CHECK(z25.is_zero_divisor(z25.element_at(10)));
    CHECK_FALSE(z25.is_zero_divisor(z25.element_at(7)));
    CHECK(z25.is_zero_divisor(z25.zero()));

    for (std::uint64_t n = 2; n <= 120; ++n) {
        RingSpec r = RingSpec::from_modulus(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            RingElement x = r.element_at(i);
            CHECK(r.is_zero_divisor(x) == r.is_zero_divisor_definitional(x));
        }
    }
    for (const char* lit : {"Z2xZ3", "Z4xZ9", "Z2xZ2xZ2"}) {
        RingSpec r = rzdg::parse_ring(lit);
        for (std::uint64_t i = 0; i < r.order(); ++i) {
            RingElement x = r.element_at(i);
            CHECK(r.is_zero_divisor(x) == r.is_zero_divisor_definitional(x));
        }
    }
    // sampled agreement on larger rings
    std::mt19937 rng(11);
    for (std::uint64_t n : {4620ull, 8192ull, 9973ull}) {
        RingSpec r = RingSpec::from_modulus(n);
        for (int trial = 0; trial < 40; ++trial) {
            RingElement x = r.element_at(rng() % n);
            CHECK(r.is_zero_divisor(x) == r.is_zero_divisor_definitional(x));
        }
    }
}

TEST_CASE("every element is a unit xor a zero-divisor") {
    for (std::uint64_t n = 2; n <= 60; ++n) {
        RingSpec r = RingSpec::from_modulus(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            RingElement x = r.element_at(i);
            CHECK(r.is_unit_definitional(x) != r.is_zero_divisor_definitional(x));
            CHECK(r.is_unit(x) == r.is_unit_definitional(x));
        }
    }
}

TEST_CASE("zero-divisor sets") {
    auto indices = [](const RingSpec& r) {
        std::vector<std::uint64_t> out;
        for (const auto& x : r.zero_divisor_set()) out.push_back(r.index_of(x));
        return out;
    };
    CHECK(indices(RingSpec::from_modulus(8)) == std::vector<std::uint64_t>{0, 2, 4, 6});
    CHECK(RingSpec::from_modulus(8).beta() == 4);
    CHECK(indices(RingSpec::from_modulus(9)) == std::vector<std::uint64_t>{0, 3, 6});
    CHECK(RingSpec::from_modulus(9).beta() == 3);
    CHECK(indices(RingSpec::from_modulus(7)) == std::vector<std::uint64_t>{0});

    for (std::uint64_t n = 2; n <= 200; ++n) {
        RingSpec r = RingSpec::from_modulus(n);
        auto set = r.zero_divisor_set();
        CHECK(set.size() == r.beta());
        CHECK(std::is_sorted(set.begin(), set.end(),
                             [&](const RingElement& a, const RingElement& b) {
                                 return r.index_of(a) < r.index_of(b);
                             }));
    }
}

TEST_CASE("ideal recognition") {
    RingSpec z8 = RingSpec::from_modulus(8);
    CHECK(z8.subset_is_ideal(z8.zero_divisor_set()));

    RingSpec z6 = RingSpec::from_modulus(6);
    CHECK_FALSE(z6.subset_is_ideal(z6.zero_divisor_set()));

    RingSpec z9 = RingSpec::from_modulus(9);
    CHECK_FALSE(z9.subset_is_ideal({z9.element_at(0), z9.element_at(3)}));
    CHECK(z9.subset_is_ideal({z9.element_at(0), z9.element_at(3), z9.element_at(6)}));
    CHECK(z9.subset_is_ideal({z9.element_at(0)}));
}

TEST_CASE("Z(R) is an ideal exactly for local rings") {
    for (std::uint64_t n = 2; n <= 200; ++n) {
        RingSpec r = RingSpec::from_modulus(n);
        CHECK(r.subset_is_ideal(r.zero_divisor_set()) == r.local());
        CHECK(r.zero_divisors_form_ideal() == r.local());
    }
    for (std::uint64_t n : {1024ull, 2048ull, 6000ull, 9973ull}) {
        RingSpec r = RingSpec::from_modulus(n);
        CHECK(r.zero_divisors_form_ideal() == r.local());
    }
}

TEST_CASE("prime ideals") {
    RingSpec z25 = RingSpec::from_modulus(25);
    auto ideals25 = z25.prime_ideals();
    REQUIRE(ideals25.size() == 1);
    CHECK(ideals25[0].size == 5);
    std::vector<std::uint64_t> got;
    for (const auto& x : ideals25[0].elements) got.push_back(z25.index_of(x));
    CHECK(got == std::vector<std::uint64_t>{0, 5, 10, 15, 20});

    auto ideals6 = RingSpec::from_modulus(6).prime_ideals();
    REQUIRE(ideals6.size() == 2);
    CHECK(ideals6[0].size == 3);
    CHECK(ideals6[1].size == 2);

    RingSpec z222 = rzdg::parse_ring("Z2xZ2xZ2");
    auto ideals222 = z222.prime_ideals();
    REQUIRE(ideals222.size() == 3);
    for (const auto& ideal : ideals222) {
        CHECK(ideal.size == 4);
        CHECK(z222.subset_is_ideal(ideal.elements));
    }

    // sizes follow order / p, and each returned ideal is a genuine ideal
    for (std::uint64_t n : {30ull, 90ull, 128ull}) {
        RingSpec r = RingSpec::from_modulus(n);
        auto ideals = r.prime_ideals();
        REQUIRE(ideals.size() == r.factors().size());
        for (std::size_t j = 0; j < ideals.size(); ++j) {
            CHECK(ideals[j].size == n / r.factors()[j].p);
            CHECK(r.subset_is_ideal(ideals[j].elements));
        }
    }
}

TEST_CASE("alpha") {
    RingSpec z8 = RingSpec::from_modulus(8);
    CHECK(z8.alpha() == 2);
    CHECK(coset_count(z8, z8.zero_divisor_set()) == 2);

    RingSpec z9 = RingSpec::from_modulus(9);
    CHECK(z9.alpha() == 3);
    CHECK(coset_count(z9, z9.zero_divisor_set()) == 3);

    CHECK_THROWS_AS(RingSpec::from_modulus(6).alpha(), Error);
}

TEST_CASE("order cap honors RZDG_MAX_ORDER") {
    setenv("RZDG_MAX_ORDER", "100", 1);
    CHECK_THROWS_AS(RingSpec::from_modulus(101), Error);
    CHECK(RingSpec::from_modulus(100).order() == 100);
    unsetenv("RZDG_MAX_ORDER");
    CHECK(RingSpec::from_modulus(101).order() == 101);
}

TEST_CASE("ring literals") {
    CHECK(rzdg::parse_ring("Z25").order() == 25);
    CHECK(rzdg::parse_ring("Z2xZ3xZ5").order() == 30);
    CHECK_THROWS_AS(rzdg::parse_ring("25"), Error);
    CHECK_THROWS_AS(rzdg::parse_ring("Zx"), Error);
    CHECK_THROWS_AS(rzdg::parse_ring("Z2x"), Error);
    CHECK_THROWS_AS(rzdg::parse_ring(""), Error);
}
