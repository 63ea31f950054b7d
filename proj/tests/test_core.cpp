#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "sparsepbn/core.hpp"

using namespace sparsepbn;
using fixtures::bn;

namespace {

std::vector<std::vector<Rat>> rows22(const Rat& a, const Rat& b, const Rat& c,
                                     const Rat& d) {
    return {{a, b}, {c, d}};
}

}  // namespace

TEST_CASE("from_rationals validates shape and entries") {
    CHECK_THROWS_AS(Tpm::from_rationals({}), ValidationError);
    CHECK_THROWS_AS(Tpm::from_rationals({{Rat(1)}, {Rat(1)}}), ValidationError);
    // side 3 is not a power of two
    CHECK_THROWS_AS(Tpm::from_rationals({{Rat(1), Rat(0), Rat(0)},
                                         {Rat(0), Rat(1), Rat(0)},
                                         {Rat(0), Rat(0), Rat(1)}}),
                    ValidationError);
    CHECK_THROWS_AS(Tpm::from_rationals(rows22(1, 2, -1, -2)), ValidationError);
    // unequal column sums
    CHECK_THROWS_AS(Tpm::from_rationals(rows22(1, 2, 1, 2)), ValidationError);
    // zero column sum
    CHECK_THROWS_AS(Tpm::from_rationals(rows22(0, 0, 0, 0)), ValidationError);
}

TEST_CASE("integral matrix keeps scale 10 and denominator 1") {
    Tpm P = fixtures::small4();
    CHECK(P.side() == 4);
    CHECK(P.nodes() == 2);
    CHECK(P.scale() == Rat(10));
    CHECK(P.denom() == 1);
    CHECK(P.entry(1, 1) == 1);
    CHECK(P.entry(3, 4) == 10);
    CHECK(P.value(2, 1) == Rat(4));
}

TEST_CASE("fractional entries pick up the least common denominator") {
    Tpm P = Tpm::from_rationals(
        rows22(Rat(1, 5), Rat(1, 2), Rat(4, 5), Rat(1, 2)));
    CHECK(P.scale() == Rat(1));
    CHECK(P.denom() == 10);
    CHECK(P.entry(1, 1) == 2);
    CHECK(P.entry(2, 1) == 8);
    CHECK(P.entry(1, 2) == 5);
    CHECK(P.value(1, 1) == Rat(1, 5));
}

TEST_CASE("rescaled reports the same matrix at a new scale") {
    Tpm P = fixtures::small4();
    Tpm Q = P.rescaled(Rat(1));
    CHECK(Q.scale() == Rat(1));
    CHECK(Q.denom() == 10);
    CHECK(Q.value(2, 1) == Rat(2, 5));
    CHECK(Q.same_normalized(P));
    CHECK(Q.rescaled(Rat(10)).entries() == P.entries());
    CHECK_THROWS_AS(P.rescaled(Rat(0)), ValidationError);
    CHECK_THROWS_AS(P.rescaled(Rat(-2)), ValidationError);
}

TEST_CASE("same_normalized ignores scale but not values") {
    Tpm P = fixtures::small4();
    CHECK(P.same_normalized(P.rescaled(Rat(7, 3))));
    Tpm other = Tpm::from_rationals(rows22(1, 0, 0, 1));
    CHECK_FALSE(P.same_normalized(fixtures::wide8()));
    CHECK_FALSE(other.same_normalized(Tpm::from_rationals(rows22(0, 1, 1, 0))));
}

TEST_CASE("in_support checks every column") {
    Tpm P = fixtures::small4();
    CHECK(in_support(bn({1, 1, 1, 3}), P));
    CHECK(in_support(bn({3, 4, 4, 3}), P));
    CHECK_FALSE(in_support(bn({4, 1, 1, 3}), P));  // P(4,1) = 0
    CHECK_FALSE(in_support(bn({1, 1, 1, 1}), P));  // P(1,4) = 0
    CHECK_FALSE(in_support(bn({0, 1, 1, 3}), P));  // out of range
    CHECK_THROWS_AS(in_support(bn({1, 1}), P), ContractError);
}

TEST_CASE("verify_decomposition accepts an exact decomposition") {
    Tpm P = fixtures::small4();
    Decomposition D;
    D.scale = Rat(10);
    D.weights = {Rat(5), Rat(2), Rat(2), Rat(1)};
    D.matrices = {bn({3, 1, 1, 3}), bn({2, 4, 2, 3}), bn({2, 3, 4, 3}),
                  bn({1, 4, 1, 3})};
    VerificationReport rep = verify_decomposition(D, P);
    CHECK(rep.weights_positive);
    CHECK(rep.weights_sum_to_scale);
    CHECK(rep.matrices_distinct);
    CHECK(rep.matrices_in_support);
    CHECK(rep.reconstructs);
    CHECK(rep.pass);
}

TEST_CASE("verify_decomposition flags each defect separately") {
    Tpm P = fixtures::small4();
    Decomposition good;
    good.scale = Rat(10);
    good.weights = {Rat(5), Rat(2), Rat(2), Rat(1)};
    good.matrices = {bn({3, 1, 1, 3}), bn({2, 4, 2, 3}), bn({2, 3, 4, 3}),
                     bn({1, 4, 1, 3})};

    Decomposition d = good;
    d.weights[0] = Rat(-5);
    CHECK_FALSE(verify_decomposition(d, P).weights_positive);

    d = good;
    d.weights[3] = Rat(2);
    CHECK_FALSE(verify_decomposition(d, P).weights_sum_to_scale);

    d = good;
    d.matrices[1] = d.matrices[0];
    CHECK_FALSE(verify_decomposition(d, P).matrices_distinct);

    d = good;
    d.matrices[0] = bn({4, 1, 1, 3});
    CHECK_FALSE(verify_decomposition(d, P).matrices_in_support);

    d = good;
    std::swap(d.weights[0], d.weights[3]);
    VerificationReport rep = verify_decomposition(d, P);
    CHECK_FALSE(rep.reconstructs);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("block doubling and its lift") {
    Tpm P = fixtures::small4();
    Tpm Q = block_double(P);
    CHECK(Q.side() == 8);
    CHECK(Q.scale() == P.scale());
    CHECK(Q.value(2, 1) == P.value(2, 1));
    CHECK(Q.value(6, 5) == P.value(2, 1));
    CHECK(Q.value(2, 5) == Rat(0));
    CHECK(Q.value(6, 1) == Rat(0));

    Decomposition D;
    D.scale = Rat(10);
    D.weights = {Rat(5), Rat(2), Rat(2), Rat(1)};
    D.matrices = {bn({3, 1, 1, 3}), bn({2, 4, 2, 3}), bn({2, 3, 4, 3}),
                  bn({1, 4, 1, 3})};
    Decomposition L = lift_block_double(D, P);
    CHECK(L.length() == D.length());
    CHECK(L.weights == D.weights);
    CHECK(L.matrices[0] == bn({3, 1, 1, 3, 7, 5, 5, 7}));
    CHECK(verify_decomposition(L, Q).pass);

    Decomposition bad = D;
    bad.weights[0] = Rat(4);
    CHECK_THROWS_AS(lift_block_double(bad, P), ContractError);
}

TEST_CASE("positive_count and BnMatrix formatting") {
    CHECK(positive_count(fixtures::small4().entries()) == 10);
    CHECK(positive_count(fixtures::wide8().entries()) == 22);
    CHECK(bn({1, 6, 1, 2, 7, 8, 3, 6}).to_string() == "<1,6,1,2,7,8,3,6>");
    CHECK(bn({3, 1, 1, 3}) < bn({3, 1, 2, 1}));
}
