#include <catch_amalgamated.hpp>

#include <random>

#include "compident/error.hpp"
#include "compident/ioeq.hpp"
#include "support.hpp"

using namespace compident;
using namespace testsupport;

namespace {

CompartmentalModel cycle3() { return make_cycle(3, {1}, {2}, {1, 3}); }

}  // namespace

TEST_CASE("determinant routes agree with the Leibniz expansion") {
    std::mt19937_64 rng(77);
    for (int n = 1; n <= 5; ++n) {
        for (int round = 0; round < 6; ++round) {
            SymbolicMatrix m(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    if (rng() % 4 != 0) m(r, c) = random_polynomial(rng, 3, 2, 1, 3);
                }
            }
            const Polynomial oracle = leibniz_det(m);
            CHECK(determinant_bareiss(m) == oracle);
            CHECK(determinant_laplace(m) == oracle);
        }
    }
    SymbolicMatrix singular(3, 3);
    singular(0, 0) = X(1);
    singular(1, 0) = X(2);
    CHECK(determinant_bareiss(singular) == Polynomial());
}

TEST_CASE("golden input-output equation of the three-compartment cycle") {
    const IoEquation eq = io_equation(cycle3(), 2);
    REQUIRE(eq.lhs.size() == 4);
    CHECK(eq.lhs[0] == Polynomial(1));
    CHECK(eq.lhs[1] == P("k01 + k03 + k13 + k21 + k32"));
    CHECK(eq.lhs[2] == P("k01*k03 + k01*k13 + k01*k32 + k03*k21 + k03*k32 + k13*k21 + k13*k32 + k21*k32"));
    CHECK(eq.lhs[2].term_count() == 8);
    CHECK(eq.lhs[3] == P("k01*k03*k32 + k01*k13*k32 + k03*k21*k32"));
    REQUIRE(eq.rhs.size() == 1);
    const auto& r = eq.rhs.at(1);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Polynomial());
    CHECK(r[1] == P("k21"));
    CHECK(r[2] == P("(k03 + k13)*k21"));
    CHECK_THROWS_AS(io_equation(cycle3(), 1), NotAnOutput);
    CHECK(format_io_equation(eq).starts_with("y2^(3) + (k21 + k32 + k13 + k01 + k03)*y2^(2)"));
    CHECK(format_io_equation(eq).ends_with("= k21*u1^(1) + (k21*k13 + k21*k03)*u1^(0)"));
}

TEST_CASE("small models") {
    // Leak-free 3-cycle observed at its input: the 2x2 cofactor deletes row 1
    // and column 1 of sI - A, leaving [[s + k32, 0], [-k32, s + k13]].
    const IoEquation eq = io_equation(make_cycle(3, {1}, {1}, {}), 1);
    CHECK(eq.lhs[3] == Polynomial());
    const auto& r = eq.rhs.at(1);
    CHECK(r[0] == Polynomial(1));
    CHECK(r[1] == P("k32 + k13"));
    CHECK(r[2] == P("k32*k13"));

    const auto one = parse_model(R"({"n":1,"edges":[],"in":[1],"out":[1],"leak":[1]})");
    const IoEquation e1 = io_equation(one, 1);
    CHECK(e1.lhs == std::vector<Polynomial>{Polynomial(1), P("k01")});
    CHECK(e1.rhs.at(1) == std::vector<Polynomial>{Polynomial(1)});
    const auto cm = coefficient_map(one);
    REQUIRE(cm.size() == 1);
    CHECK(cm.coeffs[0] == P("k01"));
}

TEST_CASE("coefficient map of the running example") {
    const auto cm = coefficient_map(cycle3());
    REQUIRE(cm.size() == 5);
    CHECK(cm.coeffs[0] == P("k01 + k03 + k13 + k21 + k32"));
    CHECK(cm.coeffs[2] == P("k01*k03*k32 + k01*k13*k32 + k03*k21*k32"));
    CHECK(cm.coeffs[3] == P("k21"));
    CHECK(cm.coeffs[4] == P("k03*k21 + k13*k21"));
    CHECK(cm.labels[0].to_string() == "y2^(2)");
    CHECK(cm.labels[4].to_string() == "u1^(0)@y2");
}

TEST_CASE("catenary coefficient map drops the constant rhs leader") {
    // Four-compartment catenary, input 1, output 2, leaks {2,4}: lhs gives four
    // coefficients, rhs gives k21 and two higher-order products; the u^(3)
    // coefficient is the zero polynomial and is dropped with the constants.
    const auto cm = coefficient_map(make_catenary(4, {1}, {2}, {2, 4}));
    CHECK(cm.size() == 7);
}

TEST_CASE("multi-output equations restrict to one-input one-output models") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 25; ++round) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<Edge> edges;
        for (int a = 1; a <= n; ++a) {
            for (int b = 1; b <= n; ++b) {
                if (a != b && rng() % 2) edges.push_back({a, b});
            }
        }
        std::set<int> ins, outs, leaks;
        for (int v = 1; v <= n; ++v) {
            if (rng() % 2) ins.insert(v);
            if (rng() % 2) outs.insert(v);
            if (rng() % 3 == 0) leaks.insert(v);
        }
        if (ins.empty()) ins.insert(1);
        if (outs.empty()) outs.insert(n);
        const CompartmentalModel m(n, edges, ins, outs, leaks);
        for (int i : outs) {
            const IoEquation eq = io_equation(m, i);
            for (int j : ins) {
                const IoEquation single = io_equation(m.with_inputs({j}).with_outputs({i}), i);
                CHECK(single.lhs == eq.lhs);
                CHECK(single.rhs.at(j) == eq.rhs.at(j));
            }
        }
    }
}

TEST_CASE("monic lhs and leak-free degeneracy") {
    std::mt19937_64 rng(8);
    int strongly_connected = 0;
    for (int round = 0; round < 60; ++round) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::vector<Edge> edges;
        for (int a = 1; a <= n; ++a) {
            for (int b = 1; b <= n; ++b) {
                if (a != b && rng() % 2) edges.push_back({a, b});
            }
        }
        const CompartmentalModel m(n, edges, {1}, {n}, {});
        const IoEquation eq = io_equation(m, n);
        CHECK(eq.lhs.front() == Polynomial(1));
        if (is_strongly_connected(m)) {
            ++strongly_connected;
            CHECK(eq.lhs.back() == Polynomial());
        }
        const IoEquation leaky = io_equation(m.with_leaks({1}), n);
        CHECK(leaky.lhs.front() == Polynomial(1));
    }
    CHECK(strongly_connected > 5);
}

TEST_CASE("coefficient map deduplicates structurally identical entries") {
    // Two outputs share the lhs, so its coefficients appear once.
    const auto m = make_cycle(3, {1}, {2, 3}, {1});
    const auto cm = coefficient_map(m);
    std::set<std::string> rendered;
    for (const auto& p : cm.coeffs) {
        CHECK_FALSE(p.is_constant());
        rendered.insert(p.to_string());
    }
    CHECK(rendered.size() == cm.size());
    const auto single = coefficient_map(m.with_outputs({2}));
    for (std::size_t k = 0; k < 3; ++k) CHECK(cm.coeffs[k] == single.coeffs[k]);
}
