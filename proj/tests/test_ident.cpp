#include <catch_amalgamated.hpp>

#include <random>

#include "compident/cycle.hpp"
#include "compident/error.hpp"
#include "compident/ident.hpp"
#include "support.hpp"

using namespace compident;
using namespace testsupport;

namespace {

CompartmentalModel cycle3() { return make_cycle(3, {1}, {2}, {1, 3}); }
CompartmentalModel cycle4_12() { return make_cycle(4, {1}, {3}, {1, 2}); }

Var kv(int to, int from) { return to == 0 ? Var::leak(from) : Var::edge(from, to); }

// Rank over Q by fraction-based elimination, independent of the modular code.
std::size_t rational_rank(std::vector<std::vector<mpq_class>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const mpq_class f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("Jacobian of the running example") {
    const auto cm = coefficient_map(cycle3());
    const auto params = cycle3().parameters();
    const SymbolicMatrix j = jacobian(cm, params);
    REQUIRE(j.rows() == 5);
    REQUIRE(j.cols() == 5);
    for (std::size_t c = 0; c < 5; ++c) CHECK(j(0, c) == Polynomial(1));
    CHECK(j(1, 0) == P("k03 + k13 + k32"));
    CHECK(j(1, 1) == P("k01 + k03 + k13 + k21"));
    CHECK(j(1, 2) == P("k01 + k21 + k32"));
    CHECK(j(1, 3) == P("k03 + k13 + k32"));
    CHECK(j(1, 4) == P("k01 + k21 + k32"));
    CHECK(j(2, 0) == P("k03*k32"));
    CHECK(j(2, 1) == P("k01*(k03 + k13) + k03*k21"));
    CHECK(j(2, 2) == P("k01*k32"));
    CHECK(j(2, 3) == P("k32*(k03 + k13)"));
    CHECK(j(2, 4) == P("k32*(k01 + k21)"));
    CHECK(j(3, 0) == Polynomial(1));
    for (std::size_t c = 1; c < 5; ++c) CHECK(j(3, c) == Polynomial());
    CHECK(j(4, 0) == P("k03 + k13"));
    CHECK(j(4, 1) == Polynomial());
    CHECK(j(4, 2) == P("k21"));
    CHECK(j(4, 3) == Polynomial());
    CHECK(j(4, 4) == P("k21"));
    CHECK(generic_rank(j) == 5);
}

TEST_CASE("Jacobian edge cases") {
    CoefficientMap single;
    single.push({1, CoefficientLabel::Side::Lhs, 0, 0, {}}, P("k01"));
    const auto j = jacobian(single, {Var::leak(1)});
    REQUIRE(j.rows() == 1);
    CHECK(j(0, 0) == Polynomial(1));
    CHECK_THROWS_AS(jacobian(single, {Var::edge(1, 2)}), UncoveredVariable);
    CHECK(generic_rank(SymbolicMatrix(3, 4)) == 0);
    RankOptions bad;
    bad.trials = 0;
    CHECK_THROWS_AS(generic_rank(SymbolicMatrix(1, 1), bad), PreconditionViolated);
    bad.trials = 1;
    bad.prime = 1000003;
    CHECK_THROWS_AS(generic_rank(SymbolicMatrix(1, 1), bad), PreconditionViolated);
}

TEST_CASE("four-cycle with adjacent leaks: columns and dependence") {
    const auto cm = cycle_coefficient_map(cycle4_12());
    REQUIRE(cm.size() == 6);
    const auto params = cycle4_12().parameters();
    const SymbolicMatrix j = jacobian(cm, params);
    auto col = [&](Var v) {
        const auto it = std::find(params.begin(), params.end(), v);
        return j.column(static_cast<std::size_t>(it - params.begin()));
    };
    const std::vector<Polynomial> k21_col{
        Polynomial(1), P("k32 + k02 + k43 + k14"), P("k32*k43 + k02*k43 + k32*k14 + k02*k14 + k43*k14"),
        P("k02*k43*k14"), P("k32"), P("k14*k32")};
    const std::vector<Polynomial> k01_col{
        Polynomial(1), P("k32 + k02 + k43 + k14"), P("k32*k43 + k02*k43 + k32*k14 + k02*k14 + k43*k14"),
        P("k32*k43*k14 + k02*k43*k14"), Polynomial(), Polynomial()};
    const std::vector<Polynomial> k32_col{
        Polynomial(1), P("k21 + k01 + k43 + k14"), P("k21*k43 + k01*k43 + k21*k14 + k01*k14 + k43*k14"),
        P("k01*k43*k14"), P("k21"), P("k14*k21")};
    const std::vector<Polynomial> k02_col{
        Polynomial(1), P("k21 + k01 + k43 + k14"), P("k21*k43 + k01*k43 + k21*k14 + k01*k14 + k43*k14"),
        P("k21*k43*k14 + k01*k43*k14"), Polynomial(), Polynomial()};
    CHECK(col(kv(2, 1)) == k21_col);
    CHECK(col(kv(0, 1)) == k01_col);
    CHECK(col(kv(3, 2)) == k32_col);
    CHECK(col(kv(0, 2)) == k02_col);
    const std::vector<Polynomial> expected{Polynomial(), Polynomial(), Polynomial(), P("k21*k32*k43*k14"),
                                           P("-k21*k32"), P("-k21*k32*k14")};
    for (std::size_t r = 0; r < 6; ++r) {
        CHECK(P("k21") * (k01_col[r] - k21_col[r]) == expected[r]);
        CHECK(P("k32") * (k02_col[r] - k32_col[r]) == expected[r]);
    }
    CHECK(generic_rank(j) == 5);
}

TEST_CASE("identifiability verdicts") {
    const auto a2 = is_identifiable(cycle3());
    CHECK(a2.identifiable);
    CHECK(a2.generic_rank == 5);
    CHECK(a2.full_rank_target == 5);
    for (const auto& [p, s] : a2.per_param) CHECK(s == ParamStatus::LocallyIdentifiable);

    const auto a4 = is_identifiable(cycle4_12());
    CHECK_FALSE(a4.identifiable);
    CHECK(a4.generic_rank == 5);
    // Frozen from an independent sympy augmented-rank computation.
    CHECK(a4.per_param.at(kv(4, 3)) == ParamStatus::LocallyIdentifiable);
    CHECK(a4.per_param.at(kv(1, 4)) == ParamStatus::LocallyIdentifiable);
    CHECK(a4.per_param.at(kv(2, 1)) == ParamStatus::NonIdentifiable);
    CHECK(a4.per_param.at(kv(3, 2)) == ParamStatus::NonIdentifiable);
    CHECK(a4.per_param.at(kv(0, 1)) == ParamStatus::NonIdentifiable);
    CHECK(a4.per_param.at(kv(0, 2)) == ParamStatus::NonIdentifiable);

    CHECK_FALSE(is_identifiable(make_cycle(3, {1}, {3}, {1, 3})).identifiable);

    const auto one = is_identifiable(parse_model(R"({"n":1,"edges":[],"in":[1],"out":[1],"leak":[1]})"));
    CHECK(one.identifiable);
    CHECK(one.per_param.at(Var::leak(1)) == ParamStatus::LocallyIdentifiable);

    CHECK_THROWS_AS(is_identifiable(CompartmentalModel(2, {{1, 2}}, {1}, {2}, {})), NotStronglyConnected);
}

TEST_CASE("serial and parallel rank kernels agree") {
    for (const auto& m : {cycle3(), cycle4_12(), make_catenary(4, {1}, {2}, {2, 4})}) {
        const auto j = jacobian(coefficient_map(m), m.parameters());
        RankOptions serial;
        serial.parallel = false;
        CHECK(generic_rank(j) == generic_rank_serial(j));
        CHECK(per_param_flags(j, m.parameters()) == per_param_flags(j, m.parameters(), serial));
    }
}

TEST_CASE("rank is stable across seeds") {
    std::vector<CompartmentalModel> corpus;
    for (int n = 3; n <= 6; ++n) {
        for (int p = 1; p <= n; ++p) {
            corpus.push_back(make_cycle(n, {1}, {p}, {}));
            corpus.push_back(make_cycle(n, {1}, {p}, {1, n}));
            corpus.push_back(make_catenary(n, {1}, {p}, {p}));
        }
    }
    for (const auto& m : corpus) {
        const auto j = jacobian(coefficient_map(m), m.parameters());
        std::set<std::size_t> ranks;
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            RankOptions o;
            o.seed = seed;
            ranks.insert(generic_rank(j, o));
        }
        CHECK(ranks.size() == 1);
    }
}

TEST_CASE("square Jacobian determinants vanish exactly when rank drops") {
    for (int n = 3; n <= 4; ++n) {
        for (int p = 1; p <= n; ++p) {
            for (const auto& leaks : all_subsets(n, false)) {
                const auto m = make_cycle(n, {1}, {p}, leaks);
                const auto cm = coefficient_map(m);
                if (cm.size() != m.parameter_count()) continue;
                const auto j = jacobian(cm, m.parameters());
                const bool full = generic_rank(j) == m.parameter_count();
                CHECK(determinant(j).is_zero() == !full);
            }
        }
    }
}

TEST_CASE("adding an input or an output preserves identifiability") {
    std::vector<CompartmentalModel> corpus;
    for (int n = 3; n <= 4; ++n) {
        for (int p = 1; p <= n; ++p) {
            for (const auto& leaks : all_subsets(n, false)) corpus.push_back(make_cycle(n, {1}, {p}, leaks));
        }
    }
    for (int n = 2; n <= 4; ++n) {
        for (int p = 1; p <= n; ++p) {
            for (const auto& leaks : all_subsets(n, false)) corpus.push_back(make_catenary(n, {1}, {p}, leaks));
        }
    }
    int checked = 0;
    for (const auto& m : corpus) {
        if (!is_identifiable(m).identifiable) continue;
        for (int v = 1; v <= m.n(); ++v) {
            auto in = m.inputs();
            auto out = m.outputs();
            in.insert(v);
            out.insert(v);
            CHECK(is_identifiable(m.with_inputs(in)).identifiable);
            CHECK(is_identifiable(m.with_outputs(out)).identifiable);
            checked += 2;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("cycles with at most one leak are identifiable") {
    for (int n = 3; n <= 6; ++n) {
        for (int p = 1; p <= n; ++p) {
            for (int l = 0; l <= n; ++l) {
                const std::set<int> leaks = l == 0 ? std::set<int>{} : std::set<int>{l};
                CHECK(is_identifiable(make_cycle(n, {1}, {p}, leaks)).identifiable);
            }
        }
    }
}

TEST_CASE("cycles with more leaks than inputs plus outputs are unidentifiable") {
    std::mt19937_64 rng(6);
    for (int n = 3; n <= 5; ++n) {
        const auto subsets = all_subsets(n, true);
        for (int round = 0; round < 40; ++round) {
            const auto& in = subsets[rng() % subsets.size()];
            const auto& out = subsets[rng() % subsets.size()];
            const auto& leaks = subsets[rng() % subsets.size()];
            if (leaks.size() < in.size() + out.size() + 1) continue;
            CHECK_FALSE(is_identifiable(make_cycle(n, in, out, leaks)).identifiable);
        }
    }
}

TEST_CASE("quotient transform keeps the rank") {
    const auto cm = coefficient_map(cycle3());
    const auto params = cycle3().parameters();
    // (c1, c2, c5/c4, c4, c3) reordered in place: replace c5 by c5/c4.
    const auto q = quotient_transform(cm, 4, 3);
    CHECK(rational_generic_rank(q, params) == 5);
    CHECK(rational_generic_rank(as_rational(cm), params) == 5);
    CHECK_THROWS_AS(quotient_transform(cm, 2, 2), PreconditionViolated);
    CHECK_THROWS_AS(quotient_transform(cm, 2, 9), PreconditionViolated);
    CoefficientMap with_zero = cm;
    with_zero.push({}, Polynomial());
    CHECK_THROWS_AS(quotient_transform(with_zero, 0, 5), ZeroDivisorCoefficient);
}

TEST_CASE("quotient transform against a rational evaluation oracle") {
    std::mt19937_64 rng(50);
    const std::vector<Var> vars{x(1), x(2), x(3)};
    int compared = 0;
    for (int round = 0; round < 20; ++round) {
        CoefficientMap cm;
        for (int e = 0; e < 3; ++e) cm.push({}, random_polynomial(rng, 3, 3, 2, 5));
        if (cm.coeffs[1].is_zero()) continue;
        const auto q = quotient_transform(cm, 0, 1);
        RankOptions o;
        o.trials = 50;
        o.seed = 1000 + round;
        const std::size_t modular = rational_generic_rank(q, vars, o);

        // Oracle: rank over Q of the polynomial Jacobian and of the quotient
        // Jacobian (quotient rule evaluated with exact rationals), maximized
        // over 50 random points.
        std::size_t before = 0, after = 0;
        for (int t = 0; t < 50; ++t) {
            std::map<Var, mpq_class> pt;
            for (Var v : vars) pt[v] = mpq_class(static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 9) + 1);
            std::vector<std::vector<mpq_class>> jb(3, std::vector<mpq_class>(3)), ja = jb;
            const mpq_class den = eval_rational(cm.coeffs[1], pt);
            if (den == 0) continue;
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    jb[r][c] = eval_rational(cm.coeffs[r].partial(vars[c]), pt);
                    ja[r][c] = jb[r][c];
                }
            }
            const mpq_class num = eval_rational(cm.coeffs[0], pt);
            for (int c = 0; c < 3; ++c) {
                ja[0][c] = (jb[0][c] * den - num * jb[1][c]) / (den * den);
            }
            before = std::max(before, rational_rank(jb));
            after = std::max(after, rational_rank(ja));
        }
        CHECK(before == after);
        CHECK(modular == after);
        ++compared;
    }
    CHECK(compared > 10);
}
