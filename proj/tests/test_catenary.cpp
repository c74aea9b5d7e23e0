#include <catch_amalgamated.hpp>

#include <map>

#include "compident/catenary.hpp"
#include "compident/error.hpp"
#include "support.hpp"

using namespace compident;
using namespace testsupport;

namespace {

CompartmentalModel catenary4() { return make_catenary(4, {1}, {2}, {2, 4}); }

std::map<std::pair<int, int>, Polynomial> by_label(const CoefficientMap& cm) {
    std::map<std::pair<int, int>, Polynomial> out;
    for (std::size_t i = 0; i < cm.size(); ++i) {
        const auto& l = cm.labels[i];
        out.emplace(std::make_pair(l.side == CoefficientLabel::Side::Lhs ? 0 : 1, l.order), cm.coeffs[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("gamma sets") {
    CHECK(gamma_sets(1).empty());
    CHECK(gamma_sets(3) == std::vector<std::set<int>>{{1}, {2}});
    CHECK(gamma_sets(4) == std::vector<std::set<int>>{{1}, {2}, {3}, {1, 3}});
    std::vector<long> fib{0, 1};
    while (fib.size() < 12) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    for (int n = 1; n <= 9; ++n) {
        std::set<std::set<int>> oracle;
        for (const auto& s : all_subsets(n - 1, true)) {
            bool ok = true;
            for (int i : s) ok &= !s.contains(i + 1);
            if (ok) oracle.insert(s);
        }
        const auto got = gamma_sets(n);
        CHECK(std::set<std::set<int>>(got.begin(), got.end()) == oracle);
        CHECK(got.size() == oracle.size());
        CHECK(static_cast<long>(got.size()) == fib[n + 1] - 1);
    }
    CHECK(gamma_sets(7).size() == 20);
}

TEST_CASE("out sums and cycle products") {
    CHECK(out_sum(catenary4(), 2) == P("k12 + k32 + k02"));
    CHECK(out_sum(catenary4(), 1) == P("k21"));
    CHECK(out_sum(catenary4(), 4) == P("k34 + k04"));
    CHECK(out_sum(make_catenary(4, {1}, {1}, {}), 4) == P("k34"));
    CHECK_THROWS_AS(out_sum(make_cycle(3, {1}, {1}, {}), 1), NotCatenary);
    CHECK_THROWS_AS(out_sum(catenary4(), 5), PreconditionViolated);
    CHECK(kappa_I({2}) == P("k23*k32"));
    CHECK(i_plus({2}) == std::set<int>{2, 3});
    CHECK(kappa_I({1, 3}) == P("k12*k21*k34*k43"));
    CHECK(i_plus({1, 3}) == std::set<int>{1, 2, 3, 4});
    for (const auto& I : gamma_sets(7)) CHECK(i_plus(I).size() == 2 * I.size());
    CHECK(catenary_path_product(2, 4) == P("k32*k43"));
    CHECK(catenary_path_product(3, 3) == Polynomial(1));
}

TEST_CASE("running catenary example") {
    const auto cm = catenary_coefficient_map(catenary4());
    CHECK(cm.size() == 8);
    const Polynomial o1 = P("k21"), o2 = P("k12 + k32 + k02"), o3 = P("k23 + k43"), o4 = P("k34 + k04");
    const Polynomial e3 = o1 * o2 * o3 + o1 * o2 * o4 + o1 * o3 * o4 + o2 * o3 * o4;
    const Polynomial a3 = e3 - (P("k12*k21") * (o3 + o4) + P("k23*k32") * (o1 + o4) + P("k34*k43") * (o1 + o2));
    CHECK(cm.coeffs[2] == a3);
    CHECK(cm.labels[2].tag == "a3");
    CHECK(cm.labels[2].order == 1);
    // The zero-order u coefficient sits below the last nonzero entry.
    CHECK(cm.labels.back().tag == "at4");
    CHECK(cm.coeffs.back().is_zero());
    CHECK(coefficient_map(catenary4()).size() == 7);

    const auto two = catenary_coefficient_map(make_catenary(2, {1}, {1}, {}));
    CHECK(two.coeffs[1].is_zero());
    CHECK(catenary_coefficient_map(make_catenary(3, {1}, {3}, {2})).labels.front().output == 3);
    CHECK_THROWS_AS(catenary_coefficient_map(make_catenary(3, {3}, {1}, {2})), PreconditionViolated);
    CHECK_THROWS_AS(catenary_coefficient_map(make_catenary(3, {1, 2}, {3}, {})), PreconditionViolated);
    CHECK_THROWS_AS(catenary_coefficient_map(make_cycle(3, {1}, {1}, {})), NotCatenary);
}

TEST_CASE("closed form equals the determinant route") {
    for (int n = 1; n <= 6; ++n) {
        for (int in = 1; in <= n; ++in) {
            for (int out = in; out <= n; ++out) {
                for (const auto& leaks : all_subsets(n, false)) {
                    const auto m = make_catenary(n, {in}, {out}, leaks);
                    const auto closed = catenary_coefficient_map(m);
                    const auto eq = io_equation(m, out);
                    CHECK(closed.size() == static_cast<std::size_t>(2 * n - (out - in) + 1));
                    for (std::size_t k = 0; k < closed.size(); ++k) {
                        const auto& l = closed.labels[k];
                        Polynomial expected;
                        if (l.side == CoefficientLabel::Side::Lhs) {
                            expected = eq.lhs[n - l.order];
                        } else if (l.order >= 0) {
                            expected = eq.rhs.at(in)[n - 1 - l.order];
                        }
                        CHECK(closed.coeffs[k] == expected);
                    }
                    // The path product is the first u coefficient.
                    CHECK(closed.coeffs[n] == catenary_path_product(in, out));
                }
            }
        }
    }
}

TEST_CASE("literal correction sign double counts paired 2-cycles") {
    for (int n = 1; n <= 3; ++n) {
        const auto m = make_catenary(n, {1}, {n}, {1});
        CHECK(catenary_coefficient_map(m, CorrectionSign::Literal).coeffs ==
              catenary_coefficient_map(m).coeffs);
    }
    const auto m = make_catenary(4, {1}, {1}, {});
    const auto literal = catenary_coefficient_map(m, CorrectionSign::Literal);
    CHECK(literal.coeffs[3] == P("-2*k12*k21*k34*k43"));
    CHECK(catenary_coefficient_map(m).coeffs[3].is_zero());
    CHECK(leibniz_det(compartmental_matrix(m)).is_zero());
}

TEST_CASE("reflection consistency") {
    for (int n = 2; n <= 5; ++n) {
        const auto perm = reflection(n);
        for (int in = 1; in <= n; ++in) {
            for (int out = in; out <= n; ++out) {
                for (const auto& leaks : all_subsets(n, false)) {
                    const auto m = make_catenary(n, {in}, {out}, leaks);
                    const auto mirrored = reflect(m);
                    CHECK(reflect(mirrored) == m);
                    CHECK(*mirrored.inputs().begin() == n + 1 - in);
                    CHECK(*mirrored.outputs().begin() == n + 1 - out);
                    // The closed form of m, renamed, is the mirror's io-equation.
                    const auto rename = parameter_renaming(m, perm);
                    const auto closed = catenary_coefficient_map(m);
                    const auto eq = io_equation(mirrored, n + 1 - out);
                    for (std::size_t k = 0; k < closed.size(); ++k) {
                        const auto& l = closed.labels[k];
                        if (l.order < 0) continue;
                        const Polynomial& theirs = l.side == CoefficientLabel::Side::Lhs
                                                       ? eq.lhs[n - l.order]
                                                       : eq.rhs.at(n + 1 - in)[n - 1 - l.order];
                        CHECK(closed.coeffs[k].rename(rename) == theirs);
                    }
                }
            }
        }
    }
}
