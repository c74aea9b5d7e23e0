#include <catch_amalgamated.hpp>

#include <json.hpp>

#include "compident/cycle.hpp"
#include "compident/error.hpp"
#include "compident/routes.hpp"
#include "compident/sweep.hpp"
#include "support.hpp"

using namespace compident;
using namespace testsupport;

namespace {

// Orbit count by merging each model with its images under `perms`.
std::size_t orbit_oracle(const std::vector<CompartmentalModel>& models, const std::vector<std::vector<int>>& perms) {
    std::vector<std::size_t> parent(models.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < models.size(); ++i) {
        for (const auto& perm : perms) {
            const auto image = models[i].relabeled(perm);
            const auto it = std::find(models.begin(), models.end(), image);
            REQUIRE(it != models.end());
            parent[find(i)] = find(static_cast<std::size_t>(it - models.begin()));
        }
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < models.size(); ++i) roots += find(i) == i;
    return roots;
}

SweepOptions options(Family f, int n) {
    SweepOptions o;
    o.family = f;
    o.n = n;
    return o;
}

}  // namespace

TEST_CASE("routes agree on cycles") {
    for (int n = 3; n <= 5; ++n) {
        for (int i = 1; i <= n; ++i) {
            for (int p = 1; p <= n; ++p) {
                for (const auto& leaks : all_subsets(n, false)) {
                    const auto m = make_cycle(n, {i}, {p}, leaks);
                    const auto det = coefficient_map_via(m, Route::Determinant);
                    CHECK(compare_maps(det, coefficient_map_via(m, Route::Forests)).equal());
                    CHECK(compare_maps(det, coefficient_map_via(m, Route::ClosedForm)).equal());
                }
            }
        }
    }
}

TEST_CASE("routes agree on catenaries in both directions") {
    for (int n = 1; n <= 5; ++n) {
        for (int in = 1; in <= n; ++in) {
            for (int out = 1; out <= n; ++out) {
                for (const auto& leaks : all_subsets(n, false)) {
                    const auto m = make_catenary(n, {in}, {out}, leaks);
                    const auto det = coefficient_map_via(m, Route::Determinant);
                    CHECK(compare_maps(det, coefficient_map_via(m, Route::Forests)).equal());
                    const auto closed = coefficient_map_via(m, Route::ClosedForm);
                    CHECK(compare_maps(det, closed).equal());
                    CHECK(closed.labels.front().output == out);
                }
            }
        }
    }
}

TEST_CASE("forest route with several inputs and outputs") {
    const auto m = make_cycle(4, {1, 3}, {2, 4}, {1, 2});
    const auto det = coefficient_map(m);
    const auto forests = forest_coefficient_map(m);
    CHECK(det.coeffs == forests.coeffs);
    CHECK(det.labels == forests.labels);
    CHECK_THROWS_AS(closed_form_coefficient_map(m), NotApplicable);
    CHECK_THROWS_AS(closed_form_coefficient_map(CompartmentalModel(3, {{1, 2}, {2, 1}, {2, 3}, {3, 2}, {1, 3}}, {1}, {1}, {})),
                    NotApplicable);
}

TEST_CASE("map comparison") {
    CoefficientMap a, b;
    a.push({}, P("k21"));
    a.push({}, P("k21"));
    a.push({}, P("1"));
    b.push({}, P("k21"));
    CHECK(compare_maps(a, b).equal());
    b.push({}, P("k32"));
    const auto d = compare_maps(a, b);
    CHECK_FALSE(d.equal());
    CHECK(d.only_left.empty());
    CHECK(d.only_right == std::vector<Polynomial>{P("k32")});
    CHECK(parse_route("forests") == Route::Forests);
    CHECK(to_string(Route::ClosedForm) == "closed-form");
    CHECK_THROWS_AS(parse_route("magic"), PreconditionViolated);
}

TEST_CASE("configuration counts and orbit reduction") {
    const auto all3 = all_configurations(options(Family::Cycle, 3));
    CHECK(all3.size() == 392);
    const auto reduced3 = sweep_configurations(options(Family::Cycle, 3));
    CHECK(reduced3.size() == orbit_oracle(all3, {rotation(3, 1)}));
    CHECK(reduced3.size() == 132);
    const auto all4 = all_configurations(options(Family::Cycle, 4));
    CHECK(sweep_configurations(options(Family::Cycle, 4)).size() == orbit_oracle(all4, {rotation(4, 1)}));

    const auto cat = all_configurations(options(Family::Catenary, 4));
    CHECK(cat.size() == 15 * 15 * 16);
    CHECK(sweep_configurations(options(Family::Catenary, 4)).size() ==
          orbit_oracle(cat, {std::vector<int>{0, 4, 3, 2, 1}}));

    auto tree = options(Family::Tree, 4);
    tree.single_in_out = true;
    const auto trees = all_configurations(tree);
    CHECK(trees.size() == 16 * 4 * 4 * 16);  // 4^(4-2) labeled trees
    for (const auto& m : trees) {
        const Shape s = shape_of(m).shape;
        CHECK((s == Shape::BidirectedTree || s == Shape::Catenary));
    }
    CHECK(sweep_configurations(tree).size() ==
          orbit_oracle(trees, {{0, 2, 1, 3, 4}, {0, 2, 3, 4, 1}}));

    auto limited = options(Family::Cycle, 3);
    limited.max_leaks = 1;
    CHECK(all_configurations(limited).size() == 7 * 7 * 4);
    CHECK_THROWS_AS(all_configurations(options(Family::Cycle, 2)), PreconditionViolated);
    CHECK_THROWS_AS(parse_family("blob"), PreconditionViolated);
}

TEST_CASE("sweep verdicts agree for small cycles and trees") {
    for (int n = 3; n <= 4; ++n) {
        const auto report = run_sweep(options(Family::Cycle, n));
        CHECK(report.disagreements() == 0);
        for (const auto& r : report.rows) CHECK(r.verdict_comb.has_value());
    }
    for (int n = 1; n <= 4; ++n) {
        auto o = options(Family::Tree, n);
        o.single_in_out = true;
        const auto report = run_sweep(o);
        CHECK(report.disagreements() == 0);
    }
    // Table rows on the In = {i}, Out = {i-1} family.
    for (int n = 3; n <= 5; ++n) {
        for (const auto& leaks : all_subsets(n, false)) {
            const auto m = make_cycle(n, {2}, {1}, leaks);
            CHECK(is_identifiable(m).identifiable == (leaks.size() <= 1));
        }
    }
}

TEST_CASE("tree law") {
    const auto m = CompartmentalModel(4, {{1, 2}, {2, 1}, {2, 3}, {3, 2}, {2, 4}, {4, 2}}, {1}, {2}, {3});
    CHECK(tree_law(m));
    CHECK_FALSE(tree_law(m.with_outputs({3})));
    CHECK_FALSE(tree_law(m.with_leaks({3, 4})));
    CHECK(combinatorial_verdict(m) == std::optional<bool>(true));
    CHECK_FALSE(combinatorial_verdict(m.with_inputs({1, 3})).has_value());
    CHECK_THROWS_AS(tree_law(make_cycle(3, {1}, {1}, {})), PreconditionViolated);
}

TEST_CASE("serial and parallel sweeps match") {
    auto o = options(Family::Cycle, 3);
    o.max_leaks = 2;
    const auto a = run_sweep(o);
    const auto b = run_sweep_serial(o);
    CHECK(report_csv(a) == report_csv(b));
    CHECK(report_json(a) == report_json(b));
}

TEST_CASE("report emission") {
    SweepReport empty;
    CHECK(report_csv(empty) == "n,edges,in,out,leak,shape,verdict_comb,verdict_rank,params_local,params_non,agree\n");
    const auto one = sweep_models({make_cycle(3, {1}, {2}, {1, 3})}, options(Family::Cycle, 3), false);
    const auto csv = report_csv(one);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.substr(csv.find('\n') + 1) ==
          "3,1>2 2>3 3>1,1,2,1 3,cycle,identifiable,identifiable,k21 k32 k13 k01 k03,,true\n");
    const auto doc = nlohmann::json::parse(report_json(one));
    CHECK(doc["seed"] == kDefaultSeed);
    CHECK(doc["rows"].size() == 1);
    CHECK(model_from_json(doc["rows"][0]["model"]) == make_cycle(3, {1}, {2}, {1, 3}));
    CHECK_THROWS_AS(write_file("/nonexistent/dir/x.csv", csv), IoFailure);
}
