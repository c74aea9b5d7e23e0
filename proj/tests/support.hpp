#pragma once

// Shared helpers for the test suites: random polynomials and independent
// reference computations that do not go through the code under test.

#include <map>
#include <set>
#include <random>
#include <vector>

#include "compident/polynomial.hpp"

namespace testsupport {

using compident::Monomial;
using compident::Polynomial;
using compident::Term;
using compident::Var;

inline Var x(int i) { return Var::symbol(i); }
inline Polynomial X(int i) { return Polynomial(x(i)); }
inline Polynomial P(const char* text) { return compident::parse_polynomial(text); }

inline Polynomial random_polynomial(std::mt19937_64& rng, int nvars, int terms, int max_exp, int max_coeff) {
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::uniform_int_distribution<int> expo(0, max_exp);
    std::vector<Term> out;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (int v = 1; v <= nvars; ++v) {
            int e = expo(rng);
            if (e > 0) m = m * Monomial(x(v), e);
        }
        out.push_back({m, mpz_class(coeff(rng))});
    }
    return Polynomial::from_terms(std::move(out));
}

// Term-pair product without merging: the multiset of monomials a naive
// schoolbook expansion would produce.
inline std::size_t naive_product_terms(const Polynomial& a, const Polynomial& b) {
    return a.term_count() * b.term_count();
}

}  // namespace testsupport

#include <algorithm>
#include <numeric>

#include "compident/forests.hpp"
#include "compident/matrix.hpp"
#include "compident/model.hpp"

namespace testsupport {

// Leibniz expansion over all permutations.
inline Polynomial leibniz_det(const compident::SymbolicMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial det;
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
        }
        Polynomial prod(inversions % 2 ? -1 : 1);
        for (std::size_t r = 0; r < n && !prod.is_zero(); ++r) prod *= m(r, perm[r]);
        det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// Checks both forest conditions on an explicit edge list over vertices 0..n.
inline bool is_incoming_forest(int n, const std::vector<compident::LabeledEdge>& edges) {
    std::vector<int> out_degree(n + 1, 0);
    for (const auto& e : edges) {
        if (++out_degree[e.from] > 1) return false;
    }
    // Undirected acyclicity: a multigraph on n+1 vertices is a forest iff
    // each edge joins two different components.
    std::vector<int> comp(n + 1);
    std::iota(comp.begin(), comp.end(), 0);
    for (const auto& e : edges) {
        const int a = comp[e.from];
        const int b = comp[e.to];
        if (a == b) return false;
        for (int& c : comp) {
            if (c == b) c = a;
        }
    }
    return true;
}

inline bool same_component(int n, const std::vector<compident::LabeledEdge>& edges, int u, int v) {
    std::vector<int> comp(n + 1);
    std::iota(comp.begin(), comp.end(), 0);
    for (const auto& e : edges) {
        const int a = comp[e.from];
        const int b = comp[e.to];
        for (int& c : comp) {
            if (c == b) c = a;
        }
    }
    return comp[u] == comp[v];
}

// Every subset of `n` elements, as sorted vectors.
inline std::vector<std::set<int>> all_subsets(int n, bool nonempty) {
    std::vector<std::set<int>> out;
    for (unsigned mask = nonempty ? 1 : 0; mask < (1u << n); ++mask) {
        std::set<int> s;
        for (int v = 1; v <= n; ++v) {
            if (mask & (1u << (v - 1))) s.insert(v);
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace testsupport
