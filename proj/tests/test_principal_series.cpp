#include "helpers.hpp"

#include "modgl2/error.hpp"
#include "modgl2/principal_series.hpp"

#include <doctest.h>

#include <set>

using namespace modgl2;
using modgl2::testing::L;

namespace {

const std::vector<std::pair<int, int>> kSmall = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};

ClosedPath path(Graph g, const std::string& s) { return parse_path(g, s); }

} // namespace

TEST_CASE("graph adjacency fixture")
{
    using V = Vertex;
    // from \ to   TL     TR     BL     BR
    const bool expected[4][4] = {
        {true, false, false, true},  // TL
        {false, true, true, false},  // TR
        {true, false, false, true},  // BL
        {false, true, true, false},  // BR
    };
    for (V a : kVertices)
        for (V b : kVertices)
            CHECK_MESSAGE(has_edge(a, b) == expected[static_cast<int>(a)][static_cast<int>(b)],
                          vertex_name(a) << "->" << vertex_name(b));
    CHECK_FALSE(is_right_column(V::TL));
    CHECK(is_right_column(V::TR));
    CHECK_FALSE(is_right_column(V::BL));
    CHECK(is_right_column(V::BR));
}

TEST_CASE("vertex digit functions")
{
    const int p = 5;
    CHECK(apply_vertex(Graph::Decomposition, Vertex::TL, p, 3) == 3);
    CHECK(apply_vertex(Graph::Decomposition, Vertex::TR, p, 3) == 1);
    CHECK(apply_vertex(Graph::Decomposition, Vertex::BL, p, 3) == 2);
    CHECK(apply_vertex(Graph::Antecedent, Vertex::BL, p, 3) == 4);
    CHECK(apply_vertex(Graph::Decomposition, Vertex::BR, p, 3) == 0);
    CHECK(apply_vertex(Graph::Antecedent, Vertex::BR, p, 3) == 0);
}

TEST_CASE("path strings")
{
    auto c = path(Graph::Decomposition, "BL,BR");
    CHECK(path_to_string(c) == "BL,BR");
    CHECK(c.vertices == std::vector<Vertex>{Vertex::BL, Vertex::BR});
    CHECK_THROWS_AS(parse_path(Graph::Decomposition, "TL,XX"), ValidationError);
    CHECK_THROWS_AS(parse_path(Graph::Decomposition, "TL,TR"), ValidationError);  // not closed
}

TEST_CASE("closed path enumeration")
{
    const auto& g1f1 = enumerate_closed_paths(Graph::Decomposition, 1);
    REQUIRE(g1f1.size() == 2);
    CHECK(path_to_string(g1f1[0]) == "TL");
    CHECK(path_to_string(g1f1[1]) == "TR");

    const auto& g2f2 = enumerate_closed_paths(Graph::Antecedent, 2);
    REQUIRE(g2f2.size() == 4);
    std::vector<std::string> names;
    for (const auto& c : g2f2)
        names.push_back(path_to_string(c));
    CHECK(names == std::vector<std::string>{"TL,TL", "TR,TR", "BL,BR", "BR,BL"});

    CHECK(enumerate_closed_paths(Graph::Antecedent, 3).size() == 8);
    for (int f = 1; f <= 6; ++f) {
        const auto& paths = enumerate_closed_paths(Graph::Decomposition, f);
        CHECK(paths.size() == (std::size_t{1} << f));
        for (const auto& c : paths)
            for (int i = 0; i < f; ++i)
                CHECK(has_edge(c.vertices[i], c.vertices[(i + 1) % f]));
    }
}

TEST_CASE("lambda and ell examples")
{
    FieldParams q3(3, 1), q9(3, 2);
    CHECK(lambda_of_path(q9, path(Graph::Decomposition, "BL,BR"), 1) == 3);
    CHECK_FALSE(lambda_of_path(q9, path(Graph::Decomposition, "BR,BL"), 1).has_value());
    for (int n = 0; n <= 7; ++n)
        CHECK(lambda_of_path(q9, path(Graph::Decomposition, "TL,TL"), n) == n);
    CHECK(ell_of_path(q3, path(Graph::Decomposition, "TL"), 1) == 0);
    CHECK(ell_of_path(q3, path(Graph::Decomposition, "TR"), 1) == 1);
    CHECK(ell_of_path(q9, path(Graph::Decomposition, "BL,BR"), 1) == 3);
    CHECK_THROWS_AS(lambda_of_path(q9, path(Graph::Decomposition, "TL,TL"), 9), ValidationError);
}

TEST_CASE("diamond examples")
{
    FieldParams q3(3, 1), q9(3, 2);
    CHECK(diamond_decompose(q3, 1, 0) == L(q3, 1, 0) + L(q3, 1, 1));
    CHECK(diamond_decompose(q3, 0, 0) == L(q3, 0, 0) + L(q3, 2, 0));
    CHECK(diamond_decompose(q9, 1, 0) == L(q9, 1, 0) + L(q9, 7, 1) + L(q9, 3, 3));
    CHECK_THROWS_AS(diamond_decompose(q9, 8, 0), ValidationError);
    auto rows = diamond_constituents(q9, 1, 0);
    REQUIRE(rows.size() == 3);
    CHECK(path_to_string(rows[2].path) == "BL,BR");
    CHECK(rows[2].lambda == 3);
    CHECK(rows[2].ell == 3);
}

TEST_CASE("diamond consistency with the S route, q <= 9")
{
    for (auto [p, f] : kSmall) {
        FieldParams params(p, f);
        GrothendieckRing ring(params);
        const int q = params.q();
        for (int n = 0; n <= q - 2; ++n)
            for (int m = 0; m < params.modulus(); ++m) {
                auto d = diamond_decompose(params, n, m);
                auto route = ring.symm_to_L(n, m) + ring.symm_to_L(q - 1 - n, n + m);
                CHECK_MESSAGE(d == route, "q=" << q << " n=" << n << " m=" << m);
                CHECK(dimension(d) == q + 1);
                CHECK(central_character(d) == params.reduce(n + 2 * m));
                for (const auto& t : d.terms())
                    CHECK(t.coeff == 1);
                std::set<std::pair<int, int>> seen;
                for (const auto& c : diamond_constituents(params, n, m))
                    CHECK(seen.insert({c.lambda, params.reduce(c.ell)}).second);
            }
        // both representatives of the degenerate class
        for (int m = 0; m < params.modulus(); ++m)
            CHECK(principal_series_class(params, 0, m) == principal_series_class(params, q - 1, m));
    }
}

TEST_CASE("antecedent examples")
{
    FieldParams q3(3, 1), q9(3, 2);
    CHECK(antecedents(q3, 1, 0) == std::vector<std::pair<int, int>>{{1, 0}, {1, 1}});
    CHECK(antecedents(q3, 2, 0).size() == 1);
    CHECK(antecedents(q9, 0, 0).size() == 3);
    CHECK_THROWS_AS(antecedents(q9, 9, 0), ValidationError);
}

TEST_CASE("antecedents agree with brute force, q <= 9")
{
    for (auto [p, f] : kSmall) {
        FieldParams params(p, f);
        const int q = params.q();
        const int mod = params.modulus();
        // table[n', m'] = diamond class
        std::vector<RingElement> classes;
        for (int np = 0; np <= q - 2; ++np)
            for (int mp = 0; mp < mod; ++mp)
                classes.push_back(diamond_decompose(params, np, mp));
        for (int n = 0; n < q; ++n) {
            std::size_t size0 = antecedents(params, n, 0).size();
            for (int m = 0; m < mod; ++m) {
                std::vector<std::pair<int, int>> brute;
                for (int np = 0; np <= q - 2; ++np)
                    for (int mp = 0; mp < mod; ++mp)
                        if (classes[np * mod + mp].coefficient(n, m) == 1)
                            brute.emplace_back(np, mp);
                auto a = antecedents(params, n, m);
                CHECK_MESSAGE(a == brute, "q=" << q << " n=" << n << " m=" << m);
                CHECK(a.size() == size0);
            }
        }
    }
}

TEST_CASE("omega examples")
{
    FieldParams q3(3, 1), q9(3, 2);
    CHECK(omega(q9, 4) == 4);
    CHECK(omega(q9, 8) == 1);
    CHECK(omega(q3, 0) == 1);
    CHECK_THROWS_AS(omega(q9, 9), ValidationError);
}

TEST_CASE("omega: path count equals closed form, q <= 25")
{
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                                                        {11, 1}, {13, 1}, {2, 4}, {17, 1}, {19, 1}, {23, 1}, {5, 2}}) {
        FieldParams params(p, f);
        for (int n = 0; n < params.q(); ++n)
            CHECK(omega_by_paths(params, n) == omega_closed_form(params, n));
    }
}
