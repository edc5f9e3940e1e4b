#pragma once

#include "modgl2/field.hpp"
#include "modgl2/ring_element.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace modgl2 {

// The two four-vertex graphs describing constituents of principal series.
// Graph::Decomposition carries x -> x-1 on the bottom-left vertex,
// Graph::Antecedent carries its inverse x -> x+1; the other vertices and the
// edge set are shared.
enum class Graph { Decomposition, Antecedent };

enum class Vertex { TL = 0, TR = 1, BL = 2, BR = 3 };

inline constexpr std::array<Vertex, 4> kVertices = {Vertex::TL, Vertex::TR, Vertex::BL, Vertex::BR};

std::string vertex_name(Vertex v);
Vertex parse_vertex(const std::string& s);

bool is_right_column(Vertex v);
bool has_edge(Vertex from, Vertex to);

// Image of a digit under the function written on the vertex; may leave [0, p-1].
int apply_vertex(Graph g, Vertex v, int p, int digit);

// Closed walk c_0 -> c_1 -> ... -> c_{f-1} -> c_0. Step i consumes digit i.
struct ClosedPath {
    Graph graph = Graph::Decomposition;
    std::vector<Vertex> vertices;

    bool operator==(const ClosedPath&) const = default;
};

// "TL,BR"
std::string path_to_string(const ClosedPath& c);
ClosedPath parse_path(Graph g, const std::string& s);

// All closed walks of length f, lexicographic in (TL, TR, BL, BR) order.
const std::vector<ClosedPath>& enumerate_closed_paths(Graph g, int f);

// sum p^i lambda_i(n_i), or nullopt when some digit image leaves [0, p-1].
// Applies graph-2 functions when c is an antecedent path.
std::optional<int> lambda_of_path(const FieldParams& params, const ClosedPath& c, int n);

// (sum p^i (n_i - lambda_i(n_i)))/2, with q-1 added inside the half when
// c_{f-1} lies in the right column; reduced mod q-1. Always evaluated with the
// decomposition-graph functions on the same vertex sequence. Requires c to be
// compatible with n.
int ell_of_path(const FieldParams& params, const ClosedPath& c, int n);

struct DiamondConstituent {
    ClosedPath path;
    int lambda;
    int ell;
    WeightLabel label;
};

// Contributing paths with their lambda/ell values, in path order.
std::vector<DiamondConstituent> diamond_constituents(const FieldParams& params, int n, std::int64_t m);

// [V(lambda_n)(m)] in the L basis, for 0 <= n <= q-2.
RingElement diamond_decompose(const FieldParams& params, int n, std::int64_t m);

// Principal-series class for any residue r of the character lambda_r.
RingElement principal_series_class(const FieldParams& params, std::int64_t r, std::int64_t m);

// A(n, m): pairs (n', m') with n' in [0, q-2] such that L_n(m) occurs in
// V(lambda_n')(m'). Sorted.
std::vector<std::pair<int, int>> antecedents(const FieldParams& params, int n, std::int64_t m);

std::int64_t omega_by_paths(const FieldParams& params, int n);
std::int64_t omega_closed_form(const FieldParams& params, int n);
// Both routes; throws std::logic_error if they disagree.
std::int64_t omega(const FieldParams& params, int n);

} // namespace modgl2
