#include "modgl2/principal_series.hpp"

#include "modgl2/error.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace modgl2 {

std::string vertex_name(Vertex v)
{
    switch (v) {
    case Vertex::TL: return "TL";
    case Vertex::TR: return "TR";
    case Vertex::BL: return "BL";
    case Vertex::BR: return "BR";
    }
    return "?";
}

Vertex parse_vertex(const std::string& s)
{
    for (Vertex v : kVertices)
        if (vertex_name(v) == s)
            return v;
    throw ValidationError("unknown graph vertex '" + s + "'");
}

bool is_right_column(Vertex v)
{
    return v == Vertex::TR || v == Vertex::BR;
}

bool has_edge(Vertex from, Vertex to)
{
    switch (from) {
    case Vertex::TL: return to == Vertex::TL || to == Vertex::BR;
    case Vertex::TR: return to == Vertex::TR || to == Vertex::BL;
    case Vertex::BL: return to == Vertex::TL || to == Vertex::BR;
    case Vertex::BR: return to == Vertex::TR || to == Vertex::BL;
    }
    return false;
}

int apply_vertex(Graph g, Vertex v, int p, int digit)
{
    switch (v) {
    case Vertex::TL: return digit;
    case Vertex::TR: return p - 1 - digit;
    case Vertex::BL: return g == Graph::Decomposition ? digit - 1 : digit + 1;
    case Vertex::BR: return p - 2 - digit;
    }
    return digit;
}

std::string path_to_string(const ClosedPath& c)
{
    std::string s;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (i)
            s += ",";
        s += vertex_name(c.vertices[i]);
    }
    return s;
}

ClosedPath parse_path(Graph g, const std::string& s)
{
    ClosedPath c{g, {}};
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        c.vertices.push_back(parse_vertex(item));
    if (c.vertices.empty())
        throw ValidationError("empty path");
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        if (!has_edge(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]))
            throw ValidationError("'" + s + "' is not a closed path");
    return c;
}

const std::vector<ClosedPath>& enumerate_closed_paths(Graph g, int f)
{
    static std::mutex mutex;
    static std::map<std::pair<Graph, int>, std::vector<ClosedPath>> cache;
    if (f < 1)
        throw ValidationError("path length must be at least 1");
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.try_emplace({g, f});
    if (!inserted)
        return it->second;

    std::vector<ClosedPath>& out = it->second;
    std::vector<Vertex> walk;
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(walk.size()) == f) {
            if (has_edge(walk.back(), walk.front()))
                out.push_back({g, walk});
            return;
        }
        for (Vertex v : kVertices) {
            if (!walk.empty() && !has_edge(walk.back(), v))
                continue;
            walk.push_back(v);
            self(self);
            walk.pop_back();
        }
    };
    extend(extend);
    return out;
}

static void check_path(const FieldParams& params, const ClosedPath& c)
{
    if (static_cast<int>(c.vertices.size()) != params.f())
        throw ValidationError("path length " + std::to_string(c.vertices.size()) + " does not match f = " +
                              std::to_string(params.f()));
}

static void check_path_label(const FieldParams& params, Graph g, int n)
{
    // The antecedent graph is applied to any label, the decomposition graph
    // only to principal-series indices.
    int top = g == Graph::Antecedent ? params.q() - 1 : params.q() - 2;
    if (n < 0 || n > top)
        throw ValidationError("label n = " + std::to_string(n) + " outside [0, " + std::to_string(top) + "]");
}

std::optional<int> lambda_of_path(const FieldParams& params, const ClosedPath& c, int n)
{
    check_path(params, c);
    check_path_label(params, c.graph, n);
    int p = params.p();
    auto digits = params.digits(n);
    std::vector<int> image(params.f());
    for (int i = 0; i < params.f(); ++i) {
        image[i] = apply_vertex(c.graph, c.vertices[i], p, digits[i]);
        if (image[i] < 0 || image[i] > p - 1)
            return std::nullopt;
    }
    return params.from_digits(image);
}

int ell_of_path(const FieldParams& params, const ClosedPath& c, int n)
{
    check_path(params, c);
    check_path_label(params, Graph::Decomposition, n);
    int p = params.p();
    auto digits = params.digits(n);
    std::int64_t sum = 0;
    std::int64_t power = 1;
    for (int i = 0; i < params.f(); ++i) {
        int lam = apply_vertex(Graph::Decomposition, c.vertices[i], p, digits[i]);
        if (lam < 0 || lam > p - 1)
            throw ValidationError("path " + path_to_string(c) + " is not compatible with n = " + std::to_string(n));
        sum += power * (digits[i] - lam);
        power *= p;
    }
    if (is_right_column(c.vertices.back()))
        sum += params.q() - 1;
    if (sum % 2 != 0)
        throw std::logic_error("ell_c numerator is odd for path " + path_to_string(c) + ", n = " + std::to_string(n));
    return params.reduce(sum / 2);
}

static void check_principal_label(const FieldParams& params, int n)
{
    if (n < 0 || n > params.q() - 2)
        throw ValidationError("principal-series label n = " + std::to_string(n) + " outside [0, q-2]");
}

std::vector<DiamondConstituent> diamond_constituents(const FieldParams& params, int n, std::int64_t m)
{
    check_principal_label(params, n);
    std::vector<DiamondConstituent> out;
    for (const auto& c : enumerate_closed_paths(Graph::Decomposition, params.f())) {
        auto lam = lambda_of_path(params, c, n);
        if (!lam)
            continue;
        int ell = ell_of_path(params, c, n);
        out.push_back({c, *lam, ell, {*lam, params.reduce(m + ell)}});
    }
    return out;
}

RingElement diamond_decompose(const FieldParams& params, int n, std::int64_t m)
{
    std::map<WeightLabel, Rational> terms;
    for (const auto& d : diamond_constituents(params, n, m))
        terms[d.label] += 1;
    return RingElement(params, Basis::L, terms);
}

RingElement principal_series_class(const FieldParams& params, std::int64_t r, std::int64_t m)
{
    return diamond_decompose(params, params.reduce(r), m);
}

std::vector<std::pair<int, int>> antecedents(const FieldParams& params, int n, std::int64_t m)
{
    if (n < 0 || n > params.q() - 1)
        throw ValidationError("label n = " + std::to_string(n) + " outside [0, q-1]");
    std::set<std::pair<int, int>> out;
    for (const auto& c : enumerate_closed_paths(Graph::Antecedent, params.f())) {
        auto mu = lambda_of_path(params, c, n);
        if (!mu || *mu == params.q() - 1)
            continue;
        ClosedPath forward{Graph::Decomposition, c.vertices};
        int ell = ell_of_path(params, forward, *mu);
        bool fresh = out.emplace(*mu, params.reduce(m - ell)).second;
        if (!fresh)
            throw std::logic_error("two antecedent paths gave the same pair");
    }
    return {out.begin(), out.end()};
}

std::int64_t omega_by_paths(const FieldParams& params, int n)
{
    return static_cast<std::int64_t>(antecedents(params, n, 0).size());
}

std::int64_t omega_closed_form(const FieldParams& params, int n)
{
    if (n < 0 || n > params.q() - 1)
        throw ValidationError("label n = " + std::to_string(n) + " outside [0, q-1]");
    if (n == 0)
        return (std::int64_t{1} << params.f()) - 1;
    int r = 0;
    for (int d : params.digits(n))
        if (d == params.p() - 1)
            ++r;
    return std::int64_t{1} << (params.f() - r);
}

std::int64_t omega(const FieldParams& params, int n)
{
    std::int64_t a = omega_by_paths(params, n);
    std::int64_t b = omega_closed_form(params, n);
    if (a != b)
        throw std::logic_error("omega(" + std::to_string(n) + "): path count " + std::to_string(a) +
                               " != closed form " + std::to_string(b));
    return a;
}

} // namespace modgl2
