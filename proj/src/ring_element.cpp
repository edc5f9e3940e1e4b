#include "modgl2/ring_element.hpp"

#include "modgl2/error.hpp"

#include <algorithm>

namespace modgl2 {

std::string basis_name(Basis b)
{
    return b == Basis::L ? "L" : "S";
}

Basis parse_basis(const std::string& s)
{
    if (s == "L")
        return Basis::L;
    if (s == "S")
        return Basis::S;
    throw ValidationError("unknown basis '" + s + "' (expected L or S)");
}

RingElement::RingElement(FieldParams params, Basis basis)
    : params_(std::move(params)), basis_(basis)
{
}

RingElement::RingElement(FieldParams params, Basis basis, const std::map<WeightLabel, Rational>& terms)
    : params_(std::move(params)), basis_(basis)
{
    std::map<WeightLabel, Rational> canonical;
    for (const auto& [l, c] : terms)
        canonical[make_label(params_, l.n, l.m)] += c;
    terms_.reserve(canonical.size());
    for (auto& [l, c] : canonical)
        if (c != 0)
            terms_.push_back({l, c});
}

RingElement RingElement::basis_element(const FieldParams& params, Basis basis, int n, std::int64_t m,
                                       const Rational& coeff)
{
    RingElement e(params, basis);
    if (coeff != 0)
        e.terms_.push_back({make_label(params, n, m), coeff});
    return e;
}

Rational RingElement::coefficient(WeightLabel l) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), l,
                               [](const Term& t, const WeightLabel& x) { return t.label < x; });
    if (it != terms_.end() && it->label == l)
        return it->coeff;
    return 0;
}

Rational RingElement::coefficient(int n, std::int64_t m) const
{
    return coefficient(make_label(params_, n, m));
}

void RingElement::check_compatible(const RingElement& o) const
{
    if (!params_.same_ring(o.params_))
        throw ValidationError("ring elements over different fields: " + params_.describe() + " vs " +
                              o.params_.describe());
    if (basis_ != o.basis_)
        throw ValidationError("ring elements in different bases; convert first");
}

RingElement& RingElement::add_scaled(const RingElement& o, int sign)
{
    check_compatible(o);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->label < b->label)) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->label < a->label) {
            merged.push_back({b->label, sign > 0 ? b->coeff : Rational(-b->coeff)});
            ++b;
        } else {
            Rational c = sign > 0 ? Rational(a->coeff + b->coeff) : Rational(a->coeff - b->coeff);
            if (c != 0)
                merged.push_back({a->label, std::move(c)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

RingElement& RingElement::operator+=(const RingElement& o)
{
    return add_scaled(o, 1);
}

RingElement& RingElement::operator-=(const RingElement& o)
{
    return add_scaled(o, -1);
}

RingElement& RingElement::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.coeff *= c;
    return *this;
}

RingElement RingElement::operator-() const
{
    RingElement r = *this;
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

bool RingElement::operator==(const RingElement& o) const
{
    if (!params_.same_ring(o.params_) || basis_ != o.basis_ || terms_.size() != o.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].label != o.terms_[i].label || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

std::string RingElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0)
                c = -c;
        }
        if (c != 1)
            out += c.get_str() + "*";
        out += "[" + basis_name(basis_) + "_" + std::to_string(t.label.n) + "(" + std::to_string(t.label.m) + ")]";
        first = false;
    }
    return out;
}

RingElement det_twist(const RingElement& v, std::int64_t i)
{
    std::map<WeightLabel, Rational> out;
    const auto& params = v.params();
    for (const auto& t : v.terms())
        out[{t.label.n, params.reduce(t.label.m + i)}] = t.coeff;
    return RingElement(params, v.basis(), out);
}

RingElement frobenius_twist(const RingElement& v, int j)
{
    if (v.basis() != Basis::L)
        throw ValidationError("frobenius_twist requires an L-basis element");
    std::map<WeightLabel, Rational> out;
    const auto& params = v.params();
    for (const auto& t : v.terms())
        out[{params.theta_label(t.label.n, j), params.theta_residue(t.label.m, j)}] = t.coeff;
    return RingElement(params, Basis::L, out);
}

Rational dimension(const RingElement& v)
{
    Rational d = 0;
    for (const auto& t : v.terms()) {
        std::int64_t dim = v.basis() == Basis::S ? t.label.n + 1 : irreducible_dimension(v.params(), t.label.n);
        d += t.coeff * Rational(static_cast<long>(dim));
    }
    return d;
}

std::optional<int> central_character(const RingElement& v)
{
    std::optional<int> alpha;
    for (const auto& t : v.terms()) {
        int a = central_character_of(v.params(), t.label);
        if (alpha && *alpha != a)
            return std::nullopt;
        alpha = a;
    }
    return alpha;
}

std::map<int, RingElement> split_by_central_character(const RingElement& v)
{
    std::map<int, std::map<WeightLabel, Rational>> parts;
    for (const auto& t : v.terms())
        parts[central_character_of(v.params(), t.label)][t.label] = t.coeff;
    std::map<int, RingElement> out;
    for (const auto& [a, terms] : parts)
        out.emplace(a, RingElement(v.params(), v.basis(), terms));
    return out;
}

Rational max_abs_coefficient(const RingElement& v)
{
    Rational m = 0;
    for (const auto& t : v.terms()) {
        Rational a = abs(t.coeff);
        if (a > m)
            m = a;
    }
    return m;
}

Rational sum_abs_coefficients(const RingElement& v)
{
    Rational s = 0;
    for (const auto& t : v.terms())
        s += abs(t.coeff);
    return s;
}

DenseAccumulator::DenseAccumulator(const FieldParams& params)
    : params_(params), values_(static_cast<std::size_t>(params.basis_size()))
{
}

RingElement DenseAccumulator::to_element(Basis basis) const
{
    std::map<WeightLabel, Rational> terms;
    int mod = params_.modulus();
    for (int idx = 0; idx < static_cast<int>(values_.size()); ++idx)
        if (values_[idx] != 0)
            terms.emplace(WeightLabel{idx / mod, idx % mod}, values_[idx]);
    return RingElement(params_, basis, terms);
}

void DenseAccumulator::clear()
{
    for (auto& v : values_)
        v = 0;
}

} // namespace modgl2
