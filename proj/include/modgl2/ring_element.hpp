#pragma once

#include "modgl2/field.hpp"
#include "modgl2/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace modgl2 {

enum class Basis { L, S };

std::string basis_name(Basis b);
Basis parse_basis(const std::string& s);

struct Term {
    WeightLabel label;
    Rational coeff;
};

// A finite rational combination of basis classes [L_n(m)] or [S_n(m)] of the
// Grothendieck ring of GL2(F_q), for fixed (p, f). Terms are kept sorted by
// (n, m) and never hold a zero coefficient.
class RingElement {
public:
    RingElement(FieldParams params, Basis basis);
    RingElement(FieldParams params, Basis basis, const std::map<WeightLabel, Rational>& terms);

    static RingElement basis_element(const FieldParams& params, Basis basis, int n, std::int64_t m,
                                     const Rational& coeff = 1);

    const FieldParams& params() const { return params_; }
    Basis basis() const { return basis_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Zero for labels not present.
    Rational coefficient(WeightLabel l) const;
    Rational coefficient(int n, std::int64_t m) const;

    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const Rational& c);

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(RingElement a, const Rational& c) { return a *= c; }
    friend RingElement operator*(const Rational& c, RingElement a) { return a *= c; }
    RingElement operator-() const;

    bool operator==(const RingElement& o) const;

    // Human-readable form, e.g. "[L_2(0)] + 2*[L_1(1)] - 1/2*[L_0(0)]".
    std::string to_string() const;

private:
    void check_compatible(const RingElement& o) const;
    RingElement& add_scaled(const RingElement& o, int sign);

    FieldParams params_;
    Basis basis_;
    std::vector<Term> terms_;
};

// Label map (n, m) -> (n, m + i); valid in either basis.
RingElement det_twist(const RingElement& v, std::int64_t i);

// Label map (n, m) -> (theta^j n, theta^j m). L-basis only.
RingElement frobenius_twist(const RingElement& v, int j);

// Sum of coeff * dim over terms; dim S_n = n+1, dim L_n = prod (n_i + 1).
Rational dimension(const RingElement& v);

// Common value of n + 2m over all terms, or nullopt when the terms disagree.
// The zero element has no central character.
std::optional<int> central_character(const RingElement& v);

// Splits v into parts of constant central character, keyed by that character.
std::map<int, RingElement> split_by_central_character(const RingElement& v);

// max |coefficient| in the current basis (the L-infinity norm when in basis L).
Rational max_abs_coefficient(const RingElement& v);

// sum |coefficient| in the current basis.
Rational sum_abs_coefficients(const RingElement& v);

// Dense accumulator over all q(q-1) labels, used by the hot loops.
class DenseAccumulator {
public:
    explicit DenseAccumulator(const FieldParams& params);

    void add(WeightLabel l, const Rational& c) { values_[label_index(params_, l)] += c; }
    void add(int index, const Rational& c) { values_[index] += c; }
    const Rational& at(int index) const { return values_[index]; }
    RingElement to_element(Basis basis) const;
    void clear();

private:
    FieldParams params_;
    std::vector<Rational> values_;
};

} // namespace modgl2
