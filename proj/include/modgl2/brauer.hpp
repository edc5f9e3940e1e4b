#pragma once

#include "modgl2/field.hpp"
#include "modgl2/ring_element.hpp"

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace modgl2 {

using Complex = std::complex<long double>;

// Smallest (in base-p integer encoding) monic polynomial of degree 2f over
// F_p whose root x generates F_{q^2}^*. Coefficients low to high, length 2f+1.
std::vector<int> smallest_primitive_polynomial(int p, int degree);

// F_{q^2} built on smallest_primitive_polynomial. Elements are encoded as
// base-p integers of their coefficient vectors; exponents are taken with
// respect to the root x, a fixed generator of the multiplicative group.
class ExtensionField {
public:
    explicit ExtensionField(const FieldParams& params);

    int order() const { return size_; }
    int element_of_exponent(int e) const;
    int exponent_of_element(int z) const;
    int multiply(int a, int b) const;
    // z^q == z
    bool in_base_field(int z) const;

private:
    int p_;
    int degree_;
    int size_;
    std::vector<int> exp_table_;
    std::vector<int> log_table_;
    std::vector<int> modulus_;
};

enum class ClassKind { Central, Split, Nonsplit };

std::string class_kind_name(ClassKind k);

// A semisimple (p-regular) conjugacy class of GL2(F_q), given by the
// exponents of its two eigenvalues with respect to a generator of F_{q^2}^*.
struct PRegularClass {
    ClassKind kind;
    // central: a in [0, q-2]; split: a < b in [0, q-2] (powers of g = g2^{q+1});
    // nonsplit: e in [0, q^2-2], the smaller of {e, eq mod q^2-1}.
    int a = 0;
    int b = 0;
    int e = 0;
    // Eigenvalue exponents in Z/(q^2-1).
    int exponent1 = 0;
    int exponent2 = 0;
    // Number of group elements in the class.
    std::int64_t size = 0;
};

// Central, then split, then nonsplit classes; q(q-1) in total.
std::vector<PRegularClass> enumerate_p_regular_classes(const FieldParams& params);

struct OracleReport {
    RingElement decomposition;
    long double max_rounding_error;
    long double max_imaginary_part;
    long double residual;
};

// Brauer character table of GL2(F_q) with a dense LU factorization for
// recovering Grothendieck classes from class functions. Immutable after
// construction.
class BrauerTable {
public:
    // Tolerance on |coefficient - nearest integer| and on imaginary parts.
    static constexpr long double kRoundingTolerance = 1e-6L;

    explicit BrauerTable(FieldParams params);
    ~BrauerTable();
    BrauerTable(BrauerTable&&) noexcept;
    BrauerTable& operator=(BrauerTable&&) noexcept;

    const FieldParams& params() const { return params_; }
    const std::vector<PRegularClass>& classes() const { return classes_; }

    // Primitive (q^2-1)-th root of unity to the power e.
    Complex root(std::int64_t e) const;

    Complex character_of_symm(const SymmFactor& factor, const PRegularClass& cls) const;
    Complex character_of_irreducible(int n, std::int64_t m, const PRegularClass& cls) const;
    // Value of the stored table entry.
    Complex table_entry(int n, int m, int class_index) const;

    // Class function of prod S_k(m)^{[j]} times det^det.
    std::vector<Complex> product_character(std::span<const SymmFactor> factors, std::int64_t det) const;
    // Class function of a Grothendieck class (either basis).
    std::vector<Complex> class_function(const RingElement& v) const;

    // Solves the table against a class function. Throws OracleError unless
    // every coefficient is within tolerance of a nonnegative integer.
    OracleReport decompose_class_function(std::span<const Complex> values) const;
    OracleReport oracle_decompose_report(std::span<const SymmFactor> factors, std::int64_t det) const;
    RingElement oracle_decompose(std::span<const SymmFactor> factors, std::int64_t det = 0) const;

    // Max entry of |X^T x - e_i| over a solve against each basis vector of the table rows.
    long double self_check_residual() const;

private:
    struct Solver;

    FieldParams params_;
    std::vector<PRegularClass> classes_;
    std::vector<Complex> roots_;
    std::unique_ptr<Solver> solver_;
};

} // namespace modgl2
