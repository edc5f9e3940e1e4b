#include "modgl2/brauer.hpp"

#include "modgl2/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace modgl2 {

namespace {

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

int ipow(int base, int e)
{
    int r = 1;
    while (e-- > 0)
        r *= base;
    return r;
}

// Polynomials over F_p of degree < d, coefficient vectors low to high.
std::vector<int> decode(int z, int p, int d)
{
    std::vector<int> c(d);
    for (int i = 0; i < d; ++i) {
        c[i] = z % p;
        z /= p;
    }
    return c;
}

int encode(const std::vector<int>& c, int p)
{
    int z = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        z = z * p + c[i];
    return z;
}

// Schoolbook product modulo the monic polynomial `modulus` (length d+1).
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& modulus, int p)
{
    const int d = static_cast<int>(modulus.size()) - 1;
    std::vector<int> prod(2 * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int k = 2 * d - 1; k >= d; --k) {
        int c = prod[k];
        if (c == 0)
            continue;
        for (int i = 0; i <= d; ++i)
            prod[k - d + i] = ((prod[k - d + i] - c * modulus[i]) % p + p) % p;
    }
    prod.resize(d);
    return prod;
}

} // namespace

std::vector<int> smallest_primitive_polynomial(int p, int degree)
{
    const int size = ipow(p, degree);
    const int group_order = size - 1;
    for (int code = 1; code < size; ++code) {
        std::vector<int> modulus = decode(code, p, degree);
        if (modulus[0] == 0)
            continue;
        modulus.push_back(1);
        std::vector<int> one(degree, 0);
        one[0] = 1;
        std::vector<int> x(degree, 0);
        if (degree > 1)
            x[1] = 1;
        else
            x[0] = (p - modulus[0]) % p;
        std::vector<int> power = x;
        int order = 1;
        while (power != one && order <= group_order) {
            power = poly_mulmod(power, x, modulus, p);
            ++order;
        }
        if (order == group_order)
            return modulus;
    }
    throw std::logic_error("no primitive polynomial found");
}

ExtensionField::ExtensionField(const FieldParams& params)
    : p_(params.p()), degree_(2 * params.f()), size_(params.q() * params.q())
{
    auto modulus = smallest_primitive_polynomial(p_, degree_);
    exp_table_.resize(size_ - 1);
    log_table_.assign(size_, -1);
    std::vector<int> x(degree_, 0);
    if (degree_ > 1)
        x[1] = 1;
    else
        x[0] = (p_ - modulus[0]) % p_;
    std::vector<int> power(degree_, 0);
    power[0] = 1;
    for (int e = 0; e < size_ - 1; ++e) {
        int z = encode(power, p_);
        exp_table_[e] = z;
        log_table_[z] = e;
        power = poly_mulmod(power, x, modulus, p_);
    }
    modulus_ = std::move(modulus);
}

int ExtensionField::element_of_exponent(int e) const
{
    int n = size_ - 1;
    return exp_table_[((e % n) + n) % n];
}

int ExtensionField::exponent_of_element(int z) const
{
    if (z <= 0 || z >= size_)
        throw ValidationError("zero has no discrete logarithm");
    return log_table_[z];
}

int ExtensionField::multiply(int a, int b) const
{
    return encode(poly_mulmod(decode(a, p_, degree_), decode(b, p_, degree_), modulus_, p_), p_);
}

bool ExtensionField::in_base_field(int z) const
{
    // z^q by repeated p-th powers, with plain polynomial arithmetic.
    int w = z;
    for (int i = 0; i < degree_ / 2; ++i) {
        int acc = 1;
        for (int j = 0; j < p_; ++j)
            acc = multiply(acc, w);
        w = acc;
    }
    return w == z;
}

std::string class_kind_name(ClassKind k)
{
    switch (k) {
    case ClassKind::Central: return "central";
    case ClassKind::Split: return "split";
    case ClassKind::Nonsplit: return "nonsplit";
    }
    return "?";
}

std::vector<PRegularClass> enumerate_p_regular_classes(const FieldParams& params)
{
    const int q = params.q();
    const int n = q * q - 1;
    ExtensionField field(params);

    std::vector<int> base;
    for (int e = 0; e < n; ++e)
        if (field.in_base_field(field.element_of_exponent(e)))
            base.push_back(e);
    if (static_cast<int>(base.size()) != q - 1)
        throw std::logic_error("F_q^* inside F_{q^2}^* has the wrong size");

    std::vector<PRegularClass> out;
    const std::int64_t qq = q;
    for (int e : base) {
        if (e % (q + 1) != 0)
            throw std::logic_error("base-field exponent not divisible by q+1");
        PRegularClass c{ClassKind::Central};
        c.a = c.b = e / (q + 1);
        c.exponent1 = c.exponent2 = e;
        c.size = 1;
        out.push_back(c);
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        for (std::size_t j = i + 1; j < base.size(); ++j) {
            PRegularClass c{ClassKind::Split};
            c.a = base[i] / (q + 1);
            c.b = base[j] / (q + 1);
            c.exponent1 = base[i];
            c.exponent2 = base[j];
            c.size = qq * (qq + 1);
            out.push_back(c);
        }
    }
    std::set<int> base_set(base.begin(), base.end());
    for (int e = 0; e < n; ++e) {
        if (base_set.count(e))
            continue;
        int conj = static_cast<int>((static_cast<std::int64_t>(e) * q) % n);
        if (conj < e)
            continue;
        PRegularClass c{ClassKind::Nonsplit};
        c.e = e;
        c.exponent1 = e;
        c.exponent2 = conj;
        c.size = qq * (qq - 1);
        out.push_back(c);
    }
    return out;
}

struct BrauerTable::Solver {
    Matrix table;  // rows: irreducibles, columns: classes
    Eigen::PartialPivLU<Matrix> lu;
};

BrauerTable::BrauerTable(FieldParams params)
    : params_(std::move(params)), classes_(enumerate_p_regular_classes(params_)), solver_(std::make_unique<Solver>())
{
    const int q = params_.q();
    const std::int64_t n = static_cast<std::int64_t>(q) * q - 1;
    roots_.resize(static_cast<std::size_t>(n));
    for (std::int64_t e = 0; e < n; ++e) {
        long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(e) / static_cast<long double>(n);
        roots_[e] = Complex(std::cos(angle), std::sin(angle));
    }

    const int size = params_.basis_size();
    if (static_cast<int>(classes_.size()) != size)
        throw std::logic_error("p-regular class count differs from the number of irreducibles");
    solver_->table.resize(size, size);
    for (int nn = 0; nn < q; ++nn)
        for (int m = 0; m < params_.modulus(); ++m)
            for (int c = 0; c < size; ++c)
                solver_->table(label_index(params_, {nn, m}), c) = character_of_irreducible(nn, m, classes_[c]);
    solver_->lu.compute(solver_->table.transpose());
}

BrauerTable::~BrauerTable() = default;
BrauerTable::BrauerTable(BrauerTable&&) noexcept = default;
BrauerTable& BrauerTable::operator=(BrauerTable&&) noexcept = default;

Complex BrauerTable::root(std::int64_t e) const
{
    const std::int64_t n = static_cast<std::int64_t>(roots_.size());
    return roots_[((e % n) + n) % n];
}

Complex BrauerTable::character_of_symm(const SymmFactor& factor, const PRegularClass& cls) const
{
    const std::int64_t n = static_cast<std::int64_t>(roots_.size());
    std::int64_t frob = 1;
    for (int i = 0; i < factor.j; ++i)
        frob = (frob * params_.p()) % n;
    const std::int64_t a1 = (cls.exponent1 * frob) % n;
    const std::int64_t a2 = (cls.exponent2 * frob) % n;
    const std::int64_t k = factor.k;
    Complex det_power = root(((a1 + a2) % n) * factor.m);
    if (a1 == a2)
        return det_power * static_cast<long double>(k + 1) * root((k % n) * a1);
    Complex num = root(((k + 1) % n) * a1) - root(((k + 1) % n) * a2);
    Complex den = root(a1) - root(a2);
    return det_power * num / den;
}

Complex BrauerTable::character_of_irreducible(int n, std::int64_t m, const PRegularClass& cls) const
{
    WeightLabel l = make_label(params_, n, m);
    const std::int64_t order = static_cast<std::int64_t>(roots_.size());
    auto digits = params_.digits(l.n);
    Complex value = root(((cls.exponent1 + cls.exponent2) % order) * l.m);
    for (int i = 0; i < params_.f(); ++i)
        if (digits[i] != 0)
            value *= character_of_symm({digits[i], 0, i}, cls);
    return value;
}

Complex BrauerTable::table_entry(int n, int m, int class_index) const
{
    return solver_->table(label_index(params_, make_label(params_, n, m)), class_index);
}

std::vector<Complex> BrauerTable::product_character(std::span<const SymmFactor> factors, std::int64_t det) const
{
    const std::int64_t order = static_cast<std::int64_t>(roots_.size());
    const std::int64_t d = params_.reduce(det);
    std::vector<Complex> out;
    out.reserve(classes_.size());
    for (const auto& cls : classes_) {
        Complex v = root(((cls.exponent1 + cls.exponent2) % order) * d);
        for (const auto& f : factors)
            v *= character_of_symm(f, cls);
        out.push_back(v);
    }
    return out;
}

std::vector<Complex> BrauerTable::class_function(const RingElement& v) const
{
    if (!params_.same_ring(v.params()))
        throw ValidationError("class_function: field mismatch");
    std::vector<Complex> out(classes_.size(), Complex(0));
    for (const auto& t : v.terms()) {
        long double c = static_cast<long double>(t.coeff.get_d());
        for (std::size_t i = 0; i < classes_.size(); ++i) {
            Complex x = v.basis() == Basis::L
                            ? solver_->table(label_index(params_, t.label), static_cast<Eigen::Index>(i))
                            : character_of_symm({t.label.n, t.label.m, 0}, classes_[i]);
            out[i] += c * x;
        }
    }
    return out;
}

OracleReport BrauerTable::decompose_class_function(std::span<const Complex> values) const
{
    const int size = params_.basis_size();
    if (static_cast<int>(values.size()) != size)
        throw ValidationError("class function has the wrong length");
    Vector rhs(size);
    for (int i = 0; i < size; ++i)
        rhs(i) = values[i];
    Vector x = solver_->lu.solve(rhs);

    OracleReport report{RingElement(params_, Basis::L), 0, 0, 0};
    std::map<WeightLabel, Rational> terms;
    Vector rounded(size);
    const int mod = params_.modulus();
    for (int i = 0; i < size; ++i) {
        long double re = x(i).real();
        long double nearest = std::round(re);
        report.max_rounding_error = std::max(report.max_rounding_error, std::fabs(re - nearest));
        report.max_imaginary_part = std::max(report.max_imaginary_part, std::fabs(x(i).imag()));
        rounded(i) = Complex(nearest, 0);
        if (nearest < 0 && std::fabs(re - nearest) < kRoundingTolerance) {
            std::ostringstream msg;
            msg << "oracle produced negative multiplicity " << static_cast<long long>(nearest) << " for L_"
                << i / mod << "(" << i % mod << ")";
            throw OracleError(msg.str());
        }
        if (nearest != 0)
            terms[{i / mod, i % mod}] = Rational(static_cast<long>(nearest));
    }
    Vector back = solver_->table.transpose() * rounded - rhs;
    long double scale = std::max<long double>(1, rhs.cwiseAbs().maxCoeff());
    report.residual = back.cwiseAbs().maxCoeff() / scale;
    if (report.max_rounding_error >= kRoundingTolerance || report.max_imaginary_part >= kRoundingTolerance) {
        std::ostringstream msg;
        msg << "oracle rounding failure: max distance to an integer " << static_cast<double>(report.max_rounding_error)
            << ", max imaginary part " << static_cast<double>(report.max_imaginary_part);
        throw OracleError(msg.str());
    }
    report.decomposition = RingElement(params_, Basis::L, terms);
    return report;
}

OracleReport BrauerTable::oracle_decompose_report(std::span<const SymmFactor> factors, std::int64_t det) const
{
    auto values = product_character(factors, det);
    return decompose_class_function(values);
}

RingElement BrauerTable::oracle_decompose(std::span<const SymmFactor> factors, std::int64_t det) const
{
    return oracle_decompose_report(factors, det).decomposition;
}

long double BrauerTable::self_check_residual() const
{
    const int size = params_.basis_size();
    Matrix identity = Matrix::Identity(size, size);
    Matrix solved = solver_->lu.solve(solver_->table.transpose());
    return (solved - identity).cwiseAbs().maxCoeff();
}

} // namespace modgl2
