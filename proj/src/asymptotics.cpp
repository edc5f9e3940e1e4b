#include "modgl2/asymptotics.hpp"

#include "modgl2/error.hpp"
#include "modgl2/parallel.hpp"
#include "modgl2/principal_series.hpp"

#include <cmath>

namespace modgl2 {

Rational rational_pow(const Rational& a, int e)
{
    Rational r = 1;
    for (int i = 0; i < e; ++i)
        r *= a;
    return r;
}

Rational ConstantsReport::C_r(int r) const
{
    const Rational q = params.q();
    return q * rational_pow(2, r) * rational_pow(A, r) * (2 * A + q);
}

Asymptotics::Asymptotics(const GrothendieckRing& ring)
    : ring_(ring)
{
    const auto& params = ring_.params();
    const int q = params.q();
    const Rational scale = fraction(1, q * q - 1);
    s_hat_.reserve(params.modulus());
    for (int i = 0; i < params.modulus(); ++i) {
        RingElement sum = ring_.zero();
        for (int j = 0; j < params.modulus(); ++j)
            sum += ring_.principal_series(i - 2 * j, j);
        s_hat_.push_back(sum * scale);
    }
}

SAlphaElement Asymptotics::s_alpha(std::int64_t i) const
{
    int alpha = params().reduce(i);
    return {alpha, s_hat_[alpha]};
}

Rational Asymptotics::norm_L_inf(const RingElement& v) const
{
    return max_abs_coefficient(ring_.convert_basis(v, Basis::L));
}

Rational Asymptotics::norm_S_1(const RingElement& v) const
{
    return sum_abs_coefficients(ring_.convert_basis(v, Basis::S));
}

Rational Asymptotics::operator_norm(const RingElement& v) const
{
    // Columns for the input L_b(y) are det-twists of the column for L_b(0),
    // so every row sum of the multiplication matrix only depends on n.
    const auto& p = params();
    const int q = p.q();
    const int mod = p.modulus();
    RingElement lv = ring_.to_L(v);
    std::vector<Rational> row(q);
    DenseAccumulator acc(p);
    Rational term;
    for (int b = 0; b < q; ++b) {
        acc.clear();
        for (const auto& t : lv.terms()) {
            for (const auto& sc : ring_.structure_constants(t.label.n, b)) {
                term = t.coeff * sc.coeff;
                acc.add(sc.n * mod + (sc.twist + t.label.m) % mod, term);
            }
        }
        for (int idx = 0; idx < p.basis_size(); ++idx)
            if (acc.at(idx) != 0)
                row[idx / mod] += abs(acc.at(idx));
    }
    Rational best = 0;
    for (const auto& r : row)
        if (r > best)
            best = r;
    return best;
}

ConstantsReport Asymptotics::compute_constants(std::optional<int> h) const
{
    const auto& p = params();
    FieldParams with_h(p.p(), p.f(), h ? h : (p.has_h() ? std::optional<int>(p.h()) : std::nullopt));
    const int q = p.q();
    const std::size_t symm_count = static_cast<std::size_t>(q) * q - 1;
    const std::size_t total = symm_count + static_cast<std::size_t>(p.modulus());

    auto norms = parallel_map(total, [&](std::size_t i) {
        if (i < symm_count)
            return operator_norm(ring_.reduce_symm({static_cast<std::int64_t>(i), 0, 0}));
        return operator_norm(s_hat_[i - symm_count]);
    });

    ConstantsReport report{with_h, 0, 0, 0, 0};
    for (const auto& n : norms)
        if (n > report.max_norm)
            report.max_norm = n;
    report.A = Rational(q * q + 2 * q) * report.max_norm;

    report.M_upper = change_of_basis_l1();
    report.C = report.M_upper * report.C_r(with_h.h());
    return report;
}

Rational Asymptotics::change_of_basis_l1() const
{
    Rational total = 0;
    for (int n = 0; n < params().q(); ++n)
        for (int m = 0; m < params().modulus(); ++m)
            total += sum_abs_coefficients(ring_.irreducible_to_S(n, m));
    return total;
}

RingElement Asymptotics::residual(const RingElement& v) const
{
    RingElement lv = ring_.to_L(v);
    if (lv.is_zero())
        return lv;
    auto alpha = central_character(lv);
    if (!alpha)
        throw NotHomogeneous("residual: element has no single central character: " + lv.to_string());
    return lv - s_hat_[*alpha] * dimension(lv);
}

BoundReport Asymptotics::check_theorem_bound(const RingElement& w, std::span<const SymmFactor> factors,
                                             const ConstantsReport& constants) const
{
    if (factors.empty())
        throw ValidationError("check_theorem_bound: at least one symmetric-power factor is required");
    if (!constants.params.same_ring(params()))
        throw ValidationError("check_theorem_bound: constants computed for " + constants.params.describe());
    RingElement lw = ring_.to_L(w);
    if (lw.is_zero() || !central_character(lw))
        throw NotHomogeneous("check_theorem_bound: W must be nonzero with a central character");

    BoundReport r{.product = ring_.zero(), .residual = ring_.zero()};
    RingElement u = ring_.reduce_product(factors);
    r.product = ring_.multiply(lw, u);
    r.residual = residual(r.product);
    r.lhs = operator_norm(r.residual);

    r.dim_U = 1;
    r.min_k_plus_1 = -1;
    for (const auto& f : factors) {
        Rational kp1 = from_int64(f.k + 1);
        r.dim_U *= kp1;
        if (r.min_k_plus_1 < 0 || kp1 < r.min_k_plus_1)
            r.min_k_plus_1 = kp1;
    }
    r.W_S1 = norm_S_1(lw);
    r.W_norm = operator_norm(lw);
    const int count = static_cast<int>(factors.size());
    r.rhs_theorem = constants.C_r(count) * r.W_S1 * r.dim_U / r.min_k_plus_1;
    r.satisfied_theorem = r.lhs <= r.rhs_theorem;

    const int h = constants.params.h();
    r.corollary_applicable = count <= h;
    r.corollary_coefficient = constants.C * r.W_norm;
    r.rhs_corollary = r.corollary_coefficient.get_d() * std::pow(r.dim_U.get_d(), 1.0 - 1.0 / h);
    // lhs <= C||W|| D^{1-1/h}  <=>  lhs^h <= (C||W||)^h D^{h-1}
    r.satisfied_corollary = r.corollary_applicable &&
                            rational_pow(r.lhs, h) <= rational_pow(r.corollary_coefficient, h) * rational_pow(r.dim_U, h - 1);
    return r;
}

std::vector<int> Asymptotics::t_shift_candidates(int j, std::int64_t k) const
{
    const auto& p = params();
    const int target = p.reduce(static_cast<std::int64_t>(p.theta_residue(k, j)) - k);
    std::vector<int> out;
    for (int t = 0; t < p.modulus(); ++t)
        if (p.reduce(2 * t) == target)
            out.push_back(t);
    if (out.empty())
        throw std::logic_error("no t with 2t = theta^j k - k mod q-1");
    return out;
}

int Asymptotics::t_shift(int j, std::int64_t k) const
{
    return t_shift_candidates(j, k).front();
}

FrobeniusCheck Asymptotics::check_frobenius_shift(std::int64_t k, int j, int t, const ConstantsReport& constants) const
{
    RingElement twisted = ring_.reduce_symm(make_factor(params(), k, 0, j));
    RingElement shifted = ring_.reduce_symm(make_factor(params(), k, t, 0));
    FrobeniusCheck c{t, operator_norm(twisted - shifted), 2 * constants.A, false};
    c.satisfied = c.distance <= c.bound;
    return c;
}

Rational Asymptotics::multiplicity_estimate(int n, std::int64_t m, const Rational& dim_v, std::int64_t alpha) const
{
    const auto& p = params();
    WeightLabel l = make_label(p, n, m);
    if (central_character_of(p, l) != p.reduce(alpha))
        return 0;
    return fraction(static_cast<long>(omega(p, n)), p.q() * p.q() - 1) * dim_v;
}

Rational Asymptotics::exact_multiplicity(const RingElement& v, int n, std::int64_t m) const
{
    return ring_.to_L(v).coefficient(n, m);
}

} // namespace modgl2
