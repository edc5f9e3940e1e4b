#include "modgl2/breuil_mezard.hpp"

#include "modgl2/error.hpp"
#include "modgl2/parallel.hpp"

namespace modgl2 {

namespace {

void require_qp(const FieldParams& params, const char* what)
{
    if (params.f() != 1)
        throw ValidationError(std::string(what) + " requires f = 1 (K = Q_p)");
}

void check_rho(const FieldParams& params, RhoBarQp rho)
{
    if (rho.n < 0 || rho.n > params.p() - 2)
        throw ValidationError("rho-bar n = " + std::to_string(rho.n) + " outside [0, p-2]");
}

} // namespace

std::string variant_name(QpVariant v)
{
    return v == QpVariant::Trivial ? "trivial" : "crystalline";
}

QpVariant parse_variant(const std::string& s)
{
    if (s == "trivial")
        return QpVariant::Trivial;
    if (s == "crystalline")
        return QpVariant::Crystalline;
    throw ValidationError("unknown type variant '" + s + "' (expected trivial or crystalline)");
}

GaloisTypeClass make_galois_type(const GrothendieckRing& ring, std::int64_t dim_type, const RingElement& cls,
                                 std::string label)
{
    RingElement l = ring.to_L(cls);
    if (dim_type <= 0)
        throw ValidationError("type dimension must be positive");
    for (const auto& t : l.terms())
        if (t.coeff < 0 || t.coeff.get_den() != 1)
            throw ValidationError("type class must have nonnegative integer coefficients");
    if (dimension(l) != from_int64(dim_type))
        throw ValidationError("type class has dimension " + dimension(l).get_str() + ", expected " +
                              std::to_string(dim_type));
    if (!central_character(l))
        throw NotHomogeneous("type class has no single central character");
    return {dim_type, l, std::move(label)};
}

std::vector<SymmFactor> factors_of_weight_family(const FieldParams& params, const AlgebraicWeightFamily& v)
{
    if (static_cast<int>(v.pairs.size()) != params.h())
        throw ValidationError("weight family has " + std::to_string(v.pairs.size()) + " pairs, expected h = " +
                              std::to_string(params.h()));
    std::vector<SymmFactor> out;
    for (std::size_t i = 0; i < v.pairs.size(); ++i)
        out.push_back(make_factor(params, v.pairs[i].first, v.pairs[i].second, static_cast<std::int64_t>(i)));
    return out;
}

GaloisTypeClass preset_type_trivial_qp(const GrothendieckRing& ring)
{
    const auto& params = ring.params();
    require_qp(params, "trivial type preset");
    return make_galois_type(ring, params.p(), ring.symm_to_L(params.p() - 1, 0), "trivial");
}

GaloisTypeClass preset_type_crystalline_trivial_qp(const GrothendieckRing& ring)
{
    require_qp(ring.params(), "crystalline trivial type preset");
    return make_galois_type(ring, 1, ring.unit(), "crystalline-trivial");
}

IntrinsicMultiplicities serre_weights_qp_irreducible(const FieldParams& params, RhoBarQp rho)
{
    require_qp(params, "Serre weights of an irreducible rho-bar");
    check_rho(params, rho);
    WeightLabel first = make_label(params, rho.n, rho.m);
    WeightLabel second = make_label(params, params.p() - 1 - rho.n, rho.n + rho.m);
    if (first == second)
        throw std::logic_error("the two Serre weights coincide");
    return {{first, 1}, {second, 1}};
}

std::map<WeightLabel, Integer> a_sigma(const GrothendieckRing& ring, std::span<const SymmFactor> v,
                                       const GaloisTypeClass& type)
{
    if (!central_character(type.reduction_class))
        throw NotHomogeneous("type class has no single central character");
    RingElement cls = ring.multiply(type.reduction_class, ring.reduce_product(v));
    std::map<WeightLabel, Integer> out;
    for (const auto& t : cls.terms()) {
        if (t.coeff < 0 || t.coeff.get_den() != 1)
            throw std::logic_error("semisimplification multiplicity is not a nonnegative integer");
        out.emplace(t.label, t.coeff.get_num());
    }
    return out;
}

std::map<WeightLabel, Integer> a_sigma(const GrothendieckRing& ring, const AlgebraicWeightFamily& v,
                                       const GaloisTypeClass& type)
{
    auto factors = factors_of_weight_family(ring.params(), v);
    return a_sigma(ring, factors, type);
}

Integer mu_aut_from_class(const IntrinsicMultiplicities& intrinsics, const RingElement& product_class)
{
    Integer total = 0;
    for (const auto& [label, mu] : intrinsics) {
        if (mu < 0)
            throw ValidationError("intrinsic multiplicities must be nonnegative");
        Rational a = product_class.coefficient(label);
        total += a.get_num() * mu;
    }
    return total;
}

Integer mu_aut(const GrothendieckRing& ring, const IntrinsicMultiplicities& intrinsics, std::span<const SymmFactor> v,
               const GaloisTypeClass& type)
{
    Integer total = 0;
    auto a = a_sigma(ring, v, type);
    for (const auto& [label, mu] : intrinsics) {
        if (mu < 0)
            throw ValidationError("intrinsic multiplicities must be nonnegative");
        auto it = a.find(label);
        if (it != a.end())
            total += it->second * mu;
    }
    return total;
}

bool qp_gate(const FieldParams& params, RhoBarQp rho, std::int64_t a, std::int64_t b, QpVariant variant)
{
    require_qp(params, "K = Q_p gate");
    check_rho(params, rho);
    // Steinberg S_{p-1} has central character p-1 = 0; the trivial representation 0.
    std::int64_t type_alpha = variant == QpVariant::Trivial ? params.p() - 1 : 0;
    return params.reduce(type_alpha + a + 2 * b) == params.reduce(rho.n + 2 * static_cast<std::int64_t>(rho.m));
}

Rational mu_aut_asymptotic_qp(const FieldParams& params, RhoBarQp rho, std::int64_t a, std::int64_t b, QpVariant variant)
{
    if (a < 0)
        throw ValidationError("a must be nonnegative");
    if (!qp_gate(params, rho, a, b, variant))
        return 0;
    const long p = params.p();
    const long weights = rho.n == 0 ? 2 : 4;
    const long type_dim = variant == QpVariant::Trivial ? p : 1;
    return fraction(weights * type_dim, p * p - 1) * from_int64(a + 1);
}

Rational mu_aut_asymptotic_unramified(int h, int p, std::int64_t dim_type, std::span<const std::int64_t> a_list,
                                      bool gate)
{
    if (h < 1 || static_cast<int>(a_list.size()) != h)
        throw ValidationError("a_list must have exactly h entries");
    if (!gate)
        return 0;
    Integer four_h = 1;
    Integer p2h = 1;
    for (int i = 0; i < h; ++i) {
        four_h *= 4;
        p2h *= p * p;
    }
    Rational out(four_h * Integer(std::to_string(dim_type)), p2h - 1);
    out.canonicalize();
    for (auto a : a_list) {
        if (a < 0)
            throw ValidationError("a_i must be nonnegative");
        out *= from_int64(a + 1);
    }
    return out;
}

void validate_generic_rho(int p, std::span<const int> r)
{
    if (r.empty())
        throw ValidationError("rho-bar exponents r_i are required");
    if (r[0] < 2 || r[0] > p - 3)
        throw ValidationError("genericity requires 2 <= r_0 <= p-3");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] < 1 || r[i] > p - 4)
            throw ValidationError("genericity requires 1 <= r_i <= p-4 for i >= 1");
}

bool unramified_gate(const FieldParams& params, std::span<const std::pair<std::int64_t, std::int64_t>> ab,
                     int alpha_type, std::span<const int> r)
{
    if (static_cast<int>(ab.size()) != params.f() || static_cast<int>(r.size()) != params.f())
        throw ValidationError("unramified gate expects h = f pairs (a_i, b_i) and exponents r_i");
    std::int64_t lhs = alpha_type;
    std::int64_t rhs = 0;
    std::int64_t power = 1;
    for (std::size_t i = 0; i < ab.size(); ++i) {
        lhs += power * params.reduce(ab[i].first + 2 * ab[i].second);
        rhs += power * (r[i] + 1);
        power *= params.p();
    }
    return params.reduce(lhs) == params.reduce(rhs);
}

std::vector<SweepRow> sweep_qp(const GrothendieckRing& ring, RhoBarQp rho, QpVariant variant, std::int64_t a_max)
{
    const auto& params = ring.params();
    require_qp(params, "K = Q_p sweep");
    if (a_max < 0)
        throw ValidationError("a-max must be nonnegative");
    GaloisTypeClass type =
        variant == QpVariant::Trivial ? preset_type_trivial_qp(ring) : preset_type_crystalline_trivial_qp(ring);
    auto weights = serre_weights_qp_irreducible(params, rho);
    const int residues = params.modulus();

    auto per_a = parallel_map(static_cast<std::size_t>(a_max + 1), [&](std::size_t idx) {
        const auto a = static_cast<std::int64_t>(idx);
        RingElement base = ring.multiply(type.reduction_class, ring.reduce_symm({a, 0, 0}));
        std::vector<SweepRow> rows;
        for (int b = 0; b < residues; ++b) {
            SweepRow row{a, b, qp_gate(params, rho, a, b, variant), 0, 0, 0};
            row.mu_exact = mu_aut_from_class(weights, det_twist(base, b));
            row.mu_asymptotic = mu_aut_asymptotic_qp(params, rho, a, b, variant);
            row.abs_error = abs(Rational(row.mu_exact) - row.mu_asymptotic);
            rows.push_back(std::move(row));
        }
        return rows;
    });
    std::vector<SweepRow> out;
    for (auto& rows : per_a)
        for (auto& r : rows)
            out.push_back(std::move(r));
    return out;
}

} // namespace modgl2
