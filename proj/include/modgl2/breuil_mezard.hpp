#pragma once

#include "modgl2/grothendieck_ring.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace modgl2 {

// Mod-p reduction class of sigma(t), supplied by the caller or by a preset.
struct GaloisTypeClass {
    std::int64_t dim_type;
    RingElement reduction_class;  // L basis, nonnegative integer coefficients
    std::string label;
};

// Validates: dimension of the class equals dim_type, a single central
// character, nonnegative integer coefficients.
GaloisTypeClass make_galois_type(const GrothendieckRing& ring, std::int64_t dim_type, const RingElement& cls,
                                 std::string label);

// Intrinsic multiplicities mu_sigma(rho-bar), finite support.
using IntrinsicMultiplicities = std::map<WeightLabel, std::int64_t>;

// rho-bar restricted to inertia, K = Q_p, absolutely irreducible: n in [0, p-2], m mod p-1.
struct RhoBarQp {
    int n;
    int m;
};

enum class QpVariant { Trivial, Crystalline };

std::string variant_name(QpVariant v);
QpVariant parse_variant(const std::string& s);

// Pairs (n_tau, m_tau) over the h embeddings of K.
struct AlgebraicWeightFamily {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
};

// Embedding tau_i reduces to Frobenius^{i mod f}: factor (n_i, m_i, i mod f).
std::vector<SymmFactor> factors_of_weight_family(const FieldParams& params, const AlgebraicWeightFamily& v);

// Steinberg S_{p-1}, dimension p (f = 1).
GaloisTypeClass preset_type_trivial_qp(const GrothendieckRing& ring);
// Trivial representation, dimension 1 (f = 1).
GaloisTypeClass preset_type_crystalline_trivial_qp(const GrothendieckRing& ring);

// The two Serre weights (n, m) and (p-1-n, n+m), each with multiplicity one.
IntrinsicMultiplicities serre_weights_qp_irreducible(const FieldParams& params, RhoBarQp rho);

// L-coefficients of [reduction of sigma(t)] * prod [S_k(m)^{[j]}].
std::map<WeightLabel, Integer> a_sigma(const GrothendieckRing& ring, std::span<const SymmFactor> v,
                                       const GaloisTypeClass& type);
std::map<WeightLabel, Integer> a_sigma(const GrothendieckRing& ring, const AlgebraicWeightFamily& v,
                                       const GaloisTypeClass& type);

// sum over sigma of mu_sigma * a_sigma.
Integer mu_aut(const GrothendieckRing& ring, const IntrinsicMultiplicities& intrinsics, std::span<const SymmFactor> v,
               const GaloisTypeClass& type);
Integer mu_aut_from_class(const IntrinsicMultiplicities& intrinsics, const RingElement& product_class);

// Central character of the type class plus a + 2b equals n + 2m mod p-1.
bool qp_gate(const FieldParams& params, RhoBarQp rho, std::int64_t a, std::int64_t b, QpVariant variant);

// Leading term of mu_Aut for K = Q_p, trivial type; 0 when the gate fails.
Rational mu_aut_asymptotic_qp(const FieldParams& params, RhoBarQp rho, std::int64_t a, std::int64_t b, QpVariant variant);

// 4^h dim_type prod(a_i + 1) / (p^{2h} - 1) when gate holds, else 0.
Rational mu_aut_asymptotic_unramified(int h, int p, std::int64_t dim_type, std::span<const std::int64_t> a_list,
                                      bool gate);

// 2 <= r_0 <= p-3 and 1 <= r_i <= p-4 for i >= 1. Throws ValidationError.
void validate_generic_rho(int p, std::span<const int> r);

// sum p^i (a_i + 2 b_i) + alpha_type == r_0 + 1 + p (r_1 + 1) + ... mod q-1.
bool unramified_gate(const FieldParams& params, std::span<const std::pair<std::int64_t, std::int64_t>> ab,
                     int alpha_type, std::span<const int> r);

struct SweepRow {
    std::int64_t a;
    std::int64_t b;
    bool gate;
    Integer mu_exact;
    Rational mu_asymptotic;
    Rational abs_error;
};

// Rows for every a in [0, a_max] and every b in [0, p-2], in (a, b) order.
std::vector<SweepRow> sweep_qp(const GrothendieckRing& ring, RhoBarQp rho, QpVariant variant, std::int64_t a_max);

} // namespace modgl2
