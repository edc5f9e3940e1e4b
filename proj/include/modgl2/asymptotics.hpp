#pragma once

#include "modgl2/grothendieck_ring.hpp"

#include <optional>
#include <span>
#include <vector>

namespace modgl2 {

// Normalized average of the principal series with central character alpha:
// dimension 1, coefficient omega(n)/(q^2-1) on every L_n(m) with n+2m = alpha.
struct SAlphaElement {
    int alpha;
    RingElement element;
};

// Explicit constants of the asymptotic estimates for fixed (p, f, h).
struct ConstantsReport {
    FieldParams params;
    // max of the operator norms of [S_r], r < q^2-1, and of every S-hat_i
    Rational max_norm;
    Rational A;
    // Entrywise l1 sum of the L -> S change of basis; an upper bound for the
    // best M with |V|_{S,1} <= M ||V||.
    Rational M_upper;
    Rational C;

    // q * 2^r * A^r * (2A + q)
    Rational C_r(int r) const;
};

struct BoundReport {
    RingElement product;
    RingElement residual;
    Rational lhs{};  // ||r_V||
    Rational dim_U{};
    Rational min_k_plus_1{};
    Rational W_S1{};
    Rational W_norm{};
    Rational rhs_theorem{};  // C_r |W|_{S,1} dim U / min(k_i+1)
    bool satisfied_theorem = false;
    // The corollary bound C ||W|| (dim U)^{1-1/h} applies to at most h factors.
    bool corollary_applicable = false;
    Rational corollary_coefficient{};  // C ||W||
    double rhs_corollary = 0;        // decimal value, for display only
    bool satisfied_corollary = false; // decided exactly
    bool satisfied() const { return satisfied_theorem && (!corollary_applicable || satisfied_corollary); }
};

struct FrobeniusCheck {
    int t;
    Rational distance;  // ||[S_k]^{[j]} - [S_k](t)||
    Rational bound;     // 2A
    bool satisfied;
};

// Asymptotic layer over a fixed ring: the S-hat family, the three norms, the
// explicit constants and the bound checks. Holds a reference to the ring.
class Asymptotics {
public:
    explicit Asymptotics(const GrothendieckRing& ring);

    const GrothendieckRing& ring() const { return ring_; }
    const FieldParams& params() const { return ring_.params(); }

    SAlphaElement s_alpha(std::int64_t i) const;

    Rational norm_L_inf(const RingElement& v) const;
    Rational norm_S_1(const RingElement& v) const;
    // Induced infinity-norm of multiplication by v in the L basis.
    Rational operator_norm(const RingElement& v) const;

    ConstantsReport compute_constants(std::optional<int> h = std::nullopt) const;
    // Entrywise l1 sum of the L -> S matrix (the M_upper of a report).
    Rational change_of_basis_l1() const;

    // [V] - dim(V) S-hat_{alpha(V)}. Throws NotHomogeneous.
    RingElement residual(const RingElement& v) const;

    BoundReport check_theorem_bound(const RingElement& w, std::span<const SymmFactor> factors,
                                    const ConstantsReport& constants) const;

    // Residues t in [0, q-2] with 2t = theta^j k - k mod q-1, ascending.
    std::vector<int> t_shift_candidates(int j, std::int64_t k) const;
    int t_shift(int j, std::int64_t k) const;
    FrobeniusCheck check_frobenius_shift(std::int64_t k, int j, int t, const ConstantsReport& constants) const;

    Rational multiplicity_estimate(int n, std::int64_t m, const Rational& dim_v, std::int64_t alpha) const;
    Rational exact_multiplicity(const RingElement& v, int n, std::int64_t m) const;

private:
    const GrothendieckRing& ring_;
    std::vector<RingElement> s_hat_;
};

// a^e for a small nonnegative exponent.
Rational rational_pow(const Rational& a, int e);

} // namespace modgl2
