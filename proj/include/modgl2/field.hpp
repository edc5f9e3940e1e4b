#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modgl2 {

// Largest q accepted anywhere in the library.
inline constexpr int kMaxQ = 64;

// p, f and q = p^f for GL2(F_q). h is the degree of K/Q_p (f | h) and is
// only consulted by the asymptotic constants and the Breuil-Mezard layer.
class FieldParams {
public:
    FieldParams(int p, int f, std::optional<int> h = std::nullopt);

    int p() const { return p_; }
    int f() const { return f_; }
    int q() const { return q_; }
    // Degree h, defaulting to f when unset.
    int h() const { return h_.value_or(f_); }
    bool has_h() const { return h_.has_value(); }

    // Number of residues mod q-1 (at least 1).
    int modulus() const { return q_ - 1; }
    // q(q-1), the number of irreducibles.
    int basis_size() const { return q_ * (q_ - 1); }

    int reduce(std::int64_t m) const;

    std::vector<int> digits(int n) const;
    int from_digits(const std::vector<int>& digits) const;

    // Digit rotation on labels in [0, q-1]; by j positions (j any integer).
    int theta_label(int n, int j) const;
    // Multiplication by p^j on residues mod q-1.
    int theta_residue(std::int64_t m, int j) const;

    // Same (p, f); h is ignored so that ring elements stay comparable.
    bool same_ring(const FieldParams& o) const { return p_ == o.p_ && f_ == o.f_; }
    bool operator==(const FieldParams& o) const = default;

    std::string describe() const;

private:
    int p_;
    int f_;
    int q_;
    std::optional<int> h_;
};

bool is_prime(int n);

// Label of L_n(m) or S_n(m): 0 <= n <= q-1, m canonical in [0, q-2].
struct WeightLabel {
    int n = 0;
    int m = 0;

    auto operator<=>(const WeightLabel&) const = default;
};

// Throws ValidationError when n is outside [0, q-1]; reduces m.
WeightLabel make_label(const FieldParams& params, int n, std::int64_t m);

// Index in [0, q(q-1)) used by dense accumulators.
inline int label_index(const FieldParams& params, WeightLabel l) { return l.n * params.modulus() + l.m; }

// S_k(m) twisted by Frobenius^j, k unbounded.
struct SymmFactor {
    std::int64_t k = 0;
    int m = 0;
    int j = 0;

    auto operator<=>(const SymmFactor&) const = default;
};

SymmFactor make_factor(const FieldParams& params, std::int64_t k, std::int64_t m = 0, std::int64_t j = 0);

// Product over base-p digits of (n_i + 1).
std::int64_t irreducible_dimension(const FieldParams& params, int n);

// n + 2m mod q-1.
int central_character_of(const FieldParams& params, WeightLabel l);

} // namespace modgl2
