#include "modgl2/field.hpp"

#include "modgl2/error.hpp"

namespace modgl2 {

bool is_prime(int n)
{
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FieldParams::FieldParams(int p, int f, std::optional<int> h)
    : p_(p), f_(f), q_(1), h_(h)
{
    if (!is_prime(p))
        throw ValidationError("p = " + std::to_string(p) + " is not prime");
    if (f < 1)
        throw ValidationError("f must be at least 1");
    for (int i = 0; i < f; ++i) {
        q_ *= p;
        if (q_ > kMaxQ)
            throw ValidationError("q = p^f exceeds the cap q <= " + std::to_string(kMaxQ));
    }
    if (h_ && (*h_ < 1 || *h_ % f != 0))
        throw ValidationError("h must be a positive multiple of f");
}

int FieldParams::reduce(std::int64_t m) const
{
    std::int64_t mod = modulus();
    std::int64_t r = m % mod;
    if (r < 0)
        r += mod;
    return static_cast<int>(r);
}

std::vector<int> FieldParams::digits(int n) const
{
    std::vector<int> d(f_);
    for (int i = 0; i < f_; ++i) {
        d[i] = n % p_;
        n /= p_;
    }
    return d;
}

int FieldParams::from_digits(const std::vector<int>& digits) const
{
    int n = 0;
    for (int i = f_ - 1; i >= 0; --i)
        n = n * p_ + digits[i];
    return n;
}

int FieldParams::theta_label(int n, int j) const
{
    if (n < 0 || n > q_ - 1)
        throw ValidationError("label " + std::to_string(n) + " outside [0, q-1]");
    int shift = ((j % f_) + f_) % f_;
    auto d = digits(n);
    std::vector<int> rotated(f_);
    for (int i = 0; i < f_; ++i)
        rotated[(i + shift) % f_] = d[i];
    return from_digits(rotated);
}

int FieldParams::theta_residue(std::int64_t m, int j) const
{
    int shift = ((j % f_) + f_) % f_;
    std::int64_t r = reduce(m);
    for (int i = 0; i < shift; ++i)
        r = (r * p_) % modulus();
    return static_cast<int>(r);
}

std::string FieldParams::describe() const
{
    std::string s = "p=" + std::to_string(p_) + " f=" + std::to_string(f_) + " q=" + std::to_string(q_);
    if (h_)
        s += " h=" + std::to_string(*h_);
    return s;
}

WeightLabel make_label(const FieldParams& params, int n, std::int64_t m)
{
    if (n < 0 || n > params.q() - 1)
        throw ValidationError("weight label n = " + std::to_string(n) + " outside [0, " +
                              std::to_string(params.q() - 1) + "]");
    return {n, params.reduce(m)};
}

SymmFactor make_factor(const FieldParams& params, std::int64_t k, std::int64_t m, std::int64_t j)
{
    if (k < 0)
        throw ValidationError("symmetric power degree must be nonnegative, got " + std::to_string(k));
    std::int64_t jf = j % params.f();
    if (jf < 0)
        jf += params.f();
    return {k, params.reduce(m), static_cast<int>(jf)};
}

std::int64_t irreducible_dimension(const FieldParams& params, int n)
{
    std::int64_t d = 1;
    for (int digit : params.digits(n))
        d *= digit + 1;
    return d;
}

int central_character_of(const FieldParams& params, WeightLabel l)
{
    return params.reduce(static_cast<std::int64_t>(l.n) + 2 * static_cast<std::int64_t>(l.m));
}

} // namespace modgl2
