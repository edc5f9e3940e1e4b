#include "modgl2/expression.hpp"

#include "modgl2/error.hpp"
#include "modgl2/json_io.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace modgl2 {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_space()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool done()
    {
        skip_space();
        return pos_ >= s_.size();
    }
    bool accept(char c)
    {
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    char peek()
    {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    std::int64_t integer()
    {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        std::int64_t v = 0;
        std::string_view digits = s_.substr(start, pos_ - start);
        if (!digits.empty() && digits.front() == '+')
            digits.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            fail("expected an integer");
        return v;
    }
    std::string_view number_token()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ValidationError("cannot parse '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + what);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

RingElement parse_element(const GrothendieckRing& ring, std::string_view text)
{
    Cursor cur(text);
    if (cur.peek() == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(std::string("malformed ring element JSON: ") + e.what());
        }
        RingElement v = ring_element_from_json(j);
        if (!v.params().same_ring(ring.params()))
            throw ValidationError("ring element JSON is over " + v.params().describe() + ", expected " +
                                  ring.params().describe());
        return ring.to_L(v);
    }

    RingElement out = ring.zero();
    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        if (cur.accept('-'))
            sign = -1;
        else if (!cur.accept('+') && !first)
            cur.fail("expected '+' or '-'");
        Rational coeff = 1;
        if (cur.peek() != '[') {
            coeff = parse_rational(cur.number_token());
            cur.expect('*');
        }
        cur.expect('[');
        char b = cur.peek();
        if (b != 'L' && b != 'S')
            cur.fail("expected L or S");
        cur.accept(b);
        cur.expect('_');
        std::int64_t n = cur.integer();
        cur.expect('(');
        std::int64_t m = cur.integer();
        cur.expect(')');
        cur.expect(']');
        if (n < 0 || n > ring.params().q() - 1)
            throw ValidationError("label n = " + std::to_string(n) + " outside [0, q-1]");
        RingElement term = RingElement::basis_element(ring.params(), b == 'L' ? Basis::L : Basis::S,
                                                      static_cast<int>(n), m, coeff * sign);
        out += ring.to_L(term);
        first = false;
    }
    if (first)
        throw ValidationError("empty ring element expression");
    return out;
}

std::vector<SymmFactor> parse_factors(const FieldParams& params, std::string_view text)
{
    std::vector<SymmFactor> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::int64_t parts[3] = {0, 0, 0};
        int count = 0;
        std::size_t s = 0;
        while (true) {
            std::size_t colon = item.find(':', s);
            std::string_view piece = item.substr(s, colon == std::string_view::npos ? std::string_view::npos : colon - s);
            if (count >= 3)
                throw ValidationError("factor '" + std::string(item) + "' has more than three fields");
            auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), parts[count]);
            if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size())
                throw ValidationError("malformed factor '" + std::string(item) + "' (expected k[:m[:j]])");
            ++count;
            if (colon == std::string_view::npos)
                break;
            s = colon + 1;
        }
        out.push_back(make_factor(params, parts[0], parts[1], parts[2]));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace modgl2
