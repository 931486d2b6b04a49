#include "hornvol/rational.hpp"

#include <stdexcept>

namespace hornvol {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (ch != ' ' && ch != '\t') text.push_back(ch);
    if (text.empty()) throw std::invalid_argument("empty rational");

    auto dot = text.find('.');
    if (dot != std::string::npos) {
        if (text.find('/') != std::string::npos)
            throw std::invalid_argument("cannot mix '.' and '/' in: " + raw);
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("malformed number: " + raw);
        std::size_t frac_len = text.size() - dot - 1;
        BigInt num;
        if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
            throw std::invalid_argument("malformed number: " + raw);
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    auto slash = text.find('/');
    std::string num_str = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den_str = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!num_str.empty() && num_str[0] == '+') num_str = num_str.substr(1);
    BigInt num, den;
    if (num_str.empty() || num.set_str(num_str, 10) != 0)
        throw std::invalid_argument("malformed rational: " + raw);
    if (den_str.empty() || den.set_str(den_str, 10) != 0)
        throw std::invalid_argument("malformed rational: " + raw);
    if (den == 0) throw std::invalid_argument("zero denominator: " + raw);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

BigInt floor_of(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil_of(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::int64_t to_int64(const BigInt& z) {
    if (!mpz_fits_slong_p(z.get_mpz_t())) throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(z.get_si());
}

std::int64_t to_int64(const Rational& q) {
    if (!is_integer(q)) throw std::domain_error("expected an integer, got " + to_string(q));
    return to_int64(BigInt(q.get_num()));
}

Rational pow_int(const Rational& base, unsigned exponent) {
    Rational result = 1;
    Rational b = base;
    while (exponent) {
        if (exponent & 1u) result *= b;
        b *= b;
        exponent >>= 1u;
    }
    return result;
}

}  // namespace hornvol
