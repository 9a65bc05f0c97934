#include "htau/rational.hpp"

#include <stdexcept>

namespace htau {

Coefficient make_rational(long num, long den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Coefficient c(num, den);
    c.canonicalize();
    return c;
}

Coefficient parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    const auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') {
                return false;
            }
        }
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') {
        num.erase(0, 1);
    }
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) {
        throw std::invalid_argument("rational with zero denominator: " + s);
    }
    Coefficient c(n, d);
    c.canonicalize();
    return c;
}

std::string to_string(const Coefficient& c)
{
    return c.get_str(10);
}

Coefficient factorial(int n)
{
    if (n < 0) {
        throw std::invalid_argument("factorial of a negative integer");
    }
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Coefficient(f);
}

Coefficient binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return Coefficient(0);
    }
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Coefficient(b);
}

} // namespace htau
