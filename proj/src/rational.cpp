#include "approxdeg/rational.hpp"

#include "approxdeg/errors.hpp"

namespace approxdeg {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw UsageError("empty rational literal");
    if (text.find('.') != std::string::npos)
        throw UsageError("decimal rationals are not accepted, use p/q: '" + text + "'");
    std::string body = text;
    const auto slash = body.find('/');
    std::string num = slash == std::string::npos ? body : body.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
    auto ok_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!ok_int(num) || !ok_int(den))
        throw UsageError("malformed rational literal '" + text + "'");
    mpz_class p(num), q(den);
    if (q == 0) throw UsageError("zero denominator in '" + text + "'");
    Rat out(p, q);
    out.canonicalize();
    return out;
}

std::string rat_str(const Rat& value) {
    Rat v = value;
    v.canonicalize();
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rat rat_floor(const Rat& value) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    return Rat(q);
}

long rat_floor_long(const Rat& value) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw SizeError("floor(" + rat_str(value) + ") out of range");
    return q.get_si();
}

long rat_ceil_long(const Rat& value) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw SizeError("ceil(" + rat_str(value) + ") out of range");
    return q.get_si();
}

Rat rat_pow(const Rat& base, unsigned long exp) {
    Rat out = 1;
    Rat b = base;
    unsigned long e = exp;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

Rat binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

Rat factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

double rat_to_double(const Rat& value) { return value.get_d(); }

}  // namespace approxdeg
