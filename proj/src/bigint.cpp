#include "diagcount/bigint.hpp"

#include <sstream>

#include "diagcount/errors.hpp"

namespace diagcount {

BigCount big_pow(uint64_t base, unsigned long exp) {
    return big_pow(BigCount(static_cast<unsigned long>(base)), exp);
}

BigCount big_pow(const BigCount& base, unsigned long exp) {
    BigCount r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigCount factorial(unsigned n) {
    BigCount r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigCount binomial(const BigCount& n, unsigned long k) {
    BigCount r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

BigCount exact_div(const BigCount& num, const BigCount& den, const char* what) {
    if (den == 0) throw InternalInconsistencyError(std::string(what) + ": division by zero");
    BigCount q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) {
        std::ostringstream os;
        os << what << ": " << num << " is not divisible by " << den;
        throw InternalInconsistencyError(os.str());
    }
    return q;
}

std::string dec_string(const BigCount& v) { return v.get_str(10); }

ExactRatio::ExactRatio(BigCount numerator, BigCount denominator)
    : num(std::move(numerator)), den(std::move(denominator)) {
    if (den == 0) throw InternalInconsistencyError("ExactRatio: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigCount g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

bool ExactRatio::less_than(const ExactRatio& o) const {
    return num * o.den < o.num * den;
}

std::string ExactRatio::decimal(unsigned digits) const {
    bool neg = num < 0;
    BigCount a = neg ? BigCount(-num) : num;
    BigCount scale = big_pow(uint64_t(10), digits);
    BigCount q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), BigCount(a * scale).get_mpz_t(),
                den.get_mpz_t());
    if (2 * r >= den) q += 1;
    BigCount ip = q / scale;
    BigCount fp = q % scale;
    std::string frac = fp.get_str(10);
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = ip.get_str(10);
    if (digits > 0) out += "." + frac;
    return neg ? "-" + out : out;
}

}  // namespace diagcount
