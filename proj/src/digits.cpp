#include "palindist/digits.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "palindist/bignum.hpp"
#include "palindist/errors.hpp"

namespace palindist {

namespace {

void require_base(int base) {
    if (base < 2) throw std::invalid_argument("base must be >= 2, got " + std::to_string(base));
}

int half_length(int length) { return (length + 1) / 2; }

} // namespace

DigitString to_digits(const mpz_class& n, int base) {
    require_base(base);
    if (n < 1) throw std::invalid_argument("to_digits requires n >= 1");
    DigitString ds;
    ds.base = base;
    mpz_class rest = n;
    while (rest > 0) {
        ds.digits.push_back(
            static_cast<int>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(),
                                           static_cast<unsigned long>(base))));
    }
    std::reverse(ds.digits.begin(), ds.digits.end());
    return ds;
}

mpz_class from_digits(const DigitString& ds) {
    require_base(ds.base);
    mpz_class n = 0;
    for (int d : ds.digits) {
        if (d < 0 || d >= ds.base) throw std::invalid_argument("digit out of range");
        n = n * ds.base + d;
    }
    return n;
}

int digit_length(const mpz_class& n, int base) {
    require_base(base);
    if (n < 1) throw std::invalid_argument("digit_length requires n >= 1");
    int len = 0;
    mpz_class rest = n;
    while (rest > 0) {
        rest /= base;
        ++len;
    }
    return len;
}

bool is_palindrome(const mpz_class& n, int base) {
    DigitString ds = to_digits(n, base);
    const auto& d = ds.digits;
    for (std::size_t i = 0, j = d.size() - 1; i < j; ++i, --j)
        if (d[i] != d[j]) return false;
    return true;
}

mpz_class count_exact_length(int base, int length) {
    require_base(base);
    if (length < 1) throw std::invalid_argument("length must be >= 1");
    return (base - 1) * pow_mpz(base, half_length(length) - 1);
}

mpz_class palindrome_from_prefix(int base, int length, const mpz_class& prefix) {
    require_base(base);
    if (length < 1) throw std::invalid_argument("length must be >= 1");
    const int h = half_length(length);
    if (prefix < pow_mpz(base, h - 1) || prefix >= pow_mpz(base, h))
        throw std::out_of_range("prefix has the wrong digit length");
    DigitString top = to_digits(prefix, base);
    std::vector<int> digits(top.digits);
    digits.resize(length);
    for (int i = h; i < length; ++i) digits[i] = digits[length - 1 - i];
    return from_digits(DigitString{base, std::move(digits)});
}

mpz_class count_up_to(int base, const mpz_class& x) {
    require_base(base);
    if (x < 1) return 0;
    const int len = digit_length(x, base);
    mpz_class total = 0;
    for (int l = 1; l < len; ++l) total += count_exact_length(base, l);
    // Bounded count at the top length: prefixes strictly below x's own
    // half-prefix, plus the boundary palindrome if it does not exceed x.
    const int h = half_length(len);
    mpz_class star = x / pow_mpz(base, len - h); // first h digits of x
    total += star - pow_mpz(base, h - 1);
    if (palindrome_from_prefix(base, len, star) <= x) total += 1;
    return total;
}

mpz_class nth_palindrome(int base, int length, const mpz_class& index) {
    if (index < 0 || index >= count_exact_length(base, length))
        throw std::out_of_range("palindrome index out of range for this length");
    return palindrome_from_prefix(base, length,
                                  pow_mpz(base, half_length(length) - 1) + index);
}

mpz_class palindrome_index(int base, const mpz_class& n) {
    if (!is_palindrome(n, base)) throw std::invalid_argument("not a palindrome");
    const int len = digit_length(n, base);
    const int h = half_length(len);
    mpz_class prefix = n / pow_mpz(base, len - h);
    return prefix - pow_mpz(base, h - 1);
}

PalindromeStream::PalindromeStream(int base, const mpz_class& lo, const mpz_class& hi)
    : base_(base), hi_(hi) {
    require_base(base);
    mpz_class start = std::max(mpz_class(1), lo);
    if (start > hi_) {
        done_ = true;
        return;
    }
    start_length(digit_length(start, base_));
    // Skip prefixes whose palindrome falls below the range.
    const int h = half_length(length_);
    prefix_ = start / pow_mpz(base_, length_ - h);
    if (palindrome_from_prefix(base_, length_, prefix_) < start) ++prefix_;
}

void PalindromeStream::start_length(int length) {
    length_ = length;
    const int h = half_length(length);
    prefix_ = pow_mpz(base_, h - 1);
    prefix_end_ = pow_mpz(base_, h);
}

std::optional<mpz_class> PalindromeStream::next() {
    if (done_) return std::nullopt;
    if (prefix_ >= prefix_end_) start_length(length_ + 1);
    mpz_class value = palindrome_from_prefix(base_, length_, prefix_);
    if (value > hi_) {
        done_ = true;
        return std::nullopt;
    }
    ++prefix_;
    return value;
}

std::vector<mpz_class> palindromes_in_range(int base, const mpz_class& lo,
                                            const mpz_class& hi) {
    std::vector<mpz_class> out;
    PalindromeStream stream(base, lo, hi);
    while (auto v = stream.next()) out.push_back(std::move(*v));
    return out;
}

SignatureDecomp signature_decompose(const mpz_class& n, int K, int base) {
    require_base(base);
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (!is_palindrome(n, base)) throw std::invalid_argument("not a palindrome");
    const int len = digit_length(n, base);
    const int delta = len % 2;
    const int m = len / 2;
    if (m - K < 1)
        throw std::invalid_argument("palindrome too short: need at least 2*(K+1) digits");

    SignatureDecomp d;
    d.K = K;
    d.M = m;
    d.delta = delta;
    const int middle_width = len - 2 * K;
    const mpz_class shift_k = pow_mpz(base, K);
    d.n1 = n % shift_k;
    d.n3 = n / pow_mpz(base, K + middle_width);
    mpz_class middle = (n / shift_k) % pow_mpz(base, middle_width);
    if (middle == 0) {
        d.mu = 0;
    } else {
        // Trailing-zero count of the middle block; its leading zeros match
        // by the symmetry of n.
        int mu = 0;
        while (middle % base == 0) {
            middle /= base;
            ++mu;
        }
        d.mu = mu;
        d.n2 = middle;
    }
    return d;
}

mpz_class recompose(const SignatureDecomp& d, int base) {
    require_base(base);
    const int middle_width = 2 * (d.M - d.K) + d.delta;
    mpz_class n = d.n1 + pow_mpz(base, d.K + middle_width) * d.n3;
    if (d.n2) n += pow_mpz(base, d.K + d.mu) * *d.n2;
    return n;
}

mpz_class k_complement(const mpz_class& n3, int K, int base) {
    require_base(base);
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (n3 < pow_mpz(base, K - 1) || n3 >= pow_mpz(base, K))
        throw std::out_of_range("n3 must have exactly K digits");
    DigitString top = to_digits(n3, base);
    mpz_class n1 = 0;
    for (auto it = top.digits.rbegin(); it != top.digits.rend(); ++it)
        n1 = n1 * base + *it;
    return n1;
}

} // namespace palindist
