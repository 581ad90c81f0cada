#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace palindist {

// Base-g digit vector, most significant digit first.  Leading digit is
// nonzero for any value >= 1.
struct DigitString {
    int base = 10;
    std::vector<int> digits;
};

DigitString to_digits(const mpz_class& n, int base);
mpz_class from_digits(const DigitString& ds);

// Number of base-g digits of n >= 1.
int digit_length(const mpz_class& n, int base);

// True iff the digit string of n equals its reversal.
bool is_palindrome(const mpz_class& n, int base);

// |P_L|: palindromes with exactly `length` digits, (g-1)*g^(ceil(L/2)-1).
mpz_class count_exact_length(int base, int length);

// |P(x)|: palindromes <= x.  Zero for x <= 0.
mpz_class count_up_to(int base, const mpz_class& x);

// The palindrome of `length` digits whose half-prefix is the `index`-th
// smallest (0-based).  Increasing in `index`; index 0 gives g^(L-1)+...
mpz_class nth_palindrome(int base, int length, const mpz_class& index);

// Inverse of nth_palindrome within n's own digit length.
mpz_class palindrome_index(int base, const mpz_class& n);

// The palindrome of `length` digits sharing the half-prefix `prefix`
// (prefix in [g^(H-1), g^H), H = ceil(length/2)).
mpz_class palindrome_from_prefix(int base, int length, const mpz_class& prefix);

// Increasing stream of the palindromes in [lo, hi].  Single consumer.
class PalindromeStream {
public:
    PalindromeStream(int base, const mpz_class& lo, const mpz_class& hi);
    std::optional<mpz_class> next();

private:
    void start_length(int length);

    int base_;
    mpz_class hi_;
    int length_ = 0;
    mpz_class prefix_;
    mpz_class prefix_end_;
    bool done_ = false;
};

// Convenience collector; intended for small ranges.
std::vector<mpz_class> palindromes_in_range(int base, const mpz_class& lo,
                                            const mpz_class& hi);

// Decomposition of a palindrome n with 2M+delta digits into its top-K-digit
// block n3 (the K-signature), the bottom-K-digit block n1 (the K-complement,
// forced by n3), and the middle block.  The middle block, after stripping mu
// symmetric zero digits from each side, is either empty (n2 absent, all
// zeros) or a shorter palindrome n2:
//
//   n = n1 + g^(K+mu) * n2 + g^(K+2*Lh+delta) * n3,   Lh = M - K,
//
// with n2 in P_(2*Lh+delta-2*mu), or n = n1 + g^(K+2*Lh+delta) * n3.
struct SignatureDecomp {
    int K = 1;
    mpz_class n1;
    std::optional<mpz_class> n2;
    int mu = 0;
    mpz_class n3;
    int delta = 0;
    int M = 0;
};

SignatureDecomp signature_decompose(const mpz_class& n, int K, int base);
mpz_class recompose(const SignatureDecomp& d, int base);

// The unique n1 with 1 <= n1 < g^K and n1 + g^K*n3 a 2K-digit palindrome,
// for g^(K-1) <= n3 < g^K: the digit reversal of n3.
mpz_class k_complement(const mpz_class& n3, int K, int base);

} // namespace palindist
