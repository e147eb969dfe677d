#include "runprob/binomial.hpp"

namespace runprob {

BigInt binomial_exact(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return out;
}

} // namespace runprob
