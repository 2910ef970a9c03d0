#include "kic/bigint.hpp"

namespace kic {

BigInt factorial(int k) {
    BigInt r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

BigInt double_factorial(int k) {
    BigInt r = 1;
    for (int i = k; i >= 2; i -= 2) r *= i;
    return r;
}

}  // namespace kic
