// Copyright 2026 The symdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "symdp/bigint.h"

#include <cmath>
#include <limits>

namespace symdp {

long double LogOf(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<long double>::infinity();
  const unsigned msb = boost::multiprecision::msb(value);
  if (msb < 1000) return std::log(value.convert_to<long double>());
  // Keep the top 64 bits and account for the shift separately.
  const unsigned shift = msb - 63;
  BigInt top = value >> shift;
  return std::log(top.convert_to<long double>()) +
         static_cast<long double>(shift) * std::log(2.0L);
}

long double ToLongDouble(const BigRational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (num == 0) return 0.0L;
  const long double sign = num < 0 ? -1.0L : 1.0L;
  if (boost::multiprecision::msb(den) < 1000 &&
      boost::multiprecision::msb(num < 0 ? BigInt(-num) : num) < 1000) {
    return num.convert_to<long double>() / den.convert_to<long double>();
  }
  return sign * std::exp(LogOf(num < 0 ? BigInt(-num) : num) - LogOf(den));
}

BigInt Binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt result = 1;
  for (unsigned i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

}  // namespace symdp
