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

#ifndef SYMDP_BIGINT_H_
#define SYMDP_BIGINT_H_

#include <boost/multiprecision/cpp_int.hpp>

namespace symdp {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Natural log of a nonnegative integer in extended precision; -inf for 0.
// Exact enough for values far beyond the long double range.
long double LogOf(const BigInt& value);

long double ToLongDouble(const BigRational& value);

// n choose r, exact.
BigInt Binomial(unsigned n, unsigned r);

}  // namespace symdp

#endif  // SYMDP_BIGINT_H_
