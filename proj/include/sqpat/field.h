// Copyright 2026 The sqpat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite fields F_q, q = p^k with p odd.
//
// An element of F_q is stored as the integer code c0 + c1*p + ... +
// c_{k-1}*p^{k-1} of its coefficient vector in the power basis of the
// generator g (the class of x modulo the defining polynomial). Codes are
// therefore enumerated in odometer order with the constant coefficient
// running fastest, and for k = 1 the code is simply the residue.
//
// Multiplication, addition (k > 1) and the quadratic character are table
// driven through discrete logarithms to a primitive element. A second,
// table-free route (schoolbook polynomial arithmetic modulo the defining
// polynomial) backs CharacterByPower() and the table construction itself.

#ifndef SQPAT_FIELD_H_
#define SQPAT_FIELD_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sqpat {

inline constexpr std::uint64_t kDefaultCeiling = std::uint64_t{1} << 21;

struct Element {
  std::uint32_t code = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // Builds F_{p^k} with the smallest monic irreducible modulus of degree k
  // (coefficient codes compared as integers, i.e. highest coefficient most
  // significant). Instances are cached per (p, k); the ceiling is checked on
  // every call.
  static FieldPtr Make(std::uint32_t p, std::uint32_t k,
                       std::uint64_t ceiling = kDefaultCeiling);
  // Splits q = p^k and forwards to Make().
  static FieldPtr MakeOfSize(std::uint64_t q,
                             std::uint64_t ceiling = kDefaultCeiling);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // Low-to-high coefficients including the leading 1; empty when k == 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool SameAs(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_;
  }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }
  // The class of x; only meaningful for k > 1.
  Element generator() const { return Element{k_ > 1 ? p_ : 1}; }
  Element primitive() const { return Element{exp_[1]}; }

  Element FromInt(std::int64_t v) const;
  Element FromCoeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> Coeffs(Element a) const;
  bool IsValid(Element a) const { return a.code < q_; }
  bool InPrimeField(Element a) const { return a.code < p_; }

  Element Add(Element a, Element b) const {
    if (k_ == 1) {
      std::uint32_t s = a.code + b.code;
      return Element{s >= p_ ? s - p_ : s};
    }
    if (a.code == 0) return b;
    if (b.code == 0) return a;
    std::uint32_t la = log_[a.code];
    std::uint32_t lb = log_[b.code];
    std::uint32_t d = lb >= la ? lb - la : lb + order_ - la;
    std::uint32_t z = zech_[d];
    if (z == kNoLog) return Element{0};
    return Element{exp_[la + z]};
  }
  Element Neg(Element a) const {
    if (a.code == 0) return a;
    if (k_ == 1) return Element{p_ - a.code};
    return Element{exp_[log_[a.code] + order_ / 2]};
  }
  Element Sub(Element a, Element b) const { return Add(a, Neg(b)); }
  Element Mul(Element a, Element b) const {
    if (a.code == 0 || b.code == 0) return Element{0};
    return Element{exp_[log_[a.code] + log_[b.code]]};
  }
  // Throws Error(kDivisionByZero) when b is zero.
  Element Div(Element a, Element b) const;
  Element Inv(Element a) const;
  Element Pow(Element a, std::uint64_t e) const;

  // Quadratic character from the residue table: 0, +1 or -1.
  int Character(Element a) const { return chi_[a.code]; }
  // Same value, computed as a^((q-1)/2) without the log tables.
  int CharacterByPower(Element a) const;

  // First element in code order with character -1.
  Element Nonsquare() const { return nonsquare_; }

  // "c0+c1*g+c2*g^2" (zero terms dropped); plain residue when k == 1.
  std::string ToString(Element a) const;
  // Accepts the ToString() format, also "2g" and "(1+2g)". Throws Error(kParse).
  Element Parse(std::string_view text) const;

  // Polynomial-basis product, independent of the tables.
  Element MulByPolynomial(Element a, Element b) const;

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);
  void BuildTables();

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::uint32_t order_;  // q - 1
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;   // 2 * order_ entries
  std::vector<std::uint32_t> log_;   // q entries; log_[0] unused
  std::vector<std::uint32_t> zech_;  // log(1 + prim^d), kNoLog when zero
  std::vector<std::int8_t> chi_;
  Element nonsquare_;
};

// Element bound to its field, for checked arithmetic at API boundaries.
struct FieldElement {
  FieldPtr field;
  Element value;
};

enum class ArithKind { kAdd, kSub, kMul, kDiv };

// Throws Error(kFieldMismatch) for operands from different fields and
// Error(kDivisionByZero) for division by zero.
FieldElement Arith(const FieldElement& a, const FieldElement& b,
                   ArithKind kind);

// Ring embedding F_{p^a} -> F_{p^b} for a | b. The generator of the source is
// sent to the first root (in code order) of its modulus in the target.
class Embedding {
 public:
  // Throws Error(kIncompatibleFields).
  Embedding(FieldPtr from, FieldPtr to);

  Element operator()(Element a) const;
  const FieldPtr& from() const { return from_; }
  const FieldPtr& to() const { return to_; }

 private:
  FieldPtr from_;
  FieldPtr to_;
  std::vector<Element> basis_images_;  // images of g^0 .. g^{a-1}
};

Element Embed(Element a, const FieldPtr& from, const FieldPtr& to);

bool IsPrime(std::uint64_t n);
std::vector<std::uint64_t> PrimeFactors(std::uint64_t n);

}  // namespace sqpat

#endif  // SQPAT_FIELD_H_
