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

#include "sqpat/field.h"

#include <array>
#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "sqpat/error.h"

namespace sqpat {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPrime: return "NonPrime";
    case ErrorCode::kEvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::kBadDegree: return "BadDegree";
    case ErrorCode::kCeilingExceeded: return "CeilingExceeded";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kIncompatibleFields: return "IncompatibleFields";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRaggedMatrix: return "RaggedMatrix";
    case ErrorCode::kNotHomogeneous: return "NotHomogeneous";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kNotDistinct: return "NotDistinct";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kUsage: return "Usage";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> PrimeFactors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// Dense polynomials over F_p, low-to-high, trimmed of leading zeros.
using FpPoly = std::vector<std::uint32_t>;

std::uint32_t PowModP(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

void Trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
FpPoly Reduce(FpPoly a, const FpPoly& f, std::uint32_t p) {
  Trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i < df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>(
          (a[shift + i] + (p - lead) * f[i] % p) % p);
    }
    a.pop_back();
    Trim(a);
  }
  return a;
}

FpPoly MulMod(const FpPoly& a, const FpPoly& b, const FpPoly& f,
              std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return Reduce(std::move(r), f, p);
}

FpPoly PowMod(FpPoly b, std::uint64_t e, const FpPoly& f, std::uint32_t p) {
  FpPoly r{1};
  while (e) {
    if (e & 1) r = MulMod(r, b, f, p);
    b = MulMod(b, b, f, p);
    e >>= 1;
  }
  return r;
}

FpPoly Gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  Trim(a);
  Trim(b);
  while (!b.empty()) {
    // Make b monic and reduce a by it.
    const std::uint64_t inv = PowModP(b.back(), p - 2, p);
    for (auto& c : b) c = static_cast<std::uint32_t>(c * inv % p);
    a = Reduce(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

bool IsIrreducible(const FpPoly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  FpPoly h{0, 1};  // x
  for (std::size_t i = 1; i <= k / 2; ++i) {
    h = PowMod(h, p, f, p);
    FpPoly d = h;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    Trim(d);
    if (d.empty()) return false;
    if (Gcd(f, d, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> SmallestIrreducible(std::uint32_t p,
                                               std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    FpPoly f(k + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;
    if (IsIrreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::mutex& CacheMutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr>& Cache() {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  return cache;
}

}  // namespace

FieldPtr Field::Make(std::uint32_t p, std::uint32_t k, std::uint64_t ceiling) {
  if (p == 2) {
    throw Error(ErrorCode::kEvenCharacteristic,
                "characteristic 2 is not supported");
  }
  if (!IsPrime(p)) {
    throw Error(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
  }
  if (k < 1) {
    throw Error(ErrorCode::kBadDegree, "extension degree must be >= 1");
  }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > ceiling) {
      throw Error(ErrorCode::kCeilingExceeded,
                  "field size " + std::to_string(p) + "^" + std::to_string(k) +
                      " exceeds ceiling " + std::to_string(ceiling));
    }
  }
  std::lock_guard<std::mutex> lock(CacheMutex());
  auto& cache = Cache();
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  std::vector<std::uint32_t> modulus;
  if (k > 1) modulus = SmallestIrreducible(p, k);
  FieldPtr field(new Field(p, k, std::move(modulus)));
  cache.emplace(std::make_pair(p, k), field);
  return field;
}

FieldPtr Field::MakeOfSize(std::uint64_t q, std::uint64_t ceiling) {
  if (q < 3) throw Error(ErrorCode::kNonPrime, "field size must be >= 3");
  auto factors = PrimeFactors(q);
  if (factors.size() != 1) {
    throw Error(ErrorCode::kNonPrime,
                std::to_string(q) + " is not a prime power");
  }
  std::uint32_t k = 0;
  for (std::uint64_t r = q; r > 1; r /= factors[0]) ++k;
  return Make(static_cast<std::uint32_t>(factors[0]), k, ceiling);
}

Field::Field(std::uint32_t p, std::uint32_t k,
             std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  q_ = static_cast<std::uint32_t>(q);
  order_ = q_ - 1;
  BuildTables();
}

Element Field::MulByPolynomial(Element a, Element b) const {
  if (k_ == 1) {
    return Element{static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code %
                                              p_)};
  }
  std::array<std::uint64_t, 64> prod{};
  std::array<std::uint32_t, 32> ca{};
  std::array<std::uint32_t, 32> cb{};
  std::uint32_t x = a.code, y = b.code;
  for (std::uint32_t i = 0; i < k_; ++i) {
    ca[i] = x % p_;
    x /= p_;
    cb[i] = y % p_;
    y /= p_;
  }
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_;
    }
  }
  for (std::uint32_t d = 2 * k_ - 2; d >= k_; --d) {
    const std::uint64_t lead = prod[d];
    if (lead == 0) continue;
    const std::size_t shift = d - k_;
    for (std::uint32_t i = 0; i < k_; ++i) {
      prod[shift + i] = (prod[shift + i] + (p_ - lead) * modulus_[i]) % p_;
    }
    prod[d] = 0;
  }
  std::uint32_t code = 0;
  for (std::uint32_t i = k_; i-- > 0;) {
    code = code * p_ + static_cast<std::uint32_t>(prod[i]);
  }
  return Element{code};
}

namespace {

Element SlowPow(const Field& f, Element a, std::uint64_t e) {
  Element r = f.one();
  while (e) {
    if (e & 1) r = f.MulByPolynomial(r, a);
    a = f.MulByPolynomial(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace

void Field::BuildTables() {
  const auto factors = PrimeFactors(order_);
  Element prim{0};
  for (std::uint32_t c = 1; c < q_; ++c) {
    bool ok = true;
    for (auto r : factors) {
      if (SlowPow(*this, Element{c}, order_ / r) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      prim = Element{c};
      break;
    }
  }
  if (prim.code == 0) throw std::logic_error("no primitive element");

  exp_.assign(2 * std::size_t{order_}, 0);
  log_.assign(q_, kNoLog);
  Element cur = one();
  for (std::uint32_t i = 0; i < order_; ++i) {
    exp_[i] = cur.code;
    exp_[i + order_] = cur.code;
    log_[cur.code] = i;
    cur = MulByPolynomial(cur, prim);
  }
  if (cur != one()) throw std::logic_error("primitive element order mismatch");

  if (k_ > 1) {
    zech_.assign(order_, kNoLog);
    for (std::uint32_t d = 0; d < order_; ++d) {
      const std::uint32_t code = exp_[d];
      const std::uint32_t c0 = code % p_;
      const std::uint32_t bumped = code - c0 + (c0 + 1) % p_;
      zech_[d] = bumped == 0 ? kNoLog : log_[bumped];
    }
  }

  chi_.assign(q_, 0);
  for (std::uint32_t c = 1; c < q_; ++c) chi_[c] = (log_[c] % 2 == 0) ? 1 : -1;
  for (std::uint32_t c = 1; c < q_; ++c) {
    if (chi_[c] == -1) {
      nonsquare_ = Element{c};
      break;
    }
  }
}

Element Field::FromInt(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Element{static_cast<std::uint32_t>(r)};
}

Element Field::FromCoeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > k_) {
    throw Error(ErrorCode::kInvalidArgument,
                "too many coefficients for F_" + std::to_string(q_));
  }
  std::uint32_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) {
      throw Error(ErrorCode::kInvalidArgument, "coefficient out of range");
    }
    code = code * p_ + coeffs[i];
  }
  return Element{code};
}

std::vector<std::uint32_t> Field::Coeffs(Element a) const {
  std::vector<std::uint32_t> out(k_);
  std::uint32_t c = a.code;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = c % p_;
    c /= p_;
  }
  return out;
}

Element Field::Div(Element a, Element b) const {
  if (b.code == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  if (a.code == 0) return a;
  return Element{exp_[log_[a.code] + order_ - log_[b.code]]};
}

Element Field::Inv(Element a) const { return Div(one(), a); }

Element Field::Pow(Element a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.code == 0) return a;
  return Element{exp_[(std::uint64_t{log_[a.code]} * (e % order_)) % order_]};
}

int Field::CharacterByPower(Element a) const {
  if (a.code == 0) return 0;
  const Element r = SlowPow(*this, a, order_ / 2);
  if (r == one()) return 1;
  if (r == Element{p_ - 1}) return -1;
  throw std::logic_error("Euler criterion produced a value other than +-1");
}

std::string Field::ToString(Element a) const {
  if (k_ == 1) return std::to_string(a.code);
  if (a.code == 0) return "0";
  const auto c = Coeffs(a);
  std::string out;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Element Field::Parse(std::string_view text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' &&
        ch != ')') {
      s += ch;
    }
  }
  if (s.empty()) throw Error(ErrorCode::kParse, "empty field element");
  auto fail = [&]() {
    return Error(ErrorCode::kParse,
                 "malformed field element '" + std::string(text) + "'");
  };
  Element total = zero();
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw fail();
    }
    std::int64_t coeff = 1;
    bool have_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        coeff = (coeff * 10 + (s[i] - '0')) % p_;
        ++i;
      }
      have_coeff = true;
    }
    std::uint64_t power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_coeff) throw fail();
      ++i;
      if (i >= s.size() || s[i] != 'g') throw fail();
    }
    if (i < s.size() && s[i] == 'g') {
      if (k_ == 1) throw fail();
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
          throw fail();
        }
        power = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          power = power * 10 + (s[i] - '0');
          ++i;
        }
      }
    } else if (!have_coeff) {
      throw fail();
    }
    Element term = Mul(FromInt(sign * coeff), Pow(generator(), power));
    total = Add(total, term);
  }
  return total;
}

FieldElement Arith(const FieldElement& a, const FieldElement& b,
                   ArithKind kind) {
  if (!a.field || !b.field || !a.field->SameAs(*b.field)) {
    throw Error(ErrorCode::kFieldMismatch, "operands from different fields");
  }
  const Field& f = *a.field;
  if (!f.IsValid(a.value) || !f.IsValid(b.value)) {
    throw Error(ErrorCode::kInvalidArgument, "element out of range");
  }
  switch (kind) {
    case ArithKind::kAdd: return {a.field, f.Add(a.value, b.value)};
    case ArithKind::kSub: return {a.field, f.Sub(a.value, b.value)};
    case ArithKind::kMul: return {a.field, f.Mul(a.value, b.value)};
    case ArithKind::kDiv: return {a.field, f.Div(a.value, b.value)};
  }
  throw std::logic_error("unknown arithmetic kind");
}

Embedding::Embedding(FieldPtr from, FieldPtr to)
    : from_(std::move(from)), to_(std::move(to)) {
  if (from_->p() != to_->p() || to_->k() % from_->k() != 0) {
    throw Error(ErrorCode::kIncompatibleFields,
                "F_" + std::to_string(from_->q()) + " does not embed in F_" +
                    std::to_string(to_->q()));
  }
  const Field& t = *to_;
  Element root = t.one();
  if (from_->k() > 1) {
    const auto& mod = from_->modulus();
    bool found = false;
    for (std::uint32_t c = 0; c < t.q() && !found; ++c) {
      Element acc = t.zero();
      for (std::size_t i = mod.size(); i-- > 0;) {
        acc = t.Add(t.Mul(acc, Element{c}), t.FromInt(mod[i]));
      }
      if (acc == t.zero()) {
        root = Element{c};
        found = true;
      }
    }
    if (!found) throw std::logic_error("modulus has no root in extension");
  }
  Element pw = t.one();
  for (std::uint32_t i = 0; i < from_->k(); ++i) {
    basis_images_.push_back(pw);
    pw = t.Mul(pw, root);
  }
}

Element Embedding::operator()(Element a) const {
  const Field& t = *to_;
  const auto coeffs = from_->Coeffs(a);
  Element out = t.zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out = t.Add(out, t.Mul(t.FromInt(coeffs[i]), basis_images_[i]));
  }
  return out;
}

Element Embed(Element a, const FieldPtr& from, const FieldPtr& to) {
  return Embedding(from, to)(a);
}

}  // namespace sqpat
