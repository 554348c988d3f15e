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

#include "sqpat/poly.h"

#include <algorithm>
#include <utility>

#include "sqpat/error.h"

namespace sqpat {

Poly::Poly(FieldPtr field, std::size_t nvars)
    : field_(std::move(field)), nvars_(nvars) {}

Poly Poly::Constant(FieldPtr field, std::size_t nvars, Element c) {
  Poly p(std::move(field), nvars);
  p.AddTerm(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::Variable(FieldPtr field, std::size_t nvars, std::size_t index) {
  Poly p(field, nvars);
  Exponents e(nvars, 0);
  e.at(index) = 1;
  p.AddTerm(e, field->one());
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (auto x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

int Poly::degree_in(std::size_t var) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[var]);
  return d;
}

Element Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_->zero() : it->second;
}

void Poly::AddTerm(const Exponents& e, Element c) {
  if (e.size() != nvars_) {
    throw Error(ErrorCode::kDimensionMismatch, "exponent vector length");
  }
  if (c.code == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = field_->Add(it->second, c);
    if (it->second.code == 0) terms_.erase(it);
  }
}

void Poly::CheckCompatible(const Poly& o) const {
  if (!field_->SameAs(*o.field_)) {
    throw Error(ErrorCode::kFieldMismatch, "polynomials over different fields");
  }
  if (nvars_ != o.nvars_) {
    throw Error(ErrorCode::kDimensionMismatch, "variable count mismatch");
  }
}

Poly Poly::operator+(const Poly& o) const {
  CheckCompatible(o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.AddTerm(e, c);
  return r;
}

Poly Poly::operator-() const { return Scale(field_->Neg(field_->one())); }

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  CheckCompatible(o);
  Poly r(field_, nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.AddTerm(e, field_->Mul(ca, cb));
    }
  }
  return r;
}

Poly Poly::Scale(Element c) const {
  Poly r(field_, nvars_);
  for (const auto& [e, x] : terms_) r.AddTerm(e, field_->Mul(x, c));
  return r;
}

Poly Poly::Power(unsigned e) const {
  Poly r = Constant(field_, nvars_, field_->one());
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Poly Poly::WithVariables(std::size_t nvars) const {
  if (nvars < nvars_) {
    throw Error(ErrorCode::kDimensionMismatch, "cannot drop variables");
  }
  Poly r(field_, nvars);
  for (const auto& [e, c] : terms_) {
    Exponents w = e;
    w.resize(nvars, 0);
    r.AddTerm(w, c);
  }
  return r;
}

Poly Poly::BaseChange(const Embedding& emb) const {
  if (!emb.from()->SameAs(*field_)) {
    throw Error(ErrorCode::kFieldMismatch, "embedding source mismatch");
  }
  Poly r(emb.to(), nvars_);
  for (const auto& [e, c] : terms_) r.AddTerm(e, emb(c));
  return r;
}

Element Poly::Evaluate(std::span<const Element> point) const {
  if (point.size() != nvars_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has " + std::to_string(point.size()) +
                    " coordinates, polynomial has " + std::to_string(nvars_) +
                    " variables");
  }
  const Field& f = *field_;
  for (auto x : point) {
    if (!f.IsValid(x)) {
      throw Error(ErrorCode::kInvalidArgument, "coordinate outside the field");
    }
  }
  // Powers of each coordinate up to the largest exponent used.
  std::vector<std::vector<Element>> powers(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v) {
    const int top = std::max(degree_in(v), 0);
    powers[v].resize(top + 1);
    powers[v][0] = f.one();
    for (int i = 1; i <= top; ++i) {
      powers[v][i] = f.Mul(powers[v][i - 1], point[v]);
    }
  }
  Element acc = f.zero();
  for (const auto& [e, c] : terms_) {
    Element t = c;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (e[v]) t = f.Mul(t, powers[v][e[v]]);
    }
    acc = f.Add(acc, t);
  }
  return acc;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.field_->SameAs(*b.field_) && a.nvars_ == b.nvars_ &&
         a.terms_ == b.terms_;
}

std::vector<Poly> Gradient(const Poly& f) {
  const Field& F = f.field();
  std::vector<Poly> out;
  out.reserve(f.nvars());
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    Poly d(f.field_ptr(), f.nvars());
    for (const auto& [e, c] : f.terms()) {
      if (e[v] == 0) continue;
      Exponents de = e;
      --de[v];
      d.AddTerm(de, F.Mul(c, F.FromInt(e[v])));
    }
    out.push_back(std::move(d));
  }
  return out;
}

bool IsHomogeneous(const Poly& f, int d) {
  if (f.is_zero()) return false;
  for (const auto& [e, c] : f.terms()) {
    int t = 0;
    for (auto x : e) t += x;
    if (t != d) return false;
  }
  return true;
}

GramMatrix::GramMatrix(FieldPtr field, std::size_t size)
    : field_(std::move(field)), size_(size), entries_(size * size) {}

std::vector<std::vector<Element>> GramMatrix::Rows() const {
  std::vector<std::vector<Element>> rows(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    rows[i].assign(entries_.begin() + i * size_,
                   entries_.begin() + (i + 1) * size_);
  }
  return rows;
}

Poly GramMatrix::ToForm() const {
  const Field& f = *field_;
  Poly out(field_, size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i; j < size_; ++j) {
      Exponents e(size_, 0);
      ++e[i];
      ++e[j];
      Element c = at(i, j);
      if (i != j) c = f.Add(c, c);
      out.AddTerm(e, c);
    }
  }
  return out;
}

void GramMatrix::Apply(std::span<const Element> x,
                       std::span<Element> out) const {
  const Field& f = *field_;
  for (std::size_t i = 0; i < size_; ++i) {
    Element acc = f.zero();
    for (std::size_t j = 0; j < size_; ++j) {
      acc = f.Add(acc, f.Mul(at(i, j), x[j]));
    }
    out[i] = acc;
  }
}

Element GramMatrix::Evaluate(std::span<const Element> x) const {
  if (x.size() != size_) {
    throw Error(ErrorCode::kDimensionMismatch, "point length");
  }
  std::vector<Element> mx(size_);
  Apply(x, mx);
  const Field& f = *field_;
  Element acc = f.zero();
  for (std::size_t i = 0; i < size_; ++i) acc = f.Add(acc, f.Mul(x[i], mx[i]));
  return acc;
}

bool GramMatrix::ProportionalTo(const GramMatrix& o) const {
  if (size_ != o.size_ || !field_->SameAs(*o.field_)) return false;
  const Field& f = *field_;
  // Find the ratio at the first nonzero entry, then compare all entries.
  std::size_t pivot = entries_.size();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].code != 0 || o.entries_[i].code != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot == entries_.size()) return true;
  if (entries_[pivot].code == 0 || o.entries_[pivot].code == 0) return false;
  const Element ratio = f.Div(o.entries_[pivot], entries_[pivot]);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (f.Mul(entries_[i], ratio) != o.entries_[i]) return false;
  }
  return true;
}

GramMatrix ComputeGram(const Poly& f) {
  if (!IsHomogeneous(f, 2)) {
    throw Error(ErrorCode::kNotHomogeneous,
                "Gram matrix needs a nonzero quadratic form");
  }
  const Field& F = f.field();
  const Element half = F.Inv(F.FromInt(2));
  GramMatrix m(f.field_ptr(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    std::size_t i = f.nvars(), j = f.nvars();
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 2) {
        i = j = v;
      } else if (e[v] == 1) {
        (i == f.nvars() ? i : j) = v;
      }
    }
    m.set(i, j, i == j ? c : F.Mul(c, half));
  }
  return m;
}

int MatrixRank(const Field& field, std::vector<std::vector<Element>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw Error(ErrorCode::kRaggedMatrix, "rows of different lengths");
    }
  }
  int rank = 0;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows.size(); ++c) {
    std::size_t piv = next;
    while (piv < rows.size() && rows[piv][c].code == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[next]);
    const Element inv = field.Inv(rows[next][c]);
    for (std::size_t r = next + 1; r < rows.size(); ++r) {
      if (rows[r][c].code == 0) continue;
      const Element factor = field.Mul(rows[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = field.Sub(rows[r][k], field.Mul(factor, rows[next][k]));
      }
    }
    ++next;
    ++rank;
  }
  return rank;
}

PolyEvaluator::PolyEvaluator(const Poly& f)
    : field_(&f.field()), nvars_(f.nvars()) {
  if (IsHomogeneous(f, 2)) {
    quadratic_ = true;
    const GramMatrix m = ComputeGram(f);
    gram_.resize(nvars_ * nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (std::size_t j = 0; j < nvars_; ++j) gram_[i * nvars_ + j] = m.at(i, j);
    }
    return;
  }
  max_exp_.assign(nvars_, 0);
  for (const auto& [e, c] : f.terms()) {
    Term t{c, static_cast<std::uint32_t>(factors_.size()), 0};
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      factors_.push_back({static_cast<std::uint32_t>(v), e[v]});
      ++t.num_factors;
      max_exp_[v] = std::max<std::uint32_t>(max_exp_[v], e[v]);
    }
    terms_.push_back(t);
  }
  pow_offset_.resize(nvars_);
  std::size_t total = 0;
  for (std::size_t v = 0; v < nvars_; ++v) {
    pow_offset_[v] = static_cast<std::uint32_t>(total);
    total += max_exp_[v] + 1;
  }
  powers_.resize(total);
}

Element PolyEvaluator::operator()(std::span<const Element> x) {
  const Field& f = *field_;
  if (quadratic_) {
    // x^T (M x)
    Element acc = f.zero();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (x[i].code == 0) continue;
      Element row = f.zero();
      const Element* m = &gram_[i * nvars_];
      for (std::size_t j = 0; j < nvars_; ++j) {
        row = f.Add(row, f.Mul(m[j], x[j]));
      }
      acc = f.Add(acc, f.Mul(x[i], row));
    }
    return acc;
  }
  for (std::size_t v = 0; v < nvars_; ++v) {
    Element* pw = &powers_[pow_offset_[v]];
    pw[0] = f.one();
    for (std::uint32_t i = 1; i <= max_exp_[v]; ++i) {
      pw[i] = f.Mul(pw[i - 1], x[v]);
    }
  }
  Element acc = f.zero();
  for (const Term& t : terms_) {
    Element v = t.coeff;
    for (std::uint32_t i = 0; i < t.num_factors; ++i) {
      const Factor& fa = factors_[t.first_factor + i];
      v = f.Mul(v, powers_[pow_offset_[fa.var] + fa.exp]);
    }
    acc = f.Add(acc, v);
  }
  return acc;
}

}  // namespace sqpat
