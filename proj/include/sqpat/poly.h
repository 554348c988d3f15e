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

#ifndef SQPAT_POLY_H_
#define SQPAT_POLY_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sqpat/field.h"

namespace sqpat {

using Exponents = std::vector<std::uint16_t>;

// Sparse multivariate polynomial. Stored coefficients are never zero.
class Poly {
 public:
  Poly(FieldPtr field, std::size_t nvars);

  static Poly Constant(FieldPtr field, std::size_t nvars, Element c);
  static Poly Variable(FieldPtr field, std::size_t nvars, std::size_t index);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Element>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  Element coefficient(const Exponents& e) const;

  // Adds c * monomial(e).
  void AddTerm(const Exponents& e, Element c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly Scale(Element c) const;
  Poly Power(unsigned e) const;

  // Same polynomial over a larger variable set; new variables are appended.
  Poly WithVariables(std::size_t nvars) const;
  // Coefficients pushed through the embedding.
  Poly BaseChange(const Embedding& emb) const;

  // Throws Error(kDimensionMismatch) on wrong point length.
  Element Evaluate(std::span<const Element> point) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void CheckCompatible(const Poly& o) const;

  FieldPtr field_;
  std::size_t nvars_;
  std::map<Exponents, Element> terms_;
};

// Formal partial derivatives, one per variable.
std::vector<Poly> Gradient(const Poly& f);

// True iff f is nonzero and every term has total degree d.
bool IsHomogeneous(const Poly& f, int d);

// Symmetric M with f(x) = x^T M x.
class GramMatrix {
 public:
  GramMatrix(FieldPtr field, std::size_t size);

  std::size_t size() const { return size_; }
  const Field& field() const { return *field_; }
  Element at(std::size_t i, std::size_t j) const {
    return entries_[i * size_ + j];
  }
  void set(std::size_t i, std::size_t j, Element v) {
    entries_[i * size_ + j] = v;
    entries_[j * size_ + i] = v;
  }
  std::vector<std::vector<Element>> Rows() const;

  // The quadratic form x^T M x.
  Poly ToForm() const;
  // M * x.
  void Apply(std::span<const Element> x, std::span<Element> out) const;
  Element Evaluate(std::span<const Element> x) const;

  bool ProportionalTo(const GramMatrix& o) const;

 private:
  FieldPtr field_;
  std::size_t size_;
  std::vector<Element> entries_;
};

// Throws Error(kNotHomogeneous) unless f is a nonzero quadratic form.
GramMatrix ComputeGram(const Poly& f);

// Gaussian elimination; throws Error(kRaggedMatrix).
int MatrixRank(const Field& field, std::vector<std::vector<Element>> rows);

// Flattened evaluator for the counting hot loops. Not thread safe: each worker
// owns its own copy.
class PolyEvaluator {
 public:
  explicit PolyEvaluator(const Poly& f);

  Element operator()(std::span<const Element> point);

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
  };
  struct Term {
    Element coeff;
    std::uint32_t first_factor;
    std::uint32_t num_factors;
  };

  const Field* field_;
  std::size_t nvars_;
  bool quadratic_ = false;
  std::vector<Element> gram_;  // row-major when quadratic_
  std::vector<Term> terms_;
  std::vector<Factor> factors_;
  std::vector<std::uint32_t> max_exp_;
  std::vector<std::uint32_t> pow_offset_;
  std::vector<Element> powers_;
};

}  // namespace sqpat

#endif  // SQPAT_POLY_H_
