#include "essmod/algebra/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include "essmod/error.hpp"
#include "essmod/numeric/linalg.hpp"

namespace essmod::algebra {

ModuleElement::ModuleElement(AlgebraShape shape, std::vector<AlgebraElement> coords)
    : shape_(std::move(shape)), coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorCode::ShapeMismatch, "module rank k must be positive");
  for (const auto& c : coords_) {
    if (c.shape() != shape_) throw Error(ErrorCode::ShapeMismatch, "module coordinate of wrong shape");
  }
}

ModuleElement ModuleElement::zero(const AlgebraShape& shape, std::size_t k) {
  return {shape, std::vector<AlgebraElement>(k, AlgebraElement::zero(shape))};
}

ModuleElement ModuleElement::unit(const AlgebraShape& shape, std::size_t k, std::size_t j) {
  auto coords = std::vector<AlgebraElement>(k, AlgebraElement::zero(shape));
  coords.at(j) = AlgebraElement::identity(shape);
  return {shape, std::move(coords)};
}

std::vector<ModuleElement> ModuleElement::basis(const AlgebraShape& shape, std::size_t k) {
  std::vector<ModuleElement> out;
  const auto units = AlgebraElement::basis(shape);
  for (std::size_t j = 0; j < k; ++j) {
    for (const auto& e : units) {
      auto coords = std::vector<AlgebraElement>(k, AlgebraElement::zero(shape));
      coords[j] = e;
      out.emplace_back(shape, std::move(coords));
    }
  }
  return out;
}

ModuleElement ModuleElement::from_vector(const AlgebraShape& shape, std::size_t k,
                                         std::span<const Complex> v) {
  const auto dim = shape.dimension();
  if (v.size() != k * dim) throw Error(ErrorCode::ShapeMismatch, "vector length does not match module");
  std::vector<AlgebraElement> coords;
  for (std::size_t j = 0; j < k; ++j) coords.push_back(AlgebraElement::from_vector(shape, v.subspan(j * dim, dim)));
  return {shape, std::move(coords)};
}

double ModuleElement::norm() const { return std::sqrt(inner_product(*this, *this).norm()); }

std::vector<Complex> ModuleElement::to_vector() const {
  std::vector<Complex> v;
  for (const auto& c : coords_) {
    auto part = c.to_vector();
    v.insert(v.end(), part.begin(), part.end());
  }
  return v;
}

CMatrix ModuleElement::stacked_block(std::size_t b) const {
  const auto n = shape_.block_dim(b);
  CMatrix out(k() * n, n);
  for (std::size_t j = 0; j < k(); ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) out(j * n + r, c) = coords_[j].block(b)(r, c);
    }
  }
  return out;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  if (shape_ != other.shape_ || k() != other.k()) throw Error(ErrorCode::ShapeMismatch, "module sum");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  if (shape_ != other.shape_ || k() != other.k()) throw Error(ErrorCode::ShapeMismatch, "module difference");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

ModuleElement operator*(const ModuleElement& x, Complex s) {
  ModuleElement out = x;
  for (auto& c : out.coords_) c *= s;
  return out;
}

ModuleElement operator*(const ModuleElement& x, const AlgebraElement& a) {
  std::vector<AlgebraElement> coords;
  coords.reserve(x.k());
  for (const auto& c : x.coords_) coords.push_back(c * a);
  return {x.shape_, std::move(coords)};
}

double max_abs_diff(const ModuleElement& a, const ModuleElement& b) {
  if (a.k() != b.k()) throw Error(ErrorCode::ShapeMismatch, "module elements of different rank");
  double m = 0.0;
  for (std::size_t i = 0; i < a.k(); ++i) m = std::max(m, max_abs_diff(a.coord(i), b.coord(i)));
  return m;
}

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y) {
  if (x.shape() != y.shape() || x.k() != y.k()) {
    throw Error(ErrorCode::ShapeMismatch, "inner product of elements of different modules");
  }
  auto sum = AlgebraElement::zero(x.shape());
  for (std::size_t i = 0; i < x.k(); ++i) sum += x.coord(i).adjoint() * y.coord(i);
  return sum;
}

CompactOperator::CompactOperator(AlgebraShape shape, std::size_t k, std::vector<AlgebraElement> entries)
    : shape_(std::move(shape)), k_(k), entries_(std::move(entries)) {
  if (k_ == 0 || entries_.size() != k_ * k_) {
    throw Error(ErrorCode::ShapeMismatch, "compact operator needs k*k entries");
  }
  for (const auto& e : entries_) {
    if (e.shape() != shape_) throw Error(ErrorCode::ShapeMismatch, "operator entry of wrong shape");
  }
}

CompactOperator CompactOperator::zero(const AlgebraShape& shape, std::size_t k) {
  return {shape, k, std::vector<AlgebraElement>(k * k, AlgebraElement::zero(shape))};
}

CompactOperator CompactOperator::identity(const AlgebraShape& shape, std::size_t k) {
  auto entries = std::vector<AlgebraElement>(k * k, AlgebraElement::zero(shape));
  for (std::size_t i = 0; i < k; ++i) entries[i * k + i] = AlgebraElement::identity(shape);
  return {shape, k, std::move(entries)};
}

CompactOperator CompactOperator::from_algebra_element(const AlgebraShape& shape, std::size_t k,
                                                      const AlgebraElement& amplified) {
  if (amplified.shape() != shape.amplified(k)) {
    throw Error(ErrorCode::ShapeMismatch, "element is not in M_k(A) for this shape");
  }
  auto entries = std::vector<AlgebraElement>(k * k, AlgebraElement::zero(shape));
  for (std::size_t b = 0; b < shape.block_count(); ++b) {
    const auto n = shape.block_dim(b);
    const auto& big = amplified.block(b);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        auto& blk = entries[i * k + j].block(b);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < n; ++c) blk(r, c) = big(i * n + r, j * n + c);
        }
      }
    }
  }
  return {shape, k, std::move(entries)};
}

ModuleElement CompactOperator::apply(const ModuleElement& z) const {
  if (z.shape() != shape_ || z.k() != k_) throw Error(ErrorCode::ShapeMismatch, "operator applied to foreign module");
  std::vector<AlgebraElement> coords;
  for (std::size_t i = 0; i < k_; ++i) {
    auto sum = AlgebraElement::zero(shape_);
    for (std::size_t j = 0; j < k_; ++j) sum += entry(i, j) * z.coord(j);
    coords.push_back(std::move(sum));
  }
  return {shape_, std::move(coords)};
}

CompactOperator CompactOperator::adjoint() const {
  std::vector<AlgebraElement> entries;
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) entries.push_back(entry(j, i).adjoint());
  }
  return {shape_, k_, std::move(entries)};
}

AlgebraElement CompactOperator::to_algebra_element() const {
  const auto big_shape = shape_.amplified(k_);
  auto out = AlgebraElement::zero(big_shape);
  for (std::size_t b = 0; b < shape_.block_count(); ++b) {
    const auto n = shape_.block_dim(b);
    auto& big = out.block(b);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        const auto& blk = entry(i, j).block(b);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < n; ++c) big(i * n + r, j * n + c) = blk(r, c);
        }
      }
    }
  }
  return out;
}

double CompactOperator::norm() const { return to_algebra_element().norm(); }

CompactOperator operator*(const CompactOperator& a, const CompactOperator& b) {
  if (a.shape_ != b.shape_ || a.k_ != b.k_) throw Error(ErrorCode::ShapeMismatch, "operator composition");
  std::vector<AlgebraElement> entries;
  for (std::size_t i = 0; i < a.k_; ++i) {
    for (std::size_t j = 0; j < a.k_; ++j) {
      auto sum = AlgebraElement::zero(a.shape_);
      for (std::size_t l = 0; l < a.k_; ++l) sum += a.entry(i, l) * b.entry(l, j);
      entries.push_back(std::move(sum));
    }
  }
  return {a.shape_, a.k_, std::move(entries)};
}

CompactOperator operator-(const CompactOperator& a, const CompactOperator& b) {
  if (a.shape_ != b.shape_ || a.k_ != b.k_) throw Error(ErrorCode::ShapeMismatch, "operator difference");
  auto entries = a.entries_;
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] -= b.entries_[i];
  return {a.shape_, a.k_, std::move(entries)};
}

CompactOperator operator+(const CompactOperator& a, const CompactOperator& b) {
  if (a.shape_ != b.shape_ || a.k_ != b.k_) throw Error(ErrorCode::ShapeMismatch, "operator sum");
  auto entries = a.entries_;
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += b.entries_[i];
  return {a.shape_, a.k_, std::move(entries)};
}

double max_abs_diff(const CompactOperator& a, const CompactOperator& b) {
  if (a.k() != b.k()) throw Error(ErrorCode::ShapeMismatch, "operators of different rank");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, max_abs_diff(a.entries()[i], b.entries()[i]));
  }
  return m;
}

CompactOperator theta(const ModuleElement& x, const ModuleElement& y) {
  if (x.shape() != y.shape() || x.k() != y.k()) throw Error(ErrorCode::ShapeMismatch, "theta of foreign elements");
  std::vector<AlgebraElement> entries;
  for (std::size_t i = 0; i < x.k(); ++i) {
    for (std::size_t j = 0; j < x.k(); ++j) entries.push_back(x.coord(i) * y.coord(j).adjoint());
  }
  return {x.shape(), x.k(), std::move(entries)};
}

Submodule::Submodule(AlgebraShape shape, std::size_t k, std::vector<ModuleElement> generators)
    : shape_(std::move(shape)), k_(k), generators_(std::move(generators)) {
  if (k_ == 0) throw Error(ErrorCode::ShapeMismatch, "module rank k must be positive");
  const auto units = AlgebraElement::basis(shape_);
  std::vector<std::vector<Complex>> span;
  span.reserve(generators_.size() * units.size());
  for (const auto& g : generators_) {
    if (g.shape() != shape_ || g.k() != k_) throw Error(ErrorCode::ShapeMismatch, "generator of a different module");
    for (const auto& e : units) span.push_back((g * e).to_vector());
  }
  basis_ = numeric::orthonormal_basis(span, ambient_dimension());
}

Submodule Submodule::whole(const AlgebraShape& shape, std::size_t k) {
  std::vector<ModuleElement> gens;
  for (std::size_t j = 0; j < k; ++j) gens.push_back(ModuleElement::unit(shape, k, j));
  return {shape, k, std::move(gens)};
}

Submodule Submodule::zero(const AlgebraShape& shape, std::size_t k) { return {shape, k, {}}; }

std::vector<ModuleElement> Submodule::basis_elements() const {
  std::vector<ModuleElement> out;
  for (std::size_t c = 0; c < basis_.cols(); ++c) {
    out.push_back(ModuleElement::from_vector(shape_, k_, basis_.column_vector(c)));
  }
  return out;
}

double Submodule::distance(const ModuleElement& m) const {
  return numeric::residual_norm(basis_, m.to_vector());
}

bool Submodule::contains(const ModuleElement& m, double tol) const {
  return distance(m) <= tol * (1.0 + numeric::vector_norm(m.to_vector()));
}

bool Submodule::same_span(const Submodule& other, double tol) const {
  if (dimension() != other.dimension()) return false;
  for (const auto& b : other.basis_elements()) {
    if (!contains(b, tol)) return false;
  }
  return true;
}

RightIdeal ideal_of_submodule(const Submodule& n) {
  const auto big_shape = n.shape().amplified(n.k());
  std::vector<AlgebraElement> spanning;
  for (const auto& v : n.basis_elements()) {
    for (std::size_t j = 0; j < n.k(); ++j) {
      spanning.push_back(theta(v, ModuleElement::unit(n.shape(), n.k(), j)).to_algebra_element());
    }
  }
  if (spanning.empty()) return {big_shape, AlgebraElement::zero(big_shape)};
  return ideal_support_projection(spanning);
}

bool in_ideal_of_submodule(const CompactOperator& t, const Submodule& n, double tol) {
  for (const auto& u : ModuleElement::basis(n.shape(), n.k())) {
    if (!n.contains(t.apply(u), tol)) return false;
  }
  return true;
}

Submodule submodule_of_ideal(const RightIdeal& ideal, const AlgebraShape& shape, std::size_t k) {
  const auto p = CompactOperator::from_algebra_element(shape, k, ideal.support_projection());
  std::vector<ModuleElement> gens;
  for (std::size_t j = 0; j < k; ++j) gens.push_back(p.apply(ModuleElement::unit(shape, k, j)));
  return {shape, k, std::move(gens)};
}

ProbeResult reformulation_probe(const ModuleElement& m, const Submodule& n, double tol) {
  if (m.norm() <= tol) throw Error(ErrorCode::ZeroInput, "reformulation_probe needs m != 0");
  const auto units = AlgebraElement::basis(m.shape());
  const auto& q = n.basis();
  const std::size_t dim = n.ambient_dimension();
  // Column c: the component of m e_c orthogonal to N.
  CMatrix residual(dim, units.size());
  const CMatrix qstar = q.adjoint();
  for (std::size_t c = 0; c < units.size(); ++c) {
    const auto v = (m * units[c]).to_vector();
    std::vector<Complex> r = v;
    if (q.cols() > 0) {
      const CMatrix coeff = qstar * CMatrix::column(v);
      const CMatrix proj = q * coeff;
      for (std::size_t i = 0; i < dim; ++i) r[i] -= proj(i, 0);
    }
    for (std::size_t i = 0; i < dim; ++i) residual(i, c) = r[i];
  }
  const CMatrix kernel = numeric::null_space(residual, tol);
  ProbeResult out;
  out.solution_dim = kernel.cols();
  const double threshold = tol * (1.0 + m.norm());
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    const auto a = AlgebraElement::from_vector(m.shape(), kernel.column_vector(c));
    const double size = (m * a).norm();
    if (size > threshold && size > out.witness_norm) {
      out.found = true;
      out.a = a;
      out.witness_norm = size;
    }
  }
  return out;
}

SubmoduleEssentiality is_essential_submodule(const Submodule& n) {
  SubmoduleEssentiality out;
  const RightIdeal ideal = ideal_of_submodule(n);
  const auto ideal_decision = is_essential_right_ideal(ideal);
  out.topologically_essential = ideal_decision.essential;
  // Over a finite direct sum of matrix algebras only the whole module meets
  // every cyclic submodule mA.
  out.essential_flag = n.dimension() == n.ambient_dimension();
  out.flags_agree = out.essential_flag == out.topologically_essential;
  out.essential = out.topologically_essential;
  if (ideal_decision.certificate) {
    const auto& cert = *ideal_decision.certificate;
    const auto nb = n.shape().block_dim(cert.block);
    std::vector<AlgebraElement> coords(n.k(), AlgebraElement::zero(n.shape()));
    for (std::size_t j = 0; j < n.k(); ++j) {
      for (std::size_t r = 0; r < nb; ++r) coords[j].block(cert.block)(r, 0) = cert.v[j * nb + r];
    }
    ModuleElement m(n.shape(), std::move(coords));
    out.certificate_verified = !reformulation_probe(m, n).found;
    out.certificate = std::move(m);
  }
  return out;
}

}  // namespace essmod::algebra
