#pragma once

// Bounded chain complexes of free f.g. abelian groups, protomorphisms,
// the hom complex, the functors S, U, L, R and Z, Z', H.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dgkit/signs.hpp"
#include "dgkit/zlinalg.hpp"

namespace dgkit {

/// A chain complex with support [lo, hi]. Stored in trimmed form: the end
/// ranks are nonzero unless the complex is zero (lo = 0, hi = -1). d(n) maps
/// degree n to degree n - 1 and is zero-shaped outside the support.
class Complex {
 public:
  Complex() = default;

  /// ranks[i] is the rank in degree lo + i; diffs missing from the map are zero.
  Complex(int lo, std::vector<std::size_t> ranks, const std::map<int, IntMatrix>& diffs = {}) {
    build(lo, std::move(ranks), diffs);
  }

  static Complex zero() { return Complex(); }
  /// Z^rank concentrated in degree n.
  static Complex K(int n = 0, std::size_t rank = 1) { return Complex(n, {rank}); }
  static Complex graded(int lo, std::vector<std::size_t> ranks) {
    return Complex(lo, std::move(ranks));
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool is_zero_object() const { return ranks_.empty(); }

  std::size_t rank(int n) const {
    if (n < lo_ || n > hi()) return 0;
    return ranks_[static_cast<std::size_t>(n - lo_)];
  }
  std::size_t total_rank() const {
    std::size_t s = 0;
    for (auto r : ranks_) s += r;
    return s;
  }
  const std::vector<std::size_t>& ranks() const { return ranks_; }

  const IntMatrix& d(int n) const {
    static const IntMatrix empty;
    if (ranks_.empty() || n < lo_ || n > hi() + 1) return empty;
    return diffs_[static_cast<std::size_t>(n - lo_)];
  }

  bool is_graded() const {
    return std::all_of(diffs_.begin(), diffs_.end(), [](const IntMatrix& m) { return m.is_zero(); });
  }

  /// Nonzero differentials keyed by degree (the serialized form).
  std::map<int, IntMatrix> diff_map() const {
    std::map<int, IntMatrix> out;
    for (int n = lo_ + 1; n <= hi(); ++n)
      if (!d(n).empty()) out.emplace(n, d(n));
    return out;
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.lo_ == b.lo_ && a.ranks_ == b.ranks_ && a.diffs_ == b.diffs_;
  }

 private:
  void build(int lo, std::vector<std::size_t> ranks, const std::map<int, IntMatrix>& diffs) {
    const int hi = lo + static_cast<int>(ranks.size()) - 1;
    auto rk = [&](int n) -> std::size_t {
      return (n < lo || n > hi) ? 0 : ranks[static_cast<std::size_t>(n - lo)];
    };
    for (const auto& [n, m] : diffs)
      if (m.rows() != rk(n - 1) || m.cols() != rk(n))
        throw ShapeMismatch("d_" + std::to_string(n) + " has shape " + m.shape_string() +
                            ", expected " + std::to_string(rk(n - 1)) + "x" +
                            std::to_string(rk(n)));
    std::size_t first = 0, last = ranks.size();
    while (first < last && ranks[first] == 0) ++first;
    while (last > first && ranks[last - 1] == 0) --last;
    if (first == last) return;
    lo_ = lo + static_cast<int>(first);
    ranks_.assign(ranks.begin() + static_cast<std::ptrdiff_t>(first),
                  ranks.begin() + static_cast<std::ptrdiff_t>(last));
    diffs_.clear();
    for (int n = lo_; n <= this->hi() + 1; ++n) {
      auto it = diffs.find(n);
      diffs_.push_back(it != diffs.end() ? it->second : IntMatrix(rank(n - 1), rank(n)));
    }
    for (int n = lo_ + 2; n <= this->hi(); ++n)
      if (!(d(n - 1) * d(n)).is_zero()) throw SquareZeroViolated(n);
  }

  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<IntMatrix> diffs_;  // index n - lo for n in [lo, hi + 1]
};

inline std::ostream& operator<<(std::ostream& os, const Complex& c) {
  os << "Complex[" << c.lo() << ".." << c.hi() << "] ranks(";
  for (std::size_t i = 0; i < c.ranks().size(); ++i) os << (i ? "," : "") << c.ranks()[i];
  os << ")";
  for (const auto& [n, m] : c.diff_map()) os << " d" << n << "=" << m;
  return os;
}

using ComplexPtr = std::shared_ptr<const Complex>;

inline ComplexPtr share(Complex c) { return std::make_shared<const Complex>(std::move(c)); }

/// A protomorphism of degree n: components f_q : A_q -> B_{q+n}.
class Proto {
 public:
  Proto() : Proto(Complex(), Complex(), 0) {}
  Proto(const Complex& source, const Complex& target, int degree)
      : Proto(share(source), share(target), degree) {}
  Proto(ComplexPtr source, ComplexPtr target, int degree)
      : src_(std::move(source)), tgt_(std::move(target)), degree_(degree) {
    for (int q = src_->lo(); q <= src_->hi(); ++q)
      comps_.emplace_back(tgt_->rank(q + degree_), src_->rank(q));
  }
  Proto(const Complex& source, const Complex& target, int degree,
        const std::map<int, IntMatrix>& comps)
      : Proto(source, target, degree) {
    for (const auto& [q, m] : comps) set(q, m);
  }

  const Complex& source() const { return *src_; }
  const Complex& target() const { return *tgt_; }
  const ComplexPtr& source_ptr() const { return src_; }
  const ComplexPtr& target_ptr() const { return tgt_; }
  int degree() const { return degree_; }

  IntMatrix comp(int q) const {
    if (q < src_->lo() || q > src_->hi()) return IntMatrix(tgt_->rank(q + degree_), 0);
    return comps_[static_cast<std::size_t>(q - src_->lo())];
  }
  const IntMatrix& comp_ref(int q) const { return comps_.at(static_cast<std::size_t>(q - src_->lo())); }

  void set(int q, IntMatrix m) {
    const std::size_t r = tgt_->rank(q + degree_), c = src_->rank(q);
    if (m.rows() != r || m.cols() != c)
      throw ShapeMismatch("component " + std::to_string(q) + " has shape " + m.shape_string() +
                          ", expected " + std::to_string(r) + "x" + std::to_string(c));
    if (c == 0) return;
    comps_[static_cast<std::size_t>(q - src_->lo())] = std::move(m);
  }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const IntMatrix& m) { return m.is_zero(); });
  }

  Proto& operator+=(const Proto& o) {
    check_parallel(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  Proto& operator-=(const Proto& o) {
    check_parallel(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  Proto& operator*=(const Int& c) {
    for (auto& m : comps_) m *= c;
    return *this;
  }
  friend Proto operator+(Proto a, const Proto& b) { return a += b; }
  friend Proto operator-(Proto a, const Proto& b) { return a -= b; }
  friend Proto operator-(Proto a) { return a *= Int(-1); }
  friend Proto operator*(const Int& c, Proto a) { return a *= c; }

  friend bool operator==(const Proto& a, const Proto& b) {
    return a.degree_ == b.degree_ && same(a.src_, b.src_) && same(a.tgt_, b.tgt_) &&
           a.comps_ == b.comps_;
  }

 private:
  static bool same(const ComplexPtr& a, const ComplexPtr& b) { return a == b || *a == *b; }
  void check_parallel(const Proto& o) const {
    if (degree_ != o.degree_ || !same(src_, o.src_) || !same(tgt_, o.tgt_))
      throw ShapeMismatch("protomorphisms are not parallel");
  }

  ComplexPtr src_;
  ComplexPtr tgt_;
  int degree_;
  std::vector<IntMatrix> comps_;  // index q - source.lo()
};

inline std::ostream& operator<<(std::ostream& os, const Proto& f) {
  os << "Proto(deg " << f.degree() << ")";
  for (int q = f.source().lo(); q <= f.source().hi(); ++q) os << " f" << q << "=" << f.comp(q);
  return os;
}

/// A chain map is a degree-0 protomorphism killed by the hom differential.
using ChainMap = Proto;

inline Proto identity(const Complex& A) {
  auto p = share(A);
  Proto f(p, p, 0);
  for (int q = A.lo(); q <= A.hi(); ++q) f.set(q, IntMatrix::identity(A.rank(q)));
  return f;
}

inline Proto zero_proto(const Complex& A, const Complex& B, int degree = 0) {
  return Proto(A, B, degree);
}

inline Proto compose(const Proto& g, const Proto& f) {
  if (!(f.target_ptr() == g.source_ptr() || f.target() == g.source()))
    throw NotComposable("compose: target of f differs from source of g");
  Proto h(f.source_ptr(), g.target_ptr(), f.degree() + g.degree());
  for (int q = f.source().lo(); q <= f.source().hi(); ++q)
    h.set(q, g.comp(q + f.degree()) * f.comp_ref(q));
  return h;
}

/// Hom-complex differential: (df)_q = d f_q - (-1)^n f_{q-1} d.
inline Proto d_hom(const Proto& f) {
  const int n = f.degree();
  const Int s = Int(sign_pow(n) * sign_conventions().hom);
  Proto g(f.source_ptr(), f.target_ptr(), n - 1);
  for (int q = f.source().lo(); q <= f.source().hi(); ++q) {
    IntMatrix m = f.target().d(q + n) * f.comp_ref(q);
    m -= s * (f.comp(q - 1) * f.source().d(q));
    g.set(q, std::move(m));
  }
  return g;
}

inline bool is_chain_map(const Proto& f) { return f.degree() == 0 && d_hom(f).is_zero(); }

inline void require_chain_map(const Proto& f, const std::string& what) {
  if (!is_chain_map(f)) throw NotAChainMap(what + " is not a chain map");
}

/// Degreewise A_n + B_n with block-diagonal differential.
inline Complex oplus(const Complex& A, const Complex& B) {
  if (A.is_zero_object()) return B;
  if (B.is_zero_object()) return A;
  const int lo = std::min(A.lo(), B.lo()), hi = std::max(A.hi(), B.hi());
  std::vector<std::size_t> ranks;
  std::map<int, IntMatrix> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(A.rank(n) + B.rank(n));
  for (int n = lo + 1; n <= hi; ++n) {
    IntMatrix m(A.rank(n - 1) + B.rank(n - 1), A.rank(n) + B.rank(n));
    if (!A.d(n).empty()) m.set_block(0, 0, A.d(n));
    if (!B.d(n).empty()) m.set_block(A.rank(n - 1), A.rank(n), B.d(n));
    diffs.emplace(n, std::move(m));
  }
  return Complex(lo, ranks, diffs);
}

/// f + g : A + A' -> B + B', block diagonal.
inline Proto oplus(const Proto& f, const Proto& g) {
  if (f.degree() != g.degree()) throw ShapeMismatch("oplus of protomorphisms of different degree");
  Proto h(oplus(f.source(), g.source()), oplus(f.target(), g.target()), f.degree());
  for (int q = h.source().lo(); q <= h.source().hi(); ++q) h.set(q, block_diag(f.comp(q), g.comp(q)));
  return h;
}

// --- suspension and the functors U, L, R ---

inline Complex suspension(const Complex& A, int k = 1) {
  if (A.is_zero_object()) return A;
  std::map<int, IntMatrix> diffs;
  for (const auto& [n, m] : A.diff_map()) diffs.emplace(n + k, Int(sign_pow(k)) * m);
  return Complex(A.lo() + k, A.ranks(), diffs);
}

/// S^k on a protomorphism: the same matrices between suspended complexes.
inline Proto suspension(const Proto& f, int k = 1) {
  Proto g(suspension(f.source(), k), suspension(f.target(), k), f.degree());
  for (int q = f.source().lo(); q <= f.source().hi(); ++q) g.set(q + k, f.comp_ref(q));
  return g;
}

inline Complex forget_U(const Complex& A) { return Complex(A.lo(), A.ranks()); }

inline Proto forget_U(const Proto& f) {
  Proto g(forget_U(f.source()), forget_U(f.target()), f.degree());
  for (int q = f.source().lo(); q <= f.source().hi(); ++q) g.set(q, f.comp_ref(q));
  return g;
}

inline void require_graded(const Complex& X) {
  if (!X.is_graded()) throw NotGraded("expected a complex with zero differentials");
}

/// (LX)_n = X_{n+1} + X_n with d = [[0, 1], [0, 0]].
inline Complex functor_L(const Complex& X) {
  require_graded(X);
  if (X.is_zero_object()) return X;
  std::vector<std::size_t> ranks;
  std::map<int, IntMatrix> diffs;
  for (int n = X.lo() - 1; n <= X.hi(); ++n) ranks.push_back(X.rank(n + 1) + X.rank(n));
  for (int n = X.lo(); n <= X.hi(); ++n) {
    IntMatrix m(X.rank(n) + X.rank(n - 1), X.rank(n + 1) + X.rank(n));
    m.set_block(0, X.rank(n + 1), IntMatrix::identity(X.rank(n)));
    diffs.emplace(n, std::move(m));
  }
  return Complex(X.lo() - 1, ranks, diffs);
}

/// (RX)_n = X_n + X_{n-1} with d = [[0, 1], [0, 0]].
inline Complex functor_R(const Complex& X) {
  require_graded(X);
  if (X.is_zero_object()) return X;
  std::vector<std::size_t> ranks;
  std::map<int, IntMatrix> diffs;
  for (int n = X.lo(); n <= X.hi() + 1; ++n) ranks.push_back(X.rank(n) + X.rank(n - 1));
  for (int n = X.lo() + 1; n <= X.hi() + 1; ++n) {
    IntMatrix m(X.rank(n - 1) + X.rank(n - 2), X.rank(n) + X.rank(n - 1));
    m.set_block(0, X.rank(n), IntMatrix::identity(X.rank(n - 1)));
    diffs.emplace(n, std::move(m));
  }
  return Complex(X.lo(), ranks, diffs);
}

inline Complex LZ() { return functor_L(Complex::K(0)); }
inline Complex RZ() { return functor_R(Complex::K(0)); }

/// L on graded maps: blockdiag(f_{n+1}, f_n).
inline Proto functor_L(const Proto& f) {
  if (f.degree() != 0) throw ShapeMismatch("functor_L expects a degree-0 map");
  Proto g(functor_L(f.source()), functor_L(f.target()), 0);
  for (int n = g.source().lo(); n <= g.source().hi(); ++n)
    g.set(n, block_diag(f.comp(n + 1), f.comp(n)));
  return g;
}

// --- Z, Z', H ---

using GradedGroups = std::map<int, FPAbGroup>;

/// Z_n = ker d_n.
inline GradedGroups cycles_Z(const Complex& A) {
  GradedGroups out;
  for (int n = A.lo(); n <= A.hi(); ++n)
    out[n] = FPAbGroup::free(kernel_basis(A.d(n)).cols());
  return out;
}

/// Z'_n = coker d_{n+1}.
inline GradedGroups boundariesquot_Zprime(const Complex& A) {
  GradedGroups out;
  for (int n = A.lo(); n <= A.hi(); ++n) out[n] = cokernel(A.d(n + 1)).group;
  return out;
}

/// H_n as the cokernel of d_{n+1} written in a basis of Z_n.
inline FPAbGroup homology_at(const Complex& A, int n) {
  IntMatrix K = kernel_basis(A.d(n));
  auto coords = solve_matrix(K, A.d(n + 1));
  if (!coords) throw Error("boundaries are not cycles at degree " + std::to_string(n));
  return cokernel(*coords).group;
}

inline GradedGroups homology_H(const Complex& A) {
  GradedGroups out;
  for (int n = A.lo(); n <= A.hi(); ++n) out[n] = homology_at(A, n);
  return out;
}

inline bool is_acyclic(const Complex& A) {
  for (int n = A.lo(); n <= A.hi(); ++n)
    if (!homology_at(A, n).is_trivial()) return false;
  return true;
}

/// Equality as graded groups, treating absent degrees as 0.
inline bool same_graded_groups(const GradedGroups& a, const GradedGroups& b) {
  for (const auto& [n, g] : a) {
    auto it = b.find(n);
    if (it == b.end() ? !g.is_trivial() : !(it->second == g)) return false;
  }
  for (const auto& [n, g] : b)
    if (!a.count(n) && !g.is_trivial()) return false;
  return true;
}

/// "H_0 = Z/2, H_1 = 0" over the given degrees.
inline std::string format_graded(const GradedGroups& g, const std::string& symbol = "H") {
  std::string out;
  for (const auto& [n, grp] : g) {
    if (!out.empty()) out += ", ";
    out += symbol + "_" + std::to_string(n) + " = " + grp.to_string();
  }
  return out.empty() ? "0" : out;
}

// --- the hom complex ---

/// [B, C] with [B,C]_n = sum over q of Hom(B_q, C_{q+n}), summands by
/// ascending q, each block flattened row-major.
class HomSpace {
 public:
  struct Block {
    int q;
    std::size_t offset;
    std::size_t rows;
    std::size_t cols;
  };

  HomSpace(const Complex& B, const Complex& C) : HomSpace(share(B), share(C)) {}
  HomSpace(ComplexPtr B, ComplexPtr C) : B_(std::move(B)), C_(std::move(C)) {
    if (B_->is_zero_object() || C_->is_zero_object()) return;
    lo_ = C_->lo() - B_->hi();
    const int hi = C_->hi() - B_->lo();
    std::vector<std::size_t> ranks;
    for (int n = lo_; n <= hi; ++n) {
      std::map<int, Block> blocks;
      std::size_t off = 0;
      for (int q = B_->lo(); q <= B_->hi(); ++q) {
        const std::size_t r = C_->rank(q + n), c = B_->rank(q);
        if (r == 0 || c == 0) continue;
        blocks.emplace(q, Block{q, off, r, c});
        off += r * c;
      }
      layout_.push_back(std::move(blocks));
      ranks.push_back(off);
    }
    std::map<int, IntMatrix> diffs;
    const Int hs = Int(sign_conventions().hom);
    for (int n = lo_ + 1; n <= hi; ++n) {
      IntMatrix m(ranks[static_cast<std::size_t>(n - 1 - lo_)], ranks[static_cast<std::size_t>(n - lo_)]);
      for (const auto& [q, blk] : layout(n)) {
        const int r = q + n;
        if (auto it = layout(n - 1).find(q); it != layout(n - 1).end())
          m.set_block(it->second.offset, blk.offset, kron(C_->d(r), IntMatrix::identity(blk.cols)));
        if (auto it = layout(n - 1).find(q + 1); it != layout(n - 1).end())
          m.add_block(it->second.offset, blk.offset,
                      kron(IntMatrix::identity(blk.rows), B_->d(q + 1).transpose()),
                      -hs * sign_pow(n));
      }
      diffs.emplace(n, std::move(m));
    }
    complex_ = Complex(lo_, ranks, diffs);
  }

  const Complex& source() const { return *B_; }
  const Complex& target() const { return *C_; }
  const Complex& complex() const { return complex_; }
  std::size_t dim(int n) const { return complex_.rank(n); }

  const std::map<int, Block>& layout(int n) const {
    static const std::map<int, Block> none;
    const int i = n - lo_;
    if (i < 0 || i >= static_cast<int>(layout_.size())) return none;
    return layout_[static_cast<std::size_t>(i)];
  }

  IntVec flatten(const Proto& f) const {
    IntVec v(dim(f.degree()));
    for (const auto& [q, blk] : layout(f.degree())) {
      const IntMatrix& m = f.comp_ref(q);
      std::copy(m.data().begin(), m.data().end(), v.begin() + static_cast<std::ptrdiff_t>(blk.offset));
    }
    return v;
  }

  Proto unflatten(int n, const IntVec& v) const {
    if (v.size() != dim(n)) throw DimensionMismatch("unflatten: wrong coordinate count");
    Proto f(B_, C_, n);
    for (const auto& [q, blk] : layout(n)) {
      IntMatrix m(blk.rows, blk.cols);
      for (std::size_t i = 0; i < blk.rows; ++i)
        for (std::size_t j = 0; j < blk.cols; ++j) m(i, j) = v[blk.offset + i * blk.cols + j];
      f.set(q, std::move(m));
    }
    return f;
  }

  Proto unit(int n, std::size_t k) const {
    IntVec v(dim(n));
    v[k] = 1;
    return unflatten(n, v);
  }

  /// Columns: a Z-basis of the n-cycles (degree-n chain maps when n = 0).
  IntMatrix cycle_lattice(int n = 0) const { return kernel_basis(complex_.d(n)); }

  std::vector<Proto> cycle_basis(int n = 0) const {
    IntMatrix K = cycle_lattice(n);
    std::vector<Proto> out;
    for (std::size_t j = 0; j < K.cols(); ++j) out.push_back(unflatten(n, K.col(j)));
    return out;
  }

 private:
  ComplexPtr B_, C_;
  int lo_ = 0;
  std::vector<std::map<int, Block>> layout_;
  Complex complex_;
};

inline Complex hom_complex(const Complex& B, const Complex& C) { return HomSpace(B, C).complex(); }

inline std::vector<Proto> chain_maps_basis(const Complex& B, const Complex& C) {
  return HomSpace(B, C).cycle_basis(0);
}

/// Matrix of f |-> post . f . pre on [B,C]_n -> [B',C']_{n + deg post + deg pre},
/// in flattened coordinates.
inline IntMatrix hom_action_matrix(const HomSpace& from, const HomSpace& to, int n,
                                   const Proto* post, const Proto* pre) {
  const int shift = (post ? post->degree() : 0) + (pre ? pre->degree() : 0);
  IntMatrix m(to.dim(n + shift), from.dim(n));
  for (std::size_t k = 0; k < from.dim(n); ++k) {
    Proto f = from.unit(n, k);
    if (pre) f = compose(f, *pre);
    if (post) f = compose(*post, f);
    IntVec v = to.flatten(f);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, k) = v[i];
  }
  return m;
}

// --- adjunctions L -| U -| R ---

/// phi : LX -> A  |->  its restriction to the X_n summands, a graded map X -> UA.
inline Proto transpose_LU(const Proto& phi, const Complex& X) {
  Proto g(forget_U(X), forget_U(phi.target()), 0);
  for (int n = X.lo(); n <= X.hi(); ++n)
    g.set(n, phi.comp(n).block(0, X.rank(n + 1), phi.target().rank(n), X.rank(n)));
  return g;
}

/// g : X -> UA  |->  phi_n = [d g_{n+1}, g_n] : LX -> A.
inline Proto untranspose_LU(const Proto& g, const Complex& A) {
  const Complex& X = g.source();
  Complex LX = functor_L(X);
  Proto phi(LX, A, 0);
  for (int n = LX.lo(); n <= LX.hi(); ++n)
    phi.set(n, hstack(A.d(n + 1) * g.comp(n + 1), g.comp(n)));
  return phi;
}

/// psi : A -> RX  |->  its first block row, a graded map UA -> X.
inline Proto transpose_UR(const Proto& psi, const Complex& X) {
  const Complex& A = psi.source();
  Proto g(forget_U(A), forget_U(X), 0);
  for (int n = A.lo(); n <= A.hi(); ++n)
    g.set(n, psi.comp(n).block(0, 0, X.rank(n), A.rank(n)));
  return g;
}

/// g : UA -> X  |->  psi_n = [g_n ; g_{n-1} d_n] : A -> RX.
inline Proto untranspose_UR(const Proto& g, const Complex& A) {
  Complex RX = functor_R(g.target());
  Proto psi(A, RX, 0);
  for (int n = A.lo(); n <= A.hi(); ++n) psi.set(n, vstack(g.comp(n), g.comp(n - 1) * A.d(n)));
  return psi;
}

/// Both transposes as matrices between the chain-map lattice (coordinates in
/// its kernel basis) and the graded hom group (flattened coordinates).
struct AdjunctionWitness {
  IntMatrix forward;
  IntMatrix backward;
  bool verified = false;
};

namespace detail {

inline AdjunctionWitness adjunction_matrices(const HomSpace& chains, const HomSpace& graded,
                                             const std::function<Proto(const Proto&)>& fwd,
                                             const std::function<Proto(const Proto&)>& bwd) {
  AdjunctionWitness w;
  IntMatrix K = chains.cycle_lattice(0);
  const std::size_t gdim = graded.dim(0);
  w.forward = IntMatrix(gdim, K.cols());
  for (std::size_t j = 0; j < K.cols(); ++j) {
    IntVec v = graded.flatten(fwd(chains.unflatten(0, K.col(j))));
    for (std::size_t i = 0; i < gdim; ++i) w.forward(i, j) = v[i];
  }
  w.backward = IntMatrix(K.cols(), gdim);
  bool chain_ok = true;
  for (std::size_t j = 0; j < gdim; ++j) {
    Proto phi = bwd(graded.unit(0, j));
    chain_ok = chain_ok && is_chain_map(phi);
    auto c = solve(K, chains.flatten(phi));
    if (!c) return w;
    for (std::size_t i = 0; i < K.cols(); ++i) w.backward(i, j) = (*c)[i];
  }
  w.verified = chain_ok && w.forward * w.backward == IntMatrix::identity(gdim) &&
               w.backward * w.forward == IntMatrix::identity(K.cols());
  return w;
}

}  // namespace detail

/// DGAb(LX, A) = GAb(X, UA).
inline AdjunctionWitness adjunction_iso_LU(const Complex& X, const Complex& A) {
  HomSpace chains(functor_L(X), A);
  HomSpace graded(forget_U(X), forget_U(A));
  return detail::adjunction_matrices(
      chains, graded, [&](const Proto& phi) { return transpose_LU(phi, X); },
      [&](const Proto& g) { return untranspose_LU(g, A); });
}

/// DGAb(A, RX) = GAb(UA, X).
inline AdjunctionWitness adjunction_iso_UR(const Complex& A, const Complex& X) {
  HomSpace chains(A, functor_R(X));
  HomSpace graded(forget_U(A), forget_U(X));
  return detail::adjunction_matrices(
      chains, graded, [&](const Proto& psi) { return transpose_UR(psi, X); },
      [&](const Proto& g) { return untranspose_UR(g, A); });
}

// --- the U-split coequalizer LULU A => LU A -> A ---

struct CanonicalPresentation {
  Complex LUA;
  Complex LULUA;
  ChainMap alpha;  // LUA -> A, [d 1]
  ChainMap beta;   // LULUA -> LUA, [[0 1 1 0], [0 0 0 1]]
  ChainMap gamma;  // LULUA -> LUA, [[d 1 0 0], [0 0 d 1]]

  bool fork_commutes() const { return compose(alpha, beta) == compose(alpha, gamma); }
};

inline CanonicalPresentation canonical_presentation(const Complex& A) {
  CanonicalPresentation p;
  p.LUA = functor_L(forget_U(A));
  p.LULUA = functor_L(forget_U(p.LUA));
  p.alpha = Proto(p.LUA, A, 0);
  for (int n = p.LUA.lo(); n <= p.LUA.hi(); ++n)
    p.alpha.set(n, hstack(A.d(n + 1), IntMatrix::identity(A.rank(n))));
  p.beta = Proto(p.LULUA, p.LUA, 0);
  p.gamma = Proto(p.LULUA, p.LUA, 0);
  for (int n = p.LULUA.lo(); n <= p.LULUA.hi(); ++n) {
    // (LULUA)_n = A_{n+2} + A_{n+1} + A_{n+1} + A_n ; (LUA)_n = A_{n+1} + A_n
    const std::size_t a2 = A.rank(n + 2), a1 = A.rank(n + 1), a0 = A.rank(n);
    IntMatrix b(a1 + a0, a2 + 2 * a1 + a0), g(a1 + a0, a2 + 2 * a1 + a0);
    b.set_block(0, a2, IntMatrix::identity(a1));
    b.set_block(0, a2 + a1, IntMatrix::identity(a1));
    b.set_block(a1, a2 + 2 * a1, IntMatrix::identity(a0));
    g.set_block(0, 0, A.d(n + 2));
    g.set_block(0, a2, IntMatrix::identity(a1));
    g.set_block(a1, a2 + a1, A.d(n + 1));
    g.set_block(a1, a2 + 2 * a1, IntMatrix::identity(a0));
    p.beta.set(n, std::move(b));
    p.gamma.set(n, std::move(g));
  }
  return p;
}

}  // namespace dgkit
