#ifndef THETA_FORGE_GROEBNER_HPP
#define THETA_FORGE_GROEBNER_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "theta_forge/poly_matrix.hpp"

namespace theta_forge {

/// Graded free module ⊕ S(-shift_i).
struct FreeModule {
  RingPtr ring;
  std::vector<int> shifts;

  static FreeModule free(RingPtr ring, std::size_t rank) { return {std::move(ring), std::vector<int>(rank, 0)}; }
  std::size_t rank() const { return shifts.size(); }
};

/// Position-over-term module order. Positions with smaller priority value
/// are larger; by default positions are ranked by (shift, index).
struct MonomialOrder {
  OrderKind kind = OrderKind::GRevLex;
  std::vector<std::size_t> priority;

  std::vector<std::size_t> resolve(const FreeModule& F) const {
    if (!priority.empty()) {
      if (priority.size() != F.rank()) throw Error(ErrorCode::SHAPE_MISMATCH, "priority size != rank");
      return priority;
    }
    std::vector<std::size_t> idx(F.rank()), prio(F.rank());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return F.shifts[a] < F.shifts[b]; });
    for (std::size_t r = 0; r < idx.size(); ++r) prio[idx[r]] = r;
    return prio;
  }
};

struct ModuleTerm {
  std::uint32_t pos;
  Monomial mono;
  Scalar coeff;
};

/// Sparse free-module element, terms strictly descending in the module order.
using ModuleVector = std::vector<ModuleTerm>;

namespace detail {

class ModuleArith {
 public:
  ModuleArith(const FreeModule& F, const MonomialOrder& order)
      : ring_(F.ring), shifts_(F.shifts), kind_(order.kind), prio_(order.resolve(F)) {}

  const PolyRing& ring() const { return *ring_; }
  const CoeffDomain& K() const { return ring_->coeffs(); }

  int cmp(std::uint32_t pa, const Monomial& a, std::uint32_t pb, const Monomial& b) const {
    if (pa != pb) return prio_[pa] < prio_[pb] ? 1 : -1;
    return ring_->compare(a, b, kind_);
  }
  int cmp(const ModuleTerm& a, const ModuleTerm& b) const { return cmp(a.pos, a.mono, b.pos, b.mono); }

  int degree(std::uint32_t pos, const Monomial& m) const { return ring_->degree(m) + shifts_[pos]; }

  ModuleVector from_column(const std::vector<Polynomial>& col) const {
    ModuleVector v;
    for (std::uint32_t p = 0; p < col.size(); ++p)
      for (const auto& t : col[p].terms()) v.push_back({p, t.mono, t.coeff});
    std::sort(v.begin(), v.end(), [&](const ModuleTerm& a, const ModuleTerm& b) { return cmp(a, b) > 0; });
    return v;
  }

  std::vector<Polynomial> to_column(const ModuleVector& v, std::size_t rank) const {
    std::vector<std::vector<Term>> parts(rank);
    for (const auto& t : v) parts[t.pos].push_back({t.mono, t.coeff});
    std::vector<Polynomial> col;
    col.reserve(rank);
    for (auto& p : parts) col.push_back(Polynomial::from_terms(ring_, std::move(p)));
    return col;
  }

  /// a[from..] - c * m * b[skip..]
  ModuleVector sub_mul(const ModuleVector& a, std::size_t from, const ModuleVector& b, std::size_t skip,
                       const Monomial& m, const Scalar& c) const {
    ModuleVector out;
    out.reserve(a.size() - from + b.size() - skip);
    std::size_t i = from, j = skip;
    while (i < a.size() || j < b.size()) {
      int s;
      Monomial bm;
      if (j < b.size()) bm = b[j].mono * m;
      if (i == a.size()) s = -1;
      else if (j == b.size()) s = 1;
      else s = cmp(a[i].pos, a[i].mono, b[j].pos, bm);
      if (s > 0) {
        out.push_back(a[i++]);
      } else if (s < 0) {
        out.push_back({b[j].pos, bm, K().neg(K().mul(c, b[j].coeff))});
        ++j;
      } else {
        Scalar v = K().sub(a[i].coeff, K().mul(c, b[j].coeff));
        if (sgn(v) != 0) out.push_back({a[i].pos, a[i].mono, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void make_monic(ModuleVector& v) const {
    if (v.empty()) return;
    Scalar inv = K().inv(v.front().coeff);
    for (auto& t : v) t.coeff = K().mul(t.coeff, inv);
  }

 private:
  RingPtr ring_;
  std::vector<int> shifts_;
  OrderKind kind_;
  std::vector<std::size_t> prio_;
};

/// Basis elements indexed by leading position for divisor lookup.
class ReducerSet {
 public:
  explicit ReducerSet(std::size_t rank) : by_pos_(rank) {}

  void add(const ModuleVector* v) {
    by_pos_[v->front().pos].push_back(v);
  }
  const ModuleVector* find(const ModuleTerm& t) const {
    for (const ModuleVector* g : by_pos_[t.pos])
      if (g->front().mono.divides(t.mono)) return g;
    return nullptr;
  }

 private:
  std::vector<std::vector<const ModuleVector*>> by_pos_;
};

/// Full reduction against monic reducers.
inline ModuleVector reduce(const ModuleArith& A, ModuleVector work, const ReducerSet& G) {
  ModuleVector rest;
  std::size_t head = 0;
  while (head < work.size()) {
    const ModuleTerm& lt = work[head];
    if (const ModuleVector* g = G.find(lt)) {
      Monomial m = lt.mono / g->front().mono;
      Scalar c = lt.coeff;
      work = A.sub_mul(work, head + 1, *g, 1, m, c);
      head = 0;
    } else {
      rest.push_back(lt);
      ++head;
    }
  }
  return rest;
}

struct CriticalPair {
  int degree;
  std::size_t i, j;
  Monomial lcm;
};

inline std::vector<ModuleVector> buchberger(const ModuleArith& A, std::size_t rank,
                                            std::vector<ModuleVector> input) {
  if (!A.K().is_field())
    throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD, "Groebner bases need a coefficient field, got " + A.K().name());
  std::vector<std::unique_ptr<ModuleVector>> G;
  ReducerSet reducers(rank);
  std::set<std::pair<std::size_t, std::size_t>> pending;
  std::vector<CriticalPair> queue;

  auto pair_less = [](const CriticalPair& a, const CriticalPair& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  };

  auto insert = [&](ModuleVector v) {
    A.make_monic(v);
    const std::size_t k = G.size();
    G.push_back(std::make_unique<ModuleVector>(std::move(v)));
    const ModuleTerm& lk = G[k]->front();
    for (std::size_t i = 0; i < k; ++i) {
      const ModuleTerm& li = G[i]->front();
      if (li.pos != lk.pos) continue;
      Monomial l = Monomial::lcm(li.mono, lk.mono);
      queue.push_back({A.degree(lk.pos, l), i, k, l});
      std::push_heap(queue.begin(), queue.end(), pair_less);
      pending.insert({i, k});
    }
    reducers.add(G[k].get());
  };

  // Sort input so that the result does not depend on generator order
  // beyond what reduction already canonicalizes.
  std::sort(input.begin(), input.end(), [&](const ModuleVector& a, const ModuleVector& b) {
    if (a.empty() || b.empty()) return a.size() < b.size();
    int c = A.cmp(a.front(), b.front());
    return c < 0;
  });
  for (auto& v : input) {
    ModuleVector r = reduce(A, std::move(v), reducers);
    if (!r.empty()) insert(std::move(r));
  }

  while (!queue.empty()) {
    std::pop_heap(queue.begin(), queue.end(), pair_less);
    CriticalPair cp = queue.back();
    queue.pop_back();
    pending.erase({cp.i, cp.j});
    const ModuleVector& gi = *G[cp.i];
    const ModuleVector& gj = *G[cp.j];
    const std::uint32_t pos = gi.front().pos;
    if (rank == 1 && Monomial::coprime(gi.front().mono, gj.front().mono)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == cp.i || k == cp.j) continue;
      const ModuleTerm& lk = G[k]->front();
      if (lk.pos != pos || !lk.mono.divides(cp.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!pending.count(key(cp.i, k)) && !pending.count(key(cp.j, k))) chain = true;
    }
    if (chain) continue;
    Monomial mi = cp.lcm / gi.front().mono;
    Monomial mj = cp.lcm / gj.front().mono;
    ModuleVector si;
    si.reserve(gi.size());
    for (std::size_t t = 1; t < gi.size(); ++t) si.push_back({gi[t].pos, gi[t].mono * mi, gi[t].coeff});
    ModuleVector s = A.sub_mul(si, 0, gj, 1, mj, Scalar(1));
    ModuleVector r = reduce(A, std::move(s), reducers);
    if (!r.empty()) insert(std::move(r));
  }

  // Minimalize, then inter-reduce.
  std::vector<ModuleVector> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const ModuleTerm& li = G[i]->front();
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const ModuleTerm& lj = G[j]->front();
      if (lj.pos != li.pos || !lj.mono.divides(li.mono)) continue;
      if (!(lj.mono == li.mono) || j < i) redundant = true;
    }
    if (!redundant) minimal.push_back(*G[i]);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const ModuleVector& a, const ModuleVector& b) { return A.cmp(a.front(), b.front()) < 0; });
  std::vector<ModuleVector> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    ReducerSet others(rank);
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.add(&minimal[j]);
    ModuleVector tail(minimal[i].begin() + 1, minimal[i].end());
    ModuleVector r = reduce(A, std::move(tail), others);
    r.insert(r.begin(), minimal[i].front());
    reduced.push_back(std::move(r));
  }
  return reduced;
}

inline std::string serialize_vectors(const std::vector<ModuleVector>& vs, std::size_t nvars) {
  std::ostringstream os;
  os << vs.size() << '\n';
  for (const auto& v : vs) {
    os << v.size();
    for (const auto& t : v) {
      os << ' ' << t.pos;
      for (std::size_t i = 0; i < nvars; ++i) os << ' ' << t.mono[i];
      os << ' ' << t.coeff.get_str();
    }
    os << '\n';
  }
  return os.str();
}

inline std::optional<std::vector<ModuleVector>> deserialize_vectors(std::istream& is, std::size_t nvars) {
  std::size_t n;
  if (!(is >> n)) return std::nullopt;
  std::vector<ModuleVector> vs(n);
  for (auto& v : vs) {
    std::size_t len;
    if (!(is >> len)) return std::nullopt;
    v.resize(len);
    for (auto& t : v) {
      unsigned e;
      std::string c;
      if (!(is >> t.pos)) return std::nullopt;
      for (std::size_t i = 0; i < nvars; ++i) {
        if (!(is >> e)) return std::nullopt;
        t.mono[i] = static_cast<Monomial::Exponent>(e);
      }
      if (!(is >> c)) return std::nullopt;
      t.coeff = Scalar(c);
    }
  }
  return vs;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

}  // namespace detail

/// Process-wide memo of reduced bases keyed by the exact input content.
/// Optionally backed by a directory of content-hash keyed files.
class GroebnerCache {
 public:
  using Basis = std::shared_ptr<const std::vector<ModuleVector>>;

  static GroebnerCache& instance() {
    static GroebnerCache cache;
    return cache;
  }

  Basis lookup(const std::string& key, std::size_t nvars) {
    {
      std::shared_lock lock(mutex_);
      auto it = entries_.find(key);
      if (it != entries_.end()) {
        ++hits_;
        return it->second;
      }
    }
    if (auto dir = disk_dir(); !dir.empty()) {
      std::ifstream in(file_for(dir, key));
      std::string stored;
      if (in && std::getline(in, stored) && stored == escape(key)) {
        if (auto vs = detail::deserialize_vectors(in, nvars)) {
          auto b = std::make_shared<const std::vector<ModuleVector>>(std::move(*vs));
          store_memory(key, b);
          ++hits_;
          return b;
        }
      }
    }
    return nullptr;
  }

  void store(const std::string& key, const Basis& b, std::size_t nvars) {
    store_memory(key, b);
    if (auto dir = disk_dir(); !dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      auto path = file_for(dir, key);
      auto tmp = path;
      tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
      {
        std::ofstream out(tmp);
        out << escape(key) << '\n' << detail::serialize_vectors(*b, nvars);
      }
      std::filesystem::rename(tmp, path, ec);
    }
  }

  void clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }
  std::size_t hits() const { return hits_.load(); }

  /// Empty string disables the disk layer.
  void set_disk_dir(std::string dir) {
    std::unique_lock lock(mutex_);
    dir_ = std::move(dir);
  }

 private:
  GroebnerCache() {
    if (const char* env = std::getenv("THETA_FORGE_CACHE_DIR")) dir_ = env;
  }

  std::string disk_dir() const {
    std::shared_lock lock(mutex_);
    return dir_;
  }
  static std::filesystem::path file_for(const std::string& dir, const std::string& key) {
    std::ostringstream name;
    name << std::hex << detail::fnv1a(key) << ".gb";
    return std::filesystem::path(dir) / name.str();
  }
  static std::string escape(const std::string& key) {
    std::string s;
    for (char c : key) s += c == '\n' ? '|' : c;
    return s;
  }
  void store_memory(const std::string& key, const Basis& b) {
    std::unique_lock lock(mutex_);
    entries_.emplace(key, b);
  }

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Basis> entries_;
  std::atomic<std::size_t> hits_{0};
  std::string dir_;
};

/// Submodule of a graded free module generated by matrix columns.
class Submodule {
 public:
  Submodule(FreeModule ambient, PolyMatrix generators, MonomialOrder order = {})
      : ambient_(std::move(ambient)), gens_(std::move(generators)), order_(std::move(order)) {
    if (gens_.rows() != ambient_.rank())
      throw Error(ErrorCode::SHAPE_MISMATCH,
                  "generators have " + std::to_string(gens_.rows()) + " rows, ambient rank is " +
                      std::to_string(ambient_.rank()));
  }

  const FreeModule& ambient() const { return ambient_; }
  const PolyMatrix& generators() const { return gens_; }
  const MonomialOrder& order() const { return order_; }
  bool has_basis() const { return basis_ != nullptr; }
  const std::vector<ModuleVector>& basis() const {
    if (!basis_) throw Error(ErrorCode::SPEC_MALFORMED, "Groebner basis not computed");
    return *basis_;
  }
  /// Basis as matrix columns.
  PolyMatrix basis_matrix() const {
    detail::ModuleArith A(ambient_, order_);
    const auto& b = basis();
    PolyMatrix m(ambient_.ring, ambient_.rank(), b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto col = A.to_column(b[j], ambient_.rank());
      for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = std::move(col[i]);
    }
    return m;
  }

  /// The zero submodule and the whole ambient module.
  static Submodule zero(const FreeModule& F) { return Submodule(F, PolyMatrix(F.ring, F.rank(), 0)); }
  static Submodule whole(const FreeModule& F) { return Submodule(F, PolyMatrix::identity(F.ring, F.rank())); }

  /// Appends columns (same ambient); drops any cached basis.
  Submodule with_generators(const PolyMatrix& extra) const {
    return Submodule(ambient_, PolyMatrix::hconcat(gens_, extra), order_);
  }

 private:
  friend Submodule groebner_basis(const Submodule&);
  FreeModule ambient_;
  PolyMatrix gens_;
  MonomialOrder order_;
  std::shared_ptr<const std::vector<ModuleVector>> basis_;
};

namespace detail {

inline std::string cache_key(const Submodule& s, const std::vector<std::size_t>& prio) {
  const auto& F = s.ambient();
  std::ostringstream os;
  os << F.ring->description() << ';' << (s.order().kind == OrderKind::GRevLex ? "grevlex" : "glex") << ';';
  for (std::size_t i = 0; i < F.rank(); ++i) os << F.shifts[i] << ':' << prio[i] << ',';
  os << ';';
  const auto& g = s.generators();
  for (std::size_t j = 0; j < g.cols(); ++j) {
    for (std::size_t i = 0; i < g.rows(); ++i) os << g(i, j).to_string() << ',';
    os << ';';
  }
  return os.str();
}

}  // namespace detail

/// Reduced Gröbner basis of the submodule (cached process-wide).
inline Submodule groebner_basis(const Submodule& s) {
  if (s.has_basis()) return s;
  const auto& F = s.ambient();
  auto prio = s.order().resolve(F);
  std::string key = detail::cache_key(s, prio);
  auto& cache = GroebnerCache::instance();
  Submodule out = s;
  if (auto hit = cache.lookup(key, F.ring->nvars())) {
    out.basis_ = hit;
    return out;
  }
  detail::ModuleArith A(F, s.order());
  std::vector<ModuleVector> input;
  for (std::size_t j = 0; j < s.generators().cols(); ++j) {
    auto v = A.from_column(s.generators().column(j));
    if (!v.empty()) input.push_back(std::move(v));
  }
  auto basis = std::make_shared<const std::vector<ModuleVector>>(detail::buchberger(A, F.rank(), std::move(input)));
  cache.store(key, basis, F.ring->nvars());
  out.basis_ = basis;
  return out;
}

inline Submodule groebner_basis(const Submodule& s, const MonomialOrder& order) {
  return groebner_basis(Submodule(s.ambient(), s.generators(), order));
}

/// Remainder of v modulo the basis of s (computing the basis if needed).
inline std::vector<Polynomial> normal_form(const std::vector<Polynomial>& v, const Submodule& s) {
  Submodule gb = groebner_basis(s);
  const auto& F = gb.ambient();
  if (v.size() != F.rank()) throw Error(ErrorCode::SHAPE_MISMATCH, "vector length != ambient rank");
  detail::ModuleArith A(F, gb.order());
  detail::ReducerSet G(F.rank());
  for (const auto& g : gb.basis()) G.add(&g);
  return A.to_column(detail::reduce(A, A.from_column(v), G), F.rank());
}

inline Polynomial normal_form(const Polynomial& v, const Submodule& s) { return normal_form(std::vector{v}, s)[0]; }

inline bool is_zero_vector(const std::vector<Polynomial>& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

inline bool contains(const Submodule& s, const std::vector<Polynomial>& v) { return is_zero_vector(normal_form(v, s)); }

/// True when every column of `inner` lies in `outer`.
inline bool contains(const Submodule& outer, const PolyMatrix& inner) {
  Submodule gb = groebner_basis(outer);
  for (std::size_t j = 0; j < inner.cols(); ++j)
    if (!contains(gb, inner.column(j))) return false;
  return true;
}

/// Degree of column j making m homogeneous as a map F(source) -> F(target);
/// zero columns get 0.
inline int column_degree(const PolyMatrix& m, std::size_t j, const std::vector<int>& target_shifts) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m(i, j).is_zero()) return m(i, j).degree() + target_shifts[i];
  return 0;
}

/// Generators of the kernel of the map S^cols -> S^rows given by m.
/// Elimination order on [m ; I]: the first rows dominate.
inline PolyMatrix syzygy(const PolyMatrix& m, const std::vector<int>& target_shifts = {}) {
  const std::size_t r = m.rows(), c = m.cols();
  const auto& ring = m.ring_ptr();
  std::vector<int> tshift = target_shifts.empty() ? std::vector<int>(r, 0) : target_shifts;
  FreeModule F{ring, std::vector<int>(r + c, 0)};
  for (std::size_t i = 0; i < r; ++i) F.shifts[i] = tshift[i];
  for (std::size_t j = 0; j < c; ++j) F.shifts[r + j] = column_degree(m, j, tshift);
  MonomialOrder order;
  {
    std::vector<std::size_t> idx(c);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return F.shifts[r + a] < F.shifts[r + b]; });
    MonomialOrder base;
    std::vector<std::size_t> top = base.resolve(FreeModule{ring, tshift});
    order.priority.assign(r + c, 0);
    for (std::size_t i = 0; i < r; ++i) order.priority[i] = top[i];
    for (std::size_t k = 0; k < c; ++k) order.priority[r + idx[k]] = r + k;
  }
  PolyMatrix gens(ring, r + c, c);
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < r; ++i) gens(i, j) = m(i, j);
    gens(r + j, j) = Polynomial::constant(ring, 1);
  }
  Submodule gb = groebner_basis(Submodule(F, gens, order));
  std::vector<std::vector<Polynomial>> cols;
  detail::ModuleArith A(F, order);
  for (const auto& v : gb.basis()) {
    if (v.front().pos < r) continue;  // leading term in the top block: not a syzygy
    auto col = A.to_column(v, r + c);
    cols.emplace_back(col.begin() + static_cast<std::ptrdiff_t>(r), col.end());
  }
  PolyMatrix out(ring, c, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < c; ++i) out(i, j) = cols[j][i];
  return out;
}

/// Vector-space dimension, possibly infinite.
struct KDim {
  bool infinite = false;
  std::uint64_t value = 0;

  static KDim finite(std::uint64_t v) { return {false, v}; }
  static KDim inf() { return {true, 0}; }
  std::string to_string() const { return infinite ? "INFINITE" : std::to_string(value); }
  friend bool operator==(const KDim&, const KDim&) = default;
};

namespace detail {

// Univariate integer polynomials for Hilbert series numerators.
using Series = std::vector<long long>;

inline void series_sub_shifted(Series& a, const Series& b, int shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= b[i];
}

inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    return a.total_degree() < b.total_degree();
  });
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& h) { return h.divides(g); });
    if (!redundant) out.push_back(g);
  }
  return out;
}

/// Numerator K(t) of the Hilbert series of S/I in the standard grading,
/// HS = K(t) / (1-t)^n.
inline Series hilbert_numerator(std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  bool pairwise_coprime = true;
  for (std::size_t i = 0; i < gens.size() && pairwise_coprime; ++i)
    for (std::size_t j = i + 1; j < gens.size() && pairwise_coprime; ++j)
      if (!Monomial::coprime(gens[i], gens[j])) pairwise_coprime = false;
  if (pairwise_coprime) {
    Series k{1};
    for (const auto& g : gens) {
      Series next = k;
      series_sub_shifted(next, k, g.total_degree());
      k = std::move(next);
    }
    return k;
  }
  // Pivot on a variable power shared by several generators:
  // K(I) = K(I + (p)) + t^deg(p) K(I : p).
  std::size_t best_var = 0;
  int best_count = -1;
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    int count = 0;
    for (const auto& g : gens)
      if (g[v] > 0) ++count;
    if (count > best_count) {
      best_count = count;
      best_var = v;
    }
  }
  std::vector<Monomial::Exponent> exps;
  for (const auto& g : gens)
    if (g[best_var] > 0) exps.push_back(g[best_var]);
  std::sort(exps.begin(), exps.end());
  Monomial pivot = Monomial::variable(best_var, exps[(exps.size() - 1) / 2]);
  std::vector<Monomial> with_pivot = gens;
  with_pivot.push_back(pivot);
  std::vector<Monomial> quotient;
  for (const auto& g : gens) quotient.push_back(g / Monomial::gcd(g, pivot));
  Series a = hilbert_numerator(std::move(with_pivot));
  Series b = hilbert_numerator(std::move(quotient));
  int d = pivot.total_degree();
  if (a.size() < b.size() + d) a.resize(b.size() + d, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + d] += b[i];
  return a;
}

/// Number of monomials in (gens of `big`) not in (gens of `small`), where
/// small ⊆ big; nullopt if infinite.
inline std::optional<std::uint64_t> count_monomial_difference(const std::vector<Monomial>& big,
                                                              const std::vector<Monomial>& small,
                                                              std::size_t nvars) {
  Series p = hilbert_numerator(small);
  Series q = hilbert_numerator(big);
  if (p.size() < q.size()) p.resize(q.size(), 0);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] -= q[i];
  for (std::size_t k = 0; k < nvars; ++k) {
    long long at_one = std::accumulate(p.begin(), p.end(), 0LL);
    if (at_one != 0) return std::nullopt;
    if (p.size() <= 1) return 0;
    // divide by (1 - t): quotient coefficients are prefix sums
    Series quot(p.size() - 1);
    long long acc = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      acc += p[i];
      quot[i] = acc;
    }
    p = std::move(quot);
  }
  long long total = std::accumulate(p.begin(), p.end(), 0LL);
  return static_cast<std::uint64_t>(total);
}

inline std::vector<std::vector<Monomial>> leading_ideals(const Submodule& gb) {
  std::vector<std::vector<Monomial>> lt(gb.ambient().rank());
  for (const auto& v : gb.basis()) lt[v.front().pos].push_back(v.front().mono);
  return lt;
}

}  // namespace detail

/// dim_k of numerator / denominator, with denominator ⊆ numerator in a
/// common ambient module, counted on leading-term modules.
inline KDim k_dimension(const Submodule& numerator, const Submodule& denominator) {
  const auto& F = numerator.ambient();
  if (!F.ring->coeffs().is_field())
    throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD, "dimension over " + F.ring->coeffs().name());
  if (denominator.ambient().rank() != F.rank())
    throw Error(ErrorCode::SHAPE_MISMATCH, "subquotient ambient ranks differ");
  Submodule num = groebner_basis(Submodule(F, numerator.generators(), numerator.order()));
  Submodule den = groebner_basis(Submodule(F, denominator.generators(), numerator.order()));
  auto lt_num = detail::leading_ideals(num);
  auto lt_den = detail::leading_ideals(den);
  std::uint64_t total = 0;
  for (std::size_t p = 0; p < F.rank(); ++p) {
    auto c = detail::count_monomial_difference(lt_num[p], lt_den[p], F.ring->nvars());
    if (!c) return KDim::inf();
    total += *c;
  }
  return KDim::finite(total);
}

/// dim_k of F / s.
inline KDim k_dimension(const Submodule& s) { return k_dimension(Submodule::whole(s.ambient()), s); }

/// Standard monomials of a finite-codimension ideal (rank-one submodule).
inline std::vector<Monomial> standard_monomials(const Submodule& ideal) {
  Submodule gb = groebner_basis(ideal);
  auto lt = detail::leading_ideals(gb)[0];
  const std::size_t n = gb.ambient().ring->nvars();
  for (std::size_t v = 0; v < n; ++v) {
    bool has_power = std::any_of(lt.begin(), lt.end(), [&](const Monomial& m) {
      for (std::size_t u = 0; u < n; ++u)
        if (u != v && m[u] != 0) return false;
      return m[v] > 0;
    });
    if (!has_power) throw Error(ErrorCode::INFINITE_LENGTH, "quotient is infinite dimensional");
  }
  std::vector<Monomial> out;
  std::vector<Monomial> frontier{Monomial()};
  std::set<std::vector<int>> seen;
  auto in_lt = [&](const Monomial& m) {
    return std::any_of(lt.begin(), lt.end(), [&](const Monomial& g) { return g.divides(m); });
  };
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    std::vector<int> key(n);
    for (std::size_t i = 0; i < n; ++i) key[i] = m[i];
    if (!seen.insert(key).second || in_lt(m)) continue;
    out.push_back(m);
    for (std::size_t v = 0; v < n; ++v) frontier.push_back(m * Monomial::variable(v));
  }
  const auto& R = *gb.ambient().ring;
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return R.compare(a, b) < 0; });
  return out;
}

}  // namespace theta_forge

#endif  // THETA_FORGE_GROEBNER_HPP
