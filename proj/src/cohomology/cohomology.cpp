#include "odeinv/cohomology/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>

#include "odeinv/error.hpp"

namespace odeinv {

using linalg::Exec;
using linalg::SparseMatrix;
using linalg::SparseRow;
using linalg::Triplet;

// ------------------------------------------------------------- GradedBasis

std::vector<int> GradedBasis::of_degree(int r) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (degrees[static_cast<std::size_t>(i)] == r) out.push_back(i);
  }
  return out;
}

std::vector<int> GradedBasis::degree_set() const {
  std::set<int> s(degrees.begin(), degrees.end());
  return {s.begin(), s.end()};
}

LinearMapQ LinearMapQ::after(const LinearMapQ& first) const {
  if (first.codomain.labels != domain.labels) throw ShapeError("composition of maps with mismatched bases");
  return {first.domain, codomain, matrix * first.matrix};
}

bool LinearMapQ::shifts_degree_by(int shift) const {
  for (int r = 0; r < matrix.rows(); ++r) {
    for (const auto& e : matrix.row(r)) {
      if (codomain.degrees[static_cast<std::size_t>(r)] !=
          domain.degrees[static_cast<std::size_t>(e.col)] + shift) {
        return false;
      }
    }
  }
  return true;
}

SparseMatrix LinearMapQ::block(int r, int shift) const {
  return matrix.select_rows(codomain.of_degree(r + shift)).select_cols(domain.of_degree(r));
}

// ---------------------------------------------------------------- HomSpace

namespace {

int popcount_below(std::uint32_t mask, int pos) {
  return std::popcount(mask & ((std::uint32_t{1} << pos) - 1));
}

int sign_of(int n) { return n % 2 == 0 ? 1 : -1; }

std::vector<std::uint32_t> subsets_of_size(int n, int q) {
  std::vector<std::uint32_t> out;
  if (q > n) return out;
  std::vector<int> pos(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) pos[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (int p : pos) mask |= std::uint32_t{1} << p;
    out.push_back(mask);
    int i = q - 1;
    while (i >= 0 && pos[static_cast<std::size_t>(i)] == n - q + i) --i;
    if (i < 0) break;
    ++pos[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < q; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

HomSpace::HomSpace(const GradedLieAlgebra& g, std::vector<int> source, int q, std::vector<int> target)
    : source_(std::move(source)), q_(q), target_(std::move(target)) {
  if (source_.size() > 31) throw ShapeError("cochain source space too large");
  masks_ = subsets_of_size(static_cast<int>(source_.size()), q_);
  for (std::size_t i = 0; i < masks_.size(); ++i) mask_index_[masks_[i]] = static_cast<int>(i);
  target_pos_.assign(static_cast<std::size_t>(g.dim()), -1);
  for (std::size_t t = 0; t < target_.size(); ++t) target_pos_[static_cast<std::size_t>(target_[t])] = static_cast<int>(t);
  for (auto mask : masks_) {
    std::string args;
    int deg = 0;
    mpq_class dual = 1;
    for (std::size_t s = 0; s < source_.size(); ++s) {
      if (!(mask >> s & 1U)) continue;
      const auto& b = g.element(source_[s]);
      if (!args.empty()) args += "^";
      args += b.name;
      deg += b.degree;
      dual /= b.gram;
    }
    if (args.empty()) args = "1";
    for (int t : target_) {
      const auto& b = g.element(t);
      basis_.labels.push_back(args + "->" + b.name);
      basis_.degrees.push_back(b.degree - deg);
      gram_.push_back(dual * b.gram);
    }
  }
}

int HomSpace::subset_index(std::uint32_t mask) const {
  auto it = mask_index_.find(mask);
  return it == mask_index_.end() ? -1 : it->second;
}

int HomSpace::target_pos(int p) const { return target_pos_[static_cast<std::size_t>(p)]; }

int HomSpace::index(std::uint32_t mask, int target_pos) const {
  int s = subset_index(mask);
  if (s < 0 || target_pos < 0) return -1;
  return s * static_cast<int>(target_.size()) + target_pos;
}

// ----------------------------------------------------------------- actions

LinearMapQ hom_action(const GradedLieAlgebra& g, int element, const HomSpace& space, bool act_on_values) {
  const auto& src = space.source();
  // Positions of g-indices inside the source list.
  std::vector<int> src_pos(static_cast<std::size_t>(g.dim()), -1);
  for (std::size_t s = 0; s < src.size(); ++s) src_pos[static_cast<std::size_t>(src[s])] = static_cast<int>(s);
  // [element, u_s] expressed on source positions.
  std::vector<std::vector<std::pair<int, mpq_class>>> arg_image(src.size());
  for (std::size_t s = 0; s < src.size(); ++s) {
    for (const auto& t : g.bracket(element, src[s])) {
      int p = src_pos[static_cast<std::size_t>(t.col)];
      if (p < 0) throw ShapeError("source space is not stable under " + g.element(element).name);
      arg_image[s].push_back({p, t.val});
    }
  }
  std::vector<Triplet> trip;
  const int nt = static_cast<int>(space.target().size());
  for (int idx = 0; idx < space.size(); ++idx) {
    const auto mask = space.mask_of(idx);
    const int tpos = space.target_of(idx);
    if (act_on_values) {
      for (const auto& t : g.bracket(element, space.target()[static_cast<std::size_t>(tpos)])) {
        int tp = space.target_pos(t.col);
        if (tp < 0) throw ShapeError("target space is not stable under " + g.element(element).name);
        trip.push_back({space.index(mask, tp), idx, t.val});
      }
    }
    // -(eps_{I,t})(.., [e, u_s], ..): pick l in I and s with [e, u_s] ~ u_l.
    for (std::size_t s = 0; s < src.size(); ++s) {
      for (const auto& [l, c] : arg_image[s]) {
        if (!(mask >> l & 1U)) continue;
        const std::uint32_t rest = mask & ~(std::uint32_t{1} << l);
        if (rest >> s & 1U) continue;
        const std::uint32_t jmask = rest | (std::uint32_t{1} << s);
        // Sequence J with u_s replaced by u_l, sorted into I: moving l from
        // the slot of s to its own slot.
        int sgn = sign_of(popcount_below(rest, static_cast<int>(s)) + popcount_below(rest, l));
        trip.push_back({space.index(jmask, tpos), idx, -c * sgn});
      }
    }
  }
  (void)nt;
  return {space.basis(), space.basis(), SparseMatrix::from_triplets(space.size(), space.size(), std::move(trip))};
}

std::vector<SparseRow> invariants(const GradedLieAlgebra& g, int element, const HomSpace& space,
                                  bool act_on_values, Exec exec) {
  return linalg::kernel(hom_action(g, element, space, act_on_values).matrix, exec);
}

namespace {

// Sop^q on Hom(Lambda^q V, targets) with targets inside the reductive part.
LinearMapQ spencer_on(const GradedLieAlgebra& g, int q, const std::vector<int>& targets) {
  const auto vs = g.v_indices();
  HomSpace dom(g, vs, q, targets);
  HomSpace cod(g, vs, q + 1, vs);
  std::vector<Triplet> trip;
  for (int idx = 0; idx < dom.size(); ++idx) {
    const auto mask = dom.mask_of(idx);
    const int s = dom.target()[static_cast<std::size_t>(dom.target_of(idx))];
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (mask >> i & 1U) continue;
      const std::uint32_t jmask = mask | (std::uint32_t{1} << i);
      const int sgn = sign_of(popcount_below(jmask, static_cast<int>(i)) + 1);
      for (const auto& t : g.bracket(s, vs[i])) {
        trip.push_back({cod.index(jmask, cod.target_pos(t.col)), idx, t.val * sgn});
      }
    }
  }
  return {dom.basis(), cod.basis(), SparseMatrix::from_triplets(cod.size(), dom.size(), std::move(trip))};
}

}  // namespace

LinearMapQ spencer(const GradedLieAlgebra& g, int q) { return spencer_on(g, q, g.reductive_indices()); }

LinearMapQ spencer1_sl2(const GradedLieAlgebra& g) { return spencer_on(g, 1, g.sl2_indices()); }

std::vector<int> f_indices(const GradedLieAlgebra& g) {
  std::vector<int> out;
  for (int p : g.v_indices()) {
    if (g.element(p).a >= 1) out.push_back(p);
  }
  return out;
}

std::vector<int> w_indices(const GradedLieAlgebra& g) {
  std::vector<int> out;
  for (int p : g.v_indices()) {
    if (g.element(p).a == 0) out.push_back(p);
  }
  return out;
}

LinearMapQ delta_map(const GradedLieAlgebra& g, int p) {
  const auto fs = f_indices(g);
  HomSpace dom(g, fs, p, {g.x()});
  HomSpace cod(g, fs, p + 1, w_indices(g));
  std::vector<Triplet> trip;
  for (int idx = 0; idx < dom.size(); ++idx) {
    const auto mask = dom.mask_of(idx);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (mask >> i & 1U) continue;
      const auto& b = g.element(fs[i]);
      if (b.a != 1) continue;  // x . A_i mod F vanishes unless A_i = v^1 (x) w
      const std::uint32_t jmask = mask | (std::uint32_t{1} << i);
      const int sgn = sign_of(popcount_below(jmask, static_cast<int>(i)) + 1);
      trip.push_back({cod.index(jmask, cod.target_pos(g.v(0, b.i))), idx, sgn});
    }
  }
  return {dom.basis(), cod.basis(), SparseMatrix::from_triplets(cod.size(), dom.size(), std::move(trip))};
}

LinearMapQ alpha_map(const GradedLieAlgebra& g) {
  const auto vs = g.v_indices();
  const auto fs = f_indices(g);
  HomSpace dom(g, vs, 2, vs);
  HomSpace cod(g, fs, 2, w_indices(g));
  // F is the tail of V in basis order.
  const int offset = static_cast<int>(vs.size() - fs.size());
  std::vector<Triplet> trip;
  for (int idx = 0; idx < dom.size(); ++idx) {
    const auto mask = dom.mask_of(idx);
    if (mask & ((std::uint32_t{1} << offset) - 1)) continue;
    const int t = dom.target()[static_cast<std::size_t>(dom.target_of(idx))];
    const int tp = cod.target_pos(t);
    if (tp < 0) continue;
    trip.push_back({cod.index(mask >> offset, tp), idx, 1});
  }
  return {dom.basis(), cod.basis(), SparseMatrix::from_triplets(cod.size(), dom.size(), std::move(trip))};
}

LinearMapQ alpha_bar_map(const GradedLieAlgebra& g) {
  const auto vs = g.v_indices();
  const auto fs = f_indices(g);
  HomSpace dom(g, vs, 1, g.sl2_indices());
  HomSpace cod(g, fs, 1, {g.x()});
  const int offset = static_cast<int>(vs.size() - fs.size());
  std::vector<Triplet> trip;
  for (int idx = 0; idx < dom.size(); ++idx) {
    const auto mask = dom.mask_of(idx);
    if (mask & ((std::uint32_t{1} << offset) - 1)) continue;
    if (dom.target()[static_cast<std::size_t>(dom.target_of(idx))] != g.x()) continue;
    trip.push_back({cod.index(mask >> offset, 0), idx, 1});
  }
  return {dom.basis(), cod.basis(), SparseMatrix::from_triplets(cod.size(), dom.size(), std::move(trip))};
}

LinearMapQ pi_w_map(const GradedLieAlgebra& g) {
  const auto vs = g.v_indices();
  HomSpace dom(g, vs, 2, vs);
  HomSpace cod(g, vs, 2, w_indices(g));
  std::vector<Triplet> trip;
  for (int idx = 0; idx < dom.size(); ++idx) {
    const int tp = cod.target_pos(dom.target()[static_cast<std::size_t>(dom.target_of(idx))]);
    if (tp >= 0) trip.push_back({cod.index(dom.mask_of(idx), tp), idx, 1});
  }
  return {dom.basis(), cod.basis(), SparseMatrix::from_triplets(cod.size(), dom.size(), std::move(trip))};
}

// ---------------------------------------------------------- cochain complex

CochainComplex::CochainComplex(const GradedLieAlgebra& g, std::vector<int> subalgebra, int max_q) : g_(&g) {
  std::vector<int> all(static_cast<std::size_t>(g.dim()));
  for (int p = 0; p < g.dim(); ++p) all[static_cast<std::size_t>(p)] = p;
  for (int q = 0; q <= max_q; ++q) spaces_.emplace_back(g, subalgebra, q, all);

  const auto& L = subalgebra;
  std::vector<int> pos(static_cast<std::size_t>(g.dim()), -1);
  for (std::size_t s = 0; s < L.size(); ++s) pos[static_cast<std::size_t>(L[s])] = static_cast<int>(s);
  // Brackets inside the subalgebra: (a, b, l, c) with [u_a, u_b] = ... + c u_l.
  struct Pair {
    int a, b;
    mpq_class c;
  };
  std::vector<std::vector<Pair>> into(L.size());
  for (std::size_t a = 0; a < L.size(); ++a) {
    for (std::size_t b = a + 1; b < L.size(); ++b) {
      for (const auto& t : g.bracket(L[a], L[b])) {
        int l = pos[static_cast<std::size_t>(t.col)];
        if (l < 0) throw ShapeError("cochain source is not a subalgebra");
        into[static_cast<std::size_t>(l)].push_back({static_cast<int>(a), static_cast<int>(b), t.val});
      }
    }
  }

  for (int q = 0; q < max_q; ++q) {
    const HomSpace& dom = spaces_[static_cast<std::size_t>(q)];
    const HomSpace& cod = spaces_[static_cast<std::size_t>(q + 1)];
    std::vector<Triplet> trip;
    for (int idx = 0; idx < dom.size(); ++idx) {
      const auto mask = dom.mask_of(idx);
      const int j = dom.target()[static_cast<std::size_t>(dom.target_of(idx))];
      // sum_i (-1)^i [u_i, c(.. ^i ..)]
      for (std::size_t i = 0; i < L.size(); ++i) {
        if (mask >> i & 1U) continue;
        const std::uint32_t jm = mask | (std::uint32_t{1} << i);
        const int sgn = sign_of(popcount_below(jm, static_cast<int>(i)));
        for (const auto& t : g.bracket(L[i], j)) trip.push_back({cod.index(jm, cod.target_pos(t.col)), idx, t.val * sgn});
      }
      // sum_{i<j} (-1)^{i+j} c([u_i, u_j], ..)
      for (std::size_t l = 0; l < L.size(); ++l) {
        if (!(mask >> l & 1U)) continue;
        const std::uint32_t rest = mask & ~(std::uint32_t{1} << l);
        const int sl = popcount_below(mask, static_cast<int>(l));
        for (const auto& pr : into[l]) {
          if ((rest >> pr.a & 1U) || (rest >> pr.b & 1U)) continue;
          const std::uint32_t jm = rest | (std::uint32_t{1} << pr.a) | (std::uint32_t{1} << pr.b);
          const int sgn = sign_of(popcount_below(jm, pr.a) + popcount_below(jm, pr.b) + sl);
          trip.push_back({cod.index(jm, cod.target_pos(j)), idx, pr.c * sgn});
        }
      }
    }
    d_.push_back({dom.basis(), cod.basis(), SparseMatrix::from_triplets(cod.size(), dom.size(), std::move(trip))});
  }
}

namespace {

std::vector<mpq_class> pick(const std::vector<mpq_class>& v, const std::vector<int>& idx) {
  std::vector<mpq_class> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(v[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<mpq_class> inverted(std::vector<mpq_class> v) {
  for (auto& x : v) x = 1 / x;
  return v;
}

}  // namespace

LinearMapQ CochainComplex::codifferential(int q) const {
  const auto& d = differential(q);
  const auto& gl = cochains(q).gram();
  const auto& gh = cochains(q + 1).gram();
  return {d.codomain, d.domain, d.matrix.transpose().scaled(inverted(gl), gh)};
}

std::map<int, int> CochainComplex::cohomology_dims(int q, Exec exec) const {
  if (q >= max_q()) throw ShapeError("cohomology_dims needs q < max_q");
  std::map<int, int> out;
  const auto& basis = cochains(q).basis();
  for (int r : basis.degree_set()) {
    int n = static_cast<int>(basis.of_degree(r).size());
    n -= static_cast<int>(linalg::rank(differential(q).block(r), exec));
    if (q > 0) n -= static_cast<int>(linalg::rank(differential(q - 1).block(r), exec));
    out[r] = n;
  }
  return out;
}

SparseMatrix CochainComplex::laplacian(int q, int r) const {
  const auto here = cochains(q).basis().of_degree(r);
  const auto gq = pick(cochains(q).gram(), here);
  SparseMatrix lap(static_cast<int>(here.size()), static_cast<int>(here.size()));
  if (q < max_q()) {
    SparseMatrix b = differential(q).block(r);
    const auto up = cochains(q + 1).basis().of_degree(r);
    SparseMatrix bstar = b.transpose().scaled(inverted(gq), pick(cochains(q + 1).gram(), up));
    lap = lap + bstar * b;
  }
  if (q > 0) {
    SparseMatrix a = differential(q - 1).block(r);
    const auto down = cochains(q - 1).basis().of_degree(r);
    SparseMatrix astar = a.transpose().scaled(inverted(pick(cochains(q - 1).gram(), down)), gq);
    lap = lap + a * astar;
  }
  return lap;
}

std::map<int, int> CochainComplex::harmonic_dims(int q, Exec exec) const {
  std::map<int, int> out;
  for (int r : cochains(q).basis().degree_set()) {
    SparseMatrix lap = laplacian(q, r);
    out[r] = lap.cols() - static_cast<int>(linalg::rank(lap, exec));
  }
  return out;
}

std::vector<SparseRow> CochainComplex::harmonic_basis(int q, int r, Exec exec) const {
  const auto here = cochains(q).basis().of_degree(r);
  auto ker = linalg::kernel(laplacian(q, r), exec);
  for (auto& v : ker) {
    for (auto& e : v) e.col = here[static_cast<std::size_t>(e.col)];
  }
  return ker;
}

// ------------------------------------------------------- spectral sequence

int GradedDims::total() const {
  int t = 0;
  for (const auto& [r, d] : dims) t += d;
  return t;
}

int GradedDims::at(int r) const {
  auto it = dims.find(r);
  return it == dims.end() ? 0 : it->second;
}

namespace {

// Rows spanning the annihilator of the column space of `block`.
SparseMatrix annihilator(const SparseMatrix& block, Exec exec) {
  return linalg::rows_matrix(block.rows(), linalg::kernel(block.transpose(), exec));
}

int rank_of(const SparseMatrix& m, Exec exec) { return static_cast<int>(linalg::rank(m, exec)); }

// Block from domain degree r to codomain degree r + shift, with empty
// shapes when a degree is absent.
SparseMatrix blk(const LinearMapQ& map, int r, int shift = 0) { return map.block(r, shift); }

std::set<int> shifted(const std::vector<int>& v, int s) {
  std::set<int> out;
  for (int x : v) out.insert(x + s);
  return out;
}

}  // namespace

GradedDims spencer_kernel(const GradedLieAlgebra& g, int q, Exec exec) {
  auto sop = spencer(g, q);
  GradedDims out;
  for (int r : sop.domain.degree_set()) {
    SparseMatrix b = blk(sop, r);
    out.dims[r] = b.cols() - rank_of(b, exec);
  }
  return out;
}

EffectivePart effective_e02(const GradedLieAlgebra& g, Exec exec) {
  const auto vs = g.v_indices();
  HomSpace hom(g, vs, 2, vs);
  auto xact = hom_action(g, g.x(), hom);
  auto sop1 = spencer(g, 1);
  auto alpha = alpha_map(g);
  auto delta = delta_map(g, 1);
  std::vector<LinearMapQ> gl_actions;
  for (int i = 1; i <= g.m(); ++i) {
    for (int j = 1; j <= g.m(); ++j) gl_actions.push_back(hom_action(g, g.e(i, j), hom));
  }

  EffectivePart out;
  out.gl_submodule = true;
  const auto here_all = hom.basis();
  for (int s : here_all.degree_set()) {
    if (s <= 0) continue;
    SparseMatrix l1 = annihilator(blk(sop1, s - 1), exec);
    SparseMatrix l2 = annihilator(blk(delta, s), exec);
    SparseMatrix cond = SparseMatrix::vstack(l1 * blk(xact, s, -1), l2 * blk(alpha, s));
    auto sol = linalg::kernel(cond, exec);
    SparseMatrix bs = blk(sop1, s);
    const int rank_b = rank_of(bs, exec);
    out.dims.dims[s] = static_cast<int>(sol.size()) - rank_b;

    // The solution space must contain im Sop^1 in this degree.
    SparseMatrix sol_rows = linalg::rows_matrix(cond.cols(), sol);
    if (rank_of(SparseMatrix::vstack(sol_rows, bs.transpose()), exec) != static_cast<int>(sol.size())) {
      throw ConsistencyError("im Sop^1 is not contained in the effective solution space");
    }
    // Closed under gl(m).
    for (const auto& e : gl_actions) {
      SparseMatrix moved = blk(e, s) * sol_rows.transpose();
      if (!(cond * moved).is_zero()) out.gl_submodule = false;
    }
    // Representatives independent modulo im Sop^1.
    std::vector<SparseRow> span = bs.transpose().row_data();
    std::vector<SparseRow> reps;
    for (const auto& v : sol) {
      auto ech = linalg::echelon(linalg::rows_matrix(cond.cols(), span), exec);
      if (linalg::in_span(ech, v)) continue;
      span.push_back(v);
      reps.push_back(v);
    }
    const auto here = here_all.of_degree(s);
    for (auto& v : reps) {
      for (auto& e : v) e.col = here[static_cast<std::size_t>(e.col)];
    }
    out.representatives[s] = std::move(reps);
  }
  return out;
}

SerreHochschild serre_hochschild_check(const GradedLieAlgebra& g, Exec exec) {
  SerreHochschild out;
  CochainComplex cx(g, g.negative_part(), 3);
  out.h2_direct.dims = cx.cohomology_dims(2, exec);
  out.h2_harmonic.dims = cx.harmonic_dims(2, exec);

  const auto vs = g.v_indices();
  const auto red = g.reductive_indices();

  // E_2^{0,2}: Inv_x(Hom(L2V, V) / im Sop^1) + Inv_x ker Sop^2.
  {
    HomSpace hom(g, vs, 2, vs);
    auto xact = hom_action(g, g.x(), hom);
    auto sop1 = spencer(g, 1);
    for (int s : hom.basis().degree_set()) {
      SparseMatrix cond = annihilator(blk(sop1, s - 1), exec) * blk(xact, s, -1);
      out.e02_quotient.dims[s] = cond.cols() - rank_of(cond, exec) - rank_of(blk(sop1, s), exec);
    }
    HomSpace homa(g, vs, 2, red);
    auto xa = hom_action(g, g.x(), homa);
    auto sop2 = spencer(g, 2);
    for (int s : homa.basis().degree_set()) {
      SparseMatrix cond = SparseMatrix::vstack(blk(sop2, s), blk(xa, s, -1));
      out.e02_kernel.dims[s] = cond.cols() - rank_of(cond, exec);
    }
  }

  // E_2^{1,1} = H^1(Rx, M), M = Hom(V, V)/im Sop^0 + ker Sop^1; a cochain
  // x -> phi has degree deg(phi) + 1.
  {
    HomSpace end(g, vs, 1, vs);
    HomSpace homa(g, vs, 1, red);
    auto xv = hom_action(g, g.x(), end);
    auto yv = hom_action(g, g.y(), end);
    auto xa = hom_action(g, g.x(), homa);
    auto sop0 = spencer(g, 0);
    auto sop1 = spencer(g, 1);
    std::set<int> degs = shifted(end.basis().degree_set(), 1);
    for (int r : shifted(homa.basis().degree_set(), 1)) degs.insert(r);
    auto quotient_dim = [&](int s) {
      return static_cast<int>(end.basis().of_degree(s).size()) - rank_of(blk(sop0, s), exec);
    };
    auto ker1 = [&](int s) {
      SparseMatrix b = blk(sop1, s);
      return linalg::kernel(b, exec);
    };
    for (int r : degs) {
      const int s = r - 1;  // degree of phi
      // Quotient part: dim M_s - rank(x: M_{s+1} -> M_s).
      SparseMatrix b0 = blk(sop0, s);
      const int rank_x = rank_of(SparseMatrix::hstack(blk(xv, s + 1, -1), b0), exec) - rank_of(b0, exec);
      int dim = quotient_dim(s) - rank_x;
      // Kernel part.
      auto k_here = ker1(s);
      auto k_up = ker1(s + 1);
      SparseMatrix xk = blk(xa, s + 1, -1) * linalg::cols_matrix(blk(xa, s + 1, -1).cols(), k_up);
      dim += static_cast<int>(k_here.size()) - rank_of(xk, exec);
      out.e11.dims[r] = dim;
      // Inv_y(gl(V)/a) at phi-degree s.
      SparseMatrix cond = annihilator(blk(sop0, s + 1), exec) * blk(yv, s, 1);
      out.y_invariants.dims[r] = cond.cols() - rank_of(cond, exec) - rank_of(b0, exec);
    }
  }

  out.consistent = true;
  std::set<int> all;
  for (const auto* d : {&out.h2_direct, &out.h2_harmonic, &out.e02_quotient, &out.e02_kernel, &out.e11}) {
    for (const auto& [r, n] : d->dims) all.insert(r);
  }
  for (int r : all) {
    const int e2 = out.e02_quotient.at(r) + out.e02_kernel.at(r) + out.e11.at(r);
    if (out.h2_direct.at(r) != e2 || out.h2_harmonic.at(r) != out.h2_direct.at(r)) out.consistent = false;
  }
  return out;
}

AbelianIdealCheck abelian_ideal_check(const GradedLieAlgebra& g, int max_q, Exec exec) {
  AbelianIdealCheck out;
  CochainComplex cx(g, g.v_indices(), max_q + 1);
  out.consistent = true;
  for (int q = 0; q <= max_q; ++q) {
    GradedDims direct{cx.cohomology_dims(q, exec)};
    GradedDims formula;
    auto sop = spencer(g, q);
    std::optional<LinearMapQ> below;
    if (q > 0) below = spencer(g, q - 1);
    HomSpace hom(g, g.v_indices(), q, g.v_indices());
    std::set<int> degs;
    for (int r : hom.basis().degree_set()) degs.insert(r);
    for (int r : sop.domain.degree_set()) degs.insert(r);
    for (int r : degs) {
      SparseMatrix b = blk(sop, r);
      int dim = b.cols() - rank_of(b, exec) + static_cast<int>(hom.basis().of_degree(r).size());
      if (below) dim -= rank_of(blk(*below, r), exec);
      formula.dims[r] = dim;
    }
    for (const auto& [r, n] : formula.dims) {
      if (direct.at(r) != n) out.consistent = false;
    }
    for (const auto& [r, n] : direct.dims) {
      if (formula.at(r) != n) out.consistent = false;
    }
    out.direct.push_back(std::move(direct));
    out.formula.push_back(std::move(formula));
  }
  return out;
}

// ------------------------------------------------------------------ report

namespace {

void push_dims(nlohmann::json& entries, int q, const GradedDims& d, const char* source) {
  for (const auto& [r, n] : d.dims) {
    if (n != 0) entries.push_back({{"q", q}, {"degree", r}, {"dim", n}, {"source", source}});
  }
}

}  // namespace

nlohmann::json cohomology_report(int k, int m, Exec exec) {
  auto g = GradedLieAlgebra::build(k, m);
  auto sh = serre_hochschild_check(g, exec);
  nlohmann::json entries = nlohmann::json::array();
  push_dims(entries, 2, sh.h2_direct, "direct");
  push_dims(entries, 2, sh.e02_quotient, "E02");
  push_dims(entries, 2, sh.e02_kernel, "E02-ker-Sop2");
  push_dims(entries, 2, sh.e11, "E11");
  nlohmann::json j = {{"k", k}, {"m", m}, {"entries", entries}, {"consistent", sh.consistent}};
  if (m >= 2 && k >= 3) {
    auto eff = effective_e02(g, exec);
    push_dims(j["entries"], 2, eff.dims, "effective");
    j["effective_gl_submodule"] = eff.gl_submodule;
  }
  nlohmann::json yinv = nlohmann::json::object();
  for (const auto& [r, n] : sh.y_invariants.dims) {
    if (n != 0) yinv[std::to_string(r)] = n;
  }
  j["y_invariants"] = yinv;
  j["ker_sop1"] = spencer_kernel(g, 1, exec).total();
  auto k2 = spencer_kernel(g, 2, exec);
  j["ker_sop2"] = k2.total();
  nlohmann::json k2deg = nlohmann::json::object();
  for (const auto& [r, n] : k2.dims) {
    if (n != 0) k2deg[std::to_string(r)] = n;
  }
  j["ker_sop2_degrees"] = k2deg;
  return j;
}

}  // namespace odeinv
