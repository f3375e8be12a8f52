#include "qdesign/fqoracle.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

constexpr int kMaxTowerField = 1024;

using Poly = std::vector<int>;  // coefficients over F_p, low to high

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// (p, e) with q = p^e, or nullopt.
std::optional<std::pair<int, int>> split_prime_power(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return std::nullopt;
  return std::pair{p, e};
}

int ipow_int(int b, int e) {
  int out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a modulo monic b over F_p
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly decode(int index, int p, int len) {
  Poly out(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    out[static_cast<std::size_t>(i)] = index % p;
    index /= p;
  }
  return out;
}

int encode(const Poly& a, int p) {
  int out = 0;
  for (std::size_t i = a.size(); i-- > 0;) out = out * p + a[i];
  return out;
}

bool irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    // every monic polynomial of degree d
    for (int n = 0; n < ipow_int(p, d); ++n) {
      Poly g = decode(n, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(int p, int e) {
  // lexicographic in (c_0, ..., c_{e-1}): c_0 is the most significant digit
  for (int n = 0; n < ipow_int(p, e); ++n) {
    Poly f(static_cast<std::size_t>(e) + 1);
    int rest = n;
    for (int i = e - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = rest % p;
      rest /= p;
    }
    f[static_cast<std::size_t>(e)] = 1;
    if (f[0] != 0 && irreducible(f, p)) return f;
  }
  throw InvariantViolation("no irreducible polynomial of degree " + std::to_string(e));
}

// Gaussian elimination to reduced row echelon form; returns the rank and
// leaves the nonzero rows first.
int rref(const FiniteField& f, int v, std::vector<std::uint8_t>& m) {
  const int n = static_cast<int>(m.size()) / std::max(v, 1);
  auto at = [&](int r, int c) -> std::uint8_t& { return m[static_cast<std::size_t>(r * v + c)]; };
  int rank = 0;
  for (int c = 0; c < v && rank < n; ++c) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < v; ++j) std::swap(at(pivot, j), at(rank, j));
    }
    const auto inv = f.inv(at(rank, c));
    for (int j = 0; j < v; ++j) at(rank, j) = static_cast<std::uint8_t>(f.mul(at(rank, j), inv));
    for (int r = 0; r < n; ++r) {
      if (r == rank || at(r, c) == 0) continue;
      const auto factor = at(r, c);
      for (int j = 0; j < v; ++j) {
        at(r, j) = static_cast<std::uint8_t>(f.sub(at(r, j), f.mul(factor, at(rank, j))));
      }
    }
    ++rank;
  }
  return rank;
}

int rank_of(const FiniteField& f, int v, std::vector<std::uint8_t> m) { return rref(f, v, m); }

void require_same_ambient(const SubspaceMatrix& a, const SubspaceMatrix& b) {
  if (a.q != b.q || a.v != b.v) throw std::invalid_argument("subspaces live in different ambient spaces");
}

std::vector<std::uint8_t> stacked(const SubspaceMatrix& a, const SubspaceMatrix& b) {
  std::vector<std::uint8_t> m = a.rows;
  m.insert(m.end(), b.rows.begin(), b.rows.end());
  return m;
}

BigInt subspace_count(int q, int v, int d) { return QMode::numeric(q).gauss(v, d).integer(); }

void check_guard(const BigInt& n, std::uint64_t limit, const std::string& what) {
  if (n > limit) {
    throw GuardExceeded(what + " count " + n.str() + " exceeds the guard " + std::to_string(limit));
  }
}

// Visits every l-subset of blocks with the running intersection.
void for_each_tuple_meet(const DesignInstance& d, int order,
                         const std::function<void(const SubspaceMatrix&)>& visit) {
  const FiniteField& f = *d.field;
  std::function<void(std::size_t, int, const SubspaceMatrix&)> rec = [&](std::size_t start, int left,
                                                                          const SubspaceMatrix& meet) {
    if (left == 0) {
      visit(meet);
      return;
    }
    for (std::size_t b = start; b + static_cast<std::size_t>(left) <= d.blocks.size(); ++b) {
      rec(b + 1, left - 1, subspace_meet(f, meet, d.blocks[b]));
    }
  };
  SubspaceMatrix full = canonical_span(f, d.v, [&] {
    std::vector<std::uint8_t> id(static_cast<std::size_t>(d.v * d.v), 0);
    for (int i = 0; i < d.v; ++i) id[static_cast<std::size_t>(i * d.v + i)] = 1;
    return id;
  }());
  rec(0, order, full);
}

void check_tuple_guard(const DesignInstance& d, int order, const OracleGuards& guards) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  check_guard(binomial(BigInt(d.blocks.size()), order), guards.max_block_tuples, "block tuple");
}

}  // namespace

// ---------------------------------------------------------------------------

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  return inv_[a];
}

FiniteField::Elem FiniteField::primitive() const {
  for (int g = 1; g < q_; ++g) {
    int order = 1;
    auto x = static_cast<Elem>(g);
    while (x != 1) {
      x = mul(x, static_cast<Elem>(g));
      ++order;
    }
    if (order == q_ - 1) return static_cast<Elem>(g);
  }
  throw InvariantViolation("field without primitive element");
}

FiniteField FiniteField::build(int p, int e) {
  if (!is_prime(p) || e < 1) throw std::invalid_argument("field characteristic must be prime and degree positive");
  FiniteField f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = ipow_int(p, e);
  if (f.q_ > kMaxTowerField) throw std::invalid_argument("field too large: " + std::to_string(f.q_));
  f.modulus_ = e == 1 ? Poly{0, 1} : smallest_irreducible(p, e);
  const auto q = static_cast<std::size_t>(f.q_);
  f.add_.resize(q * q);
  f.mul_.resize(q * q);
  f.neg_.resize(q);
  f.inv_.assign(q, 0);
  for (int a = 0; a < f.q_; ++a) {
    const Poly pa = decode(a, p, e);
    Poly na(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) na[i] = (p - pa[i]) % p;
    f.neg_[static_cast<std::size_t>(a)] = static_cast<Elem>(encode(na, p));
    for (int b = 0; b < f.q_; ++b) {
      const Poly pb = decode(b, p, e);
      Poly sum(pa.size());
      for (std::size_t i = 0; i < pa.size(); ++i) sum[i] = (pa[i] + pb[i]) % p;
      Poly prod(pa.size() + pb.size(), 0);
      for (std::size_t i = 0; i < pa.size(); ++i) {
        for (std::size_t j = 0; j < pb.size(); ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
      }
      prod = e == 1 ? Poly{(pa[0] * pb[0]) % p} : poly_mod(prod, f.modulus_, p);
      prod.resize(static_cast<std::size_t>(e), 0);
      f.add_[f.idx(static_cast<Elem>(a), static_cast<Elem>(b))] = static_cast<Elem>(encode(sum, p));
      f.mul_[f.idx(static_cast<Elem>(a), static_cast<Elem>(b))] = static_cast<Elem>(encode(prod, p));
    }
  }
  for (int a = 1; a < f.q_; ++a) {
    for (int b = 1; b < f.q_; ++b) {
      if (f.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == 1) {
        f.inv_[static_cast<std::size_t>(a)] = static_cast<Elem>(b);
        break;
      }
    }
  }
  return f;
}

FiniteField make_field(int q0) {
  const auto pe = split_prime_power(q0);
  if (!pe) throw std::invalid_argument("q = " + std::to_string(q0) + " is not a prime power");
  if (q0 > 16) throw std::invalid_argument("q = " + std::to_string(q0) + " exceeds the oracle limit 16");
  return FiniteField::build(pe->first, pe->second);
}

std::shared_ptr<const FiniteField> shared_field(int q0) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[q0];
  if (!slot) slot = std::make_shared<const FiniteField>(make_field(q0));
  return slot;
}

// ---------------------------------------------------------------------------

std::vector<int> SubspaceMatrix::pivots() const {
  std::vector<int> out;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < v; ++c) {
      if (at(r, c) != 0) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

std::string SubspaceMatrix::str() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (int r = 0; r < d; ++r) {
    if (r > 0) out += '|';
    for (int c = 0; c < v; ++c) out += kDigits[at(r, c)];
  }
  return out;
}

SubspaceMatrix canonical_span(const FiniteField& f, int v, std::vector<std::uint8_t> generators) {
  if (v < 0 || (v > 0 && generators.size() % static_cast<std::size_t>(v) != 0)) {
    throw std::invalid_argument("generator matrix size is not a multiple of v");
  }
  for (auto x : generators) {
    if (x >= f.q()) throw std::invalid_argument("matrix entry outside the field");
  }
  const int rank = v == 0 ? 0 : rref(f, v, generators);
  generators.resize(static_cast<std::size_t>(rank * v));
  return {f.q(), v, rank, std::move(generators)};
}

void for_each_subspace(const FiniteField& f, int v, int d, const std::function<void(const SubspaceMatrix&)>& visit,
                       const OracleGuards& guards) {
  if (v < 0 || d < 0 || d > v) throw std::invalid_argument("subspace dimension outside 0..v");
  check_guard(subspace_count(f.q(), v, d), guards.max_subspaces, "subspace");
  const int q = f.q();
  std::vector<int> piv(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) piv[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(v), false);
    for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::size_t> free_slots;
    SubspaceMatrix m{q, v, d, std::vector<std::uint8_t>(static_cast<std::size_t>(d * v), 0)};
    for (int r = 0; r < d; ++r) {
      const int pr = piv[static_cast<std::size_t>(r)];
      m.rows[static_cast<std::size_t>(r * v + pr)] = 1;
      for (int c = pr + 1; c < v; ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) free_slots.push_back(static_cast<std::size_t>(r * v + c));
      }
    }
    // odometer over the free entries, first slot most significant
    while (true) {
      visit(m);
      std::size_t pos = free_slots.size();
      while (pos > 0) {
        auto& x = m.rows[free_slots[pos - 1]];
        if (x + 1 < q) {
          ++x;
          break;
        }
        x = 0;
        --pos;
      }
      if (pos == 0) break;
    }
    // next pivot set in lexicographic order
    int i = d - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == v - d + i) --i;
    if (i < 0) break;
    ++piv[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j) piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j) - 1] + 1;
  }
}

std::vector<SubspaceMatrix> enumerate_subspaces(const FiniteField& f, int v, int d, const OracleGuards& guards) {
  std::vector<SubspaceMatrix> out;
  for_each_subspace(f, v, d, [&](const SubspaceMatrix& m) { out.push_back(m); }, guards);
  return out;
}

int intersection_dim(const FiniteField& f, const SubspaceMatrix& a, const SubspaceMatrix& b) {
  require_same_ambient(a, b);
  return a.d + b.d - rank_of(f, a.v, stacked(a, b));
}

SubspaceMatrix subspace_sum(const FiniteField& f, const SubspaceMatrix& a, const SubspaceMatrix& b) {
  require_same_ambient(a, b);
  return canonical_span(f, a.v, stacked(a, b));
}

SubspaceMatrix orthogonal_complement(const FiniteField& f, const SubspaceMatrix& a) {
  const auto piv = a.pivots();
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.v), false);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::uint8_t> gens;
  for (int c = 0; c < a.v; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    std::vector<std::uint8_t> x(static_cast<std::size_t>(a.v), 0);
    x[static_cast<std::size_t>(c)] = 1;
    for (int r = 0; r < a.d; ++r) {
      x[static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = static_cast<std::uint8_t>(f.neg(a.at(r, c)));
    }
    gens.insert(gens.end(), x.begin(), x.end());
  }
  return canonical_span(f, a.v, std::move(gens));
}

SubspaceMatrix subspace_meet(const FiniteField& f, const SubspaceMatrix& a, const SubspaceMatrix& b) {
  require_same_ambient(a, b);
  return orthogonal_complement(f, subspace_sum(f, orthogonal_complement(f, a), orthogonal_complement(f, b)));
}

// ---------------------------------------------------------------------------

DesignInstance make_design(int q0, int v, int k, std::vector<SubspaceMatrix> blocks) {
  if (k < 0 || k > v) throw std::invalid_argument("design needs 0 <= k <= v");
  if (blocks.empty()) throw std::invalid_argument("design has no blocks");
  for (const auto& b : blocks) {
    if (b.q != q0 || b.v != v) throw std::invalid_argument("block lives in a different ambient space");
    if (b.d != k) throw std::invalid_argument("block of dimension " + std::to_string(b.d) + ", expected k=" + std::to_string(k));
  }
  std::sort(blocks.begin(), blocks.end());
  if (std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end()) {
    throw std::invalid_argument("duplicate block");
  }
  return {shared_field(q0), v, k, std::move(blocks)};
}

DesignInstance trivial_design(int q0, int v, int k, const OracleGuards& guards) {
  auto field = shared_field(q0);
  return make_design(q0, v, k, enumerate_subspaces(*field, v, k, guards));
}

DesignInstance spread_construct(int q0, int v, int k) {
  if (k < 1 || v < 1 || v % k != 0) throw std::invalid_argument("a spread needs k | v");
  const auto small = shared_field(q0);
  const int big_q = ipow_int(q0, k);
  if (!(big_q <= 16 || is_prime(q0)) || big_q > kMaxTowerField) {
    throw std::invalid_argument("spread extension field GF(" + std::to_string(q0) + "^" + std::to_string(k) +
                                ") is outside the supported range");
  }
  const FiniteField big = FiniteField::build(small->p(), small->e() * k);
  using Elem = FiniteField::Elem;

  // GF(q0) -> GF(q0^k): send x to a root of the small modulus
  std::vector<Elem> embed(static_cast<std::size_t>(q0));
  if (small->e() == 1) {
    for (int a = 0; a < q0; ++a) embed[static_cast<std::size_t>(a)] = static_cast<Elem>(a);
  } else {
    const auto& mod = small->modulus();
    std::optional<Elem> root;
    for (int x = 0; x < big.q() && !root; ++x) {
      Elem acc = 0;
      Elem power = 1;
      for (int c : mod) {
        acc = big.add(acc, big.mul(static_cast<Elem>(c), power));
        power = big.mul(power, static_cast<Elem>(x));
      }
      if (acc == 0) root = static_cast<Elem>(x);
    }
    if (!root) throw InvariantViolation("subfield modulus has no root in the extension");
    for (int a = 0; a < q0; ++a) {
      const Poly digits = decode(a, small->p(), small->e());
      Elem acc = 0;
      Elem power = 1;
      for (int c : digits) {
        acc = big.add(acc, big.mul(static_cast<Elem>(c), power));
        power = big.mul(power, *root);
      }
      embed[static_cast<std::size_t>(a)] = acc;
    }
  }

  // coordinates over the basis 1, w, ..., w^{k-1}
  const Elem w = big.primitive();
  std::vector<Elem> basis{1};
  for (int i = 1; i < k; ++i) basis.push_back(big.mul(basis.back(), w));
  std::vector<std::vector<std::uint8_t>> coords(static_cast<std::size_t>(big.q()));
  for (int n = 0; n < big.q(); ++n) {
    std::vector<std::uint8_t> a(static_cast<std::size_t>(k));
    int rest = n;
    Elem value = 0;
    for (int i = 0; i < k; ++i) {
      a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rest % q0);
      rest /= q0;
      value = big.add(value, big.mul(embed[a[static_cast<std::size_t>(i)]], basis[static_cast<std::size_t>(i)]));
    }
    if (!coords[value].empty()) throw InvariantViolation("spread basis is not independent");
    coords[value] = std::move(a);
  }

  const int m = v / k;
  std::vector<SubspaceMatrix> blocks;
  std::vector<Elem> x(static_cast<std::size_t>(m));
  for (int lead = 0; lead < m; ++lead) {
    // normalized points: zeros before lead, 1 at lead, anything after
    const int tail = m - 1 - lead;
    const int count = ipow_int(big.q(), tail);
    for (int n = 0; n < count; ++n) {
      std::fill(x.begin(), x.end(), Elem{0});
      x[static_cast<std::size_t>(lead)] = 1;
      int rest = n;
      for (int c = lead + 1; c < m; ++c) {
        x[static_cast<std::size_t>(c)] = static_cast<Elem>(rest % big.q());
        rest /= big.q();
      }
      std::vector<std::uint8_t> gens;
      for (int i = 0; i < k; ++i) {
        for (int c = 0; c < m; ++c) {
          const auto& cc = coords[big.mul(basis[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(c)])];
          gens.insert(gens.end(), cc.begin(), cc.end());
        }
      }
      SubspaceMatrix block = canonical_span(*small, v, std::move(gens));
      if (block.d != k) throw InvariantViolation("spread element has rank " + std::to_string(block.d));
      blocks.push_back(std::move(block));
    }
  }
  return make_design(q0, v, k, std::move(blocks));
}

DesignInstance dual_design(const DesignInstance& d) {
  std::vector<SubspaceMatrix> blocks;
  blocks.reserve(d.blocks.size());
  for (const auto& b : d.blocks) blocks.push_back(orthogonal_complement(*d.field, b));
  return make_design(d.q(), d.v, d.v - d.k, std::move(blocks));
}

// ---------------------------------------------------------------------------

VerifyReport verify_design(const DesignInstance& d, int t, const OracleGuards& guards) {
  if (t < 0 || t > d.k) throw std::invalid_argument("t must satisfy 0 <= t <= k");
  VerifyReport report;
  std::optional<std::pair<SubspaceMatrix, std::uint64_t>> first;
  for_each_subspace(
      *d.field, d.v, t,
      [&](const SubspaceMatrix& ts) {
        if (report.counterexample) return;
        std::uint64_t count = 0;
        for (const auto& b : d.blocks) {
          if (intersection_dim(*d.field, ts, b) == t) ++count;
        }
        if (!first) {
          first.emplace(ts, count);
        } else if (first->second != count) {
          report.counterexample = VerifyReport::Counterexample{first->first, first->second, ts, count};
        }
      },
      guards);
  report.is_design = !report.counterexample;
  if (report.is_design) report.lambda = first->second;
  return report;
}

IntersectionVector measure_alpha(const DesignInstance& d, const SubspaceMatrix& s, int order,
                                 const OracleGuards& guards) {
  if (s.q != d.q() || s.v != d.v) throw std::invalid_argument("S lives in a different ambient space");
  check_tuple_guard(d, order, guards);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(d.k) + 1, 0);
  if (order == 1) {
    for (const auto& b : d.blocks) ++hist[static_cast<std::size_t>(intersection_dim(*d.field, b, s))];
  } else {
    for_each_tuple_meet(d, order, [&](const SubspaceMatrix& meet) {
      ++hist[static_cast<std::size_t>(intersection_dim(*d.field, meet, s))];
    });
  }
  IntersectionVector out;
  out.s = s.d;
  out.order = order;
  for (auto h : hist) out.alphas.emplace_back(BigInt(h));
  return out;
}

std::uint64_t measure_lambda_ij(const DesignInstance& d, int t, int i, int j, int order,
                                const LambdaIJOptions& options) {
  if (i < 0 || j < 0 || i + j > t || t > d.k) throw std::invalid_argument("lambda_ij needs i + j <= t <= k");
  check_tuple_guard(d, order, options.guards);
  const FiniteField& f = *d.field;

  auto count_for = [&](const SubspaceMatrix& ii, const SubspaceMatrix& jj) {
    std::uint64_t n = 0;
    auto test = [&](const SubspaceMatrix& x) {
      if (intersection_dim(f, ii, x) == i && intersection_dim(f, x, jj) == 0) ++n;
    };
    if (order == 1) {
      for (const auto& b : d.blocks) test(b);
    } else {
      for_each_tuple_meet(d, order, test);
    }
    return n;
  };

  std::optional<std::uint64_t> common;
  auto record = [&](const SubspaceMatrix& ii, const SubspaceMatrix& jj) {
    const auto n = count_for(ii, jj);
    if (common && *common != n) {
      throw InvariantViolation("lambda_" + std::to_string(i) + "," + std::to_string(j) +
                               " independence violated: counts " + std::to_string(*common) + " and " +
                               std::to_string(n));
    }
    common = n;
  };

  if (options.exhaustive) {
    const auto is = enumerate_subspaces(f, d.v, i, options.guards);
    const auto js = enumerate_subspaces(f, d.v, j, options.guards);
    for (const auto& ii : is) {
      for (const auto& jj : js) {
        if (intersection_dim(f, ii, jj) == 0) record(ii, jj);
      }
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> digit(0, f.q() - 1);
    for (int sample = 0; sample < options.samples; ++sample) {
      std::vector<std::uint8_t> gens;
      do {
        gens.assign(static_cast<std::size_t>((i + j) * d.v), 0);
        for (auto& x : gens) x = static_cast<std::uint8_t>(digit(rng));
      } while (rank_of(f, d.v, gens) != i + j);
      const auto split = gens.begin() + static_cast<std::ptrdiff_t>(i * d.v);
      record(canonical_span(f, d.v, {gens.begin(), split}), canonical_span(f, d.v, {split, gens.end()}));
    }
  }
  if (!common) throw std::logic_error("no (I, J) pair examined");
  return *common;
}

// ---------------------------------------------------------------------------

DesignInstance parse_design(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<std::array<int, 3>> header;
  std::vector<SubspaceMatrix> blocks;
  std::shared_ptr<const FiniteField> field;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!header) {
      std::istringstream hs(line);
      int q = 0;
      int v = 0;
      int k = 0;
      std::string extra;
      if (!(hs >> q >> v >> k) || (hs >> extra) || v < 1 || k < 1 || k > v) {
        throw std::invalid_argument(where + "malformed header, expected \"q v k\"");
      }
      field = shared_field(q);
      header = std::array{q, v, k};
      continue;
    }
    const auto [q, v, k] = *header;
    std::string digits = line.substr(first);
    while (!digits.empty() && (digits.back() == ' ' || digits.back() == '\t')) digits.pop_back();
    if (digits.size() != static_cast<std::size_t>(k * v)) {
      throw std::invalid_argument(where + "expected " + std::to_string(k * v) + " digits, found " +
                                  std::to_string(digits.size()));
    }
    std::vector<std::uint8_t> gens;
    for (char ch : digits) {
      int value = -1;
      if (ch >= '0' && ch <= '9') value = ch - '0';
      if (ch >= 'a' && ch <= 'f') value = ch - 'a' + 10;
      if (ch >= 'A' && ch <= 'F') value = ch - 'A' + 10;
      if (value < 0 || value >= q) throw std::invalid_argument(where + "digit '" + std::string(1, ch) + "' out of alphabet");
      gens.push_back(static_cast<std::uint8_t>(value));
    }
    SubspaceMatrix block = canonical_span(*field, v, std::move(gens));
    if (block.d != k) throw std::invalid_argument(where + "rank deficient block");
    blocks.push_back(std::move(block));
  }
  if (!header) throw std::invalid_argument("malformed header: file is empty");
  return make_design((*header)[0], (*header)[1], (*header)[2], std::move(blocks));
}

std::string format_design(const DesignInstance& d) {
  std::string out = std::to_string(d.q()) + " " + std::to_string(d.v) + " " + std::to_string(d.k) + "\n";
  for (const auto& b : d.blocks) {
    std::string row = b.str();
    std::erase(row, '|');
    out += row + "\n";
  }
  return out;
}

DesignInstance load_design(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_design(buf.str());
}

void save_design(const DesignInstance& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_design(d);
}

}  // namespace qdesign
