#include "ccmm/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace ccmm {

// ---------------------------------------------------------------------------
// IntersectionTensor

IntersectionTensor::IntersectionTensor(std::uint32_t rank, std::vector<ClassId> star,
                                       std::vector<std::uint64_t> sizes,
                                       std::vector<IntersectionEntry> entries)
    : rank_(rank), star_(std::move(star)), sizes_(std::move(sizes)), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  row_start_.assign(rank_ + 1, 0);
  for (const auto& e : entries_) ++row_start_[e.i + 1];
  std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
}

std::span<const IntersectionEntry> IntersectionTensor::row(ClassId i) const {
  return {entries_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
}

std::span<const IntersectionEntry> IntersectionTensor::slice(ClassId i, ClassId j) const {
  const auto r = row(i);
  const auto lo = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, ClassId v) { return e.j < v; });
  const auto hi = std::upper_bound(lo, r.end(), j, [](ClassId v, const auto& e) { return v < e.j; });
  return {&*lo, static_cast<std::size_t>(hi - lo)};
}

std::uint64_t IntersectionTensor::p(ClassId i, ClassId j, ClassId k) const {
  const auto s = slice(i, j);
  const auto it = std::lower_bound(s.begin(), s.end(), k, [](const auto& e, ClassId v) { return e.k < v; });
  return it != s.end() && it->k == k ? it->p : 0;
}

IntersectionTensor IntersectionTensor::permuted(std::span<const ClassId> perm) const {
  std::vector<ClassId> star(rank_);
  std::vector<std::uint64_t> sizes(rank_);
  for (ClassId c = 0; c < rank_; ++c) {
    star[perm[c]] = perm[star_[c]];
    sizes[perm[c]] = sizes_[c];
  }
  std::vector<IntersectionEntry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) entries.push_back({perm[e.i], perm[e.j], perm[e.k], e.p});
  return IntersectionTensor(rank_, std::move(star), std::move(sizes), std::move(entries));
}

bool IntersectionTensor::operator==(const IntersectionTensor& o) const {
  if (rank_ != o.rank_ || star_ != o.star_ || sizes_ != o.sizes_ || entries_.size() != o.entries_.size())
    return false;
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    const auto &a = entries_[t], &b = o.entries_[t];
    if (a.i != b.i || a.j != b.j || a.k != b.k || a.p != b.p) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Axiom sweep

namespace {

std::string pair_str(Point x, Point y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

// Open-addressing multiset of (i,j) codes for one representative pair.
class CodeTable {
 public:
  void reset(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    keys_.assign(cap, kEmpty);
    counts_.assign(cap, 0);
    scratch_.assign(cap, 0);
    mask_ = cap - 1;
  }
  void add(std::uint64_t code) {
    std::size_t s = find(code);
    if (keys_[s] == kEmpty) keys_[s] = code;
    ++counts_[s];
  }
  std::size_t find(std::uint64_t code) const {
    std::size_t s = (code * 0x9E3779B97F4A7C15ull) >> 20 & mask_;
    while (keys_[s] != kEmpty && keys_[s] != code) s = (s + 1) & mask_;
    return s;
  }
  bool present(std::size_t slot) const { return keys_[slot] != kEmpty; }
  std::uint32_t count(std::size_t slot) const { return counts_[slot]; }
  std::uint32_t& scratch(std::size_t slot) { return scratch_[slot]; }
  std::uint64_t key(std::size_t slot) const { return keys_[slot]; }
  std::size_t capacity() const { return keys_.size(); }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> scratch_;
  std::size_t mask_ = 0;
};

struct Sweep {
  AxiomReport report;
  std::vector<ClassId> star;
  std::vector<std::uint64_t> sizes;
  std::vector<std::pair<Point, Point>> reps;
  std::vector<IntersectionEntry> entries;
};

Sweep sweep(std::uint32_t n, std::uint32_t r, std::span<const ClassId> m, VerifyMode mode,
            bool want_tensor) {
  Sweep out;
  auto fail = [&](int axiom, std::string detail) {
    out.report.verdict = Verdict::fail;
    out.report.axiom = axiom;
    out.report.detail = std::move(detail);
    return out;
  };
  if (n == 0 || r == 0) return fail(0, "points and classes must be positive");
  if (m.size() != std::size_t{n} * n) return fail(0, "class matrix must have n*n entries");
  const std::size_t nn = std::size_t{n} * n;

  out.sizes.assign(r, 0);
  out.reps.assign(r, {0, 0});
  for (std::size_t pos = 0; pos < nn; ++pos) {
    const ClassId c = m[pos];
    if (c >= r) return fail(0, "class id " + std::to_string(c) + " out of range at " +
                                   pair_str(Point(pos / n), Point(pos % n)));
    if (out.sizes[c]++ == 0) out.reps[c] = {Point(pos / n), Point(pos % n)};
  }
  for (ClassId c = 0; c < r; ++c)
    if (out.sizes[c] == 0) return fail(0, "class id " + std::to_string(c) + " is unused");

  // Axiom (1).
  std::vector<char> on_diag(r, 0);
  for (Point x = 0; x < n; ++x) on_diag[m[std::size_t{x} * n + x]] = 1;
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      const ClassId c = m[std::size_t{x} * n + y];
      if (x != y && on_diag[c]) {
        Point d = 0;
        while (m[std::size_t{d} * n + d] != c) ++d;
        return fail(1, "class " + std::to_string(c) + " contains diagonal pair " + pair_str(d, d) +
                           " and off-diagonal pair " + pair_str(x, y));
      }
    }

  // Axiom (2).
  out.star.assign(r, 0);
  for (ClassId c = 0; c < r; ++c) {
    const auto [x, y] = out.reps[c];
    out.star[c] = m[std::size_t{y} * n + x];
  }
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      const ClassId c = m[std::size_t{x} * n + y];
      const ClassId t = m[std::size_t{y} * n + x];
      if (t != out.star[c]) {
        const auto [x0, y0] = out.reps[c];
        return fail(2, "pairs " + pair_str(x0, y0) + " and " + pair_str(x, y) + " share class " +
                           std::to_string(c) + " but their transposes lie in classes " +
                           std::to_string(out.star[c]) + " and " + std::to_string(t));
      }
    }

  // Axiom (3): compare the (class(x,z), class(z,y)) multiset of every pair in
  // class k with that of the representative.
  std::vector<ClassId> transposed(nn);
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) transposed[std::size_t{y} * n + x] = m[std::size_t{x} * n + y];

  std::vector<std::size_t> start(r + 1, 0);
  for (ClassId c = 0; c < r; ++c) start[c + 1] = start[c] + out.sizes[c];
  std::vector<std::uint64_t> members(nn);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t pos = 0; pos < nn; ++pos) members[fill[m[pos]]++] = pos;
  }

  const bool full = mode == VerifyMode::full;
  CodeTable table;
  std::vector<std::size_t> touched;
  for (ClassId k = 0; k < r; ++k) {
    const auto [x0, y0] = out.reps[k];
    const ClassId* row0 = m.data() + std::size_t{x0} * n;
    const ClassId* col0 = transposed.data() + std::size_t{y0} * n;
    table.reset(n);
    for (Point z = 0; z < n; ++z) table.add(std::uint64_t{row0[z]} * r + col0[z]);
    if (want_tensor)
      for (std::size_t s = 0; s < table.capacity(); ++s)
        if (table.present(s))
          out.entries.push_back({ClassId(table.key(s) / r), ClassId(table.key(s) % r), k, table.count(s)});

    if (mode == VerifyMode::trusted) continue;
    const std::size_t count = start[k + 1] - start[k];
    std::size_t stride = 1;
    if (!full && count > 4) stride = count / 3;
    for (std::size_t t = start[k] + 1; t < start[k + 1]; t += stride) {
      const std::uint64_t pos = members[t];
      const Point x = Point(pos / n), y = Point(pos % n);
      const ClassId* row = m.data() + std::size_t{x} * n;
      const ClassId* col = transposed.data() + std::size_t{y} * n;
      touched.clear();
      std::optional<std::uint64_t> bad;
      for (Point z = 0; z < n; ++z) {
        const std::uint64_t code = std::uint64_t{row[z]} * r + col[z];
        const std::size_t s = table.find(code);
        if (!table.present(s)) {
          bad = code;
          break;
        }
        if (table.scratch(s)++ == 0) touched.push_back(s);
        if (table.scratch(s) > table.count(s)) {
          bad = code;
          break;
        }
      }
      for (std::size_t s : touched) table.scratch(s) = 0;
      if (bad) {
        const ClassId i = ClassId(*bad / r), j = ClassId(*bad % r);
        std::uint64_t c0 = 0, c1 = 0;
        for (Point z = 0; z < n; ++z) {
          c0 += row0[z] == i && col0[z] == j;
          c1 += row[z] == i && col[z] == j;
        }
        return fail(3, "pairs " + pair_str(x0, y0) + " and " + pair_str(x, y) + " of class " +
                           std::to_string(k) + " have " + std::to_string(c0) + " and " +
                           std::to_string(c1) + " intermediate points z for (i,j)=(" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  out.report.verdict = full ? Verdict::pass : Verdict::unchecked;
  out.report.axiom = -1;
  out.report.detail = full ? "axioms (1)-(3) hold"
                           : "axioms (1),(2) hold; axiom (3) not fully swept";
  return out;
}

}  // namespace

AxiomReport check_axioms(std::uint32_t n, std::uint32_t r, std::span<const ClassId> matrix,
                         VerifyMode mode) {
  return sweep(n, r, matrix, mode, false).report;
}

std::vector<ClassId> normalize_labels(std::uint32_t n, std::uint32_t r, std::span<const ClassId> m,
                                      std::vector<ClassId>* old_to_new) {
  std::vector<ClassId> map(r, UINT32_MAX);
  ClassId next = 0;
  for (Point x = 0; x < n; ++x) {
    ClassId& c = map[m[std::size_t{x} * n + x]];
    if (c == UINT32_MAX) c = next++;
  }
  for (std::size_t pos = 0; pos < m.size(); ++pos) {
    ClassId& c = map[m[pos]];
    if (c == UINT32_MAX) c = next++;
  }
  std::vector<ClassId> out(m.size());
  for (std::size_t pos = 0; pos < m.size(); ++pos) out[pos] = map[m[pos]];
  if (old_to_new) *old_to_new = std::move(map);
  return out;
}

CoherentConfiguration CoherentConfiguration::from_class_matrix(std::uint32_t n, std::uint32_t r,
                                                               std::vector<ClassId> matrix,
                                                               VerifyMode mode) {
  Sweep s = sweep(n, r, matrix, mode, true);
  if (s.report.verdict == Verdict::fail) {
    if (s.report.axiom == 0) throw std::invalid_argument("malformed class matrix: " + s.report.detail);
    throw AxiomViolation(s.report.axiom, s.report.detail);
  }
  std::vector<ClassId> perm;
  CoherentConfiguration c;
  c.n_ = n;
  c.r_ = r;
  c.matrix_ = normalize_labels(n, r, matrix, &perm);
  c.tensor_ = IntersectionTensor(r, std::move(s.star), std::move(s.sizes), std::move(s.entries)).permuted(perm);
  c.reps_.assign(r, {0, 0});
  for (ClassId old = 0; old < r; ++old) c.reps_[perm[old]] = s.reps[old];
  c.axiom3_ = s.report.verdict;
  return c;
}

bool CoherentConfiguration::is_commutative() const {
  for (const auto& e : tensor_.entries())
    if (tensor_.p(e.j, e.i, e.k) != e.p) return false;
  return true;
}

bool CoherentConfiguration::is_symmetric() const {
  for (ClassId i = 0; i < r_; ++i)
    if (tensor_.star(i) != i) return false;
  return true;
}

bool CoherentConfiguration::is_fiber(ClassId i) const {
  const auto [x, y] = reps_[i];
  return x == y;
}

bool CoherentConfiguration::is_association_scheme() const {
  return r_ == 1 ? n_ == 1 : !is_fiber(1);
}

FiberSet CoherentConfiguration::fibers() const {
  FiberSet f;
  for (ClassId i = 0; i < r_ && is_fiber(i); ++i) f.classes.push_back(i);
  f.cells.resize(f.classes.size());
  f.fiber_of.resize(n_);
  for (Point x = 0; x < n_; ++x) {
    f.fiber_of[x] = cls(x, x);  // fibers are numbered 0..f-1 after normalization
    f.cells[f.fiber_of[x]].push_back(x);
  }
  return f;
}

std::vector<std::uint8_t> CoherentConfiguration::adjacency_matrix(ClassId i) const {
  if (i >= r_) throw std::out_of_range("class id out of range");
  std::vector<std::uint8_t> a(matrix_.size());
  for (std::size_t pos = 0; pos < matrix_.size(); ++pos) a[pos] = matrix_[pos] == i;
  return a;
}

CoherentConfiguration CoherentConfiguration::permute_points(std::span<const Point> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
  std::vector<ClassId> m(matrix_.size());
  for (Point x = 0; x < n_; ++x)
    for (Point y = 0; y < n_; ++y) m[std::size_t{perm[x]} * n_ + perm[y]] = cls(x, y);
  CoherentConfiguration out = from_class_matrix(n_, r_, std::move(m), VerifyMode::trusted);
  out.axiom3_ = axiom3_;
  return out;
}

CoherentConfiguration trivial_configuration(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("trivial configuration needs n >= 1");
  std::vector<ClassId> m(std::size_t{n} * n);
  std::iota(m.begin(), m.end(), 0);
  return CoherentConfiguration::from_class_matrix(n, n * n, std::move(m));
}

// ---------------------------------------------------------------------------
// Text format

void write_ccfg(std::ostream& out, const CoherentConfiguration& c) {
  out << "ccfg 1\n";
  out << "points " << c.points() << " classes " << c.rank() << "\n";
  for (Point x = 0; x < c.points(); ++x) {
    for (Point y = 0; y < c.points(); ++y) out << (y ? " " : "") << c.cls(x, y);
    out << "\n";
  }
}

CoherentConfiguration read_ccfg(std::istream& in, VerifyMode mode) {
  std::string text, line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    text += line;
    text += '\n';
  }
  std::istringstream tokens(text);
  std::string magic, version, kw_points, kw_classes;
  std::uint64_t n = 0, r = 0;
  if (!(tokens >> magic >> version) || magic != "ccfg" || version != "1")
    throw std::invalid_argument("not a 'ccfg 1' file");
  if (!(tokens >> kw_points >> n >> kw_classes >> r) || kw_points != "points" || kw_classes != "classes")
    throw std::invalid_argument("expected 'points <n> classes <r>'");
  if (n == 0 || n > 100000 || r == 0) throw std::invalid_argument("bad ccfg dimensions");
  std::vector<ClassId> m(n * n);
  for (auto& v : m) {
    long long t;
    if (!(tokens >> t) || t < 0) throw std::invalid_argument("ccfg: expected n*n class ids");
    v = static_cast<ClassId>(t);
  }
  std::string extra;
  if (tokens >> extra) throw std::invalid_argument("ccfg: trailing data '" + extra + "'");
  return CoherentConfiguration::from_class_matrix(std::uint32_t(n), std::uint32_t(r), std::move(m), mode);
}

CoherentConfiguration load_ccfg(const std::string& path, VerifyMode mode) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_ccfg(in, mode);
}

void save_ccfg(const std::string& path, const CoherentConfiguration& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_ccfg(out, c);
}

}  // namespace ccmm
