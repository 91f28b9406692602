#include "qillume/density_matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qillume {

namespace {

// Minimal union-find over flat indices.
class UnionFind {
 public:
  explicit UnionFind(long n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

long DensityMatrix::total_dim() const {
  long d = 1;
  for (int x : dims) d *= x;
  return d;
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (const auto& b : blocks) t += b.m.trace();
  return t;
}

double DensityMatrix::entry(int row, int col) const {
  for (const auto& b : blocks) {
    const auto rit = std::lower_bound(b.members.begin(), b.members.end(), row);
    if (rit == b.members.end() || *rit != row) continue;
    const auto cit = std::lower_bound(b.members.begin(), b.members.end(), col);
    if (cit == b.members.end() || *cit != col) return 0.0;
    return b.m(rit - b.members.begin(), cit - b.members.begin());
  }
  return 0.0;
}

Eigen::MatrixXd DensityMatrix::dense() const {
  const long d = total_dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (const auto& b : blocks) {
    const long n = static_cast<long>(b.members.size());
    for (long p = 0; p < n; ++p)
      for (long q = 0; q < n; ++q) out(b.members[p], b.members[q]) = b.m(p, q);
  }
  return out;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  std::vector<double> evals;
  for (const auto& b : blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.m, Eigen::EigenvaluesOnly);
    const auto& v = es.eigenvalues();
    evals.insert(evals.end(), v.data(), v.data() + v.size());
  }
  return evals;
}

double DensityMatrix::min_eigenvalue() const {
  double lo = 0.0;
  for (double e : eigenvalues()) lo = std::min(lo, e);
  return lo;
}

std::vector<std::vector<int>> merged_partition(
    const std::vector<const DensityMatrix*>& mats) {
  if (mats.empty()) throw std::invalid_argument("merged_partition: no inputs");
  const long d = mats.front()->total_dim();
  for (const auto* m : mats) {
    if (m->dims != mats.front()->dims) {
      throw std::invalid_argument("merged_partition: dimension mismatch");
    }
  }
  UnionFind uf(d);
  for (const auto* m : mats) {
    for (const auto& b : m->blocks) {
      for (size_t p = 1; p < b.members.size(); ++p) uf.unite(b.members[0], b.members[p]);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (const auto* m : mats) {
    for (const auto& b : m->blocks) {
      for (int f : b.members) groups[uf.find(f)].push_back(f);
    }
  }
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

Eigen::MatrixXd restrict_to(const DensityMatrix& rho, const std::vector<int>& members) {
  const long n = static_cast<long>(members.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (const auto& b : rho.blocks) {
    // Positions of block members inside the requested index set.
    for (size_t p = 0; p < b.members.size(); ++p) {
      const auto rit = std::lower_bound(members.begin(), members.end(), b.members[p]);
      if (rit == members.end() || *rit != b.members[p]) continue;
      for (size_t q = 0; q < b.members.size(); ++q) {
        const auto cit = std::lower_bound(members.begin(), members.end(), b.members[q]);
        if (cit == members.end() || *cit != b.members[q]) continue;
        out(rit - members.begin(), cit - members.begin()) = b.m(p, q);
      }
    }
  }
  return out;
}

DensityMatrix lincomb(const std::vector<std::pair<double, const DensityMatrix*>>& terms) {
  if (terms.empty()) throw std::invalid_argument("lincomb: no terms");
  std::vector<const DensityMatrix*> mats;
  mats.reserve(terms.size());
  for (const auto& [w, m] : terms) mats.push_back(m);

  DensityMatrix out;
  out.dims = mats.front()->dims;
  for (const auto& members : merged_partition(mats)) {
    DensityMatrix::Block blk;
    blk.members = members;
    blk.m = Eigen::MatrixXd::Zero(members.size(), members.size());
    for (const auto& [w, m] : terms) blk.m += w * restrict_to(*m, members);
    out.blocks.push_back(std::move(blk));
  }
  out.trace_deficit = 0.0;
  for (const auto& [w, m] : terms) out.trace_deficit += w * m->trace_deficit;
  return out;
}

DensityMatrix partial_transpose_idler(const DensityMatrix& rho) {
  if (!rho.two_mode()) {
    throw std::invalid_argument("partial_transpose_idler: needs a two-mode matrix");
  }
  const int ds = rho.dims[1];
  const long d = rho.total_dim();

  // Collect transposed elements and regroup them into blocks.
  struct Elem {
    int a, b;
    double v;
  };
  std::vector<Elem> elems;
  UnionFind uf(d);
  std::vector<char> seen(d, 0);
  for (const auto& blk : rho.blocks) {
    const long n = static_cast<long>(blk.members.size());
    for (long p = 0; p < n; ++p) {
      const int i = blk.members[p] / ds, j = blk.members[p] % ds;
      for (long q = p; q < n; ++q) {
        const int i2 = blk.members[q] / ds, j2 = blk.members[q] % ds;
        const int a = i2 * ds + j, b = i * ds + j2;  // idler indices swapped
        elems.push_back({a, b, blk.m(p, q)});
        uf.unite(a, b);
        seen[a] = seen[b] = 1;
      }
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int f = 0; f < d; ++f) {
    if (seen[f]) groups[uf.find(f)].push_back(f);
  }
  DensityMatrix out;
  out.dims = rho.dims;
  out.trace_deficit = rho.trace_deficit;
  std::vector<int> block_of(d, -1), pos_of(d, -1);
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    DensityMatrix::Block blk;
    blk.members = members;
    blk.m = Eigen::MatrixXd::Zero(members.size(), members.size());
    for (size_t p = 0; p < members.size(); ++p) {
      block_of[members[p]] = static_cast<int>(out.blocks.size());
      pos_of[members[p]] = static_cast<int>(p);
    }
    out.blocks.push_back(std::move(blk));
  }
  for (const auto& e : elems) {
    auto& m = out.blocks[block_of[e.a]].m;
    m(pos_of[e.a], pos_of[e.b]) = e.v;
    m(pos_of[e.b], pos_of[e.a]) = e.v;
  }
  std::sort(out.blocks.begin(), out.blocks.end(), [](const auto& a, const auto& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

Eigen::MatrixXd partial_trace_signal(const DensityMatrix& rho) {
  if (!rho.two_mode()) {
    throw std::invalid_argument("partial_trace_signal: needs a two-mode matrix");
  }
  const int ds = rho.dims[1];
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rho.dims[0], rho.dims[0]);
  for (const auto& blk : rho.blocks) {
    const long n = static_cast<long>(blk.members.size());
    for (long p = 0; p < n; ++p) {
      const int i = blk.members[p] / ds, j = blk.members[p] % ds;
      for (long q = 0; q < n; ++q) {
        const int i2 = blk.members[q] / ds, j2 = blk.members[q] % ds;
        if (j == j2) out(i, i2) += blk.m(p, q);
      }
    }
  }
  return out;
}

Eigen::MatrixXd partial_trace_idler(const DensityMatrix& rho) {
  if (!rho.two_mode()) {
    throw std::invalid_argument("partial_trace_idler: needs a two-mode matrix");
  }
  const int ds = rho.dims[1];
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ds, ds);
  for (const auto& blk : rho.blocks) {
    const long n = static_cast<long>(blk.members.size());
    for (long p = 0; p < n; ++p) {
      const int i = blk.members[p] / ds, j = blk.members[p] % ds;
      for (long q = 0; q < n; ++q) {
        const int i2 = blk.members[q] / ds, j2 = blk.members[q] % ds;
        if (i == i2) out(j, j2) += blk.m(p, q);
      }
    }
  }
  return out;
}

}  // namespace qillume
