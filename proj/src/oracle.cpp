#include "locus/oracle.hpp"

#include "locus/parallel.hpp"

#include <Eigen/SVD>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace locus {

double GridSpec::cell_diagonal() const {
  double sum = 0;
  for (int a = 0; a < dim(); ++a) sum += cell(a) * cell(a);
  return std::sqrt(sum);
}

std::size_t GridSpec::node_count() const {
  std::size_t n = 1;
  for (int a = 0; a < dim(); ++a) n *= static_cast<std::size_t>(resolution);
  return n;
}

Vec GridSpec::node(std::size_t index) const {
  Vec w(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    const auto k = static_cast<double>(index % static_cast<std::size_t>(resolution));
    index /= static_cast<std::size_t>(resolution);
    w(a) = lo(a) + k * cell(a);
  }
  return w;
}

void GridSpec::validate() const {
  if (lo.size() != hi.size() || (dim() != 2 && dim() != 3)) throw std::invalid_argument("grid bounds must be 2D or 3D");
  if (resolution < 3) throw std::invalid_argument("grid resolution must be at least 3");
  for (int a = 0; a < dim(); ++a) {
    if (!(lo(a) < hi(a))) throw std::invalid_argument("grid bounds must satisfy lo < hi");
  }
}

Cardinality OracleSolution::cardinality() const {
  if (continuum) return Cardinality::continuum();
  return Cardinality::finite(static_cast<int>(isolated.size()));
}

GridSpec default_grid(const Scenario& s, int resolution) {
  double max_d = 0;
  for (const Sensor& sensor : s.sensors) max_d = std::max(max_d, sensor.d);
  GridSpec g;
  g.lo = s.z(0);
  g.hi = s.z(0);
  for (const Sensor& sensor : s.sensors) {
    g.lo = g.lo.cwiseMin(sensor.z);
    g.hi = g.hi.cwiseMax(sensor.z);
  }
  g.lo.array() -= max_d + 1;
  g.hi.array() += max_d + 1;
  g.resolution = resolution > 0 ? resolution : (s.dim == 2 ? 201 : 81);
  return g;
}

namespace {

// Bound on |O(a) - O(b)| / |a - b| over the grid box.
double lipschitz_bound(const Scenario& s, const GridSpec& g) {
  if (s.model == ErrorModel::Distance) return static_cast<double>(s.count());
  double total = 0;
  for (const Sensor& sensor : s.sensors) {
    double far = 0;
    for (int a = 0; a < g.dim(); ++a) {
      const double e = std::max(std::abs(g.lo(a) - sensor.z(a)), std::abs(g.hi(a) - sensor.z(a)));
      far += e * e;
    }
    total += 2 * std::sqrt(far);
  }
  return total;
}

std::vector<Vec> poll_directions(int dim) {
  std::vector<Vec> dirs;
  const int total = dim == 2 ? 9 : 27;
  for (int code = 0; code < total; ++code) {
    Vec v(dim);
    int c = code;
    for (int a = 0; a < dim; ++a) {
      v(a) = (c % 3) - 1;
      c /= 3;
    }
    if (v.squaredNorm() > 0) dirs.push_back(v.normalized());
  }
  // axis directions first
  std::stable_sort(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) {
    return (a.array() != 0).count() < (b.array() != 0).count();
  });
  return dirs;
}

struct Probe {
  Vec w;
  double f;
};

void pattern_search(const Scenario& s, Probe& p, double h0, double floor, const std::vector<Vec>& dirs) {
  for (double h = h0; h >= floor; h /= 2) {
    for (int iter = 0; iter < 200; ++iter) {
      bool improved = false;
      for (const Vec& d : dirs) {
        const Vec cand = p.w + h * d;
        const double fc = eval_objective(cand, s);
        if (fc < p.f) {
          p.w = cand;
          p.f = fc;
          improved = true;
        }
      }
      if (!improved) break;
    }
  }
}

// Gauss-Newton projection onto {|W - Z_m| = d_m : m in mask}.
bool project(const Scenario& s, unsigned mask, Vec& w) {
  std::vector<int> idx;
  for (int m = 0; m < s.count(); ++m) {
    if (mask & (1u << m)) idx.push_back(m);
  }
  const auto rows = static_cast<Eigen::Index>(idx.size());
  const double tol = 1e-14 * scenario_scale(s);
  for (int it = 0; it < 60; ++it) {
    Eigen::MatrixXd jac(rows, s.dim);
    Eigen::VectorXd res(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Vec delta = w - s.z(idx[r]);
      const double len = delta.norm();
      if (len == 0) return false;
      jac.row(r) = (delta / len).transpose();
      res(r) = len - s.d(idx[r]);
    }
    if (res.cwiseAbs().maxCoeff() <= tol) return true;
    const Eigen::MatrixXd gram = jac * jac.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success || std::abs(gram.determinant()) < 1e-18) return false;
    w -= Vec(jac.transpose() * ldlt.solve(res));
  }
  for (int r : idx) {
    if (std::abs((w - s.z(r)).norm() - s.d(r)) > 1e-10 * scenario_scale(s)) return false;
  }
  return true;
}

std::vector<Vec> tangent_basis(const Scenario& s, unsigned mask, const Vec& w) {
  std::vector<int> idx;
  for (int m = 0; m < s.count(); ++m) {
    if (mask & (1u << m)) idx.push_back(m);
  }
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(idx.size()), s.dim);
  for (std::size_t r = 0; r < idx.size(); ++r) jac.row(static_cast<Eigen::Index>(r)) = (w - s.z(idx[r])).normalized().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  std::vector<Vec> basis;
  for (Eigen::Index c = static_cast<Eigen::Index>(idx.size()); c < s.dim; ++c) basis.emplace_back(svd.matrixV().col(c));
  return basis;
}

void manifold_search(const Scenario& s, unsigned mask, Probe& p, double h0, double floor) {
  for (double h = h0; h >= floor; h /= 2) {
    for (int iter = 0; iter < 200; ++iter) {
      const auto basis = tangent_basis(s, mask, p.w);
      std::vector<Vec> dirs;
      for (const Vec& b : basis) {
        dirs.push_back(b);
        dirs.push_back(-b);
      }
      if (basis.size() == 2) {
        for (double sa : {1.0, -1.0}) {
          for (double sb : {1.0, -1.0}) dirs.push_back(((sa * basis[0] + sb * basis[1]) / std::sqrt(2.0)).eval());
        }
      }
      bool improved = false;
      for (const Vec& d : dirs) {
        Vec cand = p.w + h * d;
        if (!project(s, mask, cand)) continue;
        const double fc = eval_objective(cand, s);
        if (fc < p.f) {
          p.w = cand;
          p.f = fc;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
  }
}

Probe polish_one(const Scenario& s, const Vec& seed, double h0, const OracleConfig& cfg, const std::vector<Vec>& dirs) {
  Probe p{seed, eval_objective(seed, s)};
  pattern_search(s, p, h0, cfg.step_floor, dirs);
  // Minima often sit on a sphere, where the objective has a ridge that
  // coordinate polling cannot follow; search along the active spheres.
  for (int round = 0; round < 4; ++round) {
    // Stalled points can sit a little off the crease they should follow, so
    // candidate sphere sets are picked with a wider band than the final test.
    unsigned active = 0;
    for (int m = 0; m < s.count(); ++m) {
      const double r = (p.w - s.z(m)).norm();
      if (std::abs(r - s.d(m)) <= cfg.capture_band * std::max(1.0, s.d(m))) active |= 1u << m;
      if (r <= cfg.active_band) {
        const double fz = eval_objective(s.z(m), s);
        if (fz < p.f) p = Probe{s.z(m), fz};
      }
    }
    const double before = p.f;
    for (unsigned mask = 1; mask < (1u << s.count()); ++mask) {
      if ((mask & active) != mask) continue;
      Probe q = p;
      if (!project(s, mask, q.w)) continue;
      q.f = eval_objective(q.w, s);
      if (std::popcount(mask) < s.dim) manifold_search(s, mask, q, h0 / 8, cfg.step_floor);
      if (q.f < p.f) p = q;
    }
    if (!(p.f < before)) break;
  }
  pattern_search(s, p, h0 / 16, cfg.step_floor, dirs);
  return p;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<std::size_t>> single_linkage(const std::vector<Vec>& pts, double radius) {
  UnionFind uf(pts.size());
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if ((pts[a] - pts[b]).norm() <= radius) uf.unite(a, b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < pts.size(); ++a) groups[uf.find(a)].push_back(a);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

int local_dimension(const std::vector<Vec>& pts, const std::vector<std::size_t>& members, double radius) {
  std::map<int, int> votes;
  for (std::size_t a : members) {
    std::vector<Vec> nb;
    for (std::size_t b : members) {
      if ((pts[a] - pts[b]).norm() <= radius) nb.push_back(pts[b]);
    }
    if (nb.size() < 3) continue;
    Vec mean = Vec::Zero(pts[a].size());
    for (const Vec& v : nb) mean += v;
    mean /= static_cast<double>(nb.size());
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(mean.size(), mean.size());
    for (const Vec& v : nb) cov += (v - mean) * (v - mean).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const Eigen::VectorXd ev = eig.eigenvalues();
    const double top = ev.maxCoeff();
    if (top <= 0) continue;
    int dim = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) dim += ev(k) > 0.1 * top;
    ++votes[dim];
  }
  int best = 1;
  int count = -1;
  for (const auto& [dim, n] : votes) {
    if (n > count) {
      best = dim;
      count = n;
    }
  }
  return std::clamp(best, 1, 2);
}

}  // namespace

ScanResult grid_scan(const Scenario& s, const GridSpec& g, const OracleConfig& cfg) {
  g.validate();
  if (g.dim() != s.dim) throw DimensionMismatch("grid and scenario dimensions differ");
  const std::size_t n = g.node_count();
  const auto res = static_cast<std::size_t>(g.resolution);
  std::vector<double> values(n);
  parallel_for(n / res, [&](std::size_t row) {
    for (std::size_t k = row * res; k < (row + 1) * res; ++k) values[k] = eval_objective(g.node(k), s);
  });
  ScanResult out;
  out.best_value = *std::min_element(values.begin(), values.end());
  out.seed_margin = 2 * g.cell_diagonal() * lipschitz_bound(s, g);
  std::vector<std::size_t> near;
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] <= out.best_value + out.seed_margin) near.push_back(k);
  }
  out.near_minimal = near.size();
  std::stable_sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<char> blocked(n, 0);
  const int dim = g.dim();
  for (std::size_t k : near) {
    if (out.seeds.size() >= cfg.max_seeds) break;
    if (blocked[k]) continue;
    out.seeds.push_back(g.node(k));
    std::array<long, 3> coord{};
    std::size_t rest = k;
    for (int a = dim - 1; a >= 0; --a) {
      coord[a] = static_cast<long>(rest % res);
      rest /= res;
    }
    const int block = dim == 2 ? 9 : 27;
    for (int code = 0; code < block; ++code) {
      int c = code;
      std::size_t idx = 0;
      bool inside = true;
      for (int a = 0; a < dim; ++a) {
        const long v = coord[a] + (c % 3) - 1;
        c /= 3;
        if (v < 0 || v >= static_cast<long>(res)) inside = false;
        idx = idx * res + static_cast<std::size_t>(std::max(0L, v));
      }
      if (inside) blocked[idx] = 1;
    }
  }
  for (const Sensor& sensor : s.sensors) out.seeds.push_back(sensor.z);
  return out;
}

std::vector<Vec> polish(const Scenario& s, const std::vector<Vec>& seeds, double initial_step, const OracleConfig& cfg) {
  const auto dirs = poll_directions(s.dim);
  std::vector<Probe> done(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t k) { done[k] = polish_one(s, seeds[k], initial_step, cfg, dirs); });
  std::vector<Probe> kept;
  for (const Probe& p : done) {
    bool merged = false;
    for (Probe& q : kept) {
      if ((p.w - q.w).norm() <= cfg.dedup_radius) {
        if (p.f < q.f) q = p;
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(p);
  }
  std::vector<Vec> out;
  out.reserve(kept.size());
  for (const Probe& p : kept) out.push_back(p.w);
  return out;
}

OracleSolution characterize(const Scenario& s, const std::vector<Vec>& minima, const GridSpec& g, std::size_t evidence,
                            const OracleConfig& cfg) {
  OracleSolution out;
  out.evidence = evidence;
  if (minima.empty()) return out;
  std::vector<double> values;
  for (const Vec& w : minima) values.push_back(eval_objective(w, s));
  const double m = *std::min_element(values.begin(), values.end());
  out.min_value = m;
  for (std::size_t k = 0; k < minima.size(); ++k) {
    if (values[k] <= m + cfg.near_min_rel * std::max(1.0, m)) out.minima.push_back(minima[k]);
  }
  double cell_max = 0;
  for (int a = 0; a < g.dim(); ++a) cell_max = std::max(cell_max, g.cell(a));
  const double radius = cfg.cluster_cells * cell_max;
  // Equal-value minima spread well past the grouping radius cannot be polish
  // jitter; this also catches continua shorter than a grid cell.
  const double spread_min = std::max(10 * cfg.dedup_radius, 10 * cfg.group_radius);
  std::vector<Vec> isolated_pts;
  for (const auto& members : single_linkage(out.minima, radius)) {
    Vec mean = Vec::Zero(s.dim);
    for (std::size_t a : members) mean += out.minima[a];
    mean /= static_cast<double>(members.size());
    double extent = 0;
    for (std::size_t a : members) extent = std::max(extent, (out.minima[a] - mean).norm());
    if (members.size() >= 4 && 2 * extent > spread_min) {
      const int dim = local_dimension(out.minima, members, radius);
      if (!out.continuum) out.continuum = ContinuumInfo{dim, {}};
      out.continuum->dimension = std::max(out.continuum->dimension, dim);
      for (std::size_t a : members) out.continuum->samples.push_back(out.minima[a]);
    } else {
      for (std::size_t a : members) isolated_pts.push_back(out.minima[a]);
    }
  }
  for (const auto& group : single_linkage(isolated_pts, cfg.group_radius)) {
    std::size_t best = group.front();
    for (std::size_t a : group) {
      if (eval_objective(isolated_pts[a], s) < eval_objective(isolated_pts[best], s)) best = a;
    }
    out.isolated.push_back(isolated_pts[best]);
  }
  return out;
}

OracleSolution run_oracle(const Scenario& s, const GridSpec& g, const OracleConfig& cfg) {
  const ScanResult scan = grid_scan(s, g, cfg);
  const auto polished = polish(s, scan.seeds, g.cell_diagonal(), cfg);
  return characterize(s, polished, g, scan.near_minimal, cfg);
}

OracleSolution run_oracle(const Scenario& s, const OracleConfig& cfg) {
  return run_oracle(s, default_grid(s, cfg.resolution), cfg);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    default:
      return "ORACLE-ONLY";
  }
}

std::string VerificationReport::str() const {
  std::ostringstream os;
  os.precision(12);
  os << to_string(verdict) << " analytic_min=" << analytic_min << " oracle_min=" << oracle_min
     << " cardinality analytic=" << analytic_cardinality.str() << " oracle=" << oracle_cardinality.str() << "\n";
  for (const std::string& d : discrepancies) os << "  " << d << "\n";
  return os.str();
}

namespace {

std::string fmt_point(const Vec& w) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (Eigen::Index k = 0; k < w.size(); ++k) os << (k ? ", " : "") << w(k);
  os << ")";
  return os.str();
}

}  // namespace

VerificationReport verify(const Scenario& s, const SolutionSet& analytic, const OracleSolution& oracle,
                          const OracleConfig& cfg) {
  VerificationReport rep;
  rep.analytic_min = analytic.min_value;
  rep.oracle_min = oracle.min_value;
  rep.analytic_cardinality = analytic.cardinality;
  rep.oracle_cardinality = oracle.cardinality();
  if (!analytic.resolved) {
    rep.verdict = Verdict::OracleOnly;
    rep.discrepancies.push_back("analytic case unresolved (" + analytic.case_label + "); oracle answer reported");
    return rep;
  }
  const double value_tol = cfg.value_rel_tol * std::max(1.0, std::abs(oracle.min_value));
  if (std::abs(analytic.min_value - oracle.min_value) > value_tol) {
    std::ostringstream os;
    os.precision(12);
    os << "FAIL(min-value): analytic " << analytic.min_value << " vs oracle " << oracle.min_value;
    rep.discrepancies.push_back(os.str());
  }
  std::size_t unexplained = 0;
  for (const Vec& w : oracle.minima) {
    const double dist = distance_to_set(w, analytic);
    if (dist > cfg.position_tol) {
      if (unexplained++ < 5) {
        std::ostringstream os;
        os << "FAIL(unexplained-minimum): oracle minimum " << fmt_point(w) << " is " << dist << " from the analytic set";
        rep.discrepancies.push_back(os.str());
      }
    }
  }
  if (unexplained > 5) rep.discrepancies.push_back("  ... " + std::to_string(unexplained - 5) + " more");
  for (std::size_t k = 0; k < analytic.pieces.size(); ++k) {
    const Piece& piece = analytic.pieces[k];
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec& w : oracle.minima) nearest = std::min(nearest, distance_to_piece(w, piece));
    bool ok = nearest <= cfg.position_tol;
    if (ok && is_continuum(piece)) {
      for (const Vec& w : sample_piece(piece, cfg.piece_samples)) {
        if (eval_objective(w, s) > oracle.min_value + value_tol) ok = false;
      }
    }
    if (!ok) {
      std::ostringstream os;
      os << "FAIL(extraneous-piece): piece " << k << " (" << piece_kind(piece) << ") is not a set of oracle minima"
         << " (nearest oracle minimum at " << nearest << ")";
      rep.discrepancies.push_back(os.str());
    }
  }
  if (!(analytic.cardinality == rep.oracle_cardinality)) {
    rep.discrepancies.push_back("FAIL(cardinality): analytic " + analytic.cardinality.str() + " vs oracle " +
                                rep.oracle_cardinality.str());
  }
  rep.verdict = rep.discrepancies.empty() ? Verdict::Pass : Verdict::Fail;
  return rep;
}

}  // namespace locus
