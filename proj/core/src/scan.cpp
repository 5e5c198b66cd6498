#include "tdlc/scan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "tdlc/homology.hpp"

namespace tdlc::scan {

using complex::SimplicialComplex;
using linalg::Rational;
using linalg::SparseVector;

namespace {

// Runs fn(0..n-1) on up to `threads` workers; rethrows the first failure.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

bool strictly_increasing(const std::vector<std::size_t>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

struct Window {
  std::size_t r = 0, d = 0;
  SimplicialComplex complex;
};

// Rips complexes for every (r, d) cell; index = ri * scales + di.
std::vector<Window> build_windows(const ScanGrid& grid, std::size_t max_dim) {
  std::vector<germ::Ball> balls(grid.radii.size());
  parallel_for(balls.size(), grid.threads,
               [&](std::size_t i) { balls[i] = germ::ball(*grid.germ, grid.radii[i], grid.caps); });
  const std::size_t ns = grid.scales.size();
  std::vector<Window> windows(grid.radii.size() * ns);
  parallel_for(windows.size(), grid.threads, [&](std::size_t i) {
    Window& w = windows[i];
    w.r = grid.radii[i / ns];
    w.d = grid.scales[i % ns];
    w.complex = complex::rips(balls[i / ns], w.d, max_dim, grid.caps);
  });
  return windows;
}

SparseVector<Rational> relabel(const SparseVector<Rational>& v, const SimplicialComplex& from,
                               const SimplicialComplex& to, std::size_t p) {
  SparseVector<Rational> out;
  for (const auto& [i, x] : v) out.emplace_back(*to.index_of(from.simplices(p)[i]), x);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

linalg::SparseVector<linalg::Integer> relabel_z(const linalg::SparseVector<linalg::Integer>& v,
                                                const SimplicialComplex& from, const SimplicialComplex& to,
                                                std::size_t p) {
  linalg::SparseVector<linalg::Integer> out;
  for (const auto& [i, x] : v) out.emplace_back(*to.index_of(from.simplices(p)[i]), x);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

std::size_t ScanGrid::margin() const {
  if (inner_margin) return *inner_margin;
  return scales.empty() ? 0 : scales.back();
}

void ScanGrid::validate() const {
  if (!germ) throw InputError("scan", "scan grid has no germ");
  if (radii.empty() || scales.empty() || dims.empty())
    throw InputError("scan", "scan grid needs radii, scales and dims");
  if (!strictly_increasing(radii)) throw InputError("scan", "radii must be strictly increasing");
  if (!strictly_increasing(scales)) throw InputError("scan", "scales must be strictly increasing");
  if (scales.front() < 1) throw InputError("scan", "scales must be >= 1");
  if (!strictly_increasing(dims)) throw InputError("scan", "dims must be strictly increasing");
}

std::string DegreeSummary::describe() const {
  std::ostringstream os;
  os << "k=" << k << ": ";
  if (dies_by_step)
    os << "dies by step " << *dies_by_step << " (consistent with FP_" << k + 1 << " in window)";
  else
    os << "survives window of " << steps << " step" << (steps == 1 ? "" : "s")
       << " (obstruction found in window)";
  return os.str();
}

const ScanCell* TrivialityProfile::find(std::size_t k, std::size_t r, std::size_t d, std::size_t r2,
                                        std::size_t d2) const {
  for (const auto& c : cells)
    if (c.k == k && c.r == r && c.d == d && c.r2 == r2 && c.d2 == d2) return &c;
  return nullptr;
}

TrivialityProfile brown_scan(const ScanGrid& grid) {
  grid.validate();
  const std::size_t margin = grid.margin();
  const std::size_t max_dim = grid.dims.back() + 1;
  auto windows = build_windows(grid, max_dim);
  const std::size_t nr = grid.radii.size();
  const std::size_t ns = grid.scales.size();
  const std::size_t nk = grid.dims.size();

  // Reduced homology representatives of the inner complexes, per (window, k).
  struct Source {
    SimplicialComplex inner;
    std::vector<std::vector<SparseVector<Rational>>> classes;  // per k
    std::vector<std::vector<linalg::SparseVector<linalg::Integer>>> cycles_z;
  };
  std::vector<Source> sources(windows.size());
  parallel_for(windows.size(), grid.threads, [&](std::size_t i) {
    const Window& w = windows[i];
    Source& s = sources[i];
    if (w.r >= margin) {
      std::size_t n = germ::ball(*grid.germ, w.r - margin, grid.caps).size();
      s.inner = w.complex.restrict_below(static_cast<complex::Vertex>(n));
    }
    auto c = complex::chain_complex(s.inner, grid.ring, true);
    for (std::size_t k : grid.dims) {
      s.classes.push_back(homology::homology_basis_q(c, k));
      if (grid.ring == linalg::Ring::Z) {
        auto dk = c.boundary(k);
        linalg::LatticeReducer cyc(dk.rows(), true);
        for (const auto& col : dk.columns()) cyc.add(col);
        s.cycles_z.push_back(cyc.kernel());
      }
    }
  });

  struct Pair {
    std::size_t source, target, ki;
  };
  std::vector<Pair> pairs;
  for (std::size_t ki = 0; ki < nk; ++ki)
    for (std::size_t a = 0; a < windows.size(); ++a)
      for (std::size_t b = 0; b < windows.size(); ++b) {
        if (a == b || b / ns < a / ns || b % ns < a % ns) continue;
        pairs.push_back({a, b, ki});
      }

  // Boundary spaces of the targets, only where some source has classes.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> target_slot;
  auto has_cycles = [&](std::size_t src, std::size_t ki) {
    return grid.ring == linalg::Ring::Q ? !sources[src].classes[ki].empty() : !sources[src].cycles_z[ki].empty();
  };
  for (const auto& p : pairs)
    if (has_cycles(p.source, p.ki)) target_slot.emplace(std::make_pair(p.target, p.ki), 0);
  std::vector<std::pair<std::size_t, std::size_t>> target_keys;
  for (auto& [key, slot] : target_slot) {
    slot = target_keys.size();
    target_keys.push_back(key);
  }
  std::vector<std::optional<linalg::SpanReducer>> spans(target_keys.size());
  std::vector<std::optional<linalg::LatticeReducer>> lattices(target_keys.size());
  parallel_for(target_keys.size(), grid.threads, [&](std::size_t i) {
    auto [t, ki] = target_keys[i];
    auto c = complex::chain_complex(windows[t].complex, grid.ring, true);
    const std::size_t k = grid.dims[ki];
    if (grid.ring == linalg::Ring::Q) {
      spans[i].emplace(homology::boundary_span_q(c, k));
    } else {
      lattices[i].emplace(c.rank(k));
      const auto d = c.boundary(k + 1);
      for (const auto& col : d.columns()) lattices[i]->add(col);
    }
  });

  TrivialityProfile profile;
  profile.margin = margin;
  profile.cells.resize(pairs.size());
  parallel_for(pairs.size(), grid.threads, [&](std::size_t i) {
    const Pair& p = pairs[i];
    const Window& a = windows[p.source];
    const Window& b = windows[p.target];
    const Source& s = sources[p.source];
    const std::size_t k = grid.dims[p.ki];
    ScanCell& cell = profile.cells[i];
    cell.k = k;
    cell.r = a.r;
    cell.d = a.d;
    cell.r2 = b.r;
    cell.d2 = b.d;
    cell.betti_inner = s.classes[p.ki].size();
    cell.trivial = true;
    if (!has_cycles(p.source, p.ki)) return;
    const std::size_t slot = target_slot.at({p.target, p.ki});
    if (grid.ring == linalg::Ring::Q) {
      for (const auto& z : s.classes[p.ki])
        if (!spans[slot]->contains(relabel(z, s.inner, b.complex, k))) {
          cell.trivial = false;
          break;
        }
    } else {
      for (const auto& z : s.cycles_z[p.ki])
        if (!lattices[slot]->contains(relabel_z(z, s.inner, b.complex, k))) {
          cell.trivial = false;
          break;
        }
    }
  });
  std::sort(profile.cells.begin(), profile.cells.end(), [](const ScanCell& x, const ScanCell& y) {
    return std::tie(x.k, x.r, x.d, x.r2, x.d2) < std::tie(y.k, y.r, y.d, y.r2, y.d2);
  });

  const std::size_t steps = std::min(nr, ns);
  for (std::size_t k : grid.dims) {
    DegreeSummary sum;
    sum.k = k;
    sum.steps = steps;
    const auto& w0 = windows[0];
    const auto ki = static_cast<std::size_t>(std::find(grid.dims.begin(), grid.dims.end(), k) - grid.dims.begin());
    if (!has_cycles(0, ki)) {
      sum.dies_by_step = 0;
    } else {
      for (std::size_t st = 1; st < steps; ++st) {
        const ScanCell* c = profile.find(k, w0.r, w0.d, grid.radii[st], grid.scales[st]);
        if (c && c->trivial) {
          sum.dies_by_step = st;
          break;
        }
      }
    }
    profile.summaries.push_back(sum);
  }
  return profile;
}

std::string profile_to_csv(const TrivialityProfile& profile) {
  std::ostringstream os;
  os << "k,r,d,r2,d2,betti_inner,trivial\n";
  for (const auto& c : profile.cells)
    os << c.k << ',' << c.r << ',' << c.d << ',' << c.r2 << ',' << c.d2 << ',' << c.betti_inner << ','
       << (c.trivial ? 1 : 0) << '\n';
  return os.str();
}

std::string profile_summary(const TrivialityProfile& profile) {
  std::ostringstream os;
  os << "inner margin " << profile.margin << '\n';
  for (const auto& s : profile.summaries) os << s.describe() << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> pair_connectivity(const SimplicialComplex& big, const SimplicialComplex& small,
                                             std::size_t max_k) {
  auto c = complex::relative_chain_complex(big, small, linalg::Ring::Q, true);
  for (std::size_t k = 0; k <= max_k; ++k) {
    std::size_t rank_in = linalg::rank_q(c.boundary(k));
    std::size_t rank_out = linalg::rank_q(c.boundary(k + 1));
    if (c.rank(k) - rank_in - rank_out > 0) return k;
  }
  return std::nullopt;
}

std::vector<PairStep> pair_connectivity_scan(const ScanGrid& grid) {
  grid.validate();
  const std::size_t steps = std::min(grid.radii.size(), grid.scales.size());
  const std::size_t max_k = grid.dims.back();
  std::vector<SimplicialComplex> diag(steps);
  parallel_for(steps, grid.threads, [&](std::size_t i) {
    auto b = germ::ball(*grid.germ, grid.radii[i], grid.caps);
    diag[i] = complex::rips(b, grid.scales[i], max_k + 1, grid.caps);
  });
  std::vector<PairStep> out(steps ? steps - 1 : 0);
  parallel_for(out.size(), grid.threads, [&](std::size_t i) {
    out[i] = {grid.radii[i], grid.scales[i], grid.radii[i + 1], grid.scales[i + 1],
              pair_connectivity(diag[i + 1], diag[i], max_k)};
  });
  return out;
}

std::string pair_steps_to_csv(const std::vector<PairStep>& steps) {
  std::ostringstream os;
  os << "r,d,r2,d2,min_k\n";
  for (const auto& s : steps)
    os << s.r << ',' << s.d << ',' << s.r2 << ',' << s.d2 << ','
       << (s.min_k ? std::to_string(*s.min_k) : std::string("inf")) << '\n';
  return os.str();
}

}  // namespace tdlc::scan
