#include "macroreal/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace macroreal {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

CVector to_cvec(const Vec3& v) {
  return {Complex{v[0], 0.0}, Complex{v[1], 0.0}, Complex{v[2], 0.0}};
}

}  // namespace

QuantumFragment decode(const FragmentParams& params) {
  const double t = params.angles[0];
  const double s = params.angles[1];
  const double u = params.angles[2];
  const double v = params.angles[3];
  const double th = params.angles[4];
  const double ph = params.angles[5];

  QuantumFragment frag;
  frag.dim = 3;
  frag.eigenprep_index = 0;
  frag.q_basis = {to_cvec({1, 0, 0}), to_cvec({0, 1, 0}), to_cvec({0, 0, 1})};

  // U has first column w = (cos t, sin t, 0); the remaining columns rotate by
  // s inside the orthogonal complement spanned by (-sin t, cos t, 0), e3.
  const Vec3 w = {std::cos(t), std::sin(t), 0.0};
  const Vec3 c1 = {-std::sin(t), std::cos(t), 0.0};
  const Vec3 c2 = {0.0, 0.0, 1.0};
  const Vec3 col2 = {std::cos(s) * c1[0] + std::sin(s) * c2[0],
                     std::cos(s) * c1[1] + std::sin(s) * c2[1],
                     std::cos(s) * c1[2] + std::sin(s) * c2[2]};
  const Vec3 col3 = {-std::sin(s) * c1[0] + std::cos(s) * c2[0],
                     -std::sin(s) * c1[1] + std::cos(s) * c2[1],
                     -std::sin(s) * c1[2] + std::cos(s) * c2[2]};
  frag.unitary = {to_cvec({w[0], col2[0], col3[0]}),
                  to_cvec({w[1], col2[1], col3[1]}),
                  to_cvec({w[2], col2[2], col3[2]})};

  // a2 orthogonal to q1; a3 orthogonal to both a2 and w, so the a2 and a3
  // premise probabilities vanish identically. When a2 is parallel to w the
  // orthogonality constraints coincide and v picks a3 on the free circle.
  const Vec3 a2 = {0.0, std::cos(u), std::sin(u)};
  Vec3 a3;
  const Vec3 a2xw = cross(a2, w);
  if (norm(a2xw) > 1e-12) {
    a3 = normalized(a2xw);
  } else {
    const Vec3 e1 = {1.0, 0.0, 0.0};  // e1 is orthogonal to every a2
    const Vec3 a2xe1 = normalized(cross(a2, e1));
    a3 = {std::cos(v) * e1[0] + std::sin(v) * a2xe1[0],
          std::cos(v) * e1[1] + std::sin(v) * a2xe1[1],
          std::cos(v) * e1[2] + std::sin(v) * a2xe1[2]};
  }
  const Vec3 a1 = cross(a2, a3);
  frag.a_basis = {to_cvec(a1), to_cvec(a2), to_cvec(a3)};

  frag.psi = to_cvec({std::cos(th), std::sin(th) * std::cos(ph),
                      std::sin(th) * std::sin(ph)});
  return frag;
}

double objective(const FragmentParams& params) {
  const QuantumFragment frag = decode(params);
  const CVector transformed = apply_unitary(frag.unitary, frag.psi);
  return born_probability(frag.psi, frag.q_basis[0]) -
         born_probability(transformed, frag.q_basis[1]) -
         born_probability(transformed, frag.a_basis[0]);
}

FragmentParams fragment2_params() {
  const double r3 = std::sqrt(3.0);
  const double pi = std::acos(-1.0);
  FragmentParams p;
  p.angles[0] = pi / 4.0;                            // U q1 = (1,1,0)/sqrt(2)
  p.angles[1] = 0.0;
  p.angles[2] = pi / 4.0;                            // a2 = (0,1,1)/sqrt(2)
  p.angles[3] = 0.0;
  p.angles[4] = std::acos((1.0 + r3) / 4.0);         // psi polar
  p.angles[5] = std::atan2(2.0 * std::sqrt(2.0) / 4.0, (1.0 - r3) / 4.0);
  return p;
}

namespace {

// Halton low-discrepancy point, one prime base per angle.
double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr std::array<std::uint64_t, 6> kHaltonBases = {2, 3, 5, 7, 11, 13};
constexpr double kTwoPi = 6.283185307179586476925286766559;

FragmentParams halton_start(std::uint64_t index) {
  FragmentParams p;
  for (std::size_t d = 0; d < 6; ++d) {
    p.angles[d] = kTwoPi * halton(index, kHaltonBases[d]);
  }
  return p;
}

struct NmResult {
  FragmentParams params;
  double value = 0.0;
};

// Standard Nelder-Mead on the six angles, maximizing the gap. Angles are
// periodic so no box constraints are needed.
NmResult nelder_mead(const FragmentParams& start) {
  constexpr int kMaxIter = 2000;
  constexpr double kStep = 0.5;
  constexpr double kFTol = 1e-13;

  struct Point {
    FragmentParams p;
    double neg = 0.0;  // minimize -objective
  };
  const auto eval = [](const FragmentParams& p) { return -objective(p); };

  std::array<Point, 7> simplex;
  simplex[0] = {start, eval(start)};
  for (std::size_t d = 0; d < 6; ++d) {
    FragmentParams p = start;
    p.angles[d] += kStep;
    simplex[d + 1] = {p, eval(p)};
  }

  for (int iter = 0; iter < kMaxIter; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.neg < b.neg; });
    if (simplex.back().neg - simplex.front().neg < kFTol) break;

    FragmentParams centroid{};
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t d = 0; d < 6; ++d) {
        centroid.angles[d] += simplex[i].p.angles[d] / 6.0;
      }
    }
    const auto blend = [&](double coeff) {
      FragmentParams p;
      for (std::size_t d = 0; d < 6; ++d) {
        p.angles[d] = centroid.angles[d] +
                      coeff * (simplex[6].p.angles[d] - centroid.angles[d]);
      }
      return p;
    };

    const FragmentParams refl = blend(-1.0);
    const double f_refl = eval(refl);
    if (f_refl < simplex[0].neg) {
      const FragmentParams expd = blend(-2.0);
      const double f_expd = eval(expd);
      simplex[6] = (f_expd < f_refl) ? Point{expd, f_expd} : Point{refl, f_refl};
      continue;
    }
    if (f_refl < simplex[5].neg) {
      simplex[6] = {refl, f_refl};
      continue;
    }
    const FragmentParams contr = blend(0.5);
    const double f_contr = eval(contr);
    if (f_contr < simplex[6].neg) {
      simplex[6] = {contr, f_contr};
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 1; i < 7; ++i) {
      for (std::size_t d = 0; d < 6; ++d) {
        simplex[i].p.angles[d] =
            simplex[0].p.angles[d] +
            0.5 * (simplex[i].p.angles[d] - simplex[0].p.angles[d]);
      }
      simplex[i].neg = eval(simplex[i].p);
    }
  }

  std::sort(simplex.begin(), simplex.end(),
            [](const Point& a, const Point& b) { return a.neg < b.neg; });
  return {simplex[0].p, -simplex[0].neg};
}

}  // namespace

SearchResult maximize_gap_from(const FragmentParams& start) {
  const NmResult run = nelder_mead(start);
  SearchResult result;
  result.best_params = run.params;
  result.best_value = run.value;
  result.per_restart_values = {run.value};
  return result;
}

SearchResult maximize_gap(int restarts, std::uint64_t seed) {
  if (restarts < 1) {
    throw std::invalid_argument("maximize_gap: restarts must be >= 1");
  }

  // Each restart owns its Halton index derived from (seed, restart); the
  // merge below is by value then restart index, independent of scheduling.
  std::vector<NmResult> runs(static_cast<std::size_t>(restarts));
  const std::uint64_t offset = seed * 0x9E3779B9ull + 1;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> futures;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < std::min<unsigned>(hw, static_cast<unsigned>(restarts)); ++w) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) {
        runs[static_cast<std::size_t>(r)] =
            nelder_mead(halton_start(offset + static_cast<std::uint64_t>(r)));
      }
    }));
  }
  for (auto& f : futures) f.get();

  SearchResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  for (const NmResult& run : runs) {
    result.per_restart_values.push_back(run.value);
    if (run.value > result.best_value) {
      result.best_value = run.value;
      result.best_params = run.params;
    }
  }
  return result;
}

double grid_floor_check(int resolution) {
  if (resolution < 8) {
    throw std::invalid_argument("grid_floor_check: resolution must be >= 8");
  }
  const std::size_t res = static_cast<std::size_t>(resolution);
  const double pi = std::acos(-1.0);

  // v is inert away from the degenerate stratum and psi's polar angle only
  // needs [0, pi/2] (global sign flips leave the objective unchanged), so the
  // grid runs over (t, s, u, th, ph).
  double best = -std::numeric_limits<double>::infinity();
  FragmentParams p;
  p.angles[3] = 0.0;
  for (std::size_t it = 0; it < res; ++it) {
    p.angles[0] = kTwoPi * static_cast<double>(it) / static_cast<double>(res);
    for (std::size_t is = 0; is < res; ++is) {
      p.angles[1] = kTwoPi * static_cast<double>(is) / static_cast<double>(res);
      for (std::size_t iu = 0; iu < res; ++iu) {
        p.angles[2] = kTwoPi * static_cast<double>(iu) / static_cast<double>(res);
        for (std::size_t ith = 0; ith < res / 2; ++ith) {
          p.angles[4] = (pi / 2.0) * static_cast<double>(ith) /
                        static_cast<double>(res / 2 - 1);
          for (std::size_t iph = 0; iph < res; ++iph) {
            p.angles[5] = kTwoPi * static_cast<double>(iph) / static_cast<double>(res);
            best = std::max(best, objective(p));
          }
        }
      }
    }
  }
  return best;
}

}  // namespace macroreal
