#include "framelift/sphere_search.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace framelift {

namespace {

RealVector normalized(const RealVector& v) {
  const double n = v.norm();
  if (n < 1e-300) {
    RealVector e = RealVector::Zero(v.size());
    e(0) = 1.0;
    return e;
  }
  return v / n;
}

}  // namespace

SphereSearchResult minimize_on_sphere(const std::function<double(const RealVector&)>& f,
                                      const RealVector& start,
                                      const SphereSearchOptions& opt) {
  const Eigen::Index d = start.size();
  const int nv = static_cast<int>(d) + 1;

  std::vector<RealVector> verts(nv);
  std::vector<double> vals(nv);
  int evals = 0;

  auto eval = [&](const RealVector& raw) {
    ++evals;
    return f(normalized(raw));
  };

  verts[0] = normalized(start);
  vals[0] = eval(verts[0]);
  for (int i = 1; i < nv; ++i) {
    RealVector v = verts[0];
    v(i - 1) += opt.initial_step;
    verts[i] = normalized(v);
    vals[i] = eval(verts[i]);
  }

  std::vector<int> order(nv);
  const double rho = 1.0, chi = 2.0, gamma = 0.5, sigma = 0.5;

  while (evals < opt.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[nv - 1], second_worst = order[nv - 2];

    if (vals[best] <= opt.success_value) break;
    if (vals[worst] - vals[best] < opt.f_spread_tol) break;
    double diam = 0.0;
    for (int i = 1; i < nv; ++i) {
      diam = std::max(diam, (verts[order[i]] - verts[best]).norm());
    }
    if (diam < opt.simplex_tol) break;

    RealVector centroid = RealVector::Zero(d);
    for (int i = 0; i < nv; ++i) {
      if (i != worst) centroid += verts[i];
    }
    centroid /= static_cast<double>(nv - 1);

    RealVector xr = normalized(centroid + rho * (centroid - verts[worst]));
    const double fr = eval(xr);

    if (fr < vals[best]) {
      RealVector xe = normalized(centroid + chi * (centroid - verts[worst]));
      const double fe = eval(xe);
      if (fe < fr) {
        verts[worst] = xe;
        vals[worst] = fe;
      } else {
        verts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second_worst]) {
      verts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      RealVector xc = outside ? normalized(centroid + gamma * (xr - centroid))
                              : normalized(centroid - gamma * (centroid - verts[worst]));
      const double fc = eval(xc);
      if (fc < std::min(fr, vals[worst])) {
        verts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (int i = 0; i < nv; ++i) {
          if (i == best) continue;
          verts[i] = normalized(verts[best] + sigma * (verts[i] - verts[best]));
          vals[i] = eval(verts[i]);
          if (evals >= opt.max_evals) break;
        }
      }
    }
  }

  SphereSearchResult out;
  const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = verts[best];
  out.value = vals[best];
  out.evals = evals;
  return out;
}

}  // namespace framelift
