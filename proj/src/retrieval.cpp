#include "framelift/retrieval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string_view>

#include "framelift/rng.hpp"
#include "framelift/sphere_search.hpp"

namespace framelift {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedFail: return "CERTIFIED_FAIL";
    case Verdict::PassExhaustive: return "PASS_EXHAUSTIVE";
    case Verdict::PassProbabilistic: return "PASS_PROBABILISTIC";
  }
  return "UNKNOWN";
}

template <typename Scalar>
ProjectionFamily<Scalar> rank_one_family(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    const Tolerance& tol) {
  std::vector<Subspace<Scalar>> members;
  members.reserve(vectors.size());
  for (const auto& v : vectors) {
    const double n = v.norm();
    if (n <= tol.eq) {
      throw std::invalid_argument("rank_one_family: zero vector in family");
    }
    typename Subspace<Scalar>::Matrix basis(v.size(), 1);
    basis.col(0) = v / n;
    members.emplace_back(std::move(basis), tol);
  }
  return ProjectionFamily<Scalar>(std::move(members));
}

template <typename Scalar>
SeparationResult distinguishes(const ProjectionFamily<Scalar>& family,
                               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y,
                               const Tolerance& tol) {
  if (x.size() != family.ambient_dim() || y.size() != family.ambient_dim()) {
    throw std::invalid_argument("distinguishes: dimension mismatch");
  }
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Vector diff = x - y;
  const Vector sum = x + y;
  SeparationResult out;
  out.separates.resize(static_cast<std::size_t>(family.size()));
  out.norm_gaps.resize(static_cast<std::size_t>(family.size()));
  out.pairing_forms.resize(static_cast<std::size_t>(family.size()));
  for (int j = 0; j < family.size(); ++j) {
    const auto& s = family[j];
    const double gap = s.project(x).norm() - s.project(y).norm();
    // Independent formula: Re<x-y, P_j(x+y)> equals the squared-norm gap.
    const double form = std::real(Scalar(s.project(sum).dot(diff)));
    out.norm_gaps[static_cast<std::size_t>(j)] = gap;
    out.pairing_forms[static_cast<std::size_t>(j)] = form;
    const bool sep = std::abs(gap) > tol.eq;
    out.separates[static_cast<std::size_t>(j)] = sep;
    if (sep && !out.first_separating) out.first_separating = j;
  }
  return out;
}

template <typename Scalar>
CheckReport complement_property(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    Eigen::Index dim, const Tolerance& tol) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int m = static_cast<int>(vectors.size());
  if (m == 0) throw std::invalid_argument("complement_property: empty family");
  if (m > 24) {
    throw std::invalid_argument(
        "complement_property: refusing exhaustive check for m > 24 (2^m bipartitions); "
        "no silent sampling fallback is provided");
  }
  Matrix all(dim, m);
  for (int i = 0; i < m; ++i) {
    if (vectors[static_cast<std::size_t>(i)].size() != dim) {
      throw std::invalid_argument("complement_property: dimension mismatch");
    }
    all.col(i) = vectors[static_cast<std::size_t>(i)];
  }

  auto side_spans = [&](std::uint32_t mask, int count) {
    if (count < dim) return false;
    Matrix sub(dim, count);
    int c = 0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) sub.col(c++) = all.col(i);
    }
    return tolerant_rank(sub, tol) == dim;
  };

  CheckReport rep;
  rep.verdict = Verdict::PassExhaustive;
  const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1u);
  const std::uint32_t half = 1u << (m - 1);  // fix the last index on the complement side
  for (std::uint32_t mask = 0; mask < half; ++mask) {
    const int k = std::popcount(mask);
    if (side_spans(mask, k)) continue;
    if (side_spans(full & ~mask, m - k)) continue;
    rep.verdict = Verdict::CertifiedFail;
    std::vector<int> subset;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) subset.push_back(i);
    }
    rep.violating_subset = std::move(subset);
    return rep;
  }
  return rep;
}

template <typename Scalar>
SparkReport full_spark(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    Eigen::Index dim, const Tolerance& tol) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int m = static_cast<int>(vectors.size());
  const int n = static_cast<int>(dim);
  if (m < n) {
    throw std::invalid_argument("full_spark: fewer vectors than the dimension");
  }
  double subsets = 1.0;
  for (int i = 0; i < n; ++i) subsets = subsets * (m - i) / (i + 1);
  if (subsets > 1e6) {
    throw std::invalid_argument("full_spark: more than 10^6 subsets; refusing");
  }

  SparkReport rep;
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  Matrix sub(dim, n);
  while (true) {
    ++rep.subsets_checked;
    for (int i = 0; i < n; ++i) sub.col(i) = vectors[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    if (tolerant_rank(sub, tol) != dim) {
      rep.full_spark = false;
      rep.defective_subset = idx;
      return rep;
    }
    // next combination in lexicographic order
    int i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - n + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  rep.full_spark = true;
  return rep;
}

// ---------------------------------------------------------------------------
// span analysis shared by the witness searches

namespace {

RealMatrix projected_rows(const RealProjectionFamily& family, const RealVector& x) {
  RealMatrix rows(family.size(), family.ambient_dim());
  for (int i = 0; i < family.size(); ++i) {
    rows.row(i) = family[i].project(x).transpose();
  }
  return rows;
}

struct SpanScore {
  double score = 0.0;       // relative singular value guarding the needed rank
  Eigen::Index rank = 0;    // tolerant rank of span{P_i x}
};

SpanScore span_score(const RealProjectionFamily& family, const RealVector& x,
                     Eigen::Index needed, const Tolerance& tol) {
  const RealMatrix rows = projected_rows(family, x);
  Eigen::JacobiSVD<RealMatrix> svd(rows);
  const auto& sv = svd.singularValues();
  SpanScore out;
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (!(smax > 0.0)) return out;  // every projection vanished
  while (out.rank < sv.size() && sv(out.rank) > tol.rank * smax) ++out.rank;
  if (rows.rows() < needed || sv.size() < needed) {
    out.score = 0.0;  // too few vectors to ever reach the needed rank
  } else {
    out.score = sv(needed - 1) / smax;
  }
  return out;
}

// One Newton-style correction per iteration toward the zero set of the
// targeted singular value, using d sigma/dx = sum_i u_i P_i v for the
// singular pair (u, v). Keeps the best iterate.
RealVector polish_deficiency(const RealProjectionFamily& family, RealVector x,
                             Eigen::Index needed, const Tolerance& tol, int iters = 20) {
  double best_score = span_score(family, x, needed, tol).score;
  RealVector best = x;
  for (int it = 0; it < iters; ++it) {
    const RealMatrix rows = projected_rows(family, x);
    if (rows.rows() < needed) break;
    Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (!(smax > 0.0)) break;
    const Eigen::Index t = needed - 1;
    if (t >= sv.size()) break;
    const double s = sv(t);
    if (s / smax < 1e-14) { best = x; break; }
    const RealVector u = svd.matrixU().col(t);
    const RealVector v = svd.matrixV().col(t);
    RealVector g = RealVector::Zero(x.size());
    for (int i = 0; i < family.size(); ++i) g += u(i) * family[i].project(v);
    g -= g.dot(x) * x;  // restrict to the sphere tangent
    const double gn2 = g.squaredNorm();
    if (gn2 < 1e-28) break;
    RealVector xn = x - (s / gn2) * g;
    const double nn = xn.norm();
    if (nn < 1e-8) break;
    xn /= nn;
    const double ns = span_score(family, xn, needed, tol).score;
    if (ns < best_score) {
      best_score = ns;
      best = xn;
      x = xn;
    } else {
      break;
    }
  }
  return best;
}

}  // namespace

std::optional<std::pair<RealVector, RealVector>> indistinguishable_pair(
    const RealProjectionFamily& family, const RealVector& x, const Tolerance& tol) {
  if (x.size() != family.ambient_dim()) {
    throw std::invalid_argument("indistinguishable_pair: dimension mismatch");
  }
  if (x.norm() <= tol.eq) {
    throw std::invalid_argument("indistinguishable_pair: zero vector");
  }
  const Eigen::Index n = family.ambient_dim();
  const RealMatrix rows = projected_rows(family, x);
  Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index r = 0;
  if (smax > 0.0) {
    while (r < sv.size() && sv(r) > tol.rank * smax) ++r;
  }
  if (r >= n) return std::nullopt;
  // Deterministic tie-break: smallest-index right-singular vector below the
  // rank threshold.
  const RealVector y = svd.matrixV().col(r);
  return std::make_pair(RealVector((x + y) / 2.0), RealVector((x - y) / 2.0));
}

CheckReport edidin_check(const RealProjectionFamily& family,
                         const SearchBudget& budget, const Tolerance& tol) {
  tol.validate();
  const Eigen::Index n = family.ambient_dim();
  CheckReport rep;
  rep.seed = budget.seed;

  auto try_certify = [&](const RealVector& x) {
    auto pair = indistinguishable_pair(family, x, tol);
    if (!pair) return false;
    const RealVector& w = pair->first;
    const RealVector& v = pair->second;
    const SeparationResult sep = distinguishes(family, w, v, tol);
    if (sep.any()) return false;
    if (std::min((w - v).norm(), (w + v).norm()) <= tol.eq) return false;
    double gap = 0.0;
    for (double g : sep.norm_gaps) gap = std::max(gap, std::abs(g));
    rep.verdict = Verdict::CertifiedFail;
    rep.witness_x = w;
    rep.witness_y = v;
    rep.deficient_span_dim = span_score(family, x, n, tol).rank;
    rep.residual = gap;
    return true;
  };

  std::mt19937_64 sample_rng = substream(budget.seed, "edidin.samples");
  std::vector<std::pair<double, RealVector>> pool;
  double best = std::numeric_limits<double>::infinity();
  Eigen::Index min_dim = n;
  for (int s = 0; s < budget.samples; ++s) {
    const RealVector x = random_unit_vector(sample_rng, n);
    ++rep.samples_used;
    const SpanScore sc = span_score(family, x, n, tol);
    min_dim = std::min(min_dim, sc.rank);
    best = std::min(best, sc.score);
    if (sc.score < tol.rank && try_certify(x)) return rep;
    pool.emplace_back(sc.score, x);
  }
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::mt19937_64 restart_rng = substream(budget.seed, "edidin.restarts");
  auto objective = [&](const RealVector& u) { return span_score(family, u, n, tol).score; };
  for (int r = 0; r < budget.restarts; ++r) {
    RealVector x0 = (static_cast<std::size_t>(r) < pool.size())
                        ? pool[static_cast<std::size_t>(r)].second
                        : random_unit_vector(restart_rng, n);
    ++rep.restarts_used;
    SphereSearchOptions opt;
    opt.initial_step = 0.4;
    opt.max_evals = 400 * static_cast<int>(n);
    opt.success_value = tol.rank * 1e-3;
    const SphereSearchResult res = minimize_on_sphere(objective, x0, opt);
    const RealVector x = polish_deficiency(family, res.x, n, tol);
    const double sc = span_score(family, x, n, tol).score;
    best = std::min(best, sc);
    if (sc < tol.rank && try_certify(x)) return rep;
  }

  rep.verdict = Verdict::PassProbabilistic;
  rep.residual = best;
  rep.min_sampled_span_dim = min_dim;
  return rep;
}

// ---------------------------------------------------------------------------
// lifted hyperplane criterion (complex phase retrieval)

namespace {

struct LiftedContext {
  RealProjectionFamily lifted;
  std::function<RealVector(const ComplexVector&)> measure;
  std::string_view stream;
};

bool certify_lifted(const LiftedContext& ctx, const RealVector& x,
                    const Tolerance& tol, CheckReport& rep) {
  const Eigen::Index two_n = ctx.lifted.ambient_dim();
  const Eigen::Index hyper = two_n - 1;
  const RealMatrix rows = projected_rows(ctx.lifted, x);
  Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index r = 0;
  if (smax > 0.0) {
    while (r < sv.size() && sv(r) > tol.rank * smax) ++r;
  }
  if (r >= hyper) return false;

  RealVector xdd = lift(unlift(x)).rotated;
  xdd.normalize();
  // y must lie in the orthogonal complement of the span without being a
  // multiple of the rotated lift, otherwise the reconstructed pair collapses
  // to a unimodular rotation.
  RealVector y;
  bool found = false;
  for (Eigen::Index k = r; k < two_n; ++k) {
    const RealVector cand = svd.matrixV().col(k);
    RealVector resid = cand - cand.dot(xdd) * xdd;
    if (resid.norm() > 1e-3) {
      y = resid.normalized();
      found = true;
      break;
    }
  }
  if (!found) return false;

  const RealVector wprime = (x + y) / 2.0;
  const RealVector vprime = (x - y) / 2.0;
  const ComplexVector wc = unlift(wprime);
  const ComplexVector vc = unlift(vprime);
  const RealVector mw = ctx.measure(wc);
  const RealVector mv = ctx.measure(vc);
  const double meas_gap = (mw - mv).cwiseAbs().maxCoeff();
  if (meas_gap > tol.eq) return false;

  const double wn = wc.norm();
  const double vn = vc.norm();
  if (wn <= tol.eq && vn <= tol.eq) return false;
  if (wn > tol.eq && vn > tol.eq) {
    const auto c = scalar_between(wc, vc, tol);
    if (c && std::abs(std::abs(*c) - 1.0) <= tol.eq) return false;
  }

  rep.verdict = Verdict::CertifiedFail;
  rep.witness_x = x;
  rep.witness_y = y;
  rep.witness_cx = wc;
  rep.witness_cy = vc;
  rep.deficient_span_dim = r;
  rep.residual = meas_gap;
  return true;
}

CheckReport hyperplane_pr_check(const LiftedContext& ctx, const SearchBudget& budget,
                                const Tolerance& tol) {
  tol.validate();
  const Eigen::Index two_n = ctx.lifted.ambient_dim();
  const Eigen::Index hyper = two_n - 1;
  CheckReport rep;
  rep.seed = budget.seed;

  std::mt19937_64 sample_rng = substream(budget.seed, ctx.stream, 1);
  std::vector<std::pair<double, RealVector>> pool;
  double best = std::numeric_limits<double>::infinity();
  Eigen::Index min_dim = two_n;
  for (int s = 0; s < budget.samples; ++s) {
    const RealVector x = random_unit_vector(sample_rng, two_n);
    ++rep.samples_used;
    const RealMatrix rows = projected_rows(ctx.lifted, x);
    Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    if (smax > 0.0) {
      while (rank < sv.size() && sv(rank) > tol.rank * smax) ++rank;
    }
    min_dim = std::min(min_dim, rank);

    RealVector xdd = lift(unlift(x)).rotated;
    xdd.normalize();
    for (int j = 0; j < rows.rows(); ++j) {
      rep.max_lift_ortho = std::max(rep.max_lift_ortho, std::abs(rows.row(j).dot(xdd)));
    }

    double score = 0.0;
    if (rows.rows() >= hyper && sv.size() >= hyper && smax > 0.0) {
      score = sv(hyper - 1) / smax;
    }
    best = std::min(best, score);

    if (rank < hyper) {
      if (certify_lifted(ctx, x, tol, rep)) return rep;
    } else {
      // Hyperplane spans: its one-dimensional complement must be the line of
      // the rotated lift.
      const double align = std::abs(svd.matrixV().col(hyper).dot(xdd));
      if (align < 1.0 - 1e-6) rep.spotcheck_ok = false;
    }
    pool.emplace_back(score, x);
  }
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::mt19937_64 restart_rng = substream(budget.seed, ctx.stream, 2);
  auto objective = [&](const RealVector& u) {
    return span_score(ctx.lifted, u, hyper, tol).score;
  };
  for (int r = 0; r < budget.restarts; ++r) {
    RealVector x0 = (static_cast<std::size_t>(r) < pool.size())
                        ? pool[static_cast<std::size_t>(r)].second
                        : random_unit_vector(restart_rng, two_n);
    ++rep.restarts_used;
    SphereSearchOptions opt;
    opt.initial_step = 0.4;
    opt.max_evals = 400 * static_cast<int>(two_n);
    opt.success_value = tol.rank * 1e-3;
    const SphereSearchResult res = minimize_on_sphere(objective, x0, opt);
    const RealVector x = polish_deficiency(ctx.lifted, res.x, hyper, tol);
    const double sc = span_score(ctx.lifted, x, hyper, tol).score;
    best = std::min(best, sc);
    if (sc < tol.rank && certify_lifted(ctx, x, tol, rep)) return rep;
  }

  rep.verdict = Verdict::PassProbabilistic;
  rep.residual = best;
  rep.min_sampled_span_dim = min_dim;
  return rep;
}

}  // namespace

CheckReport complex_pr_check(const std::vector<ComplexVector>& vectors,
                             const SearchBudget& budget, const Tolerance& tol) {
  if (vectors.empty()) throw std::invalid_argument("complex_pr_check: empty family");
  std::vector<RealSubspace> lifted;
  lifted.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.norm() <= tol.eq) {
      throw std::invalid_argument("complex_pr_check: zero vector in family");
    }
    if (v.size() != vectors.front().size()) {
      throw std::invalid_argument("complex_pr_check: mixed dimensions");
    }
    lifted.push_back(rank2(v, tol).subspace);
  }
  LiftedContext ctx{
      RealProjectionFamily(std::move(lifted)),
      [&vectors](const ComplexVector& xc) {
        RealVector m(static_cast<Eigen::Index>(vectors.size()));
        for (std::size_t j = 0; j < vectors.size(); ++j) {
          m(static_cast<Eigen::Index>(j)) = std::abs(hermitian_inner(xc, vectors[j]));
        }
        return m;
      },
      "complex_pr"};
  return hyperplane_pr_check(ctx, budget, tol);
}

CheckReport complex_projection_pr_check(const std::vector<ComplexSubspace>& subspaces,
                                        const SearchBudget& budget,
                                        const Tolerance& tol) {
  if (subspaces.empty()) {
    throw std::invalid_argument("complex_projection_pr_check: empty family");
  }
  std::vector<RealSubspace> lifted;
  lifted.reserve(subspaces.size());
  for (const auto& w : subspaces) {
    if (w.ambient_dim() != subspaces.front().ambient_dim()) {
      throw std::invalid_argument("complex_projection_pr_check: mixed ambient dimensions");
    }
    lifted.push_back(lift_subspace(w, tol).lifted);
  }
  LiftedContext ctx{
      RealProjectionFamily(std::move(lifted)),
      [&subspaces](const ComplexVector& xc) {
        RealVector m(static_cast<Eigen::Index>(subspaces.size()));
        for (std::size_t j = 0; j < subspaces.size(); ++j) {
          m(static_cast<Eigen::Index>(j)) = subspaces[j].project(xc).norm();
        }
        return m;
      },
      "complex_projection_pr"};
  return hyperplane_pr_check(ctx, budget, tol);
}

SupportStats nonvanishing_support_stats(const std::vector<ComplexVector>& vectors,
                                        const ComplexVector& x, const Tolerance& tol) {
  if (x.norm() <= tol.eq) {
    throw std::invalid_argument("nonvanishing_support_stats: zero vector");
  }
  SupportStats out;
  std::vector<ComplexVector> in_support;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (std::abs(hermitian_inner(x, vectors[i])) > tol.eq) {
      out.support.push_back(static_cast<int>(i));
      in_support.push_back(vectors[i]);
    }
  }
  out.support_size = static_cast<int>(out.support.size());
  out.support_span_dim = in_support.empty() ? 0 : tolerant_rank(in_support, tol);
  return out;
}

// ---------------------------------------------------------------------------
// norm retrieval

namespace {

// Distance from x to span{P_i x}, as a fraction of ||x||. Optionally returns
// the orthogonal part of x itself (which has nonzero pairing with x whenever
// the distance is positive).
double nr_residual(const RealProjectionFamily& family, const RealVector& x,
                   const Tolerance& tol, RealVector* orth_out = nullptr) {
  const RealMatrix rows = projected_rows(family, x);
  Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index r = 0;
  if (smax > 0.0) {
    while (r < sv.size() && sv(r) > tol.rank * smax) ++r;
  }
  RealVector proj = RealVector::Zero(x.size());
  for (Eigen::Index k = 0; k < r; ++k) {
    const RealVector b = svd.matrixV().col(k);
    proj += b.dot(x) * b;
  }
  RealVector orth = x - proj;
  if (orth_out) *orth_out = orth;
  return orth.norm() / x.norm();
}

}  // namespace

CheckReport norm_retrieval_check(const RealProjectionFamily& family,
                                 const SearchBudget& budget, const Tolerance& tol) {
  tol.validate();
  const Eigen::Index n = family.ambient_dim();
  CheckReport rep;
  rep.seed = budget.seed;

  auto try_certify = [&](const RealVector& x) {
    RealVector w;
    const double res = nr_residual(family, x, tol, &w);
    if (res <= tol.eq) return false;
    const RealVector a = (x + w) / 2.0;
    const RealVector b = (x - w) / 2.0;
    const SeparationResult sep = distinguishes(family, a, b, tol);
    if (sep.any()) return false;
    if (std::abs(a.norm() - b.norm()) <= tol.eq) return false;
    rep.verdict = Verdict::CertifiedFail;
    rep.witness_x = a;
    rep.witness_y = b;
    rep.residual = res;
    return true;
  };

  std::mt19937_64 sample_rng = substream(budget.seed, "norm_retrieval.samples");
  std::vector<std::pair<double, RealVector>> pool;
  double best = 0.0;
  for (int s = 0; s < budget.samples; ++s) {
    const RealVector x = random_unit_vector(sample_rng, n);
    ++rep.samples_used;
    const double res = nr_residual(family, x, tol);
    best = std::max(best, res);
    if (res > tol.eq && try_certify(x)) return rep;
    pool.emplace_back(-res, x);
  }
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::mt19937_64 restart_rng = substream(budget.seed, "norm_retrieval.restarts");
  auto objective = [&](const RealVector& u) { return -nr_residual(family, u, tol); };
  for (int r = 0; r < budget.restarts; ++r) {
    RealVector x0 = (static_cast<std::size_t>(r) < pool.size())
                        ? pool[static_cast<std::size_t>(r)].second
                        : random_unit_vector(restart_rng, n);
    ++rep.restarts_used;
    SphereSearchOptions opt;
    opt.initial_step = 0.4;
    opt.max_evals = 300 * static_cast<int>(n);
    const SphereSearchResult res = minimize_on_sphere(objective, x0, opt);
    best = std::max(best, -res.value);
    if (-res.value > tol.eq && try_certify(res.x)) return rep;
  }

  rep.verdict = Verdict::PassProbabilistic;
  rep.residual = best;
  return rep;
}

TransferReport complement_transfer_check(const RealProjectionFamily& family,
                                         int samples, std::uint64_t seed,
                                         const Tolerance& tol) {
  tol.validate();
  const Eigen::Index n = family.ambient_dim();
  const int m = family.size();
  TransferReport rep;
  rep.seed = seed;
  std::mt19937_64 rng = substream(seed, "transfer.samples");

  for (int s = 0; s < samples; ++s) {
    TransferSample sample;
    sample.y = random_unit_vector(rng, n);
    const RealVector& y = sample.y;
    RealMatrix b(n, m);
    for (int i = 0; i < m; ++i) b.col(i) = family[i].project(y);

    Eigen::JacobiSVD<RealMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index r = 0;
    if (smax > 0.0) {
      while (r < sv.size() && sv(r) > tol.rank * smax) ++r;
    }
    const RealVector a0 = svd.solve(y);
    const double lsq_residual = (b * a0 - y).norm();
    const bool consistent = lsq_residual <= tol.rank;

    // Null directions of a -> sum_i a_i P_i y, and their coefficient sums.
    std::optional<Eigen::Index> free_sum_dir;
    for (Eigen::Index k = r; k < m; ++k) {
      if (std::abs(svd.matrixV().col(k).sum()) > tol.eq) {
        free_sum_dir = k;
        break;
      }
    }

    if (consistent) {
      const double sum0 = a0.sum();
      if (std::abs(sum0 - 1.0) > tol.eq) {
        sample.solution = CoefficientSolution{a0, sum0,
                                              CoefficientSolution::Kind::Reproducing,
                                              lsq_residual};
      } else if (free_sum_dir) {
        // The sum functional is free along the solution set; move to sum = 2.
        const RealVector dir = svd.matrixV().col(*free_sum_dir);
        const RealVector a = a0 + dir / dir.sum();
        sample.solution = CoefficientSolution{a, a.sum(),
                                              CoefficientSolution::Kind::Reproducing,
                                              (b * a - y).norm()};
      }
      // else: every reproducing solution has coefficient sum exactly 1 and no
      // annihilating combination can have nonzero sum; the condition fails.
    } else if (free_sum_dir) {
      const RealVector dir = svd.matrixV().col(*free_sum_dir);
      const RealVector a = dir / dir.sum();  // annihilating, sum normalized to 1
      sample.solution = CoefficientSolution{a, 1.0,
                                            CoefficientSolution::Kind::Annihilating,
                                            (b * a).norm()};
    }

    if (!sample.solution) rep.holds_at_all_samples = false;
    rep.samples.push_back(std::move(sample));
  }
  return rep;
}

template <typename Scalar>
ProjectionFamily<Scalar> complement_family(const ProjectionFamily<Scalar>& family,
                                           const Tolerance& tol) {
  std::vector<Subspace<Scalar>> out;
  out.reserve(static_cast<std::size_t>(family.size()));
  for (int i = 0; i < family.size(); ++i) {
    out.push_back(orthogonal_complement(family[i], tol));
  }
  return ProjectionFamily<Scalar>(std::move(out));
}

// explicit instantiations for the two supported fields
template ProjectionFamily<double> rank_one_family(const std::vector<RealVector>&, const Tolerance&);
template ProjectionFamily<Complex> rank_one_family(const std::vector<ComplexVector>&, const Tolerance&);
template SeparationResult distinguishes(const ProjectionFamily<double>&, const RealVector&,
                                        const RealVector&, const Tolerance&);
template SeparationResult distinguishes(const ProjectionFamily<Complex>&, const ComplexVector&,
                                        const ComplexVector&, const Tolerance&);
template CheckReport complement_property(const std::vector<RealVector>&, Eigen::Index, const Tolerance&);
template CheckReport complement_property(const std::vector<ComplexVector>&, Eigen::Index, const Tolerance&);
template SparkReport full_spark(const std::vector<RealVector>&, Eigen::Index, const Tolerance&);
template SparkReport full_spark(const std::vector<ComplexVector>&, Eigen::Index, const Tolerance&);
template ProjectionFamily<double> complement_family(const ProjectionFamily<double>&, const Tolerance&);
template ProjectionFamily<Complex> complement_family(const ProjectionFamily<Complex>&, const Tolerance&);

}  // namespace framelift
