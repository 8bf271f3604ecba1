#include "ifs/moments.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ifs/errors.hpp"

namespace ifs {

namespace {

struct TermSet {
  double mean_expansion;
  double mean_displacement;
  double lyapunov_upper;
  double lyapunov_lower;
  double entropy;
};

TermSet terms_at(const IfsSystem& sys, Symbol i, const Vec& x0) {
  MapSpec m = sys.map_spec(i);
  double p = sys.probabilities().p(i);
  return {p * m.upper_lipschitz, p * distance(m.apply(x0), x0),
          p * std::log(m.upper_lipschitz), p * std::log(m.lower_lipschitz),
          p * std::log(p)};
}

Enclosure sum_exact_or_infinite(std::vector<double>& terms) {
  for (double t : terms)
    if (!std::isfinite(t))
      return Enclosure::infinite(t < 0 ? -1 : 1);
  return Enclosure::exact(sum_order_independent(std::move(terms)));
}

MomentReport finite_sums(const IfsSystem& sys, const Vec& x0) {
  std::size_t m = sys.map_count();
  std::vector<double> exp_t, disp_t, lup_t, llo_t, ent_t;
  exp_t.reserve(m), disp_t.reserve(m), lup_t.reserve(m), llo_t.reserve(m),
      ent_t.reserve(m);
  for (Symbol i = 1; i <= m; ++i) {
    TermSet t = terms_at(sys, i, x0);
    exp_t.push_back(t.mean_expansion);
    disp_t.push_back(t.mean_displacement);
    lup_t.push_back(t.lyapunov_upper);
    llo_t.push_back(t.lyapunov_lower);
    ent_t.push_back(t.entropy);
  }
  MomentReport rep;
  rep.mean_expansion = sum_exact_or_infinite(exp_t);
  rep.mean_displacement = sum_exact_or_infinite(disp_t);
  rep.lyapunov_upper = sum_exact_or_infinite(lup_t);
  rep.lyapunov_lower = sum_exact_or_infinite(llo_t);
  rep.entropy = sum_exact_or_infinite(ent_t);
  rep.x0 = x0;
  rep.terms_used = m;
  return rep;
}

// Envelope |log p_i| <= |log(1-q)| + i |log q| for the geometric law.
AffineEnvelope log_p_envelope(const ProbabilityVector& p) {
  double q = p.ratio();
  return {std::abs(std::log1p(-q)), std::abs(std::log(q)), 1};
}

double tail_bound(const AffineEnvelope& env, const ProbabilityVector& p,
                  std::uint32_t n) {
  return env.a * p.tail_mass(n) + env.b * p.tail_first_moment(n);
}

MomentReport family_sums(const IfsSystem& sys, const Vec& x0, double tol) {
  const ProbabilityVector& p = sys.probabilities();
  const SeriesEnvelopes& env = sys.family().envelopes();
  AffineEnvelope disp_env{
      env.expansion.a * x0.norm() + env.displacement0.a + x0.norm(),
      env.expansion.b * x0.norm() + env.displacement0.b,
      std::max(env.expansion.i0, env.displacement0.i0)};
  AffineEnvelope logp_env = log_p_envelope(p);

  struct Series {
    const char* name;
    AffineEnvelope env;
    NeumaierSum sum;
    double tail = 0.0;
  };
  Series series[5] = {{"mean_expansion", env.expansion},
                      {"mean_displacement", disp_env},
                      {"lyapunov_upper", env.abs_log_expansion},
                      {"lyapunov_lower", env.abs_log_lower},
                      {"entropy", logp_env}};

  const std::uint32_t n_cap = 200000;
  std::uint32_t min_n = 1;
  for (const Series& s : series) min_n = std::max(min_n, s.env.i0);

  std::uint32_t n = 0;
  for (n = 1; n <= n_cap; ++n) {
    TermSet t = terms_at(sys, n, x0);
    double pi = p.p(n);
    double mags[5] = {t.mean_expansion, t.mean_displacement,
                      std::abs(t.lyapunov_upper), std::abs(t.lyapunov_lower),
                      std::abs(t.entropy)};
    double vals[5] = {t.mean_expansion, t.mean_displacement, t.lyapunov_upper,
                      t.lyapunov_lower, t.entropy};
    for (int k = 0; k < 5; ++k) {
      if (n >= series[k].env.i0 &&
          mags[k] > pi * series[k].env.eval(n) * (1.0 + 1e-9) + 1e-300)
        throw DivergentSeries(series[k].name,
                              std::string(series[k].name) +
                                  ": term escapes its envelope at index " +
                                  std::to_string(n));
      series[k].sum.add(vals[k]);
    }
    if (n >= min_n) {
      bool done = true;
      for (Series& s : series) {
        s.tail = tail_bound(s.env, p, n);
        if (!(s.tail <= tol)) done = false;
      }
      if (done) break;
    }
  }
  if (n > n_cap)
    throw DivergentSeries("moment_sums",
                          "tail bounds did not reach the tolerance");

  MomentReport rep;
  rep.mean_expansion = {series[0].sum.value(), series[0].tail, true, 0};
  rep.mean_displacement = {series[1].sum.value(), series[1].tail, true, 0};
  rep.lyapunov_upper = {series[2].sum.value(), series[2].tail, true, 0};
  rep.lyapunov_lower = {series[3].sum.value(), series[3].tail, true, 0};
  rep.entropy = {series[4].sum.value(), series[4].tail, true, 0};
  rep.x0 = x0;
  rep.terms_used = n;
  return rep;
}

}  // namespace

Vec default_base_point(const IfsSystem& sys) {
  Vec origin(sys.space().dim);
  return sys.space().contains(origin) ? origin : sys.space().reference_point();
}

MomentReport moment_sums(const IfsSystem& sys, const Vec& x0, double tol) {
  if (x0.dim() != sys.space().dim)
    throw InvalidArgument("moment_sums: base point dim mismatch");
  if (!(tol > 0.0)) throw InvalidArgument("moment_sums: tol must be > 0");
  return sys.is_finite() ? finite_sums(sys, x0) : family_sums(sys, x0, tol);
}

MomentReport moment_sums(const IfsSystem& sys, double tol) {
  return moment_sums(sys, default_base_point(sys), tol);
}

MembershipFlags check_membership(const MomentReport& m) {
  MembershipFlags f;
  f.mean_expansion_finite = m.mean_expansion.finite;
  f.mean_displacement_finite = m.mean_displacement.finite;
  f.lyapunov_upper_negative = m.lyapunov_upper.finite && m.lyapunov_upper.hi() < 0.0;
  f.entropy_finite = m.entropy.finite;
  f.lyapunov_lower_finite = m.lyapunov_lower.finite;
  f.lyapunov_lower_negative =
      m.lyapunov_lower.finite && m.lyapunov_lower.hi() < 0.0;
  return f;
}

BoundsReport dimension_bounds(const IfsSystem& sys, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("dimension_bounds: tol must be > 0");
  Vec x0 = default_base_point(sys);
  double series_tol = tol;
  for (int pass = 0; pass < 8; ++pass) {
    MomentReport m = moment_sums(sys, x0, series_tol);
    MembershipFlags f = check_membership(m);
    if (!f.mean_expansion_finite)
      throw HypothesisViolated("mean_expansion_finite",
                               "mean expansion factor is not finite");
    if (!f.mean_displacement_finite)
      throw HypothesisViolated("mean_displacement_finite",
                               "mean displacement is not finite");
    if (!f.lyapunov_upper_negative)
      throw HypothesisViolated("lyapunov_upper_negative",
                               "log-mean upper factor is not strictly negative");
    if (!f.entropy_finite)
      throw HypothesisViolated("entropy_finite", "entropy sum diverges");
    if (!f.lyapunov_lower_finite)
      throw HypothesisViolated("lyapunov_lower_finite",
                               "log-mean lower factor is not finite");
    if (!f.lyapunov_lower_negative)
      throw HypothesisViolated("lyapunov_lower_negative",
                               "log-mean lower factor is not strictly negative");

    BoundsReport rep;
    rep.dim_lower = divide_negative_denominator(m.entropy, m.lyapunov_lower);
    rep.dim_upper = divide_negative_denominator(m.entropy, m.lyapunov_upper);
    rep.flags = f;
    rep.moments = m;
    rep.notes = sys.notes;
    if (rep.dim_lower.radius <= tol && rep.dim_upper.radius <= tol) return rep;
    series_tol /= 10.0;
  }
  throw DivergentSeries("dimension_bounds",
                        "quotient radii did not reach the tolerance");
}

}  // namespace ifs
