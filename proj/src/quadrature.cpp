#include "vmcorr/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace vmcorr::quadrature {

namespace {

// Density exponent with the means removed (the grid is periodic, so
// integrating in the centred angles is exact).
double exponent(const ModelParams& p, double a, double b) {
  if (p.family == Family::Sine) {
    return p.kappa1 * std::cos(a) + p.kappa2 * std::cos(b) + p.assoc * std::sin(a) * std::sin(b);
  }
  return p.kappa1 * std::cos(a) + p.kappa2 * std::cos(b) + p.assoc * std::cos(a - b);
}

double scale_of(const ModelParams& p) { return p.kappa1 + p.kappa2 + std::fabs(p.assoc); }

}  // namespace

double integrate_torus(const std::function<double(double, double)>& f, GridSpec grid) {
  using One = Eigen::Array<double, 1, 1>;
  return integrate_torus_vec<1>([&](double t, double p) { return One(f(t, p)); }, grid)(0);
}

double oracle_constant(const ModelParams& params, GridSpec grid) {
  const double scale = scale_of(params);
  const double scaled = integrate_torus(
      [&](double a, double b) { return std::exp(exponent(params, a, b) - scale); }, grid);
  return scaled * std::exp(scale);
}

SeriesBundle oracle_bundle(const ModelParams& params, GridSpec grid) {
  using V = Eigen::Array<double, 8, 1>;
  const double scale = scale_of(params);
  const bool sine = params.family == Family::Sine;
  int used = 0;
  const V v = integrate_torus_vec<8>(
      [&](double a, double b) {
        const double w = std::exp(exponent(params, a, b) - scale);
        const double ca = std::cos(a), cb = std::cos(b), sa = std::sin(a), sb = std::sin(b);
        V out;
        out << 1.0, ca, cb, sine ? sa * sb : std::cos(a - b), ca * ca, cb * cb, ca * cb,
            sine ? sa * sb - ca * cb : sa * sb;
        return V(out * w);
      },
      grid, &used);

  const double shift = std::floor(std::log(v(0)));
  const V stored = v * std::exp(-shift);
  SeriesBundle b;
  b.c = stored(0);
  b.d_k1 = stored(1);
  b.d_k2 = stored(2);
  b.d_assoc = stored(3);
  b.d_k1k1 = stored(4);
  b.d_k2k2 = stored(5);
  b.d_k1k2 = stored(6);
  b.d_assoc_minus_k1k2 = stored(7);
  b.terms_used = used;
  b.converged = true;
  b.log_scale_exponent = scale + shift;
  return b;
}

OracleMoments oracle_moments(const ModelParams& params, GridSpec grid) {
  using V = Eigen::Array<double, 9, 1>;
  const double scale = scale_of(params);
  const V v = integrate_torus_vec<9>(
      [&](double a, double b) {
        const double w = std::exp(exponent(params, a, b) - scale);
        const double ca = std::cos(a), cb = std::cos(b), sa = std::sin(a), sb = std::sin(b);
        V out;
        out << 1.0, ca, cb, ca * ca, cb * cb, sa * sb, ca * cb, sb * ca, sa * cb;
        return V(out * w);
      },
      grid);
  OracleMoments m;
  m.trig.e_cos_t = v(1) / v(0);
  m.trig.e_cos_p = v(2) / v(0);
  m.trig.e_cos2_t = v(3) / v(0);
  m.trig.e_cos2_p = v(4) / v(0);
  m.trig.e_ss = v(5) / v(0);
  m.trig.e_cc = v(6) / v(0);
  m.e_sin_p_cos_t = v(7) / v(0);
  m.e_sin_t_cos_p = v(8) / v(0);
  return m;
}

Eigen::ArrayXd conditional_slice(const ModelParams& params, double theta, int points) {
  if (points < 8) throw InvalidArgument("slice needs at least 8 points");
  const double h = 2 * std::numbers::pi / points;
  Eigen::ArrayXd e(points);
  for (int j = 0; j < points; ++j) {
    const double phi = -std::numbers::pi + h * j;
    e(j) = exponent(params, theta - params.mu1, phi - params.mu2);
  }
  Eigen::ArrayXd w = (e - e.maxCoeff()).exp();
  return w / (w.sum() * h);
}

std::vector<OracleComparison> compare_with_oracle(const ModelParams& params,
                                                  const SeriesControl& control, GridSpec grid) {
  const SeriesBundle s = normalizing_bundle(params, control);
  const SeriesBundle q = oracle_bundle(params, grid);
  const TrigMoments ms = trig_moments(params.family, s);
  const TrigMoments mq = oracle_moments(params, grid).trig;

  std::vector<OracleComparison> out;
  auto add = [&](std::string name, double a, double b) {
    out.push_back({std::move(name), a, b, std::fabs(a - b) / std::max(std::fabs(b), kDiscrepancyFloor)});
  };
  // C itself through log C: |dlog C| is the relative error of C.
  out.push_back({"log_c", s.log_c(), q.log_c(), std::fabs(s.log_c() - q.log_c())});
  add("d_k1/c", s.d_k1 / s.c, q.d_k1 / q.c);
  add("d_k2/c", s.d_k2 / s.c, q.d_k2 / q.c);
  add("d_assoc/c", s.d_assoc / s.c, q.d_assoc / q.c);
  add("d_k1k1/c", s.d_k1k1 / s.c, q.d_k1k1 / q.c);
  add("d_k2k2/c", s.d_k2k2 / s.c, q.d_k2k2 / q.c);
  add("d_k1k2/c", s.d_k1k2 / s.c, q.d_k1k2 / q.c);
  add("d_assoc_minus_k1k2/c", s.d_assoc_minus_k1k2 / s.c, q.d_assoc_minus_k1k2 / q.c);
  add("e_cos_theta", ms.e_cos_t, mq.e_cos_t);
  add("e_cos_phi", ms.e_cos_p, mq.e_cos_p);
  add("e_cos2_theta", ms.e_cos2_t, mq.e_cos2_t);
  add("e_cos2_phi", ms.e_cos2_p, mq.e_cos2_p);
  add("e_sin_sin", ms.e_ss, mq.e_ss);
  add("e_cos_cos", ms.e_cc, mq.e_cc);
  add("rho_js", rho_js(ms), rho_js(mq));
  add("rho_fl", rho_fl(ms), rho_fl(mq));
  add("var_theta", 1 - ms.e_cos_t, 1 - mq.e_cos_t);
  add("var_phi", 1 - ms.e_cos_p, 1 - mq.e_cos_p);
  return out;
}

}  // namespace vmcorr::quadrature
