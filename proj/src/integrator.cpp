#include "ucred/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "ucred/errors.hpp"

namespace ucred {

namespace {

// Dormand-Prince 5(4) with the continuous extension of Hairer-Norsett-Wanner.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

using Vec = std::vector<double>;

struct Segment {
  Vec from, dir;  // unit direction
  double start = 0.0, length = 0.0;
};

class PathSystem {
 public:
  PathSystem(const ParameterSet& ps, int L, int N) : ps_(ps), pt_(L, N) {}

  std::vector<double> s_at(const Segment& seg, double tau) const {
    Vec s(seg.from.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = seg.from[k] + tau * seg.dir[k];
    return s;
  }

  void load(const Segment& seg, double tau, const Vec& y) {
    pt_.s = s_at(seg, tau);
    std::size_t d = pt_.q.size();
    std::copy(y.begin(), y.begin() + d, pt_.q.begin());
    std::copy(y.begin() + d, y.end(), pt_.p.begin());
  }

  void rhs(const Segment& seg, double tau, const Vec& y, Vec& out) {
    load(seg, tau, y);
    ++evaluations;
    std::size_t d = pt_.q.size();
    out.assign(2 * d, 0.0);
    for (int j = 1; j <= pt_.N; ++j) {
      double w = seg.dir[j - 1];
      if (w == 0.0) continue;
      auto fv = vector_field(ps_, pt_, j);
      for (std::size_t k = 0; k < d; ++k) {
        out[k] += w * fv.dq[k];
        out[d + k] += w * fv.dp[k];
      }
    }
  }

  PhasePoint<double> point(const Segment& seg, double tau, const Vec& y) {
    load(seg, tau, y);
    return pt_;
  }

  long evaluations = 0;

 private:
  const ParameterSet& ps_;
  PhasePoint<double> pt_;
};

// First tau in [0, len] where the segment comes within margin of the
// singular locus; len if it never does.
double first_contact(const Segment& seg, double margin) {
  const std::size_t n = seg.from.size();
  double best = seg.length;
  auto visit = [&](double alpha, double beta) {
    if (std::abs(alpha) <= margin) {
      best = 0.0;
      return;
    }
    if (beta == 0.0) return;
    double target = alpha > 0 ? margin : -margin;
    double tau = (target - alpha) / beta;
    if (tau >= 0.0 && tau < best) best = tau;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visit(seg.from[i], seg.dir[i]);
    visit(seg.from[i] - 1.0, seg.dir[i]);
    for (std::size_t j = i + 1; j < n; ++j) visit(seg.from[i] - seg.from[j], seg.dir[i] - seg.dir[j]);
  }
  return best;
}

void axpy_into(Vec& out, const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  out = y;
  for (const auto& [c, k] : terms)
    if (c != 0.0)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
}

}  // namespace

double singular_distance(const std::vector<double>& s) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    d = std::min({d, std::abs(s[i]), std::abs(s[i] - 1.0)});
    for (std::size_t j = i + 1; j < s.size(); ++j) d = std::min(d, std::abs(s[i] - s[j]));
  }
  return d;
}

Trajectory integrate(const ParameterSet& params, const PhasePoint<double>& pt0,
                     const std::vector<std::vector<double>>& waypoints, const IntegratorOptions& opt) {
  if (waypoints.empty()) throw PreconditionError("path needs at least one waypoint");
  const int N = pt0.N;
  for (const auto& w : waypoints)
    if (static_cast<int>(w.size()) != N) throw PreconditionError("waypoint dimension differs from N");
  for (int k = 0; k < N; ++k)
    if (std::abs(waypoints.front()[k] - pt0.s[k]) > 1e-14 * (1.0 + std::abs(pt0.s[k])))
      throw PreconditionError("path must start at the initial point");
  if (!(opt.rtol > 0) || !(opt.atol >= 0)) throw PreconditionError("tolerances must be positive");
  if (singular_distance(pt0.s) <= opt.margin) throw SingularityError("initial point lies within the singular margin");

  std::vector<Segment> segs;
  double total = 0.0;
  for (std::size_t k = 1; k < waypoints.size(); ++k) {
    Segment sg;
    sg.from = waypoints[k - 1];
    sg.dir.resize(N);
    double len = 0.0;
    for (int i = 0; i < N; ++i) len += std::pow(waypoints[k][i] - waypoints[k - 1][i], 2);
    len = std::sqrt(len);
    if (len == 0.0) continue;
    for (int i = 0; i < N; ++i) sg.dir[i] = (waypoints[k][i] - waypoints[k - 1][i]) / len;
    sg.start = total;
    sg.length = len;
    total += len;
    segs.push_back(std::move(sg));
  }

  Trajectory tr;
  tr.rtol = opt.rtol;
  tr.atol = opt.atol;
  tr.length = total;
  PathSystem sys(params, pt0.L, N);
  const std::size_t d = pt0.q.size();
  Vec y(2 * d);
  std::copy(pt0.q.begin(), pt0.q.end(), y.begin());
  std::copy(pt0.p.begin(), pt0.p.end(), y.begin() + d);

  std::vector<double> wanted = opt.samples;
  std::sort(wanted.begin(), wanted.end());
  std::size_t next_sample = 0;
  auto record = [&](long step, double param, const PhasePoint<double>& pt) {
    TrajectorySample smp{step, param, pt, {}};
    for (int j = 1; j <= N; ++j) smp.H.push_back(hamiltonian(params, pt, j));
    tr.samples.push_back(std::move(smp));
  };
  auto skip_samples_upto = [&](double param) {
    while (next_sample < wanted.size() && wanted[next_sample] <= param + 1e-15) ++next_sample;
  };

  bool every_step = wanted.empty();
  if (every_step || (!wanted.empty() && wanted.front() <= 0.0)) record(0, 0.0, pt0);
  skip_samples_upto(0.0);
  tr.last_good = pt0;
  tr.last_good_param = 0.0;

  Vec k1, k2, k3, k4, k5, k6, k7, tmp, y1;
  long step = 0;
  double h = 0.0;
  for (const auto& seg : segs) {
    double stop = first_contact(seg, opt.margin);
    bool will_abort = stop < seg.length;
    double tau = 0.0, tend = will_abort ? stop : seg.length;
    sys.rhs(seg, tau, y, k1);
    if (h == 0.0) {
      double n0 = 0.0, n1 = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        double sk = opt.atol + opt.rtol * std::abs(y[i]);
        n0 += std::pow(y[i] / sk, 2);
        n1 += std::pow(k1[i] / sk, 2);
      }
      n0 = std::sqrt(n0 / y.size());
      n1 = std::sqrt(n1 / y.size());
      h = (n0 < 1e-5 || n1 < 1e-5) ? 1e-6 : 0.01 * n0 / n1;
      h = std::min(h, 0.1 * std::max(tend, 1e-12));
    }
    bool last_rejected = false;
    while (tau < tend) {
      if (++step > opt.max_steps) throw IntegrationError("step budget exhausted");
      if (h < opt.h_min) throw IntegrationError("step size underflow at path parameter " + std::to_string(seg.start + tau));
      bool final_step = false;
      if (tau + h >= tend) {
        h = tend - tau;
        final_step = true;
      }
      axpy_into(tmp, y, h, {{a21, &k1}});
      sys.rhs(seg, tau + c2 * h, tmp, k2);
      axpy_into(tmp, y, h, {{a31, &k1}, {a32, &k2}});
      sys.rhs(seg, tau + c3 * h, tmp, k3);
      axpy_into(tmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
      sys.rhs(seg, tau + c4 * h, tmp, k4);
      axpy_into(tmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
      sys.rhs(seg, tau + c5 * h, tmp, k5);
      axpy_into(tmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
      sys.rhs(seg, tau + h, tmp, k6);
      axpy_into(y1, y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
      sys.rhs(seg, tau + h, y1, k7);
      double err = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double sk = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
        err += (e / sk) * (e / sk);
      }
      err = std::sqrt(err / y.size());
      if (!std::isfinite(err)) {
        ++tr.rejected;
        h *= 0.2;
        last_rejected = true;
        continue;
      }
      double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, last_rejected ? 1.0 : 5.0);
      if (err > 1.0) {
        ++tr.rejected;
        h *= fac;
        last_rejected = true;
        continue;
      }
      ++tr.accepted;
      double tnew = final_step ? tend : tau + h;
      // Dense output between tau and tnew.
      while (!every_step && next_sample < wanted.size() && wanted[next_sample] <= seg.start + tnew + 1e-15) {
        double th = (wanted[next_sample] - seg.start - tau) / h;
        th = std::clamp(th, 0.0, 1.0);
        double th1 = 1.0 - th;
        Vec yd(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
          double ydiff = y1[i] - y[i];
          double bspl = h * k1[i] - ydiff;
          double r4 = ydiff - h * k7[i] - bspl;
          double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
          yd[i] = y[i] + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)));
        }
        record(step, wanted[next_sample], sys.point(seg, tau + th * h, yd));
        ++next_sample;
      }
      y.swap(y1);
      k1.swap(k7);
      tau = tnew;
      if (every_step) record(step, seg.start + tau, sys.point(seg, tau, y));
      tr.last_good = sys.point(seg, tau, y);
      tr.last_good_param = seg.start + tau;
      h *= fac;
      last_rejected = false;
    }
    if (will_abort) {
      tr.aborted = true;
      tr.message = "singular locus within margin at path parameter " + std::to_string(seg.start + stop);
      tr.evaluations = sys.evaluations;
      return tr;
    }
  }
  if (!every_step && (tr.samples.empty() || tr.samples.back().path_param < total)) {
    if (next_sample < wanted.size()) record(step, total, tr.last_good);
  }
  tr.evaluations = sys.evaluations;
  return tr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.samples.empty()) return;
  const auto& p0 = traj.samples.front().point;
  os << "step,path_param";
  for (int i = 1; i <= p0.N; ++i) os << ",s" << i;
  for (int i = 1; i <= p0.N; ++i)
    for (int n = 1; n < p0.L; ++n) os << ",q_" << n << "_" << i;
  for (int i = 1; i <= p0.N; ++i)
    for (int n = 1; n < p0.L; ++n) os << ",p_" << n << "_" << i;
  for (int i = 1; i <= p0.N; ++i) os << ",H" << i;
  os << "\n";
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, ",%.17g", x);
    os << buf;
  };
  for (const auto& smp : traj.samples) {
    os << smp.step;
    std::snprintf(buf, sizeof buf, "%.17g", smp.path_param);
    os << "," << buf;
    for (double x : smp.point.s) put(x);
    for (double x : smp.point.q) put(x);
    for (double x : smp.point.p) put(x);
    for (double x : smp.H) put(x);
    os << "\n";
  }
}

}  // namespace ucred
