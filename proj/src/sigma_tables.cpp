#include "rlab/sigma_tables.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace rlab {
namespace {

using Coeff = std::function<double(double, double)>;

void add(Table& t, int apow, int bpow, Mono mono, Coeff c) {
  t.push_back(TableTerm{apow, bpow, mono, std::move(c)});
}

Coeff k(double value) {
  return [value](double, double) { return value; };
}

}  // namespace

TableInputs table_inputs(const AlphaData& A, const BetaData& B,
                         std::span<const double> y) {
  const ZooAtY z = contract_zoo(A, B, y);
  TableInputs in;
  in.n = B.n;
  in.b2 = B.b2;
  in.alpha = z.alpha;
  in.beta = z.beta;
  in.ralpha = A.r_alpha;
  in.rmm = B.rmm;
  in.smm = B.smm;
  in.tmm = B.tmm;
  in.qmm = B.qmm;
  in.bsimm = B.bsimm;
  in.t = B.t;
  in.ric00a = z.ric00a;
  in.ricb0a = z.ricb0a;
  in.s0 = z.s0;
  in.r0 = z.r0;
  in.t0 = z.t0;
  in.p0 = z.p0;
  in.r00 = z.r00;
  in.e00 = z.e00;
  in.q00 = z.q00;
  in.w00 = z.w00;
  in.t00 = z.t00;
  in.s00c = z.s00c;
  in.r000c = z.r000c;
  in.e000c = z.e000c;
  in.sm0m = z.sm0m;
  in.rmm0 = z.rmm0;
  in.r0mm = z.r0mm;
  in.q00ib = z.q00ib;
  in.r000ib = z.r000ib;
  in.s00ib = z.s00ib;
  return in;
}

double mono_value(Mono m, const TableInputs& z) {
  switch (m) {
    case Mono::kOne:
      return 1.0;
    case Mono::kRalpha:
      return z.ralpha;
    case Mono::kTmm:
      return z.tmm;
    case Mono::kBsimm:
      return z.bsimm;
    case Mono::kQmm:
      return z.qmm;
    case Mono::kSmm:
      return z.smm;
    case Mono::kT:
      return z.t;
    case Mono::kRic00a:
      return z.ric00a;
    case Mono::kRicb0a:
      return z.ricb0a;
    case Mono::kSm0m:
      return z.sm0m;
    case Mono::kRmm0:
      return z.rmm0;
    case Mono::kR0mm:
      return z.r0mm;
    case Mono::kS0:
      return z.s0;
    case Mono::kR0:
      return z.r0;
    case Mono::kT0:
      return z.t0;
    case Mono::kP0:
      return z.p0;
    case Mono::kQ00ib:
      return z.q00ib;
    case Mono::kS00ib:
      return z.s00ib;
    case Mono::kR000ib:
      return z.r000ib;
    case Mono::kRmmS0:
      return z.rmm * z.s0;
    case Mono::kR0S0:
      return z.r0 * z.s0;
    case Mono::kS0S0:
      return z.s0 * z.s0;
    case Mono::kQ00:
      return z.q00;
    case Mono::kW00:
      return z.w00;
    case Mono::kT00:
      return z.t00;
    case Mono::kS00c:
      return z.s00c;
    case Mono::kRmmR00:
      return z.rmm * z.r00;
    case Mono::kS0R00:
      return z.s0 * z.r00;
    case Mono::kR0R00:
      return z.r0 * z.r00;
    case Mono::kR000c:
      return z.r000c;
    case Mono::kR00R00:
      return z.r00 * z.r00;
    case Mono::kRmmE00:
      return z.rmm * z.e00;
    case Mono::kS0E00:
      return z.s0 * z.e00;
    case Mono::kR0E00:
      return z.r0 * z.e00;
    case Mono::kE000c:
      return z.e000c;
    case Mono::kE00E00:
      return z.e00 * z.e00;
  }
  return 0.0;
}

const char* mono_label(Mono m) {
  switch (m) {
    case Mono::kOne:
      return "1";
    case Mono::kRalpha:
      return "r_alpha";
    case Mono::kTmm:
      return "t^m_m";
    case Mono::kBsimm:
      return "b^i s^m_{i;m}";
    case Mono::kQmm:
      return "q^m_m";
    case Mono::kSmm:
      return "s^m_{;m}";
    case Mono::kT:
      return "t";
    case Mono::kRic00a:
      return "Ric_00";
    case Mono::kRicb0a:
      return "Ric_b0";
    case Mono::kSm0m:
      return "s^m_{0;m}";
    case Mono::kRmm0:
      return "r^m_{m;0}";
    case Mono::kR0mm:
      return "r^m_{0;m}";
    case Mono::kS0:
      return "s_0";
    case Mono::kR0:
      return "r_0";
    case Mono::kT0:
      return "t_0";
    case Mono::kP0:
      return "p_0";
    case Mono::kQ00ib:
      return "(q_00 + q'_00)b";
    case Mono::kS00ib:
      return "(s_{0;0} + s'_{0;0})b";
    case Mono::kR000ib:
      return "(2r_{00;0} + r_{00;0}')b";
    case Mono::kR000c:
      return "r_{00;0}";
    case Mono::kRmmS0:
      return "r^m_m s_0";
    case Mono::kR0S0:
      return "r_0 s_0";
    case Mono::kS0S0:
      return "s_0^2";
    case Mono::kQ00:
      return "q_00";
    case Mono::kW00:
      return "w_00";
    case Mono::kT00:
      return "t_00";
    case Mono::kS00c:
      return "s_{0;0}";
    case Mono::kRmmR00:
      return "r^m_m r_00";
    case Mono::kS0R00:
      return "s_0 r_00";
    case Mono::kR0R00:
      return "r_0 r_00";
    case Mono::kR00R00:
      return "r_00^2";
    case Mono::kRmmE00:
      return "r^m_m e_00";
    case Mono::kS0E00:
      return "s_0 e_00";
    case Mono::kR0E00:
      return "r_0 e_00";
    case Mono::kE000c:
      return "e_{00;0}";
    case Mono::kE00E00:
      return "e_00^2";
  }
  return "?";
}

TableVariants transcribed_variants() { return TableVariants{}; }

TableVariants operative_variants() {
  // Pinned by the arbitration in termdiff.cpp.  The slot values are forced
  // three independent ways: the two analytic benchmarks (Funk ball and flat
  // polynomial beta, closed-form W on both), the requirement that the
  // eliminations map S2 onto G2, and the least-squares attribution against
  // the definitional oracle (see the arbitration report emitted by the
  // acceptance run).  With the r_0 r_00 sign at -1, the eliminations spill
  // +72(n-1) beta s_0 r_0 into G2, which is what pins the s_0 r_0 inner at
  // 36.
  TableVariants v;
  v.s2_b1_r0r00_sign = -1.0;
  v.s2_b3_der_sign = -1.0;
  v.g2_b3_der_sign = -1.0;
  v.s2_b2_q00_shift = 2.0;
  v.g2_b2_q00_shift = 2.0;
  v.g2_b2_s0r0_inner = 36.0;
  v.s1_xi2_corrected = true;
  v.s2_xi2_corrected = true;
  v.g1_xi2_corrected = true;
  v.g2_xi2_corrected = true;
  return v;
}

Table sigma1_table(const TableVariants& v) {
  Table t;
  // alpha^4 beta.
  add(t, 4, 1, Mono::kTmm,
      [](double n, double b2) { return -4.0 * (2.0 * b2 + 4.0 * n + 7.0); });
  add(t, 4, 1, Mono::kBsimm, k(-24.0));
  add(t, 4, 1, Mono::kQmm, [](double n, double) { return 24.0 * (n - 1.0); });
  add(t, 4, 1, Mono::kSmm, [](double n, double) { return 12.0 * (n - 1.0); });
  add(t, 4, 1, Mono::kT, [](double n, double) { return 8.0 * (n - 1.0); });
  // alpha^4.
  add(t, 4, 0, Mono::kRicb0a, k(-8.0));
  add(t, 4, 0, Mono::kSm0m,
      [](double n, double b2) { return 4.0 * (2.0 * b2 + n + 1.0); });
  add(t, 4, 0, Mono::kT0, [](double n, double b2) {
    return -4.0 * (6.0 * b2 * n - 6.0 * b2 + n * n - 5.0);
  });
  add(t, 4, 0, Mono::kRmmS0,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kQ00ib,
      [](double n, double) { return -16.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kRmm0, [](double n, double) { return -2.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kR0mm, [](double n, double) { return -4.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kS00ib,
      [](double n, double) { return -8.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kP0, [](double n, double) { return -24.0 * (n - 1.0); });
  // alpha^2 beta^3.
  add(t, 2, 3, Mono::kTmm,
      [](double n, double) { return -4.0 * (4.0 * n + 3.0); });
  add(t, 2, 3, Mono::kBsimm, k(-8.0));
  add(t, 2, 3, Mono::kQmm, [](double n, double) { return 8.0 * (n - 1.0); });
  add(t, 2, 3, Mono::kSmm, [](double n, double) { return 4.0 * (n - 1.0); });
  // alpha^2 beta^2.
  add(t, 2, 2, Mono::kRicb0a, k(-24.0));
  add(t, 2, 2, Mono::kSm0m,
      [](double n, double b2) { return 8.0 * (b2 + 3.0 * n + 2.0); });
  add(t, 2, 2, Mono::kT0,
      [](double n, double) { return -4.0 * (n + 1.0) * (5.0 * n - 11.0); });
  add(t, 2, 2, Mono::kRmmS0,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kQ00ib,
      [](double n, double) { return -16.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kRmm0, [](double n, double) { return -6.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kR0mm,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kS00ib,
      [](double n, double) { return -8.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kP0, [](double n, double) { return -24.0 * (n - 1.0); });
  // alpha^2 beta.
  add(t, 2, 1, Mono::kRic00a,
      [](double, double b2) { return 4.0 * (2.0 * b2 + 1.0); });
  add(t, 2, 1, Mono::kT00,
      [](double, double b2) { return -8.0 * (2.0 * b2 + 1.0); });
  add(t, 2, 1, Mono::kQ00, [](double n, double b2) {
    return 4.0 * (n - 1.0) * (6.0 * b2 + n + 5.0);
  });
  add(t, 2, 1, Mono::kS0S0, [c = v.s1_xi2_corrected](double n, double) {
    return 12.0 * (n - 1.0) * (c ? (n + 4.0) : (3.0 * n - 4.0));
  });
  add(t, 2, 1, Mono::kS00c, [](double n, double b2) {
    return 2.0 * (n - 1.0) * (6.0 * b2 + n + 5.0);
  });
  add(t, 2, 1, Mono::kRmmR00,
      [](double n, double) { return 12.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kR0S0, [](double n, double) { return 72.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kR000ib,
      [](double n, double) { return 8.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kW00, [](double n, double) { return 24.0 * (n - 1.0); });
  // alpha^2.
  add(t, 2, 0, Mono::kS0R00, [c = v.s1_xi2_corrected](double n, double b2) {
    return -6.0 * (n - 1.0) *
           (12.0 * b2 + (c ? (-n - 3.0) : (3.0 * n - 19.0)));
  });
  add(t, 2, 0, Mono::kR0R00,
      [](double n, double) { return -36.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kR000c, [](double n, double b2) {
    return -(n - 1.0) * (6.0 * b2 - n - 3.0);
  });
  // beta^4.
  add(t, 0, 4, Mono::kSm0m, [](double n, double) { return 4.0 * (n - 1.0); });
  // beta^3.
  add(t, 0, 3, Mono::kRic00a, k(4.0));
  add(t, 0, 3, Mono::kT00, k(-8.0));
  add(t, 0, 3, Mono::kQ00,
      [](double n, double) { return 4.0 * (n - 1.0) * (n - 1.0); });
  add(t, 0, 3, Mono::kS00c,
      [](double n, double) { return 2.0 * (n - 1.0) * (n - 1.0); });
  // beta^2.
  add(t, 0, 2, Mono::kS0R00,
      [](double n, double) { return -6.0 * (n - 1.0) * (n - 1.0); });
  add(t, 0, 2, Mono::kR000c,
      [](double n, double) { return (n - 1.0) * (n - 3.0); });
  // beta.
  add(t, 0, 1, Mono::kR00R00, [c = v.s1_xi2_corrected](double n, double) {
    return 3.0 * (n - 1.0) * (c ? (2.0 - n) : (n - 6.0));
  });
  return t;
}

Table sigma2_table(const TableVariants& v) {
  Table t;
  // alpha^4.
  add(t, 4, 0, Mono::kTmm,
      [](double n, double b2) { return -4.0 * (b2 + n + 2.0); });
  add(t, 4, 0, Mono::kBsimm, k(-8.0));
  add(t, 4, 0, Mono::kQmm, [](double n, double) { return 8.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kSmm, [](double n, double) { return 4.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kT, [](double n, double) { return 4.0 * (n - 1.0); });
  // alpha^2 beta^2.
  add(t, 2, 2, Mono::kTmm,
      [](double n, double b2) { return -4.0 * (b2 + 6.0 * n + 8.0); });
  add(t, 2, 2, Mono::kBsimm, k(-24.0));
  add(t, 2, 2, Mono::kQmm, [](double n, double) { return 24.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kSmm, [](double n, double) { return 12.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kT, [](double n, double) { return 4.0 * (n - 1.0); });
  // alpha^2 beta.
  add(t, 2, 1, Mono::kRicb0a, k(-24.0));
  add(t, 2, 1, Mono::kSm0m,
      [](double n, double b2) { return 16.0 * (b2 + n + 1.0); });
  add(t, 2, 1, Mono::kRmmS0,
      [](double n, double) { return -24.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kP0, [](double n, double) { return -48.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kQ00ib,
      [](double n, double) { return -32.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kRmm0, [](double n, double) { return -6.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kR0mm,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kS00ib,
      [](double n, double) { return -16.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kT0, [](double n, double b2) {
    return -8.0 * (3.0 * b2 * n - 3.0 * b2 + 2.0 * n * n - 8.0);
  });
  // alpha^2.
  add(t, 2, 0, Mono::kRic00a, [](double, double b2) { return 4.0 * b2; });
  add(t, 2, 0, Mono::kT00, [](double, double b2) { return -8.0 * b2; });
  add(t, 2, 0, Mono::kS0S0, [c = v.s2_xi2_corrected](double n, double b2) {
    return 24.0 * (n - 1.0) * (3.0 * b2 + (c ? 0.0 : (n - 4.0)));
  });
  add(t, 2, 0, Mono::kR0S0, [](double n, double) { return 72.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kS00c,
      [](double n, double b2) { return 12.0 * b2 * (n - 1.0); });
  add(t, 2, 0, Mono::kQ00,
      [](double n, double b2) { return 24.0 * b2 * (n - 1.0); });
  add(t, 2, 0, Mono::kRmmR00,
      [](double n, double) { return 6.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kR000ib,
      [](double n, double) { return 4.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kW00, [](double n, double) { return 12.0 * (n - 1.0); });
  // beta^4.
  add(t, 0, 4, Mono::kTmm, [](double n, double) { return -4.0 * n; });
  // beta^3.
  add(t, 0, 3, Mono::kSm0m, [](double n, double) { return 16.0 * n; });
  add(t, 0, 3, Mono::kRmm0, [s = v.s2_b3_der_sign](double n, double) {
    return s * 2.0 * (n - 1.0);
  });
  add(t, 0, 3, Mono::kR0mm, [s = v.s2_b3_der_sign](double n, double) {
    return s * 4.0 * (n - 1.0);
  });
  add(t, 0, 3, Mono::kRicb0a, k(-8.0));
  add(t, 0, 3, Mono::kT0,
      [](double n, double) { return -8.0 * n * (n - 3.0); });
  // beta^2.
  add(t, 0, 2, Mono::kRic00a,
      [](double, double b2) { return 4.0 * (b2 + 2.0); });
  add(t, 0, 2, Mono::kT00, [](double, double b2) { return -8.0 * (b2 + 2.0); });
  add(t, 0, 2, Mono::kS0S0,
      [](double n, double) { return 12.0 * (n - 1.0) * (n - 2.0); });
  add(t, 0, 2, Mono::kS00c,
      [](double n, double) { return 4.0 * (n - 1.0) * (n + 2.0); });
  add(t, 0, 2, Mono::kW00, [](double n, double) { return 12.0 * (n - 1.0); });
  add(t, 0, 2, Mono::kRmmR00,
      [](double n, double) { return 6.0 * (n - 1.0); });
  add(t, 0, 2, Mono::kQ00, [sh = v.s2_b2_q00_shift](double n, double) {
    return 8.0 * (n - 1.0) * (n + sh);
  });
  add(t, 0, 2, Mono::kR000ib,
      [](double n, double) { return 4.0 * (n - 1.0); });
  // beta.
  add(t, 0, 1, Mono::kR000c, [](double n, double b2) {
    return -2.0 * (n - 1.0) * (3.0 * b2 - n);
  });
  add(t, 0, 1, Mono::kS0R00, [c = v.s2_xi2_corrected](double n, double) {
    return -24.0 * (n - 1.0) * (c ? 2.0 : (n - 2.0));
  });
  add(t, 0, 1, Mono::kR0R00, [s = v.s2_b1_r0r00_sign](double n, double) {
    return s * 36.0 * (n - 1.0);
  });
  // beta^0.
  add(t, 0, 0, Mono::kR00R00, [c = v.s2_xi2_corrected](double n, double b2) {
    return 3.0 * (n - 1.0) * (6.0 * b2 + (c ? (-n - 4.0) : (n - 12.0)));
  });
  return t;
}

Table gamma1_table(const TableVariants& v) {
  Table t;
  // alpha^4 beta.
  add(t, 4, 1, Mono::kRalpha, k(16.0));
  add(t, 4, 1, Mono::kTmm,
      [](double n, double b2) { return -4.0 * (2.0 * b2 + 4.0 * n + 7.0); });
  add(t, 4, 1, Mono::kBsimm, k(-24.0));
  add(t, 4, 1, Mono::kQmm, [](double n, double) { return 24.0 * (n - 1.0); });
  add(t, 4, 1, Mono::kSmm, [](double n, double) { return 12.0 * (n - 1.0); });
  add(t, 4, 1, Mono::kT, [](double n, double) { return 8.0 * (n - 1.0); });
  // alpha^4 (identical to the odd sigma table).
  add(t, 4, 0, Mono::kRicb0a, k(-8.0));
  add(t, 4, 0, Mono::kSm0m,
      [](double n, double b2) { return 4.0 * (2.0 * b2 + n + 1.0); });
  add(t, 4, 0, Mono::kT0, [](double n, double b2) {
    return -4.0 * (6.0 * b2 * n - 6.0 * b2 + n * n - 5.0);
  });
  add(t, 4, 0, Mono::kRmmS0,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kQ00ib,
      [](double n, double) { return -16.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kRmm0, [](double n, double) { return -2.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kR0mm, [](double n, double) { return -4.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kS00ib,
      [](double n, double) { return -8.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kP0, [](double n, double) { return -24.0 * (n - 1.0); });
  // alpha^2 beta^3.
  add(t, 2, 3, Mono::kRalpha, k(16.0));
  add(t, 2, 3, Mono::kTmm,
      [](double n, double) { return -4.0 * (4.0 * n + 3.0); });
  add(t, 2, 3, Mono::kBsimm, k(-8.0));
  add(t, 2, 3, Mono::kQmm, [](double n, double) { return 8.0 * (n - 1.0); });
  add(t, 2, 3, Mono::kSmm, [](double n, double) { return 4.0 * (n - 1.0); });
  // alpha^2 beta^2.
  add(t, 2, 2, Mono::kRicb0a, k(-24.0));
  add(t, 2, 2, Mono::kSm0m,
      [](double n, double b2) { return 8.0 * (b2 + 3.0 * n + 2.0); });
  add(t, 2, 2, Mono::kT0,
      [](double n, double) { return -4.0 * (n + 1.0) * (5.0 * n - 11.0); });
  add(t, 2, 2, Mono::kRmmS0,
      [](double n, double) { return -36.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kQ00ib,
      [](double n, double) { return -16.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kRmm0, [](double n, double) { return -6.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kR0mm,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kS00ib,
      [](double n, double) { return -8.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kP0, [](double n, double) { return -24.0 * (n - 1.0); });
  // alpha^2 beta.
  add(t, 2, 1, Mono::kRic00a,
      [](double, double b2) { return 4.0 * (2.0 * b2 + 1.0); });
  add(t, 2, 1, Mono::kT00,
      [](double, double b2) { return -8.0 * (2.0 * b2 + 1.0); });
  add(t, 2, 1, Mono::kQ00, [](double n, double b2) {
    return 4.0 * (n - 1.0) * (6.0 * b2 + n + 5.0);
  });
  add(t, 2, 1, Mono::kR000ib,
      [](double n, double) { return 8.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kS00c,
      [](double n, double b2) { return 4.0 * (n - 1.0) * (6.0 * b2 + 1.0); });
  add(t, 2, 1, Mono::kRmmE00,
      [](double n, double) { return 12.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kR0S0,
      [](double n, double) { return 144.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kS0S0, [c = v.g1_xi2_corrected](double n, double b2) {
    return 4.0 * (n - 1.0) *
           (30.0 * b2 + (c ? (n + 6.0) : (19.0 * n - 66.0)));
  });
  add(t, 2, 1, Mono::kW00, [](double n, double) { return 24.0 * (n - 1.0); });
  // alpha^2.
  add(t, 2, 0, Mono::kE000c, [](double n, double b2) {
    return -(n - 1.0) * (6.0 * b2 - n - 3.0);
  });
  add(t, 2, 0, Mono::kR0E00,
      [](double n, double) { return -36.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kS0E00, [c = v.g1_xi2_corrected](double n, double b2) {
    return -4.0 * (n - 1.0) *
           (15.0 * b2 + (c ? (-n - 3.0) : (5.0 * n - 27.0)));
  });
  // beta^4.
  add(t, 0, 4, Mono::kSm0m, [](double n, double) { return 4.0 * (n - 1.0); });
  // beta^3.
  add(t, 0, 3, Mono::kRic00a, k(4.0));
  add(t, 0, 3, Mono::kT00, k(-8.0));
  add(t, 0, 3, Mono::kQ00,
      [](double n, double) { return 4.0 * (n - 1.0) * (n - 1.0); });
  add(t, 0, 3, Mono::kS00c, [](double n, double) { return 4.0 * (n - 1.0); });
  add(t, 0, 3, Mono::kS0S0, [c = v.g1_xi2_corrected](double n, double) {
    return 4.0 * (n - 1.0) * (c ? n : (7.0 * n - 24.0));
  });
  // beta^2.
  add(t, 0, 2, Mono::kE000c,
      [](double n, double) { return (n - 1.0) * (n - 3.0); });
  add(t, 0, 2, Mono::kS0E00, [c = v.g1_xi2_corrected](double n, double) {
    return c ? 4.0 * (n - 1.0) * (n - 3.0)
             : -4.0 * (n - 1.0) * (5.0 * n - 21.0);
  });
  // beta.
  add(t, 0, 1, Mono::kE00E00, [c = v.g1_xi2_corrected](double n, double) {
    return 3.0 * (n - 1.0) * (c ? (2.0 - n) : (n - 6.0));
  });
  return t;
}

Table gamma2_table(const TableVariants& v) {
  Table t;
  // alpha^4.
  add(t, 4, 0, Mono::kRalpha, k(4.0));
  add(t, 4, 0, Mono::kTmm,
      [](double n, double b2) { return -4.0 * (b2 + n + 2.0); });
  add(t, 4, 0, Mono::kBsimm, k(-8.0));
  add(t, 4, 0, Mono::kQmm, [](double n, double) { return 8.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kSmm, [](double n, double) { return 4.0 * (n - 1.0); });
  add(t, 4, 0, Mono::kT, [](double n, double) { return 4.0 * (n - 1.0); });
  // alpha^2 beta^2.
  add(t, 2, 2, Mono::kRalpha, k(24.0));
  add(t, 2, 2, Mono::kTmm,
      [](double n, double b2) { return -4.0 * (b2 + 6.0 * n + 8.0); });
  add(t, 2, 2, Mono::kBsimm, k(-24.0));
  add(t, 2, 2, Mono::kQmm, [](double n, double) { return 24.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kSmm, [](double n, double) { return 12.0 * (n - 1.0); });
  add(t, 2, 2, Mono::kT, [](double n, double) { return 4.0 * (n - 1.0); });
  // alpha^2 beta.
  add(t, 2, 1, Mono::kRicb0a, k(-24.0));
  add(t, 2, 1, Mono::kSm0m,
      [](double n, double b2) { return 16.0 * (b2 + n + 1.0); });
  add(t, 2, 1, Mono::kRmmS0,
      [](double n, double) { return -36.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kQ00ib,
      [](double n, double) { return -32.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kRmm0, [](double n, double) { return -6.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kR0mm,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kS00ib,
      [](double n, double) { return -16.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kP0, [](double n, double) { return -48.0 * (n - 1.0); });
  add(t, 2, 1, Mono::kT0, [](double n, double b2) {
    return -8.0 * (3.0 * b2 * n - 3.0 * b2 + 2.0 * n * n - 8.0);
  });
  // alpha^2.
  add(t, 2, 0, Mono::kRic00a, [](double, double b2) { return 4.0 * b2; });
  add(t, 2, 0, Mono::kT00, [](double, double b2) { return -8.0 * b2; });
  add(t, 2, 0, Mono::kQ00,
      [](double n, double b2) { return 24.0 * b2 * (n - 1.0); });
  add(t, 2, 0, Mono::kR000ib,
      [](double n, double) { return 4.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kS00c,
      [](double n, double b2) { return 12.0 * b2 * (n - 1.0); });
  add(t, 2, 0, Mono::kRmmE00,
      [](double n, double) { return 6.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kR0S0, [](double n, double) { return 72.0 * (n - 1.0); });
  add(t, 2, 0, Mono::kS0S0, [c = v.g2_xi2_corrected](double n, double b2) {
    return 24.0 * (n - 1.0) * (3.0 * b2 + (c ? 0.0 : (n - 4.0)));
  });
  add(t, 2, 0, Mono::kW00, [](double n, double) { return 12.0 * (n - 1.0); });
  // beta^4.
  add(t, 0, 4, Mono::kTmm, [](double n, double) { return -4.0 * n; });
  add(t, 0, 4, Mono::kRalpha, k(4.0));
  // beta^3.
  add(t, 0, 3, Mono::kRmmS0,
      [](double n, double) { return -12.0 * (n - 1.0); });
  add(t, 0, 3, Mono::kRmm0, [s = v.g2_b3_der_sign](double n, double) {
    return s * 2.0 * (n - 1.0);
  });
  add(t, 0, 3, Mono::kR0mm, [s = v.g2_b3_der_sign](double n, double) {
    return s * 4.0 * (n - 1.0);
  });
  add(t, 0, 3, Mono::kRicb0a, k(-8.0));
  add(t, 0, 3, Mono::kSm0m, [](double n, double) { return 16.0 * n; });
  add(t, 0, 3, Mono::kT0,
      [](double n, double) { return -8.0 * n * (n - 3.0); });
  // beta^2.
  add(t, 0, 2, Mono::kRic00a,
      [](double, double b2) { return 4.0 * (b2 + 2.0); });
  add(t, 0, 2, Mono::kT00, [](double, double b2) { return -8.0 * (b2 + 2.0); });
  add(t, 0, 2, Mono::kQ00, [sh = v.g2_b2_q00_shift](double n, double) {
    return 8.0 * (n - 1.0) * (n + sh);
  });
  add(t, 0, 2, Mono::kR000ib,
      [](double n, double) { return 4.0 * (n - 1.0); });
  add(t, 0, 2, Mono::kS00c,
      [](double n, double b2) { return 4.0 * (n - 1.0) * (3.0 * b2 + 2.0); });
  add(t, 0, 2, Mono::kRmmE00,
      [](double n, double) { return 6.0 * (n - 1.0); });
  add(t, 0, 2, Mono::kR0S0, [c = v.g2_b2_s0r0_inner](double n, double) {
    return 2.0 * (n - 1.0) * c;
  });
  add(t, 0, 2, Mono::kS0S0, [c = v.g2_xi2_corrected](double n, double b2) {
    return 8.0 * (n - 1.0) *
           (6.0 * b2 + (c ? (n + 3.0) : (10.0 * n - 33.0)));
  });
  add(t, 0, 2, Mono::kW00, [](double n, double) { return 12.0 * (n - 1.0); });
  // beta.
  add(t, 0, 1, Mono::kE000c, [](double n, double b2) {
    return -2.0 * (n - 1.0) * (3.0 * b2 - n);
  });
  add(t, 0, 1, Mono::kR0E00,
      [](double n, double) { return -36.0 * (n - 1.0); });
  add(t, 0, 1, Mono::kS0E00, [c = v.g2_xi2_corrected](double n, double b2) {
    return -4.0 * (n - 1.0) *
           (15.0 * b2 + (c ? (-2.0 * n) : (10.0 * n - 48.0)));
  });
  // beta^0.
  add(t, 0, 0, Mono::kE00E00, [c = v.g2_xi2_corrected](double n, double b2) {
    return 3.0 * (n - 1.0) * (6.0 * b2 + (c ? (-n - 4.0) : (n - 12.0)));
  });
  return t;
}

double eval_table(const Table& t, const TableInputs& z) {
  const double n = static_cast<double>(z.n);
  // Precompute the small set of alpha/beta powers that occur.
  const double a2 = z.alpha * z.alpha;
  const double a4 = a2 * a2;
  std::array<double, 5> bp{1.0, z.beta, 0.0, 0.0, 0.0};
  for (int i = 2; i < 5; ++i) bp[i] = bp[i - 1] * z.beta;
  double total = 0.0;
  for (const TableTerm& term : t) {
    const double ap = term.apow == 4 ? a4 : (term.apow == 2 ? a2 : 1.0);
    total += term.coeff(n, z.b2) * ap * bp[term.bpow] *
             mono_value(term.mono, z);
  }
  return total;
}

namespace {

struct Rewrite {
  Mono mono;
  int dbeta;
  double factor;
};

// r_00 = e_00 - 2 beta s_0 and its corollaries, applied to every monomial
// that mentions an r_00 factor or r_{00;0}.
std::vector<Rewrite> rewrite_rules(Mono m) {
  switch (m) {
    case Mono::kS0R00:
      return {{Mono::kS0E00, 0, 1.0}, {Mono::kS0S0, 1, -2.0}};
    case Mono::kR0R00:
      return {{Mono::kR0E00, 0, 1.0}, {Mono::kR0S0, 1, -2.0}};
    case Mono::kRmmR00:
      return {{Mono::kRmmE00, 0, 1.0}, {Mono::kRmmS0, 1, -2.0}};
    case Mono::kR00R00:
      return {{Mono::kE00E00, 0, 1.0},
              {Mono::kS0E00, 1, -4.0},
              {Mono::kS0S0, 2, 4.0}};
    case Mono::kR000c:
      return {{Mono::kE000c, 0, 1.0},
              {Mono::kS00c, 1, -2.0},
              {Mono::kS0E00, 0, -2.0},
              {Mono::kS0S0, 1, 4.0}};
    default:
      return {{m, 0, 1.0}};
  }
}

}  // namespace

Table gamma_from_sigma(const Table& sigma, bool odd_part) {
  Table out;
  for (const TableTerm& term : sigma) {
    for (const Rewrite& rw : rewrite_rules(term.mono)) {
      out.push_back(TableTerm{
          term.apow, term.bpow + rw.dbeta, rw.mono,
          [c = term.coeff, f = rw.factor](double n, double b2) {
            return f * c(n, b2);
          }});
    }
  }
  // The r_alpha spill of 4 F^4 alpha r_alpha = 4 alpha (alpha + beta)^4
  // r_alpha: odd part 16 alpha^4 beta + 16 alpha^2 beta^3, even part
  // 4 alpha^4 + 24 alpha^2 beta^2 + 4 beta^4.
  if (odd_part) {
    add(out, 4, 1, Mono::kRalpha, k(16.0));
    add(out, 2, 3, Mono::kRalpha, k(16.0));
  } else {
    add(out, 4, 0, Mono::kRalpha, k(4.0));
    add(out, 2, 2, Mono::kRalpha, k(24.0));
    add(out, 0, 4, Mono::kRalpha, k(4.0));
  }
  return out;
}

std::vector<SlotDiff> table_diff(const Table& lhs, const Table& rhs) {
  constexpr std::array<std::pair<double, double>, 5> probes{
      {{2.0, 0.11}, {3.0, 0.31}, {4.0, 0.23}, {2.0, 0.47}, {5.0, 0.05}}};
  using Key = std::tuple<int, int, Mono>;
  using Cell = std::array<double, probes.size()>;
  auto collect = [&](const Table& t) {
    std::map<Key, Cell> sums;
    for (const TableTerm& term : t) {
      Cell& cell = sums[{term.apow, term.bpow, term.mono}];
      for (std::size_t p = 0; p < probes.size(); ++p)
        cell[p] += term.coeff(probes[p].first, probes[p].second);
    }
    return sums;
  };
  std::map<Key, Cell> lhs_sums = collect(lhs);
  std::map<Key, Cell> rhs_sums = collect(rhs);
  std::vector<SlotDiff> diffs;
  auto scan = [&](const Key& key) {
    const Cell l = lhs_sums.count(key) ? lhs_sums[key] : Cell{};
    const Cell r = rhs_sums.count(key) ? rhs_sums[key] : Cell{};
    for (std::size_t p = 0; p < probes.size(); ++p) {
      if (std::abs(l[p] - r[p]) > 1e-9) {
        diffs.push_back(SlotDiff{std::get<0>(key), std::get<1>(key),
                                 std::get<2>(key), probes[p].first,
                                 probes[p].second, l[p], r[p]});
        return;
      }
    }
  };
  std::map<Key, int> keys;
  for (const auto& [key, cell] : lhs_sums) keys[key] = 1;
  for (const auto& [key, cell] : rhs_sums) keys[key] = 1;
  for (const auto& [key, unused] : keys) scan(key);
  return diffs;
}

double scalar_curvature_closed(const AlphaData& A, const BetaData& B,
                               std::span<const double> y) {
  static const Table s1 = sigma1_table(operative_variants());
  static const Table s2 = sigma2_table(operative_variants());
  const TableInputs z = table_inputs(A, B, y);
  const double f = z.alpha + z.beta;
  const double f5 = f * f * f * f * f;
  return (z.alpha / f) * z.ralpha +
         (eval_table(s1, z) + z.alpha * eval_table(s2, z)) / (4.0 * f5);
}

double gamma_route(const AlphaData& A, const BetaData& B,
                   std::span<const double> y) {
  static const Table g1 = gamma1_table(operative_variants());
  static const Table g2 = gamma2_table(operative_variants());
  const TableInputs z = table_inputs(A, B, y);
  return eval_table(g1, z) + z.alpha * eval_table(g2, z);
}

}  // namespace rlab
