#include "kappa/channels.hpp"

#include <cmath>
#include <numbers>

#include "kappa/random.hpp"

namespace kappa {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParameterError(std::string(name) + " = " + std::to_string(v) + " outside [0, 1]");
  }
}

void require_dim(int d, int lo, const char* what) {
  if (d < lo) throw ParameterError(std::string(what) + " needs dimension >= " + std::to_string(lo));
}

ComplexMatrix shift_power(int d, int i) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) x((k + i) % d, k) = 1.0;
  return x;
}

ComplexMatrix clock_power(int d, int j) {
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * j * k / d);
  return z;
}

}  // namespace

ChannelFamily ChannelFamily::identity(int d) {
  require_dim(d, 1, "identity channel");
  ChannelFamily f;
  f.kind = Kind::Identity;
  f.d = d;
  return f;
}

ChannelFamily ChannelFamily::erasure(double p, int d) {
  require_unit(p, "erasure probability");
  require_dim(d, 1, "erasure channel");
  ChannelFamily f;
  f.kind = Kind::Erasure;
  f.p = p;
  f.d = d;
  return f;
}

ChannelFamily ChannelFamily::depolarizing(double p, int d) {
  require_unit(p, "depolarizing parameter");
  require_dim(d, 2, "depolarizing channel");
  ChannelFamily f;
  f.kind = Kind::Depolarizing;
  f.p = p;
  f.d = d;
  return f;
}

ChannelFamily ChannelFamily::dephasing(double q, int d) {
  require_unit(q, "dephasing parameter");
  require_dim(d, 2, "dephasing channel");
  ChannelFamily f;
  f.kind = Kind::Dephasing;
  f.q = q;
  f.d = d;
  return f;
}

ChannelFamily ChannelFamily::amplitude_damping(double r) {
  require_unit(r, "damping parameter");
  ChannelFamily f;
  f.kind = Kind::AmplitudeDamping;
  f.r = r;
  f.d = 2;
  return f;
}

ChannelFamily ChannelFamily::isotropic_twirl(int m) {
  require_dim(m, 2, "isotropic twirl");
  ChannelFamily f;
  f.kind = Kind::IsotropicTwirl;
  f.m = m;
  return f;
}

bool ChannelFamily::covariant() const {
  return kind == Kind::Identity || kind == Kind::Erasure || kind == Kind::Depolarizing ||
         kind == Kind::Dephasing;
}

std::string to_string(ChannelFamily::Kind k) {
  switch (k) {
    case ChannelFamily::Kind::Identity:
      return "identity";
    case ChannelFamily::Kind::Erasure:
      return "erasure";
    case ChannelFamily::Kind::Depolarizing:
      return "depolarizing";
    case ChannelFamily::Kind::Dephasing:
      return "dephasing";
    case ChannelFamily::Kind::AmplitudeDamping:
      return "amplitude_damping";
    case ChannelFamily::Kind::IsotropicTwirl:
      return "isotropic_twirl";
    case ChannelFamily::Kind::MeasurePrepare:
      return "measure_prepare";
    case ChannelFamily::Kind::Explicit:
      return "explicit";
  }
  return "unknown";
}

QuantumChannel::QuantumChannel(HermitianOperator choi, int d_in, int d_out, double tol)
    : choi_(std::move(choi)), d_in_(d_in), d_out_(d_out) {
  if (d_in < 1 || d_out < 1) throw DimensionError("channel dimensions must be >= 1");
  if (choi_.dim() != d_in * d_out) {
    throw DimensionError("Choi dimension " + std::to_string(choi_.dim()) + " does not match " +
                         std::to_string(d_in) + "x" + std::to_string(d_out));
  }
  ChannelChecks c = channel_checks(*this, tol);
  if (!c.cp) {
    throw ParameterError("Choi operator is not PSD (lambda_min " + std::to_string(c.cp_min_eig) + ")");
  }
  if (!c.tp) {
    throw ParameterError("channel is not trace preserving (error " + std::to_string(c.tp_error) + ")");
  }
}

QuantumChannel QuantumChannel::with_family(ChannelFamily f) const {
  QuantumChannel out = *this;
  out.family_ = std::move(f);
  return out;
}

DensityMatrix QuantumChannel::choi_state() const {
  return DensityMatrix(choi_ * (1.0 / d_in_), {d_in_, d_out_});
}

QuantumChannel choi_from_kraus(const std::vector<ComplexMatrix>& kraus, int d_in, int d_out) {
  if (kraus.empty()) throw ParameterError("empty Kraus set");
  ComplexMatrix sum = ComplexMatrix::Zero(d_in, d_in);
  for (const ComplexMatrix& e : kraus) {
    if (e.rows() != d_out || e.cols() != d_in) throw DimensionError("Kraus operator has wrong shape");
    sum += e.adjoint() * e;
  }
  if (max_abs_diff(sum, ComplexMatrix::Identity(d_in, d_in)) > kChannelTol) {
    throw ParameterError("Kraus operators are not trace preserving");
  }
  ComplexMatrix j = ComplexMatrix::Zero(d_in * d_out, d_in * d_out);
  // Column i of E_k placed in block row i: vec(E_k) with R index slowest.
  for (const ComplexMatrix& e : kraus) {
    ComplexVector v(d_in * d_out);
    for (int i = 0; i < d_in; ++i) v.segment(i * d_out, d_out) = e.col(i);
    j += v * v.adjoint();
  }
  return QuantumChannel(HermitianOperator(j), d_in, d_out);
}

std::vector<ComplexMatrix> kraus_operators(const ChannelFamily& f) {
  using K = ChannelFamily::Kind;
  std::vector<ComplexMatrix> out;
  switch (f.kind) {
    case K::Identity:
      out.push_back(ComplexMatrix::Identity(f.d, f.d));
      break;
    case K::Erasure: {
      ComplexMatrix v = ComplexMatrix::Zero(f.d + 1, f.d);
      for (int i = 0; i < f.d; ++i) v(i, i) = 1.0;
      out.push_back(std::sqrt(1.0 - f.p) * v);
      for (int i = 0; i < f.d; ++i) {
        ComplexMatrix e = ComplexMatrix::Zero(f.d + 1, f.d);
        e(f.d, i) = std::sqrt(f.p);
        out.push_back(e);
      }
      break;
    }
    case K::Depolarizing: {
      out.push_back(std::sqrt(1.0 - f.p) * ComplexMatrix::Identity(f.d, f.d));
      double w = std::sqrt(f.p / (f.d * f.d - 1.0));
      for (int i = 0; i < f.d; ++i) {
        for (int j = 0; j < f.d; ++j) {
          if (i == 0 && j == 0) continue;
          out.push_back(w * shift_power(f.d, i) * clock_power(f.d, j));
        }
      }
      break;
    }
    case K::Dephasing: {
      out.push_back(std::sqrt(1.0 - f.q) * ComplexMatrix::Identity(f.d, f.d));
      double w = std::sqrt(f.q / (f.d - 1.0));
      for (int j = 1; j < f.d; ++j) out.push_back(w * clock_power(f.d, j));
      break;
    }
    case K::AmplitudeDamping: {
      ComplexMatrix e0 = ComplexMatrix::Zero(2, 2), e1 = ComplexMatrix::Zero(2, 2);
      e0(0, 0) = 1.0;
      e0(1, 1) = std::sqrt(1.0 - f.r);
      e1(0, 1) = std::sqrt(f.r);
      out = {e0, e1};
      break;
    }
    default:
      throw ParameterError("no Kraus form for channel family " + to_string(f.kind));
  }
  return out;
}

QuantumChannel measure_prepare(const std::vector<ComplexMatrix>& povm,
                               const std::vector<ComplexMatrix>& prepared) {
  if (povm.empty() || povm.size() != prepared.size()) {
    throw ParameterError("measure-prepare needs matching POVM and state lists");
  }
  int d_in = static_cast<int>(povm[0].rows());
  int d_out = static_cast<int>(prepared[0].rows());
  ComplexMatrix j = ComplexMatrix::Zero(d_in * d_out, d_in * d_out);
  for (size_t x = 0; x < povm.size(); ++x) {
    if (povm[x].rows() != d_in || prepared[x].rows() != d_out) {
      throw DimensionError("measure-prepare operators have inconsistent dimensions");
    }
    j += kron(povm[x].transpose(), prepared[x]);
  }
  return QuantumChannel(HermitianOperator(j), d_in, d_out);
}

QuantumChannel make_channel(const ChannelFamily& f) {
  using K = ChannelFamily::Kind;
  switch (f.kind) {
    case K::Identity:
    case K::Erasure:
    case K::Depolarizing:
    case K::Dephasing:
    case K::AmplitudeDamping: {
      int d_in = f.kind == K::AmplitudeDamping ? 2 : f.d;
      int d_out = f.kind == K::Erasure ? f.d + 1 : d_in;
      return choi_from_kraus(kraus_operators(f), d_in, d_out).with_family(f);
    }
    case K::IsotropicTwirl: {
      int m = f.m;
      ComplexMatrix phi = max_entangled(m).matrix();
      ComplexMatrix rest = ComplexMatrix::Identity(m * m, m * m) - phi;
      return measure_prepare({phi, rest}, {phi, rest / (m * m - 1.0)}).with_family(f);
    }
    case K::MeasurePrepare:
      return measure_prepare(f.povm, f.prepared).with_family(f);
    case K::Explicit:
      break;
  }
  throw ParameterError("explicit channels are built from a Choi operator");
}

QuantumChannel swap_channel(int d) {
  return choi_from_kraus({swap_operator(d).matrix()}, d * d, d * d);
}

std::vector<ComplexMatrix> random_kraus(int d_in, int d_out, int num_kraus, std::uint64_t seed) {
  if (num_kraus < 1) throw ParameterError("need at least one Kraus operator");
  Rng rng(seed);
  ComplexMatrix v = random_isometry(d_out * num_kraus, d_in, rng);
  std::vector<ComplexMatrix> out;
  for (int k = 0; k < num_kraus; ++k) out.push_back(v.block(k * d_out, 0, d_out, d_in));
  return out;
}

QuantumChannel random_channel(int d_in, int d_out, int num_kraus, std::uint64_t seed) {
  return choi_from_kraus(random_kraus(d_in, d_out, num_kraus, seed), d_in, d_out);
}

ComplexMatrix apply_operator(const QuantumChannel& n, const ComplexMatrix& x, int d_c) {
  int da = n.d_in(), db = n.d_out();
  if (d_c < 1 || x.rows() != d_c * da || x.cols() != d_c * da) {
    throw DimensionError("apply: input dimension " + std::to_string(x.rows()) +
                         " does not match reference " + std::to_string(d_c) + " x channel input " +
                         std::to_string(da));
  }
  const ComplexMatrix& j = n.choi().matrix();
  ComplexMatrix out = ComplexMatrix::Zero(d_c * db, d_c * db);
  for (int c = 0; c < d_c; ++c) {
    for (int c2 = 0; c2 < d_c; ++c2) {
      for (int k = 0; k < da; ++k) {
        for (int k2 = 0; k2 < da; ++k2) {
          Complex xv = x(c * da + k, c2 * da + k2);
          if (xv == Complex(0, 0)) continue;
          out.block(c * db, c2 * db, db, db) += xv * j.block(k * db, k2 * db, db, db);
        }
      }
    }
  }
  return out;
}

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& x, int d_c) {
  ComplexMatrix out;
  for (const ComplexMatrix& e : kraus) {
    ComplexMatrix k = kron(ComplexMatrix::Identity(d_c, d_c), e);
    ComplexMatrix term = k * x * k.adjoint();
    out = out.size() ? ComplexMatrix(out + term) : term;
  }
  return out;
}

DensityMatrix apply(const QuantumChannel& n, const DensityMatrix& rho) {
  if (rho.partition().d_b != n.d_in()) throw DimensionError("apply: B dimension must equal channel input");
  int dc = rho.partition().d_a;
  return DensityMatrix(HermitianOperator(apply_operator(n, rho.matrix(), dc)), {dc, n.d_out()});
}

DensityMatrix apply_bipartite(const QuantumChannel& n, const DensityMatrix& rho,
                              const BipartitePartition& out) {
  if (out.dim() != n.d_out()) throw DimensionError("apply_bipartite: output partition mismatch");
  return DensityMatrix(HermitianOperator(apply_operator(n, rho.matrix(), 1)), out);
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (first.d_out() != second.d_in()) throw DimensionError("compose: dimension chain mismatch");
  ComplexMatrix j = apply_operator(second, first.choi().matrix(), first.d_in());
  return QuantumChannel(HermitianOperator(j), first.d_in(), second.d_out());
}

ComplexMatrix interleave_choi(const ComplexMatrix& kron_choi, int r1, int b1, int r2, int b2) {
  return permute_systems(kron_choi, {r1, b1, r2, b2}, {0, 2, 1, 3});
}

QuantumChannel tensor(const QuantumChannel& n, const QuantumChannel& m) {
  ComplexMatrix k = kron(n.choi().matrix(), m.choi().matrix());
  ComplexMatrix j = interleave_choi(k, n.d_in(), n.d_out(), m.d_in(), m.d_out());
  return QuantumChannel(HermitianOperator(j), n.d_in() * m.d_in(), n.d_out() * m.d_out());
}

QuantumChannel mix(const std::vector<QuantumChannel>& channels, const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size()) throw ParameterError("mix: size mismatch");
  double total = 0;
  ComplexMatrix j = ComplexMatrix::Zero(channels[0].choi().dim(), channels[0].choi().dim());
  for (size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].d_in() != channels[0].d_in() || channels[i].d_out() != channels[0].d_out()) {
      throw DimensionError("mix: channels differ in shape");
    }
    if (weights[i] < 0) throw ParameterError("mix: negative weight");
    total += weights[i];
    j += weights[i] * channels[i].choi().matrix();
  }
  if (std::abs(total - 1.0) > 1e-12) throw ParameterError("mix: weights must sum to 1");
  return QuantumChannel(HermitianOperator(j), channels[0].d_in(), channels[0].d_out());
}

ChannelChecks channel_checks(const QuantumChannel& n, double tol) {
  ChannelChecks c;
  const HermitianOperator& j = n.choi();
  RealVector ev = hermitian_eigenvalues(j);
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  c.cp_min_eig = ev(0);
  c.cp = ev(0) >= -tol * scale;
  ComplexMatrix tr = partial_trace(j.matrix(), {n.d_in(), n.d_out()}, {true, false});
  c.tp_error = max_abs_diff(tr, ComplexMatrix::Identity(n.d_in(), n.d_in()));
  c.tp = c.tp_error <= tol;
  HermitianOperator pt(partial_transpose(j.matrix(), {n.d_in(), n.d_out()}, {false, true}));
  RealVector pev = hermitian_eigenvalues(pt);
  c.binding_min_eig = pev(0);
  c.ppt_binding = pev(0) >= -tol * scale;
  return c;
}

int SystemLayout::d_in() const {
  int d = 1;
  for (int x : in_dims) d *= x;
  return d;
}

int SystemLayout::d_out() const {
  int d = 1;
  for (int x : out_dims) d *= x;
  return d;
}

ComplexMatrix bob_partial_transpose(const HermitianOperator& choi, const SystemLayout& layout) {
  if (layout.bob_in.size() != layout.in_dims.size() || layout.bob_out.size() != layout.out_dims.size()) {
    throw DimensionError("system layout masks do not match factor lists");
  }
  if (choi.dim() != layout.d_in() * layout.d_out()) {
    throw DimensionError("system layout does not match Choi dimension");
  }
  std::vector<int> dims = layout.in_dims;
  dims.insert(dims.end(), layout.out_dims.begin(), layout.out_dims.end());
  std::vector<bool> mask = layout.bob_in;
  mask.insert(mask.end(), layout.bob_out.begin(), layout.bob_out.end());
  return partial_transpose(choi.matrix(), dims, mask);
}

double cppt_min_eig(const HermitianOperator& choi, const SystemLayout& layout) {
  return lambda_min(HermitianOperator(bob_partial_transpose(choi, layout)));
}

bool is_cppt_bipartite(const HermitianOperator& choi, const SystemLayout& layout, double tol) {
  return psd_check(HermitianOperator(bob_partial_transpose(choi, layout)), tol);
}

SystemLayout local_layout(int a_in, int b_in, int a_out, int b_out) {
  return {{a_in, b_in}, {a_out, b_out}, {false, true}, {false, true}};
}

std::string to_string(GaussianChannelParams::Kind k) {
  using K = GaussianChannelParams::Kind;
  switch (k) {
    case K::Thermal:
      return "thermal";
    case K::Amplifier:
      return "amplifier";
    case K::AdditiveNoise:
      return "additive_noise";
    case K::PureLoss:
      return "pure_loss";
    case K::PureAmplifier:
      return "pure_amplifier";
    case K::Identity:
      return "gaussian_identity";
    case K::ClassB1:
      return "class_b1";
    case K::ClassA:
      return "class_a";
    case K::ClassD:
      return "class_d";
    case K::GeneralConjecture:
      return "general_conjecture";
  }
  return "unknown";
}

}  // namespace kappa
