#include "kappa/states.hpp"

#include <cmath>

#include "kappa/random.hpp"

namespace kappa {

namespace {

void require_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw ParameterError(std::string(name) + " = " + std::to_string(v) + " outside [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

ComplexVector ket(int dim, std::initializer_list<std::pair<int, Complex>> amps) {
  ComplexVector v = ComplexVector::Zero(dim);
  for (const auto& [i, a] : amps) v(i) += a;
  return v;
}

}  // namespace

std::string to_string(StateFamily::Kind k) {
  switch (k) {
    case StateFamily::Kind::Isotropic:
      return "isotropic";
    case StateFamily::Kind::Werner:
      return "werner";
    case StateFamily::Kind::MaxCorrelated:
      return "max_correlated";
    case StateFamily::Kind::OmegaHat:
      return "omega_hat";
    case StateFamily::Kind::AntisymRhoV:
      return "rho_v";
    case StateFamily::Kind::NonConvexMixture:
      return "non_convex_mixture";
    case StateFamily::Kind::BellMix:
      return "bell_mix";
    case StateFamily::Kind::Explicit:
      return "explicit";
  }
  return "unknown";
}

DensityMatrix::DensityMatrix(HermitianOperator op, BipartitePartition p, double tol)
    : op_(std::move(op)), partition_(p) {
  if (op_.dim() != p.dim()) {
    throw DimensionError("state dimension " + std::to_string(op_.dim()) + " does not match " +
                         std::to_string(p.d_a) + "x" + std::to_string(p.d_b));
  }
  if (std::abs(op_.trace() - 1.0) > tol) {
    throw ParameterError("state trace " + std::to_string(op_.trace()) + " is not 1");
  }
  if (!psd_check(op_, tol)) {
    throw ParameterError("state is not positive semidefinite (lambda_min " +
                         std::to_string(lambda_min(op_)) + ")");
  }
}

DensityMatrix DensityMatrix::with_family(StateFamily f) const {
  DensityMatrix out = *this;
  out.family_ = std::move(f);
  return out;
}

DensityMatrix make_isotropic(double t, int d) {
  require_range(t, 0.0, 1.0, "t");
  if (d < 2) throw ParameterError("isotropic state needs d >= 2");
  HermitianOperator phi = max_entangled(d);
  HermitianOperator rest = HermitianOperator::identity(d * d) - phi;
  StateFamily f;
  f.kind = StateFamily::Kind::Isotropic;
  f.t = t;
  f.d = d;
  return DensityMatrix(phi * t + rest * ((1.0 - t) / (d * d - 1.0)), {d, d}).with_family(f);
}

DensityMatrix make_werner(double p, int d) {
  require_range(p, 0.0, 1.0, "p");
  if (d < 2) throw ParameterError("Werner state needs d >= 2");
  StandardOperators s = standard_operators(d);
  HermitianOperator w = s.proj_sym * ((1.0 - p) * 2.0 / (d * (d + 1.0))) +
                        s.proj_antisym * (p * 2.0 / (d * (d - 1.0)));
  StateFamily f;
  f.kind = StateFamily::Kind::Werner;
  f.p = p;
  f.d = d;
  return DensityMatrix(w, {d, d}).with_family(f);
}

DensityMatrix make_max_correlated(const ComplexMatrix& c) {
  if (c.rows() != c.cols() || c.rows() < 1) throw DimensionError("c must be square");
  HermitianOperator ch(c);
  if (std::abs(ch.trace() - 1.0) > kStateTol || !psd_check(ch, kStateTol)) {
    throw ParameterError("c must be a density matrix");
  }
  int d = static_cast<int>(c.rows());
  ComplexMatrix rho = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) = ch.matrix()(i, j);
  StateFamily f;
  f.kind = StateFamily::Kind::MaxCorrelated;
  f.c = ch.matrix();
  return DensityMatrix(HermitianOperator(rho), {d, d}).with_family(f);
}

DensityMatrix make_omega_hat(double alpha) {
  require_range(alpha, 0.0, 1.0, "alpha");
  ComplexMatrix c(2, 2);
  c << 0.5, alpha / 2, alpha / 2, 0.5;
  StateFamily f;
  f.kind = StateFamily::Kind::OmegaHat;
  f.alpha = alpha;
  f.c = c;
  return make_max_correlated(c).with_family(f);
}

DensityMatrix make_rho_v() {
  const double r = 1.0 / std::sqrt(2.0);
  // 3x3 basis index = 3 a + b.
  ComplexVector v1 = ket(9, {{1, r}, {3, -r}});
  ComplexVector v2 = ket(9, {{2, r}, {6, -r}});
  ComplexMatrix rho = 0.5 * (v1 * v1.adjoint() + v2 * v2.adjoint());
  StateFamily f;
  f.kind = StateFamily::Kind::AntisymRhoV;
  return DensityMatrix(HermitianOperator(rho), {3, 3}).with_family(f);
}

DensityMatrix make_bell_mix(const std::array<double, 4>& w) {
  double sum = 0;
  for (double x : w) {
    if (x < 0) throw ParameterError("Bell mixture weights must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStateTol) throw ParameterError("Bell mixture weights must sum to 1");
  const double r = 1.0 / std::sqrt(2.0);
  std::array<ComplexVector, 4> bell = {ket(4, {{0, r}, {3, r}}), ket(4, {{0, r}, {3, -r}}),
                                       ket(4, {{1, r}, {2, r}}), ket(4, {{1, r}, {2, -r}})};
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) rho += w[i] * bell[i] * bell[i].adjoint();
  StateFamily f;
  f.kind = StateFamily::Kind::BellMix;
  f.weights = w;
  return DensityMatrix(HermitianOperator(rho), {2, 2}).with_family(f);
}

NonConvexTriple make_non_convex_triple() {
  DensityMatrix rho1 = make_max_correlated((ComplexMatrix(2, 2) << 0.5, 0.5, 0.5, 0.5).finished());
  DensityMatrix rho2 = make_max_correlated((ComplexMatrix(2, 2) << 0.5, 0, 0, 0.5).finished());
  StateFamily f;
  f.kind = StateFamily::Kind::NonConvexMixture;
  DensityMatrix m = mix(rho1, rho2, 0.5).with_family(f);
  return {rho1, rho2, m};
}

DensityMatrix TripartiteState::ab() const {
  return DensityMatrix(HermitianOperator(partial_trace(op, {2, 2, 2}, {true, true, false})), {2, 2});
}

DensityMatrix TripartiteState::ac() const {
  return DensityMatrix(HermitianOperator(partial_trace(op, {2, 2, 2}, {true, false, true})), {2, 2});
}

DensityMatrix TripartiteState::a_bc() const { return DensityMatrix(HermitianOperator(op), {2, 4}); }

TripartiteState make_monogamy_triple() {
  // Index = 4a + 2b + c.
  ComplexVector psi = ket(8, {{0, 0.5}, {3, 0.5}, {6, std::sqrt(2.0) / 2}});
  return {psi * psi.adjoint()};
}

DensityMatrix make_special(SpecialState kind, double alpha) {
  switch (kind) {
    case SpecialState::OmegaHat:
      return make_omega_hat(alpha);
    case SpecialState::AntisymRhoV:
      return make_rho_v();
    case SpecialState::NonConvexMixture:
      return make_non_convex_triple().mixture;
  }
  throw ParameterError("unknown special state");
}

DensityMatrix make_state(const StateFamily& f, const BipartitePartition& explicit_dims,
                         const ComplexMatrix& explicit_matrix) {
  switch (f.kind) {
    case StateFamily::Kind::Isotropic:
      return make_isotropic(f.t, f.d);
    case StateFamily::Kind::Werner:
      return make_werner(f.p, f.d);
    case StateFamily::Kind::MaxCorrelated:
      return make_max_correlated(f.c);
    case StateFamily::Kind::OmegaHat:
      return make_omega_hat(f.alpha);
    case StateFamily::Kind::AntisymRhoV:
      return make_rho_v();
    case StateFamily::Kind::NonConvexMixture:
      return make_non_convex_triple().mixture;
    case StateFamily::Kind::BellMix:
      return make_bell_mix(f.weights);
    case StateFamily::Kind::Explicit:
      return DensityMatrix(HermitianOperator(explicit_matrix), explicit_dims).with_family(f);
  }
  throw ParameterError("unknown state family");
}

DensityMatrix random_density(const BipartitePartition& p, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g = gaussian_matrix(p.dim(), p.dim(), rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianOperator(rho), p);
}

DensityMatrix random_pure_state(const BipartitePartition& p, std::uint64_t seed) {
  Rng rng(seed);
  return pure_state(random_pure(p.dim(), rng), p);
}

DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& omega) {
  const BipartitePartition& a = rho.partition();
  const BipartitePartition& b = omega.partition();
  ComplexMatrix k = kron(rho.matrix(), omega.matrix());
  // A B A' B' -> A A' B B'
  ComplexMatrix g = permute_systems(k, {a.d_a, a.d_b, b.d_a, b.d_b}, {0, 2, 1, 3});
  return DensityMatrix(HermitianOperator(g), {a.d_a * b.d_a, a.d_b * b.d_b});
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight_a) {
  require_range(weight_a, 0.0, 1.0, "mixing weight");
  if (!(a.partition() == b.partition())) throw DimensionError("mixing states of different shape");
  return DensityMatrix(a.op() * weight_a + b.op() * (1.0 - weight_a), a.partition());
}

DensityMatrix pure_state(const ComplexVector& psi, const BipartitePartition& p) {
  double n = psi.norm();
  if (!(n > 0)) throw ParameterError("zero vector is not a state");
  ComplexVector v = psi / n;
  return DensityMatrix(HermitianOperator(v * v.adjoint()), p);
}

}  // namespace kappa
