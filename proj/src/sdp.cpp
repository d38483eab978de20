#include "kappa/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kappa::sdp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal:
      return "Optimal";
    case Status::PrimalInfeasible:
      return "PrimalInfeasible";
    case Status::DualInfeasible:
      return "DualInfeasible";
    case Status::MaxIterations:
      return "MaxIterations";
    case Status::NumericalFailure:
      return "NumericalFailure";
  }
  return "Unknown";
}

int SdpProblem::add_block(int dim) {
  if (dim < 1) throw DimensionError("PSD block dimension must be >= 1");
  block_dims.push_back(dim);
  return static_cast<int>(block_dims.size()) - 1;
}

int SdpProblem::add_free() { return num_free++; }

int SdpProblem::add_constraint(SparseRow row, double b) {
  constraints.push_back(std::move(row));
  rhs.push_back(b);
  return static_cast<int>(constraints.size()) - 1;
}

void SdpProblem::validate() const {
  if (block_dims.empty() && num_free == 0) throw ParameterError("SDP has no variables");
  if (constraints.size() != rhs.size()) throw ParameterError("SDP constraint/rhs count mismatch");
  auto check_row = [&](const SparseRow& r) {
    for (const Entry& e : r.entries) {
      if (e.block < 0 || e.block >= static_cast<int>(block_dims.size())) {
        throw DimensionError("SDP entry references a missing block");
      }
      int n = block_dims[e.block];
      if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n) {
        throw DimensionError("SDP entry outside its block");
      }
      if (!std::isfinite(e.value)) throw ParameterError("SDP entry is not finite");
    }
    for (const auto& [j, v] : r.free_coeffs) {
      if (j < 0 || j >= num_free) throw DimensionError("SDP references a missing free variable");
      if (!std::isfinite(v)) throw ParameterError("SDP coefficient is not finite");
    }
  };
  check_row(objective);
  for (const SparseRow& r : constraints) check_row(r);
}

void SolverConfig::validate() const {
  if (!(gap_tol > 0) || !(feas_tol > 0)) throw ParameterError("solver tolerances must be positive");
  if (!(step_fraction > 0 && step_fraction < 1)) throw ParameterError("step_fraction must be in (0,1)");
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
}

namespace {

struct Triplet {
  int a;
  int b;
  double v;
};

// Row data split per block with off-diagonal entries mirrored.
struct BlockRows {
  std::vector<int> rows;
  std::vector<std::vector<Triplet>> entries;
};

class Solver {
 public:
  Solver(const SdpProblem& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {
    nb_ = static_cast<int>(p.block_dims.size());
    m_ = static_cast<int>(p.constraints.size());
    f_ = p.num_free;
    sign_ = p.sense == Sense::Maximize ? -1.0 : 1.0;

    block_rows_.resize(nb_);
    for (int i = 0; i < m_; ++i) {
      std::vector<std::vector<Triplet>> per_block(nb_);
      for (const Entry& e : p.constraints[i].entries) add_entry(per_block[e.block], e);
      for (int k = 0; k < nb_; ++k) {
        if (!per_block[k].empty()) {
          block_rows_[k].rows.push_back(i);
          block_rows_[k].entries.push_back(std::move(per_block[k]));
        }
      }
    }

    c_.resize(nb_);
    for (int k = 0; k < nb_; ++k) c_[k] = RealMatrix::Zero(p.block_dims[k], p.block_dims[k]);
    for (const Entry& e : p.objective.entries) {
      c_[e.block](e.row, e.col) += sign_ * e.value;
      if (e.row != e.col) c_[e.block](e.col, e.row) += sign_ * e.value;
    }
    cf_ = RealVector::Zero(f_);
    for (const auto& [j, v] : p.objective.free_coeffs) cf_(j) += sign_ * v;

    b_ = RealVector::Zero(m_);
    for (int i = 0; i < m_; ++i) b_(i) = p.rhs[i];

    af_ = RealMatrix::Zero(m_, f_);
    for (int i = 0; i < m_; ++i) {
      for (const auto& [j, v] : p.constraints[i].free_coeffs) af_(i, j) += v;
    }
  }

  SdpSolution run() {
    initial_point();
    SdpSolution out;
    int stalls = 0;
    for (int iter = 0; iter <= cfg_.max_iters; ++iter) {
      residuals();
      fill_solution(out, iter);
      if (out.gap <= cfg_.gap_tol && out.primal_infeas <= cfg_.feas_tol &&
          out.dual_infeas <= cfg_.feas_tol) {
        out.status = Status::Optimal;
        return out;
      }
      if (iter == cfg_.max_iters) break;
      if (detect_infeasibility(out, iter)) return out;

      if (!factor_blocks() || !build_schur()) {
        out.status = Status::NumericalFailure;
        return out;
      }

      double mu = complementarity() / total_dim_;
      // Predictor.
      Direction pred = direction(0.0, nullptr);
      if (!pred.ok) {
        out.status = Status::NumericalFailure;
        return out;
      }
      double ap = std::min(1.0, cfg_.step_fraction * max_step(x_, pred.dx));
      double ad = std::min(1.0, cfg_.step_fraction * max_step(z_, pred.dz));
      double mu_aff = 0;
      for (int k = 0; k < nb_; ++k) {
        mu_aff += ((x_[k] + ap * pred.dx[k]).cwiseProduct(z_[k] + ad * pred.dz[k])).sum();
      }
      mu_aff /= total_dim_;
      double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

      // Corrector.
      Direction corr = direction(sigma * mu, &pred);
      if (!corr.ok) {
        out.status = Status::NumericalFailure;
        return out;
      }
      ap = std::min(1.0, cfg_.step_fraction * max_step(x_, corr.dx));
      ad = std::min(1.0, cfg_.step_fraction * max_step(z_, corr.dz));
      if (!std::isfinite(ap) || !std::isfinite(ad)) {
        out.status = Status::NumericalFailure;
        return out;
      }
      for (int k = 0; k < nb_; ++k) {
        x_[k] += ap * corr.dx[k];
        z_[k] += ad * corr.dz[k];
      }
      xf_ += ap * corr.dxf;
      y_ += ad * corr.dy;

      stalls = (ap < 1e-10 && ad < 1e-10) ? stalls + 1 : 0;
      if (stalls >= 3) {
        residuals();
        fill_solution(out, iter + 1);
        out.status = Status::NumericalFailure;
        return out;
      }
    }
    out.status = Status::MaxIterations;
    return out;
  }

 private:
  struct Direction {
    bool ok = false;
    std::vector<RealMatrix> dx;
    std::vector<RealMatrix> dz;
    RealVector dy;
    RealVector dxf;
  };

  static void add_entry(std::vector<Triplet>& out, const Entry& e) {
    if (e.value == 0.0) return;
    out.push_back({e.row, e.col, e.value});
    if (e.row != e.col) out.push_back({e.col, e.row, e.value});
  }

  static double frob(const std::vector<Triplet>& t) {
    double s = 0;
    for (const Triplet& x : t) s += x.v * x.v;
    return std::sqrt(s);
  }

  void initial_point() {
    x_.resize(nb_);
    z_.resize(nb_);
    total_dim_ = 0;
    for (int k = 0; k < nb_; ++k) {
      int n = p_.block_dims[k];
      total_dim_ += n;
      double max_a = 0;
      double ratio = 0;
      const BlockRows& br = block_rows_[k];
      for (size_t r = 0; r < br.rows.size(); ++r) {
        double na = frob(br.entries[r]);
        max_a = std::max(max_a, na);
        ratio = std::max(ratio, (1.0 + std::abs(b_(br.rows[r]))) / (1.0 + na));
      }
      double sn = std::sqrt(static_cast<double>(n));
      double xi = std::max({10.0, sn, n * ratio});
      double eta = std::max({10.0, sn, max_a, c_[k].norm()});
      x_[k] = xi * RealMatrix::Identity(n, n);
      z_[k] = eta * RealMatrix::Identity(n, n);
    }
    if (total_dim_ == 0) total_dim_ = 1;
    y_ = RealVector::Zero(m_);
    xf_ = RealVector::Zero(f_);
    norm_b_ = b_.norm();
    double nc = cf_.squaredNorm();
    for (const RealMatrix& c : c_) nc += c.squaredNorm();
    norm_c_ = std::sqrt(nc);
  }

  double apply_row(int k, const std::vector<Triplet>& t, const RealMatrix& y) const {
    (void)k;
    double s = 0;
    for (const Triplet& e : t) s += e.v * y(e.a, e.b);
    return s;
  }

  // A(Y) over all blocks (without free columns).
  RealVector apply_a(const std::vector<RealMatrix>& y) const {
    RealVector out = RealVector::Zero(m_);
    for (int k = 0; k < nb_; ++k) {
      const BlockRows& br = block_rows_[k];
      for (size_t r = 0; r < br.rows.size(); ++r) out(br.rows[r]) += apply_row(k, br.entries[r], y[k]);
    }
    return out;
  }

  std::vector<RealMatrix> apply_at(const RealVector& v) const {
    std::vector<RealMatrix> out(nb_);
    for (int k = 0; k < nb_; ++k) {
      out[k] = RealMatrix::Zero(p_.block_dims[k], p_.block_dims[k]);
      const BlockRows& br = block_rows_[k];
      for (size_t r = 0; r < br.rows.size(); ++r) {
        double w = v(br.rows[r]);
        if (w == 0.0) continue;
        for (const Triplet& e : br.entries[r]) out[k](e.a, e.b) += w * e.v;
      }
    }
    return out;
  }

  void residuals() {
    RealVector ax = apply_a(x_) + af_ * xf_;
    rp_ = b_ - ax;
    std::vector<RealMatrix> aty = apply_at(y_);
    rd_.resize(nb_);
    double nd = 0;
    for (int k = 0; k < nb_; ++k) {
      rd_[k] = c_[k] - z_[k] - aty[k];
      nd += rd_[k].squaredNorm();
    }
    rf_ = cf_ - af_.transpose() * y_;
    nd += rf_.squaredNorm();
    pobj_ = cf_.dot(xf_);
    for (int k = 0; k < nb_; ++k) pobj_ += c_[k].cwiseProduct(x_[k]).sum();
    dobj_ = b_.dot(y_);
    pinf_ = rp_.norm() / (1.0 + norm_b_);
    dinf_ = std::sqrt(nd) / (1.0 + norm_c_);
  }

  double complementarity() const {
    double s = 0;
    for (int k = 0; k < nb_; ++k) s += x_[k].cwiseProduct(z_[k]).sum();
    return s;
  }

  void fill_solution(SdpSolution& out, int iter) const {
    out.primal_obj = sign_ * pobj_;
    out.dual_obj = sign_ * dobj_;
    out.gap = std::abs(pobj_ - dobj_) / (1.0 + std::abs(pobj_));
    out.primal_infeas = pinf_;
    out.dual_infeas = dinf_;
    out.x_blocks = x_;
    out.z_blocks = z_;
    out.x_free = xf_;
    out.y = y_;
    out.iterations = iter;
  }

  bool detect_infeasibility(SdpSolution& out, int iter) {
    if (iter < 30) return false;
    double scale = 1e10 * (1.0 + std::abs(pobj_) + std::abs(dobj_) + norm_b_ + norm_c_);
    // Dual objective diverging while the primal residual stays bounded away
    // from zero certifies primal infeasibility, and symmetrically.
    if (dobj_ > 1e8 && pinf_ > cfg_.feas_tol && y_.norm() > scale * 1e-8) {
      out.status = Status::PrimalInfeasible;
      return true;
    }
    double xnorm = xf_.norm();
    for (const RealMatrix& x : x_) xnorm += x.norm();
    if (pobj_ < -1e8 && dinf_ > cfg_.feas_tol && xnorm > scale * 1e-8) {
      out.status = Status::DualInfeasible;
      return true;
    }
    return false;
  }

  bool factor_blocks() {
    zinv_.resize(nb_);
    for (int k = 0; k < nb_; ++k) {
      Eigen::LLT<RealMatrix> llt(z_[k]);
      if (llt.info() != Eigen::Success) return false;
      zinv_[k] = llt.solve(RealMatrix::Identity(z_[k].rows(), z_[k].cols()));
      zinv_[k] = 0.5 * (zinv_[k] + zinv_[k].transpose());
      Eigen::LLT<RealMatrix> lx(x_[k]);
      if (lx.info() != Eigen::Success) return false;
    }
    return true;
  }

  // Schur complement M_ij = sum_k tr(A_i X A_j Z^-1), bordered by the free
  // variable columns.
  bool build_schur() {
    RealMatrix mm = RealMatrix::Zero(m_, m_);
    for (int k = 0; k < nb_; ++k) {
      const BlockRows& br = block_rows_[k];
      const RealMatrix& x = x_[k];
      const RealMatrix& zi = zinv_[k];
      int n = p_.block_dims[k];
      RealMatrix h(n, n);
      for (size_t r = 0; r < br.rows.size(); ++r) {
        // h = Z^-1 A_i X
        h.setZero();
        for (const Triplet& e : br.entries[r]) h.noalias() += e.v * zi.col(e.a) * x.row(e.b);
        int i = br.rows[r];
        for (size_t s = r; s < br.rows.size(); ++s) {
          double acc = 0;
          for (const Triplet& e : br.entries[s]) acc += e.v * h(e.b, e.a);
          mm(i, br.rows[s]) += acc;
        }
      }
    }
    // Only the upper triangle (in per-block row order) was filled; rows are
    // ascending within each block, so mirror it.
    for (int i = 0; i < m_; ++i) {
      for (int j = i + 1; j < m_; ++j) {
        double v = mm(i, j) + mm(j, i);
        mm(i, j) = v;
        mm(j, i) = v;
      }
    }
    if (!mm.allFinite()) return false;
    if (f_ == 0) {
      use_llt_ = true;
      llt_.compute(mm);
      if (llt_.info() == Eigen::Success) return true;
      use_llt_ = false;
      lu_.compute(mm);
      return lu_.rcond() > 1e-300;
    }
    use_llt_ = false;
    RealMatrix k = RealMatrix::Zero(m_ + f_, m_ + f_);
    k.topLeftCorner(m_, m_) = mm;
    k.topRightCorner(m_, f_) = af_;
    k.bottomLeftCorner(f_, m_) = af_.transpose();
    lu_.compute(k);
    return lu_.rcond() > 1e-300;
  }

  // HKM direction with complementarity target sigma_mu and optional
  // second-order correction from a predictor step.
  Direction direction(double sigma_mu, const Direction* pred) const {
    Direction d;
    std::vector<RealMatrix> t(nb_);
    std::vector<RealMatrix> xrz(nb_);
    for (int k = 0; k < nb_; ++k) {
      t[k] = sigma_mu * zinv_[k] - x_[k];
      if (pred) t[k] -= pred->dx[k] * pred->dz[k] * zinv_[k];
      xrz[k] = t[k] - x_[k] * rd_[k] * zinv_[k];
    }
    RealVector rhs(m_ + f_);
    rhs.head(m_) = rp_ - apply_a(xrz);
    rhs.tail(f_) = rf_;
    RealVector sol = use_llt_ ? RealVector(llt_.solve(rhs)) : RealVector(lu_.solve(rhs));
    if (!sol.allFinite()) return d;
    d.dy = sol.head(m_);
    d.dxf = sol.tail(f_);
    std::vector<RealMatrix> aty = apply_at(d.dy);
    d.dx.resize(nb_);
    d.dz.resize(nb_);
    for (int k = 0; k < nb_; ++k) {
      d.dz[k] = rd_[k] - aty[k];
      RealMatrix w = t[k] - x_[k] * d.dz[k] * zinv_[k];
      d.dx[k] = 0.5 * (w + w.transpose());
    }
    d.ok = true;
    return d;
  }

  static double max_step(const std::vector<RealMatrix>& x, const std::vector<RealMatrix>& dx) {
    double alpha = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < x.size(); ++k) {
      Eigen::LLT<RealMatrix> llt(x[k]);
      if (llt.info() != Eigen::Success) return 0.0;
      RealMatrix w = llt.matrixL().solve(dx[k]);
      w = llt.matrixL().solve(RealMatrix(w.transpose()));
      w = 0.5 * (w + w.transpose());
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(w, Eigen::EigenvaluesOnly);
      double lmin = es.eigenvalues()(0);
      if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
  }

  const SdpProblem& p_;
  SolverConfig cfg_;
  int nb_ = 0;
  int m_ = 0;
  int f_ = 0;
  double sign_ = 1;
  int total_dim_ = 0;
  std::vector<BlockRows> block_rows_;
  std::vector<RealMatrix> c_;
  RealVector cf_;
  RealVector b_;
  RealMatrix af_;
  double norm_b_ = 0;
  double norm_c_ = 0;

  std::vector<RealMatrix> x_;
  std::vector<RealMatrix> z_;
  RealVector y_;
  RealVector xf_;

  RealVector rp_;
  std::vector<RealMatrix> rd_;
  RealVector rf_;
  double pobj_ = 0;
  double dobj_ = 0;
  double pinf_ = 0;
  double dinf_ = 0;

  std::vector<RealMatrix> zinv_;
  bool use_llt_ = true;
  Eigen::LLT<RealMatrix> llt_;
  Eigen::PartialPivLU<RealMatrix> lu_;
};

}  // namespace

SdpSolution solve(const SdpProblem& p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  Solver s(p, cfg);
  return s.run();
}

RealMatrix embed_hermitian(const ComplexMatrix& h) {
  Eigen::Index n = h.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

RealMatrix embed_hermitian(const HermitianOperator& h) { return embed_hermitian(h.matrix()); }

HermitianOperator deembed(const RealMatrix& x) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0) throw DimensionError("deembed: need even square");
  Eigen::Index n = x.rows() / 2;
  RealMatrix re = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  RealMatrix im = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  ComplexMatrix h(n, n);
  h.real() = 0.5 * (re + re.transpose());
  h.imag() = 0.5 * (im - im.transpose());
  return HermitianOperator(h);
}

double bisect_threshold(const std::function<bool(double)>& feasible, double lo, double hi,
                        double tol) {
  if (!(hi >= lo)) throw ParameterError("bisect_threshold: empty bracket");
  if (!(tol > 0)) throw ParameterError("bisect_threshold: tolerance must be positive");
  if (feasible(lo)) return lo;
  if (!feasible(hi)) throw InfeasibleAtCap("predicate infeasible at bracket cap " + std::to_string(hi));
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<ComplexMatrix> hermitian_basis(int n) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<size_t>(n) * n);
  for (int p = 0; p < n; ++p) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(p, p) = 1.0;
    out.push_back(e);
  }
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      ComplexMatrix re = ComplexMatrix::Zero(n, n);
      re(p, q) = 1.0;
      re(q, p) = 1.0;
      out.push_back(re);
      ComplexMatrix im = ComplexMatrix::Zero(n, n);
      im(p, q) = Complex(0, 1);
      im(q, p) = Complex(0, -1);
      out.push_back(im);
    }
  }
  return out;
}

int LmiBuilder::add_block(int complex_dim) {
  if (complex_dim < 1) throw DimensionError("LMI block dimension must be >= 1");
  block_dims_.push_back(complex_dim);
  constants_.push_back(ComplexMatrix::Zero(complex_dim, complex_dim));
  return static_cast<int>(block_dims_.size()) - 1;
}

int LmiBuilder::add_scalar(double objective) {
  objective_.push_back(objective);
  terms_.emplace_back();
  return static_cast<int>(objective_.size()) - 1;
}

std::vector<int> LmiBuilder::add_hermitian(int n, const ComplexMatrix& objective) {
  std::vector<ComplexMatrix> basis = hermitian_basis(n);
  std::vector<int> vars;
  vars.reserve(basis.size());
  bool has_obj = objective.size() > 0;
  for (const ComplexMatrix& e : basis) {
    double c = has_obj ? (objective * e).trace().real() : 0.0;
    vars.push_back(add_scalar(c));
  }
  return vars;
}

void LmiBuilder::set_constant(int block, const ComplexMatrix& f0) {
  if (f0.rows() != block_dims_.at(block) || f0.cols() != block_dims_.at(block)) {
    throw DimensionError("LMI constant has the wrong dimension");
  }
  constants_[block] = f0;
}

void LmiBuilder::add_term(int block, int var, const ComplexMatrix& coeff) {
  if (coeff.rows() != block_dims_.at(block) || coeff.cols() != block_dims_.at(block)) {
    throw DimensionError("LMI coefficient has the wrong dimension");
  }
  terms_.at(var).emplace_back(block, coeff);
}

void LmiBuilder::add_hermitian_term(int block, const std::vector<int>& vars, int n,
                                    const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  std::vector<ComplexMatrix> basis = hermitian_basis(n);
  if (basis.size() != vars.size()) throw DimensionError("LMI Hermitian variable size mismatch");
  for (size_t i = 0; i < basis.size(); ++i) add_term(block, vars[i], map(basis[i]));
}

void LmiBuilder::add_equality(const std::vector<std::pair<int, double>>& coeffs, double rhs) {
  equalities_.emplace_back(coeffs, rhs);
}

SdpProblem LmiBuilder::build() const {
  // The LMI is the dual side of the standard form with C_k = embed(F_k0),
  // A_i = -embed(F_ki), b_i = objective_i, and one free primal column per
  // equality. A maximization LMI becomes a minimization standard form.
  SdpProblem p;
  p.sense = Sense::Minimize;
  for (int n : block_dims_) p.add_block(2 * n);
  double s = sense_ == Sense::Maximize ? 1.0 : -1.0;
  auto push_upper = [](SparseRow& row, int block, const RealMatrix& m, double scale) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r <= c; ++r) {
        double v = m(r, c);
        if (v != 0.0) row.entries.push_back({block, static_cast<int>(r), static_cast<int>(c), scale * v});
      }
    }
  };
  for (size_t k = 0; k < block_dims_.size(); ++k) {
    push_upper(p.objective, static_cast<int>(k), embed_hermitian(constants_[k]), 1.0);
  }
  for (size_t j = 0; j < equalities_.size(); ++j) {
    p.add_free();
    p.objective.free_coeffs.emplace_back(static_cast<int>(j), -equalities_[j].second);
  }
  std::vector<SparseRow> rows(objective_.size());
  for (size_t i = 0; i < objective_.size(); ++i) {
    for (const auto& [block, coeff] : terms_[i]) push_upper(rows[i], block, embed_hermitian(coeff), -1.0);
  }
  for (size_t j = 0; j < equalities_.size(); ++j) {
    for (const auto& [var, g] : equalities_[j].first) {
      rows.at(var).free_coeffs.emplace_back(static_cast<int>(j), -g);
    }
  }
  for (size_t i = 0; i < objective_.size(); ++i) p.add_constraint(std::move(rows[i]), s * objective_[i]);
  return p;
}

double LmiBuilder::lmi_objective(const SdpSolution& s) const {
  double v = 0;
  for (size_t i = 0; i < objective_.size(); ++i) v += objective_[i] * s.y(static_cast<Eigen::Index>(i));
  return v;
}

ComplexMatrix LmiBuilder::hermitian_value(const RealVector& y, const std::vector<int>& vars, int n) {
  std::vector<ComplexMatrix> basis = hermitian_basis(n);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (size_t i = 0; i < basis.size(); ++i) h += y(vars[i]) * basis[i];
  return h;
}

HermitianOperator LmiBuilder::multiplier(const SdpSolution& s, int block) {
  return deembed(s.x_blocks.at(block)) * 2.0;
}

HermitianOperator LmiBuilder::slack(const SdpSolution& s, int block) {
  return deembed(s.z_blocks.at(block));
}

}  // namespace kappa::sdp
