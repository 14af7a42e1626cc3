#include "bcasc/forces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcasc {

namespace {

constexpr double kCollinearModulus = 1.0 - 1e-12;
constexpr double kCoincidentDistance = 1e-14;

// e^{i 2 pi num/den}, exact at quarter turns so that K = 1 reduces to the
// plain force and K = 2 to the real antipodal pair without trig residue.
std::complex<double> unit_phase(long num, long den) {
  num %= den;
  if (num < 0) num += den;
  const long q4 = 4 * num;
  if (q4 % den == 0) {
    switch (q4 / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle =
      2.0 * std::numbers::pi * (static_cast<double>(num) / den);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<std::complex<double>> full_grid(int count) {
  std::vector<std::complex<double>> phases(count);
  for (int j = 0; j < count; ++j) phases[j] = unit_phase(j, count);
  return phases;
}

// The nodes added when a `count`-node grid is doubled: offsets pi(2j+1)/count.
std::vector<std::complex<double>> odd_grid(int count) {
  std::vector<std::complex<double>> phases(count);
  for (int j = 0; j < count; ++j) {
    phases[j] = unit_phase(2L * j + 1, 2L * count);
  }
  return phases;
}

// ratio2^(nu/2) for ratio2 in (0, 1]; exponentiation by squaring. Underflow
// to 0 is the correct limit for negligible terms.
inline double pow_half_nu(double ratio2, int nu) {
  double result = (nu & 1) ? std::sqrt(ratio2) : 1.0;
  double base = ratio2;
  for (int q = nu >> 1; q > 0; q >>= 1) {
    if (q & 1) result *= base;
    base *= base;
  }
  return result;
}

// In-place w[j] = w[j]^(nu/2) for a whole node row. The ladder exponents are
// powers of two, where this is just repeated squaring of the row (and the
// rounding sequence matches pow_half_nu exactly); other exponents fall back
// to the scalar path.
inline void pow_half_nu_row(double* w, int count, int nu) {
  if (nu >= 2 && std::has_single_bit(static_cast<unsigned>(nu))) {
    for (int t = 2; t < nu; t *= 2) {  // log2(nu) - 1 squarings give w^(nu/2)
      for (int j = 0; j < count; ++j) w[j] *= w[j];
    }
    return;
  }
  for (int j = 0; j < count; ++j) w[j] = pow_half_nu(w[j], nu);
}

// Per-neighbor node sums for one codeword m:
//   a[l] = sum_j w_j,   b[l] = sum_j w_j p_j,
// with w_j = (d_ref / d_l(p_j))^nu and d_ref the minimum distance over the
// node set. All weights lie in (0, 1]; log(d_ref) is kept so the dropped
// common factor d_ref^{-nu} can be reported and merged across node sets.
struct Accum {
  Eigen::VectorXd a;
  Eigen::VectorXcd b;
  double log_ref = 0.0;
};

// One phase node set, stored as separate real/imaginary arrays so the node
// loops vectorize.
struct PhaseGrid {
  std::vector<double> re;
  std::vector<double> im;

  explicit PhaseGrid(const std::vector<std::complex<double>>& phases) {
    re.reserve(phases.size());
    im.reserve(phases.size());
    for (const auto& p : phases) {
      re.push_back(p.real());
      im.push_back(p.imag());
    }
  }
  int count() const { return static_cast<int>(re.size()); }
};

Accum accumulate_nodes(const Eigen::MatrixXcd& gram_matrix, int m,
                       const PhaseGrid& grid, int nu,
                       std::vector<double>& scratch) {
  const int mm = static_cast<int>(gram_matrix.cols());
  const int nodes = grid.count();
  Accum acc;
  acc.a = Eigen::VectorXd::Zero(mm);
  acc.b = Eigen::VectorXcd::Zero(mm);

  scratch.resize(static_cast<size_t>(mm) * nodes);
  double d2_min = std::numeric_limits<double>::infinity();
  for (int l = 0; l < mm; ++l) {
    if (l == m) continue;
    const double gr = gram_matrix(m, l).real();
    const double gi = gram_matrix(m, l).imag();
    double* row = scratch.data() + static_cast<size_t>(l) * nodes;
    for (int j = 0; j < nodes; ++j) {
      // |s_m - s_l p|^2 = 2 - 2 Re(p <s_m, s_l>); floor guards rounding for
      // pairs sitting at the collinearity threshold.
      row[j] = std::max(2.0 - 2.0 * (grid.re[j] * gr - grid.im[j] * gi), 1e-15);
    }
    for (int j = 0; j < nodes; ++j) d2_min = std::min(d2_min, row[j]);
  }
  acc.log_ref = 0.5 * std::log(d2_min);

  for (int l = 0; l < mm; ++l) {
    if (l == m) continue;
    double* row = scratch.data() + static_cast<size_t>(l) * nodes;
    for (int j = 0; j < nodes; ++j) row[j] = d2_min / row[j];
    pow_half_nu_row(row, nodes, nu);
    double sum_a = 0.0, sum_br = 0.0, sum_bi = 0.0;
    for (int j = 0; j < nodes; ++j) {
      sum_a += row[j];
      sum_br += row[j] * grid.re[j];
      sum_bi += row[j] * grid.im[j];
    }
    acc.a[l] = sum_a;
    acc.b[l] = std::complex<double>(sum_br, sum_bi);
  }
  return acc;
}

// Bring both operands to the smaller reference distance and add; the applied
// factors are <= 1, so merging never overflows.
void merge_accum(Accum& into, const Accum& add, int nu) {
  const double log_common = std::min(into.log_ref, add.log_ref);
  const double f_into = std::exp(nu * (log_common - into.log_ref));
  const double f_add = std::exp(nu * (log_common - add.log_ref));
  into.a = f_into * into.a + f_add * add.a;
  into.b = f_into * into.b + f_add * add.b;
  into.log_ref = log_common;
}

// F_m = (sum_l a_l) s_m - sum_l b_l s_l, assembled as one matrix-vector
// product so the node loops above stay O(1) per node regardless of N.
Eigen::VectorXcd assemble_force(const Eigen::MatrixXcd& entries, int m,
                                const Accum& acc) {
  Eigen::VectorXcd coeff = -acc.b;
  coeff[m] = std::complex<double>(acc.a.sum(), 0.0);
  return entries * coeff;
}

Eigen::VectorXcd normalized_or_throw(const Eigen::VectorXcd& force,
                                     double weight_sum, int m) {
  const double norm = force.norm();
  if (!(norm > 1e-14 * std::max(1.0, weight_sum))) {
    throw std::runtime_error("zero net force on codeword " +
                             std::to_string(m) +
                             " (degenerate configuration)");
  }
  return force / norm;
}

void check_not_collinear(const Eigen::MatrixXcd& gram_matrix,
                         const std::string& message) {
  const int mm = static_cast<int>(gram_matrix.cols());
  for (int i = 0; i < mm; ++i) {
    for (int j = i + 1; j < mm; ++j) {
      if (std::abs(gram_matrix(i, j)) > kCollinearModulus) {
        throw std::runtime_error(message + " (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
      }
    }
  }
}

// The discrete phase modes are singular only where a denominator actually
// vanishes: some phase image of one codeword coincides with another. Merely
// collinear pairs whose orbit points miss the grid repel normally (a K = 1
// search legitimately ends with collinear lines). A collision needs
// |<s_p, s_q>| within 5e-29 of one, so pairs below the screen cannot collide
// and the per-node distances are only evaluated for the (rare) survivors.
void check_no_orbit_collision(const SphericalCode& code,
                              const Eigen::MatrixXcd& gram_matrix,
                              const std::vector<std::complex<double>>& phases,
                              const std::string& message) {
  constexpr double kScreen = 1.0 - 1e-9;
  const auto& a = code.entries();
  for (int i = 0; i < code.size(); ++i) {
    for (int j = i + 1; j < code.size(); ++j) {
      if (std::abs(gram_matrix(i, j)) < kScreen) continue;
      for (const auto& p : phases) {
        if ((a.col(i) - a.col(j) * p).norm() < kCoincidentDistance) {
          throw std::runtime_error(message + " (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
        }
      }
    }
  }
}

void check_preconditions(const SphericalCode& code, int nu) {
  if (nu < 2) throw std::invalid_argument("force exponent requires nu >= 2");
  if (code.size() < 2) {
    throw std::invalid_argument("forces undefined for a single codeword");
  }
}

ForceField finalize(const SphericalCode& code, int nu, ForceMode mode, int k,
                    const std::vector<Accum>& accs, int nonconverged) {
  const int n = code.dim();
  const int mm = code.size();
  ForceField field;
  field.mode = mode;
  field.k = k;
  field.quadrature_nonconverged = nonconverged;
  field.directions.resize(n, mm);
  field.raw.resize(n, mm);
  field.log_scale.resize(mm);
  field.pulls.resize(n, mm);
  field.residuals.resize(mm);
  for (int m = 0; m < mm; ++m) {
    const Eigen::VectorXcd force = assemble_force(code.entries(), m, accs[m]);
    field.raw.col(m) = force;
    field.log_scale[m] = -static_cast<double>(nu) * accs[m].log_ref;
    field.directions.col(m) = normalized_or_throw(force, accs[m].a.sum(), m);
    field.pulls.col(m) = field.directions.col(m) - code.entries().col(m);
    field.residuals[m] = field.pulls.col(m).norm();
  }
  return field;
}

}  // namespace

ForceField plain_forces(const SphericalCode& code, int nu) {
  check_preconditions(code, nu);
  const Eigen::MatrixXcd g = gram(code);
  const auto phases = full_grid(1);
  check_no_orbit_collision(code, g, phases, "coincident codewords");
  std::vector<Accum> accs(code.size());
  std::vector<double> scratch;
  const PhaseGrid grid(phases);
  for (int m = 0; m < code.size(); ++m) {
    accs[m] = accumulate_nodes(g, m, grid, nu, scratch);
  }
  return finalize(code, nu, ForceMode::Plain, 0, accs, 0);
}

ForceField phase_sum_forces(const SphericalCode& code, int nu, int k) {
  check_preconditions(code, nu);
  if (k < 1) throw std::invalid_argument("phase sum requires K >= 1");
  const Eigen::MatrixXcd g = gram(code);
  const auto phases = full_grid(k);
  check_no_orbit_collision(code, g, phases, "codeword collision on phase orbit");
  std::vector<Accum> accs(code.size());
  std::vector<double> scratch;
  const PhaseGrid grid(phases);
  for (int m = 0; m < code.size(); ++m) {
    accs[m] = accumulate_nodes(g, m, grid, nu, scratch);
  }
  return finalize(code, nu, ForceMode::PhaseSum, k, accs, 0);
}

ForceField real_antipodal_forces(const SphericalCode& code, int nu) {
  check_preconditions(code, nu);
  if (code.field() != Field::Real) {
    throw std::invalid_argument("real antipodal forces require a real code");
  }
  const Eigen::MatrixXcd g = gram(code);
  const auto phases = full_grid(2);  // exactly {+1, -1}
  check_no_orbit_collision(code, g, phases, "equal or antipodal codeword pair");
  std::vector<Accum> accs(code.size());
  std::vector<double> scratch;
  const PhaseGrid grid(phases);
  for (int m = 0; m < code.size(); ++m) {
    accs[m] = accumulate_nodes(g, m, grid, nu, scratch);
  }
  return finalize(code, nu, ForceMode::RealAntipodal, 2, accs, 0);
}

ForceField phase_integral_forces(const SphericalCode& code, int nu,
                                 const QuadratureSpec& quad) {
  check_preconditions(code, nu);
  if (quad.initial_nodes < 4) {
    throw std::invalid_argument("quadrature requires initial_nodes >= 4");
  }
  if (quad.max_nodes < quad.initial_nodes) {
    throw std::invalid_argument("quadrature requires max_nodes >= initial_nodes");
  }
  if (!(quad.rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature requires rel_tol > 0");
  }

  const Eigen::MatrixXcd g = gram(code);
  check_not_collinear(g, "integrand singular: collinear codewords");

  // Node sets shared across codewords: level 0 is the initial full grid,
  // level t >= 1 holds the nodes added when doubling from
  // initial * 2^(t-1) to initial * 2^t.
  std::vector<PhaseGrid> levels;
  levels.emplace_back(full_grid(quad.initial_nodes));

  std::vector<Accum> accs(code.size());
  std::vector<double> scratch;
  int nonconverged = 0;

  for (int m = 0; m < code.size(); ++m) {
    Accum acc = accumulate_nodes(g, m, levels[0], nu, scratch);
    Eigen::VectorXcd dir = normalized_or_throw(
        assemble_force(code.entries(), m, acc), acc.a.sum(), m);
    long nodes = quad.initial_nodes;
    bool converged = false;
    int level = 1;
    while (nodes < quad.max_nodes) {
      if (level >= static_cast<int>(levels.size())) {
        levels.emplace_back(odd_grid(static_cast<int>(nodes)));
      }
      Accum more = accumulate_nodes(g, m, levels[level], nu, scratch);
      merge_accum(acc, more, nu);
      nodes *= 2;
      ++level;
      Eigen::VectorXcd refined = normalized_or_throw(
          assemble_force(code.entries(), m, acc), acc.a.sum(), m);
      const double change = (refined - dir).norm();
      dir = std::move(refined);
      if (change < quad.rel_tol) {
        converged = true;
        break;
      }
    }
    if (!converged) ++nonconverged;
    accs[m] = std::move(acc);
  }
  return finalize(code, nu, ForceMode::PhaseIntegral, 0, accs, nonconverged);
}

ForceField compute_forces(const SphericalCode& code, int nu,
                          const ForceSpec& spec) {
  switch (spec.mode) {
    case ForceMode::Plain:
      return plain_forces(code, nu);
    case ForceMode::PhaseSum:
      return phase_sum_forces(code, nu, spec.k);
    case ForceMode::RealAntipodal:
      return real_antipodal_forces(code, nu);
    case ForceMode::PhaseIntegral:
    default:
      return phase_integral_forces(code, nu, spec.quadrature);
  }
}

}  // namespace bcasc
