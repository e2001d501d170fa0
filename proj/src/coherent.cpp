#include "qdio/coherent.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdio {

CoherentProblem coherent_encoding(const DioPolynomial& d) { return CoherentProblem{d}; }

std::vector<std::size_t> coherent_counts(const CoherentProblem& prob, std::span<const std::size_t> policy) {
  std::vector<std::size_t> c(prob.modes(), 0);
  for (auto step : policy) {
    if (step > prob.modes()) throw std::out_of_range("policy step is not a displacement channel");
    if (step > 0) ++c[step - 1];
  }
  return c;
}

Rational coherent_objective(const CoherentProblem& prob, std::span<const Integer> counts) {
  const Integer v = poly_eval(prob.dio, counts);
  return Rational(-(v * v));
}

std::size_t min_fock_truncation(std::span<const Integer> counts) {
  Integer top(0);
  for (const auto& c : counts) {
    if (c < 0) throw std::invalid_argument("coherent counts must be nonnegative");
    top = std::max(top, c);
  }
  if (!top.fits_ulong_p() || top > 10'000) throw std::invalid_argument("coherent count too large for Fock validation");
  const std::size_t m = top.get_ui();
  return 4 * m * m + 16;
}

double fock_validate(const CoherentProblem& prob, std::span<const Integer> counts, std::size_t truncation) {
  if (counts.size() != prob.modes()) throw std::invalid_argument("fock_validate: one count per mode required");
  if (truncation < min_fock_truncation(counts)) {
    throw std::invalid_argument("fock_validate: truncation " + std::to_string(truncation) + " below required " +
                                std::to_string(min_fock_truncation(counts)));
  }
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const auto m = static_cast<Eigen::Index>(truncation);

  MatrixXd a = MatrixXd::Zero(m, m);
  for (Eigen::Index k = 1; k < m; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const MatrixXd displacement = (MatrixXd(a.transpose()) - a).exp();

  std::vector<VectorXd> mode_state;
  for (const auto& c : counts) {
    VectorXd v = VectorXd::Zero(m);
    v(0) = 1.0;
    for (unsigned long k = 0; k < c.get_ui(); ++k) v = displacement * v;
    mode_state.push_back(std::move(v));
  }

  // D(a)|psi> = sum_t coeff_t (x)_l a^{e_tl} |psi_l>, a sum of product vectors.
  struct Term {
    double coeff;
    std::vector<VectorXd> factors;
  };
  std::vector<Term> terms;
  for (const auto& [mono, coeff] : prob.dio.terms()) {
    Term t{coeff.get_d(), {}};
    for (std::size_t l = 0; l < mode_state.size(); ++l) {
      VectorXd w = mode_state[l];
      for (std::uint32_t e = 0; e < mono[l]; ++e) w = a * w;
      t.factors.push_back(std::move(w));
    }
    terms.push_back(std::move(t));
  }
  double norm_sq = 0.0;
  for (const auto& s : terms) {
    for (const auto& t : terms) {
      double overlap = s.coeff * t.coeff;
      for (std::size_t l = 0; l < s.factors.size(); ++l) overlap *= s.factors[l].dot(t.factors[l]);
      norm_sq += overlap;
    }
  }
  const double numeric = -norm_sq;
  return std::abs(numeric - coherent_objective(prob, counts).get_d());
}

CoherentProblem kerr_example(long alpha, long beta, long gamma) {
  if (alpha < 1 || beta < 1 || gamma < 1) throw std::invalid_argument("kerr_example needs positive alpha, beta, gamma");
  DioPolynomial d(2);
  d.add_term({2, 0}, Integer(alpha));
  d.add_term({0, 1}, Integer(beta));
  d.add_term({0, 0}, Integer(-gamma));
  return coherent_encoding(d);
}

CoherentProblem pell_example(long n) {
  if (n < 1) throw std::invalid_argument("pell_example needs n >= 1");
  DioPolynomial d(2);
  d.add_term({2, 0}, Integer(1));
  d.add_term({0, 2}, Integer(-n * n));
  d.add_term({0, 0}, Integer(-1));
  return coherent_encoding(d);
}

}  // namespace qdio
