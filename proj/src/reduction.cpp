#include "qdio/reduction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qdio/errors.hpp"

namespace qdio {

namespace {

using PolyMatrix = std::map<Monomial, Matrix, GradedLex>;

std::vector<std::vector<Matrix>> padded_kraus(std::span<const Channel> channels) {
  std::size_t slots = 0;
  for (const auto& c : channels) slots = std::max(slots, c.kraus().size());
  const std::size_t d = channels.front().dim();
  std::vector<std::vector<Matrix>> out;
  out.reserve(channels.size());
  for (const auto& c : channels) {
    auto ks = c.kraus();
    ks.resize(slots, Matrix::zero(d, d));
    out.push_back(std::move(ks));
  }
  return out;
}

// Coefficients of p^e mod M(p) = p (p-1) ... (p-N+1) for e = 0..max_exp.
// Entry e has N components (ascending powers).
std::vector<std::vector<Rational>> node_reduction_table(std::size_t n, std::size_t max_exp) {
  std::vector<Rational> monic{Rational(1)};  // M(p), ascending
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Rational> next(monic.size() + 1);
    for (std::size_t k = 0; k < monic.size(); ++k) {
      next[k + 1] += monic[k];
      next[k] -= monic[k] * static_cast<unsigned long>(v);
    }
    monic = std::move(next);
  }
  std::vector<std::vector<Rational>> table(max_exp + 1, std::vector<Rational>(n));
  std::vector<Rational> cur(n);
  cur[0] = 1;
  for (std::size_t e = 0; e <= max_exp; ++e) {
    if (e > 0) {
      // cur <- p * cur mod M.
      const Rational top = cur[n - 1];
      for (std::size_t k = n - 1; k > 0; --k) cur[k] = cur[k - 1];
      cur[0] = 0;
      for (std::size_t k = 0; k < n; ++k) cur[k] -= top * monic[k];
    }
    table[e] = cur;
  }
  return table;
}

// rho(p) as a polynomial in the policy unknowns with matrix coefficients.
// Builds the ordered product one step at a time: the step-s factor wraps the
// state produced by steps 0..s-1, which expands to the same sum over Kraus
// index tuples as the fully written-out product. Each unknown is reduced
// modulo the node polynomial p (p-1) ... (p-N+1): values at the channel
// indices are unchanged and every exponent stays below N.
PolyMatrix symbolic_state(const ControlProblem& prob, std::size_t length) {
  const auto interp = lagrange_interpolate(prob.channels(), 0);
  const std::size_t n = prob.channels().size();
  const auto reduce = node_reduction_table(n, 2 * (n - 1));
  std::vector<std::vector<Matrix>> adjoints;
  for (const auto& phi : interp) {
    std::vector<Matrix> adj;
    for (const auto& c : phi.coeffs) adj.push_back(dagger(c));
    adjoints.push_back(std::move(adj));
  }

  PolyMatrix state;
  state.emplace(Monomial(length, 0), prob.rho0().matrix());
  for (std::size_t step = 0; step < length; ++step) {
    PolyMatrix next;
    for (const auto& [mono, rho] : state) {
      for (std::size_t j = 0; j < interp.size(); ++j) {
        const auto& coeffs = interp[j].coeffs;
        for (std::size_t e = 0; e < coeffs.size(); ++e) {
          if (coeffs[e].is_zero()) continue;
          const Matrix left = coeffs[e] * rho;
          for (std::size_t f = 0; f < coeffs.size(); ++f) {
            if (coeffs[f].is_zero()) continue;
            const Matrix term = left * adjoints[j][f];
            if (term.is_zero()) continue;
            const auto& red = reduce[e + f];
            for (std::size_t k = 0; k < n; ++k) {
              if (sgn(red[k]) == 0) continue;
              Monomial m = mono;
              m[step] = static_cast<std::uint32_t>(k);
              Matrix scaled = term * Complex(red[k]);
              auto [it, inserted] = next.try_emplace(std::move(m), std::move(scaled));
              if (!inserted) it->second += scaled;
            }
          }
        }
      }
    }
    state = std::move(next);
  }
  return state;
}

void check_length(std::size_t length) {
  if (length == 0) throw std::invalid_argument("policy length must be positive");
  if (length > kMaxSymbolicLength) {
    throw LimitError("symbolic expansion refuses policy length " + std::to_string(length) + " (limit " +
                     std::to_string(kMaxSymbolicLength) + ")");
  }
}

RatPolynomial square_sum(const RatPolynomial& a) { return a * a; }

ReductionResult finish(RatPolynomial rational, std::size_t length, bool with_ancillas) {
  ReductionResult r;
  auto cleared = clear_denominators(rational);
  r.equation = std::move(cleared.poly);
  r.scale = cleared.scale;
  r.rational_form = std::move(rational);
  r.policy_length = length;
  std::size_t x = 1;
  for (std::size_t k = 1; k <= length; ++k) r.variable_legend.emplace_back("x" + std::to_string(x++), "p" + std::to_string(k));
  if (with_ancillas) {
    for (const char* prefix : {"a", "b"}) {
      for (int k = 1; k <= 4; ++k) {
        std::string name = prefix + std::to_string(k);
        r.ancillas.push_back(name);
        r.variable_legend.emplace_back("x" + std::to_string(x++), name);
      }
    }
  }
  return r;
}

}  // namespace

Matrix MatrixPolynomial::evaluate(const Rational& i) const {
  if (coeffs.empty()) throw std::logic_error("empty matrix polynomial");
  // Horner.
  Matrix acc = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc *= Complex(i);
    acc += coeffs[k];
  }
  return acc;
}

std::vector<MatrixPolynomial> lagrange_interpolate(std::span<const Channel> channels, long first_node) {
  if (channels.empty()) throw std::invalid_argument("lagrange_interpolate needs at least one channel");
  const std::size_t n = channels.size();
  const std::size_t d = channels.front().dim();
  for (const auto& c : channels) {
    if (c.dim() != d) throw std::invalid_argument("lagrange_interpolate: channel dimensions differ");
  }

  // Coefficients of the Lagrange basis polynomials L_l(i).
  std::vector<std::vector<Rational>> basis(n);
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<Rational> poly{Rational(1)};
    const long node_l = first_node + static_cast<long>(l);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == l) continue;
      const long node_m = first_node + static_cast<long>(m);
      Rational inv_gap(1, node_l - node_m);
      inv_gap.canonicalize();
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k] * inv_gap;
        next[k] -= poly[k] * node_m * inv_gap;
      }
      poly = std::move(next);
    }
    for (auto& q : poly) q.canonicalize();
    basis[l] = std::move(poly);
  }

  const auto kraus = padded_kraus(channels);
  const std::size_t slots = kraus.front().size();
  std::vector<MatrixPolynomial> out(slots);
  for (std::size_t j = 0; j < slots; ++j) {
    out[j].coeffs.assign(n, Matrix::zero(d, d));
    for (std::size_t l = 0; l < n; ++l) {
      if (kraus[l][j].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(basis[l][k]) != 0) out[j].coeffs[k] += kraus[l][j] * Complex(basis[l][k]);
      }
    }
  }
  return out;
}

RatPolynomial symbolic_J(const ControlProblem& prob, std::size_t length) {
  const Matrix& obs = prob.observable();
  check_length(length);
  RatPolynomial out(length);
  for (const auto& [mono, rho] : symbolic_state(prob, length)) {
    const Complex t = trace_product(obs, rho);
    if (!t.is_real()) throw std::logic_error("symbolic_J: non-real coefficient");
    out.add_term(mono, t.re());
  }
  return out;
}

RatPolynomial symbolic_F(const ControlProblem& prob, std::size_t length) {
  const Matrix& target = prob.target_state().matrix();
  check_length(length);
  const std::size_t d = prob.dim();
  auto state = symbolic_state(prob, length);
  {
    auto [it, inserted] = state.try_emplace(Monomial(length, 0), Matrix::zero(d, d));
    it->second -= target;
  }
  // Hermitian difference: sum |D_rc|^2 = sum_r D_rr^2 + 2 sum_{r<c} |D_rc|^2.
  RatPolynomial out(length);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      RatPolynomial re(length), im(length);
      for (const auto& [mono, m] : state) {
        re.add_term(mono, m(r, c).re());
        im.add_term(mono, m(r, c).im());
      }
      RatPolynomial sq = square_sum(re) + square_sum(im);
      if (r != c) sq *= Rational(2);
      out += sq;
    }
  }
  return out;
}

RatPolynomial objective_polynomial(const ControlProblem& prob, std::size_t length) {
  if (prob.has_observable()) return symbolic_J(prob, length).pow(2);
  return symbolic_F(prob, length);
}

RatPolynomial accessibility_term(const PolicySet& ap, std::size_t length, std::size_t nvars) {
  if (nvars < length) throw std::invalid_argument("accessibility_term: fewer unknowns than steps");
  auto var = [&](std::size_t k) { return RatPolynomial::variable(nvars, k); };
  auto constant = [&](long v) { return RatPolynomial::constant(nvars, Rational(v)); };

  if (ap.is_grid()) {
    const auto& g = ap.grid();
    if (g.length != length) {
      throw std::invalid_argument("accessibility_term: grid length " + std::to_string(g.length) + " != " +
                                  std::to_string(length));
    }
    RatPolynomial sum(nvars);
    for (std::size_t k = 0; k < length; ++k) {
      RatPolynomial prod = constant(1);
      for (auto v : g.values) {
        const RatPolynomial diff = var(k) - constant(static_cast<long>(v));
        prod *= diff * diff;
      }
      sum += prod;
    }
    return sum;
  }

  RatPolynomial prod = constant(1);
  for (const auto& member : ap.policies()) {
    if (member.size() != length) {
      throw std::invalid_argument("accessibility_term: policy of length " + std::to_string(member.size()) +
                                  " in a set for length " + std::to_string(length));
    }
    RatPolynomial sum(nvars);
    for (std::size_t k = 0; k < length; ++k) {
      const RatPolynomial diff = var(k) - constant(static_cast<long>(member[k]));
      sum += diff * diff;
    }
    prod *= sum;
  }
  return prod;
}

ReductionResult exact_equation(const ControlProblem& prob, std::size_t length) {
  RatPolynomial g = objective_polynomial(prob, length);
  g += accessibility_term(prob.ap(), length);
  return finish(std::move(g), length, false);
}

ReductionResult epsilon_equation(const ControlProblem& prob, std::size_t length, const Rational& eps) {
  if (sgn(eps) <= 0) throw std::invalid_argument("epsilon must be positive");
  const std::size_t nvars = length + 8;
  const RatPolynomial g = objective_polynomial(prob, length).widened(nvars);

  auto one_plus_squares = [&](std::size_t first) {
    RatPolynomial s = RatPolynomial::constant(nvars, Rational(1));
    for (std::size_t k = first; k < first + 4; ++k) {
      const auto v = RatPolynomial::variable(nvars, k);
      s += v * v;
    }
    return s;
  };
  const RatPolynomial a = one_plus_squares(length);
  const RatPolynomial b = one_plus_squares(length + 4);
  const RatPolynomial inner = b * (g - RatPolynomial::constant(nvars, eps)) + a;
  RatPolynomial full = inner * inner;
  full += accessibility_term(prob.ap(), length, nvars);
  return finish(std::move(full), length, true);
}

}  // namespace qdio
