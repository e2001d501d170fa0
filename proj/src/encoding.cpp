#include "qdio/encoding.hpp"

#include <algorithm>
#include <stdexcept>

#include "qdio/errors.hpp"

namespace qdio {

Matrix shift_matrix(std::size_t levels) {
  if (levels == 0) throw std::invalid_argument("shift_matrix needs at least one level");
  Matrix s(levels, levels);
  for (std::size_t k = 0; k < levels; ++k) s((k + 1) % levels, k) = Complex(1);
  return s;
}

Matrix index_matrix(std::size_t levels, long first) {
  Matrix m(levels, levels);
  for (std::size_t k = 0; k < levels; ++k) m(k, k) = Complex(first + static_cast<long>(k));
  return m;
}

Matrix embed(const Matrix& op, std::size_t mode, std::size_t modes) {
  if (mode >= modes) throw std::out_of_range("embed: mode index out of range");
  const Matrix id = Matrix::identity(op.rows());
  Matrix out = Matrix::identity(1);
  for (std::size_t q = 0; q < modes; ++q) out = kron(out, q == mode ? op : id);
  return out;
}

Matrix evaluate_on_matrices(const DioPolynomial& d, std::span<const Matrix> vars, std::size_t dim) {
  if (vars.size() != d.nvars()) throw std::invalid_argument("evaluate_on_matrices: one matrix per variable required");
  Matrix out = Matrix::zero(dim, dim);
  for (const auto& [mono, coeff] : d.terms()) {
    Matrix term = Matrix::identity(dim);
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (mono[k] > 0) term = term * power(vars[k], mono[k]);
    }
    out += term * Complex(Rational(coeff));
  }
  return out;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::shift:
      return "shift";
    case Scheme::damping:
      return "damping";
    case Scheme::coherent:
      return "coherent";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "shift") return Scheme::shift;
  if (text == "damping") return Scheme::damping;
  if (text == "coherent") return Scheme::coherent;
  throw ParseError("unknown scheme '" + std::string(text) + "'");
}

std::vector<std::size_t> ShiftEncoding::counts(const Policy& p) const {
  std::vector<std::size_t> c(n, 0);
  for (auto step : p) {
    if (step > n) throw std::out_of_range("policy step is not a channel of this encoding");
    if (step > 0) ++c[step - 1];
  }
  return c;
}

Tuple ShiftEncoding::decode(const Policy& p) const {
  const auto c = counts(p);
  const std::size_t top = levels() - 1;
  Tuple x(n);
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t level = scheme == Scheme::damping ? top - std::min(c[l], top) : c[l] % levels();
    x[l] = lowest() + static_cast<long>(level);
  }
  return x;
}

Policy ShiftEncoding::canonical_policy(std::span<const std::size_t> counts) const {
  if (counts.size() != n) throw std::invalid_argument("canonical_policy: one count per variable required");
  Policy p;
  for (std::size_t l = 0; l < n; ++l) p.insert(p.end(), counts[l], l + 1);
  if (p.size() > policy_length) throw std::invalid_argument("canonical_policy: counts exceed the policy length");
  p.resize(policy_length, 0);
  return p;
}

namespace {

struct Layout {
  std::size_t n;
  std::size_t levels;
  std::size_t dim;
  long lowest;
  std::size_t length;
  std::vector<std::string> warnings;
};

Layout layout_for(const DioPolynomial& d, std::size_t bound, std::optional<std::size_t> policy_length,
                  Positivity positivity) {
  if (bound < 1) throw std::invalid_argument("encoding bound must be >= 1");
  Layout l;
  l.n = d.nvars();
  l.lowest = positivity == Positivity::positive ? 1 : 0;
  l.levels = bound - static_cast<std::size_t>(l.lowest) + 1;
  l.dim = 1;
  for (std::size_t k = 0; k < l.n; ++k) {
    if (l.dim > kMaxEncodingDim / l.levels) {
      throw LimitError("encoding dimension " + std::to_string(l.levels) + "^" + std::to_string(l.n) + " exceeds " +
                       std::to_string(kMaxEncodingDim));
    }
    l.dim *= l.levels;
  }
  const std::size_t scan = l.n * bound;
  l.length = policy_length.value_or(scan);
  if (l.length < scan) {
    l.warnings.push_back("policy length " + std::to_string(l.length) + " < n*X = " + std::to_string(scan) +
                         "; only solutions reachable within that many steps are guaranteed");
  }
  return l;
}

Matrix encoded_observable(const DioPolynomial& d, const Layout& l) {
  std::vector<Matrix> xi;
  for (std::size_t k = 0; k < l.n; ++k) xi.push_back(embed(index_matrix(l.levels, l.lowest), k, l.n));
  const Matrix dop = evaluate_on_matrices(d, xi, l.dim);
  return -(dop * dop);
}

PolicySet full_alphabet(const Layout& l) {
  std::vector<std::size_t> values(l.n + 1);
  for (std::size_t k = 0; k <= l.n; ++k) values[k] = k;
  return PolicySet::grid(std::move(values), l.length);
}

}  // namespace

std::vector<Matrix> damping_kraus(std::size_t levels) {
  std::vector<Matrix> ks;
  ks.push_back(Matrix::basis_projector(levels, 0));
  for (std::size_t k = 1; k < levels; ++k) {
    Matrix m(levels, levels);
    m(k - 1, k) = Complex(1);
    ks.push_back(std::move(m));
  }
  return ks;
}

ShiftEncoding shift_encoding(const DioPolynomial& d, std::size_t bound, std::optional<std::size_t> policy_length,
                             Positivity positivity) {
  auto l = layout_for(d, bound, policy_length, positivity);
  std::vector<Channel> channels{Channel::identity(l.dim)};
  const Matrix sigma = shift_matrix(l.levels);
  for (std::size_t k = 0; k < l.n; ++k) channels.push_back(Channel::unitary(embed(sigma, k, l.n)));
  ControlProblem prob(std::move(channels), DensityMatrix::basis_state(l.dim, 0),
                      ObservableTarget{encoded_observable(d, l)}, full_alphabet(l));
  return ShiftEncoding{std::move(prob), Scheme::shift, l.n, bound, l.length, positivity, std::move(l.warnings)};
}

ShiftEncoding damping_encoding(const DioPolynomial& d, std::size_t bound, std::optional<std::size_t> policy_length,
                               Positivity positivity) {
  auto l = layout_for(d, bound, policy_length, positivity);
  std::vector<Channel> channels{Channel::identity(l.dim)};
  const auto single = damping_kraus(l.levels);
  for (std::size_t k = 0; k < l.n; ++k) {
    std::vector<Matrix> ks;
    for (const auto& m : single) ks.push_back(embed(m, k, l.n));
    channels.emplace_back(std::move(ks));
  }
  ControlProblem prob(std::move(channels), DensityMatrix::basis_state(l.dim, l.dim - 1),
                      ObservableTarget{encoded_observable(d, l)}, full_alphabet(l));
  return ShiftEncoding{std::move(prob), Scheme::damping, l.n, bound, l.length, positivity, std::move(l.warnings)};
}

}  // namespace qdio
