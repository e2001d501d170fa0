#include "qdio/search.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

#include "qdio/errors.hpp"

namespace qdio {

namespace {

struct Partial {
  std::optional<Rational> best;
  std::vector<Policy> optimizers;
  std::size_t evaluations = 0;
};

bool better(Goal goal, const Rational& a, const Rational& b) { return goal == Goal::maximize ? a > b : a < b; }

void record(Goal goal, Partial& part, const Rational& value, const Policy& p) {
  ++part.evaluations;
  if (!part.best || better(goal, value, *part.best)) {
    part.best = value;
    part.optimizers.clear();
    part.optimizers.push_back(p);
  } else if (value == *part.best) {
    part.optimizers.push_back(p);
  }
}

// Depth-first over the grid; the state at depth k is shared by every policy
// with the same k-step prefix.
void grid_dfs(const ControlProblem& prob, Goal goal, const GridPolicies& g, Policy& prefix, const DensityMatrix& rho,
              Partial& part) {
  if (prefix.size() == g.length) {
    record(goal, part, objective_value(prob, rho), prefix);
    return;
  }
  for (auto v : g.values) {
    prefix.push_back(v);
    grid_dfs(prob, goal, g, prefix, apply_channel(prob.channels()[v], rho), part);
    prefix.pop_back();
  }
}

// Sorted explicit list; states for the common prefix with the previous
// policy are reused.
void explicit_scan(const ControlProblem& prob, Goal goal, std::span<const Policy> policies, Partial& part) {
  std::vector<DensityMatrix> states{prob.rho0()};
  const Policy* prev = nullptr;
  for (const auto& p : policies) {
    std::size_t common = 0;
    if (prev != nullptr) {
      while (common < prev->size() && common < p.size() && (*prev)[common] == p[common]) ++common;
    }
    states.resize(common + 1, prob.rho0());
    for (std::size_t k = common; k < p.size(); ++k) states.push_back(apply_channel(prob.channels()[p[k]], states.back()));
    record(goal, part, objective_value(prob, states.back()), p);
    prev = &p;
  }
}

template <class Fn>
void run_workers(unsigned jobs, Fn&& fn) {
  if (jobs <= 1) {
    fn(0u);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(fn, w);
  for (auto& t : pool) t.join();
}

SearchReport merge(Goal goal, std::vector<Partial>& parts, bool exhausted) {
  SearchReport r;
  r.goal = goal;
  r.exhausted = exhausted;
  bool have_best = false;
  for (const auto& p : parts) {
    r.evaluations += p.evaluations;
    if (p.best && (!have_best || better(goal, *p.best, r.optimal_value))) {
      r.optimal_value = *p.best;
      have_best = true;
    }
  }
  for (auto& p : parts) {
    if (p.best && *p.best == r.optimal_value) {
      r.optimizers.insert(r.optimizers.end(), p.optimizers.begin(), p.optimizers.end());
    }
  }
  return r;
}

}  // namespace

SearchReport grid_search(const ControlProblem& prob, unsigned jobs) {
  const Goal goal = prob.has_observable() ? Goal::maximize : Goal::minimize;
  const auto& ap = prob.ap();
  if (ap.size() > kMaxPolicies) {
    throw LimitError("accessible set has more than " + std::to_string(kMaxPolicies) + " policies");
  }
  jobs = std::max(1u, jobs);

  if (ap.is_grid()) {
    const auto& g = ap.grid();
    if (g.length == 0) {
      std::vector<Partial> parts(1);
      record(goal, parts[0], objective_value(prob, prob.rho0()), {});
      return merge(goal, parts, true);
    }
    // Worker w takes a contiguous block of first-step values.
    const std::size_t width = g.values.size();
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(width));
    std::vector<Partial> parts(jobs);
    run_workers(jobs, [&](unsigned w) {
      Policy prefix;
      for (std::size_t k = width * w / jobs; k < width * (w + 1) / jobs; ++k) {
        const auto v = g.values[k];
        prefix.assign(1, v);
        grid_dfs(prob, goal, g, prefix, apply_channel(prob.channels()[v], prob.rho0()), parts[w]);
      }
    });
    return merge(goal, parts, true);
  }

  auto policies = ap.enumerate(kMaxPolicies);
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(policies.size()));
  std::vector<Partial> parts(jobs);
  run_workers(jobs, [&](unsigned w) {
    const std::size_t lo = policies.size() * w / jobs;
    const std::size_t hi = policies.size() * (w + 1) / jobs;
    explicit_scan(prob, goal, std::span<const Policy>(policies).subspan(lo, hi - lo), parts[w]);
  });
  return merge(goal, parts, true);
}

SearchReport coherent_search(const CoherentProblem& prob, std::size_t bound, Positivity positivity) {
  const std::size_t n = prob.modes();
  const std::size_t lo = positivity == Positivity::positive ? 1 : 0;
  if (bound < lo) throw std::invalid_argument("coherent_search: bound below the smallest admissible count");
  const std::size_t width = bound - lo + 1;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (total > kMaxPolicies / width) throw LimitError("coherent_search: too many count tuples");
    total *= width;
  }

  std::vector<Monomial> tuples;
  tuples.reserve(total);
  Monomial c(n, static_cast<std::uint32_t>(lo));
  while (true) {
    tuples.push_back(c);
    std::size_t k = n;
    while (k > 0 && c[k - 1] == bound) c[--k] = static_cast<std::uint32_t>(lo);
    if (k == 0) break;
    ++c[k - 1];
  }
  std::sort(tuples.begin(), tuples.end(), GradedLex{});

  SearchReport r;
  r.goal = Goal::maximize;
  r.exhausted = false;
  bool have_best = false;
  Tuple point(n);
  for (const auto& t : tuples) {
    for (std::size_t k = 0; k < n; ++k) point[k] = t[k];
    const Rational j = coherent_objective(prob, point);
    ++r.evaluations;
    std::vector<std::size_t> as_counts(t.begin(), t.end());
    if (!have_best || j > r.optimal_value) {
      have_best = true;
      r.optimal_value = j;
      r.optimizers.clear();
    }
    if (j == r.optimal_value) r.optimizers.push_back(as_counts);
    if (sgn(j) == 0) {
      if (!r.first_zero) r.first_zero = as_counts;
      r.zeros.push_back(std::move(as_counts));
    }
  }
  std::sort(r.optimizers.begin(), r.optimizers.end());
  std::sort(r.zeros.begin(), r.zeros.end());
  return r;
}

Positivity default_positivity(Scheme s) {
  return s == Scheme::coherent ? Positivity::nonnegative : Positivity::positive;
}

EquivalenceReport verify_equivalence(const DioPolynomial& d, std::size_t bound, Scheme scheme,
                                     std::optional<Positivity> positivity, unsigned jobs) {
  EquivalenceReport rep;
  rep.scheme = scheme;
  rep.positivity = positivity.value_or(default_positivity(scheme));
  rep.bound = bound;
  rep.oracle_tuples = enumerate_solutions(d, Integer(static_cast<unsigned long>(bound)), rep.positivity, jobs);

  std::set<Tuple> found;
  if (scheme == Scheme::coherent) {
    const auto r = coherent_search(coherent_encoding(d), bound, rep.positivity);
    rep.evaluations = r.evaluations;
    for (const auto& z : r.zeros) found.emplace(z.begin(), z.end());
  } else {
    const ShiftEncoding enc = scheme == Scheme::shift ? shift_encoding(d, bound, {}, rep.positivity)
                                                      : damping_encoding(d, bound, {}, rep.positivity);
    // Counts run over [0, levels-1]; larger counts would alias (shift) or
    // saturate (damping) onto states already covered.
    const std::size_t width = enc.levels();
    std::vector<std::vector<std::size_t>> count_tuples;
    std::vector<std::size_t> c(enc.n, 0);
    while (true) {
      count_tuples.push_back(c);
      std::size_t k = enc.n;
      while (k > 0 && c[k - 1] + 1 == width) c[--k] = 0;
      if (k == 0) break;
      ++c[k - 1];
    }
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count_tuples.size())));
    std::vector<std::vector<Tuple>> parts(jobs);
    run_workers(jobs, [&](unsigned w) {
      const std::size_t lo = count_tuples.size() * w / jobs;
      const std::size_t hi = count_tuples.size() * (w + 1) / jobs;
      for (std::size_t k = lo; k < hi; ++k) {
        const Policy p = enc.canonical_policy(count_tuples[k]);
        if (sgn(objective_J(enc.problem, p)) == 0) parts[w].push_back(enc.decode(p));
      }
    });
    rep.evaluations = count_tuples.size();
    for (auto& part : parts) found.insert(part.begin(), part.end());
  }
  rep.control_tuples.assign(found.begin(), found.end());
  rep.equal = rep.control_tuples == rep.oracle_tuples;
  return rep;
}

}  // namespace qdio
