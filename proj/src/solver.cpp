#include "freeset/solver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace freeset {

std::string ConstraintSpec::mode() const {
  if (sum_free && product_free) return "sp";
  if (sum_free) return "s";
  if (product_free) return "p";
  throw std::invalid_argument("ConstraintSpec: no constraint active");
}

ConstraintSpec ConstraintSpec::from_mode(std::string_view mode) {
  if (mode == "s") return sum_only();
  if (mode == "p") return product_only();
  if (mode == "sp") return both();
  throw std::invalid_argument("unknown mode \"" + std::string(mode) + "\" (expected s, p or sp)");
}

bool ConstraintSpec::admits(const ResidueSet& a) const {
  return (!sum_free || is_sum_free(a)) && (!product_free || is_product_free(a));
}

namespace {

using Clock = std::chrono::steady_clock;

void require_constraint(ConstraintSpec c) {
  if (!c.sum_free && !c.product_free) throw std::invalid_argument("at least one constraint must be active");
}

// Chosen-set bookkeeping shared by the branch and bound, the greedy pass and
// the enumerator.
class Search {
 public:
  Search(std::uint64_t n, ConstraintSpec constraints)
      : n_(n), cons_(constraints), chosen_(n), chosen_neg_(n), scratch_(n) {
    require_constraint(constraints);
    if (cons_.product_free) {
      gcd_.resize(n);
      inverse_.resize(n);
      roots_.resize(n);
      for (std::uint64_t b = 0; b < n; ++b) {
        const std::uint64_t g = std::gcd(b, n);
        gcd_[b] = static_cast<Residue>(g);
        inverse_[b] = static_cast<Residue>(inverse_mod((b / g) % (n / g), n / g));
        roots_[(b * b) % n].push_back(static_cast<Residue>(b));
      }
    }
  }

  std::uint64_t modulus() const { return n_; }
  const ResidueSet& chosen() const { return chosen_; }
  std::size_t chosen_size() const { return chosen_list_.size(); }

  // Residues r for which {r} alone is feasible.
  ResidueSet initial_candidates() const {
    ResidueSet c(n_);
    for (std::uint64_t r = 0; r < n_; ++r) {
      if (cons_.sum_free && (2 * r) % n_ == r) continue;
      if (cons_.product_free && (r * r) % n_ == r) continue;
      c.insert(r);
    }
    return c;
  }

  // Adds a (which must be a candidate) and drops from `cand` every residue c
  // for which chosen + {c} would contain a forbidden triple through a and c.
  void include(Residue a, ResidueSet& cand) {
    chosen_.insert(a);
    chosen_neg_.insert(a == 0 ? 0 : n_ - a);
    chosen_list_.push_back(a);
    cand.erase(a);

    if (cons_.sum_free) {
      scratch_.clear();
      scratch_.or_rotated(chosen_, a);           // c = a + b
      scratch_.or_rotated(chosen_neg_, a);       // c = a - b
      scratch_.or_rotated(chosen_, n_ - a);      // c = b - a
      cand.subtract(scratch_);
      // c + c = a
      if (n_ % 2 == 1) {
        cand.erase((std::uint64_t{a} * ((n_ + 1) / 2)) % n_);
      } else if (a % 2 == 0) {
        cand.erase(a / 2);
        cand.erase(a / 2 + n_ / 2);
      }
    }
    if (cons_.product_free) {
      for (Residue b : chosen_list_) {
        cand.erase((std::uint64_t{a} * b) % n_);                            // c = a b
        solve_linear(b, a, [&](std::uint64_t c) { cand.erase(c); });        // b c = a
        solve_linear(a, b, [&](std::uint64_t c) { cand.erase(c); });        // a c = b
      }
      solve_linear((a + n_ - 1) % n_, 0, [&](std::uint64_t c) { cand.erase(c); });  // a c = c
      for (Residue c : roots_[a]) cand.erase(c);                                    // c c = a
    }
  }

  void undo(Residue a) {
    chosen_.erase(a);
    chosen_neg_.erase(a == 0 ? 0 : n_ - a);
    chosen_list_.pop_back();
  }

 private:
  static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
  }

  // All c in Z/nZ with coef * c = target (mod n).
  template <class F>
  void solve_linear(std::uint64_t coef, std::uint64_t target, F&& emit) const {
    const std::uint64_t g = gcd_[coef];
    if (target % g != 0) return;
    const std::uint64_t step = n_ / g;
    const std::uint64_t c0 = ((target / g) % step) * inverse_[coef] % step;
    for (std::uint64_t c = c0; c < n_; c += step) emit(c);
  }

  std::uint64_t n_;
  ConstraintSpec cons_;
  ResidueSet chosen_;
  ResidueSet chosen_neg_;
  ResidueSet scratch_;
  std::vector<Residue> chosen_list_;
  std::vector<Residue> gcd_;
  std::vector<Residue> inverse_;
  std::vector<std::vector<Residue>> roots_;
};

std::vector<Residue> order_by_degree(std::uint64_t n, ConstraintSpec c, bool descending) {
  const auto deg = conflict_degrees(n, c);
  std::vector<Residue> order(n);
  std::iota(order.begin(), order.end(), Residue{0});
  std::stable_sort(order.begin(), order.end(), [&](Residue x, Residue y) {
    return descending ? deg[x] > deg[y] : deg[x] < deg[y];
  });
  return order;
}

class BranchAndBound {
 public:
  BranchAndBound(std::uint64_t n, ConstraintSpec c, std::uint64_t budget)
      : search_(n, c), order_(order_by_degree(n, c, true)), budget_(budget), best_(n),
        stack_(n + 1, ResidueSet(n)) {}

  void seed(const ResidueSet& incumbent) {
    best_ = incumbent;
    best_size_ = incumbent.cardinality();
  }

  void run() {
    stack_[0] = search_.initial_candidates();
    node(0, 0);
  }

  const ResidueSet& best() const { return best_; }
  std::size_t best_size() const { return best_size_; }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  void node(std::size_t depth, std::size_t pos) {
    const std::size_t size = search_.chosen_size();
    if (size > best_size_) {
      best_size_ = size;
      best_ = search_.chosen();
    }
    ResidueSet& cand = stack_[depth];
    for (;;) {
      if (++nodes_ > budget_) {
        aborted_ = true;
        return;
      }
      while (pos < order_.size() && !cand.contains(order_[pos])) ++pos;
      if (pos == order_.size()) return;
      if (size + cand.cardinality() <= best_size_) return;
      const Residue v = order_[pos++];
      cand.erase(v);
      stack_[depth + 1] = cand;
      search_.include(v, stack_[depth + 1]);
      node(depth + 1, pos);
      search_.undo(v);
      if (aborted_) return;
    }
  }

  Search search_;
  std::vector<Residue> order_;
  std::uint64_t budget_;
  ResidueSet best_;
  std::size_t best_size_ = 0;
  std::vector<ResidueSet> stack_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

std::vector<std::uint64_t> conflict_degrees(std::uint64_t n, ConstraintSpec c) {
  std::vector<std::uint64_t> deg(n, 0);
  auto count = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    ++deg[x];
    if (y != x) ++deg[y];
    if (z != x && z != y) ++deg[z];
  };
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = x; y < n; ++y) {
      if (c.sum_free) count(x, y, (x + y) % n);
      if (c.product_free) count(x, y, (x * y) % n);
    }
  }
  return deg;
}

SolveResult exact_max(std::uint64_t n, ConstraintSpec constraints, std::uint64_t budget) {
  require_constraint(constraints);
  const auto start = Clock::now();
  BranchAndBound bnb(n, constraints, budget);
  bnb.seed(greedy_lower(n, constraints));
  bnb.run();

  SolveResult res;
  res.n = n;
  res.constraints = constraints;
  res.max_size = bnb.best_size();
  res.witness = bnb.best();
  res.optimal = !bnb.aborted();
  res.nodes = bnb.nodes();
  res.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  if (!constraints.admits(res.witness) || res.witness.cardinality() != res.max_size) {
    throw std::logic_error("exact_max: witness failed re-verification");
  }
  return res;
}

ResidueSet greedy_lower(std::uint64_t n, ConstraintSpec constraints) {
  Search search(n, constraints);
  ResidueSet cand = search.initial_candidates();
  for (Residue r : order_by_degree(n, constraints, false)) {
    if (cand.contains(r)) search.include(r, cand);
  }
  return search.chosen();
}

void enumerate_feasible(std::uint64_t n, ConstraintSpec constraints, std::size_t min_size,
                        const std::function<void(const ResidueSet&)>& visit) {
  if (n > kEnumerationLimit) {
    throw std::invalid_argument("enumerate_feasible: n must be at most " + std::to_string(kEnumerationLimit));
  }
  Search search(n, constraints);
  std::vector<ResidueSet> stack(n + 1, ResidueSet(n));
  stack[0] = search.initial_candidates();

  std::function<void(std::size_t, Residue)> node = [&](std::size_t depth, Residue from) {
    const std::size_t size = search.chosen_size();
    if (size >= min_size) visit(search.chosen());
    ResidueSet& cand = stack[depth];
    for (Residue v = from; v < n; ++v) {
      if (size + cand.cardinality() < std::max<std::size_t>(min_size, size + 1)) return;
      if (!cand.contains(v)) continue;
      cand.erase(v);
      stack[depth + 1] = cand;
      search.include(v, stack[depth + 1]);
      node(depth + 1, v + 1);
      search.undo(v);
    }
  };
  node(0, 0);
}

SolveResult brute_force_max(std::uint64_t n, ConstraintSpec constraints) {
  require_constraint(constraints);
  if (n == 0 || n > kBruteForceLimit) {
    throw std::invalid_argument("brute_force_max: n must be in [1, " + std::to_string(kBruteForceLimit) + "]");
  }
  const auto start = Clock::now();
  using Mask = std::uint32_t;
  auto has = [](Mask m, std::uint64_t r) { return (m >> r) & 1u; };

  // Does adding r to m (all members of m below r) create a forbidden triple?
  auto breaks = [&](Mask m, std::uint64_t r) {
    const Mask next = m | (Mask{1} << r);
    for (std::uint64_t y = 0; y < n; ++y) {
      if (!has(next, y)) continue;
      if (constraints.sum_free && has(next, (r + y) % n)) return true;
      if (constraints.product_free && has(next, (r * y) % n)) return true;
    }
    for (std::uint64_t x = 0; x < n; ++x) {
      if (!has(m, x)) continue;
      for (std::uint64_t y = x; y < n; ++y) {
        if (!has(m, y)) continue;
        if (constraints.sum_free && (x + y) % n == r) return true;
        if (constraints.product_free && (x * y) % n == r) return true;
      }
    }
    return false;
  };

  Mask best = 0;
  int best_size = 0;
  std::uint64_t nodes = 0;
  std::function<void(std::uint64_t, Mask, int)> walk = [&](std::uint64_t from, Mask m, int size) {
    ++nodes;
    if (size > best_size) {
      best_size = size;
      best = m;
    }
    for (std::uint64_t r = from; r < n; ++r) {
      if (!breaks(m, r)) walk(r + 1, m | (Mask{1} << r), size + 1);
    }
  };
  walk(0, 0, 0);

  SolveResult res;
  res.n = n;
  res.constraints = constraints;
  res.max_size = static_cast<std::size_t>(best_size);
  res.witness = ResidueSet(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    if (has(best, r)) res.witness.insert(r);
  }
  res.optimal = true;
  res.nodes = nodes;
  res.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return res;
}

}  // namespace freeset
