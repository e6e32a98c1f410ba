#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <thread>

#include "polyiso/certificate_io.hpp"
#include "polyiso/certify.hpp"
#include "polyiso/dual.hpp"
#include "polyiso/strange_formulas.hpp"

namespace polyiso {

namespace {

using D5 = Dual<Box5::kDim>;
using Point5 = std::array<double, Box5::kDim>;

std::array<D5, 5> variables(const Box5& box) {
  std::array<D5, 5> x;
  for (int i = 0; i < Box5::kDim; ++i) x[i] = D5::variable(box.v[i], i);
  return x;
}

std::array<D5, 5> variables(const Point5& p) {
  std::array<D5, 5> x;
  for (int i = 0; i < Box5::kDim; ++i) x[i] = D5::variable(Interval(p[i]), i);
  return x;
}

D5 gap(const std::array<D5, 5>& x, const Interval& factor) {
  return formulas::gap(x[0], x[1], x[2], x[3], x[4], factor);
}

D5 constraint(const Constraint& c, const std::array<D5, 5>& x) { return c.value(x[0], x[1], x[2], x[3], x[4]); }

struct Bound {
  double value = -INFINITY;
  BoundMethod method = BoundMethod::Natural;
};

// Lower bound of f over `box`. Coordinates in which f is monotone are pinned
// to the minimizing face first; the rest is bounded by the natural extension
// and by the mean-value form around the midpoint.
template <class F>
Bound bound_over(const F& f, Box5 box) {
  D5 over = f(variables(box));
  Bound b{over.v.lo(), BoundMethod::Natural};
  if (!over.bounded) return b;
  for (int pass = 0; pass < 2; ++pass) {
    bool pinned = false;
    for (int i = 0; i < Box5::kDim; ++i) {
      if (box.v[i].is_point()) continue;
      if (over.d[i].lo() >= 0.0) {
        box.v[i] = Interval(box.v[i].lo());
        pinned = true;
      } else if (over.d[i].hi() <= 0.0) {
        box.v[i] = Interval(box.v[i].hi());
        pinned = true;
      }
    }
    if (!pinned) break;
    over = f(variables(box));
    if (over.v.lo() > b.value) b = {over.v.lo(), BoundMethod::MeanValue};
    if (!over.bounded) return b;
  }
  const Point5 center = box.midpoint();
  const D5 at_center = f(variables(center));
  const double mv = mean_value_form(over, at_center.v, box.v, center).lo();
  if (mv > b.value) b = {mv, BoundMethod::MeanValue};
  return b;
}

// Shrinks `b` towards the hull of its feasible part using x1 <= x2 <= x3 and
// the area bound. Returns false if nothing feasible can remain.
bool contract(Box5& b, double area_min) {
  auto clip = [](Interval& x, double lo, double hi) {
    lo = std::max(lo, x.lo());
    hi = std::min(hi, x.hi());
    if (lo > hi) return false;
    x = Interval(lo, hi);
    return true;
  };
  Interval& x1 = b.v[Box5::X1];
  Interval& x2 = b.v[Box5::X2];
  Interval& x3 = b.v[Box5::X3];
  Interval& y1 = b.v[Box5::Y1];
  Interval& y2 = b.v[Box5::Y2];
  if (!clip(x2, x1.lo(), x3.hi()) || !clip(x1, -INFINITY, x2.hi()) || !clip(x3, x2.lo(), INFINITY)) return false;
  for (const Interval& c : b.v) {
    if (c.lo() < 0.0) return true;
  }
  if (!(area_min > 0.0)) return true;
  // x2 y1 + (x3 - x1) y2 >= area_min with every factor non-negative.
  const double span = rounding::sub_up(x3.hi(), x1.lo());
  const double rest1 = rounding::mul_up(span, y2.hi());
  if (x2.hi() > 0.0 && !clip(y1, rounding::div_down(rounding::sub_down(area_min, rest1), x2.hi()), INFINITY)) {
    return false;
  }
  const double rest2 = rounding::mul_up(x2.hi(), y1.hi());
  if (span > 0.0 && !clip(y2, rounding::div_down(rounding::sub_down(area_min, rest2), span), INFINITY)) {
    return false;
  }
  return true;
}

double midpoint_of(const Interval& x) {
  const double m = x.mid();
  return std::clamp(m, x.lo(), x.hi());
}

int split_axis(const Box5& b) {
  int axis = 0;
  for (int i = 1; i < Box5::kDim; ++i) {
    if (b.v[i].width() > b.v[axis].width()) axis = i;
  }
  return axis;
}

std::pair<Box5, Box5> split(const Box5& b) {
  const int axis = split_axis(b);
  const double m = midpoint_of(b.v[axis]);
  Box5 left = b;
  Box5 right = b;
  left.v[axis] = Interval(b.v[axis].lo(), m);
  right.v[axis] = Interval(m, b.v[axis].hi());
  return {left, right};
}

bool box_less(const Box5& a, const Box5& b) {
  for (int i = 0; i < Box5::kDim; ++i) {
    if (a.v[i].lo() != b.v[i].lo()) return a.v[i].lo() < b.v[i].lo();
    if (a.v[i].hi() != b.v[i].hi()) return a.v[i].hi() < b.v[i].hi();
  }
  return false;
}

}  // namespace

BoxVerdict examine_box(const Box5& box, const ConstraintSet& cs, double threshold, double ratio,
                       bool refined_bounds) {
  BoxVerdict out;
  std::vector<std::size_t> unknown;
  for (std::size_t k = 0; k < cs.constraints.size(); ++k) {
    Interval c;
    const Truth t = cs.evaluate(k, box, &c);
    if (t == Truth::False) {
      out.leaf = Leaf{box, LeafStatus::Infeasible, 0, c.hi(), static_cast<int>(k), BoundMethod::None, 0.0};
      return out;
    }
    if (t == Truth::Unknown) unknown.push_back(k);
  }

  const double bar = decimal_interval(threshold).hi();
  auto verified = [&](double bound, BoundMethod m, int k, double lambda) {
    out.leaf = Leaf{box, LeafStatus::Verified, 0, bound, k, m, lambda};
  };

  // Bounds below hold on the feasible part only, which lies in `hull`.
  Box5 hull = box;
  double area_min = 0.0;
  for (const Constraint& c : cs.constraints) {
    if (c.kind == ConstraintKind::AreaMin) area_min = c.bound;
  }
  if (!contract(hull, area_min)) hull = box;

  out.lower_bound = eval_G(hull, ratio).lo();
  if (out.lower_bound > bar) {
    verified(out.lower_bound, BoundMethod::Natural, -1, 0.0);
    return out;
  }
  if (!refined_bounds) return out;

  const Interval factor = formulas::volume_factor<Interval>(ratio);
  auto g = [&](const std::array<D5, 5>& x) { return gap(x, factor); };
  const Bound direct = bound_over(g, hull);
  out.lower_bound = std::max(out.lower_bound, direct.value);
  if (direct.value > bar) {
    verified(direct.value, direct.method, -1, 0.0);
    return out;
  }

  // G > bar iff F = S - cbrt(bar + factor A^2) > 0, and F >= f > 0 gives
  // G >= bar + 3 bar^(2/3) f.
  const Interval level(bar);
  auto root_gap = [&](const std::array<D5, 5>& x) {
    const D5 area = formulas::base_area(x[0], x[1], x[2], x[3], x[4]);
    return formulas::surface(x[0], x[1], x[2], x[3], x[4]) - cbrt(D5(level) + factor * sqr(area));
  };
  const Bound root = bound_over(root_gap, hull);
  if (root.value > 0.0) {
    const double lb = (level + Interval(3.0) * sqr(cbrt(level)) * Interval(root.value)).lo();
    if (lb > bar) {
      out.lower_bound = std::max(out.lower_bound, lb);
      verified(lb, BoundMethod::CubeRoot, -1, 0.0);
      return out;
    }
  }

  // On the feasible part c_k >= 0, so G >= G - lambda c_k for lambda >= 0.
  // lambda projects grad G onto grad c_k at the midpoint. Only worth trying
  // once the direct bounds are close.
  const Point5 center = hull.midpoint();
  const auto xc = variables(center);
  const D5 g_mid = g(xc);
  if (!g_mid.bounded || out.lower_bound <= 0.0) return out;
  for (std::size_t k : unknown) {
    const Constraint& c = cs.constraints[k];
    const D5 c_mid = constraint(c, xc);
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < Box5::kDim; ++i) {
      num += g_mid.d[i].mid() * c_mid.d[i].mid();
      den += c_mid.d[i].mid() * c_mid.d[i].mid();
    }
    if (!(den > 0.0) || !(num > 0.0)) continue;
    const double lambda = num / den;
    const Interval li(lambda);
    auto h = [&](const std::array<D5, 5>& x) { return g(x) - li * constraint(c, x); };
    const Bound relaxed = bound_over(h, hull);
    out.lower_bound = std::max(out.lower_bound, relaxed.value);
    if (relaxed.value > bar) {
      verified(relaxed.value, BoundMethod::Lagrangian, static_cast<int>(k), lambda);
      return out;
    }
  }
  return out;
}

namespace {

struct Pending {
  Box5 box;
  int depth;
  double bound;  // a lower bound of G inherited from the parent
};

struct Subtree {
  std::vector<Leaf> leaves;
  std::uint64_t boxes = 0;
  std::uint64_t verified = 0;
  std::uint64_t infeasible = 0;
  int max_depth = 0;
  double measure = 0.0;
  double margin = INFINITY;
  std::vector<Pending> unresolved;
};

struct Search {
  const ConstraintSet& cs;
  const BranchAndBoundOptions& opt;
  std::chrono::steady_clock::time_point start;
  std::atomic<std::uint64_t> boxes{0};
  std::atomic<bool> stop{false};
  std::string stop_reason;
  std::mutex mu;
  std::ofstream stream;

  void halt(const std::string& why) {
    std::lock_guard lock(mu);
    if (!stop.exchange(true)) stop_reason = why;
  }

  void emit(Subtree& t, Leaf leaf) {
    t.max_depth = std::max(t.max_depth, leaf.depth);
    t.measure += leaf.box.measure();
    if (leaf.status == LeafStatus::Verified) {
      ++t.verified;
      t.margin = std::min(t.margin, leaf.bound);
    } else {
      ++t.infeasible;
    }
    if (stream.is_open()) {
      const std::string line = leaf_json_line(leaf);
      std::lock_guard lock(mu);
      stream << line << '\n';
    }
    if (opt.on_leaf) opt.on_leaf(leaf);
    if (opt.keep_leaves) t.leaves.push_back(std::move(leaf));
  }

  // Examines one box. Returns the children to explore, or nothing if the box
  // became a leaf.
  std::optional<std::pair<Pending, Pending>> step(Subtree& t, const Pending& p) {
    const std::uint64_t n = ++boxes;
    ++t.boxes;
    if (n > opt.budget.max_boxes) {
      halt("box budget exhausted");
      t.unresolved.push_back(p);
      return std::nullopt;
    }
    if ((n & 1023) == 0) {
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (s > opt.budget.max_seconds) halt("time budget exhausted");
    }
    BoxVerdict v = examine_box(p.box, cs, opt.threshold, opt.ratio, opt.refined_bounds);
    if (v.leaf) {
      v.leaf->depth = p.depth;
      emit(t, std::move(*v.leaf));
      return std::nullopt;
    }
    const double bound = std::max(p.bound, v.lower_bound);
    if (p.depth >= opt.budget.max_depth) {
      halt("depth budget exhausted");
      t.unresolved.push_back({p.box, p.depth, bound});
      return std::nullopt;
    }
    auto [a, b] = split(p.box);
    return std::pair{Pending{a, p.depth + 1, bound}, Pending{b, p.depth + 1, bound}};
  }

  void explore(Subtree& t, const Pending& root) {
    std::vector<Pending> stack{root};
    while (!stack.empty()) {
      if (stop) {
        t.unresolved.insert(t.unresolved.end(), stack.begin(), stack.end());
        return;
      }
      Pending p = stack.back();
      stack.pop_back();
      if (auto kids = step(t, p)) {
        stack.push_back(kids->second);
        stack.push_back(kids->first);
      }
    }
  }
};

constexpr std::size_t kFrontierTarget = 4096;

}  // namespace

Certificate branch_and_bound(const std::string& claim, const Box5& root, const ConstraintSet& cs,
                             const BranchAndBoundOptions& options) {
  if (!(options.threshold >= 0.0)) throw DomainError("branch_and_bound: threshold must be >= 0");
  if (options.jobs < 1) throw DomainError("branch_and_bound: jobs must be >= 1");

  Search search{cs, options, std::chrono::steady_clock::now(), {}, {}, {}, {}, {}};
  if (!options.stream_path.empty()) {
    search.stream.open(options.stream_path, std::ios::app);
    if (!search.stream) throw Error("branch_and_bound: cannot open " + options.stream_path);
  }

  // Breadth-first expansion to a frontier of independent subtrees.
  Subtree head;
  std::vector<Pending> frontier{{root, 0, -INFINITY}};
  while (!frontier.empty() && frontier.size() < kFrontierTarget && !search.stop) {
    std::vector<Pending> next;
    for (const Pending& p : frontier) {
      if (search.stop) {
        next.push_back(p);
        continue;
      }
      if (auto kids = search.step(head, p)) {
        next.push_back(kids->first);
        next.push_back(kids->second);
      }
    }
    frontier.swap(next);
  }

  std::vector<Subtree> parts(frontier.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < frontier.size(); i = cursor++) {
      if (search.stop) {
        parts[i].unresolved.push_back(frontier[i]);
        continue;
      }
      search.explore(parts[i], frontier[i]);
    }
  };
  const int jobs = std::min<int>(options.jobs, std::max<std::size_t>(1, frontier.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Certificate cert;
  cert.claim = claim;
  cert.threshold = options.threshold;
  cert.ratio = options.ratio;
  cert.root = root;
  cert.constraints = cs;
  CertificateStats& st = cert.stats;
  auto absorb = [&](Subtree& t) {
    st.boxes += t.boxes;
    st.verified += t.verified;
    st.infeasible += t.infeasible;
    st.max_depth = std::max(st.max_depth, t.max_depth);
    st.leaf_measure += t.measure;
    cert.global_margin = std::min(cert.global_margin, t.margin);
    for (const Pending& p : t.unresolved) {
      ++cert.unresolved;
      cert.min_unresolved_bound = std::min(cert.min_unresolved_bound, p.bound);
    }
    cert.leaves.insert(cert.leaves.end(), std::make_move_iterator(t.leaves.begin()),
                       std::make_move_iterator(t.leaves.end()));
    t.leaves.clear();
  };
  absorb(head);
  for (Subtree& t : parts) absorb(t);
  st.leaves = st.verified + st.infeasible;
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - search.start).count();
  std::sort(cert.leaves.begin(), cert.leaves.end(), [](const Leaf& a, const Leaf& b) { return box_less(a.box, b.box); });

  if (search.stop) {
    cert.complete = false;
    throw BudgetExceeded("branch_and_bound: " + search.stop_reason, std::move(cert));
  }
  cert.complete = true;
  return cert;
}

Certificate certify_mutant6(const FeasibilityProfile& profile, const BranchAndBoundOptions& options) {
  const ConstraintSet cs = ConstraintSet::for_profile(profile);
  return branch_and_bound("mutant6", root_box(profile), cs, options);
}

CertificateCheck verify_certificate(const Certificate& cert) {
  CertificateCheck check;
  if (cert.leaves.empty()) {
    check.failures = 1;
    return check;
  }
  const double bar = decimal_interval(cert.threshold).hi();
  double measure = 0.0;
  for (const Leaf& leaf : cert.leaves) {
    measure += leaf.box.measure();
    if (!cert.root.contains(leaf.box)) {
      ++check.failures;
      continue;
    }
    const BoxVerdict v = examine_box(leaf.box, cert.constraints, cert.threshold, cert.ratio, true);
    if (!v.leaf || v.leaf->status != leaf.status) {
      ++check.failures;
      continue;
    }
    if (leaf.status == LeafStatus::Verified) {
      if (!(v.leaf->bound > bar)) ++check.failures;
      check.recomputed_margin = std::min(check.recomputed_margin, v.leaf->bound);
    }
  }
  const double root = cert.root.measure();
  check.measure_error = std::abs(measure - root) / root;
  check.valid = check.failures == 0 && check.measure_error <= 1e-9;
  return check;
}

}  // namespace polyiso
