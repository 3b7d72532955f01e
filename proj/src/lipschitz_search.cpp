#include "jratio/lipschitz_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "jratio/constants.hpp"
#include "sampling.hpp"

namespace jratio {
namespace {

// ---------------------------------------------------------------------------
// Candidates and their total order

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  ComplexPoint z;
  ComplexPoint w;
  BranchTag tag = BranchTag::ImagePunctureAtZ;
};

auto lex_key(const Candidate& c) {
  return std::make_tuple(c.z.real(), c.z.imag(), c.w.real(), c.w.imag());
}

// Larger value first; equal values broken by the lexicographically smaller
// (re z, im z, re w, im w). Strict weak order, so reductions are independent
// of evaluation order.
bool better(const Candidate& lhs, const Candidate& rhs) {
  if (lhs.value != rhs.value) return lhs.value > rhs.value;
  return lex_key(lhs) < lex_key(rhs);
}

// Pairs are reported with the larger-modulus point first (ties: larger
// (re, im) first), matching the |z| >= |w| convention of the case analysis.
bool first_in_pair(ComplexPoint p, ComplexPoint q) {
  const double rp = std::abs(p);
  const double rq = std::abs(q);
  if (rp != rq) return rp > rq;
  return std::make_pair(p.real(), p.imag()) >= std::make_pair(q.real(), q.imag());
}

// ---------------------------------------------------------------------------
// Objective models. Each precomputes per-point data so a pair evaluation
// costs one separation, two log1p and a handful of divisions.

struct PointData {
  ComplexPoint z;
  double d_source = 0.0;     // distance to the boundary of the source domain
  double to_puncture = 0.0;  // image distance to the image puncture (punctured model)
  double to_boundary = 0.0;  // image distance to the unit circle
  double den = 1.0;          // |1 + conj(a) z|
  ComplexPoint image;        // h(z)
  double diagonal = 0.0;     // w -> z limit of the ratio
  BranchTag diagonal_tag = BranchTag::ImagePunctureAtZ;
};

// 1 - |h(z)|^2 from the disk identity.
double image_one_minus_sq(const DiskAutomorphism& h, double r, double den) {
  return h.one_minus_abs_a_sq() * ((1.0 - r) * (1.0 + r)) / (den * den);
}

// J(z, w; a) on B\{0} -> B\{a}.
class PuncturedModel {
 public:
  explicit PuncturedModel(ComplexPoint a, double margin = 0.0) : h_(a), margin_(margin) {}

  static constexpr bool kIncludesOrigin = false;

  bool admissible(ComplexPoint z) const {
    const double r = std::abs(z);
    return r >= margin_ && 1.0 - r >= margin_ && r > 0.0;
  }

  PointData prepare(ComplexPoint z) const {
    PointData p;
    p.z = z;
    const double r = std::abs(z);
    p.d_source = std::min(r, 1.0 - r);
    p.den = h_.denominator_modulus(z);
    p.to_puncture = h_.one_minus_abs_a_sq() * r / p.den;
    const double s = image_one_minus_sq(h_, r, p.den);
    p.to_boundary = s / (1.0 + std::sqrt(1.0 - s));
    const double d_image = std::min(p.to_puncture, p.to_boundary);
    p.diagonal_tag = p.to_puncture <= p.to_boundary ? BranchTag::ImagePunctureAtZ : BranchTag::BoundaryAtZ;
    const double derivative = h_.one_minus_abs_a_sq() / (p.den * p.den);
    p.diagonal = derivative * p.d_source / d_image;
    return p;
  }

  // Numerator and denominator separately so callers can apply the diagonal
  // exclusion on the source metric.
  void pair(const PointData& p, const PointData& q, double& source_j, double& image_j, BranchTag& tag) const {
    const double separation = std::abs(p.z - q.z);
    source_j = std::log1p(separation / std::min(p.d_source, q.d_source));
    const double image_separation = h_.one_minus_abs_a_sq() * separation / (p.den * q.den);
    const double candidates[kBranchCount] = {p.to_puncture, q.to_puncture, p.to_boundary, q.to_boundary};
    const double* smallest = std::min_element(candidates, candidates + kBranchCount);
    tag = static_cast<BranchTag>(smallest - candidates);
    image_j = std::log1p(image_separation / *smallest);
  }

 private:
  DiskAutomorphism h_;
  double margin_;
};

// j_D((h z)^m, (h w)^m) / j_D(z, w) on the unpunctured disk.
class PowerModel {
 public:
  PowerModel(ComplexPoint a, unsigned m, double margin = 0.0) : h_(a), m_(m), margin_(margin) {}

  static constexpr bool kIncludesOrigin = true;

  bool admissible(ComplexPoint z) const { return 1.0 - std::abs(z) >= margin_; }

  PointData prepare(ComplexPoint z) const {
    PointData p;
    p.z = z;
    const double r = std::abs(z);
    p.d_source = 1.0 - r;
    p.den = h_.denominator_modulus(z);
    p.image = (z + h_.a()) / (1.0 + std::conj(h_.a()) * z);
    const double s = image_one_minus_sq(h_, r, p.den);
    // 1 - |h|^m = -expm1(m log|h|), log|h| = log1p(-s)/2
    p.to_boundary = -std::expm1(0.5 * m_ * std::log1p(-s));
    p.to_puncture = p.to_boundary;
    p.diagonal_tag = BranchTag::BoundaryAtZ;
    const double derivative = h_.one_minus_abs_a_sq() / (p.den * p.den);
    const double power_factor = m_ * std::pow(std::abs(p.image), static_cast<double>(m_ - 1));
    p.diagonal = power_factor * derivative * p.d_source / p.to_boundary;
    return p;
  }

  void pair(const PointData& p, const PointData& q, double& source_j, double& image_j, BranchTag& tag) const {
    const double separation = std::abs(p.z - q.z);
    source_j = std::log1p(separation / std::min(p.d_source, q.d_source));
    // P(z) - P(w) = (h(z) - h(w)) * sum_k h(z)^k h(w)^{m-1-k}, free of cancellation.
    const double image_separation =
        h_.one_minus_abs_a_sq() * separation / (p.den * q.den) * std::abs(geometric_sum(p.image, q.image));
    const bool at_z = p.to_boundary <= q.to_boundary;
    tag = at_z ? BranchTag::BoundaryAtZ : BranchTag::BoundaryAtW;
    image_j = std::log1p(image_separation / (at_z ? p.to_boundary : q.to_boundary));
  }

 private:
  // sum_{k=0}^{m-1} u^k v^{m-1-k} in Horner form over v.
  ComplexPoint geometric_sum(ComplexPoint u, ComplexPoint v) const {
    ComplexPoint acc{1.0, 0.0};
    ComplexPoint u_power{1.0, 0.0};
    for (unsigned k = 1; k < m_; ++k) {
      u_power *= u;
      acc = acc * v + u_power;
    }
    return acc;
  }

  DiskAutomorphism h_;
  unsigned m_;
  double margin_;
};

// ---------------------------------------------------------------------------
// Search engine

struct Tally {
  Candidate best;
  std::array<std::uint64_t, kBranchCount> histogram{};
  std::uint64_t evaluations = 0;

  void observe(const Candidate& c) {
    ++evaluations;
    ++histogram[static_cast<int>(c.tag)];
    if (better(c, best)) best = c;
  }

  void merge(const Tally& other) {
    evaluations += other.evaluations;
    for (int k = 0; k < kBranchCount; ++k) histogram[k] += other.histogram[k];
    if (better(other.best, best)) best = other.best;
  }
};

// Bounded set of the best candidates seen; front of the heap is the worst kept.
class TopPool {
 public:
  explicit TopPool(std::size_t capacity) : capacity_(capacity) {}

  void offer(const Candidate& c) {
    if (capacity_ == 0) return;
    if (heap_.size() < capacity_) {
      heap_.push_back(c);
      std::push_heap(heap_.begin(), heap_.end(), better);
    } else if (better(c, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), better);
      heap_.back() = c;
      std::push_heap(heap_.begin(), heap_.end(), better);
    }
  }

  void merge(const TopPool& other) {
    for (const Candidate& c : other.heap_) offer(c);
  }

  std::vector<Candidate> sorted() const {
    std::vector<Candidate> out = heap_;
    std::sort(out.begin(), out.end(), better);
    return out;
  }

 private:
  std::size_t capacity_;
  std::vector<Candidate> heap_;
};

double pair_distance(const Candidate& lhs, const Candidate& rhs) {
  return std::sqrt(std::norm(lhs.z - rhs.z) + std::norm(lhs.w - rhs.w));
}

// Greedy selection of up to `count` well-separated candidates from a sorted
// list, topped up with the best remaining ones.
std::vector<Candidate> select_starts(const std::vector<Candidate>& sorted, std::size_t count, double separation) {
  std::vector<Candidate> chosen;
  std::vector<bool> used(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size() && chosen.size() < count; ++i) {
    const bool isolated = std::all_of(chosen.begin(), chosen.end(), [&](const Candidate& c) {
      return pair_distance(c, sorted[i]) > separation;
    });
    if (isolated) {
      chosen.push_back(sorted[i]);
      used[i] = true;
    }
  }
  for (std::size_t i = 0; i < sorted.size() && chosen.size() < count; ++i) {
    if (!used[i]) chosen.push_back(sorted[i]);
  }
  return chosen;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

// Runs fn(worker) for worker in [0, workers); worker 0 on the calling thread.
template <class Fn>
void run_workers(int workers, Fn&& fn) {
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers - 1));
  for (int t = 1; t < workers; ++t) threads.emplace_back(fn, t);
  fn(0);
  for (std::thread& thread : threads) thread.join();
}

// Random orthonormal basis of R^n via Gram-Schmidt on uniform vectors.
template <std::size_t N>
std::array<std::array<double, N>, N> random_basis(detail::Rng& rng) {
  std::array<std::array<double, N>, N> basis{};
  for (std::size_t i = 0; i < N;) {
    std::array<double, N> v{};
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    for (std::size_t k = 0; k < i; ++k) {
      double dot = 0.0;
      for (std::size_t c = 0; c < N; ++c) dot += v[c] * basis[k][c];
      for (std::size_t c = 0; c < N; ++c) v[c] -= dot * basis[k][c];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-3) continue;
    for (std::size_t c = 0; c < N; ++c) basis[i][c] = v[c] / norm;
    ++i;
  }
  return basis;
}

constexpr double kMinStep = 1e-15;

template <class Model>
class SupremumSearch {
 public:
  SupremumSearch(const Model& model, const SearchConfig& cfg)
      : model_(model), cfg_(cfg), workers_(resolve_workers(cfg.workers)) {}

  RatioReport run(ComplexPoint a, std::optional<double> closed_form) const {
    const std::vector<PointData> points = grid();
    const std::size_t pool_capacity = std::max<std::size_t>(64, 8 * static_cast<std::size_t>(cfg_.refine_starts));

    // (i) all unordered grid pairs, rows interleaved across workers
    std::vector<Tally> tallies(workers_);
    std::vector<TopPool> pools(workers_, TopPool(pool_capacity));
    run_workers(workers_, [&](int t) {
      for (std::size_t i = t; i < points.size(); i += workers_) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
          if (auto c = evaluate(points[i], points[j], tallies[t])) pools[t].offer(*c);
        }
      }
    });
    Tally total;
    TopPool pair_pool(pool_capacity);
    for (int t = 0; t < workers_; ++t) {
      total.merge(tallies[t]);
      pair_pool.merge(pools[t]);
    }

    // (ii) w -> z limit on the same grid
    TopPool diagonal_pool(pool_capacity);
    for (const PointData& p : points) {
      const Candidate c = diagonal(p);
      total.observe(c);
      diagonal_pool.offer(c);
    }

    // (iii) pattern-search refinement from separated top candidates
    const double separation = 2.0 / cfg_.grid_n;
    const std::vector<Candidate> pair_starts =
        select_starts(pair_pool.sorted(), static_cast<std::size_t>(cfg_.refine_starts), separation);
    const std::vector<Candidate> diagonal_starts = select_starts(
        diagonal_pool.sorted(), static_cast<std::size_t>(cfg_.refine_starts > 0 ? std::max(1, cfg_.refine_starts / 4) : 0),
        separation);
    const std::size_t n_starts = pair_starts.size() + diagonal_starts.size();
    std::vector<Tally> refine_tallies(workers_);
    run_workers(workers_, [&](int t) {
      for (std::size_t s = t; s < n_starts; s += workers_) {
        if (s < pair_starts.size()) {
          refine_pair(pair_starts[s], s, refine_tallies[t]);
        } else {
          refine_diagonal(diagonal_starts[s - pair_starts.size()], s, refine_tallies[t]);
        }
      }
    });
    for (const Tally& tally : refine_tallies) total.merge(tally);

    RatioReport report;
    report.a = a;
    report.sup_estimate = total.best.value;
    report.argmax_z = total.best.z;
    report.argmax_w = total.best.w;
    report.closed_form = closed_form;
    if (closed_form) report.gap = *closed_form - total.best.value;
    report.branch_histogram = total.histogram;
    report.evaluations = total.evaluations;
    report.seed = cfg_.seed;
    return report;
  }

 private:
  std::vector<PointData> grid() const {
    const int n = cfg_.grid_n;
    std::vector<double> radii;
    for (int i = 0; i < n; ++i) {
      // Chebyshev nodes on (0, 1): dense toward the puncture and the circle.
      const double r = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / n));
      const double clamped = std::clamp(r, cfg_.boundary_margin, 1.0 - cfg_.boundary_margin);
      if (radii.empty() || clamped != radii.back()) radii.push_back(clamped);
    }
    std::vector<PointData> points;
    points.reserve(radii.size() * n + 1);
    if (Model::kIncludesOrigin) points.push_back(model_.prepare({0.0, 0.0}));
    for (const double r : radii) {
      for (int k = 0; k < n; ++k) {
        const ComplexPoint z = std::polar(r, 2.0 * std::numbers::pi * k / n);
        if (model_.admissible(z)) points.push_back(model_.prepare(z));
      }
    }
    return points;
  }

  std::optional<Candidate> evaluate(const PointData& p, const PointData& q, Tally& tally) const {
    const bool keep = first_in_pair(p.z, q.z);
    const PointData& first = keep ? p : q;
    const PointData& second = keep ? q : p;
    double source_j = 0.0;
    double image_j = 0.0;
    BranchTag tag{};
    model_.pair(first, second, source_j, image_j, tag);
    if (!(source_j >= cfg_.diag_epsilon)) return std::nullopt;
    const Candidate c{image_j / source_j, first.z, second.z, tag};
    tally.observe(c);
    return c;
  }

  std::optional<Candidate> evaluate_coordinates(const std::array<double, 4>& x, Tally& tally) const {
    const ComplexPoint z{x[0], x[1]};
    const ComplexPoint w{x[2], x[3]};
    if (z == w || !model_.admissible(z) || !model_.admissible(w)) return std::nullopt;
    return evaluate(model_.prepare(z), model_.prepare(w), tally);
  }

  static Candidate diagonal(const PointData& p) { return {p.diagonal, p.z, p.z, p.diagonal_tag}; }

  void refine_pair(const Candidate& start, std::size_t stream, Tally& tally) const {
    detail::Rng rng(detail::mix_seed(cfg_.seed, stream));
    Candidate current = start;
    const double max_step = 1.0 / cfg_.grid_n;
    double step = max_step;
    for (int it = 0; it < cfg_.refine_iters && step >= kMinStep; ++it) {
      const std::array<double, 4> x{current.z.real(), current.z.imag(), current.w.real(), current.w.imag()};
      const auto basis = random_basis<4>(rng);
      std::optional<Candidate> best_poll;
      const auto poll = [&](const std::array<double, 4>& direction) {
        for (const double sign : {1.0, -1.0}) {
          std::array<double, 4> y = x;
          for (int c = 0; c < 4; ++c) y[c] += sign * step * direction[c];
          const auto c = evaluate_coordinates(y, tally);
          if (c && c->value > current.value && (!best_poll || better(*c, *best_poll))) best_poll = c;
        }
      };
      for (int k = 0; k < 4; ++k) {
        std::array<double, 4> e{};
        e[k] = 1.0;
        poll(e);
      }
      for (const auto& direction : basis) poll(direction);
      if (best_poll) {
        current = *best_poll;
        step = std::min(2.0 * step, max_step);
      } else {
        step *= 0.5;
      }
    }
  }

  void refine_diagonal(const Candidate& start, std::size_t stream, Tally& tally) const {
    detail::Rng rng(detail::mix_seed(cfg_.seed, stream));
    ComplexPoint current = start.z;
    double current_value = start.value;
    const double max_step = 1.0 / cfg_.grid_n;
    double step = max_step;
    for (int it = 0; it < cfg_.refine_iters && step >= kMinStep; ++it) {
      const auto basis = random_basis<2>(rng);
      std::optional<Candidate> best_poll;
      const auto poll = [&](ComplexPoint direction) {
        for (const double sign : {1.0, -1.0}) {
          const ComplexPoint z = current + sign * step * direction;
          if (!model_.admissible(z)) continue;
          const Candidate c = diagonal(model_.prepare(z));
          tally.observe(c);
          if (c.value > current_value && (!best_poll || better(c, *best_poll))) best_poll = c;
        }
      };
      poll({1.0, 0.0});
      poll({0.0, 1.0});
      for (const auto& direction : basis) poll({direction[0], direction[1]});
      if (best_poll) {
        current = best_poll->z;
        current_value = best_poll->value;
        step = std::min(2.0 * step, max_step);
      } else {
        step *= 0.5;
      }
    }
  }

  const Model& model_;
  const SearchConfig& cfg_;
  int workers_;
};

void require_parameter(ComplexPoint a) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(std::abs(a) < 1.0)) {
    throw std::invalid_argument("parameter a must satisfy |a| < 1");
  }
}

void require_exponent(unsigned m) {
  if (m == 0) throw std::invalid_argument("power exponent must be positive");
}

template <class Model>
double validated_pair_ratio(const Model& model, ComplexPoint z, ComplexPoint w) {
  if (z == w) throw std::invalid_argument("ratio requires z != w");
  const bool keep = first_in_pair(z, w);
  double source_j = 0.0;
  double image_j = 0.0;
  BranchTag tag{};
  model.pair(model.prepare(keep ? z : w), model.prepare(keep ? w : z), source_j, image_j, tag);
  return image_j / source_j;
}

}  // namespace

void SearchConfig::validate() const {
  if (grid_n < 4) throw std::invalid_argument("grid_n must be at least 4");
  if (refine_iters < 0 || refine_starts < 0) throw std::invalid_argument("refinement counts must be non-negative");
  if (!(diag_epsilon > 0.0)) throw std::invalid_argument("diag_epsilon must be positive");
  if (!(boundary_margin > 0.0 && boundary_margin < 0.5)) {
    throw std::invalid_argument("boundary_margin must lie in (0, 1/2)");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (workers < 0) throw std::invalid_argument("workers must be non-negative");
}

double ratio_J(ComplexPoint a, ComplexPoint z, ComplexPoint w) {
  require_parameter(a);
  const PuncturedDisk source = PuncturedDisk::punctured_at({0.0, 0.0});
  boundary_distance(source, z);
  boundary_distance(source, w);
  return validated_pair_ratio(PuncturedModel(a), z, w);
}

double diagonal_limit(ComplexPoint a, ComplexPoint z) {
  require_parameter(a);
  boundary_distance(PuncturedDisk::punctured_at({0.0, 0.0}), z);
  return PuncturedModel(a).prepare(z).diagonal;
}

double power_ratio(ComplexPoint a, unsigned m, ComplexPoint z, ComplexPoint w) {
  require_parameter(a);
  require_exponent(m);
  require_in_open_disk(z, "z");
  require_in_open_disk(w, "w");
  return validated_pair_ratio(PowerModel(a, m), z, w);
}

double power_diagonal_limit(ComplexPoint a, unsigned m, ComplexPoint z) {
  require_parameter(a);
  require_exponent(m);
  require_in_open_disk(z, "z");
  return PowerModel(a, m).prepare(z).diagonal;
}

RatioReport estimate_lipschitz(ComplexPoint a, const SearchConfig& cfg) {
  cfg.validate();
  require_parameter(a);
  if (a == ComplexPoint{0.0, 0.0}) {
    throw std::invalid_argument("a = 0 gives a rotation; the constant is exactly 1");
  }
  const PuncturedModel model(a, cfg.boundary_margin);
  RatioReport report = SupremumSearch<PuncturedModel>(model, cfg).run(a, main_constant(std::abs(a)));
  if (!(report.sup_estimate >= 1.0)) {
    throw std::logic_error("supremum estimate below 1 for a punctured-disk automorphism");
  }
  return report;
}

RatioReport estimate_power_constant(ComplexPoint a, unsigned m, const SearchConfig& cfg) {
  cfg.validate();
  require_parameter(a);
  require_exponent(m);
  const PowerModel model(a, m, cfg.boundary_margin);
  const std::optional<double> closed = m == 1 ? std::optional(ball_constant(std::abs(a))) : std::nullopt;
  return SupremumSearch<PowerModel>(model, cfg).run(a, closed);
}

PowerTable power_monotonicity_table(ComplexPoint a, int n_max, const SearchConfig& cfg) {
  if (n_max < 0 || n_max > 6) throw std::invalid_argument("n_max must lie in [0, 6]");
  PowerTable table;
  for (int n = 0; n <= n_max; ++n) {
    const unsigned m = 1u << n;
    table.rows.push_back({m, estimate_power_constant(a, m, cfg)});
    const std::size_t i = table.rows.size() - 1;
    if (i > 0 && table.rows[i].report.sup_estimate > table.rows[i - 1].report.sup_estimate + 2.0 * cfg.tol) {
      table.violations.push_back(i);
    }
  }
  return table;
}

std::vector<QRow> q_scan(const std::vector<unsigned>& m_list, const SearchConfig& cfg) {
  for (const unsigned m : m_list) {
    if (m < 2) throw std::invalid_argument("q_scan requires every m >= 2");
  }
  std::vector<QRow> rows;
  rows.reserve(m_list.size());
  for (const unsigned m : m_list) {
    const double a = 1.0 / (m + 1.0);
    rows.push_back({m, a, estimate_power_constant({a, 0.0}, m, cfg)});
  }
  return rows;
}

AuditReport bound_audit(ComplexPoint a, std::uint64_t n_samples, std::uint64_t seed) {
  require_parameter(a);
  if (a == ComplexPoint{0.0, 0.0}) throw std::invalid_argument("bound_audit requires a != 0");
  if (n_samples == 0) throw std::invalid_argument("bound_audit requires at least one sample");
  const SearchConfig defaults;
  const PuncturedDisk source = PuncturedDisk::punctured_at({0.0, 0.0});
  const auto admissible = [&](ComplexPoint z) {
    const double r = std::abs(z);
    return r >= defaults.boundary_margin && 1.0 - r >= defaults.boundary_margin;
  };

  AuditReport report;
  report.a = a;
  report.samples = n_samples;
  report.bound = main_constant(std::abs(a));
  report.max_ratio = -std::numeric_limits<double>::infinity();
  detail::Rng rng(detail::mix_seed(seed, 0xa0d17));
  for (std::uint64_t s = 0; s < n_samples;) {
    const ComplexPoint z = rng.in_disk(1.0);
    const ComplexPoint w = rng.in_disk(1.0);
    if (!admissible(z) || !admissible(w) || z == w) continue;
    if (j_metric(source, z, w) < defaults.diag_epsilon) continue;
    ++s;
    const double value = ratio_J(a, z, w);
    if (value > report.max_ratio) {
      report.max_ratio = value;
      report.argmax_z = z;
      report.argmax_w = w;
    }
    if (value > report.bound + kBoundSlack) ++report.violations;
    if (value > kGehringOsgoodConstant) ++report.factor_two_violations;
  }
  return report;
}

}  // namespace jratio
