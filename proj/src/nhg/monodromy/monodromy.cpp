#include "nhg/monodromy/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "nhg/error.hpp"
#include "nhg/util/parallel.hpp"

namespace nhg {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

QPoly divide(const QPoly& num, const QPoly& den) {
  QPoly r = num;
  trim(r);
  if (r.size() < den.size()) return {Rational(0)};
  QPoly q(r.size() - den.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = r[k + den.size() - 1] / den.back();
    q[k] = c;
    for (std::size_t j = 0; j < den.size(); ++j) r[k + j] -= c * den[j];
  }
  trim(q);
  return q;
}

QPoly subtract(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
  trim(r);
  return r;
}

/// Yun's squarefree decomposition: factors paired with multiplicities.
std::vector<std::pair<QPoly, int>> squarefree(QPoly f) {
  trim(f);
  std::vector<std::pair<QPoly, int>> out;
  if (f.size() <= 1) return out;
  const QPoly fp = derivative(f);
  QPoly a = univariate_gcd(f, fp);
  QPoly b = divide(f, a);
  QPoly c = divide(fp, a);
  QPoly d = subtract(c, derivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    a = d.empty() ? b : univariate_gcd(b, d);
    if (a.size() > 1) out.emplace_back(a, i);
    b = divide(b, a);
    c = d.empty() ? QPoly{} : divide(d, a);
    d = subtract(c, derivative(b));
  }
  return out;
}

bool entire_in(const Atom& atom, const std::string& t);

bool polynomial_in(const Polynomial& p, const std::string& t) {
  for (const auto& atom : p.atoms()) {
    if (atom->is_variable ? atom->key != t : !entire_in(atom, t)) return false;
  }
  return true;
}

bool entire_in(const Atom& atom, const std::string& t) {
  if (atom->is_variable) return atom->key == t;
  if (atom->head == FuncHead::kLog) return false;
  const RationalFunction& arg = *atom->argument;
  return arg.denominator().is_constant() && polynomial_in(arg.numerator(), t);
}

void add_point(SingularitySet& set, Complex z, int mult) {
  for (std::size_t k = 0; k < set.points.size(); ++k) {
    if (std::abs(set.points[k] - z) <= set.tolerance) {
      set.multiplicity[k] = std::max(set.multiplicity[k], mult);
      return;
    }
  }
  set.points.push_back(z);
  set.multiplicity.push_back(mult);
}

bool finite(const MatrixC& m) { return m.allFinite(); }

}  // namespace

bool SearchBox::contains(Complex z) const {
  return z.real() >= lower.real() && z.real() <= upper.real() && z.imag() >= lower.imag() &&
         z.imag() <= upper.imag();
}

SearchBox SearchBox::centered(Complex c, double half_width) {
  return {c - Complex(half_width, half_width), c + Complex(half_width, half_width)};
}

SingularitySet find_singularities(const LinearVariationalSystem& sys, const SearchBox& box,
                                  const std::vector<Complex>& candidates) {
  SingularitySet set;
  const std::string& t = sys.parameter;
  std::vector<QPoly> denominators;
  bool unsupported = false;
  for (const auto& row : sys.coefficients) {
    for (const auto& e : row) {
      const RationalFunction& rf = e.rational_form();
      if (rf.is_zero()) continue;
      const auto& den = rf.denominator();
      bool den_ok = true;
      for (const auto& atom : den.atoms()) {
        if (!atom->is_variable || atom->key != t) den_ok = false;
      }
      if (!den_ok || !polynomial_in(rf.numerator(), t)) {
        unsupported = true;
        if (!den_ok) continue;
      }
      if (den.is_constant()) continue;
      QPoly q = univariate_coefficients(den, t);
      if (std::find(denominators.begin(), denominators.end(), q) == denominators.end()) denominators.push_back(q);
    }
  }
  if (unsupported && candidates.empty()) {
    throw Error(ErrorCode::kUnsupported,
                "coefficient matrix has transcendental entries; supply candidate singular points");
  }
  for (const auto& q : denominators) {
    for (const auto& [factor, mult] : squarefree(q)) {
      std::vector<Complex> coeffs;
      for (const auto& c : factor) coeffs.emplace_back(c.get_d());
      for (const Complex r : polynomial_roots(coeffs)) {
        if (box.contains(r)) add_point(set, r, mult);
      }
    }
  }
  for (const Complex c : candidates) {
    if (box.contains(c)) add_point(set, c, 1);
  }
  // Deterministic order: by real part, then imaginary part.
  std::vector<std::size_t> order(set.points.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Complex x = set.points[a], y = set.points[b];
    if (std::abs(x.real() - y.real()) > set.tolerance) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  SingularitySet sorted;
  sorted.tolerance = set.tolerance;
  for (std::size_t k : order) {
    Complex z = set.points[k];
    // Clean signed zeros and round-off in exact-looking parts.
    if (std::abs(z.real()) < 1e-14) z.real(0.0);
    if (std::abs(z.imag()) < 1e-14) z.imag(0.0);
    sorted.points.push_back(z);
    sorted.multiplicity.push_back(set.multiplicity[k]);
  }
  return sorted;
}

MatrixC integrate_path(const CompiledMatrix& a, const Path& path, const MatrixC& y0, const TransportOptions& options,
                       const SingularitySet* sing, IntegrationStats* stats) {
  if (static_cast<std::size_t>(y0.rows()) != a.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "initial matrix has the wrong row count");
  }
  if (sing) {
    for (const Complex z : sing->points) {
      const double d = path.distance_to(z);
      if (d < options.min_distance) {
        throw Error(ErrorCode::kProximity, "path passes within " + std::to_string(d) + " of a singularity");
      }
    }
  }
  const Eigen::Index rows = y0.rows();
  const Eigen::Index cols = y0.cols();
  std::vector<Complex> state(static_cast<std::size_t>(rows * cols));
  Eigen::Map<MatrixC>(state.data(), rows, cols) = y0;
  MatrixC am(rows, rows);
  for (const auto& piece : path.pieces()) {
    if (piece.length() == 0.0) continue;
    const ComplexRhs rhs = [&](double s, const Complex* y, Complex* dy) {
      a.evaluate(piece.point(s), am);
      Eigen::Map<MatrixC> out(dy, rows, cols);
      out.noalias() = am * Eigen::Map<const MatrixC>(y, rows, cols);
      out *= piece.velocity(s);
    };
    dop853(rhs, 0.0, 1.0, state, options.integrator, stats);
  }
  MatrixC result = Eigen::Map<MatrixC>(state.data(), rows, cols);
  if (!finite(result)) throw Error(ErrorCode::kNonFinite, "non-finite fundamental matrix");
  return result;
}

MatrixC integrate_path(const LinearVariationalSystem& sys, const Polyline& path, const MatrixC& y0,
                       const TransportOptions& options, const SingularitySet* sing) {
  return integrate_path(CompiledMatrix(sys), path.to_path(), y0, options, sing);
}

std::vector<MatrixC> integrate_waypoints(const CompiledMatrix& a, const Polyline& path, const MatrixC& y0,
                                         const TransportOptions& options, const SingularitySet* sing) {
  std::vector<MatrixC> out{y0};
  MatrixC y = y0;
  const auto& w = path.waypoints();
  for (std::size_t k = 1; k < w.size(); ++k) {
    y = integrate_path(a, Path({PathPiece::line(w[k - 1], w[k])}), y, options, sing);
    out.push_back(y);
  }
  return out;
}

Path standard_loop(Complex t0, Complex sigma, double r) {
  const Complex dir = (t0 - sigma) / std::abs(t0 - sigma);
  const Complex p = sigma + r * dir;
  const double theta0 = std::arg(dir);
  std::vector<PathPiece> pieces;
  if (std::abs(p - t0) > 0.0) pieces.push_back(PathPiece::line(t0, p));
  PathPiece circle = PathPiece::arc(sigma, r, theta0, theta0 + 2.0 * std::numbers::pi);
  circle.from = p;
  circle.to = p;
  pieces.push_back(circle);
  if (std::abs(p - t0) > 0.0) pieces.push_back(PathPiece::line(p, t0));
  return Path(std::move(pieces));
}

MonodromySample monodromy_generators(const LinearVariationalSystem& sys, Complex t0, const SingularitySet& sing,
                                     const TransportOptions& options) {
  MonodromySample sample;
  sample.base_point = t0;
  sample.singularities = sing.points;
  sample.rtol = options.integrator.rtol;
  const std::size_t s = sing.points.size();
  for (std::size_t i = 0; i < s; ++i) {
    const double d0 = std::abs(sing.points[i] - t0);
    if (d0 <= sing.tolerance) throw Error(ErrorCode::kInvalidArgument, "base point coincides with a singularity");
    double r = d0;
    for (std::size_t j = 0; j < s; ++j) {
      if (j != i) r = std::min(r, std::abs(sing.points[i] - sing.points[j]));
    }
    sample.radii.push_back(0.5 * r);
  }
  const CompiledMatrix a(sys);
  const auto dim = static_cast<Eigen::Index>(sys.dimension());
  const MatrixC identity = MatrixC::Identity(dim, dim);
  sample.generators = parallel_map(s, [&](std::size_t i) {
    return integrate_path(a, standard_loop(t0, sing.points[i], sample.radii[i]), identity, options, &sing);
  });
  for (const auto& g : sample.generators) {
    Eigen::JacobiSVD<MatrixC> svd(g);
    const auto& sv = svd.singularValues();
    sample.condition_numbers.push_back(sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                               : std::numeric_limits<double>::infinity());
  }
  return sample;
}

double commutator_deviation(const MatrixC& a, const MatrixC& b) {
  const MatrixC ai = a.inverse();
  const MatrixC bi = b.inverse();
  const MatrixC c = a * b * ai * bi - MatrixC::Identity(a.rows(), a.cols());
  return c.norm() / (a.norm() * b.norm());
}

AbelianityVerdict virtual_abelianity_test(const std::vector<MatrixC>& generators, int word_length, double tol,
                                          std::uint64_t seed) {
  constexpr std::size_t kMaxWords = 400;
  constexpr std::size_t kMaxBases = 64;
  AbelianityVerdict v;
  v.word_length = word_length;
  if (generators.empty()) {
    v.verdict = Verdict::kPass;
    v.commutators_vanish = true;
    v.diagnostics.push_back("no generators: trivial monodromy group");
    return v;
  }
  const Eigen::Index dim = generators.front().rows();

  // Letters 2g and 2g+1 are generator g and its inverse.
  std::vector<MatrixC> letters;
  for (const auto& g : generators) {
    Eigen::JacobiSVD<MatrixC> svd(g);
    const auto& sv = svd.singularValues();
    if (!g.allFinite() || sv(sv.size() - 1) <= 1e-14 * sv(0)) {
      v.verdict = Verdict::kInconclusive;
      v.diagnostics.push_back("a generator is singular or non-finite");
      return v;
    }
    letters.push_back(g);
    letters.push_back(g.inverse());
  }

  struct Word {
    std::vector<int> letters;
    MatrixC value;
  };
  std::vector<Word> words;
  bool truncated = false;
  auto keep = [&](const std::vector<int>& w, const MatrixC& m) {
    for (const auto& existing : words) {
      if ((existing.value - m).norm() <= tol * std::max(1.0, m.norm())) return;
    }
    if (words.size() >= kMaxWords) {
      truncated = true;
      return;
    }
    words.push_back({w, m});
  };
  std::vector<Word> frontier;
  for (int l = 0; l < static_cast<int>(letters.size()); ++l) frontier.push_back({{l}, letters[static_cast<std::size_t>(l)]});
  for (int len = 1; len <= word_length && !frontier.empty(); ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      keep(w.letters, w.value);
      if (len == word_length) continue;
      for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
        if ((l ^ 1) == w.letters.back()) continue;
        std::vector<int> ext = w.letters;
        ext.push_back(l);
        next.push_back({ext, w.value * letters[static_cast<std::size_t>(l)]});
      }
    }
    frontier = std::move(next);
  }
  v.words = words.size();
  if (truncated) v.diagnostics.push_back("word list truncated at " + std::to_string(kMaxWords) + " distinct words");

  std::vector<MatrixC> inverses;
  for (const auto& w : words) inverses.push_back(w.value.inverse());
  double worst = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const MatrixC c = words[i].value * words[j].value * inverses[i] * inverses[j] - MatrixC::Identity(dim, dim);
      const double d = c.norm() / (words[i].value.norm() * words[j].value.norm());
      worst = std::max(worst, d);
    }
  }
  v.worst_deviation = worst;
  v.commutators_vanish = worst <= tol;

  if (!v.commutators_vanish) {
    // Candidate eigenbases: a random combination, then the words themselves.
    std::vector<MatrixC> candidates;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    MatrixC combo = MatrixC::Zero(dim, dim);
    for (const auto& g : generators) combo += Complex(normal(rng), normal(rng)) * g;
    candidates.push_back(combo);
    for (const auto& w : words) {
      if (candidates.size() >= kMaxBases) break;
      candidates.push_back(w.value);
    }
    for (const auto& cand : candidates) {
      Eigen::ComplexEigenSolver<MatrixC> es(cand, true);
      if (es.info() != Eigen::Success) continue;
      const MatrixC& basis = es.eigenvectors();
      Eigen::JacobiSVD<MatrixC> svd(basis);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) <= 1e-8 * sv(0)) continue;
      const double cond = sv(0) / sv(sv.size() - 1);
      const MatrixC inv = basis.inverse();
      bool all_monomial = true;
      for (const auto& w : words) {
        const MatrixC t = inv * w.value * basis;
        const double scale = t.cwiseAbs().maxCoeff();
        const double floor = 1e-10 * cond * scale;
        std::vector<int> col_hits(static_cast<std::size_t>(dim), 0);
        for (Eigen::Index r = 0; r < dim && all_monomial; ++r) {
          const double rowmax = t.row(r).cwiseAbs().maxCoeff();
          int hits = 0;
          for (Eigen::Index c = 0; c < dim; ++c) {
            if (std::abs(t(r, c)) > std::max(tol * rowmax, floor)) {
              ++hits;
              ++col_hits[static_cast<std::size_t>(c)];
            }
          }
          if (hits != 1) all_monomial = false;
        }
        if (all_monomial && std::any_of(col_hits.begin(), col_hits.end(), [](int h) { return h != 1; })) {
          all_monomial = false;
        }
        if (!all_monomial) break;
      }
      if (all_monomial) {
        v.monomial_structure = true;
        break;
      }
    }
  }

  if (v.commutators_vanish || v.monomial_structure) {
    v.verdict = Verdict::kPass;
  } else if (worst > 10.0 * tol) {
    v.verdict = Verdict::kFail;
  } else {
    v.verdict = Verdict::kInconclusive;
  }
  if (v.monomial_structure && !v.commutators_vanish) {
    v.diagnostics.push_back("words are monomial in a common eigenbasis");
  }
  return v;
}

}  // namespace nhg
