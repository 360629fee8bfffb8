#include "sdpi/verifier.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "sdpi/errors.hpp"
#include "sdpi/parallel.hpp"

namespace sdpi {

std::string to_string(Level level) {
  switch (level) {
    case Level::Full:
      return "full";
    case Level::Reduced:
      return "reduced";
    case Level::QF:
      return "qf";
  }
  return "?";
}

std::string to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

Level parse_level(const std::string& s) {
  if (s == "full") return Level::Full;
  if (s == "reduced") return Level::Reduced;
  if (s == "qf") return Level::QF;
  throw InvalidInput("unknown level '" + s + "' (expected full, reduced or qf)");
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "float") return Mode::Float;
  throw InvalidInput("unknown mode '" + s + "' (expected exact or float)");
}

bool MatrixValue::is_zero(double tolerance) const {
  if (exact) return exact->is_zero();
  return std::abs(approx) <= tolerance;
}

bool MatrixValue::equals(const MatrixValue& other, double tolerance) const {
  if (exact && other.exact) return *exact == *other.exact;
  return std::abs(approx - other.approx) <= tolerance;
}

std::string MatrixValue::to_string() const {
  if (exact) return exact->to_string();
  std::ostringstream os;
  os.precision(17);
  os << approx.real();
  if (approx.imag() != 0) os << (approx.imag() < 0 ? " - " : " + ") << std::abs(approx.imag()) << "i";
  return os.str();
}

const ConstantEntry* KLReport::constant(const ErrorOperator& e, const ErrorOperator& f) const {
  for (const auto& c : constants)
    if (c.e == e && c.f == f) return &c;
  return nullptr;
}

namespace {

struct KetTerm {
  OccupationVector v;
  unsigned orbit;
  GaussianInt c;
};

struct BraEntry {
  unsigned orbit;
  BigInt mult;
};

struct GaussBig {
  BigInt re, im;
};

void addmul(BigInt& acc, const BigInt& m, long c) {
  if (c > 0) {
    mpz_addmul_ui(acc.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(c));
  } else if (c < 0) {
    mpz_submul_ui(acc.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(-c));
  }
}

using Cell = ElementCell;

// Mask of (i, j) elements to evaluate, row-major d x d.
using Mask = std::vector<bool>;

// Matrix elements <i| E F |j> for an orbit-structured code. Amplitudes enter
// only at the end: each element is sum_{s,t} M[s][t] conj(a_s) a_t where M is
// an exact Gaussian-integer matrix collected over the supports.
class Engine {
 public:
  Engine(unsigned d, unsigned n, const std::vector<OccupationVector>& reps, Mode mode,
         const std::vector<RadicalSum>* exact_amps,
         const std::vector<std::complex<double>>& float_amps, bool fast_path)
      : d_(d), n_(n), m_(reps.size()), mode_(mode), fast_path_(fast_path) {
    for (unsigned inv = 1; inv < d; ++inv)
      if ((inv * (n % d)) % d == 1) n_inverse_ = inv;
    std::vector<std::vector<OccupationVector>> members;
    std::vector<BigInt> mults;
    for (const auto& r : reps) {
      members.push_back(expand_orbit(r));
      mults.push_back(multinomial(n, r.entries()));
    }
    bras_.resize(d);
    words_.resize(d);
    for (unsigned k = 0; k < d; ++k) {
      for (unsigned s = 0; s < m_; ++s) {
        for (const auto& w : members[s]) {
          auto v = cyclic_shift(w, k);
          bras_[k].emplace(v, BraEntry{s, mults[s]});
          words_[k].push_back({v, s, GaussianInt{1, 0}});
        }
      }
    }
    if (mode_ == Mode::Exact) {
      p_re_.resize(m_ * m_);
      for (unsigned s = 0; s < m_; ++s)
        for (unsigned t = 0; t < m_; ++t) p_re_[s * m_ + t] = (*exact_amps)[s] * (*exact_amps)[t];
    } else {
      p_float_.resize(m_ * m_);
      for (unsigned s = 0; s < m_; ++s)
        for (unsigned t = 0; t < m_; ++t)
          p_float_[s * m_ + t] = std::conj(float_amps[s]) * float_amps[t];
    }
    for (const auto& op : error_basis(d)) kets_.emplace(op, build_kets(op));
  }

  unsigned d() const { return d_; }

  std::vector<Cell> evaluate(const ErrorOperator& e, const ErrorOperator& f,
                             const Mask& need) const {
    std::vector<Cell> cells(d_ * d_);
    const auto& kets = kets_.at(f);
    std::vector<GaussBig> acc(d_ * m_ * m_);
    std::vector<bool> overlap(d_);
    for (unsigned j = 0; j < d_; ++j) {
      bool any = false;
      for (unsigned i = 0; i < d_; ++i) any = any || need[i * d_ + j];
      if (!any) continue;
      for (auto& g : acc) g.re = 0, g.im = 0;
      std::fill(overlap.begin(), overlap.end(), false);
      for (const auto& kt : kets[j]) {
        for_each_action(e, kt.v, [&](const OccupationVector& v, GaussianInt c2) {
          GaussianInt cc{kt.c.re * c2.re - kt.c.im * c2.im, kt.c.re * c2.im + kt.c.im * c2.re};
          auto look = [&](unsigned i) {
            auto it = bras_[i].find(v);
            if (it == bras_[i].end()) return;
            overlap[i] = true;
            auto& g = acc[(i * m_ + it->second.orbit) * m_ + kt.orbit];
            addmul(g.re, it->second.mult, cc.re);
            addmul(g.im, it->second.mult, cc.im);
          };
          if (fast_path_) {
            unsigned i = (weight(v) * n_inverse_) % d_;
            if (need[i * d_ + j]) look(i);
          } else {
            for (unsigned i = 0; i < d_; ++i)
              if (need[i * d_ + j]) look(i);
          }
        });
      }
      for (unsigned i = 0; i < d_; ++i) {
        if (!need[i * d_ + j]) continue;
        Cell& cell = cells[i * d_ + j];
        cell.overlap = overlap[i];
        cell.value = combine(&acc[i * m_ * m_], overlap[i]);
      }
    }
    return cells;
  }

 private:
  std::vector<std::vector<KetTerm>> build_kets(const ErrorOperator& f) const {
    std::vector<std::vector<KetTerm>> out(d_);
    for (unsigned j = 0; j < d_; ++j) {
      for (const auto& w : words_[j]) {
        for_each_action(f, w.v, [&](const OccupationVector& v, GaussianInt c) {
          out[j].push_back({v, w.orbit, c});
        });
      }
    }
    return out;
  }

  MatrixValue combine(const GaussBig* m, bool overlap) const {
    MatrixValue out;
    if (mode_ == Mode::Exact) {
      RadicalSum re, im;
      if (overlap) {
        for (unsigned k = 0; k < m_ * m_; ++k) {
          if (m[k].re != 0) re += p_re_[k] * BigRational(m[k].re);
          if (m[k].im != 0) im += p_re_[k] * BigRational(m[k].im);
        }
      }
      out.exact = ExactComplex(std::move(re), std::move(im));
      out.approx = out.exact->to_complex();
    } else {
      std::complex<double> v = 0;
      if (overlap) {
        for (unsigned k = 0; k < m_ * m_; ++k) {
          if (m[k].re != 0 || m[k].im != 0)
            v += std::complex<double>(m[k].re.get_d(), m[k].im.get_d()) * p_float_[k];
        }
      }
      out.approx = v;
    }
    return out;
  }

  unsigned d_, n_;
  unsigned m_;
  Mode mode_;
  bool fast_path_;
  unsigned n_inverse_ = 1;
  std::vector<std::unordered_map<OccupationVector, BraEntry>> bras_;
  std::vector<std::vector<KetTerm>> words_;
  std::map<ErrorOperator, std::vector<std::vector<KetTerm>>> kets_;
  std::vector<RadicalSum> p_re_;
  std::vector<std::complex<double>> p_float_;
};

enum class Check { All, OffDiagonal, Diagonal };

struct PairTask {
  ErrorOperator e, f;
  Check check;
};

bool checked(Check c, unsigned i, unsigned j) {
  switch (c) {
    case Check::All:
      return true;
    case Check::OffDiagonal:
      return i != j;
    case Check::Diagonal:
      return i == j;
  }
  return false;
}

void record_zero(KLReport& r, const ErrorOperator& e, const ErrorOperator& f, unsigned i,
                 unsigned j, const Cell& cell) {
  if (!cell.overlap) {
    ++r.structural_zeros;
  } else if (cell.value.is_zero(r.tolerance)) {
    ++r.arithmetic_zeros;
    r.arithmetic_zero_elements.push_back({e, f, i, j});
  }
}

std::vector<PairTask> sorted_tasks(unsigned d, std::vector<PairTask> tasks) {
  const auto basis = error_basis(d);
  auto index = [&](const ErrorOperator& op) {
    return std::find(basis.begin(), basis.end(), op) - basis.begin();
  };
  std::stable_sort(tasks.begin(), tasks.end(), [&](const PairTask& x, const PairTask& y) {
    return std::pair(index(x.e), index(x.f)) < std::pair(index(y.e), index(y.f));
  });
  return tasks;
}

KLReport build_report(unsigned d, const std::vector<PairTask>& tasks,
                      const std::vector<std::vector<Cell>>& results, Level level, Mode mode,
                      double tolerance) {
  KLReport r;
  r.level = level;
  r.mode = mode;
  r.tolerance = tolerance;
  MatrixValue zero;
  if (mode == Mode::Exact) zero.exact = ExactComplex();
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& [e, f, check] = tasks[t];
    const auto& cells = results[t];
    const MatrixValue& c0 = cells[0].value;
    r.constants.push_back({e, f, c0});
    for (unsigned i = 0; i < d; ++i) {
      for (unsigned j = 0; j < d; ++j) {
        if (!checked(check, i, j)) continue;
        const Cell& cell = cells[i * d + j];
        ++r.elements_checked;
        if (i != j) {
          if (!cell.value.is_zero(tolerance)) {
            r.violations.push_back({e, f, i, j, cell.value, zero});
          } else {
            record_zero(r, e, f, i, j, cell);
          }
        } else {
          if (!cell.value.equals(c0, tolerance)) {
            r.violations.push_back({e, f, i, j, cell.value, c0});
          } else if (cell.value.is_zero(tolerance)) {
            record_zero(r, e, f, i, j, cell);
          }
        }
      }
    }
  }
  return r;
}

KLReport run_tasks(const Engine& engine, std::vector<PairTask> tasks, Level level,
                   const VerifierOptions& opt, Mode mode) {
  const unsigned d = engine.d();
  tasks = sorted_tasks(d, std::move(tasks));
  std::vector<std::vector<Cell>> results(tasks.size());
  parallel_for(tasks.size(), opt.workers, [&](std::size_t t) {
    Mask need(d * d, false);
    need[0] = true;  // the constant
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j)
        if (checked(tasks[t].check, i, j)) need[i * d + j] = true;
    results[t] = engine.evaluate(tasks[t].e, tasks[t].f, need);
  });
  return build_report(d, tasks, results, level, mode, opt.tolerance);
}

std::vector<PairTask> full_tasks(unsigned d) {
  std::vector<PairTask> tasks;
  const auto basis = error_basis(d);
  for (const auto& e : basis)
    for (const auto& f : basis) tasks.push_back({e, f, Check::All});
  return tasks;
}

std::vector<PairTask> reduced_tasks(unsigned d) {
  std::vector<PairTask> tasks;
  for (unsigned n = 1; n <= (d - 1) / 2; ++n)
    tasks.push_back({ErrorOperator::identity(), ErrorOperator::s(0, n), Check::OffDiagonal});
  std::vector<ErrorOperator> flips;
  for (const auto& op : error_basis(d))
    if (op.kind == GeneratorKind::S || op.kind == GeneratorKind::A) flips.push_back(op);
  for (const auto& e : flips)
    for (const auto& f : flips) tasks.push_back({e, f, Check::All});
  tasks.push_back({ErrorOperator::identity(), ErrorOperator::d(d - 2), Check::Diagonal});
  for (unsigned l = 0; l + 2 <= d; ++l)
    tasks.push_back({ErrorOperator::d(l), ErrorOperator::d(d - 2), Check::Diagonal});
  return tasks;
}

struct Prepared {
  unsigned d, n;
  std::vector<OccupationVector> reps;
  std::vector<RadicalSum> exact_amps;
  std::vector<std::complex<double>> float_amps;
  bool has_exact;
};

void check_caps(unsigned d, unsigned n, const VerifierOptions& opt) {
  if (d > opt.max_d) {
    throw CapExceeded("d = " + std::to_string(d) + " exceeds the cap " +
                      std::to_string(opt.max_d));
  }
  if (n > opt.max_n) {
    throw CapExceeded("N = " + std::to_string(n) + " exceeds the cap " +
                      std::to_string(opt.max_n));
  }
}

Prepared prepare(const Code& code, const VerifierOptions& opt, bool need_sparse) {
  auto report = validate(code);
  if (!report.structurally_valid()) throw InvalidInput("invalid code: " + report.first_failure());
  if (need_sparse && !report.passed()) {
    throw HypothesisViolation(
        "the quadratic-form reduction needs a sparse, doubly permutation-invariant code "
        "satisfying the congruence and weight conditions; " +
        report.first_failure());
  }
  check_caps(code.d, code.n, opt);
  Prepared p{code.d, code.n, {}, {}, {}, true};
  for (const auto& o : code.orbits) {
    p.reps.push_back(o.representative);
    p.exact_amps.push_back(o.amplitude);
    p.float_amps.push_back(o.amplitude.to_double());
  }
  return p;
}

Prepared prepare(const FloatCode& code, const VerifierOptions& opt, bool need_sparse) {
  auto report = validate(code, opt.tolerance);
  if (!report.structurally_valid()) throw InvalidInput("invalid code: " + report.first_failure());
  if (need_sparse && !report.passed()) {
    throw HypothesisViolation(
        "the quadratic-form reduction needs a sparse, doubly permutation-invariant code "
        "satisfying the congruence and weight conditions; " +
        report.first_failure());
  }
  check_caps(code.d, code.n, opt);
  Prepared p{code.d, code.n, {}, {}, {}, false};
  for (const auto& o : code.orbits) {
    p.reps.push_back(o.representative);
    p.float_amps.push_back(o.amplitude);
  }
  return p;
}

Engine make_engine(const Prepared& p, Mode mode, const VerifierOptions& opt) {
  return Engine(p.d, p.n, p.reps, mode, p.has_exact ? &p.exact_amps : nullptr, p.float_amps,
                opt.weight_fast_path);
}

Mode effective_mode(const Prepared& p, const VerifierOptions& opt, std::vector<std::string>& notes) {
  if (opt.mode == Mode::Exact && !p.has_exact) {
    notes.push_back("amplitudes are floating point; verified in float mode");
    return Mode::Float;
  }
  return opt.mode;
}

KLReport run_level(const Prepared& p, Level level, const VerifierOptions& opt) {
  std::vector<std::string> notes;
  Mode mode = effective_mode(p, opt, notes);
  Engine engine = make_engine(p, mode, opt);
  KLReport r = run_tasks(engine, level == Level::Full ? full_tasks(p.d) : reduced_tasks(p.d),
                         level, opt, mode);
  r.notes = std::move(notes);
  return r;
}

KLReport run_qf(const Prepared& p, const VerifierOptions& opt) {
  std::vector<std::string> notes;
  Mode mode = effective_mode(p, opt, notes);
  Engine engine = make_engine(p, mode, opt);
  const unsigned d = p.d;
  const unsigned last = d - 1;
  const auto dl = ErrorOperator::d(d - 2);
  const auto s01 = ErrorOperator::s(0, 1);
  const auto id = ErrorOperator::identity();

  KLReport r;
  r.level = Level::QF;
  r.mode = mode;
  r.tolerance = opt.tolerance;
  r.notes = std::move(notes);
  MatrixValue zero;
  if (mode == Mode::Exact) zero.exact = ExactComplex();

  Mask need(d * d, false);
  need[0] = true;
  need[last * d + last] = true;
  auto eval = [&](const ErrorOperator& e, const ErrorOperator& f) {
    auto cells = engine.evaluate(e, f, need);
    r.constants.push_back({e, f, cells[0].value});
    r.elements_checked += 2;
    return std::pair(cells[0].value, cells[last * d + last].value);
  };

  auto [q1_zero, q1_last] = eval(id, dl);
  QuadraticForm qf1{"QF1", q1_last, zero, q1_last.is_zero(opt.tolerance)};
  if (!qf1.passed) r.violations.push_back({id, dl, last, last, q1_last, zero});
  (void)q1_zero;
  r.elements_checked -= 1;

  auto [q2_zero, q2_last] = eval(dl, dl);
  QuadraticForm qf2{"QF2", q2_zero, q2_last, q2_zero.equals(q2_last, opt.tolerance)};
  if (!qf2.passed) r.violations.push_back({dl, dl, last, last, q2_last, q2_zero});

  auto [q3_zero, q3_last] = eval(s01, s01);
  QuadraticForm qf3{"QF3", q3_zero, q3_last, q3_zero.equals(q3_last, opt.tolerance)};
  if (!qf3.passed) r.violations.push_back({s01, s01, last, last, q3_last, q3_zero});

  r.quadratic_forms = {qf1, qf2, qf3};
  return r;
}

}  // namespace

KLReport kl_full(const Code& code, const VerifierOptions& options) {
  return run_level(prepare(code, options, false), Level::Full, options);
}

KLReport kl_full(const FloatCode& code, const VerifierOptions& options) {
  return run_level(prepare(code, options, false), Level::Full, options);
}

KLReport kl_reduced(const Code& code, const VerifierOptions& options) {
  return run_level(prepare(code, options, false), Level::Reduced, options);
}

KLReport kl_reduced(const FloatCode& code, const VerifierOptions& options) {
  return run_level(prepare(code, options, false), Level::Reduced, options);
}

KLReport qf_check(const Code& code, const VerifierOptions& options) {
  return run_qf(prepare(code, options, true), options);
}

KLReport qf_check(const FloatCode& code, const VerifierOptions& options) {
  return run_qf(prepare(code, options, true), options);
}

KLReport verify(const Code& code, Level level, const VerifierOptions& options) {
  return level == Level::QF ? qf_check(code, options)
                            : (level == Level::Full ? kl_full(code, options)
                                                    : kl_reduced(code, options));
}

KLReport verify(const FloatCode& code, Level level, const VerifierOptions& options) {
  return level == Level::QF ? qf_check(code, options)
                            : (level == Level::Full ? kl_full(code, options)
                                                    : kl_reduced(code, options));
}

KLReport full_report_from_cells(unsigned d, Mode mode, double tolerance,
                                const std::vector<std::vector<ElementCell>>& cells) {
  auto tasks = full_tasks(d);
  if (cells.size() != tasks.size()) throw std::invalid_argument("cell table has the wrong size");
  return build_report(d, tasks, cells, Level::Full, mode, tolerance);
}

std::vector<ElementRef> sparsity_zero_elements(unsigned d) {
  std::vector<ElementRef> out;
  for (unsigned n = 1; n <= (d - 1) / 2; ++n)
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j)
        if (i != j) out.push_back({ErrorOperator::identity(), ErrorOperator::s(0, n), i, j});
  std::vector<ErrorOperator> flips;
  for (const auto& op : error_basis(d))
    if (op.kind == GeneratorKind::S || op.kind == GeneratorKind::A) flips.push_back(op);
  for (const auto& e : flips)
    for (const auto& f : flips) {
      if (e.j == f.j && e.k == f.k) continue;
      for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) out.push_back({e, f, i, j});
    }
  return out;
}

}  // namespace sdpi
