#include "quivermod/localization.hpp"

#include "quivermod/errors.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace quivermod {

namespace {

std::size_t as_size(std::int64_t v) { return static_cast<std::size_t>(v); }

}  // namespace

SigmaMorphism::SigmaMorphism(const Quiver& quiver, std::vector<std::size_t> domain,
                             std::vector<std::size_t> codomain, std::vector<PathCombination> entries)
    : quiver_(std::make_shared<const Quiver>(quiver)),
      domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      entries_(std::move(entries)) {
  if (domain_.empty() || codomain_.empty()) {
    throw ValidationError("sigma needs a nonempty domain and codomain");
  }
  for (auto v : domain_) {
    if (v >= quiver.vertex_count()) throw ValidationError("sigma domain vertex out of range");
  }
  for (auto v : codomain_) {
    if (v >= quiver.vertex_count()) throw ValidationError("sigma codomain vertex out of range");
  }
  if (entries_.size() != rows() * cols()) {
    throw ValidationError("sigma needs " + std::to_string(rows() * cols()) + " entries, got " +
                          std::to_string(entries_.size()));
  }
  for (std::size_t p = 0; p < rows(); ++p) {
    for (std::size_t q = 0; q < cols(); ++q) {
      const PathCombination& e = entries_[p * cols() + q];
      const std::string where = "sigma entry (" + std::to_string(p + 1) + "," + std::to_string(q + 1) + ")";
      if (e.source != codomain_[q] || e.target != domain_[p]) {
        throw ValidationError(where + " must be typed from vertex " + std::to_string(codomain_[q] + 1) +
                              " to vertex " + std::to_string(domain_[p] + 1));
      }
      for (const auto& term : e.terms) {
        if (!is_valid_path(quiver, term.path) || term.path.source != e.source ||
            term.path.target != e.target) {
          throw ValidationError(where + " contains a path of the wrong type");
        }
      }
    }
  }
}

SigmaMorphism make_sigma(const Quiver& q, const Weight& theta, std::int64_t z,
                         std::size_t max_path_len, std::uint64_t seed) {
  require_acyclic(q, "sigma generation");
  require_length(q, theta, "theta");
  if (z < 1) throw ValidationError("z must be a positive integer");
  std::vector<std::size_t> domain;
  std::vector<std::size_t> codomain;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    for (std::int64_t r = 0; r < z * theta[i]; ++r) domain.push_back(i);
    for (std::int64_t r = 0; r < -z * theta[i]; ++r) codomain.push_back(i);
  }
  if (domain.empty() || codomain.empty()) {
    throw ValidationError("theta needs both a positive and a negative entry to define sigma");
  }

  std::mt19937_64 rng(seed);
  auto coefficient = [&rng] {
    const long num = static_cast<long>(rng() % 18) - 9;
    const long den = static_cast<long>(rng() % 4) + 1;
    Scalar c(num >= 0 ? num + 1 : num, den);
    c.canonicalize();
    return c;
  };

  const auto all_paths = enumerate_paths(q, max_path_len);
  std::vector<PathCombination> entries;
  for (auto i : domain) {
    for (auto j : codomain) {
      PathCombination e{j, i, {}};
      for (const auto& p : all_paths) {
        if (p.source == j && p.target == i) e.terms.push_back({coefficient(), p});
      }
      entries.push_back(std::move(e));
    }
  }
  return SigmaMorphism(q, std::move(domain), std::move(codomain), std::move(entries));
}

bool numerical_condition(const SigmaMorphism& sigma, const DimVector& alpha) {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  for (auto i : sigma.domain()) rows += alpha[i];
  for (auto j : sigma.codomain()) cols += alpha[j];
  return rows == cols;
}

Matrix evaluate_sigma(const SigmaMorphism& sigma, const Representation& m) {
  if (!(sigma.quiver() == m.quiver())) throw ValidationError("sigma and representation use different quivers");
  const Field& f = m.field();
  std::vector<std::size_t> row_offsets{0};
  std::vector<std::size_t> col_offsets{0};
  for (auto i : sigma.domain()) row_offsets.push_back(row_offsets.back() + as_size(m.dim()[i]));
  for (auto j : sigma.codomain()) col_offsets.push_back(col_offsets.back() + as_size(m.dim()[j]));

  Matrix out(row_offsets.back(), col_offsets.back());
  for (std::size_t p = 0; p < sigma.rows(); ++p) {
    for (std::size_t q = 0; q < sigma.cols(); ++q) {
      const PathCombination& e = sigma.entry(p, q);
      Matrix block(as_size(m.dim()[e.target]), as_size(m.dim()[e.source]));
      for (const auto& term : e.terms) {
        block = add(f, block, scale(f, f.from_rational(term.coeff), evaluate_path(m, term.path)));
      }
      place_block(out, row_offsets[p], col_offsets[q], block);
    }
  }
  return out;
}

Scalar semi_invariant(const SigmaMorphism& sigma, const Representation& m) {
  if (!numerical_condition(sigma, m.dim())) {
    throw ValidationError("numerical condition fails: M_sigma(m) is not square");
  }
  return determinant(m.field(), evaluate_sigma(sigma, m));
}

Scalar character(const Weight& theta, const GroupElement& g) {
  if (theta.size() != g.dim().size()) throw ValidationError("weight length does not match the group");
  const Field& f = g.field();
  Scalar value = f.one();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    value = f.mul(value, f.pow(determinant(f, g.block(i)), theta[i]));
  }
  return value;
}

const Generator* Presentation::find(const std::string& name) const {
  for (const auto& g : generators) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

std::size_t Presentation::count(Relation::Kind kind) const {
  return static_cast<std::size_t>(
      std::count_if(relations.begin(), relations.end(), [kind](const Relation& r) { return r.kind == kind; }));
}

namespace {

// (source, target) of a product, or nullopt when the factors do not chain.
std::optional<std::pair<std::size_t, std::size_t>> monomial_typing(const Presentation& pres,
                                                                   const Monomial& m) {
  if (m.factors.empty()) return std::nullopt;
  std::optional<std::pair<std::size_t, std::size_t>> typing;
  for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
    const Generator* g = pres.find(*it);
    if (!g) return std::nullopt;
    if (!typing) {
      typing = std::make_pair(g->source, g->target);
    } else {
      if (g->source != typing->second) return std::nullopt;
      typing->second = g->target;
    }
  }
  return typing;
}

}  // namespace

bool Presentation::well_typed() const {
  for (const auto& r : relations) {
    if (!r.typing) continue;
    for (const auto& m : r.lhs) {
      if (monomial_typing(*this, m) != r.typing) return false;
    }
    if (r.rhs != "0") {
      const Generator* g = find(r.rhs);
      if (!g || std::make_pair(g->source, g->target) != *r.typing) return false;
    }
  }
  return true;
}

namespace {

std::string format_monomial(const Monomial& m) {
  std::string out;
  const bool unit_coeff = m.coeff == 1;
  if (!unit_coeff) out = (m.coeff == -1 ? std::string("-") : format_scalar(m.coeff) + "*");
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    if (i) out += '*';
    out += m.factors[i];
  }
  return out;
}

}  // namespace

std::string Presentation::to_text() const {
  std::ostringstream os;
  os << "generators:";
  for (const auto& g : generators) os << ' ' << g.name;
  os << "\nrelations:\n";
  for (const auto& r : relations) {
    os << "  ";
    if (r.lhs.empty()) os << '0';
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
      std::string term = format_monomial(r.lhs[i]);
      if (i > 0) {
        if (term.starts_with('-')) {
          os << " - ";
          term.erase(0, 1);
        } else {
          os << " + ";
        }
      }
      os << term;
    }
    os << " = " << r.rhs;
    if (!r.origin.empty()) os << "    [" << r.origin << ']';
    os << '\n';
  }
  return os.str();
}

std::string localization_variable(std::size_t sigma_index, std::size_t p, std::size_t q) {
  return "y." + std::to_string(sigma_index) + "." + std::to_string(p) + "." + std::to_string(q);
}

namespace {

// Arrow ids of a path in product order; trivial paths contribute nothing.
std::vector<std::string> product_factors(const Quiver& q, const Path& p) {
  std::vector<std::string> ids = arrow_ids(q, p);
  std::reverse(ids.begin(), ids.end());
  return ids;
}

}  // namespace

Presentation localization_presentation(const Quiver& q, const std::vector<SigmaMorphism>& sigmas) {
  Presentation pres;
  const std::size_t k = q.vertex_count();
  for (std::size_t v = 0; v < k; ++v) {
    pres.generators.push_back({q.vertex_name(v), Generator::Kind::idempotent, v, v});
  }
  for (const auto& a : q.arrows()) {
    pres.generators.push_back({a.id, Generator::Kind::arrow, a.source, a.target});
  }
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    const SigmaMorphism& sigma = sigmas[s];
    if (!(sigma.quiver() == q)) {
      throw ValidationError("sigma " + std::to_string(s + 1) + " is over a different quiver");
    }
    // N_σ is v × u; y_{rc} maps vertex i_c to vertex j_r.
    for (std::size_t r = 0; r < sigma.cols(); ++r) {
      for (std::size_t c = 0; c < sigma.rows(); ++c) {
        pres.generators.push_back({localization_variable(s + 1, r + 1, c + 1),
                                   Generator::Kind::localization, sigma.domain()[c], sigma.codomain()[r]});
      }
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Relation r;
      r.kind = Relation::Kind::idempotent;
      r.lhs.push_back({Scalar(1), {q.vertex_name(i), q.vertex_name(j)}});
      if (i == j) {
        r.rhs = q.vertex_name(i);
        r.typing = std::make_pair(i, i);
      } else {
        r.rhs = "0";
      }
      pres.relations.push_back(std::move(r));
    }
  }
  {
    Relation unit;
    unit.kind = Relation::Kind::unit;
    for (std::size_t i = 0; i < k; ++i) unit.lhs.push_back({Scalar(1), {q.vertex_name(i)}});
    unit.rhs = "1";
    pres.relations.push_back(std::move(unit));
  }
  for (const auto& a : q.arrows()) {
    const auto typing = std::make_pair(a.source, a.target);
    pres.relations.push_back({Relation::Kind::arrow_typing,
                              {{Scalar(1), {q.vertex_name(a.target), a.id}}}, a.id, typing, ""});
    pres.relations.push_back({Relation::Kind::arrow_typing,
                              {{Scalar(1), {a.id, q.vertex_name(a.source)}}}, a.id, typing, ""});
  }

  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    const SigmaMorphism& sigma = sigmas[s];
    const std::size_t u = sigma.rows();
    const std::size_t v = sigma.cols();
    const std::string tag = "sigma " + std::to_string(s + 1);
    // (M_σ N_σ)[p, p'] = Σ_r m_{pr} y_{rp'}
    for (std::size_t p = 0; p < u; ++p) {
      for (std::size_t pp = 0; pp < u; ++pp) {
        Relation rel;
        rel.kind = Relation::Kind::localization;
        rel.typing = std::make_pair(sigma.domain()[pp], sigma.domain()[p]);
        rel.rhs = p == pp ? q.vertex_name(sigma.domain()[p]) : "0";
        rel.origin = tag + ": (M N)[" + std::to_string(p + 1) + "," + std::to_string(pp + 1) + "]";
        for (std::size_t r = 0; r < v; ++r) {
          for (const auto& term : sigma.entry(p, r).terms) {
            Monomial mono{term.coeff, product_factors(q, term.path)};
            mono.factors.push_back(localization_variable(s + 1, r + 1, pp + 1));
            rel.lhs.push_back(std::move(mono));
          }
        }
        pres.relations.push_back(std::move(rel));
      }
    }
    // (N_σ M_σ)[r, r'] = Σ_p y_{rp} m_{pr'}
    for (std::size_t r = 0; r < v; ++r) {
      for (std::size_t rr = 0; rr < v; ++rr) {
        Relation rel;
        rel.kind = Relation::Kind::localization;
        rel.typing = std::make_pair(sigma.codomain()[rr], sigma.codomain()[r]);
        rel.rhs = r == rr ? q.vertex_name(sigma.codomain()[r]) : "0";
        rel.origin = tag + ": (N M)[" + std::to_string(r + 1) + "," + std::to_string(rr + 1) + "]";
        for (std::size_t p = 0; p < u; ++p) {
          for (const auto& term : sigma.entry(p, rr).terms) {
            Monomial mono{term.coeff, {localization_variable(s + 1, r + 1, p + 1)}};
            for (auto& f : product_factors(q, term.path)) mono.factors.push_back(std::move(f));
            rel.lhs.push_back(std::move(mono));
          }
        }
        pres.relations.push_back(std::move(rel));
      }
    }
  }
  return pres;
}

LocalizedPointCheck check_localized_point(const std::vector<SigmaMorphism>& sigmas,
                                          const Representation& m) {
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    if (!numerical_condition(sigmas[s], m.dim())) {
      throw ValidationError("sigma " + std::to_string(s + 1) +
                            " fails the numerical condition for dimension vector " +
                            format_vector(m.dim().entries()));
    }
  }
  const Field& f = m.field();
  LocalizedPointCheck check;
  std::vector<Matrix> evaluated;
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    evaluated.push_back(evaluate_sigma(sigmas[s], m));
    check.determinants.push_back(determinant(f, evaluated.back()));
    if (Field::is_zero(check.determinants.back()) && !check.first_singular) check.first_singular = s;
  }
  check.invertible = !check.first_singular;
  if (!check.invertible) return check;

  check.relations_verified = true;
  for (const auto& mat : evaluated) {
    Matrix inv = *inverse(f, mat);
    const bool left = multiply(f, mat, inv) == Matrix::identity(mat.rows());
    const bool right = multiply(f, inv, mat) == Matrix::identity(mat.cols());
    check.relations_verified = check.relations_verified && left && right;
    check.inverses.push_back(std::move(inv));
  }
  return check;
}

std::map<std::string, Matrix> localization_assignment(const std::vector<SigmaMorphism>& sigmas,
                                                      const Representation& m,
                                                      const std::vector<Matrix>& inverses) {
  if (inverses.size() != sigmas.size()) throw ValidationError("one inverse per sigma expected");
  std::map<std::string, Matrix> out;
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    const SigmaMorphism& sigma = sigmas[s];
    std::vector<std::size_t> row_offsets{0};  // codomain blocks
    std::vector<std::size_t> col_offsets{0};  // domain blocks
    for (auto j : sigma.codomain()) row_offsets.push_back(row_offsets.back() + as_size(m.dim()[j]));
    for (auto i : sigma.domain()) col_offsets.push_back(col_offsets.back() + as_size(m.dim()[i]));
    const Matrix& n = inverses[s];
    if (n.rows() != row_offsets.back() || n.cols() != col_offsets.back()) {
      throw ValidationError("inverse of sigma " + std::to_string(s + 1) + " has the wrong shape");
    }
    for (std::size_t r = 0; r < sigma.cols(); ++r) {
      for (std::size_t c = 0; c < sigma.rows(); ++c) {
        Matrix block(row_offsets[r + 1] - row_offsets[r], col_offsets[c + 1] - col_offsets[c]);
        for (std::size_t a = 0; a < block.rows(); ++a) {
          for (std::size_t b = 0; b < block.cols(); ++b) block(a, b) = n(row_offsets[r] + a, col_offsets[c] + b);
        }
        out.emplace(localization_variable(s + 1, r + 1, c + 1), std::move(block));
      }
    }
  }
  return out;
}

namespace {

// Value of a monomial as a map V_source → V_target; zero when the factors do
// not chain from `source` to `target`.
Matrix evaluate_monomial(const Presentation& pres, const Monomial& mono, const Representation& m,
                         const std::map<std::string, Matrix>& assignment, std::size_t source,
                         std::size_t target) {
  const Field& f = m.field();
  const std::size_t rows = as_size(m.dim()[target]);
  const std::size_t cols = as_size(m.dim()[source]);
  Matrix value = Matrix::identity(cols);
  std::size_t at = source;
  for (auto it = mono.factors.rbegin(); it != mono.factors.rend(); ++it) {
    const Generator* g = pres.find(*it);
    if (!g) throw ValidationError("unknown generator '" + *it + "'");
    if (g->source != at) return Matrix(rows, cols);
    switch (g->kind) {
      case Generator::Kind::idempotent:
        break;
      case Generator::Kind::arrow: {
        auto index = m.quiver().find_arrow(g->name);
        if (!index) throw ValidationError("arrow '" + g->name + "' missing from the representation");
        value = multiply(f, m.matrix(*index), value);
        break;
      }
      case Generator::Kind::localization: {
        auto found = assignment.find(g->name);
        if (found == assignment.end()) throw ValidationError("no value for '" + g->name + "'");
        value = multiply(f, found->second, value);
        break;
      }
    }
    at = g->target;
  }
  if (at != target) return Matrix(rows, cols);
  return scale(f, f.from_rational(mono.coeff), value);
}

}  // namespace

bool relation_holds(const Presentation& pres, const Relation& relation, const Representation& m,
                    const std::map<std::string, Matrix>& assignment) {
  const Field& f = m.field();
  const std::size_t k = m.quiver().vertex_count();
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  if (relation.typing) {
    blocks.push_back(*relation.typing);
  } else {
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t t = 0; t < k; ++t) blocks.emplace_back(s, t);
    }
  }
  for (const auto& [source, target] : blocks) {
    Matrix diff(as_size(m.dim()[target]), as_size(m.dim()[source]));
    for (const auto& mono : relation.lhs) {
      diff = add(f, diff, evaluate_monomial(pres, mono, m, assignment, source, target));
    }
    if (relation.rhs == "1") {
      if (source == target) diff = subtract(f, diff, Matrix::identity(diff.rows()));
    } else if (relation.rhs != "0") {
      Monomial rhs{Scalar(1), {relation.rhs}};
      diff = subtract(f, diff, evaluate_monomial(pres, rhs, m, assignment, source, target));
    }
    if (!diff.is_zero()) return false;
  }
  return true;
}

std::string extension_arrow(std::size_t i, std::size_t j) {
  return "x" + std::to_string(i) + "_" + std::to_string(j);
}

Quiver extended_quiver(const Quiver& q, std::int64_t n) {
  if (n < 1) throw ValidationError("extension parameter n must be at least 1");
  const std::size_t k = q.vertex_count();
  std::vector<std::string> names = q.vertex_names();
  names.push_back("v0");
  std::vector<ArrowSpec> arrows;
  for (const auto& a : q.arrows()) {
    arrows.push_back({a.id, static_cast<long long>(a.source + 1), static_cast<long long>(a.target + 1)});
  }
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::int64_t j = 1; j <= n; ++j) {
      arrows.push_back({extension_arrow(i, static_cast<std::size_t>(j)), static_cast<long long>(k + 1),
                        static_cast<long long>(i)});
    }
  }
  return Quiver(k + 1, arrows, std::move(names));
}

SigmaMorphism tau_morphism(const Quiver& extended, std::size_t original_vertex_count, std::int64_t n) {
  if (n < 1) throw ValidationError("extension parameter n must be at least 1");
  const std::size_t k = original_vertex_count;
  if (extended.vertex_count() != k + 1) throw ValidationError("not an extended quiver of the given size");
  const std::size_t v0 = k;
  std::vector<std::size_t> domain;
  for (std::size_t i = 0; i < k; ++i) domain.push_back(i);
  std::vector<std::size_t> codomain(static_cast<std::size_t>(n), v0);
  std::vector<PathCombination> entries;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < codomain.size(); ++q) {
      Path x = make_path(extended, {extension_arrow(p + 1, q + 1)});
      entries.push_back(PathCombination{v0, p, {{Scalar(1), std::move(x)}}});
    }
  }
  return SigmaMorphism(extended, std::move(domain), std::move(codomain), std::move(entries));
}

SigmaMorphism lift_to_extension(const Quiver& extended, const SigmaMorphism& sigma) {
  const Quiver& q = sigma.quiver();
  std::vector<PathCombination> entries;
  for (std::size_t p = 0; p < sigma.rows(); ++p) {
    for (std::size_t c = 0; c < sigma.cols(); ++c) {
      const PathCombination& e = sigma.entry(p, c);
      PathCombination lifted{e.source, e.target, {}};
      for (const auto& term : e.terms) {
        lifted.terms.push_back({term.coeff, make_path(extended, arrow_ids(q, term.path), term.path.source)});
      }
      entries.push_back(std::move(lifted));
    }
  }
  return SigmaMorphism(extended, sigma.domain(), sigma.codomain(), std::move(entries));
}

RootPresentation root_presentation(const Quiver& q, const std::vector<SigmaMorphism>& sigmas,
                                   std::int64_t n, std::size_t loop_len_bound) {
  Quiver extended = extended_quiver(q, n);
  std::vector<SigmaMorphism> all;
  for (const auto& s : sigmas) all.push_back(lift_to_extension(extended, s));
  all.push_back(tau_morphism(extended, q.vertex_count(), n));
  Presentation pres = localization_presentation(extended, all);

  const std::size_t v0 = q.vertex_count();
  std::vector<const Generator*> steps;
  for (const auto& g : pres.generators) {
    if (g.kind != Generator::Kind::idempotent) steps.push_back(&g);
  }

  std::vector<std::vector<std::string>> loops{{extended.vertex_name(v0)}};
  std::vector<std::vector<std::string>> found;
  std::vector<std::string> word;  // application order
  auto walk = [&](auto&& self, std::size_t at) -> void {
    if (!word.empty() && at == v0) found.emplace_back(word.rbegin(), word.rend());
    if (word.size() == loop_len_bound) return;
    for (const Generator* g : steps) {
      if (g->source != at) continue;
      word.push_back(g->name);
      self(self, g->target);
      word.pop_back();
    }
  };
  walk(walk, v0);
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  loops.insert(loops.end(), found.begin(), found.end());
  return RootPresentation{std::move(extended), std::move(pres), std::move(loops)};
}

}  // namespace quivermod
