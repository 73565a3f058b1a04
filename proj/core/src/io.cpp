#include "quivermod/io.hpp"

#include "quivermod/errors.hpp"

#include <fstream>

namespace quivermod::io {

namespace {

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

const json& require_key(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::vector<std::int64_t> int_array(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an integer array");
  std::vector<std::int64_t> out;
  for (const auto& x : j) out.push_back(as_int(x, what));
  return out;
}

const char* kind_name(Generator::Kind k) {
  switch (k) {
    case Generator::Kind::idempotent: return "idempotent";
    case Generator::Kind::arrow: return "arrow";
    case Generator::Kind::localization: return "localization";
  }
  return "?";
}

const char* kind_name(Relation::Kind k) {
  switch (k) {
    case Relation::Kind::idempotent: return "idempotent";
    case Relation::Kind::unit: return "unit";
    case Relation::Kind::arrow_typing: return "arrow_typing";
    case Relation::Kind::localization: return "localization";
  }
  return "?";
}

}  // namespace

Quiver quiver_from_json(const json& j) {
  const std::int64_t k = as_int(require_key(j, "vertices"), "vertices");
  if (k < 1) throw ValidationError("vertices must be positive");
  std::vector<ArrowSpec> arrows;
  if (j.contains("arrows")) {
    if (!j.at("arrows").is_array()) throw ValidationError("arrows must be an array");
    for (const auto& a : j.at("arrows")) {
      const json& id = require_key(a, "id");
      if (!id.is_string()) throw ValidationError("arrow id must be a string");
      arrows.push_back({id.get<std::string>(), as_int(require_key(a, "src"), "src"),
                        as_int(require_key(a, "tgt"), "tgt")});
    }
  }
  std::vector<std::string> names;
  if (j.contains("vertex_names")) names = j.at("vertex_names").get<std::vector<std::string>>();
  return Quiver(static_cast<std::size_t>(k), arrows, std::move(names));
}

json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) {
    arrows.push_back({{"id", a.id}, {"src", a.source + 1}, {"tgt", a.target + 1}});
  }
  json out = {{"vertices", q.vertex_count()}, {"arrows", std::move(arrows)}};
  bool default_names = true;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (q.vertex_name(v) != "v" + std::to_string(v + 1)) default_names = false;
  }
  if (!default_names) out["vertex_names"] = q.vertex_names();
  return out;
}

Field field_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Q") return Field::rationals();
    throw ValidationError("unknown field '" + s + "'");
  }
  if (j.is_object() && j.contains("p")) {
    const std::int64_t p = as_int(j.at("p"), "p");
    if (p < 2) throw ValidationError("field characteristic must be a prime");
    return Field::prime(static_cast<std::uint64_t>(p));
  }
  throw ValidationError("field must be \"Q\" or {\"p\": prime}");
}

json to_json(const Field& f) {
  if (f.is_rational()) return "Q";
  return {{"p", f.characteristic()}};
}

Scalar scalar_from_json(const json& j, const Field& f) {
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (f.is_prime() && (v < 0 || v >= static_cast<std::int64_t>(f.characteristic()))) {
      throw ValidationError("entry " + std::to_string(v) + " is not in 0.." +
                            std::to_string(f.characteristic() - 1));
    }
    return f.from_integer(v);
  }
  if (j.is_string()) return f.from_rational(parse_rational(j.get<std::string>()));
  throw ValidationError("matrix entries must be integers or \"num/den\" strings");
}

json scalar_to_json(const Scalar& s, const Field& f) {
  if (f.is_prime()) return s.get_num().get_ui();
  return format_scalar(s);
}

Matrix matrix_from_json(const json& j, const Field& f, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw ValidationError("matrix must be an array of rows");
  Matrix m(rows, cols);
  // A matrix with zero rows may be written as [] regardless of its column count.
  if (rows == 0) {
    if (!j.empty()) throw ValidationError("expected an empty matrix");
    return m;
  }
  if (j.size() != rows) {
    throw ValidationError("expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw ValidationError("row " + std::to_string(r + 1) + " must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row[c], f);
  }
  return m;
}

json to_json(const Matrix& m, const Field& f) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c), f));
    rows.push_back(std::move(row));
  }
  return rows;
}

json dimvector_to_json(const DimVector& v) { return v.entries(); }

DimVector dimvector_from_json(const json& j) { return DimVector(int_array(j, "dimension vector")); }

Weight weight_from_json(const json& j) { return Weight(int_array(j, "weight")); }

Representation representation_from_json(const json& j, QuiverPtr quiver,
                                         const std::filesystem::path& base_dir) {
  if (j.contains("quiver")) {
    const json& ref = j.at("quiver");
    QuiverPtr declared;
    if (ref.is_string()) {
      std::filesystem::path path = ref.get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      declared = load_quiver(path);
    } else {
      declared = std::make_shared<const Quiver>(quiver_from_json(ref));
    }
    if (quiver && !(*quiver == *declared)) {
      throw ValidationError("representation's quiver differs from the supplied quiver");
    }
    if (!quiver) quiver = std::move(declared);
  }
  if (!quiver) throw ValidationError("representation names no quiver");

  const Field field = field_from_json(require_key(j, "field"));
  DimVector dim = dimvector_from_json(require_key(j, "dim"));
  require_length(*quiver, dim, "dim");
  const json& mats = j.contains("matrices") ? j.at("matrices") : json::object();
  if (!mats.is_object()) throw ValidationError("matrices must be an object keyed by arrow id");
  for (const auto& [id, value] : mats.items()) {
    if (!quiver->find_arrow(id)) throw ValidationError("matrix given for unknown arrow '" + id + "'");
  }
  std::vector<Matrix> matrices;
  for (const auto& a : quiver->arrows()) {
    const auto rows = static_cast<std::size_t>(dim[a.target]);
    const auto cols = static_cast<std::size_t>(dim[a.source]);
    if (!mats.contains(a.id)) {
      if (rows * cols != 0) throw ValidationError("missing matrix for arrow '" + a.id + "'");
      matrices.emplace_back(rows, cols);
      continue;
    }
    try {
      matrices.push_back(matrix_from_json(mats.at(a.id), field, rows, cols));
    } catch (const ValidationError& e) {
      throw ValidationError("arrow '" + a.id + "': " + e.what());
    }
  }
  return Representation(std::move(quiver), field, std::move(dim), std::move(matrices));
}

json to_json(const Representation& m) {
  json mats = json::object();
  for (std::size_t a = 0; a < m.quiver().arrow_count(); ++a) {
    mats[m.quiver().arrow(a).id] = to_json(m.matrix(a), m.field());
  }
  return {{"quiver", to_json(m.quiver())},
          {"field", to_json(m.field())},
          {"dim", dimvector_to_json(m.dim())},
          {"matrices", std::move(mats)}};
}

GroupElement group_element_from_json(const json& j, const Field& f, const DimVector& dim) {
  if (!j.is_array() || j.size() != dim.size()) {
    throw ValidationError("group element must list one matrix per vertex");
  }
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < dim.size(); ++v) {
    const auto n = static_cast<std::size_t>(dim[v]);
    blocks.push_back(matrix_from_json(j[v], f, n, n));
  }
  return GroupElement(f, dim, std::move(blocks));
}

SigmaMorphism sigma_from_json(const json& j, const Quiver& q) {
  auto vertices = [&](const char* key) {
    std::vector<std::size_t> out;
    for (auto v : int_array(require_key(j, key), key)) {
      if (v < 1 || static_cast<std::size_t>(v) > q.vertex_count()) {
        throw ValidationError(std::string(key) + " vertex " + std::to_string(v) + " out of range");
      }
      out.push_back(static_cast<std::size_t>(v - 1));
    }
    return out;
  };
  std::vector<std::size_t> domain = vertices("domain");
  std::vector<std::size_t> codomain = vertices("codomain");
  const json& rows = require_key(j, "entries");
  if (!rows.is_array() || rows.size() != domain.size()) {
    throw ValidationError("sigma entries must have one row per domain summand");
  }
  std::vector<PathCombination> entries;
  for (std::size_t p = 0; p < domain.size(); ++p) {
    if (!rows[p].is_array() || rows[p].size() != codomain.size()) {
      throw ValidationError("sigma row " + std::to_string(p + 1) + " must have one entry per codomain summand");
    }
    for (std::size_t c = 0; c < codomain.size(); ++c) {
      PathCombination e{codomain[c], domain[p], {}};
      for (const auto& term : rows[p][c]) {
        const json& coeff = require_key(term, "coeff");
        Scalar value = coeff.is_string() ? parse_rational(coeff.get<std::string>())
                                         : Scalar(static_cast<long>(as_int(coeff, "coeff")));
        auto ids = require_key(term, "path").get<std::vector<std::string>>();
        e.terms.push_back({value, make_path(q, ids, codomain[c])});
      }
      entries.push_back(std::move(e));
    }
  }
  return SigmaMorphism(q, std::move(domain), std::move(codomain), std::move(entries));
}

json to_json(const SigmaMorphism& s) {
  json domain = json::array();
  json codomain = json::array();
  for (auto v : s.domain()) domain.push_back(v + 1);
  for (auto v : s.codomain()) codomain.push_back(v + 1);
  json rows = json::array();
  for (std::size_t p = 0; p < s.rows(); ++p) {
    json row = json::array();
    for (std::size_t c = 0; c < s.cols(); ++c) {
      json terms = json::array();
      for (const auto& t : s.entry(p, c).terms) {
        terms.push_back({{"coeff", format_scalar(t.coeff)}, {"path", arrow_ids(s.quiver(), t.path)}});
      }
      row.push_back(std::move(terms));
    }
    rows.push_back(std::move(row));
  }
  return {{"domain", std::move(domain)}, {"codomain", std::move(codomain)}, {"entries", std::move(rows)}};
}

json to_json(const Presentation& p) {
  json generators = json::array();
  for (const auto& g : p.generators) {
    generators.push_back(
        {{"name", g.name}, {"kind", kind_name(g.kind)}, {"src", g.source + 1}, {"tgt", g.target + 1}});
  }
  json relations = json::array();
  for (const auto& r : p.relations) {
    json lhs = json::array();
    for (const auto& m : r.lhs) lhs.push_back({{"coeff", format_scalar(m.coeff)}, {"factors", m.factors}});
    json rel = {{"kind", kind_name(r.kind)}, {"lhs", std::move(lhs)}, {"rhs", r.rhs}};
    if (r.typing) rel["typing"] = {r.typing->first + 1, r.typing->second + 1};
    if (!r.origin.empty()) rel["origin"] = r.origin;
    relations.push_back(std::move(rel));
  }
  return {{"generators", std::move(generators)}, {"relations", std::move(relations)}};
}

json to_json(const Subrepresentation& s, const Field& f) {
  json bases = json::array();
  for (const auto& b : s.bases) bases.push_back(to_json(b, f));
  return {{"beta", dimvector_to_json(s.beta)}, {"bases", std::move(bases)}};
}

json to_json(const SubrepWitness& w, const Field& f) {
  json out = to_json(w.sub, f);
  out["theta_value"] = w.theta_value;
  return out;
}

json to_json(const LocalQuiverData& d) {
  json out = to_json(d.to_quiver());
  out["beta_y"] = d.multiplicities;
  json dims = json::array();
  for (const auto& v : d.summand_dims) dims.push_back(dimvector_to_json(v));
  out["summand_dims"] = std::move(dims);
  out["arrow_counts"] = d.arrow_counts;
  out["stability_verified"] = d.stability_verified;
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

QuiverPtr load_quiver(const std::filesystem::path& path) {
  return std::make_shared<const Quiver>(quiver_from_json(read_json_file(path)));
}

Representation load_representation(const std::filesystem::path& path, QuiverPtr quiver) {
  return representation_from_json(read_json_file(path), std::move(quiver), path.parent_path());
}

SigmaMorphism load_sigma(const std::filesystem::path& path, const Quiver& q) {
  return sigma_from_json(read_json_file(path), q);
}

}  // namespace quivermod::io
