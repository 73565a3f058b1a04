#pragma once

#include "quivermod/generic.hpp"
#include "quivermod/localization.hpp"
#include "quivermod/quiver.hpp"
#include "quivermod/representation.hpp"
#include "quivermod/stability.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace quivermod::io {

using nlohmann::json;

// Quiver: {"vertices": k, "arrows": [{"id": "a", "src": 1, "tgt": 2}, ...]}
// with an optional "vertex_names" array.
Quiver quiver_from_json(const json& j);
json to_json(const Quiver& q);

// Field: "Q" or {"p": 3}.
Field field_from_json(const json& j);
json to_json(const Field& f);

// Scalars: rationals as "num/den" strings (integers also accepted on input);
// prime-field entries as integers in [0, p).
Scalar scalar_from_json(const json& j, const Field& f);
json scalar_to_json(const Scalar& s, const Field& f);
Matrix matrix_from_json(const json& j, const Field& f, std::size_t rows, std::size_t cols);
json to_json(const Matrix& m, const Field& f);

/// Representation: {"quiver": <path or inline>, "field": ..., "dim": [...],
/// "matrices": {"a": [[...]], ...}}. `quiver` is used when the record has no
/// "quiver" key; when both exist they must agree. Relative quiver paths are
/// resolved against `base_dir`.
Representation representation_from_json(const json& j, QuiverPtr quiver,
                                         const std::filesystem::path& base_dir = {});
json to_json(const Representation& m);

GroupElement group_element_from_json(const json& j, const Field& f, const DimVector& dim);

// Sigma: {"domain": [2], "codomain": [1], "entries": [[[{"coeff": "1",
// "path": ["x"]}, ...]]]}; 1-based vertices, paths in application order.
SigmaMorphism sigma_from_json(const json& j, const Quiver& q);
json to_json(const SigmaMorphism& s);

json to_json(const Presentation& p);
json to_json(const Subrepresentation& s, const Field& f);
json to_json(const SubrepWitness& w, const Field& f);
/// Γ_y in the quiver format plus "beta_y", "summand_dims" and "arrow_counts".
json to_json(const LocalQuiverData& d);

json dimvector_to_json(const DimVector& v);
DimVector dimvector_from_json(const json& j);
Weight weight_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
QuiverPtr load_quiver(const std::filesystem::path& path);
Representation load_representation(const std::filesystem::path& path, QuiverPtr quiver);
SigmaMorphism load_sigma(const std::filesystem::path& path, const Quiver& q);

}  // namespace quivermod::io
