#include "quivermod/representation.hpp"

#include "quivermod/errors.hpp"

namespace quivermod {

namespace {

std::size_t as_size(std::int64_t v) { return static_cast<std::size_t>(v); }

}  // namespace

Representation::Representation(QuiverPtr quiver, Field field, DimVector dim,
                               std::vector<Matrix> matrices)
    : quiver_(std::move(quiver)), field_(field), dim_(std::move(dim)) {
  if (!quiver_) throw ValidationError("representation without a quiver");
  require_length(*quiver_, dim_, "dimension vector");
  if (matrices.size() != quiver_->arrow_count()) {
    throw ValidationError("representation has " + std::to_string(matrices.size()) +
                          " matrices for " + std::to_string(quiver_->arrow_count()) + " arrows");
  }
  matrices_.reserve(matrices.size());
  for (std::size_t a = 0; a < matrices.size(); ++a) {
    const Arrow& arrow = quiver_->arrow(a);
    const std::size_t rows = as_size(dim_[arrow.target]);
    const std::size_t cols = as_size(dim_[arrow.source]);
    if (matrices[a].rows() != rows || matrices[a].cols() != cols) {
      throw ValidationError("matrix for arrow '" + arrow.id + "' must be " +
                            std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                            std::to_string(matrices[a].rows()) + "x" +
                            std::to_string(matrices[a].cols()));
    }
    matrices_.push_back(reduce_into(field_, matrices[a]));
  }
}

Representation Representation::zero(QuiverPtr quiver, Field field, DimVector dim) {
  if (!quiver) throw ValidationError("representation without a quiver");
  require_length(*quiver, dim, "dimension vector");
  std::vector<Matrix> matrices;
  for (const auto& a : quiver->arrows()) {
    matrices.emplace_back(as_size(dim[a.target]), as_size(dim[a.source]));
  }
  return Representation(std::move(quiver), field, std::move(dim), std::move(matrices));
}

void require_compatible(const Representation& m, const Representation& n) {
  if (m.quiver_ptr() != n.quiver_ptr() && !(m.quiver() == n.quiver())) {
    throw ValidationError("representations live on different quivers");
  }
  if (!(m.field() == n.field())) {
    throw ValidationError("representations are over different fields (" + m.field().name() +
                          " vs " + n.field().name() + ")");
  }
}

GroupElement::GroupElement(Field field, DimVector dim, std::vector<Matrix> blocks)
    : field_(field), dim_(std::move(dim)), blocks_(std::move(blocks)) {
  if (blocks_.size() != dim_.size()) {
    throw ValidationError("group element needs one block per vertex");
  }
  for (std::size_t v = 0; v < blocks_.size(); ++v) {
    const std::size_t n = as_size(dim_[v]);
    if (blocks_[v].rows() != n || blocks_[v].cols() != n) {
      throw ValidationError("group element block at vertex " + std::to_string(v + 1) +
                            " must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    blocks_[v] = reduce_into(field_, blocks_[v]);
    auto inv = inverse(field_, blocks_[v]);
    if (!inv) {
      throw ValidationError("group element block at vertex " + std::to_string(v + 1) +
                            " is singular");
    }
    inverses_.push_back(std::move(*inv));
  }
}

GroupElement GroupElement::identity(Field field, const DimVector& dim) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < dim.size(); ++v) blocks.push_back(Matrix::identity(as_size(dim[v])));
  return GroupElement(field, dim, std::move(blocks));
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  if (!(g.field() == h.field()) || g.dim() != h.dim()) {
    throw ValidationError("group elements of different groups");
  }
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < g.dim().size(); ++v) {
    blocks.push_back(multiply(g.field(), g.block(v), h.block(v)));
  }
  return GroupElement(g.field(), g.dim(), std::move(blocks));
}

Matrix evaluate_path(const Representation& m, const Path& p) {
  if (!is_valid_path(m.quiver(), p)) throw ValidationError("path does not belong to this quiver");
  Matrix result = Matrix::identity(as_size(m.dim()[p.source]));
  for (auto index : p.arrows) result = multiply(m.field(), m.matrix(index), result);
  return result;
}

Representation direct_sum(const Representation& m, const Representation& n) {
  require_compatible(m, n);
  std::vector<Matrix> matrices;
  for (std::size_t a = 0; a < m.quiver().arrow_count(); ++a) {
    matrices.push_back(block_diagonal(m.matrix(a), n.matrix(a)));
  }
  return Representation(m.quiver_ptr(), m.field(), m.dim() + n.dim(), std::move(matrices));
}

Representation act(const GroupElement& g, const Representation& m) {
  if (!(g.field() == m.field())) throw ValidationError("group element over a different field");
  if (g.dim() != m.dim()) throw ValidationError("group element has the wrong dimension vector");
  std::vector<Matrix> matrices;
  for (std::size_t a = 0; a < m.quiver().arrow_count(); ++a) {
    const Arrow& arrow = m.quiver().arrow(a);
    matrices.push_back(multiply(m.field(), multiply(m.field(), g.block(arrow.target), m.matrix(a)),
                                g.inverse_block(arrow.source)));
  }
  return Representation(m.quiver_ptr(), m.field(), m.dim(), std::move(matrices));
}

namespace {

// Matrix of (f_i) ↦ (N_a f_i − f_j M_a). Columns: f_i row-major per vertex;
// rows: one a_N_j × a_M_i block per arrow, row-major.
struct HomExtSystem {
  Matrix map;
  std::vector<std::size_t> vertex_offsets;
  std::vector<std::size_t> arrow_offsets;
};

HomExtSystem build_system(const Representation& m, const Representation& n) {
  require_compatible(m, n);
  const Quiver& q = m.quiver();
  const Field& f = m.field();
  auto dm = [&](std::size_t v) { return as_size(m.dim()[v]); };
  auto dn = [&](std::size_t v) { return as_size(n.dim()[v]); };

  HomExtSystem sys;
  std::size_t cols = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    sys.vertex_offsets.push_back(cols);
    cols += dn(v) * dm(v);
  }
  std::size_t rows = 0;
  for (const auto& a : q.arrows()) {
    sys.arrow_offsets.push_back(rows);
    rows += dn(a.target) * dm(a.source);
  }
  sys.map = Matrix(rows, cols);

  for (std::size_t index = 0; index < q.arrow_count(); ++index) {
    const Arrow& a = q.arrow(index);
    const std::size_t i = a.source;
    const std::size_t j = a.target;
    const Matrix& ma = m.matrix(index);
    const Matrix& na = n.matrix(index);
    for (std::size_t r = 0; r < dn(j); ++r) {
      for (std::size_t c = 0; c < dm(i); ++c) {
        const std::size_t row = sys.arrow_offsets[index] + r * dm(i) + c;
        // + Σ_s N_a(r,s) f_i(s,c)
        for (std::size_t s = 0; s < dn(i); ++s) {
          const std::size_t col = sys.vertex_offsets[i] + s * dm(i) + c;
          sys.map(row, col) = f.add(sys.map(row, col), na(r, s));
        }
        // − Σ_t f_j(r,t) M_a(t,c)
        for (std::size_t t = 0; t < dm(j); ++t) {
          const std::size_t col = sys.vertex_offsets[j] + r * dm(j) + t;
          sys.map(row, col) = f.sub(sys.map(row, col), ma(t, c));
        }
      }
    }
  }
  return sys;
}

}  // namespace

HomSpace hom_space(const Representation& m, const Representation& n) {
  HomExtSystem sys = build_system(m, n);
  const Quiver& q = m.quiver();
  Matrix kernel = kernel_basis(m.field(), sys.map);
  HomSpace out;
  out.dimension = kernel.cols();
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    std::vector<Matrix> element;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      const std::size_t rows = as_size(n.dim()[v]);
      const std::size_t cols = as_size(m.dim()[v]);
      Matrix fv(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) fv(r, c) = kernel(sys.vertex_offsets[v] + r * cols + c, k);
      }
      element.push_back(std::move(fv));
    }
    out.basis.push_back(std::move(element));
  }
  return out;
}

ExtSpace ext_space(const Representation& m, const Representation& n) {
  HomExtSystem sys = build_system(m, n);
  const Quiver& q = m.quiver();
  ExtSpace out;
  out.source_dimension = sys.map.cols();
  out.target_dimension = sys.map.rows();

  // Rows of the transpose span the image; coordinates that are not pivots of
  // its echelon form index standard vectors spanning a complement.
  EchelonForm image = row_reduce(m.field(), transpose(sys.map));
  out.rank = image.rank();
  out.dimension = out.target_dimension - out.rank;
  std::vector<bool> is_pivot(out.target_dimension, false);
  for (auto c : image.pivot_columns) is_pivot[c] = true;

  for (std::size_t coord = 0; coord < out.target_dimension; ++coord) {
    if (is_pivot[coord]) continue;
    std::vector<Matrix> element;
    for (std::size_t index = 0; index < q.arrow_count(); ++index) {
      const Arrow& a = q.arrow(index);
      const std::size_t rows = as_size(n.dim()[a.target]);
      const std::size_t cols = as_size(m.dim()[a.source]);
      Matrix block(rows, cols);
      const std::size_t begin = sys.arrow_offsets[index];
      if (coord >= begin && coord < begin + rows * cols) {
        block((coord - begin) / cols, (coord - begin) % cols) = 1;
      }
      element.push_back(std::move(block));
    }
    out.complement_basis.push_back(std::move(element));
  }
  return out;
}

std::size_t hom_dimension(const Representation& m, const Representation& n) {
  HomExtSystem sys = build_system(m, n);
  return sys.map.cols() - rank(m.field(), sys.map);
}

std::size_t ext_dimension(const Representation& m, const Representation& n) {
  HomExtSystem sys = build_system(m, n);
  return sys.map.rows() - rank(m.field(), sys.map);
}

namespace {

Scalar random_entry(const Field& field, std::mt19937_64& rng, int bound) {
  if (field.is_prime()) return Scalar(static_cast<unsigned long>(rng() % field.characteristic()));
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  return Scalar(static_cast<long>(rng() % span) - bound);
}

Matrix random_matrix(const Field& field, std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                     int bound) {
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = random_entry(field, rng, bound);
  }
  return out;
}

}  // namespace

Representation random_representation(QuiverPtr quiver, const Field& field, const DimVector& dim,
                                     std::mt19937_64& rng, int bound) {
  require_length(*quiver, dim, "dimension vector");
  std::vector<Matrix> matrices;
  for (const auto& a : quiver->arrows()) {
    matrices.push_back(random_matrix(field, as_size(dim[a.target]), as_size(dim[a.source]), rng, bound));
  }
  return Representation(std::move(quiver), field, dim, std::move(matrices));
}

GroupElement random_group_element(const Field& field, const DimVector& dim, std::mt19937_64& rng,
                                  int bound) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < dim.size(); ++v) {
    const std::size_t n = as_size(dim[v]);
    Matrix g = random_matrix(field, n, n, rng, bound);
    while (Field::is_zero(determinant(field, g))) g = random_matrix(field, n, n, rng, bound);
    blocks.push_back(std::move(g));
  }
  return GroupElement(field, dim, std::move(blocks));
}

}  // namespace quivermod
