#include "medcorr/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "medcorr/spectral.hpp"

namespace medcorr {

OperatorMatrix bosonic_annihilation(int dim) {
  if (dim < 2) throw std::invalid_argument("bosonic_annihilation: dim must be >= 2");
  OperatorMatrix a = OperatorMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

std::pair<OperatorMatrix, OperatorMatrix> qubit_ladder() {
  OperatorMatrix plus = OperatorMatrix::Zero(2, 2);
  plus(1, 0) = 1.0;  // |1><0|
  return {plus, plus.adjoint()};
}

OperatorMatrix sigma_x() {
  OperatorMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  return sx;
}

OperatorMatrix identity(int dim) { return OperatorMatrix::Identity(dim, dim); }

OperatorMatrix displacement(Complex alpha, int dim) {
  OperatorMatrix a = bosonic_annihilation(dim);
  // alpha a† - alpha* a = i M with M Hermitian
  Matrix m = Complex(0, -1) * (alpha * a.adjoint() - std::conj(alpha) * a);
  return exp_i_scaled(m, 1.0);
}

OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  OperatorMatrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
  return out;
}

Vector kron(const Vector& lhs, const Vector& rhs) {
  Vector out(lhs.size() * rhs.size());
  for (Eigen::Index i = 0; i < lhs.size(); ++i)
    out.segment(i * rhs.size(), rhs.size()) = lhs[i] * rhs;
  return out;
}

OperatorMatrix tensor_product(std::span<const OperatorMatrix> ops) {
  if (ops.empty()) throw std::invalid_argument("tensor_product: empty factor list");
  OperatorMatrix out = ops[0];
  for (std::size_t k = 1; k < ops.size(); ++k) out = kron(out, ops[k]);
  return out;
}

Vector tensor_product(std::span<const Vector> vecs) {
  if (vecs.empty()) throw std::invalid_argument("tensor_product: empty factor list");
  Vector out = vecs[0];
  for (std::size_t k = 1; k < vecs.size(); ++k) out = kron(out, vecs[k]);
  return out;
}

OperatorMatrix embed(const SystemLayout& layout, const OperatorMatrix* op_a,
                     const OperatorMatrix* op_b, const OperatorMatrix* op_c) {
  auto pick = [](const OperatorMatrix* op, int dim) {
    if (!op) return OperatorMatrix(OperatorMatrix::Identity(dim, dim));
    if (op->rows() != dim || op->cols() != dim)
      throw std::invalid_argument("embed: factor operator dimension mismatch");
    return *op;
  };
  OperatorMatrix parts[3] = {pick(op_a, layout.dim_a), pick(op_b, layout.dim_b),
                             pick(op_c, layout.dim_c)};
  return tensor_product(std::span<const OperatorMatrix>(parts, 3));
}

StateVector basis_state(const SystemLayout& layout, std::array<int, 3> occ) {
  const int dims[3] = {layout.dim_a, layout.dim_b, layout.dim_c};
  for (int k = 0; k < 3; ++k)
    if (occ[k] < 0 || occ[k] >= dims[k])
      throw std::invalid_argument("basis_state: occupation out of range");
  StateVector psi{Vector::Zero(layout.total()), layout.dims()};
  psi.amps[layout.index_of(occ)] = 1.0;
  return psi;
}

StateVector max_entangled_state(int d_small, int d_large) {
  if (d_small < 1 || d_large < d_small)
    throw std::invalid_argument("max_entangled_state: need 1 <= d_small <= d_large");
  StateVector psi{Vector::Zero(Eigen::Index(d_large) * d_small), {d_large, d_small}};
  double amp = 1.0 / std::sqrt(double(d_small));
  for (int k = 0; k < d_small; ++k) psi.amps[k * d_small + k] = amp;
  return psi;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  const int nf = int(rho.dims.size());
  if (keep.empty() || int(keep.size()) >= nf)
    throw std::invalid_argument("partial_trace: keep must be a nonempty strict subset");
  std::vector<bool> kept(nf, false);
  int prev = -1;
  for (int f : keep) {
    if (f < 0 || f >= nf || f <= prev)
      throw std::invalid_argument("partial_trace: keep indices must be strictly increasing and in range");
    kept[f] = true;
    prev = f;
  }

  // Row-major strides over the factor list.
  std::vector<int> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * rho.dims[f + 1];

  std::vector<int> keep_dims, trace_dims, keep_stride, trace_stride;
  for (int f = 0; f < nf; ++f) {
    (kept[f] ? keep_dims : trace_dims).push_back(rho.dims[f]);
    (kept[f] ? keep_stride : trace_stride).push_back(stride[f]);
  }
  const int dk = product_of(keep_dims);
  const int dt = product_of(trace_dims);

  // Flat offset of each kept (resp. traced) multi-index into the composite index.
  auto offsets = [](const std::vector<int>& dims, const std::vector<int>& strides, int count) {
    std::vector<int> off(count, 0);
    std::vector<int> idx(dims.size(), 0);
    for (int n = 0; n < count; ++n) {
      int flat = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) flat += idx[k] * strides[k];
      off[n] = flat;
      for (int k = int(dims.size()) - 1; k >= 0; --k) {
        if (++idx[k] < dims[k]) break;
        idx[k] = 0;
      }
    }
    return off;
  };
  std::vector<int> keep_off = offsets(keep_dims, keep_stride, dk);
  std::vector<int> trace_off = offsets(trace_dims, trace_stride, dt);

  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += rho.mat(keep_off[i] + trace_off[t], keep_off[j] + trace_off[t]);
      out(i, j) = acc;
    }
  return {std::move(out), keep_dims};
}

DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<Subsystem> keep) {
  std::vector<int> idx;
  for (Subsystem s : keep) idx.push_back(int(s));
  return partial_trace(rho, idx);
}

OperatorMatrix partial_transpose(const DensityOperator& rho, int factor) {
  if (rho.dims.size() != 2)
    throw std::invalid_argument("partial_transpose: expects a two-factor state");
  if (factor != 0 && factor != 1)
    throw std::invalid_argument("partial_transpose: factor must be 0 or 1");
  const int d0 = rho.dims[0], d1 = rho.dims[1];
  Matrix out(rho.mat.rows(), rho.mat.cols());
  for (int i0 = 0; i0 < d0; ++i0)
    for (int i1 = 0; i1 < d1; ++i1)
      for (int j0 = 0; j0 < d0; ++j0)
        for (int j1 = 0; j1 < d1; ++j1) {
          int r = i0 * d1 + i1, c = j0 * d1 + j1;
          int rt = factor == 0 ? j0 * d1 + i1 : i0 * d1 + j1;
          int ct = factor == 0 ? i0 * d1 + j1 : j0 * d1 + i1;
          out(rt, ct) = rho.mat(r, c);
        }
  return out;
}

}  // namespace medcorr
