#include "hypokit/random_systems.hpp"

#include <array>
#include <cmath>

#include "hypokit/errors.hpp"

namespace hypokit {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CMatrix random_unitary(std::mt19937_64& rng, int n, bool complex_entries) {
  const CMatrix G = random_gaussian(rng, n, n, complex_entries);
  Eigen::HouseholderQR<CMatrix> qr(G);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

struct Shape {
  int n;
  int rank;
};

// Generic index ceil(n/rank) - 1.
constexpr std::array<Shape, 12> kShapes{{
    {2, 2}, {2, 1}, {3, 1}, {4, 1}, {4, 2}, {5, 2}, {3, 3}, {6, 2}, {3, 2}, {5, 3}, {6, 3}, {4, 4},
}};

// Samples whose Kalman matrix at the generic index is this close to rank
// deficient are redrawn, keeping the corpus away from the rank tolerance.
constexpr double kMinKalmanRatio = 1e-3;

double kalman_ratio(const CMatrix& B, int rank, int levels) {
  const CMatrix BH = (B + B.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(BH);
  const Eigen::Index n = B.rows();
  const CMatrix root = es.eigenvectors().rightCols(rank) *
                       es.eigenvalues().tail(rank).cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                       es.eigenvectors().rightCols(rank).adjoint();
  CMatrix K(n * (levels + 1), n);
  CMatrix P = CMatrix::Identity(n, n);
  for (int j = 0; j <= levels; ++j) {
    K.middleRows(j * n, n) = root * P;
    P = P * B;
  }
  const RVector s = singular_values(K);
  return s(n - 1) / s(0);
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state), splitmix64(state)};
  return std::mt19937_64(seq);
}

CMatrix random_gaussian(std::mt19937_64& rng, int rows, int cols, bool complex_entries) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      const double re = normal(rng);
      const double im = complex_entries ? normal(rng) : 0.0;
      A(i, k) = Complex(re, im);
    }
  }
  return A;
}

CMatrix random_semidissipative(std::mt19937_64& rng, int n, int rank, bool complex_entries) {
  if (n <= 0 || rank < 0 || rank > n) throw Error(ErrorCode::InvalidArgument, "need 0 <= rank <= n, n > 0");
  std::uniform_real_distribution<double> eig(0.5, 2.0);
  const CMatrix V = random_unitary(rng, n, complex_entries).leftCols(rank);
  RVector d(rank);
  for (int i = 0; i < rank; ++i) d(i) = eig(rng);
  const CMatrix BH = V * d.asDiagonal() * V.adjoint();
  const CMatrix G = random_gaussian(rng, n, n, complex_entries);
  return BH + (G - G.adjoint()) * 0.5;
}

std::vector<CorpusEntry> index_corpus(std::uint64_t seed, int count) {
  std::vector<CorpusEntry> out;
  out.reserve(count);
  for (int id = 0; id < count; ++id) {
    const Shape shape = kShapes[id % kShapes.size()];
    const int expected = (shape.n + shape.rank - 1) / shape.rank - 1;
    std::mt19937_64 rng = make_stream(seed, static_cast<std::uint64_t>(id));
    CMatrix B;
    do {
      B = random_semidissipative(rng, shape.n, shape.rank, id % 2 == 1);
    } while (kalman_ratio(B, shape.rank, expected) < kMinKalmanRatio);
    out.push_back({id, expected, B});
  }
  return out;
}

CMatrix random_stable_semisimple(std::mt19937_64& rng, int n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha = 0.2 + 0.8 * unit(rng);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  int i = 0;
  // Dominant block: simple real, complex pair, or a repeated semi-simple value.
  const double kind = unit(rng);
  if (n >= 2 && kind < 0.4) {
    const double beta = 0.3 + 2.0 * unit(rng);
    D(0, 0) = D(1, 1) = alpha;
    D(0, 1) = beta;
    D(1, 0) = -beta;
    i = 2;
  } else if (n >= 3 && kind < 0.6) {
    D(0, 0) = D(1, 1) = alpha;
    i = 2;
  } else {
    D(0, 0) = alpha;
    i = 1;
  }
  while (i < n) {
    const double a = alpha + 0.3 + 1.7 * unit(rng);
    if (i + 1 < n && unit(rng) < 0.5) {
      const double b = 0.2 + 2.0 * unit(rng);
      D(i, i) = D(i + 1, i + 1) = a;
      D(i, i + 1) = b;
      D(i + 1, i) = -b;
      i += 2;
    } else {
      D(i, i) = a;
      ++i;
    }
  }
  // S with singular values in [0.5, 2].
  const CMatrix U1 = random_unitary(rng, n, false);
  const CMatrix U2 = random_unitary(rng, n, false);
  RVector s(n);
  for (int k = 0; k < n; ++k) s(k) = 0.5 + 1.5 * unit(rng);
  const CMatrix S = U1 * s.asDiagonal() * U2;
  const CMatrix Sinv = U2.adjoint() * s.cwiseInverse().asDiagonal() * U1.adjoint();
  return S * D.cast<Complex>() * Sinv;
}

}  // namespace hypokit
