#include "fsistab/grid.hpp"

namespace fsistab {

namespace {

using Trip = Eigen::Triplet<double>;

SpMat from_triplets(int rows, int cols, std::vector<Trip>& t) {
  SpMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

// kron(I_m, A): block-diagonal repetition of A along the x direction.
SpMat kron_ia(int m, const SpMat& A) {
  std::vector<Trip> t;
  t.reserve(static_cast<size_t>(A.nonZeros()) * m);
  int n = A.rows();
  for (int b = 0; b < m; ++b)
    for (int k = 0; k < A.outerSize(); ++k)
      for (SpMat::InnerIterator it(A, k); it; ++it)
        t.emplace_back(b * n + it.row(), b * n + it.col(), it.value());
  return from_triplets(m * n, m * n, t);
}

// kron(A, I_m): A acting along the y direction of an x-fastest layout.
SpMat kron_ai(const SpMat& A, int m) {
  std::vector<Trip> t;
  t.reserve(static_cast<size_t>(A.nonZeros()) * m);
  int n = A.rows();
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it)
      for (int b = 0; b < m; ++b)
        t.emplace_back(it.row() * m + b, it.col() * m + b, it.value());
  return from_triplets(n * m, n * m, t);
}

}  // namespace

SbpPair sbp_pair(int n, double h) {
  Vec H = Vec::Constant(n + 1, h);
  H(0) = H(n) = h / 4.0;
  H(1) = H(n - 1) = 5.0 * h / 4.0;

  std::vector<Trip> tp;
  tp.emplace_back(0, 0, -3.0 / h);
  tp.emplace_back(0, 1, 5.0 / h);
  tp.emplace_back(0, 2, -2.0 / h);
  tp.emplace_back(1, 0, -0.2 / h);
  tp.emplace_back(1, 1, -1.0 / h);
  tp.emplace_back(1, 2, 1.6 / h);
  tp.emplace_back(1, 3, -0.4 / h);
  for (int i = 2; i < n - 1; ++i) {
    tp.emplace_back(i, i, -1.5 / h);
    tp.emplace_back(i, i + 1, 2.0 / h);
    tp.emplace_back(i, i + 2, -0.5 / h);
  }
  tp.emplace_back(n - 1, n - 1, -1.0 / h);
  tp.emplace_back(n - 1, n, 1.0 / h);
  tp.emplace_back(n, n - 1, -1.0 / h);
  tp.emplace_back(n, n, 1.0 / h);
  SpMat Dp = from_triplets(n + 1, n + 1, tp);

  // mirror: Dm(i,j) = -Dp(n-i, n-j)
  std::vector<Trip> tm;
  for (int k = 0; k < Dp.outerSize(); ++k)
    for (SpMat::InnerIterator it(Dp, k); it; ++it)
      tm.emplace_back(n - it.row(), n - it.col(), -it.value());
  SpMat Dm = from_triplets(n + 1, n + 1, tm);

  return {Dp, Dm, H};
}

SpMat sbp_central(int n, double h) {
  std::vector<Trip> t;
  t.emplace_back(0, 0, -1.0 / h);
  t.emplace_back(0, 1, 1.0 / h);
  for (int i = 1; i < n; ++i) {
    t.emplace_back(i, i - 1, -0.5 / h);
    t.emplace_back(i, i + 1, 0.5 / h);
  }
  t.emplace_back(n, n - 1, -1.0 / h);
  t.emplace_back(n, n, 1.0 / h);
  return from_triplets(n + 1, n + 1, t);
}

Geometry::Geometry(double L1_, double L2_, int nx_, int ny_)
    : L1(L1_), L2(L2_), nx(nx_), ny(ny_) {
  if (!(L1 > 0.0) || !(L2 > 0.0))
    throw std::invalid_argument("geometry: L1 and L2 must be positive");
  if (nx < 8 || ny < 8)
    throw std::invalid_argument("geometry: nx and ny must be at least 8");
  hx = L1 / nx;
  hy = L2 / ny;
}

Grid::Grid(const Geometry& g) : geo(g) {
  int nx = g.nx, ny = g.ny;
  N = (nx + 1) * (ny + 1);
  nb = nx + 1;

  SbpPair px = sbp_pair(nx, g.hx);
  SbpPair py = sbp_pair(ny, g.hy);
  Hx = px.H;
  Hy = py.H;
  Dxp = kron_ia(ny + 1, px.Dp);
  Dxm = kron_ia(ny + 1, px.Dm);
  Dyp = kron_ai(py.Dp, nx + 1);
  Dym = kron_ai(py.Dm, nx + 1);

  Wo.resize(N);
  x.resize(N);
  y.resize(N);
  interior = Vec::Ones(N);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      int k = i + (nx + 1) * j;
      Wo(k) = Hy(j) * Hx(i);
      x(k) = i * g.hx;
      y(k) = -g.L2 + j * g.hy;
      if (i == 0 || i == nx || j == 0 || j == ny) interior(k) = 0.0;
    }
  for (int j = 0; j <= ny; ++j) {
    left.push_back(0 + (nx + 1) * j);
    right.push_back(nx + (nx + 1) * j);
  }
  for (int i = 0; i <= nx; ++i) {
    bot.push_back(i);
    top.push_back(i + (nx + 1) * ny);
  }

  Wb = Hx;
  Wq = Vec::Constant(nb, g.hx);
  Wq(0) = Wq(nb - 1) = g.hx / 2.0;

  double h2 = g.hx * g.hx;
  std::vector<Trip> t2;
  t2.emplace_back(0, 0, -2.0 / h2);
  t2.emplace_back(0, 1, 2.0 / h2);
  for (int k = 1; k < nb - 1; ++k) {
    t2.emplace_back(k, k - 1, 1.0 / h2);
    t2.emplace_back(k, k, -2.0 / h2);
    t2.emplace_back(k, k + 1, 1.0 / h2);
  }
  t2.emplace_back(nb - 1, nb - 2, 2.0 / h2);
  t2.emplace_back(nb - 1, nb - 1, -2.0 / h2);
  D2 = from_triplets(nb, nb, t2);
  Kb = SpMat(D2.transpose()) * Wq.asDiagonal() * D2;
  Kb.makeCompressed();
}

double Grid::flux_x(const Vec& f, const Vec& g) const {
  double s = 0.0;
  for (int j = 0; j <= geo.ny; ++j)
    s += Hy(j) * (f(right[j]) * g(right[j]) - f(left[j]) * g(left[j]));
  return s;
}

double Grid::flux_y(const Vec& f, const Vec& g) const {
  double s = 0.0;
  for (int i = 0; i <= geo.nx; ++i)
    s += Hx(i) * (f(top[i]) * g(top[i]) - f(bot[i]) * g(bot[i]));
  return s;
}

}  // namespace fsistab
