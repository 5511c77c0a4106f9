#pragma once

// The two explicit Heisenberg groups Γ(4,4) ⊂ Iso(R^{4,4}) and
// Γ(7,7) ⊂ Iso(R^{7,7}), written in a Witt frame for U_0 so that
//   Q = [[0,0,I_k],[0,Ĩ,0],[I_k,0,0]],  Ĩ = diag(1,1,−1,−1),
// together with the explicit commuting families S displayed alongside them.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "prhs/group.hpp"

namespace prhs {

struct ExampleGroup {
  std::string name;
  std::size_t k = 0;  // dim U_0
  Matrix signature_w;  // Ĩ
  ScalarProduct form;
  std::vector<Matrix> b;  // B_1, B_2
  std::vector<Matrix> c;  // C_1, C_2
  std::vector<Vector> translations;
  IsoGroup group;
  HeisenbergPresentation presentation;
  Matrix expected_c3;
  Vector expected_u3;
  std::vector<AffineLog> commuting_family;  // basis of the displayed S-family (x, y, z order)
};

namespace detail {

inline Matrix signature_w() { return Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}; }

inline Matrix witt_gram(std::size_t k, const Matrix& gw) {
  const std::size_t m = gw.rows(), n = 2 * k + m;
  Matrix q(n, n);
  q.set_block(0, k + m, Matrix::identity(k));
  q.set_block(k + m, 0, Matrix::identity(k));
  q.set_block(k, k, gw);
  return q;
}

/// [[0, −BᵀĨ, C], [0, 0, B], [0, 0, 0]].
inline Matrix block_log(std::size_t k, const Matrix& b, const Matrix& c, const Matrix& gw) {
  const std::size_t m = gw.rows(), n = 2 * k + m;
  Matrix a(n, n);
  a.set_block(0, k, -(b.transpose() * gw));
  a.set_block(0, k + m, c);
  a.set_block(k, k + m, b);
  return a;
}

/// Linear part [[S1, −S2ᵀĨ, S3], [0, S4, S2], [0, 0, −S1ᵀ]] with translation (x, y, z).
inline AffineLog family_element(std::size_t k, const Matrix& s1, const Matrix& s2, const Matrix& s3, const Matrix& s4,
                                const Vector& x, const Vector& y, const Vector& z) {
  const Matrix gw = signature_w();
  const std::size_t m = 4, n = 2 * k + m;
  Matrix l(n, n);
  l.set_block(0, 0, s1);
  l.set_block(0, k, -(s2.transpose() * gw));
  l.set_block(0, k + m, s3);
  l.set_block(k, k, s4);
  l.set_block(k, k + m, s2);
  l.set_block(k + m, k + m, -s1.transpose());
  Vector t = x;
  t.insert(t.end(), y.begin(), y.end());
  t.insert(t.end(), z.begin(), z.end());
  return {l, t};
}

/// One basis element per parameter, in the order x, y, z.
inline std::vector<AffineLog> family_basis(
    std::size_t nx, std::size_t ny, std::size_t nz,
    const std::function<AffineLog(const Vector&, const Vector&, const Vector&)>& element) {
  std::vector<AffineLog> out;
  const std::size_t total = nx + ny + nz;
  for (std::size_t p = 0; p < total; ++p) {
    const Vector e = unit_vector(total, p);
    out.push_back(element(Vector(e.begin(), e.begin() + nx), Vector(e.begin() + nx, e.begin() + nx + ny),
                          Vector(e.begin() + nx + ny, e.end())));
  }
  return out;
}

inline ExampleGroup assemble(std::string name, std::size_t k, std::vector<Matrix> b, std::vector<Matrix> c,
                             std::vector<Vector> translations, Matrix c3, Vector u3) {
  const Matrix gw = signature_w();
  ScalarProduct q(witt_gram(k, gw));
  std::vector<AffineIsometry> gens;
  const std::size_t n = q.dim();
  for (std::size_t i = 0; i < b.size(); ++i)
    gens.push_back({Matrix::identity(n) + block_log(k, b[i], c[i], gw), translations[i]});
  IsoGroup group(q, gens);
  HeisenbergPresentation pres = heisenberg_presentation(group);
  return ExampleGroup{std::move(name), k, gw, q, std::move(b), std::move(c), std::move(translations),
                      std::move(group), std::move(pres), std::move(c3), std::move(u3), {}};
}

}  // namespace detail

inline ExampleGroup gamma44() {
  const Matrix b1{{-1, 0}, {0, -1}, {0, -1}, {-1, 0}};
  const Matrix b2{{0, -1}, {1, 0}, {-1, 0}, {0, 1}};
  const Vector w1 = int_vector({1, 0, 0, 1});
  const Vector w2 = int_vector({0, -1, 1, 0});
  auto embed_w = [](const Vector& w) {
    Vector v = zero_vector(8);
    for (std::size_t i = 0; i < 4; ++i) v[2 + i] = w[i];
    return v;
  };
  auto ex = detail::assemble("gamma44", 2, {b1, b2}, {Matrix(2, 2), Matrix(2, 2)}, {embed_w(w1), embed_w(w2)},
                             Matrix{{0, -4}, {4, 0}}, int_vector({0, -4, 0, 0, 0, 0, 0, 0}));
  ex.commuting_family = detail::family_basis(2, 4, 2, [](const Vector& x, const Vector& y, const Vector& z) {
    Matrix s1(2, 2), s2(4, 2), s3(4, 4);
    s1(0, 0) = z[0], s1(0, 1) = z[1], s1(1, 0) = z[1], s1(1, 1) = -z[0];
    s2(0, 0) = -y[0], s2(0, 1) = y[2] - y[1];
    s2(1, 0) = -y[1], s2(1, 1) = y[0] + y[3];
    s2(2, 0) = -y[2];
    s2(3, 0) = -y[3];
    s3(0, 2) = -z[1], s3(0, 3) = -z[0];
    s3(1, 2) = z[0], s3(1, 3) = -z[1];
    s3(2, 0) = -z[1], s3(2, 1) = z[0];
    s3(3, 0) = -z[0], s3(3, 1) = -z[1];
    // S3 sits on the W diagonal block for this family.
    return detail::family_element(2, s1, s2, Matrix(2, 2), s3, x, y, z);
  });
  return ex;
}

inline ExampleGroup gamma77() {
  Matrix b1(4, 5), b2(4, 5), c1(5, 5), c2(5, 5);
  b1(0, 0) = -1, b1(1, 1) = -1, b1(2, 1) = -1, b1(3, 0) = -1;
  b2(0, 1) = -1, b2(1, 0) = 1, b2(2, 0) = -1, b2(3, 1) = 1;
  c1(2, 4) = -1, c1(4, 2) = 1;
  c2(3, 4) = -1, c2(4, 3) = 1;
  Vector t1 = zero_vector(14), t2 = zero_vector(14);
  t1[9 + 3] = -1;  // u_1* = (0,0,0,−1,0)
  t2[9 + 2] = 1;   // u_2* = (0,0,1,0,0)
  Matrix c3(5, 5);
  c3(0, 1) = -4, c3(1, 0) = 4;
  Vector u3 = zero_vector(14);
  u3[4] = 2;
  auto ex = detail::assemble("gamma77", 5, {b1, b2}, {c1, c2}, {t1, t2}, c3, u3);
  ex.commuting_family = detail::family_basis(5, 4, 5, [](const Vector& x, const Vector& y, const Vector& z) {
    Matrix s1(5, 5), s2(4, 5), s3(5, 5);
    s1(0, 4) = -2 * z[1];
    s1(1, 4) = 2 * z[0];
    s2(0, 2) = -z[1], s2(0, 3) = z[0];
    s2(1, 2) = z[0], s2(1, 3) = z[1];
    s2(2, 2) = -z[0], s2(2, 3) = z[1];
    s2(3, 2) = z[1], s2(3, 3) = z[0];
    s3(0, 2) = -y[1] - y[2], s3(0, 3) = y[3] - y[0];
    s3(1, 2) = y[0] + y[3], s3(1, 3) = y[2] - y[1];
    s3(2, 0) = y[1] + y[2], s3(2, 1) = -y[0] - y[3], s3(2, 3) = z[4], s3(2, 4) = -z[3];
    s3(3, 0) = y[0] - y[3], s3(3, 1) = y[1] - y[2], s3(3, 2) = -z[4], s3(3, 4) = z[2];
    s3(4, 2) = z[3], s3(4, 3) = -z[2];
    return detail::family_element(5, s1, s2, s3, Matrix(4, 4), x, y, z);
  });
  return ex;
}

inline const std::vector<std::string_view>& example_names() {
  static const std::vector<std::string_view> names{"gamma44", "gamma77"};
  return names;
}

inline ExampleGroup build_example(std::string_view name) {
  if (name == "gamma44") return gamma44();
  if (name == "gamma77") return gamma77();
  throw InputError("unknown example '" + std::string(name) + "' (expected gamma44 or gamma77)");
}

}  // namespace prhs
