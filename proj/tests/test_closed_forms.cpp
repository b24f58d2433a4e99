// Small cases with answers known in closed form, one per behaviour.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "popuc/cmv.hpp"
#include "popuc/harness.hpp"
#include "popuc/rank_one.hpp"
#include "support.hpp"

using namespace popuc;

namespace {

constexpr double kPi = kTwoPi / 2.0;
const Complex I(0.0, 1.0);

CirclePoint at(double angle) { return CirclePoint::polar(angle); }
CirclePoint cp(Complex z) { return CirclePoint(z); }

double poly_error(const Polynomial& p, std::vector<Complex> expected) {
  return coefficient_distance(p, Polynomial(std::move(expected)));
}

double set_error(const CyclicSet& s, std::vector<CirclePoint> expected) {
  const CyclicSet e = cyclic_order(expected);
  if (e.size() != s.size()) return 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, distance(s[i], e[i]));
  return worst;
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("circle geometry") {
  const OpenArc quarter(cp(1.0), cp(I));
  CHECK(arc_contains(quarter, at(kPi / 4)));
  CHECK_FALSE(arc_contains(quarter, cp(-1.0)));
  CHECK(arc_contains(OpenArc(cp(I), cp(1.0)), cp(-1.0)));

  const CyclicSet s = cyclic_order(std::vector<CirclePoint>{cp(-1.0), cp(1.0), cp(I)});
  CHECK(s[0].value() == Complex(1.0));
  CHECK(s[1].value() == I);
  CHECK(s[2].value() == Complex(-1.0));
  CHECK(cyclic_order(std::vector<CirclePoint>{at(0.1)}).size() == 1);
  const CyclicSet eps = cyclic_order(std::vector<CirclePoint>{cp(1.0), at(0.01), at(-0.01)});
  CHECK(eps[1].arg() == doctest::Approx(0.01));
  CHECK(eps[2].arg() == doctest::Approx(kTwoPi - 0.01));

  const auto pair = [](std::vector<CirclePoint> a, std::vector<CirclePoint> b) {
    return strictly_interlace(cyclic_order(a), cyclic_order(b));
  };
  CHECK(pair({cp(1.0), cp(-1.0)}, {cp(I), cp(-I)}).interlace);
  const InterlaceVerdict crowd = pair({cp(1.0), cp(I)}, {at(kPi / 8), at(kPi / 4)});
  CHECK_FALSE(crowd.interlace);
  REQUIRE(crowd.witness_arc.has_value());
  CHECK(crowd.witness_count == 0);
  CHECK(distance(crowd.witness_arc->start(), cp(I)) < 1e-15);
  CHECK(distance(crowd.witness_arc->end(), cp(1.0)) < 1e-15);
  CHECK(pair({at(0), at(2 * kPi / 3), at(4 * kPi / 3)}, {at(kPi / 3), at(kPi), at(5 * kPi / 3)}).interlace);
}

TEST_CASE("orthogonal and paraorthogonal polynomials") {
  const Complex a0(0.2, -0.7);
  CHECK(poly_error(phi(VerblunskyWord{a0}, 1), {-std::conj(a0), 1.0}) == 0.0);
  CHECK(poly_error(phi(VerblunskyWord{0.0, 0.0, 0.0}, 3), {0.0, 0.0, 0.0, 1.0}) == 0.0);
  CHECK(poly_error(phi(VerblunskyWord{0.5, 0.0}, 2), {0.0, -0.5, 1.0}) < 1e-16);
  CHECK(poly_error(star(Polynomial({-std::conj(a0), 1.0}), 1), {1.0, -a0}) == 0.0);
  for (std::size_t n = 0; n < 6; ++n) {
    std::vector<Complex> zn(n + 1, 0.0);
    zn[n] = 1.0;
    CHECK(poly_error(star(Polynomial(zn), n), {1.0}) == 0.0);
  }
  CHECK(poly_error(psi(VerblunskyWord{0.0, 0.0}, 2), {0.0, 0.0, 1.0}) == 0.0);
  CHECK(poly_error(psi(VerblunskyWord{0.5}, 1), {0.5, 1.0}) == 0.0);

  const CirclePoint beta = at(1.1);
  CHECK(poly_error(popuc_first(VerblunskyWord{}, beta, 1), {-beta.conj().value(), 1.0}) == 0.0);
  CHECK(poly_error(popuc_second(VerblunskyWord{0.0}, cp(1.0), 2), {-1.0, 0.0, 1.0}) == 0.0);
  CHECK(poly_error(popuc_second(VerblunskyWord{0.5}, cp(1.0), 2), {-1.0, 0.0, 1.0}) < 1e-16);
  CHECK(coefficient_distance(popuc_second(VerblunskyWord{0.3}, cp(I), 2),
                             popuc_first(VerblunskyWord{-0.3}, cp(I), 2)) == 0.0);

  const Polynomial z2m1({-1.0, 0.0, 1.0});
  CHECK(eval(z2m1, I) == Complex(-2.0));
  CHECK(std::abs(eval(Polynomial({-beta.conj().value(), 1.0}), beta.conj().value())) == 0.0);
}

TEST_CASE("CMV building blocks") {
  CHECK(max_abs(theta(0.0).entries - mat2(0.0, 1.0, 1.0, 0.0)) == 0.0);
  CHECK(max_abs(theta(1.0).entries - mat2(1.0, 0.0, 0.0, -1.0)) == 0.0);
  const double r3 = std::sqrt(3.0) / 2.0;
  CHECK(max_abs(theta(0.5).entries - mat2(0.5, r3, r3, -0.5)) < 1e-16);

  const CirclePoint beta = at(0.4);
  const FiniteCMV one = build(VerblunskyWord{}, beta);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one.dense().matrix()(0, 0) - beta.conj().value()) < 1e-16);
  CHECK(poly_error(char_poly(one), {-beta.conj().value(), 1.0}) < 1e-15);

  CHECK(poly_error(char_poly(build(VerblunskyWord{0.0}, cp(1.0))), {-1.0, 0.0, 1.0}) < 1e-15);
  const FiniteCMV half = build(VerblunskyWord{0.5}, cp(1.0));
  CHECK(poly_error(char_poly(half), {-1.0, 0.0, 1.0}) < 1e-15);
  CHECK(set_error(cmv_zeros(half), {cp(1.0), cp(-1.0)}) < 1e-14);

  const FiniteCMV flipped = build_m_tilde(VerblunskyWord{}, cp(1.0));
  CHECK(std::abs(flipped.dense().matrix()(0, 0) + 1.0) < 1e-16);
  const FiniteCMV rot = build_m_tilde(VerblunskyWord{0.0}, cp(1.0));
  CHECK(max_abs(rot.dense().matrix() - mat2(0.0, 1.0, -1.0, 0.0)) < 1e-16);
  CHECK(set_error(cmv_zeros(rot), {cp(I), cp(-I)}) < 1e-14);
}

TEST_CASE("rank-one completion and splitting") {
  for (double t : {0.0, 1.0, 2.5}) CHECK(distance(rank_one_completion(0.0, at(t)), at(-t)) < 1e-15);
  CHECK(distance(rank_one_completion(0.5, cp(1.0)), cp(1.0)) < 1e-15);
  Block d = theta(0.5).entries - Block::Identity();
  CHECK(std::abs(d.determinant()) < 1e-15);

  const Complex alpha(0.3, 0.4);
  const CirclePoint b = at(kPi / 3);
  const CirclePoint x = rank_one_completion(alpha, b);
  Block diff = theta(alpha).entries;
  diff(0, 0) -= b.value();
  diff(1, 1) -= x.value();
  CHECK(std::abs(d.determinant()) < 1e-15);
  CHECK(singular_values(diff)(1) < 1e-15);

  // Zero word with unit boundaries: the split-off value is the common zero 1.
  for (std::size_t n = 1; n <= 6; ++n) {
    const SplitResult s = split(build(VerblunskyWord::constant(0.0, n), cp(1.0)), cp(1.0));
    CHECK(distance(s.decoupled, cp(1.0)) < 1e-15);
  }

  // A generic step at n = 4.
  const VerblunskyWord w{Complex(0.1, 0.2), Complex(-0.4, 0.1), Complex(0.0, 0.5), Complex(0.3, -0.2)};
  const FiniteCMV c5 = build(w, at(-1.1));
  const SplitResult s = split(c5, at(0.7));
  Matrix expected = Matrix::Zero(5, 5);
  expected.topLeftCorner(4, 4) = build(w.prefix(3), at(0.7)).dense().matrix();
  expected(4, 4) = s.decoupled.value();
  CHECK(max_abs(s.perturbed.matrix() - expected) < 1e-14);
  const Eigen::VectorXd sv = singular_values(s.perturbed.matrix() - c5.dense().matrix());
  CHECK(sv(0) > 1e-3);
  CHECK(sv(1) < 1e-13);
  CHECK(distance(s.decoupled, decoupling_value(Complex(0.3, -0.2), at(0.7), at(-1.1))) < 1e-14);
}

TEST_CASE("rank-one perturbations of small unitaries") {
  const UnitaryMatrix swap(mat2(0.0, 1.0, 1.0, 0.0));
  CHECK(max_abs(perturb(RankOnePair(swap, basis_vector(2, 0), cp(1.0))).matrix() - swap.matrix()) == 0.0);
  const UnitaryMatrix v = perturb(RankOnePair(swap, basis_vector(2, 0), cp(-1.0)));
  CHECK(max_abs(v.matrix() - mat2(0.0, 1.0, -1.0, 0.0)) < 1e-16);
  // Spectra interlace: {1, -1} against {i, -i}.
  const CyclicSet before = unitary_eigs(swap).cyclic_set();
  const CyclicSet after = unitary_eigs(v).cyclic_set();
  CHECK(set_error(before, {cp(1.0), cp(-1.0)}) < 1e-14);
  CHECK(set_error(after, {cp(I), cp(-I)}) < 1e-14);
  CHECK(strictly_interlace(before, after).interlace);

  Matrix cube = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) cube(k, k) = std::polar(1.0, kTwoPi * k / 3.0);
  const Vector flat = Vector::Ones(3) / std::sqrt(3.0);
  const UnitaryMatrix vc = perturb(RankOnePair(UnitaryMatrix(cube), flat, cp(I)));
  CHECK(unitarity_defect(vc.matrix()) < 1e-15);
  CHECK((vc.matrix() * flat - I * cube * flat).norm() < 1e-15);

  const RankOneData rd = recover(build(VerblunskyWord{0.0}, cp(1.0)).dense(), build_m_tilde(VerblunskyWord{0.0}, cp(1.0)).dense());
  CHECK(distance(rd.multiplier, cp(-1.0)) < 1e-14);
  CHECK(std::abs(rd.direction(0) - 1.0) < 1e-14);
  CHECK(std::abs(rd.direction(1)) < 1e-14);
  CHECK_THROWS_AS(recover(swap, swap), Error);

  std::vector<CirclePoint> angles{at(0.3), at(2.0), at(4.0)};
  Matrix diag = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) diag(k, k) = angles[static_cast<std::size_t>(k)].value();
  CHECK(set_error(unitary_eigs(UnitaryMatrix(diag)).cyclic_set(), angles) < 1e-15);
  CHECK(set_error(unitary_eigs(build(VerblunskyWord{0.5}, cp(1.0)).dense()).cyclic_set(), {cp(1.0), cp(-1.0)}) <
        1e-14);
}

TEST_CASE("spectral measures and their functions") {
  const SpectralMeasure two = spectral_measure(UnitaryMatrix(mat2(0.0, 1.0, 1.0, 0.0)), basis_vector(2, 0));
  REQUIRE(two.size() == 2);
  for (const Atom& a : two.atoms()) CHECK(a.weight == doctest::Approx(0.5).epsilon(1e-14));

  const SpectralMeasure eigen = spectral_measure(UnitaryMatrix(mat2(1.0, 0.0, 0.0, I)), basis_vector(2, 0));
  REQUIRE(eigen.size() == 1);
  CHECK(distance(eigen.atoms()[0].point, cp(1.0)) < 1e-15);
  CHECK(eigen.atoms()[0].weight == doctest::Approx(1.0));

  const CirclePoint beta = at(2.2);
  const SpectralMeasure single({{beta, 1.0}});
  for (const Complex z : disk_grid(15, 0.9)) {
    CHECK(std::abs(caratheodory_F(two, z) - (1.0 + z * z) / (1.0 - z * z)) < 1e-13);
    CHECK(std::abs(caratheodory_F(single, z) - (beta.value() + z) / (beta.value() - z)) < 1e-13);
  }
  CHECK(std::abs(beta.value() * schur_f_boundary(single, beta) - 1.0) < 1e-6);

  // Equal weights on the 64th roots of unity: F = (1 + z^64)/(1 - z^64), so f is
  // negligible on |z| <= 1/2, as for normalized arc length.
  std::vector<Atom> atoms;
  for (int k = 0; k < 64; ++k) atoms.push_back({at(kTwoPi * k / 64.0), 1.0 / 64.0});
  const SpectralMeasure uniform(atoms);
  for (const Complex z : disk_grid(20, 0.5)) CHECK(std::abs(schur_f(uniform, z)) < 1e-15);
}

TEST_CASE("Schur shift and monotonicity, small cases") {
  std::mt19937_64 rng(77);
  const FiniteCMV c5 = build(testing::random_word(rng, 4), testing::random_circle(rng));
  const Vector phi = random_unit_vector(rng, 5);
  CHECK(schur_shift_check(RankOnePair(c5.dense(), phi, cp(1.0)), disk_grid(50, 0.7)) < 1e-14);
  CHECK(schur_shift_check(RankOnePair(c5.dense(), phi, testing::random_circle(rng)), disk_grid(50, 0.7)) <= 1e-8);

  const SpectralMeasure two({{cp(1.0), 0.5}, {cp(-1.0), 0.5}});
  CHECK(arg_monotone_check(two, OpenArc(at(0.1), at(kPi - 0.1)), 64).ok());

  const FiniteCMV c6 = build(testing::random_word(rng, 5), testing::random_circle(rng));
  const SpectralMeasure m6 = spectral_measure(c6.dense(), basis_vector(6, 0));
  const CyclicSet ev = unitary_eigs(c6.dense()).cyclic_set();
  std::size_t widest = 0;
  for (std::size_t j = 1; j < ev.size(); ++j) {
    if (ev.gap(j).length() > ev.gap(widest).length()) widest = j;
  }
  const OpenArc g = ev.gap(widest);
  const double trim = 0.1 * g.length();
  const OpenArc shrunk(at(g.start().arg() + trim), at(g.start().arg() + g.length() - trim));
  CHECK(arg_monotone_check(m6, shrunk, 64).ok());
}

TEST_CASE("theorem checks on explicit families") {
  const VerblunskyWord zero = VerblunskyWord::constant(0.0, 30);
  CHECK(check_thm_1_2(zero, cp(1.0), 2).passed());
  CHECK(check_thm_1_3(zero, 2, cp(1.0), cp(-1.0)).passed());
  CHECK(check_thm_1_3(zero, 3, cp(1.0), cp(-1.0)).passed());

  const double t = 0.3;
  const auto beta = [&](std::size_t j) { return at(-t * static_cast<double>(j)); };
  const TheoremReport ii = check_thm_1_4(zero, beta(4), beta(5), 4, DecouplingRule::Constructed, at(t));
  CHECK(ii.passed());
  CHECK(ii.tallies.count("case_ii") == 1);
  const TheoremReport i = check_thm_1_4(zero, cp(1.0), at(0.01), 4);
  CHECK(i.passed());
  CHECK(i.tallies.count("case_i") == 1);

  for (std::size_t n = 2; n < 10; ++n)
    for (std::size_t m = n + 1; m <= 12; ++m) CHECK(check_thm_3_4(zero, cp(1.0), cp(1.0), n, m).passed());
  CHECK(check_thm_3_4(zero, beta(3), beta(7), 3, 7).passed());

  // Constant coefficient 1/2, empirically estimated gap, n <= 25, eight boundaries.
  const VerblunskyWord geronimus = VerblunskyWord::constant(0.5, 400);
  const auto gap = estimate_support_gap(geronimus);
  REQUIRE(gap.has_value());
  std::vector<CirclePoint> betas;
  for (int k = 0; k < 8; ++k) betas.push_back(at(0.2 + kTwoPi * k / 8.0));
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= 25; ++n) ns.push_back(n);
  CHECK(check_thm_1_1(geronimus, {*gap}, betas, ns).passed());
  CHECK(check_thm_1_1(zero, {}, betas, {1, 2, 3}).passed());
  // A sliver between two zeros of z^8 - 1 holds none of them.
  const TheoremReport sliver = check_thm_1_1(zero, {OpenArc(at(0.1), at(0.2))}, {cp(1.0)}, {8});
  CHECK(sliver.passed());
}

TEST_CASE("boundary sequences with a prescribed zero") {
  std::vector<Complex> a{Complex(0.3, 0.0), Complex(0.0, -0.2), Complex(0.1, 0.1)};
  while (a.size() < 11) a.push_back(0.5 * a[a.size() - 3] * Complex(0.0, 1.0));
  const VerblunskyWord w(a);
  const CirclePoint lambda = at(0.9);
  const auto betas = corollary_beta_sequence(lambda, w, 12);
  CHECK(distance(betas[0], lambda.conj()) < 1e-16);
  for (double r : common_zero_residuals(lambda, w, betas)) CHECK(r <= 1e-9);
}
