#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gisin/errors.hpp"
#include "gisin/states.hpp"
#include "support.hpp"

using namespace gisin;

namespace {

double min_pt_eigenvalue(const Matrix& rho, const Dims& dims) {
  const std::size_t b_only[] = {1};
  return hermitian_eigenvalues(partial_transpose(rho, dims, b_only)).front();
}

// Realignment R[(i,i'),(j,j')] = rho[(i,j),(i',j')] for a d x d state.
Matrix realign(const Matrix& rho, std::size_t d) {
  Matrix r(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t ip = 0; ip < d; ++ip)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t jp = 0; jp < d; ++jp) r(i * d + ip, j * d + jp) = rho(i * d + j, ip * d + jp);
  return r;
}

double trace_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : hermitian_eigenvalues(m.adjoint() * m)) s += std::sqrt(std::max(v, 0.0));
  return s;
}

} // namespace

TEST_CASE("named pure states") {
  const double h = 1.0 / std::sqrt(2.0);

  SUBCASE("bell") {
    const auto psi = bell_state();
    CHECK(psi.dims() == Dims{2, 2});
    CHECK(std::abs(psi.amplitudes()[0] - Complex(h)) <= 1e-15);
    CHECK(std::abs(psi.amplitudes()[3] - Complex(h)) <= 1e-15);
  }

  SUBCASE("ghz over qutrits") {
    const auto psi = ghz_state(3, 3);
    CHECK(psi.dims() == Dims{3, 3, 3});
    const double a = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 27; ++i) {
      const bool on = i == 0 || i == 13 || i == 26;
      CHECK(std::abs(psi.amplitudes()[i] - Complex(on ? a : 0.0)) <= 1e-15);
    }
  }

  SUBCASE("w") {
    const auto psi = w_state(3);
    const double a = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 8; ++i) {
      const bool on = i == 1 || i == 2 || i == 4;
      CHECK(std::abs(psi.amplitudes()[i] - Complex(on ? a : 0.0)) <= 1e-15);
    }
  }

  SUBCASE("product normalizes each factor") {
    const auto psi = product_state({{3.0, 4.0}, {0.0, 1.0, 0.0}});
    CHECK(psi.dims() == Dims{2, 3});
    CHECK(std::abs(psi.amplitudes()[1] - Complex(0.6)) <= 1e-15);
    CHECK(std::abs(psi.amplitudes()[4] - Complex(0.8)) <= 1e-15);
  }

  SUBCASE("acin canonical form") {
    AcinParams p;
    p.lambda = {0.5, 0.5, 0.5, 0.5, 0.0};
    p.psi = std::numbers::pi / 2;
    const auto psi = acin_state(p);
    CHECK(std::abs(psi.amplitudes()[0] - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(psi.amplitudes()[4] - Complex(0.0, 0.5)) <= 1e-15);
    CHECK(std::abs(psi.amplitudes()[5] - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(psi.amplitudes()[6] - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(psi.amplitudes()[7]) == 0.0);
  }

  SUBCASE("acin rejects bad parameters") {
    AcinParams p;
    p.lambda = {0.707, 0.0, 0.0, 0.0, 0.707};
    CHECK_THROWS_AS(acin_state(p), ValidationError);
    p.lambda = {1.0, 0.0, 0.0, 0.0, 0.0};
    p.psi = 4.0;
    CHECK_THROWS_AS(acin_state(p), ValidationError);
    p.psi = 0.0;
    p.lambda = {-1.0, 0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(acin_state(p), ValidationError);
  }

  SUBCASE("pure state validation") {
    CHECK_THROWS_AS(PureState({1.0, 1.0}, {2}), ValidationError);
    CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}, {2}), DimensionError);
    CHECK_THROWS_AS(PureState::normalized({0.0, 0.0}, {2}), ValidationError);
    CHECK_THROWS_AS(ghz_state(1, 2), ValidationError);
  }
}

TEST_CASE("named mixed states") {
  SUBCASE("werner spectrum and partial transpose") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
      const auto rho = werner_state(p);
      const auto values = hermitian_eigenvalues(rho.matrix());
      CHECK(values[3] == doctest::Approx((1 + 3 * p) / 4).epsilon(1e-13));
      CHECK(values[0] == doctest::Approx((1 - p) / 4).epsilon(1e-13));
      CHECK(min_pt_eigenvalue(rho.matrix(), rho.dims()) ==
            doctest::Approx(std::min((1 - 3 * p) / 4, (1 + p) / 4)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(werner_state(1.5), ValidationError);
  }

  SUBCASE("isotropic fidelity") {
    for (double f : {0.1, 0.25, 0.7}) {
      const auto rho = isotropic_state(3, f);
      Complex overlap{};
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) overlap += rho.matrix()(i * 4, j * 4) / 3.0;
      CHECK(overlap.real() == doctest::Approx(f).epsilon(1e-13));
      CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) <= 1e-13);
    }
  }

  SUBCASE("chessboard state is PPT yet fails realignment") {
    const auto rho = chessboard_ppt_state();
    CHECK(rho.dims() == Dims{3, 3});
    CHECK(min_pt_eigenvalue(rho.matrix(), rho.dims()) >= -1e-12);
    CHECK(hermitian_eigenvalues(rho.matrix()).front() >= -1e-12);
    const double norm = trace_norm(realign(rho.matrix(), 3));
    CHECK(norm == doctest::Approx(1.0915).epsilon(1e-3));
    CHECK(norm > 1.0 + 1e-3);
  }
}

TEST_CASE("density matrix validation") {
  SUBCASE("non-Hermitian input names the entry pair") {
    Matrix m = 0.5 * Matrix::identity(2);
    m(0, 1) = 0.1;
    try {
      DensityMatrix rho(m, {2});
      FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("(0,1) and (1,0)") != std::string::npos);
    }
  }

  SUBCASE("trace") {
    CHECK_THROWS_AS(DensityMatrix(Matrix::identity(2), {2}), ValidationError);
  }

  SUBCASE("negative eigenvalue") {
    const double d[] = {1.5, -0.5};
    CHECK_THROWS_AS(DensityMatrix(Matrix::diagonal(d), {2}), ValidationError);
  }

  SUBCASE("dims mismatch") {
    CHECK_THROWS_AS(DensityMatrix(0.25 * Matrix::identity(4), {2, 3}), DimensionError);
  }

  SUBCASE("pure states convert to rank-one projectors") {
    const auto psi = haar_random_pure({2, 3}, 5);
    const Matrix rho = psi.to_density().matrix();
    CHECK(max_abs_diff(rho * rho, rho) <= 1e-13);
    CHECK(hermitian_eigenvalues(rho)[4] <= 1e-10);
  }
}

TEST_CASE("random sources") {
  SUBCASE("same seed, same stream") {
    GaussianSource a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
      const double x = a.normal();
      CHECK(x == b.normal());
      differs = differs || x != c.normal();
    }
    CHECK(differs);
  }

  SUBCASE("uniforms lie in [0, 1) and normals have unit variance") {
    GaussianSource src(1);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < 1000; ++i) {
      const double u = src.uniform();
      CHECK((u >= 0.0 && u < 1.0));
    }
    for (int i = 0; i < n; ++i) {
      const double x = src.normal();
      sum += x;
      sq += x * x;
    }
    CHECK(std::abs(sum / n) <= 0.01);
    CHECK(std::abs(sq / n - 1.0) <= 0.02);
  }

  SUBCASE("Haar average reduced purity, two qubits") {
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const auto psi = haar_random_pure({2, 2}, 500000 + i);
      const std::vector<Complex> a(psi.amplitudes().begin(), psi.amplitudes().end());
      sum += testing::purity_of_coefficients(a, 2, 2);
    }
    CHECK(std::abs(sum / n - 0.8) <= 0.01);
  }

  SUBCASE("Haar states are normalized and seed-stable") {
    const auto a = haar_random_pure({3, 2, 2}, 42), b = haar_random_pure({3, 2, 2}, 42);
    CHECK(std::equal(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin()));
    double n2 = 0.0;
    for (auto x : a.amplitudes()) n2 += std::norm(x);
    CHECK(std::abs(n2 - 1.0) <= 1e-12);
  }

  SUBCASE("Haar average reduced purity") {
    // E[Tr rho_A^2] = (dA + dB) / (dA dB + 1).
    const std::pair<std::size_t, std::size_t> cases[] = {{2, 2}, {2, 3}, {3, 3}};
    for (auto [da, db] : cases) {
      double sum = 0.0;
      const int n = 4000;
      for (int i = 0; i < n; ++i) {
        const auto psi = haar_random_pure({da, db}, 1000 + i);
        const std::vector<Complex> a(psi.amplitudes().begin(), psi.amplitudes().end());
        sum += testing::purity_of_coefficients(a, da, db);
      }
      const double expected = double(da + db) / double(da * db + 1);
      CHECK(sum / n == doctest::Approx(expected).epsilon(0.02));
    }
  }

  SUBCASE("random product states are product") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto psi = random_product_pure({3, 2}, seed);
      const std::vector<Complex> a(psi.amplitudes().begin(), psi.amplitudes().end());
      CHECK(testing::purity_of_coefficients(a, 3, 2) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("separable mixtures are valid and PPT") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto rho = random_separable_mixture({2, 3}, 4, seed);
      CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) <= 1e-12);
      CHECK(min_pt_eigenvalue(rho.matrix(), rho.dims()) >= -1e-12);
    }
  }
}

TEST_CASE("state spec mini-syntax") {
  SUBCASE("dimension shorthand expands to positionals") {
    const auto spec = parse_state_spec("ghz:3x2");
    CHECK(spec.name == "ghz");
    CHECK(spec.params.at("0") == "3");
    CHECK(spec.params.at("1") == "2");
  }

  SUBCASE("keyed and positional arguments build the same state") {
    const auto a = std::get<PureState>(make_named_state("ghz:3x2"));
    const auto b = std::get<PureState>(make_named_state("ghz:L=3,d=2"));
    CHECK(a.dims() == b.dims());
    CHECK(std::equal(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin()));
  }

  SUBCASE("mixed states") {
    const auto rho = std::get<DensityMatrix>(make_named_state("werner:p=0.5"));
    CHECK(max_abs_diff(rho.matrix(), werner_state(0.5).matrix()) == 0.0);
    const auto positional = std::get<DensityMatrix>(make_named_state("werner:0.85"));
    CHECK(positional.matrix() == werner_state(0.85).matrix());
    CHECK(werner_state(1.0).matrix() == bell_state().to_density().matrix());
    CHECK(std::holds_alternative<DensityMatrix>(make_named_state("isotropic:3,0.5")));
    CHECK(std::holds_alternative<DensityMatrix>(make_named_state("chessboard-ppt")));
  }

  SUBCASE("haar and seeded product") {
    const auto a = std::get<PureState>(make_named_state("haar:2x3,seed=9"));
    const auto b = haar_random_pure({2, 3}, 9);
    CHECK(std::equal(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin()));
    const auto p = std::get<PureState>(make_named_state("product:3,2,seed=4"));
    CHECK(p.dims() == Dims{2, 2, 2});
  }

  SUBCASE("acin with a fully specified normalization") {
    const auto psi =
        std::get<PureState>(make_named_state("acin:l0=0.5,l1=0.5,l2=0.5,l3=0.5,l4=0,psi=0"));
    CHECK(psi.dims() == Dims{2, 2, 2});
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(make_named_state("nosuch"), ValidationError);
    CHECK_THROWS_AS(make_named_state("werner"), ValidationError);
    CHECK_THROWS_AS(make_named_state("werner:p=abc"), ValidationError);
    CHECK_THROWS_AS(make_named_state("bell:q=1"), ValidationError);
    CHECK_THROWS_AS(make_named_state("ghz:3,2,7"), ValidationError);
    CHECK_THROWS_AS(make_named_state(""), ValidationError);
  }
}

TEST_CASE("state files") {
  SUBCASE("pure round trip is exact and stable") {
    const State original = haar_random_pure({2, 3}, 17);
    const std::string text = serialize_state(original);
    const State back = parse_state(text);
    const auto& a = std::get<PureState>(original);
    const auto& b = std::get<PureState>(back);
    CHECK(a.dims() == b.dims());
    CHECK(std::equal(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin()));
    CHECK(serialize_state(back) == text);
  }

  SUBCASE("density round trip") {
    const State original = werner_state(0.3);
    const State back = parse_state(serialize_state(original));
    CHECK(std::get<DensityMatrix>(back).matrix() == std::get<DensityMatrix>(original).matrix());
  }

  SUBCASE("Hermiticity defect in a density file names the entries") {
    const char* text = R"({"kind":"density","dims":[2],"entries":[[0.5,0],[0.1,0],[0.101,0],[0.5,0]]})";
    try {
      parse_state(text);
      FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("(0,1) and (1,0)") != std::string::npos);
    }
  }

  SUBCASE("schema errors") {
    CHECK_THROWS_AS(parse_state("not json"), ValidationError);
    CHECK_THROWS_AS(parse_state(R"({"kind":"pure","dims":[2,2],"amplitudes":[[1,0],[0,0]]})"),
                    DimensionError);
    CHECK_THROWS_AS(parse_state(R"({"kind":"density","dims":[2],"entries":[[1,0],[0,0],[0,0]]})"),
                    DimensionError);
    CHECK_THROWS_AS(parse_state(R"({"kind":"mixed","dims":[2],"amplitudes":[[1,0],[0,0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_state(R"({"kind":"pure","dims":[2],"amplitudes":[[1],[0,0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_state(R"({"kind":"pure","dims":[2],"amplitudes":[[1,0],[1,0]]})"),
                    ValidationError);
  }
}
