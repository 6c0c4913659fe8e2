#include "gisin/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "gisin/errors.hpp"

namespace gisin {

namespace {

double norm_of(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

std::string pair_label(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

void validate_density(const Matrix& m, const Dims& dims, bool spectral) {
  if (!m.is_square()) throw DimensionError("density matrix must be square");
  check_dims(dims, m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = r; c < m.cols(); ++c) {
      const double defect = std::abs(m(r, c) - std::conj(m(c, r)));
      if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian: entries " << pair_label(r, c) << " and "
            << pair_label(c, r) << " differ from conjugate symmetry by " << defect;
        throw ValidationError(msg.str());
      }
    }
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
        << "i, expected 1";
    throw ValidationError(msg.str());
  }
  if (spectral) {
    const double min_eig = hermitian_eigenvalues(m).front();
    if (min_eig < -1e-8) {
      throw ValidationError("density matrix is not positive semidefinite: minimum eigenvalue " +
                            std::to_string(min_eig));
    }
  }
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ValidationError("parameter '" + key + "' is not a number: '" + text + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("parameter '" + key + "' is not a non-negative integer: '" + text + "'");
  }
  return value;
}

// Reads a parameter by key, falling back to a positional slot.
class ParamReader {
public:
  ParamReader(std::string_view state, const ParamMap& params) : state_(state), params_(params) {}

  const std::string* find(const std::string& key, int position = -1) {
    if (auto it = params_.find(key); it != params_.end()) {
      used_.push_back(it->first);
      return &it->second;
    }
    if (position >= 0) {
      if (auto it = params_.find(std::to_string(position)); it != params_.end()) {
        used_.push_back(it->first);
        return &it->second;
      }
    }
    return nullptr;
  }

  double real(const std::string& key, int position, std::optional<double> fallback) {
    if (const auto* v = find(key, position)) return parse_double(key, *v);
    if (fallback) return *fallback;
    throw ValidationError(std::string(state_) + ": missing parameter '" + key + "'");
  }

  std::size_t count(const std::string& key, int position, std::optional<std::size_t> fallback) {
    if (const auto* v = find(key, position)) return parse_count(key, *v);
    if (fallback) return *fallback;
    throw ValidationError(std::string(state_) + ": missing parameter '" + key + "'");
  }

  std::vector<std::size_t> positional_counts() {
    std::vector<std::size_t> out;
    for (int i = 0;; ++i) {
      auto it = params_.find(std::to_string(i));
      if (it == params_.end()) break;
      used_.push_back(it->first);
      out.push_back(parse_count("dims", it->second));
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : params_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        throw ValidationError(std::string(state_) + ": unexpected parameter '" + key + "'");
      }
    }
  }

private:
  std::string_view state_;
  const ParamMap& params_;
  std::vector<std::string> used_;
};

nlohmann::json complex_array(std::span<const Complex> values) {
  auto out = nlohmann::json::array();
  for (const auto& z : values) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<Complex> read_complex_array(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_array())
    throw ValidationError(std::string("state file: missing array field '") + field + "'");
  std::vector<Complex> out;
  out.reserve(doc[field].size());
  for (std::size_t i = 0; i < doc[field].size(); ++i) {
    const auto& pair = doc[field][i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw ValidationError(std::string("state file: ") + field + "[" + std::to_string(i) +
                            "] must be a [re, im] pair of numbers");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------

PureState::PureState(std::vector<Complex> amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  check_dims(dims_, amplitudes_.size());
  const double n = norm_of(amplitudes_);
  if (std::abs(n - 1.0) > 1e-10) {
    throw ValidationError("pure state norm is " + std::to_string(n) + ", expected 1");
  }
}

PureState::PureState(Trusted, std::vector<Complex> amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {}

PureState PureState::normalized(std::vector<Complex> amplitudes, Dims dims) {
  check_dims(dims, amplitudes.size());
  const double n = norm_of(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalize a zero vector");
  for (auto& z : amplitudes) z /= n;
  return PureState(Trusted{}, std::move(amplitudes), std::move(dims));
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix::unchecked(outer(amplitudes_), dims_);
}

DensityMatrix::DensityMatrix(Matrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  validate_density(matrix_, dims_, true);
}

DensityMatrix::DensityMatrix(Trusted, Matrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {}

DensityMatrix DensityMatrix::unchecked(Matrix matrix, Dims dims) {
  if (!matrix.is_square()) throw DimensionError("density matrix must be square");
  check_dims(dims, matrix.rows());
  return DensityMatrix(Trusted{}, std::move(matrix), std::move(dims));
}

const Dims& dims_of(const State& state) {
  return std::visit([](const auto& s) -> const Dims& { return s.dims(); }, state);
}

DensityMatrix as_density(const State& state) {
  if (const auto* pure = std::get_if<PureState>(&state)) return pure->to_density();
  return std::get<DensityMatrix>(state);
}

// ---------------------------------------------------------------------------

PureState bell_state() { return ghz_state(2, 2); }

PureState ghz_state(std::size_t parties, std::size_t local_dim) {
  if (parties < 2) throw ValidationError("ghz: needs at least 2 parties");
  if (local_dim < 2) throw ValidationError("ghz: local dimension must be >= 2");
  const Dims dims(parties, local_dim);
  std::vector<Complex> amps(dims_product(dims));
  // |i...i> has index i * (1 + d + d^2 + ...).
  std::size_t repunit = 0;
  for (std::size_t p = 0; p < parties; ++p) repunit = repunit * local_dim + 1;
  for (std::size_t i = 0; i < local_dim; ++i) amps[i * repunit] = 1.0;
  return PureState::normalized(std::move(amps), dims);
}

PureState w_state(std::size_t parties) {
  if (parties < 2) throw ValidationError("w: needs at least 2 parties");
  const Dims dims(parties, 2);
  std::vector<Complex> amps(dims_product(dims));
  for (std::size_t p = 0; p < parties; ++p) amps[std::size_t{1} << p] = 1.0;
  return PureState::normalized(std::move(amps), dims);
}

PureState product_state(const std::vector<std::vector<Complex>>& locals) {
  if (locals.empty()) throw ValidationError("product: needs at least one local vector");
  std::vector<Complex> amps{1.0};
  Dims dims;
  for (const auto& local : locals) {
    const double n = norm_of(local);
    if (local.size() < 2) throw ValidationError("product: local vectors need dimension >= 2");
    if (!(n > 0.0)) throw ValidationError("product: local vector is zero");
    std::vector<Complex> next;
    next.reserve(amps.size() * local.size());
    for (const auto& x : amps)
      for (const auto& y : local) next.push_back(x * y / n);
    amps = std::move(next);
    dims.push_back(local.size());
  }
  return PureState::normalized(std::move(amps), dims);
}

PureState acin_state(const AcinParams& params) {
  double sum = 0.0;
  for (std::size_t i = 0; i < params.lambda.size(); ++i) {
    if (!(params.lambda[i] >= 0.0))
      throw ValidationError("acin: lambda" + std::to_string(i) + " must be non-negative");
    sum += params.lambda[i] * params.lambda[i];
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw ValidationError("acin: sum of lambda^2 is " + std::to_string(sum) + ", expected 1");
  }
  if (params.psi < 0.0 || params.psi > std::numbers::pi)
    throw ValidationError("acin: psi must lie in [0, pi]");

  const auto& l = params.lambda;
  std::vector<Complex> amps(8);
  amps[0b000] = l[0];
  amps[0b100] = l[1] * std::polar(1.0, params.psi);
  amps[0b101] = l[2];
  amps[0b110] = l[3];
  amps[0b111] = l[4];
  return PureState(std::move(amps), Dims{2, 2, 2});
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner: p must lie in [0, 1]");
  const auto phi = bell_state();
  Matrix m = p * outer(phi.amplitudes()) + ((1.0 - p) / 4.0) * Matrix::identity(4);
  return DensityMatrix::unchecked(std::move(m), Dims{2, 2});
}

DensityMatrix isotropic_state(std::size_t local_dim, double fidelity) {
  if (local_dim < 2) throw ValidationError("isotropic: local dimension must be >= 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0))
    throw ValidationError("isotropic: fidelity must lie in [0, 1]");
  const std::size_t n = local_dim * local_dim;
  const Matrix phi = outer(ghz_state(2, local_dim).amplitudes());
  Matrix m = fidelity * phi +
             ((1.0 - fidelity) / static_cast<double>(n - 1)) * (Matrix::identity(n) - phi);
  return DensityMatrix::unchecked(std::move(m), Dims{local_dim, local_dim});
}

DensityMatrix chessboard_ppt_state() {
  // Four chessboard vectors in C^3 (x) C^3, index 3i + j. Real parameters with
  // s = a c / n and t = a d / m make the partial transpose positive.
  const double m = 1.2, n = 1.2, a = 0.8, b = 0.2, c = 1.8, d = 1.8;
  const double s = a * c / n, t = a * d / m;
  std::array<std::vector<Complex>, 4> v;
  for (auto& x : v) x.assign(9, 0.0);
  v[0][0] = m, v[0][2] = s, v[0][4] = n;
  v[1][1] = a, v[1][3] = b, v[1][5] = c;
  v[2][0] = n, v[2][4] = -m, v[2][6] = t;
  v[3][1] = b, v[3][3] = -a, v[3][7] = d;

  Matrix sum(9, 9);
  for (const auto& x : v) sum += outer(x);
  const double tr = sum.trace().real();
  sum *= 1.0 / tr;
  return DensityMatrix(std::move(sum), Dims{3, 3});
}

// ---------------------------------------------------------------------------

GaussianSource::GaussianSource(std::uint64_t seed) : engine_(seed) {}

double GaussianSource::uniform() {
  // 53 random bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex GaussianSource::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

PureState haar_random_pure(const Dims& dims, std::uint64_t seed) {
  const std::size_t n = dims_product(dims);
  check_dims(dims, n);
  GaussianSource source(seed);
  std::vector<Complex> amps(n);
  for (auto& z : amps) z = source.complex_normal();
  return PureState::normalized(std::move(amps), dims);
}

PureState random_product_pure(const Dims& dims, std::uint64_t seed) {
  check_dims(dims, dims_product(dims));
  GaussianSource source(seed);
  std::vector<std::vector<Complex>> locals;
  for (auto d : dims) {
    std::vector<Complex> local(d);
    for (auto& z : local) z = source.complex_normal();
    locals.push_back(std::move(local));
  }
  return product_state(locals);
}

DensityMatrix random_separable_mixture(const Dims& dims, std::size_t terms, std::uint64_t seed) {
  if (terms == 0) throw ValidationError("separable mixture needs at least one term");
  const std::size_t n = dims_product(dims);
  check_dims(dims, n);
  GaussianSource source(seed);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (auto& w : weights) {
    w = source.uniform() + 1e-3;
    total += w;
  }
  Matrix sum(n, n);
  for (std::size_t t = 0; t < terms; ++t) {
    const auto seed_t = static_cast<std::uint64_t>(source.uniform() * 0x1.0p53);
    const auto product = random_product_pure(dims, seed_t);
    sum += (weights[t] / total) * outer(product.amplitudes());
  }
  return DensityMatrix(std::move(sum), dims);
}

// ---------------------------------------------------------------------------

NamedStateSpec parse_state_spec(std::string_view text) {
  NamedStateSpec spec;
  const auto colon = text.find(':');
  spec.name = std::string(text.substr(0, colon));
  if (spec.name.empty()) throw ValidationError("state spec has an empty name");
  if (colon == std::string_view::npos) return spec;

  std::string_view rest = text.substr(colon + 1);
  int position = 0;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view arg = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (arg.empty()) throw ValidationError("state spec has an empty argument");

    if (const auto eq = arg.find('='); eq != std::string_view::npos) {
      auto key = std::string(arg.substr(0, eq));
      if (key.empty()) throw ValidationError("state spec argument has an empty key");
      spec.params[key] = std::string(arg.substr(eq + 1));
      continue;
    }
    // AxBxC expands to positionals A, B, C.
    while (true) {
      const auto x = arg.find('x');
      spec.params[std::to_string(position++)] = std::string(arg.substr(0, x));
      if (x == std::string_view::npos) break;
      arg = arg.substr(x + 1);
    }
  }
  return spec;
}

State make_named_state(std::string_view name, const ParamMap& params) {
  ParamReader in(name, params);
  auto done = [&](auto state) -> State {
    in.finish();
    return state;
  };

  if (name == "bell") return done(bell_state());
  if (name == "ghz") {
    const auto parties = in.count("L", 0, std::nullopt);
    const auto d = in.count("d", 1, 2);
    return done(ghz_state(parties, d));
  }
  if (name == "w") return done(w_state(in.count("L", 0, std::nullopt)));
  if (name == "product") {
    const auto parties = in.count("L", 0, std::nullopt);
    const auto d = in.count("d", 1, 2);
    const Dims dims(parties, d);
    if (const auto* seed = in.find("seed"))
      return done(random_product_pure(dims, parse_count("seed", *seed)));
    std::vector<std::vector<Complex>> locals(parties, std::vector<Complex>(d));
    for (auto& local : locals) local[0] = 1.0;
    return done(product_state(locals));
  }
  if (name == "acin") {
    AcinParams p;
    for (std::size_t i = 0; i < 5; ++i) p.lambda[i] = in.real("l" + std::to_string(i), -1, 0.0);
    p.psi = in.real("psi", -1, 0.0);
    return done(acin_state(p));
  }
  if (name == "werner") return done(werner_state(in.real("p", 0, std::nullopt)));
  if (name == "isotropic") {
    const auto d = in.count("d", 0, std::nullopt);
    return done(isotropic_state(d, in.real("F", 1, std::nullopt)));
  }
  if (name == "chessboard-ppt") return done(chessboard_ppt_state());
  if (name == "haar") {
    const auto seed = in.count("seed", -1, 0);
    const auto dims = in.positional_counts();
    if (dims.empty()) throw ValidationError("haar: needs dims, e.g. haar:2x3,seed=1");
    return done(haar_random_pure(dims, seed));
  }
  throw ValidationError("unknown state name '" + std::string(name) + "'");
}

State make_named_state(std::string_view spec) {
  const auto parsed = parse_state_spec(spec);
  return make_named_state(parsed.name, parsed.params);
}

// ---------------------------------------------------------------------------

State parse_state(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("state file must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw ValidationError("state file: missing string field 'kind'");
  if (!doc.contains("dims") || !doc["dims"].is_array())
    throw ValidationError("state file: missing array field 'dims'");

  Dims dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_unsigned()) throw ValidationError("state file: dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }

  const auto kind = doc["kind"].get<std::string>();
  if (kind == "pure") {
    auto amps = read_complex_array(doc, "amplitudes");
    check_dims(dims, amps.size());
    return PureState(std::move(amps), std::move(dims));
  }
  if (kind == "density") {
    auto entries = read_complex_array(doc, "entries");
    const std::size_t n = dims_product(dims);
    if (entries.size() != n * n) {
      throw DimensionError("state file: dims product " + std::to_string(n) + " needs " +
                           std::to_string(n * n) + " entries, got " +
                           std::to_string(entries.size()));
    }
    return DensityMatrix(Matrix(n, n, std::move(entries)), std::move(dims));
  }
  throw ValidationError("state file: kind must be \"pure\" or \"density\", got \"" + kind + "\"");
}

std::string serialize_state(const State& state) {
  nlohmann::json doc;
  doc["dims"] = dims_of(state);
  if (const auto* pure = std::get_if<PureState>(&state)) {
    doc["kind"] = "pure";
    doc["amplitudes"] = complex_array(pure->amplitudes());
  } else {
    const auto& rho = std::get<DensityMatrix>(state);
    doc["kind"] = "density";
    doc["entries"] = complex_array(rho.matrix().entries());
  }
  return doc.dump() + "\n";
}

State read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open state file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state(buffer.str());
}

} // namespace gisin
