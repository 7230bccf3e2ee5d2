#include "specio.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace ssr {

namespace {

void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
}

// Every key must be known, every non-optional key present.
void check_keys(const Json& j, const std::string& what, const std::set<std::string>& required,
                const std::set<std::string>& optional = {}) {
  require_object(j, what);
  for (const auto& [key, value] : j.items()) {
    if (!required.count(key) && !optional.count(key))
      throw ParseError(what + ": unknown field \"" + key + "\"");
  }
  for (const auto& key : required) {
    if (!j.contains(key)) throw ParseError(what + ": missing field \"" + key + "\"");
  }
}

void check_format_version(const Json& j, const std::string& what) {
  if (!j.at("format_version").is_number_integer() || j.at("format_version").get<int>() != 1)
    throw ParseError(what + ": unsupported format_version (expected 1)");
}

int get_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ParseError(what + ": expected an integer");
  return j.get<int>();
}

Complex complex_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(what + ": complex numbers are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<int> dims_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError(what + ": dims must be a nonempty array");
  std::vector<int> dims;
  for (const auto& d : j) {
    const int v = get_int(d, what + ".dims");
    if (v < 1) throw ParseError(what + ": dims entries must be positive");
    dims.push_back(v);
  }
  return dims;
}

}  // namespace

Json complex_to_json(const Complex& z) {
  return Json::array({round_sig15(z.real()), round_sig15(z.imag())});
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(complex_to_json(m(r, c)));
  return out;
}

Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
    throw ParseError(what + ": expected " + std::to_string(rows * cols) +
                     " [re, im] entries (row-major)");
  Matrix m(rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[k++], what);
  return m;
}

double round_sig15(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return std::strtod(buf, nullptr);
}

std::string state_digest(const DensityOperator& rho) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const char* data, size_t n) {
    for (size_t i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(data[i]);
      h *= 1099511628211ULL;
    }
  };
  char buf[64];
  for (int d : rho.dims) {
    const int n = std::snprintf(buf, sizeof(buf), "d%d;", d);
    mix(buf, n);
  }
  for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) {
      const Complex z = rho.matrix(r, c);
      const int n = std::snprintf(buf, sizeof(buf), "%.15g,%.15g;", round_sig15(z.real()),
                                  round_sig15(z.imag()));
      mix(buf, n);
    }
  const int n = std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return std::string(buf, n);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

GroupBundle parse_group_spec(const Json& spec) {
  check_keys(spec, "group spec",
             {"format_version", "name", "order", "mult_table", "inverse", "identity", "irreps"},
             {"representation"});
  check_format_version(spec, "group spec");

  auto g = std::make_shared<FiniteGroup>();
  g->name = spec.at("name").get<std::string>();
  g->order = get_int(spec.at("order"), "group spec.order");
  g->identity = get_int(spec.at("identity"), "group spec.identity");
  if (g->order < 1) throw ParseError("group spec: order must be positive");

  const Json& mult = spec.at("mult_table");
  if (!mult.is_array() || static_cast<int>(mult.size()) != g->order)
    throw ParseError("group spec: mult_table must be an order x order array");
  for (const auto& row : mult) {
    if (!row.is_array() || static_cast<int>(row.size()) != g->order)
      throw ParseError("group spec: mult_table must be an order x order array");
    std::vector<int> r;
    for (const auto& e : row) {
      const int v = get_int(e, "group spec.mult_table");
      if (v < 0 || v >= g->order) throw ParseError("group spec: mult_table entry out of range");
      r.push_back(v);
    }
    g->mult.push_back(std::move(r));
  }

  const Json& inverse = spec.at("inverse");
  if (!inverse.is_array() || static_cast<int>(inverse.size()) != g->order)
    throw ParseError("group spec: inverse must list one entry per element");
  for (const auto& e : inverse) {
    const int v = get_int(e, "group spec.inverse");
    if (v < 0 || v >= g->order) throw ParseError("group spec: inverse entry out of range");
    g->inverse.push_back(v);
  }

  for (const auto& irrep_spec : spec.at("irreps")) {
    check_keys(irrep_spec, "irrep spec", {"label", "dim", "matrices"});
    Irrep ir;
    ir.label = irrep_spec.at("label").get<std::string>();
    ir.dim = get_int(irrep_spec.at("dim"), "irrep spec.dim");
    if (ir.dim < 1) throw ParseError("irrep spec: dim must be positive");
    const Json& mats = irrep_spec.at("matrices");
    if (!mats.is_array() || static_cast<int>(mats.size()) != g->order)
      throw ParseError("irrep spec: need one matrix per group element");
    for (const auto& m : mats)
      ir.matrices.push_back(matrix_from_json(m, ir.dim, ir.dim, "irrep " + ir.label));
    g->irreps.push_back(std::move(ir));
  }

  const ValidationReport group_report = validate_group(*g);
  if (!group_report.ok())
    throw ValidationError("group spec \"" + g->name + "\" invalid: " + group_report.summary());

  GroupBundle bundle;
  bundle.group = g;
  bundle.description = g->name;

  if (spec.contains("representation")) {
    const Json& rep_spec = spec.at("representation");
    check_keys(rep_spec, "representation spec", {"matrices"}, {"split"});
    const Json& mats = rep_spec.at("matrices");
    if (!mats.is_array() || static_cast<int>(mats.size()) != g->order)
      throw ParseError("representation spec: need one matrix per group element");
    if (mats.empty()) throw ParseError("representation spec: empty matrices");
    const int dim = static_cast<int>(std::sqrt(static_cast<double>(mats[0].size())) + 0.5);
    Representation rep;
    rep.group = g;
    for (const auto& m : mats)
      rep.matrices.push_back(matrix_from_json(m, dim, dim, "representation"));

    if (rep_spec.contains("split")) {
      const Json& split_spec = rep_spec.at("split");
      check_keys(split_spec, "split spec", {"dims_a", "dims_b", "matrices_a", "matrices_b"});
      Representation::Split split;
      split.dim_a = get_int(split_spec.at("dims_a"), "split.dims_a");
      split.dim_b = get_int(split_spec.at("dims_b"), "split.dims_b");
      if (split.dim_a * split.dim_b != dim)
        throw ParseError("split spec: dims_a * dims_b must equal the representation dimension");
      for (const auto& m : split_spec.at("matrices_a"))
        split.a.push_back(matrix_from_json(m, split.dim_a, split.dim_a, "split.matrices_a"));
      for (const auto& m : split_spec.at("matrices_b"))
        split.b.push_back(matrix_from_json(m, split.dim_b, split.dim_b, "split.matrices_b"));
      if (static_cast<int>(split.a.size()) != g->order ||
          static_cast<int>(split.b.size()) != g->order)
        throw ParseError("split spec: need one factor matrix per group element");
      rep.split = std::move(split);
    }

    const ValidationReport rep_report = validate_representation(rep);
    if (!rep_report.ok())
      throw ValidationError("representation invalid: " + rep_report.summary());
    bundle.rep = std::move(rep);
    bundle.description += " (file representation)";
  } else {
    bundle.rep = regular_representation(g);
    bundle.description += " (regular representation)";
  }
  return bundle;
}

GroupBundle load_group(const std::string& name_or_path) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    GroupBundle bundle;
    bundle.group = make_group(name_or_path);
    bundle.rep = regular_representation(bundle.group);
    bundle.description = name_or_path + " (regular representation)";
    return bundle;
  }
  return parse_group_spec(load_json_file(name_or_path));
}

namespace {

int irrep_index_from(const Json& j, const FiniteGroup& g, const std::string& what) {
  if (j.is_number_integer()) {
    const int mu = j.get<int>();
    if (mu < 0 || mu >= g.num_irreps()) throw ParseError(what + ": irrep index out of range");
    return mu;
  }
  if (j.is_string()) {
    const std::string label = j.get<std::string>();
    for (int mu = 0; mu < g.num_irreps(); ++mu)
      if (g.irreps[mu].label == label) return mu;
    throw ParseError(what + ": no irrep labelled \"" + label + "\"");
  }
  throw ParseError(what + ": irrep must be an index or a label");
}

StateBundle from_symmetric(SymmetricPureState state, std::string description) {
  StateBundle bundle;
  bundle.rho = state.psi.density();
  bundle.pure = state.psi;
  if (state.is_u1()) {
    const auto& ctx = std::get<U1Context>(state.context);
    bundle.charges = {ctx.charge_a, ctx.charge_b};
  }
  bundle.symmetric = std::move(state);
  bundle.description = std::move(description);
  return bundle;
}

StateBundle build_state(const Json& payload, const std::vector<int>& dims_hint,
                        const GroupBundle* group) {
  require_object(payload, "builder payload");
  if (!payload.contains("name")) throw ParseError("builder payload: missing \"name\"");
  const std::string name = payload.at("name").get<std::string>();

  if (name == "refbit") {
    check_keys(payload, "refbit builder", {"name"});
    return from_symmetric(make_refbit(), "refbit");
  }

  if (name == "spin-plus") {
    check_keys(payload, "spin-plus builder", {"name"}, {"n"});
    const int n = payload.contains("n") ? get_int(payload.at("n"), "spin-plus.n") : 1;
    SpinExample example = make_spin_plus(n);
    StateBundle bundle;
    bundle.rho = example.rho;
    PureState plus;
    plus.dims = example.rho.dims;
    plus.amplitudes = Vector::Constant(example.rho.dim(),
                                       1.0 / std::sqrt(static_cast<double>(example.rho.dim())));
    bundle.pure = plus;
    bundle.charges = example.charges;
    bundle.description = "spin-plus n=" + std::to_string(n);
    return bundle;
  }

  if (name == "symmetric") {
    check_keys(payload, "symmetric builder", {"name", "beta", "terms"});
    if (!group) throw ValidationError("symmetric builder requires a group spec");
    const int beta = irrep_index_from(payload.at("beta"), *group->group, "symmetric.beta");
    std::vector<PairCoefficient> coeffs;
    for (const auto& term : payload.at("terms")) {
      check_keys(term, "symmetric term", {"mu", "m", "mbar", "d"});
      PairCoefficient c;
      c.mu = irrep_index_from(term.at("mu"), *group->group, "symmetric term.mu");
      c.m = get_int(term.at("m"), "symmetric term.m");
      c.m_bar = get_int(term.at("mbar"), "symmetric term.mbar");
      c.d = complex_from_json(term.at("d"), "symmetric term.d");
      coeffs.push_back(c);
    }
    Representation rep = group->rep;
    if (!rep.split) {
      const Representation regular = regular_representation(group->group);
      rep = tensor_rep(regular, regular);
    }
    return from_symmetric(build_symmetric_state(rep, beta, coeffs),
                          "symmetric beta=" + group->group->irreps[beta].label + " over " +
                              group->group->name);
  }

  if (name == "orbit-reference") {
    check_keys(payload, "orbit-reference builder", {"name"});
    if (!group) throw ValidationError("orbit-reference builder requires a group spec");
    StateBundle bundle;
    bundle.pure = make_orbit_reference(group->group);
    bundle.rho = bundle.pure->density();
    bundle.description = "orbit-reference over " + group->group->name;
    return bundle;
  }

  if (name == "shared-orbit-reference") {
    check_keys(payload, "shared-orbit-reference builder", {"name"});
    if (!group) throw ValidationError("shared-orbit-reference builder requires a group spec");
    StateBundle bundle;
    bundle.pure = make_shared_orbit_reference(group->group);
    bundle.rho = bundle.pure->density();
    bundle.description = "shared-orbit-reference over " + group->group->name;
    return bundle;
  }

  if (name == "random") {
    check_keys(payload, "random builder", {"name", "purity", "seed"}, {"rank"});
    if (dims_hint.empty()) throw ParseError("random builder requires dims");
    const std::string purity = payload.at("purity").get<std::string>();
    if (purity != "pure" && purity != "mixed")
      throw ParseError("random builder: purity must be \"pure\" or \"mixed\"");
    const auto seed = static_cast<std::uint64_t>(get_int(payload.at("seed"), "random.seed"));
    const int rank = payload.contains("rank") ? get_int(payload.at("rank"), "random.rank") : 0;
    StateBundle bundle;
    if (purity == "pure") {
      bundle.pure = random_pure_state(dims_hint, seed);
      bundle.rho = bundle.pure->density();
    } else {
      bundle.rho = random_state(dims_hint, Purity::Mixed, seed, rank);
    }
    bundle.description = "random " + purity + " state";
    return bundle;
  }

  if (name == "maximally-mixed") {
    check_keys(payload, "maximally-mixed builder", {"name"});
    if (dims_hint.empty()) throw ParseError("maximally-mixed builder requires dims");
    const int d = dims_product(dims_hint);
    StateBundle bundle;
    bundle.rho = DensityOperator{Matrix::Identity(d, d) / static_cast<double>(d), dims_hint};
    bundle.description = "maximally mixed";
    return bundle;
  }

  throw ParseError("unknown builder \"" + name + "\"");
}

}  // namespace

StateBundle parse_state_spec(const Json& spec, const GroupBundle* group) {
  check_keys(spec, "state spec", {"format_version", "kind", "payload"}, {"dims"});
  check_format_version(spec, "state spec");
  const std::string kind = spec.at("kind").get<std::string>();

  std::vector<int> dims;
  if (spec.contains("dims")) dims = dims_from_json(spec.at("dims"), "state spec");

  if (kind == "amplitudes") {
    if (dims.empty()) throw ParseError("state spec: amplitudes kind requires dims");
    const int d = dims_product(dims);
    const Json& payload = spec.at("payload");
    if (!payload.is_array() || static_cast<int>(payload.size()) != d)
      throw ParseError("state spec: expected " + std::to_string(d) + " amplitudes");
    PureState psi;
    psi.dims = dims;
    psi.amplitudes.resize(d);
    for (int i = 0; i < d; ++i)
      psi.amplitudes(i) = complex_from_json(payload[i], "state spec.payload");
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-9)
      throw ValidationError("state spec: amplitudes have norm " + std::to_string(norm));
    StateBundle bundle;
    bundle.pure = psi;
    bundle.rho = psi.density();
    bundle.description = "amplitude vector";
    return bundle;
  }

  if (kind == "matrix") {
    if (dims.empty()) throw ParseError("state spec: matrix kind requires dims");
    const int d = dims_product(dims);
    StateBundle bundle;
    bundle.rho = DensityOperator{matrix_from_json(spec.at("payload"), d, d, "state spec.payload"),
                                 dims};
    bundle.description = "density matrix";
    return bundle;
  }

  if (kind == "builder") return build_state(spec.at("payload"), dims, group);

  throw ParseError("state spec: unknown kind \"" + kind + "\"");
}

StateBundle load_state(const std::string& name_or_path, const GroupBundle* group) {
  if (name_or_path == "refbit")
    return parse_state_spec(
        Json{{"format_version", 1}, {"kind", "builder"}, {"payload", {{"name", "refbit"}}}},
        group);
  if (name_or_path == "spin-plus" || name_or_path == "spin-plus-1")
    return parse_state_spec(Json{{"format_version", 1},
                                 {"kind", "builder"},
                                 {"payload", {{"name", "spin-plus"}, {"n", 1}}}},
                            group);
  if (name_or_path == "spin-plus-2")
    return parse_state_spec(Json{{"format_version", 1},
                                 {"kind", "builder"},
                                 {"payload", {{"name", "spin-plus"}, {"n", 2}}}},
                            group);
  return parse_state_spec(load_json_file(name_or_path), group);
}

std::vector<ChargeOperator> parse_charges_spec(const Json& spec) {
  check_keys(spec, "charges spec", {"format_version", "sites"});
  check_format_version(spec, "charges spec");
  std::vector<ChargeOperator> charges;
  for (const auto& site : spec.at("sites")) {
    check_keys(site, "charge site", {"dim"}, {"diag", "matrix"});
    const int dim = get_int(site.at("dim"), "charge site.dim");
    if (dim < 1) throw ParseError("charge site: dim must be positive");
    if (site.contains("diag") == site.contains("matrix"))
      throw ParseError("charge site: exactly one of \"diag\" or \"matrix\" required");
    ChargeOperator q;
    if (site.contains("diag")) {
      const Json& diag = site.at("diag");
      if (!diag.is_array() || static_cast<int>(diag.size()) != dim)
        throw ParseError("charge site: diag must list one value per basis state");
      q.matrix = Matrix::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        if (!diag[i].is_number()) throw ParseError("charge site: diag entries must be numbers");
        q.matrix(i, i) = diag[i].get<double>();
      }
    } else {
      q.matrix = matrix_from_json(site.at("matrix"), dim, dim, "charge site.matrix");
    }
    const ValidationReport report = validate_charge(q);
    if (!report.ok()) throw ValidationError("charge operator invalid: " + report.summary());
    charges.push_back(std::move(q));
  }
  if (charges.empty()) throw ParseError("charges spec: no sites");
  return charges;
}

std::vector<ChargeOperator> load_charges(const std::string& path) {
  return parse_charges_spec(load_json_file(path));
}

}  // namespace ssr
